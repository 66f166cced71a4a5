#pragma once

namespace fw {

/// Γ(x). Relative error below 1e-12 on (0, 50]; negative non-integer
/// arguments use the reflection formula. Throws PoleError at 0, −1, −2, …
double gamma(double x);

/// 1/Γ(x), defined as exactly 0 at the poles of Γ and for arguments where
/// Γ overflows.
double rgamma(double x);

/// sin(πx) and cos(πx) with exact zeros at (half-)integers; the argument is
/// reduced before it is multiplied by π.
double sinpi(double x);
double cospi(double x);

/// True when x is 0, −1, −2, …
bool is_nonpositive_integer(double x) noexcept;

}  // namespace fw
