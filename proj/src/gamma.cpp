#include "fracweier/gamma.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracweier/errors.hpp"

namespace fw {

bool is_nonpositive_integer(double x) noexcept {
  return x <= 0.0 && std::floor(x) == x;
}

double sinpi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  if (std::floor(x) == x) return 0.0;
  // Reduce to r ∈ [-1, 1) exactly (fmod is exact), then fold to [-1/2, 1/2].
  double r = std::fmod(x, 2.0);
  if (r >= 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  if (r > 0.5) r = 1.0 - r;
  if (r < -0.5) r = -1.0 - r;
  return std::sin(std::numbers::pi * r);
}

double cospi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  return sinpi(x + 0.5 - 2.0 * std::floor((x + 0.5) / 2.0));
}

double gamma(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma: non-finite argument");
  if (is_nonpositive_integer(x)) {
    throw PoleError("gamma: pole at x = " + std::to_string(x));
  }
  if (x > 0.0) return std::tgamma(x);
  // Γ(x) = π / (sin(πx) Γ(1 − x)).
  const double g = std::tgamma(1.0 - x);
  if (std::isinf(g)) return 0.0;
  return std::numbers::pi / (sinpi(x) * g);
}

double rgamma(double x) {
  if (!std::isfinite(x)) return 0.0;
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 0.0) {
    if (x > 171.5) return 0.0;
    return 1.0 / std::tgamma(x);
  }
  // 1/Γ(x) = sin(πx) Γ(1 − x) / π; overflows only for x < −170.
  const double g = std::tgamma(1.0 - x);
  return sinpi(x) * g / std::numbers::pi;
}

}  // namespace fw
