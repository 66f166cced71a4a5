#pragma once

// Jumarie fractional derivative of order 0 < α < 1, lower terminal 0:
//
//   D^α f(x) = 1/Γ(1−α) d/dx ∫_0^x (x−τ)^{−α} [f(τ) − f(0)] dτ
//
// three ways: the power rule on monomials, term by term on finite power
// series, and numerically from uniform samples.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace fw::jumarie {

/// Γ(1+ν)/Γ(1+ν−α): D^α x^ν = coeff · x^{ν−α}. Zero for ν = 0.
double deriv_power_coeff(double alpha, double nu);

/// Σ c_j x^{ν_j} on x ≥ 0, zero for x < 0. Exponents are ≥ 0 and strictly
/// increasing.
class PowerSeries {
 public:
  struct Term {
    double coef;
    double exponent;
    bool operator==(const Term&) const = default;
  };

  PowerSeries() = default;
  explicit PowerSeries(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  double operator()(double x) const;

  /// Termwise merge; coefficients of equal exponents are added and exact
  /// zeros dropped.
  PowerSeries operator+(const PowerSeries& other) const;
  bool operator==(const PowerSeries&) const = default;

 private:
  std::vector<Term> terms_;
};

/// Termwise derivative: (c, ν) ↦ (c·Γ(1+ν)/Γ(1+ν−α), ν−α); constants vanish.
/// DomainError for an exponent in (0, α).
PowerSeries deriv_series(double alpha, const PowerSeries& f);

/// Samples at x0 + j·h, j = 0..n−1.
class GridFunction {
 public:
  GridFunction(double x0, double h, std::vector<double> values);

  double x0() const noexcept { return x0_; }
  double h() const noexcept { return h_; }
  std::size_t size() const noexcept { return values_.size(); }
  double x(std::size_t j) const noexcept { return x0_ + static_cast<double>(j) * h_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }

  static GridFunction sample(double x0, double h, std::size_t n,
                             const std::function<double(double)>& f);

 private:
  double x0_;
  double h_;
  std::vector<double> values_;
};

/// Product integration of I^{1−α}[f − f(x0)] (f piecewise linear, kernel
/// integrated exactly per cell), then centered differences; one-sided
/// second-order differences at both ends. Same grid as the input. The value at
/// x0 itself is not meaningful when the true derivative is singular there.
GridFunction deriv_numeric(double alpha, const GridFunction& f);
/// Single-threaded reference; bit-identical to deriv_numeric.
GridFunction deriv_numeric_serial(double alpha, const GridFunction& f);

// ---------------------------------------------------------------------------
// Closed-form derivative identities.

struct IdentityParams {
  double alpha = 0.5;
  double a = 1.0;
  double beta = 1.5;  // second parameter for (ii), (v), (vi)
};

struct SideValue {
  double value = 0.0;
  double tail_bound = 0.0;
};

struct Residual {
  double residual = 0.0;
  double tail_bound = 0.0;  // lhs + rhs bounds combined
};

struct Identity {
  std::string name;         // "i" .. "viii-sin"
  std::string description;  // the formula, in plain text
  /// Throws DomainError when the parameters are outside the identity's range.
  std::function<void(const IdentityParams&)> check;
  /// Order of the derivative taken (α, or β for (ii)).
  std::function<double(const IdentityParams&)> order;
  /// The function being differentiated, for sampling.
  std::function<double(const IdentityParams&, double)> f;
  /// Left side by the term-by-term power rule on f's series.
  std::function<SideValue(const IdentityParams&, double)> lhs;
  /// Right side in closed form through the Mittag-Leffler routines.
  std::function<SideValue(const IdentityParams&, double)> rhs;

  Residual residual(const IdentityParams& p, double x) const;
};

/// (i), (ii), (iii), (iv), (v), (vi), (vii), (viii-cos), (viii-sin).
const std::vector<Identity>& identity_table();
const Identity& find_identity(const std::string& name);

/// Tolerance for numeric_check at h = 1e-3 on [0, 2]: max residual ≤
/// kSchemeTolerance · max(1, max |rhs|).
inline constexpr double kSchemeTolerance = 1e-4;

/// Max |D^α f − rhs| over sampled [0, x_max] with deriv_numeric, compared on
/// x ≥ x_max/4 (the scheme loses order in the layer next to the origin).
struct NumericCheck {
  double max_residual = 0.0;
  double max_abs_rhs = 0.0;
  double x_at_max = 0.0;
  double x_from = 0.0;
  double h = 0.0;

  bool within_tolerance() const {
    return max_residual <= kSchemeTolerance * std::max(1.0, max_abs_rhs);
  }
};

NumericCheck numeric_check(const Identity& id, const IdentityParams& p, double x_max, double h);

struct AdditionResidual {
  double sin_residual = 0.0;
  double cos_residual = 0.0;
  double tail_bound = 0.0;
};

/// |sin_α((x+y)^α) − [sin_α(x^α)cos_α(y^α) + cos_α(x^α)sin_α(y^α)]| and the
/// cosine analogue. A measurement: the formula is only exact at α = 1.
AdditionResidual addition_residual(double alpha, double x, double y);

}  // namespace fw::jumarie
