#pragma once

// Mittag-Leffler functions and the fractional trigonometric functions built
// on them.
//
//   E_{a,b}(w)      = Σ_k w^k / Γ(b + k a)
//   cos_{α,β}(u)    = Σ_k (−1)^k u^{2k}     / Γ(β + 2kα)   = E_{2α,β}(−u²)
//   sin_{α,β}(u)    = Σ_k (−1)^k u^{2k+1}   / Γ(β + (2k+1)α) = u E_{2α,α+β}(−u²)
//
// u is always the already-powered argument: cos_α(x^α) is frac_cos(α, x^α).
//
// Evaluation picks the cheapest route that meets the tolerance:
//   1. power series in double with compensated summation,
//   2. the large-|z| expansion (exponential + algebraic parts, optimally
//      truncated) when 0 < a < 2,
//   3. the power series in 50- and 100-digit binary floating point.
// Every result reports the route taken and an absolute error bound.

#include <complex>
#include <cstddef>
#include <memory>
#include <utility>

#include "fracweier/gamma.hpp"

namespace fw::mlf {

inline constexpr double kDefaultTol = 1e-13;
inline constexpr std::size_t kDefaultTermsMax = 10000;

/// Fractional order α ∈ (0, 2] with optional second parameter β > 0.
class FracParams {
 public:
  explicit FracParams(double alpha, double beta = 1.0);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

 private:
  double alpha_;
  double beta_;
};

enum class Method {
  exact,            // closed-form value (zero argument)
  series,           // double-precision power series
  series_extended,  // 50/100-digit power series
  asymptotic,       // large-argument expansion
};

const char* to_string(Method m) noexcept;

template <class V>
struct SeriesEvalResult {
  V value{};
  std::size_t terms_used = 1;
  /// Absolute error bound: truncation tail plus accumulated rounding.
  double tail_bound = 0.0;
  Method method = Method::series;
};

using RealResult = SeriesEvalResult<double>;
using ComplexResult = SeriesEvalResult<std::complex<double>>;

struct EvalOptions {
  double tol = kDefaultTol;
  std::size_t terms_max = kDefaultTermsMax;
};

namespace detail {
struct ExtendedTables;
}

/// E_{a,b}(w) for a > 0, b > 0. Extended-precision coefficient tables are
/// built on first use and shared between copies; evaluation is thread safe.
class MittagLeffler {
 public:
  MittagLeffler(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  RealResult eval(double w, const EvalOptions& opt = {}) const;
  ComplexResult eval(std::complex<double> w, const EvalOptions& opt = {}) const;

  /// Sum of exactly n_terms terms in double precision. tail_bound is the
  /// geometric bound from the last term ratio (infinite while terms grow).
  RealResult partial_sum(double w, std::size_t n_terms) const;
  ComplexResult partial_sum(std::complex<double> w, std::size_t n_terms) const;

  /// Large-argument expansion at z = r·e^{iπt}, t ∈ (−1, 1]. Passing the
  /// angle in units of π keeps z = iu exact (t = 1/2). Requires a < 2 and
  /// r > 0. tail_bound is the envelope of the first omitted term.
  ComplexResult asymptotic(double r, double t, double tol) const;

 private:
  friend class FracTrig;
  // b is b + b_lo exactly in the extended tiers.
  MittagLeffler(double a, double b, double b_lo);
  // 50- then 100-digit series at w = x (or w = −x² formed exactly when
  // neg_square); false when neither tier reaches the tolerance.
  bool extended_series(double x, bool neg_square, double peak, const EvalOptions& opt,
                       RealResult& out) const;

  double a_;
  double b_;
  std::shared_ptr<detail::ExtendedTables> tables_;
};

/// cos_{α,β}(u) and sin_{α,β}(u) for u ≥ 0, sharing one set of evaluators.
class FracTrig {
 public:
  explicit FracTrig(double alpha, double beta = 1.0);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  RealResult cos(double u, const EvalOptions& opt = {}) const;
  RealResult sin(double u, const EvalOptions& opt = {}) const;

 private:
  RealResult eval(double u, bool odd, const EvalOptions& opt) const;

  double alpha_;
  double beta_;
  MittagLeffler even_;  // E_{2α,β}
  MittagLeffler odd_;   // E_{2α,α+β}
  MittagLeffler imag_;  // E_{α,β}, for the large-u expansion along iℝ
};

/// E_α(z) (β = 1 is enforced).
RealResult mittag_leffler(const FracParams& p, double z, double tol = kDefaultTol);
ComplexResult mittag_leffler(const FracParams& p, std::complex<double> z,
                             double tol = kDefaultTol);

/// E_{α,β}(z). With β = 1 this is the same code path as mittag_leffler.
RealResult mittag_leffler2(const FracParams& p, double z, double tol = kDefaultTol);
ComplexResult mittag_leffler2(const FracParams& p, std::complex<double> z,
                              double tol = kDefaultTol);

RealResult frac_cos(double alpha, double u, double tol = kDefaultTol);
RealResult frac_sin(double alpha, double u, double tol = kDefaultTol);
RealResult frac_cos2(double alpha, double beta, double u, double tol = kDefaultTol);
RealResult frac_sin2(double alpha, double beta, double u, double tol = kDefaultTol);

struct ImagDecomposition {
  double re = 0.0;
  double im = 0.0;
  double tail_bound = 0.0;
  std::size_t terms_used = 0;
};

/// (Re, Im) of E_α(iu), summed as one interleaved complex series.
ImagDecomposition mlf_imag_decompose(double alpha, double u, double tol = kDefaultTol);

}  // namespace fw::mlf
