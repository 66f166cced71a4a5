#pragma once

// Classical and fractional Weierstrass functions
//
//   W(x)     = Σ_{k≥1} λ^{(s−2)k}   sin(λ^k x)
//   W_α(x)   = Σ_{k≥1} λ^{(s−2)k}   sin_α(λ^{αk} x^α)
//   D^α W_α  = Σ_{k≥1} λ^{(s−2+α)k} cos_α(λ^{αk} x^α)     (needs α < 2 − s)
//
// summed over k = 1..K with a rigorous truncation tail.

#include <cstddef>
#include <optional>
#include <vector>

#include "fracweier/mlf.hpp"

namespace fw::weierstrass {

/// Tail target used to pick K when none is given.
inline constexpr double kDefaultTail = 1e-8;

class WeierstrassParams {
 public:
  /// K = 0 picks the smallest K whose function tail is ≤ kDefaultTail.
  /// ParamError unless λ > 1, 1 < s < 2, 0 < α ≤ 1.
  WeierstrassParams(double lambda, double s, double alpha = 1.0, std::size_t K = 0);

  double lambda() const noexcept { return lambda_; }
  double s() const noexcept { return s_; }
  double alpha() const noexcept { return alpha_; }
  std::size_t K() const noexcept { return K_; }
  /// Terms used by the derivative series: K when given explicitly, otherwise
  /// the smallest K whose derivative tail is ≤ kDefaultTail.
  std::size_t deriv_K() const;

  WeierstrassParams with_K(std::size_t K) const;

 private:
  double lambda_;
  double s_;
  double alpha_;
  std::size_t K_;
  bool explicit_K_;
};

/// max(1, sup |sin_α|, |cos_α|), sampled on [0, 50] (both decay beyond for
/// α < 1). Computed once per α.
double trig_sup(double alpha);

/// Smallest K ≥ 1 with M(α)·λ^{(s−2)(K+1)}/(1 − λ^{s−2}) ≤ tail.
std::size_t default_terms(double lambda, double s, double alpha, double tail = kDefaultTail);

/// tail_bound = λ^{(s−2)(K+1)}/(1 − λ^{s−2}) plus summation rounding.
mlf::RealResult w_classical(double lambda, double s, double x, std::size_t K);

/// Zero for x ≤ 0. tail_bound = M(α)·λ^{(s−2)(K+1)}/(1 − λ^{s−2}) plus the
/// per-term evaluation bounds.
mlf::RealResult w_frac(const WeierstrassParams& p, double x);

/// λ^{s−2+α}, the common ratio of the derivative series.
double deriv_ratio(const WeierstrassParams& p);

/// DivergentSeries (carrying deriv_ratio) when α ≥ 2 − s.
mlf::RealResult w_frac_deriv(const WeierstrassParams& p, double x);

/// k-th term λ^{(s−2+α)k} cos_α(λ^{αk} x^α) without the convergence check.
double w_frac_deriv_term(const WeierstrassParams& p, std::size_t k, double x);

struct HolderConstants {
  double c1 = 0.0;
  std::optional<double> c2;  // empty when s − 2 + α ≥ 0 (derivative diverges)
  bool c1_positive = false;
  bool c2_positive = false;
};

/// C1 = 1/(λ^{s−2+α} − 1) + 1/(1 − λ^{s−2}). ParamError when s − 2 + α = 0.
double holder_c1(const WeierstrassParams& p);
/// C2 = 1/(λ^{s−2+2α} − 1) + 1/(1 − λ^{s−2+α}). ParamError when
/// s − 2 + 2α = 0 or s − 2 + α ≥ 0.
double holder_c2(const WeierstrassParams& p);
/// Both, as literal formulas; nonpositive values are flagged, not corrected.
HolderConstants holder_constants(const WeierstrassParams& p);

enum class Which { function, derivative };

struct Samples {
  double x0 = 0.0;
  double h = 0.0;
  std::vector<double> values;
  double x(std::size_t j) const noexcept { return x0 + static_cast<double>(j) * h; }
};

/// Uniform grid x_j = j·h, h = x_max/(n−1), j = 0..n−1, evaluated in parallel.
Samples sample(const WeierstrassParams& p, double x_max, std::size_t n_points, Which which);
/// Single-threaded reference; bit-identical to sample.
Samples sample_serial(const WeierstrassParams& p, double x_max, std::size_t n_points,
                      Which which);

}  // namespace fw::weierstrass
