#pragma once

// Roughness of sampled graphs: box-counting dimension and the global Hölder
// exponent (scaling of the worst-case oscillation), both as log-log slopes
// over dyadic scales.

#include <cstddef>
#include <vector>

namespace fw::roughness {

/// Uniform samples x0 + j·h, j = 0..n−1; n ≥ 16, h > 0, all values finite.
/// ParamError otherwise.
class SampledSignal {
 public:
  static constexpr std::size_t kMinPoints = 16;

  SampledSignal(double x0, double h, std::vector<double> values);

  double x0() const noexcept { return x0_; }
  double h() const noexcept { return h_; }
  std::size_t size() const noexcept { return values_.size(); }
  double x(std::size_t j) const noexcept { return x0_ + static_cast<double>(j) * h_; }
  /// (n − 1)·h
  double domain() const noexcept { return static_cast<double>(values_.size() - 1) * h_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }

 private:
  double x0_;
  double h_;
  std::vector<double> values_;
};

struct ScalePoint {
  double scale;  // r (box) or δ (Hölder), strictly decreasing along the list
  double count;  // N(r), or the max oscillation at δ
};

struct DimensionEstimate {
  double slope = 0.0;
  double std_error = 0.0;
  double r2 = 1.0;
  std::vector<ScalePoint> scales;
  bool degenerate = false;  // constant signal, slope fixed at 1
};

/// Box-count window default: r = domain·2^{−e}, e = 4..10.
inline constexpr int kDefaultMinExp = 10;
inline constexpr int kDefaultMaxExp = 4;

/// Columns of width r = domain·2^{−e} for e = r_max_exp..r_min_exp; a scale is
/// kept when r ≥ 4h. N(r) = Σ_columns max(1, ceil(osc_column / r)); the
/// estimate is the least-squares slope of log N against log(1/r).
/// ScaleError with fewer than 4 kept scales or r_max_exp ≥ r_min_exp.
DimensionEstimate box_dimension(const SampledSignal& s, int r_min_exp = kDefaultMinExp,
                                int r_max_exp = kDefaultMaxExp);
/// Single-threaded reference; bit-identical to box_dimension.
DimensionEstimate box_dimension_serial(const SampledSignal& s, int r_min_exp = kDefaultMinExp,
                                       int r_max_exp = kDefaultMaxExp);

/// max |v_j − v_i| over grid points with |x_j − x_i| ≤ δ (window ⌊δ/h⌋
/// points each side, clipped). Zero when δ < h.
double oscillation(const SampledSignal& s, std::size_t i, double delta);

/// max_i oscillation(i, δ), in O(n).
double max_oscillation(const SampledSignal& s, double delta);

struct HolderEstimate : DimensionEstimate {
  double dimension = 0.0;  // 2 − H
};

/// δ = domain·2^{−e} for each e, kept when δ ≥ 4h; H is the slope of
/// log max_i osc(i, δ) against log δ. ScaleError with fewer than 4 kept
/// scales, DegenerateError for a constant signal.
HolderEstimate holder_global(const SampledSignal& s, const std::vector<int>& delta_exps = {4, 5, 6, 7, 8, 9, 10});

struct Consistency {
  double d_box = 0.0;
  double holder = 0.0;
  double discrepancy = 0.0;  // |d_box − (2 − H)|
};

Consistency dim_holder_consistency(const SampledSignal& s, int r_min_exp = kDefaultMinExp,
                                   int r_max_exp = kDefaultMaxExp,
                                   const std::vector<int>& delta_exps = {4, 5, 6, 7, 8, 9, 10});

}  // namespace fw::roughness
