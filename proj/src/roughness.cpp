#include "fracweier/roughness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <sstream>

#include "fracweier/errors.hpp"

namespace fw::roughness {

SampledSignal::SampledSignal(double x0, double h, std::vector<double> values)
    : x0_(x0), h_(h), values_(std::move(values)) {
  if (!std::isfinite(x0_)) throw ParamError("x0 must be finite");
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw ParamError("step h must be > 0");
  if (values_.size() < kMinPoints) {
    std::ostringstream os;
    os << "signal needs at least " << kMinPoints << " points, got " << values_.size();
    throw ParamError(os.str());
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ParamError("signal values must be finite");
  }
}

namespace {

struct Fit {
  double slope, std_error, r2;
};

// Unweighted least squares y = a + b·x.
Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double b = sxy / sxx;
  const double ssr = std::max(0.0, syy - b * sxy);
  const double r2 = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
  const double se = x.size() > 2 ? std::sqrt(ssr / (n - 2.0) / sxx) : 0.0;
  return {b, se, r2};
}

// Exponents in [lo_exp, hi_exp] whose scale domain·2^{−e} spans ≥ 4 steps.
std::vector<int> usable_exponents(const SampledSignal& s, int lo_exp, int hi_exp) {
  std::vector<int> out;
  const auto cells = static_cast<double>(s.size() - 1);
  for (int e = lo_exp; e <= hi_exp; ++e) {
    if (e < 0 || e > 62) continue;
    if (cells / std::ldexp(1.0, e) >= 4.0) out.push_back(e);
  }
  return out;
}

// max − min of values[lo..hi]
double column_range(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  double mn = v[lo], mx = v[lo];
  for (std::size_t j = lo + 1; j <= hi; ++j) {
    mn = std::min(mn, v[j]);
    mx = std::max(mx, v[j]);
  }
  return mx - mn;
}

// Columns share their boundary samples.
std::uint64_t box_count(const SampledSignal& s, int e, bool parallel, bool& any_rise) {
  const auto& v = s.values();
  const std::uint64_t cells = s.size() - 1;
  const std::int64_t columns = std::int64_t{1} << e;
  const double r = s.domain() * std::ldexp(1.0, -e);
  std::uint64_t total = 0;
  int rise = 0;
#pragma omp parallel for schedule(static) reduction(+ : total) reduction(| : rise) if (parallel)
  for (std::int64_t c = 0; c < columns; ++c) {
    const auto uc = static_cast<std::uint64_t>(c);
    const std::size_t lo = static_cast<std::size_t>((uc * cells) >> e);
    const std::size_t hi = static_cast<std::size_t>(((uc + 1) * cells) >> e);
    const double osc = column_range(v, lo, hi);
    if (osc > 0.0) rise |= 1;
    total += static_cast<std::uint64_t>(std::max(1.0, std::ceil(osc / r)));
  }
  any_rise = rise != 0;
  return total;
}

DimensionEstimate box_dimension_impl(const SampledSignal& s, int r_min_exp, int r_max_exp,
                                     bool parallel) {
  if (!(r_max_exp < r_min_exp)) throw ScaleError("box window needs r_max_exp < r_min_exp");
  const auto exps = usable_exponents(s, r_max_exp, r_min_exp);
  if (exps.size() < 4) {
    std::ostringstream os;
    os << "box counting needs >= 4 scales with boxes of >= 4 samples, got " << exps.size();
    throw ScaleError(os.str());
  }
  DimensionEstimate out;
  std::vector<double> lx, ly;
  bool rises = false;
  for (int e : exps) {
    bool rise = false;
    const double r = s.domain() * std::ldexp(1.0, -e);
    const auto n = box_count(s, e, parallel, rise);
    rises = rises || rise;
    out.scales.push_back({r, static_cast<double>(n)});
    lx.push_back(std::log(1.0 / r));
    ly.push_back(std::log(static_cast<double>(n)));
  }
  if (!rises) {
    out.slope = 1.0;
    out.std_error = 0.0;
    out.r2 = 1.0;
    out.degenerate = true;
    return out;
  }
  const Fit f = least_squares(lx, ly);
  out.slope = f.slope;
  out.std_error = f.std_error;
  out.r2 = f.r2;
  return out;
}

std::size_t half_width(const SampledSignal& s, double delta) {
  if (!(delta >= s.h())) return 0;
  const double w = std::floor(delta / s.h());
  return w >= static_cast<double>(s.size()) ? s.size() - 1 : static_cast<std::size_t>(w);
}

}  // namespace

DimensionEstimate box_dimension(const SampledSignal& s, int r_min_exp, int r_max_exp) {
  return box_dimension_impl(s, r_min_exp, r_max_exp, true);
}

DimensionEstimate box_dimension_serial(const SampledSignal& s, int r_min_exp, int r_max_exp) {
  return box_dimension_impl(s, r_min_exp, r_max_exp, false);
}

double oscillation(const SampledSignal& s, std::size_t i, double delta) {
  if (i >= s.size()) throw DomainError("oscillation index out of range");
  const std::size_t w = half_width(s, delta);
  const std::size_t lo = i >= w ? i - w : 0;
  const std::size_t hi = std::min(s.size() - 1, i + w);
  double best = 0.0;
  for (std::size_t j = lo; j <= hi; ++j) best = std::max(best, std::abs(s[j] - s[i]));
  return best;
}

// A pair at distance ≤ w lies in some window of w + 1 samples, and each
// window's range is realized by such a pair: the sup is the largest range.
double max_oscillation(const SampledSignal& s, double delta) {
  const std::size_t w = half_width(s, delta);
  if (w == 0) return 0.0;
  const auto& v = s.values();
  std::deque<std::size_t> hi, lo;  // indices of decreasing / increasing values
  double best = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    while (!hi.empty() && v[hi.back()] <= v[j]) hi.pop_back();
    while (!lo.empty() && v[lo.back()] >= v[j]) lo.pop_back();
    hi.push_back(j);
    lo.push_back(j);
    if (hi.front() + w < j) hi.pop_front();
    if (lo.front() + w < j) lo.pop_front();
    best = std::max(best, v[hi.front()] - v[lo.front()]);
  }
  return best;
}

HolderEstimate holder_global(const SampledSignal& s, const std::vector<int>& delta_exps) {
  std::vector<int> exps = delta_exps;
  std::sort(exps.begin(), exps.end());
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  std::vector<int> kept;
  for (int e : exps) {
    if (e >= 0 && e <= 62 && s.domain() * std::ldexp(1.0, -e) >= 4.0 * s.h()) kept.push_back(e);
  }
  if (kept.size() < 4) {
    std::ostringstream os;
    os << "Holder fit needs >= 4 scales with delta >= 4h, got " << kept.size();
    throw ScaleError(os.str());
  }
  const auto [mn, mx] = std::minmax_element(s.values().begin(), s.values().end());
  if (*mn == *mx) throw DegenerateError("constant signal has no Holder scaling");

  HolderEstimate out;
  std::vector<double> lx, ly;
  for (int e : kept) {
    const double delta = s.domain() * std::ldexp(1.0, -e);
    const double osc = max_oscillation(s, delta);
    out.scales.push_back({delta, osc});
    if (!(osc > 0.0)) {
      throw DegenerateError("zero oscillation at a fitted scale");
    }
    lx.push_back(std::log(delta));
    ly.push_back(std::log(osc));
  }
  const Fit f = least_squares(lx, ly);
  out.slope = f.slope;
  out.std_error = f.std_error;
  out.r2 = f.r2;
  out.dimension = 2.0 - f.slope;
  return out;
}

Consistency dim_holder_consistency(const SampledSignal& s, int r_min_exp, int r_max_exp,
                                   const std::vector<int>& delta_exps) {
  const auto d = box_dimension(s, r_min_exp, r_max_exp);
  const auto h = holder_global(s, delta_exps);
  return {d.slope, h.slope, std::abs(d.slope - (2.0 - h.slope))};
}

}  // namespace fw::roughness
