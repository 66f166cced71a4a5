#include "fracweier/mlf.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "fracweier/errors.hpp"

namespace fw::mlf {

namespace bmp = boost::multiprecision;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLn10 = std::numbers::ln10;

// Largest log-magnitude (nats) of a series term each route will attempt.
constexpr double kDoublePeakMax = 690.0;
constexpr double kExt50PeakMax = 40.0 * kLn10;
constexpr double kExt100PeakMax = 88.0 * kLn10;
// Below this peak the double series is tried before the expansion.
constexpr double kSeriesFirstPeak = 8.0;

double magnitude(double v) { return std::abs(v); }
double magnitude(const std::complex<double>& v) { return std::abs(v); }

// Neumaier compensated summation.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <class V>
class CompensatedSum;

template <>
class CompensatedSum<double> {
 public:
  void add(double x) { acc_.add(x); }
  double value() const { return acc_.value(); }

 private:
  Accumulator acc_;
};

template <>
class CompensatedSum<std::complex<double>> {
 public:
  void add(const std::complex<double>& x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  Accumulator re_;
  Accumulator im_;
};

template <class V>
struct Term {
  V value;
  double rel_err;  // relative error estimate of value
};

template <class V>
struct Partial {
  V value{};
  std::size_t terms = 0;
  double truncation = std::numeric_limits<double>::infinity();
  double rounding = 0.0;
  bool converged = false;
  bool overflow = false;
};

// Geometric tail bound from the last two term magnitudes. The term ratio
// |w| Γ(x)/Γ(x + a) is nonincreasing in x > 0 (log-convexity of Γ), so the
// tail after the last term is bounded by |t_K| r/(1 − r).
double geometric_tail(double last, double prev) {
  if (last == 0.0) return 0.0;
  if (prev <= 0.0) return std::numeric_limits<double>::infinity();
  const double r = last / prev;
  if (r >= 1.0) return std::numeric_limits<double>::infinity();
  return last * r / (1.0 - r);
}

// Double-precision power series with the stopping rule: two consecutive
// terms below tol·|S| and a geometric tail below tol·|S|. forced > 0 sums
// exactly that many terms instead.
template <class V, class TermFn>
Partial<V> run_double_series(TermFn&& term, double tol, std::size_t terms_max,
                             std::size_t forced) {
  Partial<V> out;
  CompensatedSum<V> sum;
  double abs_sum = 0.0;
  double err_sum = 0.0;
  double prev_mag = -1.0;
  double mag = 0.0;
  const std::size_t limit = forced > 0 ? forced : terms_max;
  for (std::size_t k = 0; k < limit; ++k) {
    const Term<V> t = term(k);
    mag = magnitude(t.value);
    if (!std::isfinite(mag)) {
      out.overflow = true;
      return out;
    }
    sum.add(t.value);
    abs_sum += mag;
    err_sum += mag * t.rel_err;
    out.terms = k + 1;
    if (forced == 0 && k >= 1) {
      const double s = magnitude(sum.value());
      const double target = tol * s;
      if (mag <= target && prev_mag <= target) {
        const double trunc = geometric_tail(mag, prev_mag);
        const double rounding = err_sum + kEps * s;
        // Keep summing while only the tail is too large; more terms cannot
        // fix an excess of rounding.
        if (trunc + rounding <= target || rounding > target) {
          out.value = sum.value();
          out.truncation = trunc;
          out.rounding = rounding;
          out.converged = trunc + rounding <= target;
          return out;
        }
      }
    }
    prev_mag = mag;
  }
  out.value = sum.value();
  out.rounding = err_sum + kEps * magnitude(out.value);
  if (forced > 0) {
    out.truncation = out.terms >= 2 ? geometric_tail(mag, prev_mag)
                                     : (mag == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    out.converged = std::isfinite(out.truncation);
  }
  return out;
}

// Term k of Σ w^k/Γ(b + ka) for real w.
Term<double> real_term(double w, std::size_t k, double a, double b) {
  const double x = b + static_cast<double>(k) * a;
  if (k == 0) return {rgamma(b), 4.0 * kEps};
  const double kd = static_cast<double>(k);
  if (x <= 170.0) {
    const double p = std::pow(w, kd);
    if (std::isfinite(p) && std::abs(p) > 1e-290 && std::abs(p) < 1e290) {
      return {p * rgamma(x), 4.0 * kEps};
    }
  }
  const double lw = kd * std::log(std::abs(w));
  const double lg = std::lgamma(x);
  const double sign = (w < 0.0 && (k % 2 == 1)) ? -1.0 : 1.0;
  return {sign * std::exp(lw - lg), kEps * (4.0 + std::abs(lw) + std::abs(lg))};
}

// Polar form of a complex argument with the angle in units of π, exact for
// the four axis directions.
struct Polar {
  double r;
  double t;
  bool axis;
};

Polar to_polar(std::complex<double> z) {
  const double re = z.real();
  const double im = z.imag();
  if (re == 0.0) return {std::abs(im), im >= 0.0 ? 0.5 : -0.5, true};
  if (im == 0.0) return {std::abs(re), re > 0.0 ? 0.0 : 1.0, true};
  return {std::abs(z), std::atan2(im, re) / std::numbers::pi, false};
}

Term<std::complex<double>> complex_term(const Polar& z, std::size_t k, double a, double b) {
  const Term<double> m = real_term(z.r, k, a, b);
  const double kt = static_cast<double>(k) * z.t;
  const std::complex<double> phase(cospi(kt), sinpi(kt));
  const double phase_err = z.axis ? 0.0 : 4.0 * kEps * static_cast<double>(k);
  return {m.value * phase, m.rel_err + phase_err};
}

}  // namespace

namespace {

// Exact rounding error of x + y.
double two_sum_error(double x, double y) {
  const double s = x + y;
  const double bb = s - x;
  return (x - (s - bb)) + (y - bb);
}

}  // namespace

namespace detail {

// Lazily extended table of 1/Γ(b + ka) in extended precision. Readers get an
// immutable snapshot; growth copies under the lock.
template <class R>
class CoefficientTable {
 public:
  CoefficientTable(double a, double b, double b_lo) : a_(a), b_(b), b_lo_(b_lo) {}

  std::shared_ptr<const std::vector<R>> at_least(std::size_t n) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (!data_ || data_->size() < n) {
      const std::size_t old = data_ ? data_->size() : 0;
      const std::size_t target = std::max<std::size_t>({n, 2 * old, 64});
      auto next = std::make_shared<std::vector<R>>();
      next->reserve(target);
      if (data_) next->assign(data_->begin(), data_->end());
      const R a(a_);
      const R b = R(b_) + R(b_lo_);
      for (std::size_t k = old; k < target; ++k) {
        const R x = b + R(k) * a;
        next->push_back(R(1) / boost::math::tgamma(x));
      }
      data_ = std::move(next);
    }
    return data_;
  }

 private:
  double a_;
  double b_;
  double b_lo_;
  mutable std::mutex mu_;
  mutable std::shared_ptr<const std::vector<R>> data_;
};

using Real50 = bmp::cpp_bin_float_50;
using Real100 = bmp::cpp_bin_float_100;
using Complex50 = bmp::cpp_complex_50;
using Complex100 = bmp::cpp_complex_100;

struct ExtendedTables {
  ExtendedTables(double a, double b, double b_lo) : t50(a, b, b_lo), t100(a, b, b_lo) {}
  CoefficientTable<Real50> t50;
  CoefficientTable<Real100> t100;
};

}  // namespace detail

namespace {

template <class R>
double to_double(const R& x) {
  return x.template convert_to<double>();
}

template <class R, class V>
R mp_abs(const V& x) {
  if constexpr (std::is_same_v<R, V>) {
    return bmp::abs(x);
  } else {
    const R re = x.real();
    const R im = x.imag();
    return bmp::sqrt(re * re + im * im);
  }
}

// Extended-precision series Σ c_k w^k. V is R or the matching complex type.
template <class R, class V>
Partial<V> run_extended_series(const detail::CoefficientTable<R>& table, const V& w, double tol,
                               std::size_t terms_max) {
  Partial<V> out;
  auto coef = table.at_least(256);
  V sum(0);
  V power(1);
  R abs_sum(0);
  R prev_mag(-1);
  const R rtol(tol);
  for (std::size_t k = 0; k < terms_max; ++k) {
    if (k >= coef->size()) coef = table.at_least(2 * k);
    const V t = power * (*coef)[k];
    const R mag = mp_abs<R>(t);
    sum += t;
    abs_sum += mag;
    out.terms = k + 1;
    if (k >= 1) {
      const R s = mp_abs<R>(sum);
      const R target = rtol * s;
      if (mag <= target && prev_mag <= target) {
        R trunc(0);
        if (mag != 0) {
          const R r = prev_mag > 0 ? R(mag / prev_mag) : R(2);
          trunc = r < 1 ? R(mag * r / (1 - r)) : R(std::numeric_limits<double>::infinity());
        }
        const R eps_r = std::numeric_limits<R>::epsilon();
        const double rounding = to_double(abs_sum * eps_r * R(k + 4)) + kEps * to_double(s);
        const double limit = tol * to_double(s);
        if (to_double(trunc) + rounding <= limit || rounding > limit) {
          out.value = sum;
          out.truncation = to_double(trunc);
          out.rounding = rounding;
          out.converged = out.truncation + out.rounding <= limit;
          return out;
        }
      }
    }
    prev_mag = mag;
    power *= w;
  }
  out.value = sum;
  return out;
}

double as_double(const detail::Real50& x) { return to_double(x); }
double as_double(const detail::Real100& x) { return to_double(x); }
std::complex<double> as_double(const detail::Complex50& x) {
  return {to_double(x.real()), to_double(x.imag())};
}
std::complex<double> as_double(const detail::Complex100& x) {
  return {to_double(x.real()), to_double(x.imag())};
}

template <class Src, class Dst>
Partial<Dst> demote(const Partial<Src>& p) {
  Partial<Dst> out;
  out.value = as_double(p.value);
  out.terms = p.terms;
  out.truncation = p.truncation;
  out.rounding = p.rounding;
  out.converged = p.converged;
  out.overflow = p.overflow || !std::isfinite(std::abs(out.value)) ||
                 !std::isfinite(out.truncation + out.rounding);
  out.converged = out.converged && !out.overflow;
  return out;
}

template <class V>
SeriesEvalResult<V> finish(const Partial<V>& p, Method m) {
  SeriesEvalResult<V> r;
  r.value = p.value;
  r.terms_used = std::max<std::size_t>(p.terms, 1);
  r.tail_bound = p.truncation + p.rounding;
  r.method = m;
  return r;
}

[[noreturn]] void no_convergence(double a, double b, double arg_mag, const char* what) {
  std::ostringstream os;
  os << "no convergence: E_{" << a << "," << b << "} at |z| = " << arg_mag << " (" << what
     << ")";
  throw NoConvergence(os.str());
}

void check_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw DomainError("tolerance must be positive");
}

}  // namespace

// ---------------------------------------------------------------------------

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::exact:
      return "exact";
    case Method::series:
      return "series";
    case Method::series_extended:
      return "series_extended";
    case Method::asymptotic:
      return "asymptotic";
  }
  return "unknown";
}

FracParams::FracParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 2.0) {
    throw ParamError("alpha must satisfy 0 < alpha <= 2");
  }
  if (!std::isfinite(beta) || beta <= 0.0) throw ParamError("beta must be positive");
}

MittagLeffler::MittagLeffler(double a, double b) : MittagLeffler(a, b, 0.0) {}

namespace {

double checked_order(double a) {
  if (!std::isfinite(a) || a <= 0.0) throw ParamError("Mittag-Leffler order must be positive");
  return a;
}

double checked_beta(double b) {
  if (!std::isfinite(b) || b <= 0.0) throw ParamError("Mittag-Leffler beta must be positive");
  return b;
}

// Tables are keyed by parameters and shared process-wide, so short-lived
// evaluators (the free functions) do not rebuild them. Bounded FIFO.
std::shared_ptr<detail::ExtendedTables> shared_tables(double a, double b, double b_lo) {
  using Key = std::tuple<double, double, double>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<detail::ExtendedTables>> cache;
  static std::deque<Key> order;
  constexpr std::size_t kMaxEntries = 256;
  const Key key{a, b, b_lo};
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto t = std::make_shared<detail::ExtendedTables>(a, b, b_lo);
  cache.emplace(key, t);
  order.push_back(key);
  if (order.size() > kMaxEntries) {
    cache.erase(order.front());
    order.pop_front();
  }
  return t;
}

}  // namespace

MittagLeffler::MittagLeffler(double a, double b, double b_lo)
    : a_(checked_order(a)), b_(checked_beta(b)), tables_(shared_tables(a, b, b_lo)) {}

RealResult MittagLeffler::partial_sum(double w, std::size_t n_terms) const {
  if (n_terms == 0) throw DomainError("partial_sum needs at least one term");
  auto p = run_double_series<double>([&](std::size_t k) { return real_term(w, k, a_, b_); }, 1.0,
                                     n_terms, n_terms);
  if (p.overflow) no_convergence(a_, b_, std::abs(w), "overflow");
  return finish(p, Method::series);
}

ComplexResult MittagLeffler::partial_sum(std::complex<double> w, std::size_t n_terms) const {
  if (n_terms == 0) throw DomainError("partial_sum needs at least one term");
  const Polar z = to_polar(w);
  auto p = run_double_series<std::complex<double>>(
      [&](std::size_t k) { return complex_term(z, k, a_, b_); }, 1.0, n_terms, n_terms);
  if (p.overflow) no_convergence(a_, b_, z.r, "overflow");
  return finish(p, Method::series);
}

ComplexResult MittagLeffler::asymptotic(double r, double t, double tol) const {
  if (!(a_ < 2.0)) throw DomainError("large-argument expansion needs order < 2");
  if (!(r > 0.0)) throw DomainError("large-argument expansion needs |z| > 0");
  ComplexResult out;
  out.method = Method::asymptotic;
  CompensatedSum<std::complex<double>> sum;
  double abs_sum = 0.0;
  double exp_err = 0.0;
  const double log_r = std::log(r);

  // Exponential part: (1/a) ζ^{1−b} e^{ζ}, ζ = r^{1/a} e^{iπφ/a}, over the
  // branches with |φ| ≤ a (φ = t + 2m); a branch on the boundary |φ| = a
  // pairs with its mirror image and carries half weight.
  const double rho = std::pow(r, 1.0 / a_);
  for (int m = -2; m <= 2; ++m) {
    const double phi = t + 2.0 * m;
    if (!(std::abs(phi) <= a_)) continue;
    const double ang = phi / a_;
    const double weight = std::abs(phi) == a_ ? 0.5 : 1.0;
    const double log_mag =
        rho * cospi(ang) + (1.0 - b_) * log_r / a_ - std::log(a_) + std::log(weight);
    if (log_mag < -745.0) continue;
    const double mag = std::exp(log_mag);
    if (!std::isfinite(mag)) no_convergence(a_, b_, r, "exponential overflow");
    const double big = rho * sinpi(ang);
    const double small = (1.0 - b_) * ang * std::numbers::pi;
    const double c = std::cos(big) * std::cos(small) - std::sin(big) * std::sin(small);
    const double s = std::sin(big) * std::cos(small) + std::cos(big) * std::sin(small);
    sum.add(mag * std::complex<double>(c, s));
    abs_sum += mag;
    // r^{1/a} is exact for a = 1; otherwise its rounding shifts the phase.
    const double phase_err = a_ == 1.0 ? 0.0 : std::abs(big);
    exp_err += mag * kEps * (4.0 + phase_err + std::abs(log_mag));
  }

  // Algebraic part: −Σ_{k≥1} z^{−k}/Γ(b − ka), optimally truncated. The error
  // estimate is the largest of the next three term magnitudes, so isolated
  // zero coefficients (poles of Γ) do not end the sum early. Near the optimal
  // cut the remainder can exceed that estimate; the reported bound is 3x.
  auto term_mag = [&](std::size_t k) {
    const double y = b_ - static_cast<double>(k) * a_;
    const double c = rgamma(y);
    if (c == 0.0) return 0.0;
    return std::exp(std::log(std::abs(c)) - static_cast<double>(k) * log_r);
  };
  double prev_est = std::numeric_limits<double>::infinity();
  double tail = std::numeric_limits<double>::infinity();
  double alg_err = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 1; k <= kDefaultTermsMax; ++k) {
    const double est = std::max({term_mag(k), term_mag(k + 1), term_mag(k + 2)});
    if (est <= 0.25 * tol * std::abs(sum.value()) || est == 0.0 || est > prev_est) {
      tail = est;
      break;
    }
    const double y = b_ - static_cast<double>(k) * a_;
    const double c = rgamma(y);
    if (c != 0.0) {
      const double kt = -static_cast<double>(k) * t;
      const double kd = static_cast<double>(k);
      double mag = std::abs(c) * std::pow(r, -kd);
      double err = 6.0 * kEps;
      if (!(std::isnormal(mag) && std::isnormal(std::pow(r, -kd)))) {
        const double lc = std::log(std::abs(c));
        mag = std::exp(lc - kd * log_r);
        err = kEps * (6.0 + std::abs(lc) + std::abs(kd * log_r));
      }
      const std::complex<double> term =
          -std::copysign(mag, c) * std::complex<double>(cospi(kt), sinpi(kt));
      sum.add(term);
      abs_sum += mag;
      alg_err += mag * err;
    }
    used = k;
    prev_est = est;
  }
  out.value = sum.value();
  out.terms_used = std::max<std::size_t>(used, 1);
  out.tail_bound = 3.0 * tail + exp_err + alg_err + 
                   2.0 * kEps * std::abs(out.value) +
                   2.0 * static_cast<double>(used + 4) * kEps * kEps * abs_sum;
  if (!std::isfinite(std::abs(out.value))) no_convergence(a_, b_, r, "overflow");
  return out;
}

RealResult MittagLeffler::eval(double w, const EvalOptions& opt) const {
  check_tol(opt.tol);
  if (!std::isfinite(w)) throw DomainError("Mittag-Leffler argument must be finite");
  if (w == 0.0) return {rgamma(b_), 1, 0.0, Method::exact};

  const double peak = std::pow(std::abs(w), 1.0 / a_);
  auto try_double = [&](RealResult& r) {
    // All terms share a sign for w > 0, so there is no cancellation to limit.
    if (peak > kDoublePeakMax && w < 0.0) return false;
    auto p = run_double_series<double>([&](std::size_t k) { return real_term(w, k, a_, b_); },
                                       opt.tol, opt.terms_max, 0);
    if (p.overflow || !p.converged) return false;
    r = finish(p, Method::series);
    return true;
  };
  auto try_asymptotic = [&](RealResult& r) {
    if (!(a_ < 2.0)) return false;
    const ComplexResult c = asymptotic(std::abs(w), w > 0.0 ? 0.0 : 1.0, opt.tol);
    if (!(c.tail_bound <= opt.tol * std::abs(c.value.real()))) return false;
    r = {c.value.real(), c.terms_used, c.tail_bound, Method::asymptotic};
    return true;
  };

  RealResult r;
  if (peak <= kSeriesFirstPeak) {
    if (try_double(r)) return r;
    if (try_asymptotic(r)) return r;
  } else {
    if (try_asymptotic(r)) return r;
    if (try_double(r)) return r;
  }
  if (extended_series(w, false, peak, opt, r)) return r;
  no_convergence(a_, b_, std::abs(w), "beyond working precision");
}

ComplexResult MittagLeffler::eval(std::complex<double> w, const EvalOptions& opt) const {
  check_tol(opt.tol);
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
    throw DomainError("Mittag-Leffler argument must be finite");
  }
  if (w == std::complex<double>(0.0, 0.0)) return {{rgamma(b_), 0.0}, 1, 0.0, Method::exact};

  const Polar z = to_polar(w);
  const double peak = std::pow(z.r, 1.0 / a_);
  auto try_double = [&](ComplexResult& r) {
    if (peak > kDoublePeakMax) return false;
    auto p = run_double_series<std::complex<double>>(
        [&](std::size_t k) { return complex_term(z, k, a_, b_); }, opt.tol, opt.terms_max, 0);
    if (p.overflow || !p.converged) return false;
    r = finish(p, Method::series);
    return true;
  };
  auto try_asymptotic = [&](ComplexResult& r) {
    if (!(a_ < 2.0)) return false;
    const ComplexResult c = asymptotic(z.r, z.t, opt.tol);
    if (!(c.tail_bound <= opt.tol * std::abs(c.value))) return false;
    r = c;
    return true;
  };

  ComplexResult r;
  if (peak <= kSeriesFirstPeak) {
    if (try_double(r)) return r;
    if (try_asymptotic(r)) return r;
  } else {
    if (try_asymptotic(r)) return r;
    if (try_double(r)) return r;
  }
  if (peak <= kExt50PeakMax) {
    const detail::Complex50 wz(detail::Real50(w.real()), detail::Real50(w.imag()));
    auto p = run_extended_series<detail::Real50>(tables_->t50, wz, opt.tol, opt.terms_max);
    if (p.converged) {
      return finish(demote<detail::Complex50, std::complex<double>>(p), Method::series_extended);
    }
  }
  if (peak <= kExt100PeakMax) {
    const detail::Complex100 wz(detail::Real100(w.real()), detail::Real100(w.imag()));
    auto p = run_extended_series<detail::Real100>(tables_->t100, wz, opt.tol, opt.terms_max);
    if (p.converged) {
      return finish(demote<detail::Complex100, std::complex<double>>(p), Method::series_extended);
    }
  }
  no_convergence(a_, b_, z.r, "beyond working precision");
}

bool MittagLeffler::extended_series(double x, bool neg_square, double peak,
                                    const EvalOptions& opt, RealResult& out) const {
  // Without cancellation (w > 0) 50 digits suffice at any size.
  const bool same_sign = x > 0.0 && !neg_square;
  if (peak <= kExt50PeakMax || same_sign) {
    detail::Real50 w(x);
    if (neg_square) w = -w * w;
    auto p = run_extended_series(tables_->t50, w, opt.tol, opt.terms_max);
    if (p.converged) {
      out = finish(demote<detail::Real50, double>(p), Method::series_extended);
      return true;
    }
  }
  if (peak <= kExt100PeakMax) {
    detail::Real100 w(x);
    if (neg_square) w = -w * w;
    auto p = run_extended_series(tables_->t100, w, opt.tol, opt.terms_max);
    if (p.converged) {
      out = finish(demote<detail::Real100, double>(p), Method::series_extended);
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------

FracTrig::FracTrig(double alpha, double beta)
    : alpha_(FracParams(alpha, beta).alpha()),
      beta_(beta),
      even_(2.0 * alpha, beta),
      odd_(2.0 * alpha, alpha + beta, two_sum_error(alpha, beta)),
      imag_(alpha, beta) {}

RealResult FracTrig::cos(double u, const EvalOptions& opt) const { return eval(u, false, opt); }
RealResult FracTrig::sin(double u, const EvalOptions& opt) const { return eval(u, true, opt); }

RealResult FracTrig::eval(double u, bool odd, const EvalOptions& opt) const {
  check_tol(opt.tol);
  if (!std::isfinite(u) || u < 0.0) throw DomainError("fractional trig argument must be >= 0");
  if (u == 0.0) return {odd ? 0.0 : rgamma(beta_), 1, 0.0, Method::exact};

  const MittagLeffler& ml = odd ? odd_ : even_;
  const double a = ml.a();
  const double b = ml.b();
  const double scale = odd ? u : 1.0;
  const double peak = std::pow(u, 1.0 / alpha_);

  auto scaled = [&](RealResult r) {
    r.value *= scale;
    r.tail_bound = r.tail_bound * scale + kEps * std::abs(r.value);
    return r;
  };
  auto try_double = [&](RealResult& r) {
    if (peak > kDoublePeakMax) return false;
    // Terms (−1)^k u^{2k}/Γ(b + 2kα) with the power taken directly from u.
    auto term = [&](std::size_t k) -> Term<double> {
      const double kd = static_cast<double>(k);
      const double x = b + kd * a;
      const double sign = (k % 2 == 1) ? -1.0 : 1.0;
      if (k == 0) return {rgamma(b), 4.0 * kEps};
      if (x <= 170.0) {
        const double p = std::pow(u, 2.0 * kd);
        if (std::isfinite(p) && p > 1e-290 && p < 1e290) return {sign * p * rgamma(x), 4.0 * kEps};
      }
      const double lp = 2.0 * kd * std::log(u);
      const double lg = std::lgamma(x);
      return {sign * std::exp(lp - lg), kEps * (4.0 + std::abs(lp) + std::abs(lg))};
    };
    auto p = run_double_series<double>(term, opt.tol, opt.terms_max, 0);
    if (p.overflow || !p.converged) return false;
    r = scaled(finish(p, Method::series));
    return true;
  };
  auto try_asymptotic = [&](RealResult& r) {
    if (!(alpha_ < 2.0)) return false;
    const ComplexResult c = imag_.asymptotic(u, 0.5, opt.tol);
    if (!(c.tail_bound <= opt.tol * std::abs(c.value))) return false;
    r = {odd ? c.value.imag() : c.value.real(), c.terms_used, c.tail_bound, Method::asymptotic};
    return true;
  };

  RealResult r;
  if (peak <= kSeriesFirstPeak) {
    if (try_double(r)) return r;
    if (try_asymptotic(r)) return r;
  } else {
    if (try_asymptotic(r)) return r;
    if (try_double(r)) return r;
  }
  // Extended precision: the same series in w = −u², formed exactly.
  if (ml.extended_series(u, true, peak, opt, r)) return scaled(r);
  no_convergence(a, b, u, "beyond working precision");
}

// ---------------------------------------------------------------------------

RealResult mittag_leffler(const FracParams& p, double z, double tol) {
  return mittag_leffler2(FracParams(p.alpha(), 1.0), z, tol);
}

ComplexResult mittag_leffler(const FracParams& p, std::complex<double> z, double tol) {
  return mittag_leffler2(FracParams(p.alpha(), 1.0), z, tol);
}

RealResult mittag_leffler2(const FracParams& p, double z, double tol) {
  return MittagLeffler(p.alpha(), p.beta()).eval(z, {tol, kDefaultTermsMax});
}

ComplexResult mittag_leffler2(const FracParams& p, std::complex<double> z, double tol) {
  return MittagLeffler(p.alpha(), p.beta()).eval(z, {tol, kDefaultTermsMax});
}

RealResult frac_cos(double alpha, double u, double tol) { return frac_cos2(alpha, 1.0, u, tol); }

RealResult frac_sin(double alpha, double u, double tol) { return frac_sin2(alpha, 1.0, u, tol); }

RealResult frac_cos2(double alpha, double beta, double u, double tol) {
  return FracTrig(alpha, beta).cos(u, {tol, kDefaultTermsMax});
}

RealResult frac_sin2(double alpha, double beta, double u, double tol) {
  return FracTrig(alpha, beta).sin(u, {tol, kDefaultTermsMax});
}

ImagDecomposition mlf_imag_decompose(double alpha, double u, double tol) {
  if (!std::isfinite(u) || u < 0.0) throw DomainError("decomposition argument must be >= 0");
  const ComplexResult r = mittag_leffler(FracParams(alpha), std::complex<double>(0.0, u), tol);
  return {r.value.real(), r.value.imag(), r.tail_bound, r.terms_used};
}

}  // namespace fw::mlf
