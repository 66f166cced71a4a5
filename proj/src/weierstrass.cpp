#include "fracweier/weierstrass.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "fracweier/errors.hpp"

namespace fw::weierstrass {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxTerms = 100000;

// The sums need absolute accuracy only, so a term that misses the default
// relative tolerance (near a zero, or at a huge phase) is retried looser. The
// returned tail_bound is honest either way.
mlf::RealResult trig_eval(const mlf::FracTrig& trig, double u, bool odd) {
  for (double tol : {mlf::kDefaultTol, 1e-11, 1e-9}) {
    try {
      return odd ? trig.sin(u, {tol}) : trig.cos(u, {tol});
    } catch (const NoConvergence&) {
      if (tol == 1e-9) throw;
    }
  }
  return {};
}

void validate(double lambda, double s, double alpha) {
  if (!(lambda > 1.0) || !std::isfinite(lambda)) throw ParamError("lambda must be > 1");
  if (!(s > 1.0 && s < 2.0)) throw ParamError("s must be in (1, 2)");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParamError("alpha must be in (0, 1]");
}

// Neumaier summation with a running Σ|t| for the rounding allowance.
struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;
  double abs_sum = 0.0;

  void add(double t) {
    const double s = sum + t;
    comp += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
    sum = s;
    abs_sum += std::abs(t);
  }
  double value() const { return sum + comp; }
};

// λ^k, and whether it is exact (integer λ with λ^k < 2^53).
double int_power(double lambda, std::size_t k, bool& exact) {
  const double v = std::pow(lambda, static_cast<double>(k));
  int e = 0;
  const bool power_of_two = std::frexp(lambda, &e) == 0.5;
  exact = std::isfinite(v) && (power_of_two || (lambda == std::floor(lambda) && v < 9007199254740992.0));
  return v;
}

// Argument λ^{αk} x^α of the k-th term and a bound on its rounding error.
struct Arg {
  double u;
  double err;
};

Arg term_arg(double lambda, double alpha, std::size_t k, double x) {
  if (alpha == 1.0) {
    bool exact = false;
    const double lk = int_power(lambda, k, exact);
    const double u = lk * x;
    // fma gives the exact rounding error of the product.
    double err = std::abs(std::fma(lk, x, -u));
    if (!exact) err += 2.0 * kEps * std::abs(u);
    return {u, err};
  }
  const double u = std::pow(lambda, alpha * static_cast<double>(k)) * std::pow(x, alpha);
  const double log_mag = std::abs(alpha * static_cast<double>(k) * std::log(lambda)) +
                         std::abs(alpha * std::log(x));
  return {u, kEps * (4.0 + log_mag) * u};
}

// Σ_{k>K} M·q^k = M·q^{K+1}/(1 − q) for 0 < q < 1.
double geometric_tail(double q, std::size_t K, double m) {
  return m * std::pow(q, static_cast<double>(K + 1)) / (1.0 - q);
}

double compute_trig_sup(double alpha) {
  if (alpha == 1.0) return 1.0;
  const mlf::FracTrig trig(alpha);
  double sup = 1.0;
  for (int i = 0; i <= 10000; ++i) {
    const double u = 0.005 * i;
    const auto c = trig_eval(trig, u, false);
    const auto s = trig_eval(trig, u, true);
    sup = std::max({sup, std::abs(c.value) + c.tail_bound, std::abs(s.value) + s.tail_bound});
  }
  return sup;
}

}  // namespace

double trig_sup(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParamError("alpha must be in (0, 1]");
  static std::mutex mu;
  static std::map<double, double> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(alpha); it != cache.end()) return it->second;
  }
  const double m = compute_trig_sup(alpha);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(alpha, m);
  return m;
}

std::size_t default_terms(double lambda, double s, double alpha, double tail) {
  validate(lambda, s, alpha);
  if (!(tail > 0.0)) throw ParamError("tail target must be > 0");
  const double q = std::pow(lambda, s - 2.0);
  const double m = trig_sup(alpha);
  for (std::size_t K = 1; K < kMaxTerms; ++K) {
    if (geometric_tail(q, K, m) <= tail) return K;
  }
  throw ParamError("tail target needs more than 100000 terms");
}

WeierstrassParams::WeierstrassParams(double lambda, double s, double alpha, std::size_t K)
    : lambda_(lambda), s_(s), alpha_(alpha), K_(K), explicit_K_(K != 0) {
  validate(lambda, s, alpha);
  if (K_ == 0) K_ = default_terms(lambda, s, alpha);
  if (K_ > kMaxTerms) throw ParamError("K must be <= 100000");
}

std::size_t WeierstrassParams::deriv_K() const {
  if (explicit_K_ || alpha_ >= 2.0 - s_) return K_;
  const double q = std::pow(lambda_, s_ - 2.0 + alpha_);
  const double m = trig_sup(alpha_);
  for (std::size_t K = 1; K < kMaxTerms; ++K) {
    if (geometric_tail(q, K, m) <= kDefaultTail) return std::max(K, K_);
  }
  return kMaxTerms;
}

WeierstrassParams WeierstrassParams::with_K(std::size_t K) const {
  if (K == 0) throw ParamError("K must be >= 1");
  return WeierstrassParams(lambda_, s_, alpha_, K);
}

mlf::RealResult w_classical(double lambda, double s, double x, std::size_t K) {
  validate(lambda, s, 1.0);
  if (K == 0) throw ParamError("K must be >= 1");
  mlf::RealResult r;
  r.terms_used = K;
  r.method = mlf::Method::series;
  if (x == 0.0) return r;
  const double q = std::pow(lambda, s - 2.0);
  Accumulator acc;
  double phase_err = 0.0;
  for (std::size_t k = 1; k <= K; ++k) {
    const double amp = std::pow(q, static_cast<double>(k));
    const Arg arg = term_arg(lambda, 1.0, k, x);
    acc.add(amp * std::sin(arg.u));
    phase_err += amp * arg.err;
  }
  r.value = acc.value();
  r.tail_bound = geometric_tail(q, K, 1.0) + phase_err + 4.0 * kEps * acc.abs_sum;
  return r;
}

mlf::RealResult w_frac(const WeierstrassParams& p, double x) {
  mlf::RealResult r;
  r.terms_used = p.K();
  r.method = mlf::Method::series;
  if (!(x > 0.0)) return r;
  const double q = std::pow(p.lambda(), p.s() - 2.0);
  const double m = trig_sup(p.alpha());
  const mlf::FracTrig trig(p.alpha());
  Accumulator acc;
  double term_err = 0.0;
  for (std::size_t k = 1; k <= p.K(); ++k) {
    const double amp = std::pow(q, static_cast<double>(k));
    const Arg arg = term_arg(p.lambda(), p.alpha(), k, x);
    const auto v = trig_eval(trig, arg.u, true);
    acc.add(amp * v.value);
    // Argument rounding moves the value by at most |δu|·sup|sin_α'|, taken as M.
    term_err += amp * (v.tail_bound + m * arg.err);
  }
  r.value = acc.value();
  r.tail_bound = geometric_tail(q, p.K(), m) + term_err + 4.0 * kEps * acc.abs_sum;
  return r;
}

double deriv_ratio(const WeierstrassParams& p) {
  return std::pow(p.lambda(), p.s() - 2.0 + p.alpha());
}

namespace {

void require_convergent(const WeierstrassParams& p) {
  if (p.alpha() >= 2.0 - p.s()) {
    std::ostringstream os;
    os << "derivative series diverges: alpha must be < 2 - s (alpha = " << p.alpha()
       << ", 2 - s = " << 2.0 - p.s() << ", ratio lambda^(s-2+alpha) = " << deriv_ratio(p)
       << ")";
    throw DivergentSeries(os.str(), deriv_ratio(p));
  }
}

}  // namespace

double w_frac_deriv_term(const WeierstrassParams& p, std::size_t k, double x) {
  if (x < 0.0) return 0.0;
  const double amp = std::pow(deriv_ratio(p), static_cast<double>(k));
  if (x == 0.0) return amp;
  const Arg arg = term_arg(p.lambda(), p.alpha(), k, x);
  return amp * trig_eval(mlf::FracTrig(p.alpha()), arg.u, false).value;
}

mlf::RealResult w_frac_deriv(const WeierstrassParams& p, double x) {
  require_convergent(p);
  const std::size_t K = p.deriv_K();
  mlf::RealResult r;
  r.terms_used = K;
  r.method = mlf::Method::series;
  if (x < 0.0) return r;
  const double q = deriv_ratio(p);
  const double m = trig_sup(p.alpha());
  const mlf::FracTrig trig(p.alpha());
  Accumulator acc;
  double term_err = 0.0;
  for (std::size_t k = 1; k <= K; ++k) {
    const double amp = std::pow(q, static_cast<double>(k));
    if (x == 0.0) {
      acc.add(amp);
      continue;
    }
    const Arg arg = term_arg(p.lambda(), p.alpha(), k, x);
    const auto v = trig_eval(trig, arg.u, false);
    acc.add(amp * v.value);
    term_err += amp * (v.tail_bound + m * arg.err);
  }
  r.value = acc.value();
  r.tail_bound = geometric_tail(q, K, m) + term_err + 4.0 * kEps * acc.abs_sum;
  return r;
}

double holder_c1(const WeierstrassParams& p) {
  const double e = p.s() - 2.0 + p.alpha();
  if (e == 0.0) throw ParamError("C1 has a pole at s - 2 + alpha = 0");
  return 1.0 / (std::pow(p.lambda(), e) - 1.0) + 1.0 / (1.0 - std::pow(p.lambda(), p.s() - 2.0));
}

double holder_c2(const WeierstrassParams& p) {
  const double e1 = p.s() - 2.0 + p.alpha();
  const double e2 = p.s() - 2.0 + 2.0 * p.alpha();
  if (e1 >= 0.0) throw ParamError("C2 needs s - 2 + alpha < 0");
  if (e2 == 0.0) throw ParamError("C2 has a pole at s - 2 + 2 alpha = 0");
  return 1.0 / (std::pow(p.lambda(), e2) - 1.0) + 1.0 / (1.0 - std::pow(p.lambda(), e1));
}

HolderConstants holder_constants(const WeierstrassParams& p) {
  HolderConstants h;
  h.c1 = holder_c1(p);
  h.c1_positive = h.c1 > 0.0;
  if (p.s() - 2.0 + p.alpha() < 0.0) {
    h.c2 = holder_c2(p);
    h.c2_positive = *h.c2 > 0.0;
  }
  return h;
}

namespace {

Samples prepare(const WeierstrassParams& p, double x_max, std::size_t n, Which which) {
  if (!(x_max > 0.0) || !std::isfinite(x_max)) throw ParamError("x_max must be > 0");
  if (n < 2) throw ParamError("need at least 2 sample points");
  if (which == Which::derivative) require_convergent(p);
  Samples out;
  out.x0 = 0.0;
  out.h = x_max / static_cast<double>(n - 1);
  out.values.resize(n);
  return out;
}

double eval_at(const WeierstrassParams& p, Which which, double x) {
  return which == Which::function ? w_frac(p, x).value : w_frac_deriv(p, x).value;
}

}  // namespace

Samples sample(const WeierstrassParams& p, double x_max, std::size_t n_points, Which which) {
  Samples out = prepare(p, x_max, n_points, which);
  trig_sup(p.alpha());  // fill the cache before the parallel region
  const auto n = static_cast<std::ptrdiff_t>(n_points);
  // Report the failure at the lowest index, as the serial loop would.
  std::exception_ptr error;
  std::ptrdiff_t error_at = n;
  std::mutex error_mu;
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    try {
      out.values[j] = eval_at(p, which, out.x(static_cast<std::size_t>(j)));
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (j < error_at) {
        error_at = j;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

Samples sample_serial(const WeierstrassParams& p, double x_max, std::size_t n_points,
                      Which which) {
  Samples out = prepare(p, x_max, n_points, which);
  for (std::size_t j = 0; j < n_points; ++j) out.values[j] = eval_at(p, which, out.x(j));
  return out;
}

}  // namespace fw::weierstrass
