#include "fracweier/jumarie.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracweier/errors.hpp"
#include "fracweier/gamma.hpp"
#include "fracweier/mlf.hpp"

namespace fw::jumarie {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_order(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("derivative order must be in (0, 1)");
}

// Γ(1+ν)/Γ(1+ν−q) for 0 < q ≤ 1, ν ≥ 0 (q = 1 gives ν).
double power_coeff(double q, double nu) {
  if (nu == 0.0) return 0.0;
  const double top = 1.0 + nu;
  const double bottom = 1.0 + nu - q;
  if (top <= 170.0) return fw::gamma(top) * rgamma(bottom);
  return std::exp(std::lgamma(top) - std::lgamma(bottom));
}

}  // namespace

double deriv_power_coeff(double alpha, double nu) {
  check_order(alpha);
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError("exponent must be >= 0");
  return power_coeff(alpha, nu);
}

// ---------------------------------------------------------------------------

PowerSeries::PowerSeries(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    if (!std::isfinite(t.coef)) throw DomainError("power series coefficient must be finite");
    if (!(t.exponent >= 0.0) || !std::isfinite(t.exponent)) {
      throw DomainError("power series exponent must be >= 0");
    }
    if (i > 0 && !(t.exponent > terms_[i - 1].exponent)) {
      throw DomainError("power series exponents must be strictly increasing");
    }
  }
}

double PowerSeries::operator()(double x) const {
  if (x < 0.0) return 0.0;
  double sum = 0.0;
  for (const Term& t : terms_) sum += t.coef * std::pow(x, t.exponent);
  return sum;
}

PowerSeries PowerSeries::operator+(const PowerSeries& other) const {
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto i = terms_.begin();
  auto j = other.terms_.begin();
  while (i != terms_.end() || j != other.terms_.end()) {
    Term t;
    if (j == other.terms_.end() || (i != terms_.end() && i->exponent < j->exponent)) {
      t = *i++;
    } else if (i == terms_.end() || j->exponent < i->exponent) {
      t = *j++;
    } else {
      t = {i->coef + j->coef, i->exponent};
      ++i;
      ++j;
      if (t.coef == 0.0) continue;
    }
    out.push_back(t);
  }
  return PowerSeries(std::move(out));
}

PowerSeries deriv_series(double alpha, const PowerSeries& f) {
  check_order(alpha);
  std::vector<PowerSeries::Term> out;
  for (const auto& t : f.terms()) {
    if (t.exponent == 0.0) continue;
    if (t.exponent < alpha) {
      std::ostringstream os;
      os << "exponent " << t.exponent << " is in (0, alpha); derivative would have a negative power";
      throw DomainError(os.str());
    }
    out.push_back({t.coef * power_coeff(alpha, t.exponent), t.exponent - alpha});
  }
  return PowerSeries(std::move(out));
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(double x0, double h, std::vector<double> values)
    : x0_(x0), h_(h), values_(std::move(values)) {
  if (!(x0 >= 0.0) || !std::isfinite(x0)) throw DomainError("grid start must be >= 0");
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("grid step must be > 0");
  if (values_.size() < 3) throw DomainError("grid needs at least 3 points");
}

GridFunction GridFunction::sample(double x0, double h, std::size_t n,
                                  const std::function<double(double)>& f) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = f(x0 + static_cast<double>(j) * h);
  return GridFunction(x0, h, std::move(v));
}

namespace {

// w_m = (m+1)^p − 2m^p + (m−1)^p (m ≥ 1), w_0 = 1, with p = μ+1. For large m
// the differences cancel badly; use m^p Σ_{j even} 2·C(p,j) m^{−j} instead.
std::vector<double> product_weights(double mu, std::size_t n) {
  const double p = mu + 1.0;
  std::vector<double> w(n);
  if (n == 0) return w;
  w[0] = 1.0;
  for (std::size_t m = 1; m < n; ++m) {
    const double md = static_cast<double>(m);
    if (m < 64) {
      w[m] = std::pow(md + 1.0, p) - 2.0 * std::pow(md, p) + std::pow(md - 1.0, p);
      continue;
    }
    const double inv2 = 1.0 / (md * md);
    double binom = p * (p - 1.0) / 2.0;  // C(p, 2)
    double scale = inv2;
    double sum = 0.0;
    for (int j = 2; j <= 16; j += 2) {
      sum += 2.0 * binom * scale;
      binom *= (p - j) * (p - j - 1.0) / ((j + 1.0) * (j + 2.0));
      scale *= inv2;
    }
    w[m] = std::pow(md, p) * sum;
  }
  return w;
}

// Shared by the parallel and serial paths so both sum in the same order.
double integral_at(std::size_t n, const std::vector<double>& phi, const std::vector<double>& w,
                   double scale) {
  // a_{0,n} multiplies φ_0 = 0 and is omitted.
  double s = 0.0;
  for (std::size_t i = 1; i <= n; ++i) s += w[n - i] * phi[i];
  return scale * s;
}

GridFunction differentiate(const GridFunction& f, const std::vector<double>& g) {
  const std::size_t n = g.size();
  const double inv = 1.0 / (2.0 * f.h());
  std::vector<double> d(n);
  d[0] = (-3.0 * g[0] + 4.0 * g[1] - g[2]) * inv;
  for (std::size_t j = 1; j + 1 < n; ++j) d[j] = (g[j + 1] - g[j - 1]) * inv;
  d[n - 1] = (3.0 * g[n - 1] - 4.0 * g[n - 2] + g[n - 3]) * inv;
  return GridFunction(f.x0(), f.h(), std::move(d));
}

struct Prepared {
  std::vector<double> phi;
  std::vector<double> w;
  double scale;
};

Prepared prepare(double alpha, const GridFunction& f) {
  check_order(alpha);
  if (f.size() < 5) throw DomainError("numeric derivative needs at least 5 points");
  const double mu = 1.0 - alpha;
  Prepared p;
  p.phi.resize(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) p.phi[j] = f[j] - f[0];
  p.w = product_weights(mu, f.size());
  p.scale = std::pow(f.h(), mu) * rgamma(mu + 2.0);
  return p;
}

}  // namespace

GridFunction deriv_numeric(double alpha, const GridFunction& f) {
  const Prepared p = prepare(alpha, f);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(f.size());
  std::vector<double> g(f.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    g[j] = integral_at(static_cast<std::size_t>(j), p.phi, p.w, p.scale);
  }
  return differentiate(f, g);
}

GridFunction deriv_numeric_serial(double alpha, const GridFunction& f) {
  const Prepared p = prepare(alpha, f);
  std::vector<double> g(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) g[j] = integral_at(j, p.phi, p.w, p.scale);
  return differentiate(f, g);
}

// ---------------------------------------------------------------------------

namespace {

using Gen = std::function<PowerSeries::Term(const IdentityParams&, std::size_t)>;

// Σ_k c_k·Γ(1+ν_k)/Γ(1+ν_k−q)·x^{ν_k−q}, compensated, until the geometric
// tail of the differentiated terms is below rounding.
SideValue termwise(const Gen& gen, const IdentityParams& p, double q, double x) {
  if (!(x > 0.0)) throw DomainError("identities are evaluated at x > 0");
  double sum = 0.0;
  double comp = 0.0;
  double abs_sum = 0.0;
  double prev = -1.0;
  const double lx = std::log(x);
  for (std::size_t k = 0; k < 5000; ++k) {
    const auto [c, nu] = gen(p, k);
    double t = 0.0;
    if (c != 0.0 && nu != 0.0) t = c * power_coeff(q, nu) * std::exp((nu - q) * lx);
    const double s = sum + t;
    comp += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
    sum = s;
    const double mag = std::abs(t);
    abs_sum += mag;
    if (k >= 2 && prev >= 0.0) {
      const double target = 0.125 * kEps * std::abs(sum + comp);
      if (mag <= target && prev <= target) {
        double trunc = 0.0;
        if (mag > 0.0) {
          const double r = prev > 0.0 ? mag / prev : 2.0;
          if (r >= 1.0) {
            prev = mag;
            continue;
          }
          trunc = mag * r / (1.0 - r);
        }
        // Each term carries a few roundings in c, the Γ ratio and the power.
        const double rounding = abs_sum * kEps * (8.0 + std::abs((nu - q) * lx));
        return {sum + comp, trunc + rounding};
      }
    }
    prev = mag;
  }
  throw NoConvergence("term-by-term derivative series did not converge");
}

SideValue scaled(const mlf::RealResult& r, double factor) {
  const double v = factor * r.value;
  return {v, std::abs(factor) * r.tail_bound + 2.0 * kEps * std::abs(v)};
}

// cos_α(a·x^α), sin_α(a·x^α) for real a (cos even, sin odd in its argument).
mlf::RealResult cos_of(double alpha, double beta, double u) {
  return mlf::frac_cos2(alpha, beta, std::abs(u));
}
mlf::RealResult sin_of(double alpha, double beta, double u) {
  mlf::RealResult r = mlf::frac_sin2(alpha, beta, std::abs(u));
  if (u < 0.0) r.value = -r.value;
  return r;
}

void need_alpha(const IdentityParams& p) {
  if (!(p.alpha > 0.0 && p.alpha <= 1.0)) throw DomainError("alpha must be in (0, 1]");
  if (!std::isfinite(p.a)) throw DomainError("a must be finite");
}

double kd(std::size_t k) { return static_cast<double>(k); }

std::vector<Identity> build_table() {
  std::vector<Identity> t;
  auto alpha_order = [](const IdentityParams& p) { return p.alpha; };

  // (i) D^α E_α(a x^α) = a E_α(a x^α)
  {
    Gen gen = [](const IdentityParams& p, std::size_t k) -> PowerSeries::Term {
      const double nu = kd(k) * p.alpha;
      return {std::pow(p.a, kd(k)) * rgamma(1.0 + nu), nu};
    };
    t.push_back({"i", "D^a E_a(A x^a) = A E_a(A x^a)", need_alpha, alpha_order,
                 [](const IdentityParams& p, double x) {
                   return mlf::mittag_leffler(mlf::FracParams(p.alpha),
                                              p.a * std::pow(x, p.alpha))
                       .value;
                 },
                 [gen](const IdentityParams& p, double x) { return termwise(gen, p, p.alpha, x); },
                 [](const IdentityParams& p, double x) {
                   const double w = p.a * std::pow(x, p.alpha);
                   return scaled(mlf::mittag_leffler(mlf::FracParams(p.alpha), w), p.a);
                 }});
  }

  // (ii) D^β E_α(x^α) = x^{α−β} E_{α,α−β+1}(x^α), 0 < β ≤ α
  {
    Gen gen = [](const IdentityParams& p, std::size_t k) -> PowerSeries::Term {
      const double nu = kd(k) * p.alpha;
      return {rgamma(1.0 + nu), nu};
    };
    t.push_back(
        {"ii", "D^b E_a(x^a) = x^(a-b) E_{a,a-b+1}(x^a)",
         [](const IdentityParams& p) {
           need_alpha(p);
           if (!(p.beta > 0.0 && p.beta <= p.alpha)) {
             throw DomainError("identity (ii) needs 0 < beta <= alpha");
           }
         },
         [](const IdentityParams& p) { return p.beta; },
         [](const IdentityParams& p, double x) {
           return mlf::mittag_leffler(mlf::FracParams(p.alpha), std::pow(x, p.alpha)).value;
         },
         [gen](const IdentityParams& p, double x) { return termwise(gen, p, p.beta, x); },
         [](const IdentityParams& p, double x) {
           const auto r = mlf::mittag_leffler2(mlf::FracParams(p.alpha, p.alpha - p.beta + 1.0),
                                               std::pow(x, p.alpha));
           return scaled(r, std::pow(x, p.alpha - p.beta));
         }});
  }

  // (iii) D^α cos_α(a x^α) = −a sin_α(a x^α)
  {
    Gen gen = [](const IdentityParams& p, std::size_t k) -> PowerSeries::Term {
      const double nu = 2.0 * kd(k) * p.alpha;
      const double sign = (k % 2 == 1) ? -1.0 : 1.0;
      return {sign * std::pow(p.a, 2.0 * kd(k)) * rgamma(1.0 + nu), nu};
    };
    t.push_back({"iii", "D^a cos_a(A x^a) = -A sin_a(A x^a)", need_alpha, alpha_order,
                 [](const IdentityParams& p, double x) {
                   return cos_of(p.alpha, 1.0, p.a * std::pow(x, p.alpha)).value;
                 },
                 [gen](const IdentityParams& p, double x) { return termwise(gen, p, p.alpha, x); },
                 [](const IdentityParams& p, double x) {
                   return scaled(sin_of(p.alpha, 1.0, p.a * std::pow(x, p.alpha)), -p.a);
                 }});
  }

  // (iv) D^α sin_α(a x^α) = a cos_α(a x^α)
  {
    Gen gen = [](const IdentityParams& p, std::size_t k) -> PowerSeries::Term {
      const double nu = (2.0 * kd(k) + 1.0) * p.alpha;
      const double sign = (k % 2 == 1) ? -1.0 : 1.0;
      return {sign * std::pow(p.a, 2.0 * kd(k) + 1.0) * rgamma(1.0 + nu), nu};
    };
    t.push_back({"iv", "D^a sin_a(A x^a) = A cos_a(A x^a)", need_alpha, alpha_order,
                 [](const IdentityParams& p, double x) {
                   return sin_of(p.alpha, 1.0, p.a * std::pow(x, p.alpha)).value;
                 },
                 [gen](const IdentityParams& p, double x) { return termwise(gen, p, p.alpha, x); },
                 [](const IdentityParams& p, double x) {
                   return scaled(cos_of(p.alpha, 1.0, p.a * std::pow(x, p.alpha)), p.a);
                 }});
  }

  // (v) D^α [x^{β−1} cos_{α,β}(x^α)] = x^{β−α−1} cos_{α,β−α}(x^α), β > 1
  {
    Gen gen = [](const IdentityParams& p, std::size_t k) -> PowerSeries::Term {
      const double sign = (k % 2 == 1) ? -1.0 : 1.0;
      const double nu = p.beta - 1.0 + 2.0 * kd(k) * p.alpha;
      return {sign * rgamma(p.beta + 2.0 * kd(k) * p.alpha), nu};
    };
    t.push_back({"v", "D^a [x^(b-1) cos_{a,b}(x^a)] = x^(b-a-1) cos_{a,b-a}(x^a)",
                 [](const IdentityParams& p) {
                   need_alpha(p);
                   if (!(p.beta > 1.0)) throw DomainError("identity (v) needs beta > 1");
                 },
                 alpha_order,
                 [](const IdentityParams& p, double x) {
                   if (x == 0.0) return 0.0;
                   return std::pow(x, p.beta - 1.0) *
                          mlf::frac_cos2(p.alpha, p.beta, std::pow(x, p.alpha)).value;
                 },
                 [gen](const IdentityParams& p, double x) { return termwise(gen, p, p.alpha, x); },
                 [](const IdentityParams& p, double x) {
                   const auto r = mlf::frac_cos2(p.alpha, p.beta - p.alpha, std::pow(x, p.alpha));
                   return scaled(r, std::pow(x, p.beta - p.alpha - 1.0));
                 }});
  }

  // (vi) D^α [x^{β−1} sin_{α,β}(x^α)] = x^{β−α−1} sin_{α,β−α}(x^α)
  {
    Gen gen = [](const IdentityParams& p, std::size_t k) -> PowerSeries::Term {
      const double sign = (k % 2 == 1) ? -1.0 : 1.0;
      const double m = (2.0 * kd(k) + 1.0) * p.alpha;
      return {sign * rgamma(p.beta + m), p.beta - 1.0 + m};
    };
    t.push_back({"vi", "D^a [x^(b-1) sin_{a,b}(x^a)] = x^(b-a-1) sin_{a,b-a}(x^a)",
                 [](const IdentityParams& p) {
                   need_alpha(p);
                   if (!(p.beta > std::max(p.alpha, 1.0 - p.alpha))) {
                     throw DomainError("identity (vi) needs beta > max(alpha, 1 - alpha)");
                   }
                 },
                 alpha_order,
                 [](const IdentityParams& p, double x) {
                   if (x == 0.0) return 0.0;
                   return std::pow(x, p.beta - 1.0) *
                          mlf::frac_sin2(p.alpha, p.beta, std::pow(x, p.alpha)).value;
                 },
                 [gen](const IdentityParams& p, double x) { return termwise(gen, p, p.alpha, x); },
                 [](const IdentityParams& p, double x) {
                   const auto r = mlf::frac_sin2(p.alpha, p.beta - p.alpha, std::pow(x, p.alpha));
                   return scaled(r, std::pow(x, p.beta - p.alpha - 1.0));
                 }});
  }

  // (vii) D^α e^{ax} = a x^{1−α} E_{1,2−α}(ax)
  {
    Gen gen = [](const IdentityParams& p, std::size_t k) -> PowerSeries::Term {
      return {std::pow(p.a, kd(k)) * rgamma(1.0 + kd(k)), kd(k)};
    };
    t.push_back({"vii", "D^a exp(A x) = A x^(1-a) E_{1,2-a}(A x)", need_alpha, alpha_order,
                 [](const IdentityParams& p, double x) { return std::exp(p.a * x); },
                 [gen](const IdentityParams& p, double x) { return termwise(gen, p, p.alpha, x); },
                 [](const IdentityParams& p, double x) {
                   const auto r = mlf::mittag_leffler2(mlf::FracParams(1.0, 2.0 - p.alpha), p.a * x);
                   return scaled(r, p.a * std::pow(x, 1.0 - p.alpha));
                 }});
  }

  // (viii) D^α cos(ax) = −a x^{1−α} sin_{1,2−α}(ax), D^α sin(ax) = a x^{1−α} cos_{1,2−α}(ax)
  {
    Gen gen = [](const IdentityParams& p, std::size_t k) -> PowerSeries::Term {
      const double sign = (k % 2 == 1) ? -1.0 : 1.0;
      return {sign * std::pow(p.a, 2.0 * kd(k)) * rgamma(1.0 + 2.0 * kd(k)), 2.0 * kd(k)};
    };
    t.push_back({"viii-cos", "D^a cos(A x) = -A x^(1-a) sin_{1,2-a}(A x)", need_alpha,
                 alpha_order,
                 [](const IdentityParams& p, double x) { return std::cos(p.a * x); },
                 [gen](const IdentityParams& p, double x) { return termwise(gen, p, p.alpha, x); },
                 [](const IdentityParams& p, double x) {
                   const auto r = sin_of(1.0, 2.0 - p.alpha, p.a * x);
                   return scaled(r, -p.a * std::pow(x, 1.0 - p.alpha));
                 }});
  }
  {
    Gen gen = [](const IdentityParams& p, std::size_t k) -> PowerSeries::Term {
      const double sign = (k % 2 == 1) ? -1.0 : 1.0;
      const double n = 2.0 * kd(k) + 1.0;
      return {sign * std::pow(p.a, n) * rgamma(1.0 + n), n};
    };
    t.push_back({"viii-sin", "D^a sin(A x) = A x^(1-a) cos_{1,2-a}(A x)", need_alpha,
                 alpha_order,
                 [](const IdentityParams& p, double x) { return std::sin(p.a * x); },
                 [gen](const IdentityParams& p, double x) { return termwise(gen, p, p.alpha, x); },
                 [](const IdentityParams& p, double x) {
                   const auto r = cos_of(1.0, 2.0 - p.alpha, p.a * x);
                   return scaled(r, p.a * std::pow(x, 1.0 - p.alpha));
                 }});
  }
  return t;
}

}  // namespace

Residual Identity::residual(const IdentityParams& p, double x) const {
  check(p);
  const SideValue l = lhs(p, x);
  const SideValue r = rhs(p, x);
  return {std::abs(l.value - r.value), l.tail_bound + r.tail_bound};
}

const std::vector<Identity>& identity_table() {
  static const std::vector<Identity> table = build_table();
  return table;
}

const Identity& find_identity(const std::string& name) {
  for (const Identity& id : identity_table()) {
    if (id.name == name) return id;
  }
  throw DomainError("unknown identity '" + name + "'");
}

NumericCheck numeric_check(const Identity& id, const IdentityParams& p, double x_max, double h) {
  id.check(p);
  const double q = id.order(p);
  if (!(x_max > 0.0) || !(h > 0.0) || h * 8.0 > x_max) throw DomainError("bad grid for check");
  const auto n = static_cast<std::size_t>(std::llround(x_max / h)) + 1;
  const GridFunction f =
      GridFunction::sample(0.0, h, n, [&](double x) { return id.f(p, x); });
  const GridFunction d = deriv_numeric(q, f);
  NumericCheck out;
  out.h = h;
  out.x_from = x_max / 4.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = d.x(j);
    if (x < out.x_from) continue;
    const double want = id.rhs(p, x).value;
    const double err = std::abs(d[j] - want);
    out.max_abs_rhs = std::max(out.max_abs_rhs, std::abs(want));
    if (err > out.max_residual) {
      out.max_residual = err;
      out.x_at_max = x;
    }
  }
  return out;
}

AdditionResidual addition_residual(double alpha, double x, double y) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must be in (0, 1]");
  if (!(x >= 0.0) || !(y >= 0.0)) throw DomainError("addition formula needs x, y >= 0");
  const mlf::FracTrig trig(alpha);
  const auto sxy = trig.sin(std::pow(x + y, alpha));
  const auto cxy = trig.cos(std::pow(x + y, alpha));
  const auto sx = trig.sin(std::pow(x, alpha));
  const auto cx = trig.cos(std::pow(x, alpha));
  const auto sy = trig.sin(std::pow(y, alpha));
  const auto cy = trig.cos(std::pow(y, alpha));
  AdditionResidual r;
  r.sin_residual = std::abs(sxy.value - (sx.value * cy.value + cx.value * sy.value));
  r.cos_residual = std::abs(cxy.value - (cx.value * cy.value - sx.value * sy.value));
  // Propagated bounds of all six values plus a few roundings of the products.
  const double px = std::abs(sx.value) + std::abs(cx.value);
  const double py = std::abs(sy.value) + std::abs(cy.value);
  r.tail_bound = sxy.tail_bound + cxy.tail_bound + (sx.tail_bound + cx.tail_bound) * py +
                 (sy.tail_bound + cy.tail_bound) * px + 4.0 * kEps * (px * py + 1.0);
  return r;
}

}  // namespace fw::jumarie
