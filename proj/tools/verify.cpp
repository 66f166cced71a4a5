#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cli_io.hpp"
#include "fracweier/errors.hpp"
#include "fracweier/jumarie.hpp"
#include "fracweier/roughness.hpp"
#include "fracweier/weierstrass.hpp"

namespace fwcli {

namespace w = fw::weierstrass;
namespace r = fw::roughness;
namespace j = fw::jumarie;

namespace {

// Suite config: flat keys with defaults; anything not declared is an error.
class Cfg {
 public:
  Cfg(const std::string& suite, const Json& obj, std::set<std::string> keys)
      : suite_(suite), obj_(obj) {
    if (obj_.is_null()) return;
    if (!obj_.is_object()) throw UsageError("config for " + suite + " must be an object");
    for (const auto& [k, v] : obj_.items()) {
      if (!keys.count(k)) throw UsageError("unknown config key " + suite + "." + k);
    }
  }

  double num(const std::string& k, double fallback) const {
    if (!has(k)) return fallback;
    if (!obj_[k].is_number()) throw UsageError(suite_ + "." + k + " must be a number");
    return obj_[k].get<double>();
  }

  int integer(const std::string& k, int fallback) const {
    if (!has(k)) return fallback;
    if (!obj_[k].is_number_integer()) throw UsageError(suite_ + "." + k + " must be an integer");
    return obj_[k].get<int>();
  }

  std::vector<double> nums(const std::string& k, std::vector<double> fallback) const {
    if (!has(k)) return fallback;
    std::vector<double> out;
    if (!obj_[k].is_array() || obj_[k].empty()) {
      throw UsageError(suite_ + "." + k + " must be a nonempty array of numbers");
    }
    for (const auto& v : obj_[k]) {
      if (!v.is_number()) throw UsageError(suite_ + "." + k + " must hold numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }

  std::vector<int> ints(const std::string& k, std::vector<int> fallback) const {
    std::vector<double> d(fallback.begin(), fallback.end());
    d = nums(k, d);
    std::vector<int> out;
    for (double v : d) {
      if (v != std::floor(v)) throw UsageError(suite_ + "." + k + " must hold integers");
      out.push_back(static_cast<int>(v));
    }
    return out;
  }

 private:
  bool has(const std::string& k) const { return obj_.is_object() && obj_.contains(k); }
  std::string suite_;
  const Json& obj_;
};

Json record(const std::string& suite, const std::string& id, const std::string& theorem,
            const std::string& claim, Json params, Json claimed, Json measured, bool asserted,
            bool pass, const std::string& note = {}) {
  Json rec;
  rec["suite"] = suite;
  rec["id"] = id;
  rec["theorem"] = theorem;
  rec["claim"] = claim;
  rec["parameters"] = std::move(params);
  rec["claimed"] = std::move(claimed);
  rec["measured"] = std::move(measured);
  rec["asserted"] = asserted;
  rec["pass"] = asserted ? Json(pass) : Json(nullptr);
  if (!note.empty()) rec["note"] = note;
  return rec;
}

// max over x_i = i/m (i < m) of |F(x+h) − F(x)|.
double sup_oscillation(const w::WeierstrassParams& p, w::Which which, double h, int m) {
  auto f = [&](double x) {
    return which == w::Which::function ? w::w_frac(p, x).value : w::w_frac_deriv(p, x).value;
  };
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    const double x = static_cast<double>(i) / m;
    worst = std::max(worst, std::abs(f(x + h) - f(x)));
  }
  return worst;
}

r::SampledSignal sampled(const w::WeierstrassParams& p, std::size_t n, w::Which which) {
  auto s = w::sample(p, 1.0, n, which);
  return {s.x0, s.h, std::move(s.values)};
}

Json scales_json(const r::DimensionEstimate& d) {
  Json out = Json::array();
  for (const auto& p : d.scales) out.push_back({{"scale", p.scale}, {"value", p.count}});
  return out;
}

// Oscillation-bound record: max_h osc(h) / (C·h^e) against `safety`.
Json bound_record(const std::string& suite, const std::string& id, const std::string& theorem,
                  const w::WeierstrassParams& p, w::Which which, double c, double expo,
                  int e_min, int e_max, int m, double safety, bool asserted,
                  const std::string& note = {}) {
  Json ratios = Json::array();
  double worst = 0.0;
  for (int e = e_min; e <= e_max; ++e) {
    const double h = std::ldexp(1.0, -e);
    const double ratio = sup_oscillation(p, which, h, m) / (c * std::pow(h, expo));
    worst = std::max(worst, ratio);
    ratios.push_back({{"h_exp", e}, {"ratio", ratio}});
  }
  const Json params = {{"lambda", p.lambda()}, {"s", p.s()}, {"alpha", p.alpha()},
                       {"constant", c},        {"exponent", expo}, {"x_samples", m},
                       {"safety", safety}};
  const std::string claim = which == w::Which::function ? "sup |W(x+h) - W(x)| <= C1 h^(2-s)"
                                                        : "sup |DW(x+h) - DW(x)| <= C2 h^(2-s-alpha)";
  return record(suite, id, theorem, claim, params, safety,
                {{"max_ratio", worst}, {"ratios", ratios}}, asserted, worst <= safety, note);
}

void theorem1(const Json& config, Json& out) {
  const Cfg cfg("theorem1", config,
                {"lambda", "s", "alphas", "h_exp_min", "h_exp_max", "x_samples", "safety",
                 "classical_points", "classical_K", "frac_points", "r_min_exp", "r_max_exp",
                 "delta_exps", "holder_margin", "dim_margin"});
  const double lambda = cfg.num("lambda", 2.0);
  const double s = cfg.num("s", 1.5);
  const auto alphas = cfg.nums("alphas", {1.0, 0.7, 0.5});
  const int e_min = cfg.integer("h_exp_min", 4);
  const int e_max = cfg.integer("h_exp_max", 12);
  const int m = cfg.integer("x_samples", 256);
  const double safety = cfg.num("safety", 2.0);
  const auto n_classical = static_cast<std::size_t>(cfg.integer("classical_points", 65537));
  const auto K_classical = static_cast<std::size_t>(cfg.integer("classical_K", 30));
  const auto n_frac = static_cast<std::size_t>(cfg.integer("frac_points", 16385));
  const int r_min = cfg.integer("r_min_exp", r::kDefaultMinExp);
  const int r_max = cfg.integer("r_max_exp", r::kDefaultMaxExp);
  const auto deltas = cfg.ints("delta_exps", {4, 5, 6, 7, 8, 9, 10});
  const double holder_margin = cfg.num("holder_margin", 0.15);
  const double dim_margin = cfg.num("dim_margin", 0.1);
  if (m < 1 || e_min > e_max) throw UsageError("theorem1: bad oscillation grid");

  const double c1 = w::holder_c1(w::WeierstrassParams(lambda, s, 1.0));
  for (double alpha : alphas) {
    const w::WeierstrassParams p(lambda, s, alpha);
    std::string note;
    if (alpha == 2.0 - s) note = "alpha = 2 - s: W grows like h^(2-s) log(1/h) at x = 0";
    out.push_back(bound_record("theorem1", "oscillation-bound", "Theorem 1", p,
                               w::Which::function, c1, 2.0 - s, e_min, e_max, m, safety, true,
                               note));
  }

  for (double alpha : alphas) {
    const bool classical = alpha == 1.0;
    const w::WeierstrassParams p(lambda, s, alpha, classical ? K_classical : 0);
    const auto sig = sampled(p, classical ? n_classical : n_frac, w::Which::function);
    const auto d = r::box_dimension(sig, r_min, r_max);
    const auto h = r::holder_global(sig, deltas);
    const Json params = {{"lambda", lambda}, {"s", s},
                         {"alpha", alpha},   {"K", p.K()},
                         {"points", sig.size()}};
    out.push_back(record("theorem1", "box-dimension", "Theorem 1", "dimension of W_alpha is s",
                         params, s,
                         {{"slope", d.slope},
                          {"std_error", d.std_error},
                          {"r2", d.r2},
                          {"discrepancy", d.slope - s},
                          {"scales", scales_json(d)}},
                         classical, std::abs(d.slope - s) <= dim_margin,
                         classical ? "" : "report-only: only the upper bound is proven"));
    const bool h_ok = classical ? std::abs(h.slope - (2.0 - s)) <= dim_margin
                                : h.slope >= (2.0 - s) - holder_margin;
    out.push_back(record("theorem1", "holder-exponent", "Theorem 1", "Holder exponent is 2 - s",
                         params, 2.0 - s,
                         {{"H", h.slope},
                          {"std_error", h.std_error},
                          {"r2", h.r2},
                          {"implied_dimension", h.dimension},
                          {"d_box_minus_2_minus_H", d.slope - h.dimension},
                          {"scales", scales_json(h)}},
                         true, h_ok,
                         classical ? "asserted |H - (2 - s)| <= margin"
                                   : "asserted proven direction only: H >= (2 - s) - margin"));
  }
}

void theorem2(const Json& config, Json& out) {
  const Cfg cfg("theorem2", config, {"lambdas", "ss", "alphas", "ratio_tol", "terms"});
  const auto lambdas = cfg.nums("lambdas", {2.0, 3.0});
  const auto ss = cfg.nums("ss", {1.2, 1.5, 1.8});
  const auto alphas = cfg.nums("alphas", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
  const double tol = cfg.num("ratio_tol", 1e-6);
  const int terms = cfg.integer("terms", 8);
  if (terms < 3) throw UsageError("theorem2.terms must be >= 3");

  for (double lambda : lambdas) {
    for (double s : ss) {
      for (double alpha : alphas) {
        const w::WeierstrassParams p(lambda, s, alpha);
        const bool convergent = alpha < 2.0 - s;
        const double ratio = w::deriv_ratio(p);
        const Json params = {{"lambda", lambda}, {"s", s}, {"alpha", alpha}};
        Json measured;
        measured["ratio"] = ratio;
        bool ok = true;
        try {
          // Deltas of successive partial sums at x = 0.
          std::vector<double> sums;
          for (int k = 1; k <= terms; ++k) {
            sums.push_back(w::w_frac_deriv(p.with_K(static_cast<std::size_t>(k)), 0.0).value);
          }
          double worst = 0.0;
          for (std::size_t k = 2; k < sums.size(); ++k) {
            const double q = (sums[k] - sums[k - 1]) / (sums[k - 1] - sums[k - 2]);
            worst = std::max(worst, std::abs(q - ratio));
          }
          measured["outcome"] = "converges";
          measured["max_delta_ratio_error"] = worst;
          ok = convergent && worst <= tol && ratio < 1.0;
        } catch (const fw::DivergentSeries& e) {
          measured["outcome"] = "DivergentSeries";
          measured["error_ratio"] = e.ratio();
          ok = !convergent && e.ratio() >= 1.0;
        }
        out.push_back(record("theorem2", "threshold", "Theorem 2",
                             "derivative series exists iff alpha < 2 - s", params,
                             convergent ? "converges" : "DivergentSeries", measured, true, ok));
      }
    }
  }
}

void theorem3(const Json& config, Json& out) {
  const Cfg cfg("theorem3", config,
                {"lambda", "bound_cases", "h_exp_min", "h_exp_max", "x_samples", "safety", "s",
                 "alpha", "points", "r_min_exp", "r_max_exp", "delta_exps", "holder_margin"});
  const double lambda = cfg.num("lambda", 2.0);
  const int e_min = cfg.integer("h_exp_min", 4);
  const int e_max = cfg.integer("h_exp_max", 12);
  const int m = cfg.integer("x_samples", 256);
  const double safety = cfg.num("safety", 2.0);
  // flat list of (s, alpha) pairs
  const auto cases = cfg.nums("bound_cases", {1.2, 0.5, 1.5, 0.3, 1.5, 0.2});
  if (cases.size() % 2 != 0) throw UsageError("theorem3.bound_cases holds (s, alpha) pairs");
  if (m < 1 || e_min > e_max) throw UsageError("theorem3: bad oscillation grid");

  for (std::size_t i = 0; i < cases.size(); i += 2) {
    const w::WeierstrassParams p(lambda, cases[i], cases[i + 1]);
    const auto hc = w::holder_constants(p);
    if (!hc.c2) throw UsageError("theorem3 bound case needs alpha < 2 - s");
    if (hc.c2_positive) {
      out.push_back(bound_record("theorem3", "oscillation-bound", "Theorem 3", p,
                                 w::Which::derivative, *hc.c2, 2.0 - p.s() - p.alpha(), e_min,
                                 e_max, m, safety, true));
    } else {
      const Json params = {{"lambda", p.lambda()}, {"s", p.s()}, {"alpha", p.alpha()}};
      out.push_back(record("theorem3", "oscillation-bound", "Theorem 3",
                           "sup |DW(x+h) - DW(x)| <= C2 h^(2-s-alpha)", params, nullptr,
                           {{"C2", *hc.c2}}, false, false,
                           "report-only: C2 is nonpositive in this sign regime"));
    }
  }

  const double s = cfg.num("s", 1.2);
  const double alpha = cfg.num("alpha", 0.5);
  const auto n = static_cast<std::size_t>(cfg.integer("points", 16385));
  const w::WeierstrassParams p(lambda, s, alpha);
  const auto sig = sampled(p, n, w::Which::derivative);
  const auto d = r::box_dimension(sig, cfg.integer("r_min_exp", r::kDefaultMinExp),
                                  cfg.integer("r_max_exp", r::kDefaultMaxExp));
  const auto h = r::holder_global(sig, cfg.ints("delta_exps", {4, 5, 6, 7, 8, 9, 10}));
  const double margin = cfg.num("holder_margin", 0.15);
  const Json params = {{"lambda", lambda}, {"s", s},   {"alpha", alpha},
                       {"K", p.deriv_K()}, {"points", n}};
  out.push_back(record("theorem3", "holder-exponent", "Theorem 3",
                       "Holder exponent of D^alpha W is 2 - s - alpha", params, 2.0 - s - alpha,
                       {{"H", h.slope},
                        {"std_error", h.std_error},
                        {"r2", h.r2},
                        {"implied_dimension", h.dimension},
                        {"scales", scales_json(h)}},
                       true, h.slope >= (2.0 - s - alpha) - margin,
                       "asserted proven direction only: H >= (2 - s - alpha) - margin"));
  out.push_back(record("theorem3", "box-dimension", "Theorem 3", "dimension is s + alpha", params,
                       s + alpha,
                       {{"slope", d.slope},
                        {"std_error", d.std_error},
                        {"r2", d.r2},
                        {"discrepancy", d.slope - (s + alpha)},
                        {"scales", scales_json(d)}},
                       false, false, "report-only"));
}

void identities(const Json& config, Json& out) {
  const Cfg cfg("identities", config,
                {"alphas", "a", "x_step", "x_max", "h", "series_factor", "classical_tol",
                 "addition_tol"});
  const auto alphas = cfg.nums("alphas", {0.3, 0.5, 0.7, 0.9});
  const double a = cfg.num("a", 1.0);
  const double x_step = cfg.num("x_step", 0.05);
  const double x_max = cfg.num("x_max", 2.0);
  const double h = cfg.num("h", 1e-3);
  const double factor = cfg.num("series_factor", 10.0);
  const double classical_tol = cfg.num("classical_tol", 1e-8);
  const double add_tol = cfg.num("addition_tol", 1e-10);
  if (!(x_step > 0.0) || !(x_max > 0.0)) throw UsageError("identities: bad x grid");

  auto params_for = [&](const j::Identity& id, double alpha) {
    j::IdentityParams p{alpha, a, 1.5};
    if (id.name == "ii") p.beta = 0.5 * alpha;
    return p;
  };

  for (const j::Identity& id : j::identity_table()) {
    for (double alpha : alphas) {
      const auto p = params_for(id, alpha);
      double worst = 0.0, worst_res = 0.0;
      for (int i = 1; i * x_step <= x_max * (1 + 1e-12); ++i) {
        const auto res = id.residual(p, i * x_step);
        worst_res = std::max(worst_res, res.residual);
        if (res.residual > 0.0) worst = std::max(worst, res.residual / res.tail_bound);
      }
      out.push_back(record("identities", "series-" + id.name, "derivative identity",
                           id.description,
                           {{"alpha", alpha}, {"a", p.a}, {"beta", p.beta}, {"x_max", x_max}},
                           factor, {{"max_residual", worst_res}, {"max_residual_over_tail", worst}},
                           true, worst <= factor));
    }
    // classical reduction
    const auto p1 = params_for(id, 1.0);
    double worst1 = 0.0;
    for (int i = 1; i * x_step <= x_max * (1 + 1e-12); ++i) {
      worst1 = std::max(worst1, id.residual(p1, i * x_step).residual);
    }
    out.push_back(record("identities", "classical-" + id.name, "derivative identity",
                         id.description, {{"alpha", 1.0}, {"a", p1.a}, {"beta", p1.beta}},
                         classical_tol, {{"max_residual", worst1}}, true,
                         worst1 <= classical_tol));
  }

  for (const char* name : {"iii", "iv", "viii-cos", "viii-sin"}) {
    for (double alpha : alphas) {
      const auto& id = j::find_identity(name);
      const auto c = j::numeric_check(id, params_for(id, alpha), x_max, h);
      out.push_back(record("identities", std::string("numeric-") + name, "derivative identity",
                           id.description, {{"alpha", alpha}, {"a", a}, {"h", h}, {"x_from", c.x_from}},
                           j::kSchemeTolerance * std::max(1.0, c.max_abs_rhs),
                           {{"max_residual", c.max_residual}, {"x_at_max", c.x_at_max}}, true,
                           c.within_tolerance()));
    }
  }

  // Addition formulas: exact at alpha = 1 and at y = 0; a measurement otherwise.
  {
    const auto r1 = j::addition_residual(1.0, 0.3, 1.1);
    out.push_back(record("identities", "addition-classical", "addition formula",
                         "sin/cos angle addition", {{"alpha", 1.0}, {"x", 0.3}, {"y", 1.1}},
                         add_tol, {{"sin_residual", r1.sin_residual}, {"cos_residual", r1.cos_residual}},
                         true, std::max(r1.sin_residual, r1.cos_residual) <= add_tol));
  }
  for (double alpha : alphas) {
    const auto r0 = j::addition_residual(alpha, 0.8, 0.0);
    out.push_back(record("identities", "addition-y0", "addition formula",
                         "sin/cos angle addition", {{"alpha", alpha}, {"x", 0.8}, {"y", 0.0}},
                         add_tol, {{"sin_residual", r0.sin_residual}, {"cos_residual", r0.cos_residual}},
                         true, std::max(r0.sin_residual, r0.cos_residual) <= add_tol));
    const auto rf = j::addition_residual(alpha, 0.5, 0.5);
    out.push_back(record("identities", "addition-fractional", "addition formula",
                         "sin/cos angle addition", {{"alpha", alpha}, {"x", 0.5}, {"y", 0.5}},
                         nullptr, {{"sin_residual", rf.sin_residual}, {"cos_residual", rf.cos_residual}},
                         false, false, "report-only: the chain-rule step is not established"));
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"theorem1", "theorem2", "theorem3", "identities"};
  return names;
}

void run_suite(const std::string& suite, const Json& config, Json& records) {
  if (suite == "theorem1") return theorem1(config, records);
  if (suite == "theorem2") return theorem2(config, records);
  if (suite == "theorem3") return theorem3(config, records);
  if (suite == "identities") return identities(config, records);
  throw UsageError("unknown suite " + suite);
}

bool all_asserted_pass(const Json& records) {
  for (const auto& r : records) {
    if (r["asserted"].get<bool>() && !r["pass"].get<bool>()) return false;
  }
  return true;
}

}  // namespace fwcli
