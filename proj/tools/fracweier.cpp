// fracweier: command-line front end.
//
// Exit codes: 0 ok, 1 internal error, 2 bad parameters / input / config
// (including a divergent derivative series), 3 no convergence, 4 too few
// scales for an estimate, 5 an asserted verification record failed.

#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli_io.hpp"
#include "fracweier/errors.hpp"
#include "fracweier/jumarie.hpp"
#include "fracweier/mlf.hpp"
#include "fracweier/roughness.hpp"
#include "fracweier/weierstrass.hpp"
#include "verify.hpp"

#ifndef FRACWEIER_VERSION
#define FRACWEIER_VERSION "0.0.0"
#endif

namespace {

using fwcli::Json;
using fwcli::UsageError;
namespace w = fw::weierstrass;
namespace j = fw::jumarie;
namespace r = fw::roughness;
namespace m = fw::mlf;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitParams = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitScale = 4;
constexpr int kExitVerify = 5;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string function;
  double alpha = 1.0;
  double beta = 1.0;
  double lambda = 2.0;
  double s = 1.5;
  std::size_t K = 0;
  std::vector<double> points;
  double tol = m::kDefaultTol;
  std::size_t terms_max = m::kDefaultTermsMax;
  std::string out = "-";
  std::string format = "csv";
};

int cmd_eval(const EvalArgs& a) {
  const m::EvalOptions opt{a.tol, a.terms_max};
  if (!(a.tol > 0.0) || a.terms_max == 0) throw UsageError("--tol and --terms-max must be > 0");
  std::vector<m::RealResult> rows;
  const auto& f = a.function;
  if (f == "mlf" || f == "mlf2") {
    const m::FracParams p(a.alpha, f == "mlf" ? 1.0 : a.beta);
    const m::MittagLeffler ml(p.alpha(), p.beta());
    for (double x : a.points) rows.push_back(ml.eval(x, opt));
  } else if (f == "sin_a" || f == "cos_a" || f == "sin_ab" || f == "cos_ab") {
    const bool two = f.size() == 6;
    const m::FracTrig trig(a.alpha, two ? a.beta : 1.0);
    for (double u : a.points) rows.push_back(f[0] == 's' ? trig.sin(u, opt) : trig.cos(u, opt));
  } else if (f == "w" || f == "dw") {
    const w::WeierstrassParams p(a.lambda, a.s, a.alpha, a.K);
    for (double x : a.points) rows.push_back(f == "w" ? w::w_frac(p, x) : w::w_frac_deriv(p, x));
  } else if (f == "w_classical") {
    const std::size_t K = a.K ? a.K : w::default_terms(a.lambda, a.s, 1.0);
    for (double x : a.points) rows.push_back(w::w_classical(a.lambda, a.s, x, K));
  } else {
    throw UsageError("unknown function " + f);
  }

  std::string text;
  if (a.format == "csv") {
    text = "x,value,tail_bound,terms_used\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      text += fwcli::fmt(a.points[i]) + "," + fwcli::fmt(rows[i].value) + "," +
              fwcli::fmt(rows[i].tail_bound) + "," + std::to_string(rows[i].terms_used) + "\n";
    }
  } else {
    Json out = Json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out.push_back({{"x", a.points[i]},
                     {"value", rows[i].value},
                     {"tail_bound", rows[i].tail_bound},
                     {"terms_used", rows[i].terms_used},
                     {"method", m::to_string(rows[i].method)}});
    }
    text = dump(out);
  }
  fwcli::write_output(a.out, text);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SampleArgs {
  double lambda = 2.0;
  double s = 1.5;
  double alpha = 1.0;
  std::size_t K = 0;
  double x_max = 1.0;
  std::size_t n = 4097;
  std::string which = "function";
  std::string out = "-";
  std::string format = "csv";
};

int cmd_sample(const SampleArgs& a) {
  const w::WeierstrassParams p(a.lambda, a.s, a.alpha, a.K);
  const auto which = a.which == "derivative" ? w::Which::derivative : w::Which::function;
  const auto smp = w::sample(p, a.x_max, a.n, which);
  std::vector<double> xs(smp.values.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = smp.x(i);
  fwcli::write_output(a.out, a.format == "svg" ? fwcli::signal_svg(xs, smp.values)
                                               : fwcli::signal_csv(xs, smp.values));
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct DerivArgs {
  std::string target;
  double alpha = 0.5;
  double a = 1.0;
  double beta = 1.5;
  double lambda = 2.0;
  double s = 1.5;
  double x_max = 0.0;  // 0: 2 for identities, 1 for weierstrass
  double h = 0.0;      // 0: 1e-3 for identities, 2^-10 for weierstrass
  std::string out = "-";
};

struct ResidualStats {
  double max = 0.0;
  double mean = 0.0;
  double max_abs_rhs = 0.0;
  double x_at_max = 0.0;
};

// Residual of a numeric derivative on x ≥ x_from against `exact`.
template <class Exact>
ResidualStats compare(const j::GridFunction& d, double x_from, Exact exact) {
  ResidualStats st;
  std::size_t count = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double x = d.x(i);
    if (x < x_from) continue;
    const double want = exact(x);
    const double err = std::abs(d[i] - want);
    st.max_abs_rhs = std::max(st.max_abs_rhs, std::abs(want));
    if (err > st.max) {
      st.max = err;
      st.x_at_max = x;
    }
    st.mean += err;
    ++count;
  }
  if (count) st.mean /= static_cast<double>(count);
  return st;
}

Json stats_json(const ResidualStats& st, double h) {
  return {{"h", h},
          {"max_residual", st.max},
          {"mean_residual", st.mean},
          {"x_at_max", st.x_at_max},
          {"max_abs_rhs", st.max_abs_rhs}};
}

std::size_t grid_points(double x_max, double h) {
  if (!(x_max > 0.0) || !(h > 0.0) || h * 8.0 > x_max) {
    throw UsageError("grid needs x_max > 0 and 0 < h <= x_max/8");
  }
  const double n = std::round(x_max / h) + 1.0;
  if (n > 5e7) throw UsageError("grid too large");
  return static_cast<std::size_t>(n);
}

int cmd_deriv_check(const DerivArgs& a) {
  Json out;
  out["target"] = a.target;
  out["alpha"] = a.alpha;

  if (a.target == "weierstrass") {
    const w::WeierstrassParams p(a.lambda, a.s, a.alpha);
    w::w_frac_deriv(p, 0.0);  // DivergentSeries before any sampling
    if (!(a.alpha < 1.0)) throw UsageError("numeric derivative needs alpha < 1");
    const double x_max = a.x_max > 0.0 ? a.x_max : 1.0;
    const double h = a.h > 0.0 ? a.h : std::ldexp(1.0, -10);
    out["lambda"] = a.lambda;
    out["s"] = a.s;
    out["x_max"] = x_max;
    out["x_from"] = x_max / 4.0;
    Json levels = Json::array();
    std::vector<double> maxes;
    for (double step : {h, h / 2.0}) {
      const auto n = grid_points(x_max, step);
      auto smp = w::sample(p, step * static_cast<double>(n - 1), n, w::Which::function);
      const j::GridFunction g(0.0, smp.h, std::move(smp.values));
      const auto d = j::deriv_numeric(a.alpha, g);
      const auto st =
          compare(d, x_max / 4.0, [&](double x) { return w::w_frac_deriv(p, x).value; });
      levels.push_back(stats_json(st, smp.h));
      maxes.push_back(st.max);
    }
    out["h"] = h;
    out["max_residual"] = maxes[0];
    out["mean_residual"] = levels[0]["mean_residual"];
    out["order_estimate"] = std::log2(maxes[0] / maxes[1]);
    out["levels"] = levels;
    fwcli::write_output(a.out, dump(out));
    return kExitOk;
  }

  const j::Identity& id = j::find_identity(a.target);
  const j::IdentityParams p{a.alpha, a.a, a.beta};
  id.check(p);
  const double x_max = a.x_max > 0.0 ? a.x_max : 2.0;
  const double h = a.h > 0.0 ? a.h : 1e-3;
  const double x_from = x_max / 4.0;
  const double q = id.order(p);
  out["a"] = a.a;
  out["beta"] = a.beta;
  out["order"] = q;
  out["description"] = id.description;
  out["x_max"] = x_max;
  out["x_from"] = x_from;
  out["h"] = h;

  // Both sides from series, on at most ~200 points of the grid.
  {
    const auto n = grid_points(x_max, h);
    const std::size_t stride = std::max<std::size_t>(1, n / 200);
    double mx = 0.0, sum = 0.0, tail = 0.0;
    std::size_t count = 0;
    for (std::size_t i = stride; i < n; i += stride) {
      const auto res = id.residual(p, static_cast<double>(i) * h);
      mx = std::max(mx, res.residual);
      tail = std::max(tail, res.tail_bound);
      sum += res.residual;
      ++count;
    }
    out["series"] = {{"max_residual", mx},
                     {"mean_residual", count ? sum / static_cast<double>(count) : 0.0},
                     {"max_tail_bound", tail},
                     {"points", count}};
  }

  if (q < 1.0) {
    Json levels = Json::array();
    std::vector<ResidualStats> st;
    for (double step : {h, h / 2.0}) {
      const auto n = grid_points(x_max, step);
      const auto g = j::GridFunction::sample(0.0, step, n, [&](double x) { return id.f(p, x); });
      const auto d = j::deriv_numeric(q, g);
      st.push_back(compare(d, x_from, [&](double x) { return id.rhs(p, x).value; }));
      levels.push_back(stats_json(st.back(), step));
    }
    const double tol = j::kSchemeTolerance * std::max(1.0, st[0].max_abs_rhs);
    out["numeric"] = {{"max_residual", st[0].max},
                      {"mean_residual", st[0].mean},
                      {"order_estimate", std::log2(st[0].max / st[1].max)},
                      {"scheme_tolerance", tol},
                      {"within_tolerance", st[0].max <= tol},
                      {"levels", levels}};
    out["max_residual"] = st[0].max;
    out["mean_residual"] = st[0].mean;
    out["order_estimate"] = out["numeric"]["order_estimate"];
  } else {
    // The numeric scheme needs an order below 1; at order 1 only the
    // series sides are compared.
    out["numeric"] = nullptr;
    out["max_residual"] = out["series"]["max_residual"];
    out["mean_residual"] = out["series"]["mean_residual"];
    out["order_estimate"] = nullptr;
  }
  fwcli::write_output(a.out, dump(out));
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct EstimateArgs {
  std::string kind;
  std::string input;
  int r_min_exp = r::kDefaultMinExp;
  int r_max_exp = r::kDefaultMaxExp;
  std::vector<int> deltas = {4, 5, 6, 7, 8, 9, 10};
  std::string out = "-";
};

int cmd_estimate(const EstimateArgs& a) {
  const auto sig = fwcli::load_signal(a.input);
  Json out;
  out["estimator"] = a.kind;
  out["input"] = a.input;
  out["points"] = sig.size();
  out["x0"] = sig.x0();
  out["h"] = sig.h();
  auto scales = [](const r::DimensionEstimate& d) {
    Json s = Json::array();
    for (const auto& p : d.scales) s.push_back({{"scale", p.scale}, {"value", p.count}});
    return s;
  };
  if (a.kind == "dim") {
    const auto d = r::box_dimension(sig, a.r_min_exp, a.r_max_exp);
    out["slope"] = d.slope;
    out["std_error"] = d.std_error;
    out["r2"] = d.r2;
    out["degenerate"] = d.degenerate;
    out["scales"] = scales(d);
  } else {
    const auto h = r::holder_global(sig, a.deltas);
    out["slope"] = h.slope;
    out["std_error"] = h.std_error;
    out["r2"] = h.r2;
    out["dimension"] = h.dimension;
    out["scales"] = scales(h);
  }
  fwcli::write_output(a.out, dump(out));
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::string out = "-";
  std::string config;
};

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int cmd_verify(const VerifyArgs& a) {
  Json config = Json::object();
  if (!a.config.empty()) {
    try {
      config = Json::parse(fwcli::read_file(a.config));
    } catch (const Json::parse_error& e) {
      throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!config.is_object()) throw UsageError("config must be a JSON object keyed by suite");
    for (const auto& [k, v] : config.items()) {
      const auto& names = fwcli::suite_names();
      if (std::find(names.begin(), names.end(), k) == names.end()) {
        throw UsageError("unknown config section " + k);
      }
    }
  }
  std::vector<std::string> suites;
  if (a.suite == "all") {
    suites = fwcli::suite_names();
  } else {
    suites = {a.suite};
  }

  Json records = Json::array();
  for (const auto& s : suites) {
    const std::size_t before = records.size();
    fwcli::run_suite(s, config.contains(s) ? config[s] : Json(), records);
    std::size_t failed = 0;
    for (std::size_t i = before; i < records.size(); ++i) {
      if (records[i]["asserted"].get<bool>() && !records[i]["pass"].get<bool>()) ++failed;
    }
    std::cerr << s << ": " << records.size() - before << " records, " << failed
              << " asserted failures\n";
  }
  const bool ok = fwcli::all_asserted_pass(records);
  Json report;
  report["tool"] = "fracweier";
  report["version"] = FRACWEIER_VERSION;
  report["suites"] = suites;
  report["all_asserted_pass"] = ok;
  report["records"] = records;
  report["timestamp"] = utc_now();  // the only field that varies between runs
  fwcli::write_output(a.out, dump(report));
  return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional Weierstrass functions, Jumarie derivatives and roughness estimates"};
  app.set_version_flag("--version", FRACWEIER_VERSION);
  app.require_subcommand(1);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate a function at points (CSV rows)");
  eval->add_option("function", ev.function, "mlf|mlf2|sin_a|cos_a|sin_ab|cos_ab|w|w_classical|dw")
      ->required()
      ->check(CLI::IsMember(
          {"mlf", "mlf2", "sin_a", "cos_a", "sin_ab", "cos_ab", "w", "w_classical", "dw"}));
  eval->add_option("--alpha", ev.alpha, "fractional order");
  eval->add_option("--beta", ev.beta, "second Mittag-Leffler parameter");
  eval->add_option("--lambda", ev.lambda, "frequency ratio > 1");
  eval->add_option("--s", ev.s, "dimension parameter in (1, 2)");
  eval->add_option("--K", ev.K, "terms (0: default tail 1e-8)");
  eval->add_option("--points,-x", ev.points, "evaluation points (u for the trig functions)")
      ->required()
      ->delimiter(',');
  eval->add_option("--tol", ev.tol, "relative tolerance (Mittag-Leffler and trig)");
  eval->add_option("--terms-max", ev.terms_max, "series term budget (Mittag-Leffler and trig)");
  eval->add_option("--out,-o", ev.out, "output file, - for stdout");
  eval->add_option("--format", ev.format)->check(CLI::IsMember({"csv", "json"}));

  SampleArgs sa;
  auto* smp = app.add_subcommand("sample", "Sample W_alpha or its derivative on [0, x_max]");
  smp->add_option("--lambda", sa.lambda);
  smp->add_option("--s", sa.s);
  smp->add_option("--alpha", sa.alpha);
  smp->add_option("--K", sa.K, "terms (0: default)");
  smp->add_option("--x-max", sa.x_max);
  smp->add_option("--n", sa.n, "grid points (>= 2)");
  smp->add_option("--which", sa.which)->check(CLI::IsMember({"function", "derivative"}));
  smp->add_option("--out,-o", sa.out, "output file, - for stdout");
  smp->add_option("--format", sa.format)->check(CLI::IsMember({"csv", "svg"}));

  DerivArgs da;
  auto* der = app.add_subcommand("deriv-check", "Numeric derivative vs closed form (JSON)");
  der->add_option("target", da.target, "identity name (i .. viii-sin) or weierstrass")->required();
  der->add_option("--alpha", da.alpha);
  der->add_option("--a", da.a, "identity coefficient");
  der->add_option("--beta", da.beta, "identity second parameter");
  der->add_option("--lambda", da.lambda);
  der->add_option("--s", da.s);
  der->add_option("--x-max", da.x_max);
  der->add_option("--step", da.h, "grid step h");
  der->add_option("--out,-o", da.out);

  EstimateArgs es;
  auto* est = app.add_subcommand("estimate", "Box dimension or Holder exponent (JSON)");
  est->add_option("kind", es.kind)->required()->check(CLI::IsMember({"dim", "holder"}));
  est->add_option("input", es.input, "CSV file or generator spec name:key=val,...")->required();
  est->add_option("--r-min-exp", es.r_min_exp, "finest box scale exponent");
  est->add_option("--r-max-exp", es.r_max_exp, "coarsest box scale exponent");
  est->add_option("--deltas", es.deltas, "Holder scale exponents")->delimiter(',');
  est->add_option("--out,-o", es.out);

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Run verification suites and write a JSON report");
  ver->add_option("--suite", va.suite)
      ->check(CLI::IsMember({"theorem1", "theorem2", "theorem3", "identities", "all"}));
  ver->add_option("--out,-o", va.out);
  ver->add_option("--config", va.config, "JSON file, one object per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParams;
  }

  try {
    if (*eval) return cmd_eval(ev);
    if (*smp) return cmd_sample(sa);
    if (*der) return cmd_deriv_check(da);
    if (*est) return cmd_estimate(es);
    if (*ver) return cmd_verify(va);
  } catch (const fw::NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const fw::ScaleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitScale;
  } catch (const fw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParams;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParams;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
