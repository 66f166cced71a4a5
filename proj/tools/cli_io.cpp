#include "cli_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "fracweier/weierstrass.hpp"

namespace fwcli {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw UsageError("write failed for " + path);
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw UsageError("cannot rename onto " + path + ": " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string signal_csv(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::string out = "x,y\n";
  out.reserve(xs.size() * 48);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    out += fmt(xs[j]);
    out += ',';
    out += fmt(ys[j]);
    out += '\n';
  }
  return out;
}

std::string signal_svg(const std::vector<double>& xs, const std::vector<double>& ys) {
  constexpr double W = 800.0, H = 400.0, M = 40.0;
  const auto [ymin_it, ymax_it] = std::minmax_element(ys.begin(), ys.end());
  double y0 = *ymin_it, y1 = *ymax_it;
  if (y1 == y0) {
    y0 -= 1.0;
    y1 += 1.0;
  }
  const double x0 = xs.front(), x1 = xs.back();
  const double xspan = x1 > x0 ? x1 - x0 : 1.0;
  auto px = [&](double x) { return M + (x - x0) / xspan * (W - 2 * M); };
  auto py = [&](double y) { return H - M - (y - y0) / (y1 - y0) * (H - 2 * M); };

  char buf[96];
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"400\" "
         "viewBox=\"0 0 800 400\">\n";
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n", M,
                H - M, W - M, H - M);
  out += buf;
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n", M, M,
                M, H - M);
  out += buf;
  out += "<path fill=\"none\" stroke=\"steelblue\" stroke-width=\"1\" d=\"";
  for (std::size_t j = 0; j < xs.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%s%.2f %.2f", j == 0 ? "M" : " L", px(xs[j]), py(ys[j]));
    out += buf;
  }
  out += "\"/>\n</svg>\n";
  return out;
}

namespace {

bool to_double(const std::string& s, double& v) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  v = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && errno != ERANGE;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double param(const GeneratorSpec& g, const std::string& key, double fallback) {
  const auto it = g.params.find(key);
  if (it == g.params.end()) return fallback;
  double v;
  if (!to_double(it->second, v)) throw UsageError("generator " + key + " is not a number");
  return v;
}

std::size_t count_param(const GeneratorSpec& g, const std::string& key, std::size_t fallback) {
  const double v = param(g, key, static_cast<double>(fallback));
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e9) {
    throw UsageError("generator " + key + " must be a nonnegative integer");
  }
  return static_cast<std::size_t>(v);
}

void check_keys(const GeneratorSpec& g, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : g.params) {
    if (!allowed.count(k)) throw UsageError("unknown generator key '" + k + "' for " + g.name);
  }
}

}  // namespace

void parse_csv(const std::string& text, std::vector<double>& xs, std::vector<double>& ys) {
  xs.clear();
  ys.clear();
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw UsageError("line " + std::to_string(lineno) + ": expected two columns");
    }
    double x, y;
    const bool ok = to_double(trim(line.substr(0, comma)), x) &&
                    to_double(trim(line.substr(comma + 1)), y);
    if (!ok) {
      if (xs.empty() && lineno == 1) continue;  // header
      throw UsageError("line " + std::to_string(lineno) + ": not a number");
    }
    xs.push_back(x);
    ys.push_back(y);
  }
}

fw::roughness::SampledSignal to_signal(const std::vector<double>& xs,
                                       const std::vector<double>& ys) {
  if (xs.size() < 2) {
    return fw::roughness::SampledSignal(xs.empty() ? 0.0 : xs[0], 1.0, ys);  // ParamError
  }
  const double span = xs.back() - xs.front();
  const double h = span / static_cast<double>(xs.size() - 1);
  if (!(h > 0.0) || !std::isfinite(h)) throw UsageError("x must be strictly increasing");
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double want = xs.front() + static_cast<double>(j) * h;
    if (!(std::abs(xs[j] - want) <= 1e-9 * span)) {
      throw UsageError("grid is not uniform at row " + std::to_string(j));
    }
  }
  return {xs.front(), h, ys};
}

bool parse_generator(const std::string& text, GeneratorSpec& out) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0) return false;
  out.name = text.substr(0, colon);
  out.params.clear();
  const std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos < rest.size()) {
    auto next = rest.find(',', pos);
    if (next == std::string::npos) next = rest.size();
    const std::string kv = rest.substr(pos, next - pos);
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) return false;
    out.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    pos = next + 1;
  }
  return true;
}

void generate(const GeneratorSpec& g, std::vector<double>& xs, std::vector<double>& ys) {
  namespace w = fw::weierstrass;
  if (g.name == "weierstrass") {
    check_keys(g, {"lambda", "s", "alpha", "K", "n", "x_max", "which"});
    const w::WeierstrassParams p(param(g, "lambda", 2.0), param(g, "s", 1.5),
                                 param(g, "alpha", 1.0), count_param(g, "K", 0));
    w::Which which = w::Which::function;
    if (auto it = g.params.find("which"); it != g.params.end()) {
      if (it->second == "derivative") {
        which = w::Which::derivative;
      } else if (it->second != "function") {
        throw UsageError("which must be function or derivative");
      }
    }
    const auto s = w::sample(p, param(g, "x_max", 1.0), count_param(g, "n", 65537), which);
    xs.resize(s.values.size());
    for (std::size_t j = 0; j < xs.size(); ++j) xs[j] = s.x(j);
    ys = s.values;
    return;
  }
  if (g.name == "line" || g.name == "power") {
    check_keys(g, g.name == "line" ? std::set<std::string>{"n", "x_max", "slope"}
                                   : std::set<std::string>{"n", "x_max", "p"});
    const std::size_t n = count_param(g, "n", 65537);
    const double x_max = param(g, "x_max", 1.0);
    if (n < 2 || !(x_max > 0.0)) throw UsageError("generator needs n >= 2 and x_max > 0");
    const double h = x_max / static_cast<double>(n - 1);
    const double slope = param(g, "slope", 1.0);
    const double p = param(g, "p", 0.5);
    xs.resize(n);
    ys.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      xs[j] = static_cast<double>(j) * h;
      ys[j] = g.name == "line" ? slope * xs[j] : std::pow(xs[j], p);
    }
    return;
  }
  throw UsageError("unknown generator '" + g.name + "' (line, power, weierstrass)");
}

fw::roughness::SampledSignal load_signal(const std::string& input) {
  std::vector<double> xs, ys;
  if (std::filesystem::is_regular_file(input)) {
    parse_csv(read_file(input), xs, ys);
  } else {
    GeneratorSpec g;
    if (!parse_generator(input, g)) {
      throw UsageError("'" + input + "' is neither a file nor a generator spec");
    }
    generate(g, xs, ys);
  }
  return to_signal(xs, ys);
}

}  // namespace fwcli
