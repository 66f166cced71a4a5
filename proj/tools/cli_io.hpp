#pragma once

// File formats and input parsing shared by the fracweier subcommands.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracweier/roughness.hpp"

namespace fwcli {

/// Bad command-line or config input (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits, round-trip safe.
std::string fmt(double v);

/// Writes to a sibling temp file and renames over `path`; "-" or "" is
/// stdout. A failed run never leaves a partial file behind.
void write_output(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

/// "x,y" header plus one row per sample.
std::string signal_csv(const std::vector<double>& xs, const std::vector<double>& ys);

/// 800×400 polyline plot: two axis lines and one path.
std::string signal_svg(const std::vector<double>& xs, const std::vector<double>& ys);

/// Two columns, optional header. UsageError on malformed rows.
void parse_csv(const std::string& text, std::vector<double>& xs, std::vector<double>& ys);

/// Uniform grid within 1e-9 of the span; UsageError otherwise. Too-short or
/// nonfinite input surfaces as fw::ParamError from SampledSignal.
fw::roughness::SampledSignal to_signal(const std::vector<double>& xs, const std::vector<double>& ys);

struct GeneratorSpec {
  std::string name;
  std::map<std::string, std::string> params;
};

/// name ':' key '=' value (',' key '=' value)*
bool parse_generator(const std::string& text, GeneratorSpec& out);

/// line:      n, x_max, slope
/// power:     n, x_max, p
/// weierstrass: lambda, s, alpha, K, n, x_max, which (function|derivative)
void generate(const GeneratorSpec& spec, std::vector<double>& xs, std::vector<double>& ys);

/// CSV path when the file exists, otherwise a generator spec.
fw::roughness::SampledSignal load_signal(const std::string& input);

}  // namespace fwcli
