#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "fracweier/errors.hpp"
#include "fracweier/roughness.hpp"
#include "fracweier/weierstrass.hpp"

using namespace fw;
using namespace fw::roughness;

namespace {

SampledSignal on_unit(std::size_t n, const std::function<double(double)>& f) {
  const double h = 1.0 / static_cast<double>(n - 1);
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = f(static_cast<double>(j) * h);
  return {0.0, h, std::move(v)};
}

const SampledSignal& weierstrass_fixture() {
  static const SampledSignal s = [] {
    const weierstrass::WeierstrassParams p(2.0, 1.5, 1.0, 30);
    auto w = weierstrass::sample(p, 1.0, (1u << 16) + 1, weierstrass::Which::function);
    return SampledSignal(w.x0, w.h, std::move(w.values));
  }();
  return s;
}

SampledSignal scaled(const SampledSignal& s, double c) {
  auto v = s.values();
  for (double& x : v) x *= c;
  return {s.x0(), s.h(), std::move(v)};
}

}  // namespace

TEST_CASE("SampledSignal validation") {
  CHECK_THROWS_AS(SampledSignal(0.0, 0.1, std::vector<double>(15, 0.0)), ParamError);
  CHECK_THROWS_AS(SampledSignal(0.0, 0.0, std::vector<double>(16, 0.0)), ParamError);
  CHECK_THROWS_AS(SampledSignal(0.0, -1.0, std::vector<double>(16, 0.0)), ParamError);
  std::vector<double> v(16, 0.0);
  v[3] = std::nan("");
  CHECK_THROWS_AS(SampledSignal(0.0, 0.1, v), ParamError);
  v[3] = INFINITY;
  CHECK_THROWS_AS(SampledSignal(0.0, 0.1, v), ParamError);
  const SampledSignal s(1.0, 0.5, std::vector<double>(17, 2.0));
  CHECK(s.domain() == 8.0);
  CHECK(s.x(16) == 9.0);
}

TEST_CASE("box_dimension examples") {
  const auto line = box_dimension(on_unit((1u << 14) + 1, [](double x) { return x; }));
  CHECK(line.slope >= 0.95);
  CHECK(line.slope <= 1.05);
  CHECK_FALSE(line.degenerate);

  const auto flat = box_dimension(on_unit(1025, [](double) { return 3.0; }));
  CHECK(flat.slope == 1.0);
  CHECK(flat.degenerate);

  const auto w = box_dimension(weierstrass_fixture());
  CHECK(w.slope >= 1.40);
  CHECK(w.slope <= 1.60);
  CHECK(w.r2 > 0.99);
  CHECK(std::isfinite(w.std_error));
}

TEST_CASE("box_dimension scale list") {
  const auto d = box_dimension(weierstrass_fixture(), 12, 3);
  REQUIRE(d.scales.size() == 10);
  for (std::size_t i = 1; i < d.scales.size(); ++i) {
    CHECK(d.scales[i].scale < d.scales[i - 1].scale);
  }
  for (const auto& p : d.scales) CHECK(p.count > 0.0);
  CHECK(d.scales.front().scale == 0.125);
}

TEST_CASE("box_dimension scale errors") {
  const auto s = on_unit(65, [](double x) { return x * x; });
  // 64 cells: boxes of ≥ 4 samples allow e ≤ 4 only
  CHECK_THROWS_AS(box_dimension(s, 10, 4), ScaleError);
  CHECK_NOTHROW(box_dimension(s, 4, 1));
  CHECK_THROWS_AS(box_dimension(s, 4, 4), ScaleError);
  CHECK_THROWS_AS(box_dimension(s, 3, 5), ScaleError);
}

TEST_CASE("box_dimension parallel equals serial") {
  const auto& s = weierstrass_fixture();
  const auto a = box_dimension(s, 14, 2);
  const auto b = box_dimension_serial(s, 14, 2);
  CHECK(a.slope == b.slope);
  REQUIRE(a.scales.size() == b.scales.size());
  for (std::size_t i = 0; i < a.scales.size(); ++i) CHECK(a.scales[i].count == b.scales[i].count);
}

TEST_CASE("box_dimension scale invariance") {
  const auto& s = weierstrass_fixture();
  const double base = box_dimension(s).slope;
  for (double c : {0.5, 2.0}) {
    CHECK(std::abs(box_dimension(scaled(s, c)).slope - base) <= 0.05);
  }
}

TEST_CASE("box_dimension stays in [1, 2] for rough graphs") {
  const auto w = box_dimension(weierstrass_fixture(), 12, 2);
  CHECK(w.slope >= 1.0);
  CHECK(w.slope <= 2.0);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::vector<double> walk(1 << 14 | 1);
  double acc = 0.0;
  for (double& v : walk) v = acc += g(rng) / 128.0;
  const auto d = box_dimension(SampledSignal(0.0, 1.0 / (1 << 14), walk));
  CHECK(d.slope >= 1.0);
  CHECK(d.slope <= 2.0);
}

// Smooth graphs have dimension 1; the ceil in the column count can put the
// finite-window slope a little either side (x^{1/3} − x² gives 0.998).
TEST_CASE("box_dimension of smooth graphs is near 1") {
  const std::function<double(double)> fs[] = {
      [](double x) { return std::sqrt(x); },
      [](double x) { return std::sin(40 * x); },
      [](double x) { return std::cbrt(x) - x * x; },
  };
  for (const auto& f : fs) {
    const auto d = box_dimension(on_unit((1u << 14) + 1, f));
    CHECK(std::abs(d.slope - 1.0) <= 0.03);
  }
}

TEST_CASE("oscillation examples") {
  const auto flat = on_unit(101, [](double) { return 1.5; });
  CHECK(oscillation(flat, 50, 0.2) == 0.0);

  const auto line = on_unit(1001, [](double x) { return x; });
  for (double delta : {0.01, 0.0237, 0.1}) {
    CHECK(std::abs(oscillation(line, 500, delta) - delta) <= line.h());
  }
  CHECK(oscillation(line, 500, 0.5 * line.h()) == 0.0);

  const auto root = on_unit((1u << 16) + 1, [](double x) { return std::sqrt(x); });
  CHECK(oscillation(root, 0, 0.01) == doctest::Approx(0.1).epsilon(1e-3));
  CHECK_THROWS_AS(oscillation(root, root.size(), 0.1), DomainError);
}

TEST_CASE("oscillation is monotone in delta") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(300);
  for (double& x : v) x = u(rng);
  const SampledSignal s(0.0, 0.01, v);
  std::uniform_int_distribution<std::size_t> idx(0, 299);
  std::uniform_real_distribution<double> dd(0.0, 3.5);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t i = idx(rng);
    double d1 = dd(rng), d2 = dd(rng);
    if (d1 > d2) std::swap(d1, d2);
    CHECK(oscillation(s, i, d1) <= oscillation(s, i, d2));
  }
}

TEST_CASE("max_oscillation equals the pointwise sup") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> v(200);
    for (double& x : v) x = u(rng);
    const SampledSignal s(0.0, 0.5, v);
    for (double delta : {0.5, 1.0, 3.7, 20.0, 150.0}) {
      double brute = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) brute = std::max(brute, oscillation(s, i, delta));
      CHECK(max_oscillation(s, delta) == brute);
    }
  }
}

TEST_CASE("holder_global examples") {
  const std::size_t n = (1u << 16) + 1;
  const auto line = holder_global(on_unit(n, [](double x) { return x; }));
  CHECK(line.slope >= 0.95);
  CHECK(line.slope <= 1.05);
  CHECK(line.dimension == doctest::Approx(2.0 - line.slope));

  const auto root = holder_global(on_unit(n, [](double x) { return std::sqrt(x); }));
  CHECK(root.slope >= 0.45);
  CHECK(root.slope <= 0.55);

  const auto w = holder_global(weierstrass_fixture());
  CHECK(w.slope >= 0.40);
  CHECK(w.slope <= 0.60);
}

TEST_CASE("holder_global recovers power exponents") {
  const std::size_t n = (1u << 16) + 1;
  for (double p : {0.5, 1.0 / 3.0}) {
    const auto e = holder_global(on_unit(n, [p](double x) { return std::pow(x, p); }));
    CHECK(std::abs(e.slope - p) <= 0.07);
  }
}

TEST_CASE("holder_global errors") {
  CHECK_THROWS_AS(holder_global(on_unit(1025, [](double) { return 0.25; })), DegenerateError);
  const auto s = on_unit(65, [](double x) { return x; });
  CHECK_THROWS_AS(holder_global(s), ScaleError);
  CHECK_THROWS_AS(holder_global(s, {1, 2, 3}), ScaleError);
  CHECK_NOTHROW(holder_global(s, {1, 2, 3, 4}));
}

TEST_CASE("dimension and Holder consistency") {
  const auto line = dim_holder_consistency(on_unit((1u << 14) + 1, [](double x) { return x; }));
  CHECK(line.discrepancy <= 0.05);

  const auto w = dim_holder_consistency(weierstrass_fixture());
  CHECK(std::isfinite(w.discrepancy));
  CHECK(w.discrepancy <= 0.2);
  MESSAGE("Weierstrass s=1.5: d_box=" << w.d_box << " H=" << w.holder
                                      << " discrepancy=" << w.discrepancy);
}
