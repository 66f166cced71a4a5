#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fracweier/errors.hpp"
#include "fracweier/gamma.hpp"
#include "fracweier/mlf.hpp"
#include "oracle.hpp"

using namespace fw;
using namespace fw::mlf;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("gamma: factorials and half-integer") {
  CHECK(fw::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fw::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-15));
  CHECK(rel_err(fw::gamma(0.5), 1.7724538509055160273) < 1e-15);
}

TEST_CASE("gamma: relative error on (0, 50] against 120-digit oracle") {
  double worst = 0.0;
  for (double x = 0.003; x <= 50.0; x += 0.0917) {
    worst = std::max(worst, rel_err(fw::gamma(x), oracle::gamma(x)));
  }
  worst = std::max(worst, rel_err(fw::gamma(50.0), oracle::gamma(50.0)));
  CHECK(worst <= 1e-12);
}

TEST_CASE("gamma: reflection for negative non-integers") {
  for (double x : {-0.5, -1.5, -2.25, -7.3, -20.9}) {
    CHECK(rel_err(fw::gamma(x), oracle::gamma(x)) < 1e-12);
    CHECK(rel_err(rgamma(x), 1.0 / oracle::gamma(x)) < 1e-12);
  }
}

TEST_CASE("gamma: poles") {
  for (double x : {0.0, -1.0, -2.0, -30.0}) {
    CHECK_THROWS_AS(fw::gamma(x), PoleError);
    CHECK(rgamma(x) == 0.0);
  }
  CHECK(rgamma(200.0) == 0.0);
  CHECK(sinpi(3.0) == 0.0);
  CHECK(cospi(0.5) == 0.0);
  CHECK(cospi(-7.5) == 0.0);
}

TEST_CASE("FracParams validates alpha and beta") {
  CHECK_THROWS_AS(FracParams(0.0), ParamError);
  CHECK_THROWS_AS(FracParams(-0.1), ParamError);
  CHECK_THROWS_AS(FracParams(2.0001), ParamError);
  CHECK_THROWS_AS(FracParams(std::nan("")), ParamError);
  CHECK_THROWS_AS(FracParams(0.5, 0.0), ParamError);
  CHECK_NOTHROW(FracParams(2.0, 3.0));
}

TEST_CASE("mittag_leffler examples") {
  const auto e = mittag_leffler(FracParams(1.0), 1.0);
  CHECK(std::abs(e.value - std::numbers::e) <= 1e-15 * std::numbers::e + e.tail_bound);
  CHECK(e.terms_used >= 1);
  CHECK(mittag_leffler(FracParams(1.0), 0.0).value == 1.0);

  const auto h = mittag_leffler(FracParams(0.5), 1.0);
  const double want = oracle::ml(0.5, 1.0, 1.0, 500);
  CHECK(std::abs(h.value - want) <= h.tail_bound);
  CHECK(rel_err(h.value, want) < 1e-13);
}

TEST_CASE("mittag_leffler2 examples") {
  CHECK(std::abs(mittag_leffler2(FracParams(1.0, 1.0), 1.0).value - std::numbers::e) < 1e-14);
  for (double beta : {0.3, 1.0, 1.7, 4.0}) {
    CHECK(mittag_leffler2(FracParams(0.6, beta), 0.0).value == rgamma(beta));
  }
  // Σ 1/(k+1)! summed directly.
  double direct = 0.0;
  double fact = 1.0;
  for (int k = 0; k < 30; ++k) {
    fact *= (k + 1);
    direct += 1.0 / fact;
  }
  const auto r = mittag_leffler2(FracParams(1.0, 2.0), 1.0);
  CHECK(std::abs(r.value - direct) < 1e-15 + r.tail_bound);
  CHECK(std::abs(r.value - (std::numbers::e - 1.0)) < 1e-14);
}

TEST_CASE("frac_cos and frac_sin examples") {
  for (double a : {0.2, 0.5, 1.0, 1.7}) {
    CHECK(frac_cos(a, 0.0).value == 1.0);
    CHECK(frac_sin(a, 0.0).value == 0.0);
  }
  CHECK(std::abs(frac_cos(1.0, std::numbers::pi).value + 1.0) < 1e-10);
  CHECK(std::abs(frac_sin(1.0, std::numbers::pi / 2).value - 1.0) < 1e-10);

  const auto c = frac_cos(0.5, 1.0);
  CHECK(std::abs(c.value - oracle::frac_cos(0.5, 1.0, 1.0)) <= c.tail_bound);
  const auto s = frac_sin(0.7, 0.3);
  CHECK(std::abs(s.value - oracle::frac_sin(0.7, 1.0, 0.3)) <= s.tail_bound);
}

TEST_CASE("two-parameter trig examples") {
  for (double a : {0.3, 0.8, 1.0}) {
    for (double u : {0.0, 0.4, 2.5}) {
      CHECK(frac_cos2(a, 1.0, u).value == frac_cos(a, u).value);
      CHECK(frac_sin2(a, 1.0, u).value == frac_sin(a, u).value);
    }
  }
  const double beta = 2.0 - 0.3;
  CHECK(frac_cos2(1.0, beta, 0.0).value == rgamma(beta));
  CHECK(frac_sin2(1.0, beta, 0.0).value == 0.0);

  const auto c = frac_cos2(1.0, 1.5, 0.5);
  const auto s = frac_sin2(1.0, 1.5, 0.5);
  CHECK(std::abs(c.value - oracle::frac_cos(1.0, 1.5, 0.5)) <= c.tail_bound);
  CHECK(std::abs(s.value - oracle::frac_sin(1.0, 1.5, 0.5)) <= s.tail_bound);
}

TEST_CASE("mlf_imag_decompose examples") {
  const auto e = mlf_imag_decompose(1.0, std::numbers::pi);
  CHECK(std::abs(e.re + 1.0) < 1e-10);
  CHECK(std::abs(e.im) < 1e-10);
  for (double a : {0.3, 1.0, 1.5}) {
    const auto z = mlf_imag_decompose(a, 0.0);
    CHECK(z.re == 1.0);
    CHECK(z.im == 0.0);
  }
  const auto d = mlf_imag_decompose(0.6, 0.8);
  const auto c = frac_cos(0.6, 0.8);
  const auto s = frac_sin(0.6, 0.8);
  CHECK(std::abs(d.re - c.value) <= d.tail_bound + c.tail_bound);
  CHECK(std::abs(d.im - s.value) <= d.tail_bound + s.tail_bound);
}

TEST_CASE("reduction at alpha = 1") {
  for (double x = -5.0; x <= 5.0; x += 0.125) {
    const double got = mittag_leffler(FracParams(1.0), x).value;
    CHECK(std::abs(got - std::exp(x)) <= 1e-10 * std::exp(x));
  }
  for (double u = 0.0; u <= 10.0; u += 0.0625) {
    CHECK(std::abs(frac_sin(1.0, u).value - std::sin(u)) <= 1e-10);
    CHECK(std::abs(frac_cos(1.0, u).value - std::cos(u)) <= 1e-10);
  }
}

TEST_CASE("two-parameter reduction is the same code path") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> alpha(0.05, 2.0);
  std::uniform_real_distribution<double> z(-6.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    const double a = alpha(rng);
    const double x = z(rng);
    RealResult one, two;
    try {
      one = mittag_leffler(FracParams(a), x);
    } catch (const NoConvergence&) {
      CHECK_THROWS_AS(mittag_leffler2(FracParams(a, 1.0), x), NoConvergence);
      continue;
    }
    two = mittag_leffler2(FracParams(a, 1.0), x);
    CHECK(one.value == two.value);
    CHECK(one.tail_bound == two.tail_bound);
    CHECK(one.terms_used == two.terms_used);
  }
}

TEST_CASE("tail honesty: doubling the term budget stays inside tail_bound") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> alpha(0.1, 2.0);
  std::uniform_real_distribution<double> beta(0.2, 3.0);
  std::uniform_real_distribution<double> z(-4.0, 4.0);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const MittagLeffler ml(alpha(rng), beta(rng));
    const double w = z(rng);
    RealResult r;
    try {
      r = ml.eval(w);
    } catch (const NoConvergence&) {
      continue;  // e.g. E_{0.18}(3.9) overflows double
    }
    if (r.method != Method::series) continue;
    const RealResult deeper = ml.partial_sum(w, 2 * r.terms_used);
    CHECK(std::abs(r.value - deeper.value) <= r.tail_bound);
    // Same property for an arbitrary fixed budget N.
    const std::size_t n = r.terms_used / 2 + 2;
    const RealResult a = ml.partial_sum(w, n);
    const RealResult b = ml.partial_sum(w, 2 * n);
    CHECK(std::abs(a.value - b.value) <= a.tail_bound);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("tail honesty on the imaginary axis") {
  const MittagLeffler ml(0.75, 1.0);
  for (double u : {0.2, 1.0, 2.0, 3.5}) {
    const auto a = ml.partial_sum(std::complex<double>(0.0, u), 30);
    const auto b = ml.partial_sum(std::complex<double>(0.0, u), 60);
    CHECK(std::abs(a.value - b.value) <= a.tail_bound);
  }
}

TEST_CASE("decomposition agrees with separate cos/sin series") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u_dist(0.0, 5.0);
  for (double a = 0.3; a <= 1.0001; a += 0.1) {
    for (int i = 0; i < 12; ++i) {
      const double u = u_dist(rng);
      const auto d = mlf_imag_decompose(a, u);
      const auto c = frac_cos(a, u);
      const auto s = frac_sin(a, u);
      CHECK(std::abs(d.re - c.value) <= d.tail_bound + c.tail_bound);
      CHECK(std::abs(d.im - s.value) <= d.tail_bound + s.tail_bound);
    }
  }
}

TEST_CASE("every route agrees with the oracle within its reported bound") {
  // (alpha, u) pairs chosen so the 120-digit oracle is exact, covering the
  // double series, extended series and large-argument routes.
  const std::vector<std::pair<double, double>> cases = {
      {0.3, 0.5}, {0.3, 2.0}, {0.3, 3.5}, {0.5, 1.0}, {0.5, 4.0}, {0.5, 7.0},
      {0.7, 3.0}, {0.7, 12.0}, {0.7, 20.0}, {0.9, 10.0}, {0.9, 35.0}, {1.2, 9.0},
      {1.5, 6.0}, {2.0, 3.0}};
  bool saw_asym = false;
  bool saw_ext = false;
  for (auto [a, u] : cases) {
    const auto c = frac_cos(a, u);
    const auto s = frac_sin(a, u);
    const double wc = oracle::frac_cos(a, 1.0, u, 900);
    const double ws = oracle::frac_sin(a, 1.0, u, 900);
    INFO("alpha=" << a << " u=" << u << " route=" << to_string(c.method));
    CHECK(std::abs(c.value - wc) <= c.tail_bound);
    CHECK(std::abs(s.value - ws) <= s.tail_bound);
    saw_asym |= c.method == Method::asymptotic;
    saw_ext |= c.method == Method::series_extended;
  }
  CHECK(saw_asym);
  CHECK(saw_ext);
}

TEST_CASE("large-argument expansion is exact at alpha = 1") {
  const MittagLeffler ml(1.0, 1.0);
  for (double u : {0.5, 10.0, 1e6, std::ldexp(1.0, 56)}) {
    const auto r = ml.asymptotic(u, 0.5, 1e-14);
    CHECK(std::abs(r.value.real() - std::cos(u)) < 1e-15);
    CHECK(std::abs(r.value.imag() - std::sin(u)) < 1e-15);
  }
}

TEST_CASE("NoConvergence when the budget or precision runs out") {
  CHECK_THROWS_AS(MittagLeffler(0.5, 1.0).eval(1.0, {1e-13, 3}), NoConvergence);
  // E_{1/2}(60) ~ e^{3600}: overflows every route.
  CHECK_THROWS_AS(mittag_leffler(FracParams(0.5), 60.0), NoConvergence);
  CHECK_THROWS_AS(frac_sin(0.5, -1.0), DomainError);
  CHECK_THROWS_AS(frac_cos(0.5, 1.0, 0.0), DomainError);
}

namespace {

struct Extremum {
  double x;
  double value;
};

std::vector<Extremum> extrema_of_frac_sin(double alpha, double x_max, double step) {
  const FracTrig trig(alpha);
  std::vector<double> v;
  for (double x = 0.0; x <= x_max + 1e-12; x += step) v.push_back(trig.sin(x).value);
  std::vector<Extremum> out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if ((v[i] - v[i - 1]) * (v[i + 1] - v[i]) < 0.0) out.push_back({i * step, v[i]});
  }
  return out;
}

}  // namespace

TEST_CASE("damped oscillation for alpha < 1, growing oscillation for alpha > 1") {
  const auto damped = extrema_of_frac_sin(0.8, 40.0, 0.01);
  REQUIRE(damped.size() >= 4);
  // First extremum is the largest in magnitude; peak-to-peak swings shrink.
  for (std::size_t i = 1; i < damped.size(); ++i) {
    CHECK(std::abs(damped[i].value) < std::abs(damped[0].value));
  }
  for (std::size_t i = 2; i < damped.size(); ++i) {
    const double prev_swing = std::abs(damped[i - 1].value - damped[i - 2].value);
    const double swing = std::abs(damped[i].value - damped[i - 1].value);
    CHECK(swing < prev_swing);
  }

  const auto growing = extrema_of_frac_sin(1.2, 40.0, 0.01);
  REQUIRE(growing.size() >= 5);
  for (std::size_t i = 1; i < growing.size(); ++i) {
    CHECK(std::abs(growing[i].value) > std::abs(growing[i - 1].value));
  }
}
