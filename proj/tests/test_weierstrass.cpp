#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fracweier/errors.hpp"
#include "fracweier/weierstrass.hpp"
#include "oracle.hpp"

using namespace fw;
using namespace fw::weierstrass;

namespace {

// max over x_i = i/256 (i < 256) of |W(x+h) − W(x)|.
double sup_oscillation(const WeierstrassParams& p, Which which, double h) {
  double worst = 0.0;
  for (int i = 0; i < 256; ++i) {
    const double x = i / 256.0;
    const double d = which == Which::function ? w_frac(p, x + h).value - w_frac(p, x).value
                                              : w_frac_deriv(p, x + h).value -
                                                    w_frac_deriv(p, x).value;
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

}  // namespace

TEST_CASE("params validation and default K") {
  CHECK_THROWS_AS(WeierstrassParams(1.0, 1.5), ParamError);
  CHECK_THROWS_AS(WeierstrassParams(2.0, 1.0), ParamError);
  CHECK_THROWS_AS(WeierstrassParams(2.0, 2.0), ParamError);
  CHECK_THROWS_AS(WeierstrassParams(2.0, 1.5, 0.0), ParamError);
  CHECK_THROWS_AS(WeierstrassParams(2.0, 1.5, 1.1), ParamError);
  CHECK_THROWS_AS(WeierstrassParams(2.0, 1.5, 1.0, 0).with_K(0), ParamError);

  const WeierstrassParams p(2.0, 1.5);
  CHECK(p.K() == default_terms(2.0, 1.5, 1.0));
  const double q = std::pow(2.0, -0.5);
  CHECK(std::pow(q, p.K() + 1) / (1 - q) <= kDefaultTail);
  CHECK(std::pow(q, p.K()) / (1 - q) > kDefaultTail);
  CHECK(p.with_K(7).K() == 7);
  CHECK(p.with_K(7).deriv_K() == 7);
}

TEST_CASE("trig_sup is at least one") {
  for (double a : {0.3, 0.5, 0.8, 1.0}) {
    CHECK(trig_sup(a) >= 1.0);
    CHECK(trig_sup(a) == trig_sup(a));
  }
}

TEST_CASE("w_classical examples") {
  CHECK(w_classical(2.0, 1.5, 0.0, 30).value == 0.0);
  const auto r = w_classical(2.0, 1.5, 1.0, 30);
  CHECK(r.tail_bound == doctest::Approx(std::pow(2.0, -15.5) / (1 - std::pow(2.0, -0.5))).epsilon(1e-6));
  CHECK(r.tail_bound == doctest::Approx(7.4e-5).epsilon(0.01));
  // the geometric tail dominates the actual remainder
  CHECK(std::abs(oracle::weierstrass(2.0, 1.5, 1.0, 200) - oracle::weierstrass(2.0, 1.5, 1.0, 30)) <=
        r.tail_bound);

  const auto r60 = w_classical(2.0, 1.5, 1.0, 60);
  CHECK(std::abs(r60.value - oracle::weierstrass(2.0, 1.5, 1.0, 200)) <= r60.tail_bound);
  CHECK_THROWS_AS(w_classical(0.5, 1.5, 1.0, 30), ParamError);
  CHECK_THROWS_AS(w_classical(2.0, 2.5, 1.0, 30), ParamError);
}

TEST_CASE("w_classical matches the oracle for non-dyadic lambda") {
  for (double x : {0.1, 0.77, 1.9}) {
    const auto r = w_classical(3.0, 1.3, x, 40);
    CHECK(std::abs(r.value - oracle::weierstrass(3.0, 1.3, x, 150)) <= r.tail_bound);
  }
}

TEST_CASE("w_frac examples") {
  const WeierstrassParams p(2.0, 1.5, 0.5, 40);
  CHECK(w_frac(p, 0.0).value == 0.0);
  CHECK(w_frac(p, -1.0).value == 0.0);

  const auto a = w_frac(p, 1.0);
  const auto b = w_frac(p.with_K(120), 1.0);
  CHECK(std::abs(a.value - b.value) <= a.tail_bound);

  for (double x : {0.0, 0.3, 1.0, 2.7}) {
    const WeierstrassParams one(2.0, 1.5, 1.0, 30);
    const auto f = w_frac(one, x);
    const auto c = w_classical(2.0, 1.5, x, 30);
    CHECK(std::abs(f.value - c.value) <= f.tail_bound + c.tail_bound);
  }
}

TEST_CASE("w_frac_deriv examples") {
  const WeierstrassParams p(2.0, 1.5, 0.3);
  const double q = std::pow(2.0, -0.2);
  const auto r = w_frac_deriv(p, 0.0);
  CHECK(std::abs(r.value - q / (1 - q)) <= r.tail_bound);
  CHECK(q / (1 - q) == doctest::Approx(6.72).epsilon(1e-3));

  try {
    w_frac_deriv(WeierstrassParams(2.0, 1.5, 0.6), 1.0);
    FAIL("expected DivergentSeries");
  } catch (const DivergentSeries& e) {
    CHECK(e.ratio() == doctest::Approx(std::pow(2.0, 0.1)));
    CHECK(std::string(e.what()).find("alpha must be < 2 - s") != std::string::npos);
  }
  CHECK_THROWS_AS(w_frac_deriv(WeierstrassParams(2.0, 1.5, 0.5), 1.0), DivergentSeries);

  const WeierstrassParams p3(3.0, 1.2, 0.5, 40);
  const auto a = w_frac_deriv(p3, 1.0);
  const auto b = w_frac_deriv(p3.with_K(120), 1.0);
  CHECK(std::abs(a.value - b.value) <= a.tail_bound);
  CHECK(w_frac_deriv(p3, -0.5).value == 0.0);
}

TEST_CASE("holder constants") {
  CHECK(holder_c1(WeierstrassParams(2.0, 1.5, 1.0)) == doctest::Approx(5.8284).epsilon(1e-4));
  CHECK(holder_c2(WeierstrassParams(2.0, 1.5, 0.3)) == doctest::Approx(21.66).epsilon(1e-3));
  CHECK_THROWS_AS(holder_c1(WeierstrassParams(2.0, 1.5, 0.5)), ParamError);
  CHECK_THROWS_AS(holder_c2(WeierstrassParams(2.0, 1.5, 0.25)), ParamError);
  CHECK_THROWS_AS(holder_c2(WeierstrassParams(2.0, 1.5, 0.7)), ParamError);

  const auto c = holder_constants(WeierstrassParams(2.0, 1.5, 0.3));
  CHECK(c.c1 < 0.0);  // α < 2 − s: flagged, not corrected
  CHECK_FALSE(c.c1_positive);
  REQUIRE(c.c2.has_value());
  CHECK(c.c2_positive);

  const auto d = holder_constants(WeierstrassParams(2.0, 1.5, 0.8));
  CHECK(d.c1_positive);
  CHECK_FALSE(d.c2.has_value());

  const auto e = holder_constants(WeierstrassParams(2.0, 1.5, 0.2));
  REQUIRE(e.c2.has_value());
  CHECK_FALSE(e.c2_positive);
}

TEST_CASE("sample") {
  const WeierstrassParams p(2.0, 1.5, 0.7);
  const auto two = sample(p, 1.5, 2, Which::function);
  REQUIRE(two.values.size() == 2);
  CHECK(two.x(1) == 1.5);
  CHECK(two.values[0] == w_frac(p, 0.0).value);
  CHECK(two.values[1] == w_frac(p, 1.5).value);

  const WeierstrassParams one(2.0, 1.5, 1.0);
  const auto s = sample(one, 1.0, 4097, Which::function);
  REQUIRE(s.values.size() == 4097);
  CHECK(s.x(4096) == 1.0);
  for (std::size_t j = 0; j < s.values.size(); j += 37) {
    const auto c = w_classical(2.0, 1.5, s.x(j), one.K());
    CHECK(std::abs(s.values[j] - c.value) <= 2 * c.tail_bound);
  }

  const WeierstrassParams q(2.0, 1.5, 0.3);
  for (auto which : {Which::function, Which::derivative}) {
    const auto a = sample(q, 2.0, 513, which);
    const auto b = sample(q, 2.0, 513, which);
    const auto c = sample_serial(q, 2.0, 513, which);
    CHECK(a.values == b.values);
    CHECK(a.values == c.values);
  }
  CHECK_THROWS_AS(sample(p, 1.0, 1, Which::function), ParamError);
  CHECK_THROWS_AS(sample(p, 0.0, 10, Which::function), ParamError);
  CHECK_THROWS_AS(sample(p, 1.0, 10, Which::derivative), DivergentSeries);
}

TEST_CASE("truncation honesty sweep") {
  std::mt19937_64 rng(23);
  // α from a fixed set: each new α costs one sup|sin_α|, |cos_α| scan
  const double alphas[] = {0.1, 0.25, 0.45, 0.6, 0.85, 0.985, 1.0};
  std::uniform_real_distribution<double> lam(1.5, 4.0), ss(1.05, 1.95), xx(0.0, 3.0);
  std::uniform_int_distribution<int> kk(5, 40), ai(0, 6);
  for (int t = 0; t < 120; ++t) {
    const WeierstrassParams p(lam(rng), ss(rng), alphas[ai(rng)], static_cast<std::size_t>(kk(rng)));
    const double x = xx(rng);
    const auto a = w_frac(p, x);
    const auto b = w_frac(p.with_K(2 * p.K()), x);
    CHECK_MESSAGE(std::abs(a.value - b.value) <= a.tail_bound,
                  "lambda=" << p.lambda() << " s=" << p.s() << " alpha=" << p.alpha()
                            << " K=" << p.K() << " x=" << x);
    if (p.alpha() < 2 - p.s()) {
      const auto c = w_frac_deriv(p, x);
      const auto d = w_frac_deriv(p.with_K(2 * p.K()), x);
      CHECK(std::abs(c.value - d.value) <= c.tail_bound);
    }
  }
}

TEST_CASE("oscillation upper bound, function") {
  const double c1 = holder_c1(WeierstrassParams(2.0, 1.5, 1.0));
  for (double alpha : {1.0, 0.7}) {
    const WeierstrassParams p(2.0, 1.5, alpha);
    for (int e = 4; e <= 12; ++e) {
      const double h = std::ldexp(1.0, -e);
      CHECK(sup_oscillation(p, Which::function, h) <= 2 * c1 * std::sqrt(h));
    }
  }
}

// At α = 2 − s the origin behaves like h^{1/2}·log(1/h), so the h^{1/2}
// bound is exceeded for small h. The worst point is x = 0.
TEST_CASE("oscillation at alpha = 2 - s grows logarithmically at the origin") {
  const WeierstrassParams p(2.0, 1.5, 0.5);
  const double c1 = holder_c1(WeierstrassParams(2.0, 1.5, 1.0));
  double prev = 0.0;
  for (int e : {6, 9, 12, 16}) {
    const double h = std::ldexp(1.0, -e);
    const double at_origin = std::abs(w_frac(p, h).value) / std::sqrt(h);
    CHECK(at_origin > prev);
    prev = at_origin;
  }
  CHECK(sup_oscillation(p, Which::function, std::ldexp(1.0, -12)) > 2 * c1 * std::ldexp(1.0, -6));
}

TEST_CASE("oscillation upper bound, derivative") {
  struct Case {
    double s, alpha;
  };
  for (const auto c : {Case{1.2, 0.5}, Case{1.5, 0.3}}) {
    const WeierstrassParams p(2.0, c.s, c.alpha);
    const double c2 = holder_c2(p);
    REQUIRE(c2 > 0.0);
    for (int e = 4; e <= 12; e += 2) {
      const double h = std::ldexp(1.0, -e);
      CHECK(sup_oscillation(p, Which::derivative, h) <= 2 * c2 * std::pow(h, 2 - c.s - c.alpha));
    }
  }
}

TEST_CASE("derivative terms grow when alpha >= 2 - s") {
  for (double alpha : {0.5, 0.6, 0.9}) {
    const WeierstrassParams p(2.0, 1.5, alpha, 30);
    double prev = 0.0;
    double sum = 0.0;
    for (std::size_t k = 1; k <= 200; ++k) {
      const double t = w_frac_deriv_term(p, k, 0.0);
      CHECK(t == doctest::Approx(std::pow(2.0, (alpha - 0.5) * static_cast<double>(k))));
      CHECK(t >= prev);
      prev = t;
      sum += t;
    }
    CHECK(sum >= 200.0);
  }
}
