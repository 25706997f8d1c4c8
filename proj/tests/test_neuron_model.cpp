#include <doctest.h>

#include <cmath>
#include <random>

#include "ratenet/error.hpp"
#include "ratenet/neuron_model.hpp"

using namespace ratenet;

namespace {

// plain bisection on a sign change, independent of the library's scan
template <class F>
double bisection(F&& f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double naive_sigmoid(const SigmoidParams& p, double v) {
  return p.t_max / (1.0 + std::exp(-p.slope * (v - p.threshold)));
}

}  // namespace

TEST_CASE("sigmoid values") {
  const SigmoidParams unit;
  CHECK(sigmoid(unit, 0.0) == 0.5);
  CHECK(sigmoid_d1(unit, 0.0) == 0.25);
  CHECK(sigmoid_d2(unit, 0.0) == 0.0);

  const SigmoidParams p{2.5, 3.0, -0.7};
  CHECK(sigmoid(p, p.threshold) == doctest::Approx(1.25));
  CHECK(sigmoid(unit, 1000.0) == 1.0);
  CHECK(sigmoid(unit, -1000.0) == 0.0);
  CHECK(std::isfinite(sigmoid_d1(unit, -1000.0)));
  CHECK(std::isfinite(sigmoid_d2(unit, 1000.0)));
}

TEST_CASE("sigmoid derivatives against central differences") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  const SigmoidParams p{1.7, 1.3, 0.4};
  const double h = 1e-4;
  for (int k = 0; k < 20; ++k) {
    const double v = u(rng);
    const double d1 = (naive_sigmoid(p, v + h) - naive_sigmoid(p, v - h)) / (2 * h);
    const double d2 = (naive_sigmoid(p, v + h) - 2 * naive_sigmoid(p, v) + naive_sigmoid(p, v - h)) / (h * h);
    CHECK(sigmoid(p, v) == doctest::Approx(naive_sigmoid(p, v)).epsilon(1e-14));
    CHECK(sigmoid_d1(p, v) == doctest::Approx(d1).epsilon(1e-6));
    CHECK(std::abs(sigmoid_d2(p, v) - d2) <= 1e-6 * std::max(1.0, std::abs(d2)));
  }
}

TEST_CASE("decoupled neurons sit at tau I") {
  NetworkParams p;
  p.weight = 0.0;
  p.tau = 0.5;
  p.input = 3.0;
  const auto roots = stationary_state(p);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == 1.5);
}

TEST_CASE("default parameters have the single root of mu = S(mu)") {
  const NetworkParams p;
  const double ref = bisection([](double m) { return m - 1.0 / (1.0 + std::exp(-m)); }, 0.0, 1.0);
  const auto roots = stationary_state(p);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == doctest::Approx(ref).epsilon(1e-13));
  CHECK(roots[0] == doctest::Approx(0.659046).epsilon(1e-6));
  CHECK(stationary_point(p) == roots[0]);
}

TEST_CASE("roots are stable under a tighter tolerance") {
  NetworkParams p;
  p.weight = 10.0;
  p.input = -5.0;
  const auto a = stationary_state(p, 1e-12);
  const auto b = stationary_state(p, 1e-13);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-12);
}

TEST_CASE("synchronization family has mu = 0") {
  for (double input : {-2.0, -20.0, -7.5}) {
    NetworkParams p;
    p.input = input;
    p.weight = -2.0 * input;
    p.tau = -2.0 / input;
    const auto roots = stationary_state(p);
    bool found = false;
    for (double r : roots) found = found || std::abs(r) < 1e-9;
    CHECK(found);
  }
}

TEST_CASE("bistable network reports three symmetric roots") {
  NetworkParams p;
  p.weight = 10.0;
  p.input = -5.0;
  // mu = 5 tanh(mu / 2)
  const double outer = bisection([](double m) { return m - 5.0 * std::tanh(0.5 * m); }, 1.0, 6.0);
  const auto roots = stationary_state(p);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == doctest::Approx(-outer).epsilon(1e-12));
  CHECK(std::abs(roots[1]) < 1e-12);
  CHECK(roots[2] == doctest::Approx(outer).epsilon(1e-12));

  CHECK_THROWS_AS(stationary_point(p), Error);
  try {
    stationary_point(p);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::AmbiguousBranch);
  }
  CHECK(stationary_point(p, 2) == roots[2]);
  try {
    stationary_point(p, 3);
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidArgument);
  }
}

TEST_CASE("tangent root is found") {
  // 1 = 8 S'(mu) at S = (1 + sqrt(1/2)) / 2
  const double s = 0.5 * (1.0 + std::sqrt(0.5));
  const double mu = std::log(s / (1.0 - s));
  NetworkParams p;
  p.weight = 8.0;
  p.input = mu - 8.0 * s;
  CHECK(mu == doctest::Approx(1.7627).epsilon(1e-4));
  CHECK(p.input == doctest::Approx(-5.0657).epsilon(1e-4));
  const auto roots = stationary_state(p);
  bool found = false;
  for (double r : roots) found = found || std::abs(r - mu) < 1e-6;
  CHECK(found);
}

TEST_CASE("invalid parameters") {
  NetworkParams p;
  p.tau = 0.0;
  CHECK_THROWS_AS(stationary_state(p), Error);
  p = NetworkParams{};
  p.sigmoid.slope = -1.0;
  CHECK_THROWS_AS(stationary_state(p), Error);
}

TEST_CASE("effective matrix") {
  NetworkParams p;
  p.tau = 2.0;
  p.weight = 0.0;
  const auto adj0 = realize(complete_graph(4), 0.0);
  const auto e0 = effective_matrix(adj0, p, 0.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(e0.a(i, j) == (i == j ? -0.5 : 0.0));

  p = NetworkParams{};
  p.weight = 3.0;
  const double mu = stationary_point(p);
  const auto adj = realize(complete_graph(5), p.weight);
  const auto e = effective_matrix(adj, p, mu);
  CHECK(e.slope == sigmoid_d1(p.sigmoid, mu));
  for (std::size_t i = 0; i < 5; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < 5; ++j) row += e.a(i, j);
    // uniform mode: a0 = -1/tau + Lambda S'(mu)
    CHECK(row == doctest::Approx(-1.0 + 3.0 * e.slope));
    CHECK(e.a(i, i) == -1.0);
  }

  // strong inputs saturate the sigmoid and switch the coupling off
  for (double input : {-50.0, 50.0}) {
    NetworkParams q;
    q.input = input;
    const auto eq = effective_matrix(realize(complete_graph(5), 1.0), q, stationary_point(q));
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(eq.j_eff(i, j)) < 1e-10);
  }
}
