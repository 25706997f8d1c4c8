#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "ratenet/convergence.hpp"
#include "ratenet/error.hpp"

using namespace ratenet;

namespace {

mpz_class factorial(int n) {
  mpz_class f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

mpz_class binomial(int n, int k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

// sum_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1
std::vector<mpq_class> bernoulli_recurrence(int n_max) {
  std::vector<mpq_class> b{1};
  for (int m = 1; m <= n_max; ++m) {
    mpq_class s = 0;
    for (int k = 0; k < m; ++k) s += mpq_class(binomial(m + 1, k)) * b[static_cast<std::size_t>(k)];
    b.push_back(-s / mpq_class(m + 1));
  }
  return b;
}

long double logistic(long double x, long double lambda) { return 1.0L / (1.0L + std::exp(-lambda * x)); }

// central n-th difference, Richardson-extrapolated over h, h/2, h/4, h/8
long double richardson_derivative(int n, long double x, long double lambda, long double h) {
  auto diff = [&](long double step) {
    long double acc = 0.0L;
    long double c = 1.0L;
    for (int k = 0; k <= n; ++k) {
      acc += (k % 2 ? -c : c) * logistic(x + (0.5L * n - k) * step, lambda);
      c = c * (n - k) / (k + 1);
    }
    return acc / std::pow(step, static_cast<long double>(n));
  };
  long double t[4][4];
  for (int i = 0; i < 4; ++i) t[i][0] = diff(h / (1 << i));
  for (int j = 1; j < 4; ++j)
    for (int i = j; i < 4; ++i) {
      const long double f = std::pow(4.0L, static_cast<long double>(j));
      t[i][j] = (f * t[i][j - 1] - t[i - 1][j - 1]) / (f - 1.0L);
    }
  return t[3][3];
}

// n! / (2 pi r^n) * contour integral of S(x + r e^{i theta}) e^{-i n theta}
double cauchy_derivative(int n, double x, double lambda, double r) {
  const int m = 256;
  std::complex<double> acc = 0.0;
  for (int k = 0; k < m; ++k) {
    const double th = 2.0 * std::numbers::pi * k / m;
    const std::complex<double> z = x + r * std::polar(1.0, th);
    acc += 1.0 / (1.0 + std::exp(-lambda * z)) * std::polar(1.0, -n * th);
  }
  return acc.real() / m * std::tgamma(n + 1.0) / std::pow(r, n);
}

}  // namespace

TEST_CASE("Eulerian numbers") {
  CHECK(eulerian(1, 0) == 1);
  CHECK(eulerian(0, 0) == 1);
  CHECK(eulerian(3, 1) == 4);
  CHECK(eulerian_row(3) == std::vector<mpz_class>{1, 4, 1});
  CHECK(eulerian_row(5) == std::vector<mpz_class>{1, 26, 66, 26, 1});
  CHECK(eulerian(4, 4) == 0);
  CHECK(eulerian(4, -1) == 0);
  for (int n = 1; n <= 30; ++n) {
    mpz_class sum = 0;
    for (const auto& a : eulerian_row(n)) sum += a;
    CHECK(sum == factorial(n));
  }
}

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == mpq_class(-1, 2));
  CHECK(bernoulli(2) == mpq_class(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(12) == mpq_class(-691, 2730));
  const auto ref = bernoulli_recurrence(80);
  for (int n = 0; n <= 80; ++n) CHECK(bernoulli(n) == ref[static_cast<std::size_t>(n)]);
}

TEST_CASE("derivatives at zero") {
  CHECK(sigmoid_derivative_at(0.0, 1.0, 1).value() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(sigmoid_derivative_at(0.0, 1.0, 2).sign == 0);
  CHECK(sigmoid_derivative_at(0.0, 1.0, 2).value() == 0.0);
  CHECK(sigmoid_derivative_at(0.0, 2.0, 1).value() == doctest::Approx(0.5).epsilon(1e-15));
  // lambda^n (2^(n+1) - 1) B_(n+1) / (n+1)
  const auto b = bernoulli_recurrence(41);
  for (int n = 1; n <= 40; ++n) {
    mpz_class p = 1;
    p <<= static_cast<mp_bitcnt_t>(n + 1);
    const mpq_class exact = mpq_class(p - 1) * b[static_cast<std::size_t>(n + 1)] / mpq_class(n + 1);
    const auto d = sigmoid_derivative_at(0.0, 1.5, n);
    if (exact == 0) {
      CHECK(d.sign == 0);
      continue;
    }
    CHECK(d.sign == sgn(exact));
    CHECK(d.log_abs == doctest::Approx(std::log(std::abs(exact.get_d())) + n * std::log(1.5)).epsilon(1e-13));
  }
}

TEST_CASE("derivatives against Richardson finite differences") {
  for (double x : {0.5, 1.0, 2.0})
    for (int n = 1; n <= 8; ++n) {
      const double got = sigmoid_derivative_at(x, 1.0, n).value();
      const long double ref = richardson_derivative(n, x, 1.0L, 0.4L);
      CHECK(std::abs(got - static_cast<double>(ref)) <= 1e-5 * std::abs(static_cast<double>(ref)));
    }
}

TEST_CASE("derivatives against the Cauchy integral") {
  for (double lambda : {0.7, 1.0, 3.0})
    for (double x : {0.25, 1.0, 2.0, 4.0})
      for (int n : {1, 3, 8, 15, 25}) {
        // the nearest poles are at x = +-i pi / lambda
        const double r = 0.5 * std::hypot(x, std::numbers::pi / lambda);
        const double ref = cauchy_derivative(n, x, lambda, r);
        const double got = sigmoid_derivative_at(x, lambda, n).value();
        CHECK(std::abs(got - ref) <= 1e-9 * std::tgamma(n + 1.0) / std::pow(r, n));
      }
}

TEST_CASE("reflection of derivatives") {
  for (int n = 1; n <= 20; ++n) {
    const auto p = sigmoid_derivative_at(1.3, 1.0, n);
    const auto m = sigmoid_derivative_at(-1.3, 1.0, n);
    CHECK(m.log_abs == p.log_abs);
    CHECK(m.sign == (n % 2 ? p.sign : -p.sign));
  }
}

TEST_CASE("large orders stay in log space") {
  const auto d = sigmoid_derivative_at(0.3, 1.0, 512);
  CHECK(d.sign != 0);
  CHECK(d.log_abs > 709.0);
  CHECK_THROWS_AS(d.value(), Error);
  try {
    (void)SignedLog{1, 1000.0}.value();
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Overflow);
  }
  const auto t = derivative_table(2.0, 1.0, 100);
  CHECK(t.values.size() == 100);
  CHECK(t.at(37).log_abs == sigmoid_derivative_at(2.0, 1.0, 37).log_abs);
}

TEST_CASE("radius at the origin is pi over lambda") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const double r = sigmoid_radius(0.0, lambda, 512);
    CHECK(std::abs(r - std::numbers::pi / lambda) <= 0.01 * std::numbers::pi / lambda);
  }
}

TEST_CASE("radius far from the origin approaches |x0|") {
  const double r = sigmoid_radius(2.0, 8.0, 512);
  CHECK(r >= 1.9);
  CHECK(r <= 2.2);
}

TEST_CASE("radius is symmetric and grows with |x0|") {
  std::vector<double> radii;
  for (int k = -5; k <= 5; ++k) radii.push_back(sigmoid_radius(k, 1.0, 512));
  for (std::size_t k = 0; k < 5; ++k) CHECK(radii[k] == radii[10 - k]);
  for (std::size_t k = 5; k < 10; ++k) CHECK(radii[k + 1] >= radii[k]);
  // the nearest singularity is at distance hypot(x0, pi / lambda)
  for (int k = 0; k <= 5; ++k)
    CHECK(radii[static_cast<std::size_t>(k + 5)] ==
          doctest::Approx(std::hypot(k, std::numbers::pi)).epsilon(0.01));
}

TEST_CASE("arctangent radius") {
  CHECK(arctangent_radius(0.0, 2.0) == 0.5);
  CHECK(arctangent_radius(1.0, 1.0) == std::sqrt(2.0));
  CHECK(arctangent_radius(1e4, 1.0) == doctest::Approx(1e4).epsilon(1e-8));
  CHECK(arctangent_radius(-3.0, 1.0) == arctangent_radius(3.0, 1.0));
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(sigmoid_radius(0.0, 1.0, 32), Error);
  CHECK_THROWS_AS(sigmoid_derivative_at(0.0, -1.0, 3), Error);
  CHECK_THROWS_AS(sigmoid_derivative_at(0.0, 1.0, 0), Error);
  CHECK_THROWS_AS(arctangent_radius(0.0, 0.0), Error);
}
