#include "ratenet/convergence.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ratenet/error.hpp"

namespace ratenet {

namespace {

// Calls f(n, row) for every Eulerian row n = 1..n_max.
template <class F>
void for_each_row(int n_max, F&& f) {
  std::vector<mpz_class> row{1}, next;
  for (int n = 1; n <= n_max; ++n) {
    next.assign(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < n; ++k) {
      mpz_class v = 0;
      if (static_cast<std::size_t>(k) < row.size()) v += (k + 1) * row[static_cast<std::size_t>(k)];
      if (k >= 1) v += (n - k) * row[static_cast<std::size_t>(k - 1)];
      next[static_cast<std::size_t>(k)] = v;
    }
    row.swap(next);
    f(n, row);
  }
}

mpz_class alternating_sum(const std::vector<mpz_class>& row) {
  mpz_class s = 0;
  for (std::size_t k = 0; k < row.size(); ++k) s += (k % 2 ? -1 : 1) * row[k];
  return s;
}

double log_abs(const mpz_class& z) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::abs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// S^(n)(0) = lambda^n / 2^(n+1) sum_k (-1)^k A(n, k)
SignedLog derivative_at_zero(int n, double lambda, const std::vector<mpz_class>& row) {
  const mpz_class s = alternating_sum(row);
  if (s == 0) return {0, -std::numeric_limits<double>::infinity()};
  return {sgn(s), log_abs(s) + n * std::log(lambda) - (n + 1) * std::log(2.0)};
}

// S^(n)(x) = lambda^n y / (1+y)^(n+1) sum_k (-1)^k A(n, k) y^(n-1-k), y = exp(-lambda x), x > 0.
SignedLog derivative_positive(int n, double x, double lambda, const std::vector<mpz_class>& row) {
  const auto bits = static_cast<mpfr_prec_t>(std::ceil(n * std::log2(std::numbers::pi + lambda * x))) + 160;
  Mpfr y(bits), p(bits), term(bits);
  mpfr_set_d(y.get(), lambda, MPFR_RNDN);
  mpfr_mul_d(y.get(), y.get(), -x, MPFR_RNDN);
  mpfr_exp(y.get(), y.get(), MPFR_RNDN);
  mpfr_set_zero(p.get(), 1);
  for (int k = 0; k < n; ++k) {
    mpfr_mul(p.get(), p.get(), y.get(), MPFR_RNDN);
    mpfr_set_z(term.get(), row[static_cast<std::size_t>(k)].get_mpz_t(), MPFR_RNDN);
    if (k % 2) mpfr_neg(term.get(), term.get(), MPFR_RNDN);
    mpfr_add(p.get(), p.get(), term.get(), MPFR_RNDN);
  }
  if (mpfr_zero_p(p.get())) return {0, -std::numeric_limits<double>::infinity()};
  const int sign = mpfr_sgn(p.get()) > 0 ? 1 : -1;
  mpfr_abs(p.get(), p.get(), MPFR_RNDN);
  mpfr_log(p.get(), p.get(), MPFR_RNDN);
  const double log_p = mpfr_get_d(p.get(), MPFR_RNDN);
  // ln y = -lambda x; ln(1 + y) via log1p
  const double log_y = -lambda * x;
  return {sign, log_p + log_y + n * std::log(lambda) - (n + 1) * std::log1p(std::exp(log_y))};
}

SignedLog derivative_from_row(double x0, double lambda, int n, const std::vector<mpz_class>& row) {
  if (x0 == 0.0) return derivative_at_zero(n, lambda, row);
  auto d = derivative_positive(n, std::abs(x0), lambda, row);
  if (x0 < 0.0 && n % 2 == 0) d.sign = -d.sign;  // S^(n)(-x) = (-1)^(n-1) S^(n)(x)
  return d;
}

void check_args(double x0, double lambda, int n) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(Errc::InvalidArgument, "lambda must be positive");
  if (!std::isfinite(x0)) throw Error(Errc::InvalidArgument, "x0 must be finite");
  if (n < 1) throw Error(Errc::InvalidArgument, "derivative order must be >= 1");
}

// max over n in [lo, hi] of (|S^(n)| / n!)^(1/n), in log space
double root_test(const DerivativeTable& t, int lo, int hi) {
  double best = -std::numeric_limits<double>::infinity();
  for (int n = lo; n <= hi; ++n) {
    const auto& d = t.at(n);
    if (d.sign == 0) continue;
    best = std::max(best, (d.log_abs - std::lgamma(n + 1.0)) / n);
  }
  return best;
}

}  // namespace

mpz_class eulerian(int n, int k) {
  if (n == 0) return k == 0 ? 1 : 0;
  if (n < 0 || k < 0 || k >= n) return 0;
  return eulerian_row(n)[static_cast<std::size_t>(k)];
}

std::vector<mpz_class> eulerian_row(int n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "Eulerian row index must be >= 0");
  if (n == 0) return {1};
  std::vector<mpz_class> out;
  for_each_row(n, [&](int m, const std::vector<mpz_class>& row) {
    if (m == n) out = row;
  });
  return out;
}

mpq_class bernoulli(int n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "Bernoulli index must be >= 0");
  if (n == 0) return 1;
  if (n == 1) return mpq_class(-1, 2);
  // sum_k (-1)^k A(n-1, k) = 2^n (2^n - 1) B_n / n
  const mpz_class s = alternating_sum(eulerian_row(n - 1));
  mpz_class p = 1;
  p <<= static_cast<mp_bitcnt_t>(n);
  mpq_class b(s * n, p * (p - 1));
  b.canonicalize();
  return b;
}

double SignedLog::value() const {
  if (sign == 0) return 0.0;
  const double v = std::exp(log_abs);
  if (!std::isfinite(v)) throw Error(Errc::Overflow, "|value| = exp(" + std::to_string(log_abs) + ")");
  return sign * v;
}

SignedLog sigmoid_derivative_at(double x0, double lambda, int n) {
  check_args(x0, lambda, n);
  return derivative_from_row(x0, lambda, n, eulerian_row(n));
}

DerivativeTable derivative_table(double x0, double lambda, int n_max) {
  check_args(x0, lambda, n_max);
  DerivativeTable t{x0, lambda, {}};
  for_each_row(n_max, [&](int n, const std::vector<mpz_class>& row) {
    t.values.push_back(derivative_from_row(x0, lambda, n, row));
  });
  return t;
}

double sigmoid_radius(double x0, double lambda, int n_max) {
  if (n_max < 64) throw Error(Errc::InvalidArgument, "n_max must be >= 64");
  const auto table = derivative_table(x0, lambda, n_max);
  const double tail = root_test(table, (3 * n_max) / 4, n_max);
  const double body = root_test(table, n_max / 2, (3 * n_max) / 4 - 1);
  if (!std::isfinite(tail) || !std::isfinite(body))
    throw Error(Errc::NonConvergent, "no nonzero derivatives in the tail window");
  const double r_tail = std::exp(-tail);
  const double r_body = std::exp(-body);
  if (std::abs(r_tail - r_body) > 0.05 * r_tail)
    throw Error(Errc::NonConvergent, "tail windows disagree: " + std::to_string(r_body) + " vs " +
                                         std::to_string(r_tail));
  return r_tail;
}

double arctangent_radius(double x0, double lambda) {
  if (!(lambda > 0.0)) throw Error(Errc::InvalidArgument, "lambda must be positive");
  return std::hypot(1.0, lambda * x0) / lambda;
}

}  // namespace ratenet
