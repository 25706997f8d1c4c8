#pragma once

#include <gmpxx.h>

#include <vector>

namespace ratenet {

// Eulerian numbers A(n, k), exact. A(0, 0) = 1; zero outside 0 <= k < n.
mpz_class eulerian(int n, int k);
std::vector<mpz_class> eulerian_row(int n);

// Bernoulli numbers with B_1 = -1/2, exact.
mpq_class bernoulli(int n);

// sign * exp(log_abs); sign 0 means the value is exactly zero.
struct SignedLog {
  int sign = 0;
  double log_abs = 0.0;

  // Overflow unless the value is representable as a finite double.
  double value() const;
};

// Derivatives of S(x) = 1 / (1 + exp(-lambda x)).
SignedLog sigmoid_derivative_at(double x0, double lambda, int n);

struct DerivativeTable {
  double x0 = 0.0;
  double lambda = 1.0;
  std::vector<SignedLog> values;  // values[n - 1] = S^(n)(x0)

  const SignedLog& at(int n) const { return values[static_cast<std::size_t>(n - 1)]; }
};

DerivativeTable derivative_table(double x0, double lambda, int n_max);

// 1 / limsup (|S^(n)(x0)| / n!)^(1/n) from the largest term over orders in
// [0.75 n_max, n_max]; vanishing orders are skipped. NonConvergent when the
// window [0.5 n_max, 0.75 n_max) disagrees by more than 5%.
double sigmoid_radius(double x0, double lambda, int n_max = 512);

// sqrt(1 + (lambda x0)^2) / lambda
double arctangent_radius(double x0, double lambda);

}  // namespace ratenet
