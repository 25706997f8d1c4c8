#pragma once

// Dense reference computations shared by the tests.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <complex>
#include <limits>
#include <vector>

#include "ratenet/dense.hpp"

namespace oracle {

inline Eigen::MatrixXd to_eigen(const ratenet::Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline Eigen::MatrixXcd to_eigen(const ratenet::CMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  std::vector<std::complex<double>> out(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
  return out;
}

// Largest distance in a greedy nearest-neighbour matching of two multisets.
inline double multiset_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  auto key = [](const std::complex<double>& x, const std::complex<double>& y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  };
  std::sort(a.begin(), a.end(), key);
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& x : a) {
    std::size_t best = b.size();
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < b.size(); ++k)
      if (!used[k] && std::abs(b[k] - x) < d) {
        d = std::abs(b[k] - x);
        best = k;
      }
    used[best] = true;
    worst = std::max(worst, d);
  }
  return worst;
}

// Phi(t) = exp(A t) with A = -Id/tau + slope J.
inline Eigen::MatrixXd propagator(const ratenet::Matrix& j, double tau, double slope, double t) {
  const Eigen::MatrixXd a = -Eigen::MatrixXd::Identity(j.rows(), j.cols()) / tau + slope * to_eigen(j);
  return (a * t).exp();
}

// Composite Simpson rule on [0, t] with 2n panels for matrix-valued f.
template <class F>
Eigen::MatrixXd integrate(F&& f, double t, int n = 400) {
  const double h = t / (2 * n);
  Eigen::MatrixXd acc = f(0.0) + f(t);
  for (int k = 1; k < 2 * n; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(k * h);
  return acc * h / 3.0;
}

}  // namespace oracle
