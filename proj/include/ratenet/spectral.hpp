#pragma once

#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

#include "ratenet/dense.hpp"
#include "ratenet/topology.hpp"

namespace ratenet {

using cplx = std::complex<double>;

// Q = F_R (x) F_S with [F_K]_{ab} = exp(2 pi i ab / K) / sqrt(K); Q^{-1} = Q*.
struct FourierBlock {
  int r = 1;
  int s = 1;
};

// Real orthonormal eigenvectors stored as columns.
struct RealOrthogonal {
  Matrix q;
};

// Any diagonalizable matrix: columns of q are eigenvectors, q_inv = q^{-1}.
struct DenseNumeric {
  CMatrix q;
  CMatrix q_inv;
};

using Basis = std::variant<FourierBlock, RealOrthogonal, DenseNumeric>;

// Eigen-decomposition of a scaled adjacency matrix J.
struct Spectrum {
  std::vector<cplx> eigenvalues;
  Basis basis;
  // Common row sum of J (Lambda when M > 0, otherwise 0).
  double row_sum = 0.0;
  int in_degree = 0;

  std::size_t size() const { return eigenvalues.size(); }
};

// Double DFT of the first block row; eigenvalue k = i*S + j.
Spectrum block_circulant_spectrum(const TopologySpec& spec, double scale);

// Piecewise closed form for symmetric circulant band blocks, index m*S + n.
std::vector<cplx> banded_eigenvalues(int r, int s, const std::vector<int>& nu, double scale);

// Real orthogonal eigenbasis of a path/cycle product; eigenvalue (i, j) at
// index i*|G2| + j, factors combined from the right as in GraphExpr.
Spectrum product_spectrum(const GraphExpr& expr, double scale);

// Closed-form route per topology kind (banded formula for band specs).
Spectrum spectrum(const TopologySpec& spec, double scale);

// Eigenvalues of the equicorrelation matrix with off-diagonal c.
std::vector<double> sigma1_spectrum(int n, double c);

// Unit-weight eigenquantities of the factor graphs.
std::vector<double> path_eigenvalues(int n);
std::vector<double> cycle_eigenvalues(int n);
Matrix path_eigenvectors(int n);
Matrix cycle_eigenvectors(int n);

CMatrix basis_matrix(const Spectrum& s);
CMatrix basis_inverse(const Spectrum& s);

}  // namespace ratenet
