#pragma once

#include <cstddef>
#include <vector>

#include "ratenet/spectral.hpp"

namespace ratenet {

// (e^{a t} - 1) / a, and t when |a| < 1e-12.
cplx growth_integral(cplx a, double t);
double growth_integral(double a, double t);

// Phi(t) = exp(A t) with A = -Id/tau + S'(mu) J, evaluated entry by entry
// from the eigen-decomposition of J. Entries are real; complex sums are
// checked against a 1e-12 imaginary residue before the real part is returned.
class Propagator {
 public:
  Propagator(Spectrum spectrum, double tau, double slope);

  std::size_t size() const { return spectrum_.size(); }
  const Spectrum& spectrum() const { return spectrum_; }
  const std::vector<cplx>& rates() const { return rates_; }
  double tau() const { return tau_; }
  double slope() const { return slope_; }
  // Rate of the uniform mode: rows of Phi sum to exp(row_rate t).
  double row_rate() const { return -1.0 / tau_ + slope_ * spectrum_.row_sum; }

  double phi_entry(std::size_t i, std::size_t j, double t) const;
  double phi_phiT_entry(std::size_t i, std::size_t j, double t) const;
  // int_0^t Phi_ij(s) ds
  double phi_time_integral(std::size_t i, std::size_t j, double t) const;
  // int_0^t [Phi Phi^T]_ij(s) ds
  double phi_phiT_integral(std::size_t i, std::size_t j, double t) const;
  // [I I^T]_ij with I = int_0^t Phi(s) ds
  double integral_outer(std::size_t i, std::size_t j, double t) const;

  Matrix phi_matrix(double t) const;

 private:
  enum class Route { Fourier, Orthogonal, Dense };

  // sum_k w_k Q_ik conj(Q_jk) for the normal routes
  double normal_sum(std::size_t i, std::size_t j, const std::vector<cplx>& w) const;
  double dense_bilinear(std::size_t i, std::size_t j, const std::vector<cplx>& d) const;
  double dense_pair(std::size_t i, std::size_t j, double t, bool integrate) const;

  Spectrum spectrum_;
  double tau_;
  double slope_;
  Route route_;
  std::vector<cplx> rates_;
  // Fourier route
  int r_ = 1;
  int s_ = 1;
  std::vector<cplx> wr_;
  std::vector<cplx> ws_;
  // dense route: B B^T with B = Q^{-1}
  CMatrix bbt_;
};

}  // namespace ratenet
