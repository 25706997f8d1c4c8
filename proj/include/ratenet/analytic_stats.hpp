#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "ratenet/neuron_model.hpp"
#include "ratenet/propagator.hpp"
#include "ratenet/topology.hpp"

namespace ratenet {

// sigma[0..4] are the intensities of the Brownian noise, initial conditions,
// weight perturbation W, time-varying weights Z and external input H.
struct NoiseSpec {
  std::array<double, 5> sigma{};
  double c1 = 0.0;  // Brownian correlation
  double c2 = 0.0;  // initial-condition correlation
  double c3 = 0.0;  // weight correlation, admissibility checked by the sampler

  // Non-negative intensities and 1/(1-N) <= c1, c2 <= 1.
  void validate(std::size_t n) const;
  bool operator==(const NoiseSpec&) const = default;
};

struct CovarianceRow {
  double t;
  std::size_t i;
  std::size_t j;
  double cov;
  double var_i;
  double var_j;
  double corr;
  // sigma_m^2 times the Brownian, initial-condition and weight terms
  std::array<double, 3> terms;
};

struct CovarianceReport {
  std::vector<CovarianceRow> rows;
};

// First-order covariance of V around a stationary state of a regular network.
class CovarianceModel {
 public:
  CovarianceModel(const TopologySpec& topology, const NetworkParams& params, double mu);
  CovarianceModel(Spectrum spectrum, const NetworkParams& params, double mu);

  const Propagator& propagator() const { return prop_; }
  double mu() const { return mu_; }
  std::size_t size() const { return prop_.size(); }
  int in_degree() const { return prop_.spectrum().in_degree; }

  double cov_term_noise(std::size_t i, std::size_t j, double t, double c1) const;
  double cov_term_initial(std::size_t i, std::size_t j, double t, double c2) const;
  double cov_term_weights(std::size_t i, std::size_t j, double t, double c3) const;

  std::array<double, 3> weighted_terms(std::size_t i, std::size_t j, double t, const NoiseSpec& noise) const;
  double covariance(std::size_t i, std::size_t j, double t, const NoiseSpec& noise) const;
  double variance(std::size_t i, double t, const NoiseSpec& noise) const;
  double correlation(std::size_t i, std::size_t j, double t, const NoiseSpec& noise) const;

  CovarianceReport report(const std::vector<double>& times,
                          const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                          const NoiseSpec& noise) const;

  // n-th order normalized joint cumulant for a fully connected network:
  // zero for odd n, Corr_2^{n/2} for even n.
  double higher_order_correlation_fc(int n, double t, const NoiseSpec& noise) const;

 private:
  Propagator prop_;
  double mu_;
  double s_mu_;
};

// Closed-form covariance of a circulant ring with half-width nu (fully
// connected when nu = floor(N/2)) and independent noise sources.
struct ChaosInput {
  int n;
  int nu;
  double t;
  std::array<double, 3> sigma;  // sigma_1, sigma_2, sigma_3
  NetworkParams params;
  double mu;
};
double circulant_chaos_covariance(std::size_t i, std::size_t j, const ChaosInput& in);
double circulant_chaos_correlation(std::size_t i, std::size_t j, const ChaosInput& in);
// Unit-free eigenvalues of the ring: Lambda/(2 nu) Dirichlet form or the complete-graph values.
std::vector<double> circulant_eigenvalues(int n, int nu, double scale);

}  // namespace ratenet
