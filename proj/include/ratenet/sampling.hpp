#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "ratenet/dense.hpp"
#include "ratenet/topology.hpp"

namespace ratenet {

using Rng = std::mt19937_64;

// Draws x ~ N(0, (1-c) Id + c 11^T) of length n.
// c >= 0: x = sqrt(1-c) xi + sqrt(c) eta with a shared eta (n + 1 normals).
// c < 0: x = alpha xi + beta (1^T xi) 1, the symmetric rank-one square root
// of the covariance (n normals). NotPSD when c < 1/(1-n) - 1e-10.
class EquicorrelatedSampler {
 public:
  EquicorrelatedSampler(std::size_t n, double c);

  std::size_t size() const { return n_; }
  double correlation() const { return c_; }
  void sample(Rng& rng, double* out) const;
  void sample(Rng& rng, std::normal_distribution<double>& gauss, double* out) const;
  std::vector<double> sample(Rng& rng) const;

 private:
  std::size_t n_;
  double c_;
  double alpha_;
  double beta_;
};

std::vector<double> sample_brownian_increments(std::size_t n, double c1, double dt, Rng& rng);
std::vector<double> sample_initial_conditions(std::size_t n, double mu, double sigma2, double c2, Rng& rng);

// Unit-variance weights with correlation c3 on the nonzero entries of adj
// (row-major slot order), zero elsewhere.
Matrix sample_weight_perturbation(const WeightedAdjacency& adj, double c3, Rng& rng);

}  // namespace ratenet
