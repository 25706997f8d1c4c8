#pragma once

#include <optional>
#include <vector>

#include "ratenet/dense.hpp"
#include "ratenet/topology.hpp"

namespace ratenet {

// S(V) = t_max / (1 + exp(-slope (V - threshold)))
struct SigmoidParams {
  double t_max = 1.0;
  double slope = 1.0;
  double threshold = 0.0;

  void validate() const;
  bool operator==(const SigmoidParams&) const = default;
};

struct NetworkParams {
  double tau = 1.0;
  double weight = 1.0;  // Lambda
  double input = 0.0;   // baseline current
  SigmoidParams sigmoid;

  void validate() const;
  bool operator==(const NetworkParams&) const = default;
};

double sigmoid(const SigmoidParams& p, double v);
double sigmoid_d1(const SigmoidParams& p, double v);
double sigmoid_d2(const SigmoidParams& p, double v);

// mu - tau (Lambda S(mu) + I), written through tanh so that the cancellation
// at symmetric fixed points is exact.
double stationary_residual(const NetworkParams& p, double mu);

// All real roots of mu = tau (Lambda S(mu) + I), ascending. The scan covers
// [tau I - |tau Lambda| t_max, tau I + |tau Lambda| t_max] in 1024 cells.
std::vector<double> stationary_state(const NetworkParams& p, double tol = 1e-12);

// Picks a root: the only one, or roots[branch]. Several roots and no branch
// is an AmbiguousBranch error.
double select_branch(const std::vector<double>& roots, std::optional<int> branch);
double stationary_point(const NetworkParams& p, std::optional<int> branch = std::nullopt);

struct EffectiveConnectivity {
  Matrix a;      // -Id/tau + J S'(mu)
  Matrix j_eff;  // J S'(mu)
  double slope;  // S'(mu)
};

EffectiveConnectivity effective_matrix(const WeightedAdjacency& adj, const NetworkParams& p, double mu);

}  // namespace ratenet
