#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ratenet/analytic_stats.hpp"
#include "ratenet/neuron_model.hpp"
#include "ratenet/simulator.hpp"
#include "ratenet/topology.hpp"

namespace ratenet {

// ---- propagation of chaos on circulant rings ----

struct ChaosRow {
  int n;
  int nu;
  int in_degree;
  double corr;  // corr(V_0, V_1)(t)
};

// Independent sources (C1 = C2 = C3 = 0) on the ring C_N(1..nu) for every nu in nus.
std::vector<ChaosRow> chaos_scan(int n, const std::vector<int>& nus, double t, const std::array<double, 3>& sigma,
                                 const NetworkParams& params, std::optional<int> branch = std::nullopt);

// ---- correlation against the external input ----

struct InputRun {
  double input;
  double mu;
  std::vector<double> times;
  std::vector<double> corr;
  std::vector<double> corr_se;
  // largest |corr| over t > 0, its standard error and time
  double max_abs_corr;
  double max_abs_se;
  double t_at_max;
};

// Runs the configured simulation once per input value; pair 0 of the config is reported.
std::vector<InputRun> input_scan(const SimConfig& base, const std::vector<double>& inputs, unsigned threads = 0);

// ---- stochastic synchronization ----

struct SyncRegime {
  double a_bar;      // largest real part among the eigenvalues of A
  int multiplicity;  // eigenvalues within 1e-9 (relative) of a_bar
  Matrix e;          // real part of sum over dominant k of Q_{:,k} B_{k,:}
  bool synchronizing;  // a_bar >= 0
  // Limiting correlation of the requested pair: exactly +-1 for a simple
  // dominant eigenvalue; for a_bar < 0 the stationary correlation of the
  // first-order covariance (nan without noise).
  double limit;
  bool degenerate_eigenvector;  // a dominant eigenvector component vanishes
};

SyncRegime sync_limit(const TopologySpec& topology, const NetworkParams& params, std::size_t i = 0,
                      std::size_t j = 1, const std::optional<NoiseSpec>& noise = std::nullopt,
                      std::optional<int> branch = std::nullopt);

enum class FreeParam { Tau, Weight, Input };

struct SyncSolution {
  NetworkParams params;
  int sign;        // +1 or -1 root of the quadratic for S(mu)
  double mu;
  double residual;
  double a0;       // -1/tau + Lambda S'(mu), the rate of the uniform mode
};

// S(tau (Lambda s + I)) - s with s = T_MAX (1 +- sqrt(1 - 4/(tau Lambda lambda T_MAX)))/2.
// NoSolution when the discriminant is negative beyond -1e-12.
double sync_residual(const NetworkParams& p, int sign);

// Parameter sets with a zero residual, varying one parameter of `base` and
// keeping the others. Roots within 1e-9 of each other are merged.
std::vector<SyncSolution> sync_constraint_solve(const NetworkParams& base, FreeParam free);

// lambda = T_MAX = 1, V_T = 0, Lambda = -2 I, tau = -2 / I, for I < 0.
NetworkParams sync_family(double input);

struct SyncRun {
  int n;
  std::vector<double> times;
  std::vector<double> corr;
  std::vector<double> corr_se;
  double time_to_threshold;  // nan when never reached
  bool eventually_increasing;
};

// Exact runs on complete graphs of each size with pair (0, 1).
// DegenerateVariance when the final variances vanish.
std::vector<SyncRun> sync_experiment(const std::vector<int>& sizes, const SimConfig& base, double threshold = 0.9,
                                     unsigned threads = 0);

}  // namespace ratenet
