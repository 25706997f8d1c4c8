#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ratenet/analytic_stats.hpp"
#include "ratenet/moments.hpp"
#include "ratenet/neuron_model.hpp"
#include "ratenet/topology.hpp"

namespace ratenet {

enum class Order { Exact, Order1, Order2 };
// Z(t) = exp(-t) Jbar for ExpDecayJ; H(t) = sin(2 pi t) 1 for SineUniform.
enum class ZFamily { Zero, ExpDecayJ };
enum class HFamily { Zero, SineUniform };

struct SimConfig {
  TopologySpec topology = complete_graph(3);
  bool allow_irregular = false;
  NetworkParams network;
  NoiseSpec noise;
  double t_max = 10.0;
  double dt = 0.1;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  Order order = Order::Order1;
  ZFamily z = ZFamily::Zero;
  HFamily h = HFamily::Zero;
  std::optional<int> branch;
  std::vector<std::pair<std::size_t, std::size_t>> pairs{{0, 1}};
  std::vector<std::vector<std::size_t>> tuples;
  // statistics are kept every record_every steps and at the final step
  std::size_t record_every = 1;

  std::size_t steps() const;
  void validate() const;
};

struct EnsembleStats {
  std::vector<double> times;
  std::size_t nodes = 0;
  double mu = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::vector<std::size_t>> tuples;
  std::vector<MomentAccumulator> node_moments;    // times x nodes
  std::vector<CoMomentAccumulator> pair_moments;  // times x pairs
  // per (tuple, time): trials x tuple size, row-major in trial order
  std::vector<std::vector<double>> tuple_samples;

  const MomentAccumulator& node(std::size_t r, std::size_t i) const { return node_moments[r * nodes + i]; }
  const CoMomentAccumulator& pair(std::size_t r, std::size_t p) const { return pair_moments[r * pairs.size() + p]; }
  const std::vector<double>& tuple(std::size_t r, std::size_t q) const {
    return tuple_samples[q * times.size() + r];
  }
  HigherOrderEstimate higher_order(std::size_t r, std::size_t q, std::size_t groups = 50) const;
};

// One trial on the full time grid. v is steps+1 rows of N values; y holds the
// first-order components Y_1..Y_5 (same layout) when requested and the order
// is not exact.
struct TrialPath {
  std::vector<double> times;
  std::size_t nodes = 0;
  std::vector<double> v;
  std::vector<std::vector<double>> y;
};

// Random draws per trial come from mt19937_64 seeded with
// seed_seq{seed lo, seed hi, trial lo, trial hi}, in the order V(0), W, then
// the Brownian increments of every step. Draws are made even for zero
// intensities, so all orders share the same noise for a given trial.
EnsembleStats run(const SimConfig& config, unsigned threads = 0);
EnsembleStats run_exact(SimConfig config, unsigned threads = 0);
EnsembleStats run_order1(SimConfig config, unsigned threads = 0);
EnsembleStats run_order2(SimConfig config, unsigned threads = 0);

TrialPath simulate_trial(const SimConfig& config, std::size_t trial, bool keep_components = false);

}  // namespace ratenet
