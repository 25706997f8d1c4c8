#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ratenet/analysis.hpp"
#include "ratenet/simulator.hpp"

namespace ratenet {

struct ScanSection {
  int n = 100;
  std::vector<int> nus;
  double t = 1.0;
};

struct RadiusSection {
  std::vector<double> x0;
  std::vector<double> lambda{1.0};
  int n_max = 512;
};

// Everything a subcommand needs. The JSON form (to_json) is what CSV headers
// carry; out and threads are run-time settings and are not part of it.
struct ExperimentConfig {
  std::string bundle = "table1";
  nlohmann::json topology;
  bool allow_irregular = false;
  NetworkParams network;
  NoiseSpec noise;
  double horizon = 10.0;
  double dt = 0.1;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  Order order = Order::Order1;
  ZFamily z = ZFamily::Zero;
  HFamily h = HFamily::Zero;
  bool trajectory = false;
  std::optional<int> branch;
  std::vector<std::pair<std::size_t, std::size_t>> pairs{{0, 1}};
  std::vector<std::vector<std::size_t>> tuples;
  ScanSection scan;
  std::vector<double> inputs{-5.0, 0.0, 5.0};
  std::vector<int> sizes{5, 10, 20};
  double threshold = 0.9;
  FreeParam sync_free = FreeParam::Input;
  RadiusSection radius;

  std::string out = "out";
  unsigned threads = 0;

  TopologySpec topology_spec() const;
  SimConfig sim_config() const;
};

// Parameter bundles: "table1" (tau = 1, I = 0, Lambda = 1, C = 0.3/0.4/0.5 on
// CL_10) and "table2" (tau = 0.1, I = -20, Lambda = 40, C = 0 on K_5).
ExperimentConfig bundle_defaults(const std::string& name);

// Applies the keys of `j` on top of `base`; unknown keys are InvalidArgument.
ExperimentConfig apply_json(ExperimentConfig base, const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);

// {"kind": ...} objects, or {"cycle": n} / {"path": n} factor shorthand.
TopologySpec parse_topology(const nlohmann::json& j);

}  // namespace ratenet
