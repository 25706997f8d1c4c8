#include "ratenet/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include "ratenet/analysis.hpp"
#include "ratenet/analytic_stats.hpp"
#include "ratenet/convergence.hpp"
#include "ratenet/csv.hpp"
#include "ratenet/error.hpp"
#include "ratenet/simulator.hpp"
#include "ratenet/spectral.hpp"

namespace ratenet {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct Output {
  const ExperimentConfig& c;
  std::string command;
  std::string config;

  CsvWriter open(const std::string& name, const std::vector<std::string>& columns) const {
    return CsvWriter((std::filesystem::path(c.out) / name).string(), command, config, columns);
  }
};

void spectrum_cmd(const Output& o) {
  const auto s = spectrum(o.c.topology_spec(), o.c.network.weight);
  auto csv = o.open("spectrum.csv", {"k", "re", "im"});
  for (std::size_t k = 0; k < s.size(); ++k) {
    csv << k << s.eigenvalues[k].real() << s.eigenvalues[k].imag();
    csv.end_row();
  }
}

std::vector<double> time_grid(const ExperimentConfig& c) {
  const auto steps = c.sim_config().steps();
  std::vector<double> t;
  for (std::size_t k = 0; k <= steps; ++k) t.push_back(static_cast<double>(k) * c.dt);
  return t;
}

void analytic_cov_cmd(const Output& o) {
  const auto& c = o.c;
  c.noise.validate(static_cast<std::size_t>(node_count(c.topology_spec())));
  const double mu = stationary_point(c.network, c.branch);
  const CovarianceModel model(c.topology_spec(), c.network, mu);
  for (auto [i, j] : c.pairs)
    if (i >= model.size() || j >= model.size()) throw Error(Errc::InvalidArgument, "pair index out of range");
  const auto rep = model.report(time_grid(c), c.pairs, c.noise);
  auto csv = o.open("analytic_cov.csv",
                    {"t", "i", "j", "cov", "var_i", "var_j", "corr", "term_noise", "term_initial", "term_weights"});
  for (const auto& r : rep.rows) {
    csv << r.t << r.i << r.j << r.cov << r.var_i << r.var_j << r.corr << r.terms[0] << r.terms[1] << r.terms[2];
    csv.end_row();
  }
}

void simulate_cmd(const Output& o) {
  const auto& c = o.c;
  const auto sim = c.sim_config();
  const auto stats = run(sim, c.threads);
  {
    auto csv = o.open("stats.csv", {"t", "kind", "i", "j", "mean", "mean_se", "var", "var_se", "cov", "cov_se",
                                    "corr", "corr_se"});
    for (std::size_t r = 0; r < stats.times.size(); ++r) {
      for (std::size_t i = 0; i < stats.nodes; ++i) {
        const auto& m = stats.node(r, i);
        csv << stats.times[r] << std::string("node") << i << i << m.mean() << m.mean_stderr() << m.variance()
            << m.variance_stderr() << kNan << kNan << kNan << kNan;
        csv.end_row();
      }
      for (std::size_t p = 0; p < stats.pairs.size(); ++p) {
        const auto& m = stats.pair(r, p);
        csv << stats.times[r] << std::string("pair") << stats.pairs[p].first << stats.pairs[p].second << kNan
            << kNan << kNan << kNan << m.covariance() << m.covariance_stderr() << m.correlation()
            << m.correlation_stderr();
        csv.end_row();
      }
    }
  }
  if (!stats.tuples.empty()) {
    auto csv = o.open("higher_order.csv", {"t", "tuple", "n", "corr", "corr_se"});
    for (std::size_t r = 0; r < stats.times.size(); ++r)
      for (std::size_t q = 0; q < stats.tuples.size(); ++q) {
        std::string name;
        for (auto i : stats.tuples[q]) name += (name.empty() ? "" : " ") + std::to_string(i);
        const auto est = stats.higher_order(r, q);
        csv << stats.times[r] << name << stats.tuples[q].size() << est.value << est.std_error;
        csv.end_row();
      }
  }
  if (c.trajectory) {
    const auto path = simulate_trial(sim, 0);
    auto csv = o.open("trajectory.csv", {"t", "node", "v"});
    for (std::size_t k = 0; k < path.times.size(); ++k)
      for (std::size_t i = 0; i < path.nodes; ++i) {
        csv << path.times[k] << i << path.v[k * path.nodes + i];
        csv.end_row();
      }
  }
}

void compare_cmd(const Output& o) {
  const auto& c = o.c;
  if (c.pairs.empty()) throw Error(Errc::InvalidArgument, "compare needs a pair");
  const auto sim = c.sim_config();
  const auto exact = run_exact(sim, c.threads);
  const auto first = run_order1(sim, c.threads);
  const auto second = run_order2(sim, c.threads);
  const CovarianceModel model(sim.topology, c.network, exact.mu);
  const auto [a, b] = c.pairs.front();
  const auto rep = model.report(exact.times, {{a, b}}, c.noise);
  const bool mean_known = c.noise.sigma[3] == 0.0 && c.noise.sigma[4] == 0.0;
  const std::vector<std::string> cols{"t", "exact", "exact_se", "order1", "order1_se", "order2", "order2_se",
                                      "analytic"};
  auto pot = o.open("potentials.csv", cols);
  auto var = o.open("var.csv", cols);
  auto cov = o.open("cov.csv", cols);
  auto corr = o.open("corr.csv", cols);
  for (std::size_t r = 0; r < exact.times.size(); ++r) {
    const double t = exact.times[r];
    pot << t;
    var << t;
    cov << t;
    corr << t;
    for (const auto* s : {&exact, &first, &second}) {
      const auto& n = s->node(r, a);
      const auto& p = s->pair(r, 0);
      pot << n.mean() << n.mean_stderr();
      var << n.variance() << n.variance_stderr();
      cov << p.covariance() << p.covariance_stderr();
      corr << p.correlation() << p.correlation_stderr();
    }
    const auto& row = rep.rows[r];
    pot << (mean_known ? exact.mu : kNan);
    var << row.var_i;
    cov << row.cov;
    corr << row.corr;
    pot.end_row();
    var.end_row();
    cov.end_row();
    corr.end_row();
  }
}

void chaos_scan_cmd(const Output& o) {
  const auto& c = o.c;
  if (c.noise.c1 != 0.0 || c.noise.c2 != 0.0 || c.noise.c3 != 0.0)
    throw Error(Errc::InvalidArgument, "chaos-scan needs c1 = c2 = c3 = 0");
  const auto rows = chaos_scan(c.scan.n, c.scan.nus, c.scan.t, {c.noise.sigma[0], c.noise.sigma[1], c.noise.sigma[2]},
                               c.network, c.branch);
  auto csv = o.open("chaos_scan.csv", {"n", "nu", "in_degree", "t", "corr"});
  for (const auto& r : rows) {
    csv << r.n << r.nu << r.in_degree << c.scan.t << r.corr;
    csv.end_row();
  }
}

void input_scan_cmd(const Output& o) {
  const auto& c = o.c;
  const auto runs = input_scan(c.sim_config(), c.inputs, c.threads);
  {
    auto csv = o.open("input_scan.csv", {"input", "t", "corr", "corr_se"});
    for (const auto& r : runs)
      for (std::size_t k = 0; k < r.times.size(); ++k) {
        csv << r.input << r.times[k] << r.corr[k] << r.corr_se[k];
        csv.end_row();
      }
  }
  auto csv = o.open("input_scan_summary.csv", {"input", "mu", "max_abs_corr", "max_abs_corr_se", "t_at_max"});
  for (const auto& r : runs) {
    csv << r.input << r.mu << r.max_abs_corr << r.max_abs_se << r.t_at_max;
    csv.end_row();
  }
}

void sync_solve_cmd(const Output& o) {
  const auto sols = sync_constraint_solve(o.c.network, o.c.sync_free);
  auto csv = o.open("sync_solve.csv", {"tau", "weight", "input", "sign", "mu", "residual", "a0"});
  for (const auto& s : sols) {
    csv << s.params.tau << s.params.weight << s.params.input << s.sign << s.mu << s.residual << s.a0;
    csv.end_row();
  }
}

void sync_run_cmd(const Output& o) {
  const auto& c = o.c;
  const auto runs = sync_experiment(c.sizes, c.sim_config(), c.threshold, c.threads);
  {
    auto csv = o.open("sync_run.csv", {"n", "t", "corr", "corr_se"});
    for (const auto& r : runs)
      for (std::size_t k = 0; k < r.times.size(); ++k) {
        csv << r.n << r.times[k] << r.corr[k] << r.corr_se[k];
        csv.end_row();
      }
  }
  auto csv = o.open("sync_summary.csv", {"n", "time_to_threshold", "eventually_increasing", "a_bar",
                                          "multiplicity", "limit"});
  for (const auto& r : runs) {
    const auto regime = sync_limit(complete_graph(r.n), c.network, 0, 1, c.noise, c.branch);
    csv << r.n << r.time_to_threshold << (r.eventually_increasing ? 1 : 0) << regime.a_bar << regime.multiplicity
        << regime.limit;
    csv.end_row();
  }
}

void radius_cmd(const Output& o) {
  const auto& r = o.c.radius;
  auto csv = o.open("radius.csv", {"x0", "lambda", "r_sigmoid", "r_arctan"});
  for (double lambda : r.lambda)
    for (double x0 : r.x0) {
      csv << x0 << lambda << sigmoid_radius(x0, lambda, r.n_max) << arctangent_radius(x0, lambda);
      csv.end_row();
    }
}

}  // namespace

void run_command(const std::string& command, const ExperimentConfig& c) {
  std::filesystem::create_directories(c.out);
  const Output o{c, command, to_json(c).dump()};
  if (command == "spectrum") spectrum_cmd(o);
  else if (command == "analytic-cov") analytic_cov_cmd(o);
  else if (command == "simulate") simulate_cmd(o);
  else if (command == "compare") compare_cmd(o);
  else if (command == "chaos-scan") chaos_scan_cmd(o);
  else if (command == "input-scan") input_scan_cmd(o);
  else if (command == "sync-solve") sync_solve_cmd(o);
  else if (command == "sync-run") sync_run_cmd(o);
  else if (command == "radius") radius_cmd(o);
  else throw Error(Errc::InvalidArgument, "unknown command '" + command + "'");
}

namespace {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot read config " + path);
  return nlohmann::json::parse(in);
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Rate-model network correlations: spectra, analytic covariance, Monte Carlo, scans"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, bundle, out = "out", order;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<double> dt, t_max;
  std::optional<int> branch;
  bool allow_irregular = false, trajectory = false;
  unsigned threads = 0;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--bundle", bundle, "parameter bundle: table1 or table2");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--out", out, "output directory")->capture_default_str();
  app.add_option("--trials", trials, "Monte Carlo trials");
  app.add_option("--dt", dt, "time step");
  app.add_option("--t-max", t_max, "time horizon");
  app.add_option("--branch", branch, "index of the stationary root");
  app.add_option("--order", order, "exact, order1 or order2");
  app.add_flag("--allow-irregular", allow_irregular, "accept graphs with unequal in-degrees");
  app.add_flag("--trajectory", trajectory, "also write the first trial's trajectory (simulate)");
  app.add_option("--threads", threads, "worker threads (0: all cores)");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"spectrum", "eigenvalues of the scaled adjacency"},
      {"analytic-cov", "first-order covariance on the time grid"},
      {"simulate", "Monte Carlo ensemble statistics"},
      {"compare", "exact, order1, order2 and analytic curves side by side"},
      {"chaos-scan", "ring correlation against the band half-width"},
      {"input-scan", "correlation against the external input"},
      {"sync-solve", "parameters meeting the synchronization constraint"},
      {"sync-run", "synchronization runs on complete graphs"},
      {"radius", "Taylor radius of the sigmoid and the arctangent"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);
  std::string replay_csv;
  auto* replay = app.add_subcommand("replay", "rerun the command recorded in a CSV header");
  replay->add_option("csv", replay_csv, "CSV written by this tool")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::string command = app.get_subcommands().front()->get_name();
    ExperimentConfig c;
    if (command == "replay") {
      const auto header = read_csv_header(replay_csv);
      const auto j = nlohmann::json::parse(header.config_json);
      command = header.command;
      c = apply_json(bundle_defaults(j.value("bundle", std::string("table1"))), j);
    } else {
      nlohmann::json file = nlohmann::json::object();
      if (!config_path.empty()) file = read_json_file(config_path);
      if (!file.is_object()) throw Error(Errc::InvalidArgument, "config must be a JSON object");
      std::string name = bundle;
      if (name.empty()) name = file.value("bundle", std::string("table1"));
      file.erase("bundle");
      c = apply_json(bundle_defaults(name), file);
      if (seed) c.seed = *seed;
      if (trials) c.trials = *trials;
      if (dt) c.dt = *dt;
      if (t_max) c.horizon = *t_max;
      if (branch) c.branch = *branch;
      if (allow_irregular) c.allow_irregular = true;
      if (trajectory) c.trajectory = true;
      if (!order.empty()) c = apply_json(c, {{"sim", {{"order", order}}}});
    }
    c.out = out;
    c.threads = threads;
    run_command(command, c);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_config_error(e.code()) ? 2 : 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: InvalidArgument: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: InvalidArgument: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace ratenet
