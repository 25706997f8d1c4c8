// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "../oracles.hpp"
#include "ratenet/analysis.hpp"
#include "ratenet/analytic_stats.hpp"
#include "ratenet/convergence.hpp"
#include "ratenet/error.hpp"
#include "ratenet/simulator.hpp"
#include "ratenet/spectral.hpp"

using namespace ratenet;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(4);
  s << x;
  return s.str();
}

struct Outcome {
  bool pass;
  std::string detail;
};

NetworkParams table1() { return NetworkParams{}; }

NetworkParams table2() {
  NetworkParams p;
  p.tau = 0.1;
  p.weight = 40.0;
  p.input = -20.0;
  return p;
}

NoiseSpec mixed_noise() {
  NoiseSpec n;
  n.sigma = {0.01, 0.1, 0.1, 0.0, 0.0};
  n.c1 = 0.3;
  n.c2 = 0.4;
  n.c3 = 0.5;
  return n;
}

// ---- 1: spectra ----

Outcome spectra() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  int count = 0;
  auto check = [&](const TopologySpec& spec) {
    const double scale = 1.3;
    const auto adj = realize(spec, scale);
    const double gap =
        oracle::multiset_distance(spectrum(spec, scale).eigenvalues, oracle::eigenvalues(oracle::to_eigen(adj.weights)));
    worst = std::max(worst, gap);
    ++count;
  };
  for (int n = 3; n <= 64; ++n)
    for (int nu = 1; nu <= n / 2; ++nu) {
      Circulant c{n, {}};
      for (int d = 1; d <= nu; ++d) c.offsets.push_back(d);
      check(c);
    }
  std::mt19937 rng(2024);
  for (int k = 0; k < 200; ++k) {
    const int r = std::uniform_int_distribution<int>(1, 8)(rng);
    const int s = std::uniform_int_distribution<int>(3, 64 / r < 3 ? 3 : 64 / r)(rng);
    if (r * s > 64) continue;
    std::vector<int> nu(static_cast<std::size_t>(r));
    for (auto& v : nu) v = std::uniform_int_distribution<int>(1, s / 2)(rng);
    check(BlockCirculantBand{r, s, nu});
  }
  for (int n = 3; n <= 32; ++n) check(circular_ladder(n));
  for (int a = 3; a <= 21; ++a)
    for (int b = 3; a * b <= 64; ++b) check(torus(a, b));
  for (int d = 1; d <= 6; ++d) check(hypercube(d));
  for (int n = 2; n <= 64; ++n) check(complete_graph(n));
  const double secs = seconds_since(t0);
  return {worst <= 1e-10 && secs < 10.0, std::to_string(count) + " topologies, max eigenvalue gap " + fmt(worst) +
                                             ", " + fmt(secs) + " s"};
}

// ---- 2: propagator ----

Outcome propagator() {
  double worst = 0.0;
  bool real = true;
  const NetworkParams p = table1();
  const double mu = stationary_point(p);
  for (const TopologySpec& spec : {TopologySpec{circular_ladder(10)}, TopologySpec{BlockCirculantBand{3, 5, {1, 2, 1}}}}) {
    const CovarianceModel model(spec, p, mu);
    const Propagator& prop = model.propagator();
    const auto j = realize(spec, p.weight).weights;
    for (double t : {0.1, 1.0, 5.0}) {
      const Eigen::MatrixXd phi = oracle::propagator(j, prop.tau(), prop.slope(), t);
      const Eigen::MatrixXd ppt = phi * phi.transpose();
      try {
        for (std::size_t a = 0; a < prop.size(); ++a)
          for (std::size_t b = 0; b < prop.size(); ++b) {
            const auto ea = static_cast<Eigen::Index>(a), eb = static_cast<Eigen::Index>(b);
            worst = std::max(worst, std::abs(prop.phi_entry(a, b, t) - phi(ea, eb)));
            worst = std::max(worst, std::abs(prop.phi_phiT_entry(a, b, t) - ppt(ea, eb)));
          }
      } catch (const Error&) {
        real = false;
      }
    }
  }
  return {worst <= 1e-8 && real,
          "max-norm error " + fmt(worst) + (real ? ", imaginary residues within 1e-12" : ", realness violated")};
}

// ---- 3: analytic against Monte Carlo ----

Outcome analytic_vs_mc() {
  const auto t0 = Clock::now();
  SimConfig c;
  c.topology = circular_ladder(10);
  c.network = table1();
  c.noise = mixed_noise();
  c.trials = 10000;
  c.dt = 0.1;
  c.t_max = 10.0;
  c.order = Order::Order1;
  const auto stats = run(c);
  const CovarianceModel model(c.topology, c.network, stats.mu);
  int inside = 0, total = 0;
  for (std::size_t r = 0; r < stats.times.size(); ++r) {
    const double t = stats.times[r];
    const auto& pm = stats.pair(r, 0);
    const auto& nm = stats.node(r, 0);
    inside += std::abs(nm.variance() - model.variance(0, t, c.noise)) <= 5.0 * nm.variance_stderr();
    inside += std::abs(pm.covariance() - model.covariance(0, 1, t, c.noise)) <= 5.0 * pm.covariance_stderr();
    inside += std::abs(pm.correlation() - model.correlation(0, 1, t, c.noise)) <= 5.0 * pm.correlation_stderr();
    total += 3;
  }
  const double frac = static_cast<double>(inside) / total;
  const double secs = seconds_since(t0);
  return {frac >= 0.95 && secs < 120.0,
          fmt(100.0 * frac) + "% of " + std::to_string(total) + " checks within 5 se, " + fmt(secs) + " s"};
}

// ---- 4: t = 0 ----

Outcome initial_correlation() {
  NoiseSpec noise = mixed_noise();
  const NetworkParams p = table1();
  const double mu = stationary_point(p);
  bool exact = true;
  const TopologySpec specs[] = {circular_ladder(10), torus(4, 5), hypercube(4), complete_graph(7), cycle_graph(9),
                                BlockCirculantBand{3, 5, {1, 2, 1}}};
  for (const auto& spec : specs) {
    const CovarianceModel model(spec, p, mu);
    for (std::size_t j = 1; j < model.size(); ++j) exact = exact && model.correlation(0, j, 0.0, noise) == 0.4;
  }
  return {exact, exact ? "corr(0) == 0.4 on 6 topologies" : "corr(0) differs from 0.4"};
}

// ---- 5: propagation of chaos ----

Outcome chaos() {
  const NetworkParams p = table1();
  const std::array<double, 3> sigma{0.01, 0.1, 0.1};
  std::vector<int> nus;
  for (int nu = 1; nu <= 50; ++nu) nus.push_back(nu);
  const auto rows = chaos_scan(100, nus, 1.0, sigma, p);
  bool monotone = true;
  for (std::size_t k = 1; k < rows.size(); ++k) monotone = monotone && rows[k].corr <= rows[k - 1].corr;

  bool strict = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int n : {8, 16, 32, 64}) {
    const double corr = chaos_scan(n, {n / 2}, 1.0, sigma, p).front().corr;
    strict = strict && corr < prev;
    prev = corr;
  }

  std::string spots;
  bool spot_ok = true;
  for (int nu : {1, 5, 50}) {
    SimConfig c;
    Circulant ring{100, {}};
    for (int d = 1; d <= nu; ++d) ring.offsets.push_back(d);
    c.topology = ring;
    c.network = p;
    c.noise.sigma = {sigma[0], sigma[1], sigma[2], 0.0, 0.0};
    c.trials = 10000;
    c.t_max = 1.0;
    c.record_every = 10;
    const auto stats = run(c);
    const auto& pm = stats.pair(stats.times.size() - 1, 0);
    const double ref = rows[static_cast<std::size_t>(nu - 1)].corr;
    const double z = std::abs(pm.correlation() - ref) / pm.correlation_stderr();
    spot_ok = spot_ok && z <= 5.0;
    spots += " nu=" + std::to_string(nu) + ":" + fmt(z) + "se";
  }
  return {monotone && strict && spot_ok, std::string(monotone ? "non-increasing" : "NOT non-increasing") +
                                             " over nu, complete family " + (strict ? "decreasing" : "NOT decreasing") +
                                             ", MC" + spots};
}

// ---- 6: correlated noise on complete graphs ----

Outcome persistence() {
  const NetworkParams p = table1();
  NoiseSpec noise;
  noise.sigma = {0.01, 0.0, 0.0, 0.0, 0.0};
  noise.c1 = 0.3;
  const double mu = stationary_point(p);
  const double small = CovarianceModel(complete_graph(1000), p, mu).correlation(0, 1, 1.0, noise);
  const double large = CovarianceModel(complete_graph(10000), p, mu).correlation(0, 1, 1.0, noise);
  const double change = std::abs(large - small) / small;
  return {change < 0.1 && large > 0.1, "corr " + fmt(small) + " -> " + fmt(large) + ", change " + fmt(100 * change) + "%"};
}

// ---- 7: stochastic synchronization ----

Outcome synchronization() {
  SimConfig c;
  c.network = table2();
  c.noise.sigma = {0.1, 0.1, 0.1, 0.0, 0.0};
  c.order = Order::Exact;
  c.dt = 0.01;
  c.t_max = 20.0;
  c.trials = 1000;
  const auto runs = sync_experiment({5, 10, 20}, c);
  bool increasing = true;
  std::string times;
  double prev = 0.0;
  bool ordered = true;
  for (const auto& r : runs) {
    increasing = increasing && r.eventually_increasing;
    const double t = std::isnan(r.time_to_threshold) ? std::numeric_limits<double>::infinity() : r.time_to_threshold;
    ordered = ordered && t >= prev;
    prev = t;
    times += " N=" + std::to_string(r.n) + ":" + fmt(r.time_to_threshold);
  }
  const bool reached = !std::isnan(runs.front().time_to_threshold);
  bool limit = true;
  for (int n : {5, 10, 20}) {
    const auto s = sync_limit(complete_graph(n), table2());
    limit = limit && s.multiplicity == 1 && s.limit == 1.0;
  }
  return {increasing && reached && ordered && limit,
          std::string(increasing ? "eventually increasing" : "NOT eventually increasing") + ", time to 0.9" + times +
              (limit ? ", m = 1 and limit 1" : ", sync_limit mismatch")};
}

// ---- 8: constraint solver ----

Outcome constraint() {
  double worst_res = 0.0, worst_a0 = 0.0;
  for (const NetworkParams& p : {table2(), sync_family(-2.0), sync_family(-20.0)}) {
    for (int sign : {1, -1}) worst_res = std::max(worst_res, std::abs(sync_residual(p, sign)));
    const double mu = stationary_point(p);
    worst_a0 = std::max(worst_a0, std::abs(-1.0 / p.tau + p.weight * sigmoid_d1(p.sigmoid, mu)));
  }
  NetworkParams base = table2();
  base.input = 0.0;
  for (const auto& s : sync_constraint_solve(base, FreeParam::Input)) {
    worst_res = std::max(worst_res, std::abs(s.residual));
    worst_a0 = std::max(worst_a0, std::abs(s.a0));
  }
  return {worst_res <= 1e-10 && worst_a0 <= 1e-10, "max residual " + fmt(worst_res) + ", max |a0| " + fmt(worst_a0)};
}

// ---- 9: higher-order correlations ----

Outcome higher_order() {
  SimConfig c;
  c.topology = complete_graph(10);
  c.network = table1();
  c.noise = mixed_noise();
  c.trials = 10000;
  c.t_max = 10.0;
  c.record_every = 10;
  c.tuples = {{0, 1, 2, 3}, {0, 1, 2}, {0, 1}};
  const auto stats = run(c);
  bool ok = true;
  double worst3 = 0.0, worst4 = 0.0;
  for (std::size_t r = 1; r < stats.times.size(); ++r) {
    const auto c4 = stats.higher_order(r, 0);
    const auto c3 = stats.higher_order(r, 1);
    const auto c2 = stats.higher_order(r, 2);
    const double z3 = std::abs(c3.value) / c3.std_error;
    const double z4 = std::abs(c4.value - c2.value * c2.value) / c4.std_error;
    worst3 = std::max(worst3, z3);
    worst4 = std::max(worst4, z4);
    ok = ok && z3 <= 3.0 && z4 <= 3.0;
  }
  return {ok, "t = 1..10: max |Corr3|/se " + fmt(worst3) + ", max |Corr4 - Corr2^2|/se " + fmt(worst4)};
}

// ---- 10: radius of convergence ----

Outcome radius() {
  double worst = 0.0;
  for (double lambda : {0.5, 1.0, 2.0}) {
    const double ref = std::numbers::pi / lambda;
    worst = std::max(worst, std::abs(sigmoid_radius(0.0, lambda, 512) - ref) / ref);
  }
  bool closed = arctangent_radius(0.0, 2.0) == 0.5 && arctangent_radius(3.0, 1.0) == std::hypot(3.0, 1.0);
  std::vector<double> r;
  for (int k = -5; k <= 5; ++k) r.push_back(sigmoid_radius(k, 1.0, 512));
  bool symmetric = true, monotone = true;
  for (std::size_t k = 0; k < 5; ++k) symmetric = symmetric && r[k] == r[10 - k];
  for (std::size_t k = 5; k < 10; ++k) monotone = monotone && r[k + 1] >= r[k];
  return {worst <= 0.01 && closed && symmetric && monotone,
          "max relative error at x0 = 0: " + fmt(worst) + (closed ? ", arctangent exact" : ", arctangent mismatch") +
              (symmetric ? ", symmetric" : ", NOT symmetric") + (monotone ? ", monotone" : ", NOT monotone")};
}

// ---- 11: input damping ----

Outcome input_damping() {
  SimConfig c;
  c.topology = cycle_graph(5);
  c.network = table1();
  c.noise.sigma = {0.1, 0.1, 0.1, 0.0, 0.0};
  c.trials = 50000;
  const auto runs = input_scan(c, {-5.0, 0.0, 5.0});
  const auto& mid = runs[1];
  bool ok = true;
  std::string detail = "max|corr| at 0: " + fmt(mid.max_abs_corr);
  for (const auto* side : {&runs[0], &runs[2]}) {
    const double margin = mid.max_abs_corr - side->max_abs_corr;
    const double se = std::hypot(mid.max_abs_se, side->max_abs_se);
    ok = ok && margin > 3.0 * se;
    detail += ", at " + fmt(side->input) + ": " + fmt(side->max_abs_corr) + " (margin " + fmt(margin / se) + " se)";
  }
  return {ok, detail};
}

// ---- 12: reproducibility ----

int tool(const std::string& args) {
  const std::string cmd = std::string(RATENET_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome reproducibility() {
  const fs::path root = fs::temp_directory_path() / ("ratenet_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  const fs::path first = root / "first", second = root / "second";
  fs::create_directories(first);
  fs::create_directories(second);
  const fs::path independent = root / "independent.json";
  std::ofstream(independent) << R"({"noise": {"c1": 0, "c2": 0, "c3": 0}})";
  const std::string runs[] = {
      "spectrum",
      "analytic-cov",
      "--trials 500 --seed 7 simulate --trajectory",
      "--trials 200 --t-max 2 compare",
      "--config " + independent.string() + " chaos-scan",
      "--trials 300 --t-max 2 input-scan",
      "--bundle table2 sync-solve",
      "--bundle table2 --trials 50 --t-max 2 sync-run",
      "radius",
  };
  for (const auto& r : runs)
    if (tool("--out " + first.string() + " " + r) != 0) return {false, "command failed: " + r};
  int files = 0;
  for (const auto& entry : fs::directory_iterator(first)) {
    if (entry.path().extension() != ".csv") continue;
    const fs::path out = second / entry.path().filename().stem();
    fs::create_directories(out);
    if (tool("--out " + out.string() + " replay " + entry.path().string()) != 0)
      return {false, "replay failed: " + entry.path().filename().string()};
    const fs::path copy = out / entry.path().filename();
    if (!fs::exists(copy) || slurp(copy) != slurp(entry.path()))
      return {false, "replay differs: " + entry.path().filename().string()};
    ++files;
  }
  fs::remove_all(root);
  return {files > 0, std::to_string(files) + " CSVs regenerated byte-identically"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"spectral exactness", spectra},
      {"propagator exactness", propagator},
      {"analytic covariance against Monte Carlo", analytic_vs_mc},
      {"t = 0 correlation", initial_correlation},
      {"propagation of chaos", chaos},
      {"correlation persists with correlated noise", persistence},
      {"stochastic synchronization", synchronization},
      {"synchronization constraint", constraint},
      {"higher-order correlations", higher_order},
      {"radius of convergence", radius},
      {"input damping", input_damping},
      {"reproducibility", reproducibility},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << k + 1 << ": " << criteria[k].first << " ("
              << o.detail << "; " << fmt(seconds_since(t0)) << " s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
