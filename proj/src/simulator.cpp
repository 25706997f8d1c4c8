#include "ratenet/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "ratenet/error.hpp"
#include "ratenet/sampling.hpp"

namespace ratenet {

std::size_t SimConfig::steps() const { return static_cast<std::size_t>(std::llround(t_max / dt)); }

void SimConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(Errc::InvalidArgument, "dt must be positive");
  if (!(t_max >= dt) || !std::isfinite(t_max)) throw Error(Errc::InvalidArgument, "horizon must be >= dt");
  if (trials < 1) throw Error(Errc::InvalidArgument, "need at least one trial");
  if (record_every < 1) throw Error(Errc::InvalidArgument, "record_every must be >= 1");
  network.validate();
  const auto n = static_cast<std::size_t>(node_count(topology));
  noise.validate(n);
  for (auto [a, b] : pairs)
    if (a >= n || b >= n) throw Error(Errc::InvalidArgument, "pair index out of range");
  for (const auto& t : tuples) {
    if (t.size() < 2) throw Error(Errc::InvalidArgument, "tuples need at least two nodes");
    for (auto i : t)
      if (i >= n) throw Error(Errc::InvalidArgument, "tuple index out of range");
  }
}

HigherOrderEstimate EnsembleStats::higher_order(std::size_t r, std::size_t q, std::size_t groups) const {
  return estimate_higher_order(tuple(r, q), tuples[q].size(), groups);
}

namespace {

constexpr std::size_t kBlock = 256;
constexpr double kBlowup = 1e6;

// Everything shared by the trials of one run.
struct Setup {
  SimConfig cfg;
  std::size_t n = 0;
  std::size_t steps = 0;
  double mu = 0.0;
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;  // S, S', S'' at mu
  // Jbar in CSR form; W uses the same slots
  std::vector<std::size_t> start;
  std::vector<std::size_t> col;
  std::vector<double> jbar;
  std::vector<double> inv_degree;  // 1/M_i per row, 0 for empty rows
  std::vector<double> row_sum;     // sum_j Jbar_ij
  std::optional<EquicorrelatedSampler> init, weights, brownian;
  std::vector<std::size_t> record;  // recorded step indices
  std::vector<std::pair<int, int>> second;  // active (m, n), m <= n

  explicit Setup(const SimConfig& c) : cfg(c) {
    cfg.validate();
    // slots come from the unit-scale graph so that Lambda = 0 keeps its edges
    const auto adj = realize(cfg.topology, 1.0, cfg.allow_irregular);
    const double lambda = cfg.network.weight;
    n = adj.size();
    steps = cfg.steps();
    mu = stationary_point(cfg.network, cfg.branch);
    s0 = sigmoid(cfg.network.sigmoid, mu);
    s1 = sigmoid_d1(cfg.network.sigmoid, mu);
    s2 = sigmoid_d2(cfg.network.sigmoid, mu);
    start.push_back(0);
    for (std::size_t i = 0; i < n; ++i) {
      double rs = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (adj.weights(i, j) != 0.0) {
          col.push_back(j);
          jbar.push_back(lambda * adj.weights(i, j));
          rs += jbar.back();
        }
      start.push_back(col.size());
      const auto deg = start[i + 1] - start[i];
      inv_degree.push_back(deg ? 1.0 / static_cast<double>(deg) : 0.0);
      row_sum.push_back(rs);
    }
    if (col.empty()) throw Error(Errc::ZeroInDegree, "network has no connections");
    init.emplace(n, cfg.noise.c2);
    weights.emplace(col.size(), cfg.noise.c3);
    brownian.emplace(n, cfg.noise.c1);
    for (std::size_t k = 0; k <= steps; k += cfg.record_every) record.push_back(k);
    if (record.back() != steps) record.push_back(steps);
    const auto& s = cfg.noise.sigma;
    if (cfg.order == Order::Order2)
      for (int a = 0; a < 5; ++a)
        for (int b = a; b < 5; ++b)
          if (s[static_cast<std::size_t>(a)] != 0.0 && s[static_cast<std::size_t>(b)] != 0.0) second.emplace_back(a, b);
  }

  double z(double t) const { return cfg.z == ZFamily::ExpDecayJ ? std::exp(-t) : 0.0; }
  double h(double t) const { return cfg.h == HFamily::SineUniform ? std::sin(2.0 * std::numbers::pi * t) : 0.0; }
};

// State of one trial; advance() performs one Euler-Maruyama step.
class Trial {
 public:
  Trial(const Setup& s, std::size_t index, bool all_components)
      : s_(s), index_(index), v_(s.n), db_(s.n), tmp_(s.n), tmp2_(s.n), w_(s.jbar.size()) {
    const std::uint64_t seed = s.cfg.seed;
    const std::uint64_t trial = index;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    rng_.seed(seq);
    std::vector<double> xi(s.n);
    s.init->sample(rng_, gauss_, xi.data());
    s.weights->sample(rng_, gauss_, w_.data());
    for (std::size_t i = 0; i < s.n; ++i)
      for (std::size_t k = s.start[i]; k < s.start[i + 1]; ++k) w_[k] *= s.inv_degree[i];
    const auto& sig = s.cfg.noise.sigma;
    if (s.cfg.order == Order::Exact) {
      for (std::size_t i = 0; i < s.n; ++i) v_[i] = s.mu + sig[1] * xi[i];
      return;
    }
    wsum_.assign(s.n, 0.0);
    for (std::size_t i = 0; i < s.n; ++i)
      for (std::size_t k = s.start[i]; k < s.start[i + 1]; ++k) wsum_[i] += w_[k];
    for (std::size_t m = 0; m < 5; ++m)
      if (all_components || sig[m] != 0.0 || s.cfg.order == Order::Order2) active_[m] = true;
    for (auto& y : y_) y.assign(s.n, 0.0);
    y_[1] = xi;
    yy_.assign(s.second.size(), std::vector<double>(s.n, 0.0));
    reconstruct();
  }

  const std::vector<double>& v() const { return v_; }
  const std::vector<double>& y(std::size_t m) const { return y_[m]; }

  void advance(std::size_t step) {
    const double dt = s_.cfg.dt;
    const double t = static_cast<double>(step) * dt;
    s_.brownian->sample(rng_, gauss_, db_.data());
    const double sq = std::sqrt(dt);
    for (auto& x : db_) x *= sq;
    if (s_.cfg.order == Order::Exact)
      advance_exact(t);
    else
      advance_perturbative(t);
    for (std::size_t i = 0; i < s_.n; ++i)
      if (!(std::abs(v_[i]) <= kBlowup))
        throw Error(Errc::NumericalBlowup, "|V| exceeds 1e6 in trial " + std::to_string(index_) + " at step " +
                                               std::to_string(step + 1) + " (neuron " + std::to_string(i) + ")");
  }

 private:
  void advance_exact(double t) {
    const auto& p = s_.cfg.network;
    const auto& sig = s_.cfg.noise.sigma;
    const double g = 1.0 + sig[3] * s_.z(t);
    const double ext = p.input + sig[4] * s_.h(t);
    for (std::size_t j = 0; j < s_.n; ++j) tmp_[j] = sigmoid(p.sigmoid, v_[j]);
    for (std::size_t i = 0; i < s_.n; ++i) {
      double acc = 0.0;
      for (std::size_t k = s_.start[i]; k < s_.start[i + 1]; ++k)
        acc += (s_.jbar[k] * g + sig[2] * w_[k]) * tmp_[s_.col[k]];
      tmp2_[i] = v_[i] + (-v_[i] / p.tau + acc + ext) * s_.cfg.dt + sig[0] * db_[i];
    }
    v_.swap(tmp2_);
  }

  // out = sum_k vals_k x_col  over Jbar (or W) slots
  void jbar_times(const std::vector<double>& x, std::vector<double>& out) const {
    for (std::size_t i = 0; i < s_.n; ++i) {
      double acc = 0.0;
      for (std::size_t k = s_.start[i]; k < s_.start[i + 1]; ++k) acc += s_.jbar[k] * x[s_.col[k]];
      out[i] = acc;
    }
  }
  void w_times(const std::vector<double>& x, std::vector<double>& out) const {
    for (std::size_t i = 0; i < s_.n; ++i) {
      double acc = 0.0;
      for (std::size_t k = s_.start[i]; k < s_.start[i + 1]; ++k) acc += w_[k] * x[s_.col[k]];
      out[i] = acc;
    }
  }

  // Explicit Euler on the whole hierarchy: all right-hand sides use the state at t.
  void advance_perturbative(double t) {
    const auto& p = s_.cfg.network;
    const double dt = s_.cfg.dt;
    const double zt = s_.z(t);
    const double ht = s_.h(t);
    std::array<std::vector<double>, 5> dy;
    for (std::size_t m = 0; m < 5; ++m) {
      if (!active_[m]) continue;
      jbar_times(y_[m], tmp_);
      dy[m].resize(s_.n);
      for (std::size_t i = 0; i < s_.n; ++i) {
        double d = -y_[m][i] / p.tau + s_.s1 * tmp_[i];
        if (m == 2) d += s_.s0 * wsum_[i];
        if (m == 3) d += s_.s0 * zt * s_.row_sum[i];
        if (m == 4) d += ht;
        dy[m][i] = d * dt;
      }
    }
    std::vector<std::vector<double>> dyy(s_.second.size());
    for (std::size_t q = 0; q < s_.second.size(); ++q) {
      const auto [a, b] = s_.second[q];
      const auto& ya = y_[static_cast<std::size_t>(a)];
      const auto& yb = y_[static_cast<std::size_t>(b)];
      auto& d = dyy[q];
      d.assign(s_.n, 0.0);
      jbar_times(yy_[q], tmp_);
      for (std::size_t i = 0; i < s_.n; ++i) d[i] = -yy_[q][i] / p.tau + s_.s1 * tmp_[i];
      const double c = a == b ? 0.5 : 1.0;
      for (std::size_t j = 0; j < s_.n; ++j) tmp2_[j] = ya[j] * yb[j];
      jbar_times(tmp2_, tmp_);
      for (std::size_t i = 0; i < s_.n; ++i) d[i] += c * s_.s2 * tmp_[i];
      // sources from W (index 2) and Z (index 3), each counted once per pair
      if (a == 2 || b == 2) {
        w_times(a == 2 ? yb : ya, tmp_);
        for (std::size_t i = 0; i < s_.n; ++i) d[i] += s_.s1 * tmp_[i];
      }
      if ((a == 3 || b == 3) && zt != 0.0) {
        jbar_times(a == 3 ? yb : ya, tmp_);
        for (std::size_t i = 0; i < s_.n; ++i) d[i] += s_.s1 * zt * tmp_[i];
      }
      for (auto& x : d) x *= dt;
    }
    for (std::size_t m = 0; m < 5; ++m)
      if (active_[m])
        for (std::size_t i = 0; i < s_.n; ++i) y_[m][i] += dy[m][i];
    if (active_[0])
      for (std::size_t i = 0; i < s_.n; ++i) y_[0][i] += db_[i];
    for (std::size_t q = 0; q < s_.second.size(); ++q)
      for (std::size_t i = 0; i < s_.n; ++i) yy_[q][i] += dyy[q][i];
    reconstruct();
  }

  void reconstruct() {
    const auto& sig = s_.cfg.noise.sigma;
    for (std::size_t i = 0; i < s_.n; ++i) {
      double v = s_.mu;
      for (std::size_t m = 0; m < 5; ++m) v += sig[m] * y_[m][i];
      for (std::size_t q = 0; q < s_.second.size(); ++q) {
        const auto [a, b] = s_.second[q];
        v += sig[static_cast<std::size_t>(a)] * sig[static_cast<std::size_t>(b)] * yy_[q][i];
      }
      v_[i] = v;
    }
  }

  const Setup& s_;
  std::size_t index_;
  Rng rng_;
  std::normal_distribution<double> gauss_;
  std::vector<double> v_, db_, tmp_, tmp2_;
  std::vector<double> w_;     // W_ij / M_i on the Jbar slots
  std::vector<double> wsum_;  // row sums of W / M
  std::array<bool, 5> active_{};
  std::array<std::vector<double>, 5> y_;
  std::vector<std::vector<double>> yy_;
};

struct BlockResult {
  std::vector<MomentAccumulator> nodes;
  std::vector<CoMomentAccumulator> pairs;
  std::exception_ptr error;
};

void run_block(const Setup& s, std::size_t first, std::size_t last, EnsembleStats& out, BlockResult& res) {
  const std::size_t times = s.record.size();
  const auto& pairs = s.cfg.pairs;
  res.nodes.assign(times * s.n, {});
  res.pairs.assign(times * pairs.size(), {});
  try {
    for (std::size_t trial = first; trial < last; ++trial) {
      Trial tr(s, trial, false);
      std::size_t r = 0;
      auto record = [&] {
        const auto& v = tr.v();
        for (std::size_t i = 0; i < s.n; ++i) res.nodes[r * s.n + i].push(v[i]);
        for (std::size_t p = 0; p < pairs.size(); ++p)
          res.pairs[r * pairs.size() + p].push(v[pairs[p].first], v[pairs[p].second]);
        for (std::size_t q = 0; q < s.cfg.tuples.size(); ++q) {
          const auto& tuple = s.cfg.tuples[q];
          auto& buf = out.tuple_samples[q * times + r];
          for (std::size_t c = 0; c < tuple.size(); ++c) buf[trial * tuple.size() + c] = v[tuple[c]];
        }
        ++r;
      };
      record();
      for (std::size_t k = 0; k < s.steps; ++k) {
        tr.advance(k);
        if (s.record[r] == k + 1) record();
      }
    }
  } catch (...) {
    res.error = std::current_exception();
  }
}

}  // namespace

EnsembleStats run(const SimConfig& config, unsigned threads) {
  const Setup s(config);
  EnsembleStats out;
  out.nodes = s.n;
  out.mu = s.mu;
  out.pairs = s.cfg.pairs;
  out.tuples = s.cfg.tuples;
  for (auto k : s.record) out.times.push_back(static_cast<double>(k) * s.cfg.dt);
  const std::size_t times = out.times.size();
  out.node_moments.assign(times * s.n, {});
  out.pair_moments.assign(times * s.cfg.pairs.size(), {});
  for (const auto& t : s.cfg.tuples)
    for (std::size_t r = 0; r < times; ++r) out.tuple_samples.emplace_back(s.cfg.trials * t.size());

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t blocks = (s.cfg.trials + kBlock - 1) / kBlock;
  for (std::size_t wave = 0; wave < blocks; wave += threads) {
    const std::size_t count = std::min<std::size_t>(threads, blocks - wave);
    std::vector<BlockResult> results(count);
    auto work = [&](std::size_t b) {
      const std::size_t first = (wave + b) * kBlock;
      run_block(s, first, std::min(first + kBlock, s.cfg.trials), out, results[b]);
    };
    if (count == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t b = 0; b < count; ++b) pool.emplace_back(work, b);
      for (auto& th : pool) th.join();
    }
    for (auto& res : results) {
      if (res.error) std::rethrow_exception(res.error);
      for (std::size_t k = 0; k < res.nodes.size(); ++k) out.node_moments[k].merge(res.nodes[k]);
      for (std::size_t k = 0; k < res.pairs.size(); ++k) out.pair_moments[k].merge(res.pairs[k]);
    }
  }
  return out;
}

EnsembleStats run_exact(SimConfig config, unsigned threads) {
  config.order = Order::Exact;
  return run(config, threads);
}

EnsembleStats run_order1(SimConfig config, unsigned threads) {
  config.order = Order::Order1;
  return run(config, threads);
}

EnsembleStats run_order2(SimConfig config, unsigned threads) {
  config.order = Order::Order2;
  return run(config, threads);
}

TrialPath simulate_trial(const SimConfig& config, std::size_t trial, bool keep_components) {
  const Setup s(config);
  const bool components = keep_components && s.cfg.order != Order::Exact;
  TrialPath path;
  path.nodes = s.n;
  Trial tr(s, trial, components);
  auto record = [&](std::size_t k) {
    path.times.push_back(static_cast<double>(k) * s.cfg.dt);
    path.v.insert(path.v.end(), tr.v().begin(), tr.v().end());
    if (components)
      for (std::size_t m = 0; m < 5; ++m) path.y[m].insert(path.y[m].end(), tr.y(m).begin(), tr.y(m).end());
  };
  if (components) path.y.resize(5);
  record(0);
  for (std::size_t k = 0; k < s.steps; ++k) {
    tr.advance(k);
    record(k + 1);
  }
  return path;
}

}  // namespace ratenet
