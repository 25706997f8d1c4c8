#include "ratenet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ratenet/error.hpp"
#include "ratenet/spectral.hpp"

namespace ratenet {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::vector<ChaosRow> chaos_scan(int n, const std::vector<int>& nus, double t, const std::array<double, 3>& sigma,
                                 const NetworkParams& params, std::optional<int> branch) {
  params.validate();
  const double mu = stationary_point(params, branch);
  std::vector<ChaosRow> rows;
  for (int nu : nus) {
    const ChaosInput in{n, nu, t, sigma, params, mu};
    rows.push_back({n, nu, nu == n / 2 ? n - 1 : 2 * nu, circulant_chaos_correlation(0, 1, in)});
  }
  return rows;
}

std::vector<InputRun> input_scan(const SimConfig& base, const std::vector<double>& inputs, unsigned threads) {
  if (base.pairs.empty()) throw Error(Errc::InvalidArgument, "input scan needs a pair");
  std::vector<InputRun> out;
  for (double input : inputs) {
    SimConfig cfg = base;
    cfg.network.input = input;
    const auto stats = run(cfg, threads);
    InputRun r{input, stats.mu, stats.times, {}, {}, 0.0, kNan, kNan};
    for (std::size_t k = 0; k < stats.times.size(); ++k) {
      const auto& p = stats.pair(k, 0);
      r.corr.push_back(p.correlation());
      r.corr_se.push_back(p.correlation_stderr());
      if (stats.times[k] > 0.0 && std::abs(r.corr.back()) > r.max_abs_corr) {
        r.max_abs_corr = std::abs(r.corr.back());
        r.max_abs_se = r.corr_se.back();
        r.t_at_max = stats.times[k];
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

SyncRegime sync_limit(const TopologySpec& topology, const NetworkParams& params, std::size_t i, std::size_t j,
                      const std::optional<NoiseSpec>& noise, std::optional<int> branch) {
  params.validate();
  const double mu = stationary_point(params, branch);
  const Spectrum spec = spectrum(topology, params.weight);
  const std::size_t n = spec.size();
  if (i >= n || j >= n) throw Error(Errc::InvalidArgument, "pair index out of range");
  const double slope = sigmoid_d1(params.sigmoid, mu);
  std::vector<cplx> a(n);
  for (std::size_t k = 0; k < n; ++k) a[k] = -1.0 / params.tau + slope * spec.eigenvalues[k];
  double a_bar = -std::numeric_limits<double>::infinity();
  for (const auto& x : a) a_bar = std::max(a_bar, x.real());
  const double tol = 1e-9 * std::max(1.0, std::abs(a_bar));
  std::vector<std::size_t> dominant;
  for (std::size_t k = 0; k < n; ++k)
    if (std::abs(a[k].real() - a_bar) <= tol) dominant.push_back(k);

  SyncRegime out{a_bar, static_cast<int>(dominant.size()), Matrix(n, n), a_bar >= 0.0, kNan, false};
  const CMatrix q = basis_matrix(spec);
  const CMatrix b = basis_inverse(spec);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t r = 0; r < n; ++r) {
      cplx acc = 0.0;
      for (auto k : dominant) acc += q(p, k) * b(k, r);
      out.e(p, r) = acc.real();
    }
  for (auto k : dominant)
    if (std::abs(q(i, k)) < 1e-12 || std::abs(q(j, k)) < 1e-12) out.degenerate_eigenvector = true;

  if (out.synchronizing) {
    double eij = 0.0, eii = 0.0, ejj = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      eij += out.e(i, k) * out.e(j, k);
      eii += out.e(i, k) * out.e(i, k);
      ejj += out.e(j, k) * out.e(j, k);
    }
    if (out.degenerate_eigenvector || !(eii > 0.0 && ejj > 0.0))
      out.limit = kNan;
    else if (out.multiplicity == 1)
      out.limit = eij >= 0.0 ? 1.0 : -1.0;  // rows of a rank-one E are parallel
    else
      out.limit = eij / std::sqrt(eii * ejj);
  } else if (noise) {
    const CovarianceModel model(spec, params, mu);
    const double t = 1e3 / std::abs(a_bar);
    try {
      out.limit = model.correlation(i, j, t, *noise);
    } catch (const Error& e) {
      if (e.code() != Errc::DegenerateVariance) throw;
    }
  }
  return out;
}

namespace {

double inverse_sigmoid(const SigmoidParams& s, double y) {
  return s.threshold + std::log(y / (s.t_max - y)) / s.slope;
}

// S(mu) at the requested root; empty when the discriminant is negative.
std::optional<double> stationary_rate(const NetworkParams& p, int sign) {
  const auto& s = p.sigmoid;
  double disc = 1.0 - 4.0 / (p.tau * p.weight * s.slope * s.t_max);
  if (!std::isfinite(disc)) return std::nullopt;
  if (disc < 0.0) {
    if (disc < -1e-12) return std::nullopt;
    disc = 0.0;
  }
  return s.t_max * 0.5 * (1.0 + sign * std::sqrt(disc));
}

SyncSolution make_solution(const NetworkParams& p, int sign) {
  const double rate = *stationary_rate(p, sign);
  const double mu = p.tau * (p.weight * rate + p.input);
  return {p, sign, mu, sync_residual(p, sign), -1.0 / p.tau + p.weight * sigmoid_d1(p.sigmoid, mu)};
}

double get(const NetworkParams& p, FreeParam f) {
  return f == FreeParam::Tau ? p.tau : f == FreeParam::Weight ? p.weight : p.input;
}

void set(NetworkParams& p, FreeParam f, double v) {
  (f == FreeParam::Tau ? p.tau : f == FreeParam::Weight ? p.weight : p.input) = v;
}

}  // namespace

double sync_residual(const NetworkParams& p, int sign) {
  if (sign != 1 && sign != -1) throw Error(Errc::InvalidArgument, "root sign must be +1 or -1");
  const auto rate = stationary_rate(p, sign);
  if (!rate) throw Error(Errc::NoSolution, "tau Lambda lambda T_MAX < 4");
  return sigmoid(p.sigmoid, p.tau * (p.weight * *rate + p.input)) - *rate;
}

std::vector<SyncSolution> sync_constraint_solve(const NetworkParams& base, FreeParam free) {
  base.sigmoid.validate();
  std::vector<SyncSolution> out;
  auto add = [&](const NetworkParams& p, int sign) {
    auto sol = make_solution(p, sign);
    for (const auto& o : out)
      if (std::abs(get(o.params, free) - get(p, free)) <= 1e-9 * std::max(1.0, std::abs(get(p, free))) &&
          std::abs(o.mu - sol.mu) <= 1e-9 * std::max(1.0, std::abs(sol.mu)))
        return;
    out.push_back(sol);
  };
  const auto& s = base.sigmoid;
  const double ls = s.slope * s.t_max;

  if (free == FreeParam::Input) {
    if (!(base.tau > 0.0)) throw Error(Errc::InvalidArgument, "tau must be positive");
    for (int sign : {1, -1}) {
      const auto rate = stationary_rate(base, sign);
      if (!rate) throw Error(Errc::NoSolution, "tau Lambda lambda T_MAX < 4");
      if (!(*rate > 0.0 && *rate < s.t_max)) continue;
      NetworkParams p = base;
      p.input = inverse_sigmoid(s, *rate) / p.tau - p.weight * *rate;
      add(p, sign);
    }
  } else {
    // the discriminant is non-negative for the free parameter above 4/(other * lambda T)
    const double other = free == FreeParam::Tau ? base.weight : base.tau;
    if (!(other > 0.0)) throw Error(Errc::NoSolution, "need the fixed product factor > 0");
    const double lo = 4.0 / (other * ls);
    const int cells = 4000;
    const double span = std::log(1e4);
    for (int sign : {1, -1}) {
      auto r = [&](double x) {
        NetworkParams p = base;
        set(p, free, x);
        return sync_residual(p, sign);
      };
      auto at = [&](int c) { return c == 0 ? lo : lo * std::exp(span * c / cells); };
      double x0 = at(0), r0 = r(x0);
      if (std::abs(r0) <= 1e-12) {
        NetworkParams p = base;
        set(p, free, x0);
        add(p, sign);
      }
      for (int c = 1; c <= cells; ++c) {
        const double x1 = at(c), r1 = r(x1);
        if (r1 == 0.0) {
          NetworkParams p = base;
          set(p, free, x1);
          add(p, sign);
        } else if (r0 != 0.0 && (r0 < 0.0) != (r1 < 0.0)) {
          double a = x0, b = x1, ra = r0;
          for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
            const double m = 0.5 * (a + b);
            const double rm = r(m);
            if (rm == 0.0) {
              a = b = m;
              break;
            }
            if ((rm < 0.0) == (ra < 0.0)) {
              a = m;
              ra = rm;
            } else {
              b = m;
            }
          }
          NetworkParams p = base;
          set(p, free, 0.5 * (a + b));
          add(p, sign);
        }
        x0 = x1;
        r0 = r1;
      }
    }
  }
  if (out.empty()) throw Error(Errc::NoSolution, "no parameter satisfies the synchronization constraint");
  std::sort(out.begin(), out.end(), [&](const SyncSolution& a, const SyncSolution& b) {
    return get(a.params, free) < get(b.params, free) || (get(a.params, free) == get(b.params, free) && a.sign > b.sign);
  });
  return out;
}

NetworkParams sync_family(double input) {
  if (!(input < 0.0)) throw Error(Errc::InvalidArgument, "the synchronization family needs I < 0");
  NetworkParams p;
  p.input = input;
  p.weight = -2.0 * input;
  p.tau = -2.0 / input;
  p.sigmoid = {1.0, 1.0, 0.0};
  return p;
}

std::vector<SyncRun> sync_experiment(const std::vector<int>& sizes, const SimConfig& base, double threshold,
                                     unsigned threads) {
  std::vector<SyncRun> out;
  for (int n : sizes) {
    SimConfig cfg = base;
    cfg.topology = complete_graph(n);
    cfg.order = Order::Exact;
    cfg.pairs = {{0, 1}};
    cfg.tuples.clear();
    const auto stats = run(cfg, threads);
    const std::size_t last = stats.times.size() - 1;
    if (stats.node(last, 0).variance() < 1e-300 && stats.node(last, 1).variance() < 1e-300)
      throw Error(Errc::DegenerateVariance, "zero variance at the end of the synchronization run");
    SyncRun r{n, stats.times, {}, {}, kNan, false};
    for (std::size_t k = 0; k < stats.times.size(); ++k) {
      r.corr.push_back(stats.pair(k, 0).correlation());
      r.corr_se.push_back(stats.pair(k, 0).correlation_stderr());
      if (std::isnan(r.time_to_threshold) && r.corr.back() >= threshold) r.time_to_threshold = stats.times[k];
    }
    const double horizon = stats.times.back();
    double early = 0.0, late = 0.0;
    int ne = 0, nl = 0;
    for (std::size_t k = 0; k < stats.times.size(); ++k) {
      const double t = stats.times[k];
      if (std::isnan(r.corr[k])) continue;
      if (t >= 0.1 * horizon && t <= 0.2 * horizon) {
        early += r.corr[k];
        ++ne;
      }
      if (t >= 0.9 * horizon) {
        late += r.corr[k];
        ++nl;
      }
    }
    r.eventually_increasing = ne > 0 && nl > 0 && late / nl > early / ne;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ratenet
