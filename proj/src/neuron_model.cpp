#include "ratenet/neuron_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ratenet/error.hpp"

namespace ratenet {

void SigmoidParams::validate() const {
  if (!(t_max > 0.0)) throw Error(Errc::InvalidArgument, "sigmoid t_max must be positive");
  if (!(slope > 0.0)) throw Error(Errc::InvalidArgument, "sigmoid slope must be positive");
  if (!std::isfinite(threshold)) throw Error(Errc::InvalidArgument, "sigmoid threshold must be finite");
}

void NetworkParams::validate() const {
  if (!(tau > 0.0)) throw Error(Errc::InvalidArgument, "tau must be positive");
  if (!std::isfinite(weight) || !std::isfinite(input))
    throw Error(Errc::InvalidArgument, "weight and input must be finite");
  sigmoid.validate();
}

double sigmoid(const SigmoidParams& p, double v) {
  const double x = p.slope * (v - p.threshold);
  if (x >= 0.0) return p.t_max / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return p.t_max * e / (1.0 + e);
}

double sigmoid_d1(const SigmoidParams& p, double v) {
  const double c = std::cosh(0.5 * p.slope * (v - p.threshold));
  return p.slope * p.t_max / (4.0 * c * c);
}

double sigmoid_d2(const SigmoidParams& p, double v) {
  return -p.slope * std::tanh(0.5 * p.slope * (v - p.threshold)) * sigmoid_d1(p, v);
}

double stationary_residual(const NetworkParams& p, double mu) {
  const double half = 0.5 * p.weight * p.sigmoid.t_max;
  const double centre = p.tau * (p.input + half);
  return (mu - centre) - p.tau * half * std::tanh(0.5 * p.sigmoid.slope * (mu - p.sigmoid.threshold));
}

namespace {

double residual_slope(const NetworkParams& p, double mu) {
  return 1.0 - p.tau * p.weight * sigmoid_d1(p.sigmoid, mu);
}

// Bisection on a sign change of g over [a, b], then width below tol.
template <class G>
double bisect(G&& g, double a, double b, double tol) {
  double ga = g(a);
  for (int it = 0; it < 400; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    if (b - a <= tol * std::max(1.0, std::abs(m))) break;
    const double gm = g(m);
    if (gm == 0.0) return m;
    if ((gm < 0.0) == (ga < 0.0)) {
      a = m;
      ga = gm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double polish(const NetworkParams& p, double x) {
  double best = x;
  double fbest = std::abs(stationary_residual(p, x));
  for (int it = 0; it < 8 && fbest > 0.0; ++it) {
    const double d = residual_slope(p, best);
    if (d == 0.0) break;
    const double next = best - stationary_residual(p, best) / d;
    const double fnext = std::abs(stationary_residual(p, next));
    if (!(fnext < fbest)) break;
    best = next;
    fbest = fnext;
  }
  return best;
}

}  // namespace

std::vector<double> stationary_state(const NetworkParams& p, double tol) {
  p.validate();
  const double spread = std::abs(p.tau * p.weight) * p.sigmoid.t_max;
  const double base = p.tau * p.input;
  if (spread == 0.0) return {base};

  constexpr int kCells = 1024;
  const double lo = base - spread;
  const double hi = base + spread;
  auto f = [&](double x) { return stationary_residual(p, x); };
  auto df = [&](double x) { return residual_slope(p, x); };

  std::vector<double> grid(kCells + 1);
  std::vector<double> fg(kCells + 1);
  std::vector<double> dg(kCells + 1);
  for (int i = 0; i <= kCells; ++i) {
    grid[i] = i == kCells ? hi : lo + (hi - lo) * i / kCells;
    fg[i] = f(grid[i]);
    dg[i] = df(grid[i]);
  }

  std::vector<double> roots;
  for (int i = 0; i <= kCells; ++i)
    if (fg[i] == 0.0) roots.push_back(grid[i]);
  for (int i = 0; i < kCells; ++i) {
    if (fg[i] != 0.0 && fg[i + 1] != 0.0 && (fg[i] < 0.0) != (fg[i + 1] < 0.0))
      roots.push_back(polish(p, bisect(f, grid[i], grid[i + 1], tol)));
    // tangent roots: f has an extremum inside the cell that touches zero
    if (dg[i] != 0.0 && dg[i + 1] != 0.0 && (dg[i] < 0.0) != (dg[i + 1] < 0.0)) {
      const double x = bisect(df, grid[i], grid[i + 1], tol);
      if (std::abs(f(x)) <= 1e-12) roots.push_back(x);
    }
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots)
    if (unique.empty() || r - unique.back() > 1e-9 * std::max(1.0, std::abs(r))) unique.push_back(r);
  if (unique.empty()) throw Error(Errc::NoRoot, "no stationary state in the bracket");
  return unique;
}

double select_branch(const std::vector<double>& roots, std::optional<int> branch) {
  if (roots.empty()) throw Error(Errc::NoRoot, "no stationary state");
  if (branch) {
    if (*branch < 0 || static_cast<std::size_t>(*branch) >= roots.size())
      throw Error(Errc::InvalidArgument, "branch " + std::to_string(*branch) + " out of range (" +
                                             std::to_string(roots.size()) + " roots)");
    return roots[static_cast<std::size_t>(*branch)];
  }
  if (roots.size() > 1)
    throw Error(Errc::AmbiguousBranch,
                std::to_string(roots.size()) + " stationary states; choose one with a branch index");
  return roots.front();
}

double stationary_point(const NetworkParams& p, std::optional<int> branch) {
  return select_branch(stationary_state(p), branch);
}

EffectiveConnectivity effective_matrix(const WeightedAdjacency& adj, const NetworkParams& p, double mu) {
  const double slope = sigmoid_d1(p.sigmoid, mu);
  const std::size_t n = adj.size();
  EffectiveConnectivity out{Matrix(n, n), Matrix(n, n), slope};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out.j_eff(i, j) = adj.weights(i, j) * slope;
      out.a(i, j) = out.j_eff(i, j) - (i == j ? 1.0 / p.tau : 0.0);
    }
  return out;
}

}  // namespace ratenet
