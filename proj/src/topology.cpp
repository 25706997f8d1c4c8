#include "ratenet/topology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "ratenet/error.hpp"

namespace ratenet {

namespace {

int heaviside(int x) { return x > 0 ? 1 : 0; }

void check_circulant(const Circulant& c) {
  if (c.n < 1) throw Error(Errc::BadBand, "circulant needs n >= 1");
  std::set<int> seen;
  for (int d : c.offsets) {
    if (d < 1 || d > c.n / 2)
      throw Error(Errc::BadBand, "circulant offset " + std::to_string(d) + " outside 1.." +
                                     std::to_string(c.n / 2));
    if (!seen.insert(d).second)
      throw Error(Errc::BadBand, "duplicate circulant offset " + std::to_string(d));
  }
}

Matrix circulant_unit(const Circulant& c) {
  check_circulant(c);
  const auto n = static_cast<std::size_t>(c.n);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (int d : c.offsets) {
      a(i, (i + static_cast<std::size_t>(d)) % n) = 1.0;
      a(i, (i + n - static_cast<std::size_t>(d)) % n) = 1.0;
    }
  return a;
}

Matrix band_unit(const BlockCirculantBand& b) {
  check_band(b.r, b.s, b.nu);
  const int s = b.s;
  const auto n = static_cast<std::size_t>(b.r * b.s);
  Matrix a(n, n);
  for (int p = 0; p < b.r; ++p)
    for (int q = 0; q < b.r; ++q) {
      const int l = ((q - p) % b.r + b.r) % b.r;
      const int nu = b.nu[static_cast<std::size_t>(l)];
      const int rho = s - nu + heaviside(nu - s / 2 + (s % 2 == 0 ? 1 : -1));
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
          const int c = ((j - i) % s + s) % s;
          const bool on = (c == 0) ? (l != 0) : (c <= nu || c >= rho);
          if (on) a(static_cast<std::size_t>(p * s + i), static_cast<std::size_t>(q * s + j)) = 1.0;
        }
    }
  return a;
}

Matrix expr_unit(const GraphExpr& e) {
  switch (e.kind) {
    case GraphExpr::Kind::Path: {
      if (e.n < 1) throw Error(Errc::InvalidArgument, "path needs n >= 1");
      const auto n = static_cast<std::size_t>(e.n);
      Matrix a(n, n);
      for (std::size_t i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = 1.0;
      return a;
    }
    case GraphExpr::Kind::Cycle: {
      if (e.n < 3) throw Error(Errc::InvalidArgument, "cycle needs n >= 3");
      return circulant_unit(Circulant{e.n, {1}});
    }
    case GraphExpr::Kind::Kronecker:
    case GraphExpr::Kind::Cartesian: {
      if (e.factors.empty()) throw Error(Errc::InvalidArgument, "graph product without factors");
      Matrix acc = expr_unit(e.factors.back());
      for (auto it = e.factors.rbegin() + 1; it != e.factors.rend(); ++it) {
        const Matrix f = expr_unit(*it);
        if (e.kind == GraphExpr::Kind::Kronecker) {
          acc = kron(f, acc);
        } else {
          Matrix sum = kron(f, Matrix::identity(acc.rows()));
          const Matrix right = kron(Matrix::identity(f.rows()), acc);
          for (std::size_t i = 0; i < sum.rows(); ++i)
            for (std::size_t j = 0; j < sum.cols(); ++j) sum(i, j) += right(i, j);
          acc = std::move(sum);
        }
      }
      return acc;
    }
  }
  return {};
}

std::vector<int> row_degrees(const Matrix& a) {
  std::vector<int> deg(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0.0) ++deg[i];
  return deg;
}

}  // namespace

int GraphExpr::size() const {
  switch (kind) {
    case Kind::Path:
    case Kind::Cycle:
      return n;
    case Kind::Kronecker:
    case Kind::Cartesian: {
      int total = 1;
      for (const auto& f : factors) total *= f.size();
      return factors.empty() ? 0 : total;
    }
  }
  return 0;
}

int node_count(const TopologySpec& spec) {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circulant>) return s.n;
        else if constexpr (std::is_same_v<T, BlockCirculantBand>) return s.r * s.s;
        else return s.size();
      },
      spec);
}

TopologySpec complete_graph(int n) {
  if (n >= 3) return BlockCirculantBand{1, n, {n / 2}};
  Circulant c{n, {}};
  for (int d = 1; d <= n / 2; ++d) c.offsets.push_back(d);
  return c;
}

TopologySpec cycle_graph(int n) { return Circulant{n, {1}}; }

GraphExpr circular_ladder(int n) { return GraphExpr::cartesian({GraphExpr::cycle(n), GraphExpr::path(2)}); }

GraphExpr hypercube(int dim) {
  if (dim < 1) throw Error(Errc::InvalidArgument, "hypercube needs dim >= 1");
  if (dim == 1) return GraphExpr::path(2);
  return GraphExpr::cartesian(std::vector<GraphExpr>(static_cast<std::size_t>(dim), GraphExpr::path(2)));
}

GraphExpr torus(int a, int b) { return GraphExpr::cartesian({GraphExpr::cycle(a), GraphExpr::cycle(b)}); }
GraphExpr ladder(int n) { return GraphExpr::cartesian({GraphExpr::path(n), GraphExpr::path(2)}); }
GraphExpr grid(int a, int b) { return GraphExpr::cartesian({GraphExpr::path(a), GraphExpr::path(b)}); }

void check_band(int r, int s, const std::vector<int>& nu) {
  if (r < 1) throw Error(Errc::BadBand, "R must be positive");
  if (s < 3) throw Error(Errc::BadBand, "S must be at least 3");
  if (nu.size() != static_cast<std::size_t>(r))
    throw Error(Errc::BadBand, "need one band half-width per block");
  for (int v : nu)
    if (v < 1 || v > s / 2)
      throw Error(Errc::BadBand, "band half-width " + std::to_string(v) + " outside 1.." + std::to_string(s / 2));
}

int band_in_degree(int r, int s, const std::vector<int>& nu) {
  check_band(r, s, nu);
  int m = r - 1;
  const int sign = (s % 2 == 0) ? 1 : -1;
  for (int v : nu) m += 2 * v - heaviside(v - s / 2 + sign);
  return m;
}

Matrix unit_adjacency(const TopologySpec& spec) {
  return std::visit(
      [](const auto& s) -> Matrix {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circulant>) return circulant_unit(s);
        else if constexpr (std::is_same_v<T, BlockCirculantBand>) return band_unit(s);
        else return expr_unit(s);
      },
      spec);
}

int validate_regularity(const Matrix& unit) {
  for (std::size_t i = 0; i < unit.rows(); ++i)
    if (unit(i, i) != 0.0) throw Error(Errc::SelfLoop, "node " + std::to_string(i) + " connects to itself");
  const auto deg = row_degrees(unit);
  if (deg.empty()) return 0;
  std::map<int, std::size_t> counts;
  for (int d : deg) ++counts[d];
  if (counts.size() == 1) return deg.front();
  const int modal = std::max_element(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
                      return a.second < b.second;
                    })->first;
  std::vector<std::size_t> rows;
  std::ostringstream msg;
  msg << "in-degree differs from " << modal << " at rows";
  for (std::size_t i = 0; i < deg.size(); ++i)
    if (deg[i] != modal) {
      rows.push_back(i);
      msg << ' ' << i;
    }
  throw IrregularDegreeError(std::move(rows), msg.str());
}

int validate_regularity(const WeightedAdjacency& adj) { return validate_regularity(adj.weights); }

WeightedAdjacency realize(const TopologySpec& spec, double scale, bool allow_irregular) {
  Matrix unit = unit_adjacency(spec);
  WeightedAdjacency out;
  out.scale = scale;
  out.row_degree = row_degrees(unit);
  try {
    out.in_degree = validate_regularity(unit);
  } catch (const IrregularDegreeError&) {
    if (!allow_irregular) throw;
  }
  for (std::size_t i = 0; i < unit.rows(); ++i) {
    const int m = out.row_degree[i];
    const double w = m > 0 ? scale / m : 0.0;
    for (std::size_t j = 0; j < unit.cols(); ++j)
      if (unit(i, j) != 0.0) unit(i, j) = w;
  }
  out.weights = std::move(unit);
  return out;
}

WeightedAdjacency band_block_circulant(int r, int s, const std::vector<int>& nu, double scale) {
  return realize(BlockCirculantBand{r, s, nu}, scale);
}

}  // namespace ratenet
