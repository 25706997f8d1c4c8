#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "ratenet/dense.hpp"

namespace ratenet {

// Ring on n nodes; node i receives from i±d (mod n) for every offset d.
struct Circulant {
  int n = 0;
  std::vector<int> offsets;
};

// R populations of S neurons, global index i*S + j. Block (p, q) of the
// adjacency is the symmetric circulant band b^((q-p) mod R) with half-width
// nu[(q-p) mod R]; b^(0) has a zero diagonal, the other blocks a full one.
struct BlockCirculantBand {
  int r = 1;
  int s = 3;
  std::vector<int> nu;
};

// Expression over paths and cycles. Operator nodes fold their factors from the
// right: {A, B, C} means A op (B op C). Node (a, b) of A op B has index a*|B| + b.
struct GraphExpr {
  enum class Kind { Path, Cycle, Kronecker, Cartesian };
  Kind kind = Kind::Path;
  int n = 0;
  std::vector<GraphExpr> factors;

  static GraphExpr path(int n) { return {Kind::Path, n, {}}; }
  static GraphExpr cycle(int n) { return {Kind::Cycle, n, {}}; }
  static GraphExpr kronecker(std::vector<GraphExpr> f) { return {Kind::Kronecker, 0, std::move(f)}; }
  static GraphExpr cartesian(std::vector<GraphExpr> f) { return {Kind::Cartesian, 0, std::move(f)}; }

  int size() const;
  bool operator==(const GraphExpr&) const = default;
};

using TopologySpec = std::variant<Circulant, BlockCirculantBand, GraphExpr>;

int node_count(const TopologySpec& spec);

// Named graphs used throughout the experiments.
TopologySpec complete_graph(int n);
TopologySpec cycle_graph(int n);
GraphExpr circular_ladder(int n);   // Cy_n x P_2
GraphExpr hypercube(int dim);       // P_2 x ... x P_2
GraphExpr torus(int a, int b);      // Cy_a x Cy_b
GraphExpr ladder(int n);            // P_n x P_2, boundary degrees differ
GraphExpr grid(int a, int b);       // P_a x P_b

struct WeightedAdjacency {
  Matrix weights;
  double scale = 0.0;
  // Uniform in-degree; empty for graphs realized with allow_irregular.
  std::optional<int> in_degree;
  std::vector<int> row_degree;

  std::size_t size() const { return weights.rows(); }
  bool regular() const { return in_degree.has_value(); }
};

// Irregular graphs are rejected unless allow_irregular is set; then every row
// is normalised by its own in-degree and the result carries no in_degree.
WeightedAdjacency realize(const TopologySpec& spec, double scale, bool allow_irregular = false);
WeightedAdjacency band_block_circulant(int r, int s, const std::vector<int>& nu, double scale);

// M = R - 1 + sum_i [2 nu_i - H(nu_i - floor(S/2) + (-1)^S)]
int band_in_degree(int r, int s, const std::vector<int>& nu);
void check_band(int r, int s, const std::vector<int>& nu);

// 0/1 adjacency before scaling.
Matrix unit_adjacency(const TopologySpec& spec);

int validate_regularity(const WeightedAdjacency& adj);
int validate_regularity(const Matrix& unit);

}  // namespace ratenet
