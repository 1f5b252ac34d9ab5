#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kcbpo/rational.hpp"

namespace kcbpo {

// Vertices are addressed by dense index 0..n-1; `labels` keeps the
// user-facing id of each vertex in increasing order. Edges form a sequence
// (duplicates allowed) and each edge is a sorted list of vertex indices.
class Hypergraph {
 public:
  Hypergraph() = default;
  // Vertices labelled 1..num_vertices.
  Hypergraph(std::size_t num_vertices, std::vector<std::vector<std::uint32_t>> edges,
             bool allow_empty_edges = false);
  Hypergraph(std::vector<std::int64_t> labels, std::vector<std::vector<std::uint32_t>> edges,
             bool allow_empty_edges = false);

  std::size_t num_vertices() const { return labels_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<std::int64_t>& labels() const { return labels_; }
  const std::vector<std::vector<std::uint32_t>>& edges() const { return edges_; }
  const std::vector<std::uint32_t>& edge(std::size_t e) const { return edges_[e]; }

  bool operator==(const Hypergraph&) const = default;

 private:
  std::vector<std::int64_t> labels_;
  std::vector<std::vector<std::uint32_t>> edges_;
};

// A BPO instance with literals: edge e contributes p(e) times the product of
// x_v (sigma bit 1) or 1 - x_v (sigma bit 0) over its vertices. sigma[e][j]
// is the polarity of hypergraph.edge(e)[j].
struct LiteralInstance {
  Hypergraph hypergraph;
  std::vector<std::vector<bool>> sigma;
  std::vector<Rational> profit;

  LiteralInstance() = default;
  LiteralInstance(Hypergraph h, std::vector<std::vector<bool>> sigma, std::vector<Rational> profit);
  // All polarities positive.
  static LiteralInstance plain(Hypergraph h, std::vector<Rational> profit);

  std::size_t num_vertices() const { return hypergraph.num_vertices(); }
  std::size_t num_edges() const { return hypergraph.num_edges(); }

  bool operator==(const LiteralInstance&) const = default;
};

// Value of the polynomial at x (x[v] in {0,1}, indexed by vertex index).
Rational evaluate_polynomial(const LiteralInstance& inst, const std::vector<std::uint8_t>& x);

// Simple undirected graph on nodes 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  explicit Graph(std::size_t n = 0) : adj_(n) {}
  void add_edge(std::uint32_t a, std::uint32_t b);  // ignores duplicates and loops
  std::size_t num_nodes() const { return adj_.size(); }
  std::size_t num_edges() const;
  const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const { return adj_[v]; }
  bool has_edge(std::uint32_t a, std::uint32_t b) const;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_list() const;

 private:
  std::vector<std::vector<std::uint32_t>> adj_;
};

struct TreeDecomposition {
  std::vector<std::vector<std::uint32_t>> bags;                     // sorted node ids
  std::vector<std::pair<std::uint32_t, std::uint32_t>> tree_edges;  // between bag ids

  // (max bag size) - 1; -1 for a decomposition without bags.
  long width() const;
};

// nullopt when td is a valid tree decomposition of g, otherwise the reason.
std::optional<std::string> decomposition_error(const TreeDecomposition& td, const Graph& g);
inline bool is_valid_decomposition(const TreeDecomposition& td, const Graph& g) {
  return !decomposition_error(td, g).has_value();
}

// Nodes 0..n-1 are vertices, n+e is edge e.
Graph incidence_graph(const Hypergraph& h);

std::optional<std::vector<std::uint32_t>> beta_elimination_order(const Hypergraph& h);
bool is_beta_acyclic(const Hypergraph& h);

// Width-2 decomposition of inc(h) when h is a cycle hypergraph with at least
// three edges and no vertex shared by three edges.
std::optional<TreeDecomposition> cycle_decomposition(const Hypergraph& h);

// Maps a decomposition of incidence_graph(h) to one of the incidence graph of
// the basic encoding (node layout of formula_incidence_graph(encode_basic)).
// Throws std::invalid_argument on an invalid input decomposition.
TreeDecomposition lift_decomposition(const TreeDecomposition& td, const Hypergraph& h);

// Min-fill elimination, ties to the lowest node id. Bag 0 is the root.
TreeDecomposition minfill_decomposition(const Graph& g);

}  // namespace kcbpo
