#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "kcbpo/hypergraph.hpp"

namespace kcbpo {

// Variables are numbered 1..num_vars. For encodings of an instance, x_v is
// v+1 and y_e is num_x+e+1. Literals are DIMACS-style signed integers.
struct ClauseTag {
  enum Kind : std::uint8_t { none, R, L } kind = none;
  std::uint32_t edge = 0;
  std::uint32_t vertex = 0;  // only for L
};

struct CnfFormula {
  std::uint32_t num_x = 0;
  std::uint32_t num_y = 0;
  std::vector<std::vector<std::int32_t>> clauses;
  std::vector<ClauseTag> tags;

  std::uint32_t num_vars() const { return num_x + num_y; }
  std::uint32_t x_var(std::uint32_t v) const { return v + 1; }
  std::uint32_t y_var(std::uint32_t e) const { return num_x + e + 1; }
  bool is_x(std::uint32_t var) const { return var >= 1 && var <= num_x; }

  // Adds an untagged clause; throws on tautologies or undeclared variables.
  void add_clause(std::vector<std::int32_t> clause, ClauseTag tag = {});
  // assignment[var-1] in {0,1}.
  bool satisfied_by(const std::vector<std::uint8_t>& assignment) const;
};

CnfFormula encode_basic(const LiteralInstance& inst);
// order must be a permutation of the vertex indices.
CnfFormula encode_ordered(const LiteralInstance& inst, const std::vector<std::uint32_t>& order);

// Vertex i stands for variable i+1; one edge per distinct clause variable set.
Hypergraph formula_hypergraph(const CnfFormula& f);
// Nodes 0..num_vars-1 are variables (var-1), then one node per clause.
Graph formula_incidence_graph(const CnfFormula& f);

void write_dimacs(const CnfFormula& f, std::ostream& out);

}  // namespace kcbpo
