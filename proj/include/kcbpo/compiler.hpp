#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kcbpo/circuit.hpp"
#include "kcbpo/encoder.hpp"

namespace kcbpo {

struct CompileConfig {
  // Branching priority over variable ids; variables not listed come after,
  // lowest id first. Empty means lowest id first (or a seeded shuffle).
  std::vector<std::uint32_t> order;
  std::size_t max_cache_entries = std::size_t{1} << 22;
  std::size_t max_cache_literals = std::size_t{1} << 26;
  std::uint64_t seed = 0;
};

struct CompileStats {
  std::size_t decisions = 0;
  std::size_t cache_hits = 0;
  std::size_t cache_entries = 0;
  std::size_t cache_literals = 0;
  bool budget_exhausted = false;
};

// Decision-DNNF of the formula over variables 1..f.num_vars(). Or nodes are
// decisions (0-branch first); implied literals are And children.
NnfCircuit compile(const CnfFormula& f, const CompileConfig& cfg = {}, CompileStats* stats = nullptr);

// X variables in reverse elimination order, then each y_e ordered by the
// position of the last of its vertices in that prefix.
std::vector<std::uint32_t> order_from_beta(const Hypergraph& h);

// Variables by first appearance in a preorder walk from bag 0. The
// decomposition must be valid for formula_incidence_graph(f).
std::vector<std::uint32_t> order_from_decomposition(const TreeDecomposition& td, const CnfFormula& f);

}  // namespace kcbpo
