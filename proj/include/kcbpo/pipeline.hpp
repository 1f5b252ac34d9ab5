#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kcbpo/circuit.hpp"
#include "kcbpo/compiler.hpp"
#include "kcbpo/encoder.hpp"
#include "kcbpo/instance.hpp"
#include "kcbpo/maxplus.hpp"

namespace kcbpo {

enum class Encoding { automatic, basic, ordered };

struct KnapsackSpec {
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  std::vector<std::int64_t> coeffs;  // per vertex index
};

struct CompiledInstance {
  CnfFormula cnf;
  NnfCircuit circuit;
  CompileStats stats;
  bool ordered = false;  // which encoding was used
};

// automatic: the ordered encoding with a beta elimination order when the
// hypergraph is beta-acyclic, else the basic encoding with a branching order
// from a tree decomposition of the incidence graph.
CompiledInstance compile_instance(const LiteralInstance& inst, Encoding encoding);

// Restricts the compiled circuit by cardinality over all vertices and/or a
// knapsack constraint; the result is deterministic.
NnfCircuit apply_constraints(const NnfCircuit& circuit, const LiteralInstance& inst,
                             const std::optional<std::vector<std::uint32_t>>& card_sums,
                             const std::optional<KnapsackSpec>& knapsack);

struct Solution {
  Rational value;                // user-facing objective value
  std::vector<std::uint8_t> x;  // per vertex index
};

struct SolveOptions {
  Encoding encoding = Encoding::automatic;
  std::optional<std::vector<std::uint32_t>> card_sums;
  std::optional<KnapsackSpec> knapsack;
};

// Best solution, or nullopt when no point is feasible.
std::optional<Solution> solve(const ParsedInstance& p, const SolveOptions& opts);
std::vector<Solution> solve_top_k(const ParsedInstance& p, const SolveOptions& opts, std::size_t k);

}  // namespace kcbpo
