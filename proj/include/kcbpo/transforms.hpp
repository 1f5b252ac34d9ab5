#pragma once

#include <cstdint>
#include <vector>

#include "kcbpo/circuit.hpp"

namespace kcbpo {

// Sum over `vars` of the assignment must lie in `sums`.
struct CardinalitySpec {
  std::vector<std::uint32_t> vars;
  std::vector<std::uint32_t> sums;
};

struct CountingResult {
  NnfCircuit circuit;
  // roots[i] computes the models whose count of true counted variables is i,
  // for i = 0..|X|; empty classes point at a False node.
  std::vector<std::uint32_t> roots;
};

CountingResult counting_transform(const NnfCircuit& c, const std::vector<std::uint32_t>& vars);
NnfCircuit restrict_cardinality(const NnfCircuit& c, const CardinalitySpec& spec);
// coeffs[var-1] is the integer coefficient of variable var (0 = not counted).
NnfCircuit knapsack_transform(const NnfCircuit& c, const std::vector<std::int64_t>& coeffs, std::int64_t lower,
                              std::int64_t upper);

}  // namespace kcbpo
