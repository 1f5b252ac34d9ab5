#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "kcbpo/hypergraph.hpp"
#include "kcbpo/rational.hpp"
#include "kcbpo/transforms.hpp"

namespace kcbpo {

struct OraclePoint {
  std::vector<std::uint8_t> x;  // x[vertex index]
  Rational value;
};

inline constexpr std::size_t kOracleMaxVertices = 24;

// Feasibility test on the bitmask of a point (bit v = vertex index v).
using PointFilter = std::function<bool(std::uint32_t mask)>;

// The k best feasible points of the polynomial by exhaustive evaluation,
// best first; ties go to the lexicographically smaller point. spec.vars are
// vertex indices plus one. Throws GuardError above kOracleMaxVertices.
std::vector<OraclePoint> brute_force(const LiteralInstance& inst, const std::optional<CardinalitySpec>& spec,
                                     std::size_t k);
std::vector<OraclePoint> brute_force(const LiteralInstance& inst, const PointFilter& feasible, std::size_t k);

}  // namespace kcbpo
