#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kcbpo/circuit.hpp"
#include "kcbpo/hypergraph.hpp"
#include "kcbpo/rational.hpp"

namespace kcbpo {

// w(x, b) for variables 1..num_vars(); weight(var, bit).
class WeightFunction {
 public:
  explicit WeightFunction(std::uint32_t num_vars = 0) : w_(2 * std::size_t{num_vars}, Rational(0)) {}
  std::uint32_t num_vars() const { return static_cast<std::uint32_t>(w_.size() / 2); }
  const Rational& weight(std::uint32_t var, int bit) const { return w_[2 * (std::size_t{var} - 1) + (bit ? 1 : 0)]; }
  void set(std::uint32_t var, int bit, Rational value) { w_[2 * (std::size_t{var} - 1) + (bit ? 1 : 0)] = std::move(value); }
  // Sum of w(x, assignment[x-1]).
  Rational total(const std::vector<std::uint8_t>& assignment) const;

 private:
  std::vector<Rational> w_;
};

struct Optimum {
  bool feasible = false;  // false encodes the value -infinity
  Rational value;
  std::vector<std::uint8_t> witness;  // assignment[var-1]
};

struct RankedAssignment {
  std::vector<std::uint8_t> assignment;
  Rational value;
};

// w(y_e, 1) = p(e); everything else 0. Variables as in the encodings.
WeightFunction weights_from_profits(const LiteralInstance& inst);

Optimum optimize(const NnfCircuit& c, const WeightFunction& w);

// The vertex part of an encoding model; throws std::invalid_argument if tau
// is not a model of the multilinear set.
std::vector<std::uint8_t> project_solution(const std::vector<std::uint8_t>& tau, const LiteralInstance& inst);

// The k best distinct models, best first.
std::vector<RankedAssignment> top_k(const NnfCircuit& c, const WeightFunction& w, std::size_t k);

}  // namespace kcbpo
