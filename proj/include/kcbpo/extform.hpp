#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kcbpo/circuit.hpp"
#include "kcbpo/maxplus.hpp"
#include "kcbpo/rational.hpp"

namespace kcbpo {

// Columns 0..num_y-1 are the edge variables y<edge-id>; columns num_y.. are
// x<var> for variables 1..num_x.
struct LinearSystem {
  enum class Relation : std::uint8_t { equal, greater_equal };
  struct Row {
    std::vector<std::pair<std::uint32_t, std::int8_t>> terms;
    Relation relation = Relation::equal;
    Rational rhs;
  };

  std::uint32_t num_y = 0;
  std::uint32_t num_x = 0;
  std::vector<Row> rows;

  std::uint32_t num_columns() const { return num_y + num_x; }
  std::uint32_t x_column(std::uint32_t var) const { return num_y + var - 1; }
  std::string column_name(std::uint32_t col) const;
  // Every row satisfied by the point (indexed by column).
  bool satisfied_by(const std::vector<Rational>& point) const;
};

// Node subset of a normalized circuit, sorted.
using Certificate = std::vector<std::uint32_t>;

struct CertificatePoint {
  std::vector<std::uint8_t> y;  // per edge
  std::vector<std::uint8_t> x;  // per variable, x[var-1]
};

struct DualSolution {
  bool feasible = true;  // false when the output has no inputs
  std::int64_t value = 0;
  std::vector<std::int64_t> z_or;    // per Or node (0 elsewhere)
  std::vector<std::int64_t> z_edge;  // per in-edge of an And node (0 elsewhere)
};

// Throws StructureError unless c has the shape produced by normalize_for_extform.
void require_normalized(const NnfCircuit& c, const char* what);

LinearSystem build_system(const NnfCircuit& c, bool include_x);

std::vector<Certificate> enumerate_certificates(const NnfCircuit& c, std::size_t cap);
bool is_certificate(const Certificate& t, const NnfCircuit& c);
CertificatePoint certificate_point(const Certificate& t, const NnfCircuit& c);

DualSolution dual_optimize(const NnfCircuit& c, const std::vector<std::int64_t>& edge_cost);

// Integer edge costs carrying w(x, b) on the out-edges of the input for the
// literal fixing x = b, scaled by `scale` (the common denominator of w).
// Returns the costs and the scale.
std::pair<std::vector<std::int64_t>, BigInt> edge_costs_from_weights(const NnfCircuit& c, const WeightFunction& w);

// Builds the small circuit whose system is not totally unimodular and
// returns the determinant of the 6x6 submatrix discussed with it.
BigInt tu_counterexample_check();
// The circuit behind tu_counterexample_check; edge_of_label[i] is the
// positional id of the edge labelled y<i+1> in its system.
struct TuExample {
  NnfCircuit circuit;
  std::vector<std::uint32_t> edge_of_label;
};
TuExample tu_example_circuit();

BigInt determinant(std::vector<std::vector<BigInt>> m);

// CPLEX LP text. objective[col] per column; throws std::invalid_argument
// when a coefficient has no exact decimal form.
void write_lp(const LinearSystem& sys, const std::vector<Rational>& objective, const Rational& offset,
              std::ostream& out);

}  // namespace kcbpo
