#include <doctest.h>

#include <random>
#include <sstream>

#include "kcbpo/encoder.hpp"
#include "support.hpp"

using namespace kcbpo;

namespace {

using Clause = std::vector<std::int32_t>;

std::set<Clause> clause_set(const CnfFormula& f) {
  std::set<Clause> out;
  for (Clause c : f.clauses) {
    std::sort(c.begin(), c.end());
    out.insert(c);
  }
  return out;
}

// Models of the multilinear set: x free, y_e the sigma-adjusted product.
std::set<std::vector<std::uint8_t>> multilinear_set(const LiteralInstance& inst) {
  std::set<std::vector<std::uint8_t>> out;
  const std::size_t n = inst.num_vertices();
  testing::for_each_assignment(n, [&](const auto& x) {
    std::vector<std::uint8_t> tau(x);
    for (std::size_t e = 0; e < inst.num_edges(); ++e) {
      const auto& edge = inst.hypergraph.edge(e);
      bool prod = true;
      for (std::size_t j = 0; j < edge.size(); ++j) prod = prod && ((x[edge[j]] != 0) == inst.sigma[e][j]);
      tau.push_back(prod);
    }
    out.insert(tau);
  });
  return out;
}

}  // namespace

TEST_CASE("worked example sizes") {
  const LiteralInstance inst = testing::paper_example();
  const CnfFormula basic = encode_basic(inst);
  CHECK(basic.num_vars() == 9);
  CHECK(basic.clauses.size() == 13);
  const CnfFormula ordered = encode_ordered(inst, {0, 1, 2, 3, 4, 5});
  CHECK(ordered.num_vars() == 9);
  CHECK(ordered.clauses.size() == 13);
  CHECK_FALSE(is_beta_acyclic(formula_hypergraph(basic)));
  CHECK(is_beta_acyclic(formula_hypergraph(ordered)));
  const Graph g = formula_incidence_graph(basic);
  CHECK(g.num_nodes() == 22);
}

TEST_CASE("basic encoding of the worked example contains the expected beta-cycle") {
  const CnfFormula basic = encode_basic(testing::paper_example());
  // x_v2 = 2, x_v3 = 3, y_e1 = 7, y_e3 = 9: L clauses {y7,x2},{y7,x3},{y9,x2},{y9,x3}.
  const Hypergraph h = formula_hypergraph(basic);
  std::set<std::vector<std::uint32_t>> edges(h.edges().begin(), h.edges().end());
  for (std::vector<std::uint32_t> e : {std::vector<std::uint32_t>{1, 6}, {2, 6}, {1, 8}, {2, 8}}) {
    CHECK(edges.count(e) == 1);
  }
}

TEST_CASE("single monomial encodings") {
  const LiteralInstance one = LiteralInstance::plain(Hypergraph(1, {{0}}), {Rational(2)});
  const CnfFormula f = encode_basic(one);
  CHECK(f.num_vars() == 2);
  CHECK(clause_set(f) == std::set<Clause>{{-1, 2}, {-2, 1}});
  CHECK(clause_set(encode_ordered(one, {0})) == clause_set(f));

  // (1 - x_a) x_b
  const LiteralInstance lit(Hypergraph(2, {{0, 1}}), {{false, true}}, {Rational(1)});
  CHECK(clause_set(encode_basic(lit)) == std::set<Clause>{{-2, 1, 3}, {-3, -1}, {-3, 2}});

  const LiteralInstance ab = LiteralInstance::plain(Hypergraph(2, {{0, 1}}), {Rational(1)});
  const Graph g = formula_incidence_graph(encode_basic(ab));
  CHECK(g.num_nodes() == 6);
  CHECK(g.num_edges() == 7);
}

TEST_CASE("empty formula") {
  const LiteralInstance none = LiteralInstance::plain(Hypergraph(0, {}), {});
  const CnfFormula f = encode_basic(none);
  CHECK(f.clauses.empty());
  CHECK(formula_hypergraph(f).num_edges() == 0);
  CHECK(formula_incidence_graph(f).num_edges() == 0);
}

TEST_CASE("encodings have exactly the multilinear set as models") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 150; ++iter) {
    const LiteralInstance inst = testing::random_instance(rng, {6, 6, 4, iter % 2 == 0, true});
    const auto expected = multilinear_set(inst);
    std::size_t total = 0;
    for (const auto& e : inst.hypergraph.edges()) total += e.size();

    const CnfFormula basic = encode_basic(inst);
    CHECK(basic.clauses.size() == inst.num_edges() + total);
    CHECK(testing::cnf_models(basic) == expected);
    CHECK(expected.size() == (std::size_t{1} << inst.num_vertices()));

    std::vector<std::uint32_t> order(inst.num_vertices());
    for (std::uint32_t v = 0; v < order.size(); ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng);
    const CnfFormula ordered = encode_ordered(inst, order);
    CHECK(ordered.clauses.size() == basic.clauses.size());
    CHECK(testing::cnf_models(ordered) == expected);
  }
}

TEST_CASE("the ordered encoding preserves beta-acyclicity") {
  std::mt19937_64 rng(8);
  int tested = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const LiteralInstance inst = testing::random_instance(rng, {9, 8, 4, true, true});
    const auto order = beta_elimination_order(inst.hypergraph);
    if (!order) continue;
    ++tested;
    CHECK(is_beta_acyclic(formula_hypergraph(encode_ordered(inst, *order))));
  }
  for (int iter = 0; iter < 50; ++iter) {
    const Hypergraph h = testing::random_beta_acyclic(rng, 12);
    std::vector<Rational> p(h.num_edges(), Rational(1));
    const auto inst = LiteralInstance::plain(h, p);
    ++tested;
    CHECK(is_beta_acyclic(formula_hypergraph(encode_ordered(inst, *beta_elimination_order(h)))));
  }
  CHECK(tested > 60);
}

TEST_CASE("ordered encoding rejects a bad order") {
  const LiteralInstance inst = testing::paper_example();
  CHECK_THROWS_AS(encode_ordered(inst, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(encode_ordered(inst, {0, 1, 2, 3, 4, 4}), std::invalid_argument);
}

TEST_CASE("clause validation") {
  CnfFormula f;
  f.num_x = 2;
  CHECK_THROWS_AS(f.add_clause({1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(f.add_clause({3}), std::invalid_argument);
  CHECK_NOTHROW(f.add_clause({1, -2}));
}

TEST_CASE("DIMACS output") {
  const CnfFormula f = encode_basic(LiteralInstance::plain(Hypergraph(2, {{0, 1}}), {Rational(1)}));
  std::ostringstream os;
  write_dimacs(f, os);
  const std::string text = os.str();
  CHECK(text.rfind("p cnf 3 3\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}
