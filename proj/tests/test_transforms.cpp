#include <doctest.h>

#include <random>

#include "kcbpo/compiler.hpp"
#include "kcbpo/maxplus.hpp"
#include "kcbpo/transforms.hpp"
#include "support.hpp"

using namespace kcbpo;

namespace {

using Models = std::set<std::vector<std::uint8_t>>;

Models with_sum(const Models& models, const std::vector<std::int64_t>& coeff, std::int64_t lo, std::int64_t hi) {
  Models out;
  for (const auto& m : models) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += coeff[i] * m[i];
    if (lo <= s && s <= hi) out.insert(m);
  }
  return out;
}

NnfCircuit free_circuit(std::uint32_t n) {
  NnfBuilder b(n);
  return std::move(b).build(b.add_true());
}

std::vector<std::uint32_t> all_vars(std::uint32_t n) {
  std::vector<std::uint32_t> v(n);
  for (std::uint32_t i = 0; i < n; ++i) v[i] = i + 1;
  return v;
}

}  // namespace

TEST_CASE("counting roots on the worked example") {
  const LiteralInstance inst = testing::paper_example();
  const NnfCircuit c = compile(encode_basic(inst));
  const CountingResult r = counting_transform(c, all_vars(6));
  REQUIRE(r.roots.size() == 7);
  const int binom[] = {1, 6, 15, 20, 15, 6, 1};
  for (std::uint32_t i = 0; i <= 6; ++i) {
    CHECK(model_count(r.circuit.with_output(r.roots[i])) == binom[i]);
  }
  const Optimum best = optimize(r.circuit.with_output(r.roots[2]), weights_from_profits(inst));
  CHECK(best.value == 4);
  CHECK(project_solution(best.witness, inst) == std::vector<std::uint8_t>{0, 0, 0, 1, 1, 0});

  CHECK(optimize(restrict_cardinality(c, {all_vars(6), {2}}), weights_from_profits(inst)).value == 4);
  CHECK_FALSE(optimize(restrict_cardinality(c, {all_vars(6), {}}), weights_from_profits(inst)).feasible);
  CHECK(model_count(restrict_cardinality(c, {all_vars(6), {0, 1, 2, 3, 4, 5, 6}})) == 64);
}

TEST_CASE("knapsack on a free circuit") {
  const NnfCircuit c = knapsack_transform(free_circuit(2), {1, -1}, 0, 0);
  CHECK(testing::circuit_models(c) == Models{{0, 0}, {1, 1}});
  CHECK(model_count(knapsack_transform(free_circuit(3), {2, 1, 0}, 4, 10)) == 0);
  CHECK(model_count(knapsack_transform(free_circuit(3), {2, 1, 0}, 3, 3)) == 2);
}

TEST_CASE("counting, cardinality and knapsack agree with enumeration") {
  std::mt19937_64 rng(61);
  for (int iter = 0; iter < 150; ++iter) {
    const LiteralInstance inst = testing::random_instance(rng, {6, 5, 3, true, false});
    const CnfFormula f = encode_basic(inst);
    if (f.num_vars() > 12) continue;
    const NnfCircuit c = compile(f);
    const Models models = testing::circuit_models(c);
    const std::uint32_t n = c.num_vars();

    // Random counted subset.
    std::vector<std::uint32_t> vars;
    std::bernoulli_distribution take(0.5);
    for (std::uint32_t v = 1; v <= n; ++v) {
      if (take(rng)) vars.push_back(v);
    }
    std::vector<std::int64_t> unit(n, 0);
    for (std::uint32_t v : vars) unit[v - 1] = 1;

    const CountingResult r = counting_transform(c, vars);
    REQUIRE(r.roots.size() == vars.size() + 1);
    CHECK(check_structure(r.circuit) == StructureReport{true, true, true});
    BigInt total = 0;
    for (std::size_t i = 0; i < r.roots.size(); ++i) {
      const NnfCircuit root = r.circuit.with_output(r.roots[i]);
      const Models expected = with_sum(models, unit, static_cast<std::int64_t>(i), static_cast<std::int64_t>(i));
      CHECK(testing::circuit_models(root) == expected);
      total += model_count(root);
      const NnfCircuit knap = knapsack_transform(c, unit, static_cast<std::int64_t>(i), static_cast<std::int64_t>(i));
      CHECK(testing::circuit_models(knap) == expected);
    }
    CHECK(total == models.size());
    CHECK(testing::circuit_models(r.circuit) == models);

    std::vector<std::uint32_t> sums;
    for (std::uint32_t s = 0; s <= vars.size(); ++s) {
      if (take(rng)) sums.push_back(s);
    }
    const NnfCircuit card = restrict_cardinality(c, {vars, sums});
    CHECK(check_structure(card) == StructureReport{true, true, true});
    Models expected_card;
    for (std::uint32_t s : sums) {
      const Models part = with_sum(models, unit, s, s);
      expected_card.insert(part.begin(), part.end());
    }
    CHECK(testing::circuit_models(card) == expected_card);

    std::uniform_int_distribution<std::int64_t> coef(-3, 3), bound(-4, 4);
    std::vector<std::int64_t> coeffs(n);
    for (auto& v : coeffs) v = coef(rng);
    std::int64_t lo = bound(rng), hi = bound(rng);
    if (lo > hi) std::swap(lo, hi);
    const NnfCircuit knap = knapsack_transform(c, coeffs, lo, hi);
    CHECK(check_structure(knap) == StructureReport{true, true, true});
    CHECK(testing::circuit_models(knap) == with_sum(models, coeffs, lo, hi));
  }
}

TEST_CASE("constrained optimum through the ordered encoding") {
  std::mt19937_64 rng(67);
  int tested = 0;
  for (int iter = 0; iter < 200 && tested < 60; ++iter) {
    const LiteralInstance inst = testing::random_instance(rng, {6, 6, 4, true, false});
    const auto order = beta_elimination_order(inst.hypergraph);
    if (!order) continue;
    ++tested;
    CompileConfig cfg;
    cfg.order = order_from_beta(inst.hypergraph);
    const NnfCircuit c = compile(encode_ordered(inst, *order), cfg);
    const std::uint32_t n = static_cast<std::uint32_t>(inst.num_vertices());
    std::vector<std::uint32_t> sums;
    std::bernoulli_distribution take(0.4);
    for (std::uint32_t s = 0; s <= n; ++s) {
      if (take(rng)) sums.push_back(s);
    }
    const Optimum best = optimize(restrict_cardinality(c, {all_vars(n), sums}), weights_from_profits(inst));
    bool any = false;
    Rational brute;
    testing::for_each_assignment(n, [&](const auto& x) {
      const auto ones = static_cast<std::uint32_t>(std::count(x.begin(), x.end(), 1));
      if (std::find(sums.begin(), sums.end(), ones) == sums.end()) return;
      const Rational v = testing::poly_value(inst, x);
      if (!any || v > brute) brute = v;
      any = true;
    });
    CHECK(best.feasible == any);
    if (any) CHECK(best.value == brute);
  }
  CHECK(tested >= 30);
}

TEST_CASE("transform argument validation") {
  const NnfCircuit c = free_circuit(2);
  CHECK_THROWS_AS(counting_transform(c, {3}), std::invalid_argument);
  CHECK_THROWS_AS(counting_transform(c, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(restrict_cardinality(c, {{1, 2}, {3}}), std::invalid_argument);
  CHECK_THROWS_AS(knapsack_transform(c, {1}, 0, 1), std::invalid_argument);
}
