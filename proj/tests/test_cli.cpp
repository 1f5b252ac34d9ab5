#include <doctest.h>

#include <random>

#include "kcbpo/errors.hpp"
#include "kcbpo/instance.hpp"
#include "kcbpo/labs.hpp"
#include "kcbpo/oracle.hpp"
#include "kcbpo/pipeline.hpp"
#include "support.hpp"

using namespace kcbpo;

namespace {

// The LABS energy evaluated straight from its definition.
long labs_energy(const std::vector<std::uint8_t>& x, int w) {
  const int n = static_cast<int>(x.size());
  long e = 0;
  for (int k = 1; k <= w; ++k) {
    long ck = 0;
    for (int i = 0; i + k < n; ++i) ck += (2 * x[i] - 1) * (2 * x[i + k] - 1);
    e += ck * ck;
  }
  return e;
}

}  // namespace

TEST_CASE("parse the worked example") {
  const ParsedInstance p = parse_instance("-3 v1 v2 v3\n4 v4 v5\n5 v2 v3 v4 v5 v6\n");
  CHECK(p.inst == testing::paper_example());
  CHECK(p.offset == 0);
  CHECK(p.sense == Sense::maximize);
}

TEST_CASE("parse constants, literals and directives") {
  const ParsedInstance c = parse_instance("7\n");
  CHECK(c.inst.num_vertices() == 0);
  CHECK(c.offset == 7);
  const auto best = solve(c, {});
  REQUIRE(best.has_value());
  CHECK(best->value == 7);

  const ParsedInstance lit = parse_instance("2 ~v1 v2\n");
  CHECK(lit.inst.sigma[0] == std::vector<bool>{false, true});

  const ParsedInstance d = parse_instance("# comment\n#minimize\n#card 1,3\n1/2 v10 ~v4\n-1.5\n\n0 v4\n");
  CHECK(d.sense == Sense::minimize);
  CHECK(*d.card_sums == std::vector<std::uint32_t>{1, 3});
  CHECK(d.inst.hypergraph.labels() == std::vector<std::int64_t>{4, 10});
  CHECK(d.inst.profit[0] == Rational(-1, 2));
  CHECK(d.offset == Rational(3, 2));
  CHECK(d.warnings.size() == 1);
  CHECK(d.objective(Rational(0)) == Rational(-3, 2));
}

TEST_CASE("parse errors carry line numbers") {
  auto message = [](const std::string& text) {
    try {
      parse_instance(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("1 v1\nx v2\n").find("line 2") != std::string::npos);
  CHECK(message("1 v1 v1\n").find("repeated") != std::string::npos);
  CHECK_FALSE(message("1 v0\n").empty());
  CHECK_FALSE(message("1 w1\n").empty());
  CHECK_FALSE(message("1/0 v1\n").empty());
  CHECK_FALSE(message("#card 1,,2\n").empty());
  CHECK_FALSE(message("#maximize\n#minimize\n").empty());
}

TEST_CASE("instance text round trip") {
  std::mt19937_64 rng(73);
  for (int iter = 0; iter < 100; ++iter) {
    ParsedInstance p;
    p.inst = testing::random_instance(rng);
    p.offset = ratio(iter % 5 - 2, 3);
    p.sense = iter % 2 ? Sense::minimize : Sense::maximize;
    if (iter % 3 == 0) p.card_sums = std::vector<std::uint32_t>{0, 2};
    const ParsedInstance back = parse_instance(format_instance(p));
    // Vertices absent from every edge are not representable in the text.
    if (p.inst.num_edges() > 0) {
      std::set<std::uint32_t> used;
      for (const auto& e : p.inst.hypergraph.edges()) used.insert(e.begin(), e.end());
      if (used.size() != p.inst.num_vertices()) continue;
    } else {
      continue;
    }
    CHECK(back.inst == p.inst);
    CHECK(back.offset == p.offset);
    CHECK(back.sense == p.sense);
    CHECK(back.card_sums == p.card_sums);
    CHECK(format_instance(back) == format_instance(p));
  }
}

TEST_CASE("oracle on the worked example") {
  const LiteralInstance inst = testing::paper_example();
  const auto best = brute_force(inst, std::nullopt, 1);
  REQUIRE(best.size() == 1);
  CHECK(best[0].value == 9);
  CHECK(best[0].x == std::vector<std::uint8_t>{0, 1, 1, 1, 1, 1});
  CardinalitySpec two{{1, 2, 3, 4, 5, 6}, {2}};
  CHECK(brute_force(inst, two, 1)[0].value == 4);
  const auto all = brute_force(inst, std::nullopt, 100);
  CHECK(all.size() == 64);
  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    CHECK(all[i].value >= all[i + 1].value);
    if (all[i].value == all[i + 1].value) CHECK(all[i].x < all[i + 1].x);
  }
  const auto empty = brute_force(LiteralInstance::plain(Hypergraph(3, {}), {}), std::nullopt, 8);
  CHECK(empty.size() == 8);
  for (const auto& pt : empty) CHECK(pt.value == 0);
}

TEST_CASE("oracle matches direct evaluation") {
  std::mt19937_64 rng(79);
  for (int iter = 0; iter < 50; ++iter) {
    const LiteralInstance inst = testing::random_instance(rng, {8, 10, 6, true, false});
    const auto all = brute_force(inst, std::nullopt, 1u << 8);
    REQUIRE(all.size() == (std::size_t{1} << inst.num_vertices()));
    for (const auto& pt : all) CHECK(pt.value == testing::poly_value(inst, pt.x));
  }
}

TEST_CASE("oracle falls back to rationals for huge coefficients") {
  const LiteralInstance inst = LiteralInstance::plain(Hypergraph(2, {{0}, {1}}), {Rational(BigInt(1) << 70), Rational(-1, 7)});
  const auto best = brute_force(inst, std::nullopt, 1);
  CHECK(best[0].value == Rational(BigInt(1) << 70));
  CHECK(best[0].x == std::vector<std::uint8_t>{1, 0});
}

TEST_CASE("oracle size guard") {
  const LiteralInstance big = LiteralInstance::plain(Hypergraph(25, {{0, 24}}), {Rational(1)});
  CHECK_THROWS_AS(brute_force(big, std::nullopt, 1), GuardError);
}

TEST_CASE("LABS generator") {
  CHECK_THROWS_AS(gen_labs(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(gen_labs(3, 0), std::invalid_argument);
  const ParsedInstance two = parse_instance(gen_labs(2, 1));
  CHECK(two.inst.num_edges() == 0);
  CHECK(two.objective(Rational(0)) == 1);

  for (auto [n, w] : {std::pair{4, 1}, {6, 2}, {9, 3}, {12, 4}}) {
    const ParsedInstance p = parse_instance(gen_labs(n, w));
    CHECK(p.sense == Sense::minimize);
    CHECK(p.inst.num_vertices() == static_cast<std::size_t>(n));
    long best = -1;
    testing::for_each_assignment(static_cast<std::size_t>(n), [&](const auto& x) {
      const long e = labs_energy(x, w);
      CHECK(p.objective(testing::poly_value(p.inst, x)) == e);
      if (best < 0 || e < best) best = e;
    });
    const auto oracle = brute_force(p.inst, std::nullopt, 1);
    CHECK(p.objective(oracle[0].value) == best);
    if (n == 4) CHECK(best == 1);
  }
  CHECK(gen_labs(20, 3) == gen_labs(20, 3));
}

TEST_CASE("pipeline encodings agree") {
  std::mt19937_64 rng(83);
  for (int iter = 0; iter < 100; ++iter) {
    ParsedInstance p;
    p.inst = testing::random_instance(rng);
    p.offset = 0;
    const auto expected = brute_force(p.inst, std::nullopt, 1)[0].value;
    for (Encoding e : {Encoding::automatic, Encoding::basic, Encoding::ordered}) {
      SolveOptions o;
      o.encoding = e;
      const auto best = solve(p, o);
      REQUIRE(best.has_value());
      CHECK(best->value == expected);
      CHECK(testing::poly_value(p.inst, best->x) == expected);
    }
  }
}

TEST_CASE("pipeline with a knapsack constraint") {
  ParsedInstance p = parse_instance("-3 v1 v2 v3\n4 v4 v5\n5 v2 v3 v4 v5 v6\n");
  SolveOptions o;
  o.knapsack = KnapsackSpec{0, 3, {1, 1, 1, 1, 1, 1}};
  const auto best = solve(p, o);
  REQUIRE(best.has_value());
  CHECK(best->value == 4);
  o.knapsack = KnapsackSpec{7, 9, {1, 1, 1, 1, 1, 1}};
  CHECK_FALSE(solve(p, o).has_value());
  o.knapsack = KnapsackSpec{0, 1, {1, 1}};
  CHECK_THROWS_AS(solve(p, o), std::invalid_argument);
}
