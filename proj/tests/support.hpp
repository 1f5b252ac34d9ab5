#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "kcbpo/circuit.hpp"
#include "kcbpo/encoder.hpp"
#include "kcbpo/hypergraph.hpp"
#include "kcbpo/rational.hpp"

namespace testing {

using kcbpo::Rational;

struct InstanceShape {
  std::size_t max_vertices = 10;
  std::size_t max_edges = 15;
  std::size_t max_edge_size = 5;
  bool literals = true;
  bool integer_profits = false;
};

inline kcbpo::LiteralInstance random_instance(std::mt19937_64& rng, const InstanceShape& shape = {}) {
  std::uniform_int_distribution<std::size_t> nv(1, shape.max_vertices);
  const std::size_t n = nv(rng);
  std::uniform_int_distribution<std::size_t> ne(0, shape.max_edges);
  const std::size_t m = ne(rng);
  std::vector<std::vector<std::uint32_t>> edges;
  std::vector<std::vector<bool>> sigma;
  std::vector<Rational> profit;
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4), coin(0, 1);
  for (std::size_t e = 0; e < m; ++e) {
    std::uniform_int_distribution<std::size_t> sz(1, std::min(n, shape.max_edge_size));
    std::vector<std::uint32_t> all(n);
    for (std::uint32_t v = 0; v < n; ++v) all[v] = v;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(sz(rng));
    std::sort(all.begin(), all.end());
    std::vector<bool> pol;
    for (std::size_t j = 0; j < all.size(); ++j) pol.push_back(!shape.literals || coin(rng) == 1);
    edges.push_back(all);
    sigma.push_back(pol);
    Rational p(num(rng), shape.integer_profits ? 1 : den(rng));
    p.canonicalize();
    profit.push_back(p);
  }
  return kcbpo::LiteralInstance(kcbpo::Hypergraph(n, edges), sigma, profit);
}

// All assignments over n variables as vectors with entry [var-1].
inline void for_each_assignment(std::size_t n, const std::function<void(const std::vector<std::uint8_t>&)>& f) {
  std::vector<std::uint8_t> a(n, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) a[i] = (mask >> i) & 1u;
    f(a);
  }
}

// Independent CNF check.
inline bool cnf_satisfied(const kcbpo::CnfFormula& f, const std::vector<std::uint8_t>& a) {
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (std::int32_t lit : clause) {
      const bool value = a[static_cast<std::size_t>(std::abs(lit)) - 1] != 0;
      if ((lit > 0) == value) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

inline std::set<std::vector<std::uint8_t>> cnf_models(const kcbpo::CnfFormula& f) {
  std::set<std::vector<std::uint8_t>> out;
  for_each_assignment(f.num_vars(), [&](const auto& a) {
    if (cnf_satisfied(f, a)) out.insert(a);
  });
  return out;
}

// Recursive evaluation of an NNF without using the library's evaluator.
inline bool eval_circuit(const kcbpo::NnfCircuit& c, const std::vector<std::uint8_t>& a) {
  std::vector<std::uint8_t> val(c.node_count());
  for (std::uint32_t n = 0; n < c.node_count(); ++n) {
    switch (c.kind(n)) {
      case kcbpo::NodeKind::False: val[n] = 0; break;
      case kcbpo::NodeKind::True: val[n] = 1; break;
      case kcbpo::NodeKind::Literal: {
        const std::int32_t lit = c.label(n);
        val[n] = (a[static_cast<std::size_t>(std::abs(lit)) - 1] != 0) == (lit > 0);
        break;
      }
      case kcbpo::NodeKind::And:
        val[n] = 1;
        for (std::uint32_t ch : c.children(n)) val[n] &= val[ch];
        break;
      case kcbpo::NodeKind::Or:
        val[n] = 0;
        for (std::uint32_t ch : c.children(n)) val[n] |= val[ch];
        break;
    }
  }
  return val[c.output()] != 0;
}

inline std::set<std::vector<std::uint8_t>> circuit_models(const kcbpo::NnfCircuit& c) {
  std::set<std::vector<std::uint8_t>> out;
  for_each_assignment(c.num_vars(), [&](const auto& a) {
    if (eval_circuit(c, a)) out.insert(a);
  });
  return out;
}

// Direct evaluation of the polynomial at x (by vertex index).
inline Rational poly_value(const kcbpo::LiteralInstance& inst, const std::vector<std::uint8_t>& x) {
  Rational total = 0;
  for (std::size_t e = 0; e < inst.num_edges(); ++e) {
    Rational term = inst.profit[e];
    const auto& edge = inst.hypergraph.edge(e);
    for (std::size_t j = 0; j < edge.size(); ++j) {
      const int xv = x[edge[j]];
      term *= inst.sigma[e][j] ? xv : 1 - xv;
    }
    total += term;
  }
  return total;
}

// Exhaustive beta-acyclicity: some sequence of nest-point removals empties the
// vertex set. Memoized over removed-vertex masks.
inline bool exhaustive_beta_acyclic(const kcbpo::Hypergraph& h) {
  const std::size_t n = h.num_vertices();
  std::vector<std::uint32_t> edge_masks;
  for (const auto& e : h.edges()) {
    std::uint32_t m = 0;
    for (std::uint32_t v : e) m |= 1u << v;
    edge_masks.push_back(m);
  }
  std::map<std::uint32_t, bool> memo;
  std::function<bool(std::uint32_t)> go = [&](std::uint32_t removed) -> bool {
    if (removed == (n == 32 ? ~0u : (1u << n) - 1)) return true;
    auto it = memo.find(removed);
    if (it != memo.end()) return it->second;
    bool ok = false;
    for (std::uint32_t v = 0; v < n && !ok; ++v) {
      if (removed >> v & 1u) continue;
      std::vector<std::uint32_t> incident;
      for (std::uint32_t m : edge_masks) {
        if (m >> v & 1u) incident.push_back(m & ~removed);
      }
      bool chain = true;
      for (std::uint32_t a : incident) {
        for (std::uint32_t b : incident) {
          if ((a & b) != a && (a & b) != b) chain = false;
        }
      }
      if (chain) ok = go(removed | (1u << v));
    }
    memo[removed] = ok;
    return ok;
  };
  return go(0);
}

// Independent tree decomposition check.
inline bool valid_decomposition(const kcbpo::TreeDecomposition& td, const kcbpo::Graph& g) {
  const std::size_t b = td.bags.size();
  if (b == 0) return g.num_nodes() == 0;
  if (td.tree_edges.size() != b - 1) return false;
  // connected tree
  std::vector<std::vector<std::uint32_t>> adj(b);
  for (auto [x, y] : td.tree_edges) {
    if (x >= b || y >= b) return false;
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  std::vector<bool> seen(b, false);
  std::vector<std::uint32_t> stack{0};
  seen[0] = true;
  std::size_t count = 0;
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    ++count;
    for (auto y : adj[x]) {
      if (!seen[y]) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  if (count != b) return false;
  auto contains = [&](std::uint32_t bag, std::uint32_t v) {
    return std::find(td.bags[bag].begin(), td.bags[bag].end(), v) != td.bags[bag].end();
  };
  for (std::uint32_t v = 0; v < g.num_nodes(); ++v) {
    // bags containing v must form a nonempty connected subtree
    std::vector<std::uint32_t> holders;
    for (std::uint32_t i = 0; i < b; ++i) {
      if (contains(i, v)) holders.push_back(i);
    }
    if (holders.empty()) return false;
    std::vector<bool> mark(b, false);
    std::vector<std::uint32_t> st{holders[0]};
    mark[holders[0]] = true;
    std::size_t reached = 0;
    while (!st.empty()) {
      const auto x = st.back();
      st.pop_back();
      ++reached;
      for (auto y : adj[x]) {
        if (!mark[y] && contains(y, v)) {
          mark[y] = true;
          st.push_back(y);
        }
      }
    }
    if (reached != holders.size()) return false;
  }
  for (auto [u, v] : g.edge_list()) {
    bool covered = false;
    for (std::uint32_t i = 0; i < b && !covered; ++i) covered = contains(i, u) && contains(i, v);
    if (!covered) return false;
  }
  return true;
}

inline kcbpo::LiteralInstance paper_example() {
  kcbpo::Hypergraph h(6, {{0, 1, 2}, {3, 4}, {1, 2, 3, 4, 5}});
  return kcbpo::LiteralInstance::plain(h, {Rational(-3), Rational(4), Rational(5)});
}

// Random beta-acyclic hypergraph: built by adding vertices that become nest
// points in reverse (each new vertex joins a chain of nested edges).
inline kcbpo::Hypergraph random_beta_acyclic(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::vector<std::uint32_t>> edges;
  std::uniform_int_distribution<int> coin(0, 2);
  // Interval hypergraphs are beta-acyclic.
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a; b < n; ++b) {
      if (coin(rng) == 0 && b - a < 4) {
        std::vector<std::uint32_t> e;
        for (std::uint32_t v = a; v <= b; ++v) e.push_back(v);
        edges.push_back(e);
      }
    }
  }
  return kcbpo::Hypergraph(n, edges);
}

}  // namespace testing
