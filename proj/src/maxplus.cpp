#include "kcbpo/maxplus.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace kcbpo {

Rational WeightFunction::total(const std::vector<std::uint8_t>& assignment) const {
  Rational sum = 0;
  for (std::uint32_t var = 1; var <= num_vars(); ++var) sum += weight(var, assignment[var - 1]);
  return sum;
}

WeightFunction weights_from_profits(const LiteralInstance& inst) {
  const auto n = static_cast<std::uint32_t>(inst.num_vertices());
  WeightFunction w(static_cast<std::uint32_t>(n + inst.num_edges()));
  for (std::uint32_t e = 0; e < inst.num_edges(); ++e) w.set(n + e + 1, 1, inst.profit[e]);
  return w;
}

std::vector<std::uint8_t> project_solution(const std::vector<std::uint8_t>& tau, const LiteralInstance& inst) {
  const std::size_t n = inst.num_vertices();
  if (tau.size() != n + inst.num_edges()) throw std::invalid_argument("project_solution: assignment has the wrong size");
  for (std::size_t e = 0; e < inst.num_edges(); ++e) {
    const auto& edge = inst.hypergraph.edge(e);
    bool product = true;
    for (std::size_t j = 0; j < edge.size(); ++j) product = product && ((tau[edge[j]] != 0) == inst.sigma[e][j]);
    if ((tau[n + e] != 0) != product) throw std::invalid_argument("project_solution: assignment is not in the multilinear set");
  }
  return {tau.begin(), tau.begin() + static_cast<std::ptrdiff_t>(n)};
}

namespace {

// Weights scaled to integers and shifted so that the better bit of every
// variable has weight 0: delta(x, b) = W(x, b) - max_b' W(x, b') <= 0.
struct ScaledWeights {
  BigInt scale;
  BigInt base;  // sum over variables of max_b W(x, b)
  std::vector<BigInt> delta;  // 2*(var-1) + bit
  std::vector<std::uint8_t> best_bit;
  bool fits_int64 = false;
  std::vector<std::int64_t> delta64;
};

ScaledWeights scale_weights(const WeightFunction& w) {
  ScaledWeights s;
  std::vector<Rational> all;
  for (std::uint32_t var = 1; var <= w.num_vars(); ++var) {
    all.push_back(w.weight(var, 0));
    all.push_back(w.weight(var, 1));
  }
  s.scale = common_denominator(all);
  s.base = 0;
  BigInt magnitude = 0;
  for (std::uint32_t var = 1; var <= w.num_vars(); ++var) {
    const BigInt w0 = BigInt(Rational(w.weight(var, 0) * s.scale));
    const BigInt w1 = BigInt(Rational(w.weight(var, 1) * s.scale));
    const BigInt hi = std::max(w0, w1);
    s.base += hi;
    s.delta.push_back(w0 - hi);
    s.delta.push_back(w1 - hi);
    s.best_bit.push_back(w1 > w0 ? 1 : 0);
    magnitude += abs(w0 - hi) + abs(w1 - hi);
  }
  s.fits_int64 = magnitude < (BigInt(1) << 61);
  if (s.fits_int64) {
    for (const BigInt& d : s.delta) s.delta64.push_back(d.get_si());
  }
  return s;
}

Rational finish(const ScaledWeights& s, const BigInt& val) { return ratio(s.base + val, s.scale); }

BigInt to_big(std::int64_t v) { return BigInt(static_cast<long>(v)); }
BigInt to_big(const BigInt& v) { return v; }

template <class V>
V leaf_delta(const ScaledWeights& s, std::int32_t lit);
template <>
std::int64_t leaf_delta<std::int64_t>(const ScaledWeights& s, std::int32_t lit) {
  return s.delta64[2 * (static_cast<std::size_t>(std::abs(lit)) - 1) + (lit > 0 ? 1 : 0)];
}
template <>
BigInt leaf_delta<BigInt>(const ScaledWeights& s, std::int32_t lit) {
  return s.delta[2 * (static_cast<std::size_t>(std::abs(lit)) - 1) + (lit > 0 ? 1 : 0)];
}

template <class V>
Optimum optimize_impl(const NnfCircuit& c, const ScaledWeights& s) {
  const std::uint32_t nodes = c.node_count();
  std::vector<V> value(nodes);
  std::vector<std::uint8_t> feasible(nodes, 0);
  std::vector<std::uint32_t> choice(nodes, 0);
  for (std::uint32_t n = 0; n < nodes; ++n) {
    switch (c.kind(n)) {
      case NodeKind::False: break;
      case NodeKind::True:
        feasible[n] = 1;
        value[n] = 0;
        break;
      case NodeKind::Literal:
        feasible[n] = 1;
        value[n] = leaf_delta<V>(s, c.label(n));
        break;
      case NodeKind::And: {
        V sum = 0;
        bool ok = true;
        for (std::uint32_t ch : c.children(n)) {
          if (!feasible[ch]) {
            ok = false;
            break;
          }
          sum += value[ch];
        }
        feasible[n] = ok;
        if (ok) value[n] = std::move(sum);
        break;
      }
      case NodeKind::Or: {
        const auto kids = c.children(n);
        for (std::uint32_t i = 0; i < kids.size(); ++i) {
          const std::uint32_t ch = kids[i];
          if (!feasible[ch]) continue;
          if (!feasible[n] || value[ch] > value[n]) {
            feasible[n] = 1;
            value[n] = value[ch];
            choice[n] = i;
          }
        }
        break;
      }
    }
  }

  Optimum result;
  const std::uint32_t out = c.output();
  if (!feasible[out]) return result;
  result.feasible = true;
  result.value = finish(s, to_big(value[out]));

  std::vector<std::int8_t> assigned(c.num_vars(), -1);
  std::vector<std::uint8_t> visited(nodes, 0);
  std::vector<std::uint32_t> stack{out};
  while (!stack.empty()) {
    const std::uint32_t n = stack.back();
    stack.pop_back();
    if (visited[n]) continue;
    visited[n] = 1;
    switch (c.kind(n)) {
      case NodeKind::Literal: {
        const std::int32_t lit = c.label(n);
        assigned[static_cast<std::size_t>(std::abs(lit)) - 1] = lit > 0 ? 1 : 0;
        break;
      }
      case NodeKind::And:
        for (std::uint32_t ch : c.children(n)) stack.push_back(ch);
        break;
      case NodeKind::Or: stack.push_back(c.children(n)[choice[n]]); break;
      default: break;
    }
  }
  result.witness.resize(c.num_vars());
  for (std::uint32_t v = 0; v < c.num_vars(); ++v) {
    result.witness[v] = assigned[v] >= 0 ? static_cast<std::uint8_t>(assigned[v]) : s.best_bit[v];
  }
  return result;
}

template <class V>
struct Entry {
  V value;
  std::uint32_t a;  // Or: child position; And: entry index in first child
  std::uint32_t b;  // Or: entry index in that child; And: entry index in second child
};

template <class V>
std::vector<RankedAssignment> top_k_impl(const NnfCircuit& c, const ScaledWeights& s, std::size_t k) {
  const std::uint32_t nodes = c.node_count();
  std::vector<std::vector<Entry<V>>> lists(nodes);
  for (std::uint32_t n = 0; n < nodes; ++n) {
    auto& out = lists[n];
    const auto kids = c.children(n);
    switch (c.kind(n)) {
      case NodeKind::False: break;
      case NodeKind::True: out.push_back({V(0), 0, 0}); break;
      case NodeKind::Literal: out.push_back({leaf_delta<V>(s, c.label(n)), 0, 0}); break;
      case NodeKind::And: {
        if (kids.empty()) {
          out.push_back({V(0), 0, 0});
        } else if (kids.size() == 1) {
          const auto& only = lists[kids[0]];
          for (std::uint32_t i = 0; i < only.size(); ++i) out.push_back({only[i].value, i, 0});
        } else {
          const auto& left = lists[kids[0]];
          const auto& right = lists[kids[1]];
          if (left.empty() || right.empty()) break;
          // Best sums first; ties resolved by the smaller index pair.
          using Item = std::tuple<V, std::uint32_t, std::uint32_t>;
          auto worse = [](const Item& x, const Item& y) {
            if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
            return std::make_pair(std::get<1>(x), std::get<2>(x)) > std::make_pair(std::get<1>(y), std::get<2>(y));
          };
          std::priority_queue<Item, std::vector<Item>, decltype(worse)> heap(worse);
          heap.emplace(left[0].value + right[0].value, 0, 0);
          while (!heap.empty() && out.size() < k) {
            auto [v, i, j] = heap.top();
            heap.pop();
            out.push_back({v, i, j});
            if (j + 1 < right.size()) heap.emplace(left[i].value + right[j + 1].value, i, j + 1);
            if (j == 0 && i + 1 < left.size()) heap.emplace(left[i + 1].value + right[0].value, i + 1, 0);
          }
        }
        break;
      }
      case NodeKind::Or: {
        std::vector<std::uint32_t> pos(kids.size(), 0);
        while (out.size() < k) {
          std::int64_t best = -1;
          for (std::uint32_t i = 0; i < kids.size(); ++i) {
            const auto& list = lists[kids[i]];
            if (pos[i] >= list.size()) continue;
            if (best < 0 || list[pos[i]].value > lists[kids[best]][pos[best]].value) best = i;
          }
          if (best < 0) break;
          const auto i = static_cast<std::uint32_t>(best);
          out.push_back({lists[kids[i]][pos[i]].value, i, pos[i]});
          ++pos[i];
        }
        break;
      }
    }
  }

  std::vector<RankedAssignment> result;
  const auto& top = lists[c.output()];
  for (std::uint32_t r = 0; r < top.size(); ++r) {
    RankedAssignment ranked;
    ranked.assignment.assign(c.num_vars(), 0);
    ranked.value = finish(s, to_big(top[r].value));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{c.output(), r}};
    while (!stack.empty()) {
      auto [n, idx] = stack.back();
      stack.pop_back();
      const Entry<V>& entry = lists[n][idx];
      const auto kids = c.children(n);
      switch (c.kind(n)) {
        case NodeKind::Literal: {
          const std::int32_t lit = c.label(n);
          ranked.assignment[static_cast<std::size_t>(std::abs(lit)) - 1] = lit > 0 ? 1 : 0;
          break;
        }
        case NodeKind::And:
          if (kids.size() == 1) {
            stack.emplace_back(kids[0], entry.a);
          } else if (kids.size() == 2) {
            stack.emplace_back(kids[0], entry.a);
            stack.emplace_back(kids[1], entry.b);
          }
          break;
        case NodeKind::Or: stack.emplace_back(kids[entry.a], entry.b); break;
        default: break;
      }
    }
    result.push_back(std::move(ranked));
  }
  return result;
}

}  // namespace

Optimum optimize(const NnfCircuit& c, const WeightFunction& w) {
  require_structure(c, true, false, "optimize");
  if (w.num_vars() != c.num_vars()) throw std::invalid_argument("optimize: weight function and circuit universes differ");
  const ScaledWeights s = scale_weights(w);
  return s.fits_int64 ? optimize_impl<std::int64_t>(c, s) : optimize_impl<BigInt>(c, s);
}

std::vector<RankedAssignment> top_k(const NnfCircuit& c, const WeightFunction& w, std::size_t k) {
  require_structure(c, true, false, "top_k");
  if (w.num_vars() != c.num_vars()) throw std::invalid_argument("top_k: weight function and circuit universes differ");
  if (k == 0) throw std::invalid_argument("top_k: k must be positive");
  const NnfCircuit normal = binarize_and(smooth(c, true));
  const ScaledWeights s = scale_weights(w);
  return s.fits_int64 ? top_k_impl<std::int64_t>(normal, s, k) : top_k_impl<BigInt>(normal, s, k);
}

}  // namespace kcbpo
