#include "kcbpo/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <queue>

#include "kcbpo/errors.hpp"
#include "kcbpo/kernels.hpp"

namespace kcbpo {

namespace {

// Dense coefficients of the polynomial in the monomial basis, scaled to
// integers: value(mask) = sum over subsets T of mask of table[T] / scale.
// nullopt if any partial sum could leave int64.
std::optional<std::vector<std::int64_t>> integer_expansion(const LiteralInstance& inst, const BigInt& scale) {
  const std::size_t n = inst.num_vertices();
  std::vector<std::int64_t> table(std::size_t{1} << n, 0);
  constexpr std::int64_t kLimit = std::int64_t{1} << 62;
  std::int64_t magnitude = 0;
  for (std::size_t e = 0; e < inst.num_edges(); ++e) {
    const auto& edge = inst.hypergraph.edge(e);
    std::uint32_t pos = 0;
    std::vector<std::uint32_t> neg;
    for (std::size_t j = 0; j < edge.size(); ++j) {
      if (inst.sigma[e][j]) {
        pos |= 1u << edge[j];
      } else {
        neg.push_back(edge[j]);
      }
    }
    const auto c = to_int64(Rational(inst.profit[e] * scale));
    if (!c || *c >= kLimit || *c <= -kLimit) return std::nullopt;
    // The expansion has 2^|neg| coefficients of magnitude |c|.
    std::int64_t contribution = std::llabs(*c);
    for (std::size_t i = 0; i < neg.size(); ++i) {
      if (__builtin_add_overflow(contribution, contribution, &contribution)) return std::nullopt;
    }
    if (__builtin_add_overflow(magnitude, contribution, &magnitude) || magnitude >= kLimit) return std::nullopt;
    // prod over negated v of (1 - x_v)
    for (std::uint32_t sub = 0; sub < (1u << neg.size()); ++sub) {
      std::uint32_t mask = pos;
      for (std::size_t i = 0; i < neg.size(); ++i) {
        if (sub >> i & 1u) mask |= 1u << neg[i];
      }
      table[mask] += std::popcount(sub) % 2 == 0 ? *c : -*c;
    }
  }
  return table;
}

// Key whose numeric order is the lexicographic order of points.
std::uint32_t lex_key(std::uint32_t mask, std::size_t n) {
  std::uint32_t key = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (mask >> v & 1u) key |= 1u << (n - 1 - v);
  }
  return key;
}

template <class V>
std::vector<std::pair<V, std::uint32_t>> select_best(std::size_t n, std::size_t k, const PointFilter& feasible,
                                                     auto&& value_of) {
  // Min-heap of the current best k under (value desc, lex asc).
  using Item = std::pair<V, std::uint32_t>;  // (value, lex key)
  auto better = [](const Item& a, const Item& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; };
  std::priority_queue<Item, std::vector<Item>, decltype(better)> heap(better);
  const std::uint32_t total = std::uint32_t{1} << n;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    if (feasible && !feasible(mask)) continue;
    Item item{value_of(mask), lex_key(mask, n)};
    if (heap.size() < k) {
      heap.push(std::move(item));
    } else if (better(item, heap.top())) {
      heap.pop();
      heap.push(std::move(item));
    }
  }
  std::vector<Item> items;
  while (!heap.empty()) {
    items.push_back(heap.top());
    heap.pop();
  }
  std::reverse(items.begin(), items.end());
  return items;
}

}  // namespace

std::vector<OraclePoint> brute_force(const LiteralInstance& inst, const PointFilter& feasible, std::size_t k) {
  const std::size_t n = inst.num_vertices();
  if (n > kOracleMaxVertices) {
    throw GuardError("brute force refused: " + std::to_string(n) + " vertices exceed the limit of " +
                     std::to_string(kOracleMaxVertices));
  }
  if (k == 0) return {};
  const BigInt scale = common_denominator(inst.profit);

  auto to_points = [&](auto items, auto&& to_rational) {
    std::vector<OraclePoint> out;
    for (auto& [value, key] : items) {
      OraclePoint p;
      p.x.resize(n);
      for (std::size_t v = 0; v < n; ++v) p.x[v] = (key >> (n - 1 - v)) & 1u;
      p.value = to_rational(value);
      out.push_back(std::move(p));
    }
    return out;
  };

  if (auto table = integer_expansion(inst, scale)) {
    kernels::subset_sum(*table, static_cast<unsigned>(n));
    auto items = select_best<std::int64_t>(n, k, feasible, [&](std::uint32_t mask) { return (*table)[mask]; });
    return to_points(std::move(items), [&](std::int64_t v) { return ratio(BigInt(static_cast<long>(v)), scale); });
  }
  std::vector<std::uint8_t> x(n);
  auto items = select_best<Rational>(n, k, feasible, [&](std::uint32_t mask) {
    for (std::size_t v = 0; v < n; ++v) x[v] = mask >> v & 1u;
    return evaluate_polynomial(inst, x);
  });
  return to_points(std::move(items), [](const Rational& v) { return v; });
}

std::vector<OraclePoint> brute_force(const LiteralInstance& inst, const std::optional<CardinalitySpec>& spec,
                                     std::size_t k) {
  if (!spec) return brute_force(inst, PointFilter{}, k);
  std::uint32_t counted = 0;
  for (std::uint32_t v : spec->vars) {
    if (v == 0 || v > inst.num_vertices()) throw std::invalid_argument("cardinality variable outside the vertex set");
    counted |= 1u << (v - 1);
  }
  std::vector<bool> allowed(spec->vars.size() + 1, false);
  for (std::uint32_t s : spec->sums) {
    if (s < allowed.size()) allowed[s] = true;
  }
  return brute_force(inst, PointFilter([&](std::uint32_t mask) { return allowed[std::popcount(mask & counted)]; }), k);
}

}  // namespace kcbpo
