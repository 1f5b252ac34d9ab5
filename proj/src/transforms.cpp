#include "kcbpo/transforms.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace kcbpo {

namespace {

using Copies = std::vector<std::pair<std::int64_t, std::uint32_t>>;  // sorted by sum

struct SumCircuit {
  NnfBuilder builder;
  Copies roots;
  std::size_t normalized_size = 0;
};

// For every node of the smoothed, binarized circuit, one copy per attainable
// value of sum(coeff[x] * x); copies of a node partition its models.
SumCircuit split_by_sum(const NnfCircuit& input, const std::vector<std::int64_t>& coeff) {
  require_structure(input, true, false, "sum transform");
  if (coeff.size() != input.num_vars()) throw std::invalid_argument("coefficient vector does not match the universe");
  const NnfCircuit c = binarize_and(smooth(input, true));
  const auto vars = variable_sets(c);

  SumCircuit out{NnfBuilder(c.num_vars()), {}, c.node_count()};
  NnfBuilder& b = out.builder;
  for (const auto& a : c.annotations()) b.annotation_label(a);

  auto weight_of = [&](std::uint32_t var) { return coeff[var - 1]; };
  std::vector<Copies> copies(c.node_count());
  std::map<std::int64_t, std::vector<std::uint32_t>> groups;
  std::vector<std::uint32_t> kids;

  for (std::uint32_t n = 0; n < c.node_count(); ++n) {
    auto& mine = copies[n];
    const auto children = c.children(n);
    groups.clear();
    switch (c.kind(n)) {
      case NodeKind::False: continue;
      case NodeKind::True: mine.emplace_back(0, b.true_node()); continue;
      case NodeKind::Literal: {
        const std::int32_t lit = c.label(n);
        mine.emplace_back(lit > 0 ? weight_of(static_cast<std::uint32_t>(lit)) : 0, b.literal(lit));
        continue;
      }
      case NodeKind::Or:
        for (std::uint32_t ch : children) {
          for (auto [s, node] : copies[ch]) groups[s].push_back(node);
        }
        for (auto& [s, nodes] : groups) mine.emplace_back(s, nodes.size() == 1 ? nodes[0] : b.add_or(nodes, c.label(n)));
        continue;
      case NodeKind::And:
        break;
    }
    if (children.empty()) {
      mine.emplace_back(0, b.true_node());
      continue;
    }
    if (children.size() == 1) {
      mine = copies[children[0]];
      continue;
    }
    const std::uint32_t left = children[0], right = children[1];
    for (auto [a, na] : copies[left]) {
      for (auto [bb, nb] : copies[right]) groups[a + bb].push_back(b.add_and({na, nb}));
    }
    std::int32_t label = 0;
    for (auto& [s, nodes] : groups) {
      if (nodes.size() == 1) {
        mine.emplace_back(s, nodes[0]);
        continue;
      }
      // Children differ in the partial sum over the left factor.
      if (label == 0) {
        SumAnnotation ann;
        vars[left].for_each([&](std::size_t v) {
          if (v > 0 && weight_of(static_cast<std::uint32_t>(v)) != 0) ann.emplace_back(static_cast<std::uint32_t>(v), weight_of(static_cast<std::uint32_t>(v)));
        });
        label = b.annotation_label(std::move(ann));
      }
      mine.emplace_back(s, b.add_or(nodes, label));
    }
  }
  out.roots = copies[c.output()];
  return out;
}

NnfCircuit select_sums(SumCircuit sc, const std::vector<std::int64_t>& coeff, auto&& keep) {
  NnfBuilder& b = sc.builder;
  std::vector<std::uint32_t> chosen;
  for (auto [s, node] : sc.roots) {
    if (keep(s)) chosen.push_back(node);
  }
  std::uint32_t out;
  if (chosen.empty()) {
    out = b.add_false();
  } else if (chosen.size() == 1) {
    out = chosen[0];
  } else {
    SumAnnotation ann;
    for (std::size_t v = 0; v < coeff.size(); ++v) {
      if (coeff[v] != 0) ann.emplace_back(static_cast<std::uint32_t>(v + 1), coeff[v]);
    }
    out = b.add_or(chosen, b.annotation_label(std::move(ann)));
  }
  return prune(std::move(b).build(out, {true, true, true}));
}

std::vector<std::int64_t> unit_coefficients(std::uint32_t num_vars, const std::vector<std::uint32_t>& vars) {
  std::vector<std::int64_t> coeff(num_vars, 0);
  for (std::uint32_t v : vars) {
    if (v == 0 || v > num_vars) throw std::invalid_argument("counted variable outside the universe");
    if (coeff[v - 1] != 0) throw std::invalid_argument("counted variable listed twice");
    coeff[v - 1] = 1;
  }
  return coeff;
}

}  // namespace

CountingResult counting_transform(const NnfCircuit& c, const std::vector<std::uint32_t>& vars) {
  const auto coeff = unit_coefficients(c.num_vars(), vars);
  SumCircuit sc = split_by_sum(c, coeff);
  const std::size_t p = vars.size();
  const std::size_t bound = 3 * std::max<std::size_t>(p, 1) * std::max<std::size_t>(p, 1) * sc.normalized_size;
  if (sc.builder.node_count() > bound) throw std::logic_error("counting_transform exceeded its size bound");

  CountingResult result;
  result.roots.assign(p + 1, UINT32_MAX);
  std::vector<std::uint32_t> nonempty;
  for (auto [s, node] : sc.roots) {
    result.roots[static_cast<std::size_t>(s)] = node;
    nonempty.push_back(node);
  }
  NnfBuilder& b = sc.builder;
  const std::uint32_t f = b.false_node();
  for (auto& r : result.roots) {
    if (r == UINT32_MAX) r = f;
  }
  std::uint32_t out = f;
  if (nonempty.size() == 1) {
    out = nonempty[0];
  } else if (nonempty.size() > 1) {
    SumAnnotation ann;
    for (std::uint32_t v : vars) ann.emplace_back(v, 1);
    out = b.add_or(nonempty, b.annotation_label(std::move(ann)));
  }
  result.circuit = std::move(b).build(out, {true, true, true});
  return result;
}

NnfCircuit restrict_cardinality(const NnfCircuit& c, const CardinalitySpec& spec) {
  const auto coeff = unit_coefficients(c.num_vars(), spec.vars);
  for (std::uint32_t s : spec.sums) {
    if (s > spec.vars.size()) throw std::invalid_argument("admissible sum exceeds the number of counted variables");
  }
  std::vector<std::uint32_t> sums = spec.sums;
  std::sort(sums.begin(), sums.end());
  return select_sums(split_by_sum(c, coeff), coeff, [&](std::int64_t s) {
    return std::binary_search(sums.begin(), sums.end(), static_cast<std::uint32_t>(s));
  });
}

NnfCircuit knapsack_transform(const NnfCircuit& c, const std::vector<std::int64_t>& coeffs, std::int64_t lower,
                              std::int64_t upper) {
  std::int64_t magnitude = 0;
  for (std::int64_t v : coeffs) {
    if (v == INT64_MIN || __builtin_add_overflow(magnitude, std::llabs(v), &magnitude) || magnitude > (INT64_MAX >> 2)) {
      throw std::invalid_argument("knapsack coefficients are too large");
    }
  }
  return select_sums(split_by_sum(c, coeffs), coeffs, [&](std::int64_t s) { return lower <= s && s <= upper; });
}

}  // namespace kcbpo
