#pragma once

#include <random>
#include <vector>

#include "kcbpo/hypergraph.hpp"

namespace testing {

// Cycle hypergraph on m >= 3 edges: consecutive edges share 1..2 vertices,
// and every edge may carry up to `extra` private vertices.
inline kcbpo::Hypergraph random_cycle(std::mt19937_64& rng, std::size_t m, std::size_t extra) {
  std::uniform_int_distribution<int> shared(1, 2);
  std::uniform_int_distribution<std::size_t> priv(0, extra);
  std::vector<std::vector<std::uint32_t>> edges(m);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const int s = shared(rng);
    for (int j = 0; j < s; ++j) {
      edges[i].push_back(next);
      edges[(i + 1) % m].push_back(next);
      ++next;
    }
    const std::size_t p = priv(rng);
    for (std::size_t j = 0; j < p; ++j) edges[i].push_back(next++);
  }
  // Shuffle vertex ids so that the structure is not aligned with the labels.
  std::vector<std::uint32_t> perm(next);
  for (std::uint32_t v = 0; v < next; ++v) perm[v] = v;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (auto& e : edges) {
    for (auto& v : e) v = perm[v];
  }
  return kcbpo::Hypergraph(next, edges);
}

}  // namespace testing
