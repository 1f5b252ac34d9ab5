#include "kcbpo/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "kcbpo/bitset.hpp"

namespace kcbpo {

namespace {

void normalize_edges(std::size_t n, std::vector<std::vector<std::uint32_t>>& edges, bool allow_empty) {
  for (auto& e : edges) {
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw std::invalid_argument("hypergraph edge repeats a vertex");
    }
    if (!e.empty() && e.back() >= n) throw std::invalid_argument("hypergraph edge names an unknown vertex");
    if (e.empty() && !allow_empty) throw std::invalid_argument("empty hypergraph edge");
  }
}

std::vector<std::int64_t> default_labels(std::size_t n) {
  std::vector<std::int64_t> labels(n);
  std::iota(labels.begin(), labels.end(), 1);
  return labels;
}

}  // namespace

Hypergraph::Hypergraph(std::size_t num_vertices, std::vector<std::vector<std::uint32_t>> edges,
                       bool allow_empty_edges)
    : Hypergraph(default_labels(num_vertices), std::move(edges), allow_empty_edges) {}

Hypergraph::Hypergraph(std::vector<std::int64_t> labels, std::vector<std::vector<std::uint32_t>> edges,
                       bool allow_empty_edges)
    : labels_(std::move(labels)), edges_(std::move(edges)) {
  if (!std::is_sorted(labels_.begin(), labels_.end()) ||
      std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end()) {
    throw std::invalid_argument("vertex labels must be strictly increasing");
  }
  normalize_edges(labels_.size(), edges_, allow_empty_edges);
}

LiteralInstance::LiteralInstance(Hypergraph h, std::vector<std::vector<bool>> s, std::vector<Rational> p)
    : hypergraph(std::move(h)), sigma(std::move(s)), profit(std::move(p)) {
  if (sigma.size() != hypergraph.num_edges() || profit.size() != hypergraph.num_edges()) {
    throw std::invalid_argument("sigma/profit size does not match the edge count");
  }
  for (std::size_t e = 0; e < sigma.size(); ++e) {
    if (sigma[e].size() != hypergraph.edge(e).size()) {
      throw std::invalid_argument("sigma must be defined exactly on the vertices of its edge");
    }
  }
}

LiteralInstance LiteralInstance::plain(Hypergraph h, std::vector<Rational> profit) {
  std::vector<std::vector<bool>> sigma;
  sigma.reserve(h.num_edges());
  for (const auto& e : h.edges()) sigma.emplace_back(e.size(), true);
  return LiteralInstance(std::move(h), std::move(sigma), std::move(profit));
}

Rational evaluate_polynomial(const LiteralInstance& inst, const std::vector<std::uint8_t>& x) {
  Rational total = 0;
  for (std::size_t e = 0; e < inst.num_edges(); ++e) {
    const auto& edge = inst.hypergraph.edge(e);
    bool on = true;
    for (std::size_t j = 0; j < edge.size() && on; ++j) {
      on = (x[edge[j]] != 0) == inst.sigma[e][j];
    }
    if (on) total += inst.profit[e];
  }
  return total;
}

void Graph::add_edge(std::uint32_t a, std::uint32_t b) {
  if (a == b) return;
  auto insert = [](std::vector<std::uint32_t>& list, std::uint32_t v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it == list.end() || *it != v) list.insert(it, v);
  };
  insert(adj_[a], b);
  insert(adj_[b], a);
}

std::size_t Graph::num_edges() const {
  std::size_t twice = 0;
  for (const auto& list : adj_) twice += list.size();
  return twice / 2;
}

bool Graph::has_edge(std::uint32_t a, std::uint32_t b) const {
  return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Graph::edge_list() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t a = 0; a < adj_.size(); ++a) {
    for (std::uint32_t b : adj_[a]) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

long TreeDecomposition::width() const {
  long best = -1;
  for (const auto& bag : bags) best = std::max(best, static_cast<long>(bag.size()) - 1);
  return best;
}

std::optional<std::string> decomposition_error(const TreeDecomposition& td, const Graph& g) {
  const std::size_t nb = td.bags.size();
  if (nb == 0) {
    if (g.num_nodes() == 0) return std::nullopt;
    return "no bags";
  }
  if (td.tree_edges.size() != nb - 1) return "tree must have exactly bags-1 edges";
  std::vector<std::uint32_t> parent(nb);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::uint32_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (auto [a, b] : td.tree_edges) {
    if (a >= nb || b >= nb) return "tree edge names an unknown bag";
    const auto ra = find(a), rb = find(b);
    if (ra == rb) return "tree contains a cycle";
    parent[ra] = rb;
  }

  const std::size_t n = g.num_nodes();
  std::vector<std::vector<std::uint32_t>> bags_of(n);
  for (std::uint32_t b = 0; b < nb; ++b) {
    const auto& bag = td.bags[b];
    if (!std::is_sorted(bag.begin(), bag.end()) || std::adjacent_find(bag.begin(), bag.end()) != bag.end()) {
      return "bag " + std::to_string(b) + " is not a sorted set";
    }
    for (std::uint32_t v : bag) {
      if (v >= n) return "bag " + std::to_string(b) + " names an unknown node";
      bags_of[v].push_back(b);
    }
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    if (bags_of[v].empty()) return "node " + std::to_string(v) + " is in no bag";
  }
  for (auto [a, b] : g.edge_list()) {
    std::vector<std::uint32_t> common;
    std::set_intersection(bags_of[a].begin(), bags_of[a].end(), bags_of[b].begin(), bags_of[b].end(),
                          std::back_inserter(common));
    if (common.empty()) {
      return "edge " + std::to_string(a) + "-" + std::to_string(b) + " is not covered";
    }
  }
  std::vector<std::size_t> shared_edges(n, 0);
  for (auto [a, b] : td.tree_edges) {
    const auto& ba = td.bags[a];
    const auto& bb = td.bags[b];
    std::size_t i = 0, j = 0;
    while (i < ba.size() && j < bb.size()) {
      if (ba[i] < bb[j]) {
        ++i;
      } else if (bb[j] < ba[i]) {
        ++j;
      } else {
        ++shared_edges[ba[i]];
        ++i;
        ++j;
      }
    }
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    if (shared_edges[v] + 1 != bags_of[v].size()) {
      return "bags containing node " + std::to_string(v) + " are not connected";
    }
  }
  return std::nullopt;
}

Graph incidence_graph(const Hypergraph& h) {
  const auto n = static_cast<std::uint32_t>(h.num_vertices());
  Graph g(h.num_vertices() + h.num_edges());
  for (std::uint32_t e = 0; e < h.num_edges(); ++e) {
    for (std::uint32_t v : h.edge(e)) g.add_edge(v, n + e);
  }
  return g;
}

std::optional<std::vector<std::uint32_t>> beta_elimination_order(const Hypergraph& h) {
  const std::size_t n = h.num_vertices();
  std::vector<Bitset> edges;
  edges.reserve(h.num_edges());
  std::vector<std::vector<std::uint32_t>> incident(n);
  for (std::uint32_t e = 0; e < h.num_edges(); ++e) {
    Bitset bits(n);
    for (std::uint32_t v : h.edge(e)) {
      bits.set(v);
      incident[v].push_back(e);
    }
    edges.push_back(std::move(bits));
  }

  // A vertex is a nest point when its incident edges form an inclusion chain.
  std::vector<std::uint32_t> scratch;
  auto is_nest_point = [&](std::uint32_t v) {
    scratch = incident[v];
    std::sort(scratch.begin(), scratch.end(), [&](std::uint32_t a, std::uint32_t b) {
      const auto ca = edges[a].count(), cb = edges[b].count();
      return ca != cb ? ca < cb : a < b;
    });
    for (std::size_t i = 1; i < scratch.size(); ++i) {
      if (!edges[scratch[i - 1]].is_subset_of(edges[scratch[i]])) return false;
    }
    return true;
  };

  std::vector<bool> eliminated(n, false);
  std::vector<std::uint32_t> order;
  order.reserve(n);
  while (order.size() < n) {
    bool found = false;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (eliminated[v] || !is_nest_point(v)) continue;
      eliminated[v] = true;
      order.push_back(v);
      for (std::uint32_t e : incident[v]) edges[e].reset(v);
      found = true;
      break;
    }
    if (!found) return std::nullopt;
  }
  return order;
}

bool is_beta_acyclic(const Hypergraph& h) { return beta_elimination_order(h).has_value(); }

std::optional<TreeDecomposition> cycle_decomposition(const Hypergraph& h) {
  const std::size_t m = h.num_edges();
  const std::size_t n = h.num_vertices();
  if (m < 3) return std::nullopt;

  std::vector<std::vector<std::uint32_t>> edges_of(n);
  for (std::uint32_t e = 0; e < m; ++e) {
    for (std::uint32_t v : h.edge(e)) edges_of[v].push_back(e);
  }
  for (const auto& list : edges_of) {
    if (list.size() >= 3) return std::nullopt;
  }

  // Intersection graph of the edges must be a single cycle through all of them.
  std::vector<std::vector<std::uint32_t>> meets(m);
  for (const auto& list : edges_of) {
    if (list.size() == 2) {
      meets[list[0]].push_back(list[1]);
      meets[list[1]].push_back(list[0]);
    }
  }
  for (auto& list : meets) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    if (list.size() != 2) return std::nullopt;
  }
  std::vector<std::uint32_t> cycle{0};
  std::vector<bool> seen(m, false);
  seen[0] = true;
  std::uint32_t prev = 0, cur = meets[0][0];
  while (cur != 0) {
    if (seen[cur]) return std::nullopt;
    seen[cur] = true;
    cycle.push_back(cur);
    const std::uint32_t next = meets[cur][0] == prev ? meets[cur][1] : meets[cur][0];
    prev = cur;
    cur = next;
  }
  if (cycle.size() != m) return std::nullopt;

  const auto node_of_edge = [&](std::size_t i) { return static_cast<std::uint32_t>(n + cycle[i % m]); };
  TreeDecomposition td;
  auto add_bag = [&](std::vector<std::uint32_t> bag, std::optional<std::uint32_t> attach) {
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    const auto id = static_cast<std::uint32_t>(td.bags.size());
    td.bags.push_back(std::move(bag));
    if (attach) td.tree_edges.emplace_back(*attach, id);
    return id;
  };

  // Path bags B_i, each holding e_0 together with e_i and e_{i+1 mod m}.
  std::vector<std::uint32_t> path(m);
  path[0] = add_bag({node_of_edge(0), node_of_edge(1)}, std::nullopt);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    path[i] = add_bag({node_of_edge(0), node_of_edge(i), node_of_edge(i + 1)}, path[i - 1]);
  }
  path[m - 1] = add_bag({node_of_edge(0), node_of_edge(m - 1)}, path[m - 2]);

  std::vector<std::size_t> position(m);
  for (std::size_t i = 0; i < m; ++i) position[cycle[i]] = i;
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto& list = edges_of[v];
    if (list.empty()) {
      add_bag({v}, path[0]);
    } else if (list.size() == 1) {
      const std::size_t i = position[list[0]];
      add_bag({v, node_of_edge(i)}, path[i]);
    } else {
      std::size_t i = position[list[0]], j = position[list[1]];
      if ((i + 1) % m != j) std::swap(i, j);
      add_bag({v, node_of_edge(i), node_of_edge(j)}, path[i]);
    }
  }
  return td;
}

TreeDecomposition lift_decomposition(const TreeDecomposition& td, const Hypergraph& h) {
  if (auto err = decomposition_error(td, incidence_graph(h))) {
    throw std::invalid_argument("lift_decomposition: invalid input decomposition: " + *err);
  }
  const auto n = static_cast<std::uint32_t>(h.num_vertices());
  const auto m = static_cast<std::uint32_t>(h.num_edges());
  const std::uint32_t num_vars = n + m;

  // Clause nodes follow the variables: R_e, then L_{e,v} for each v of e.
  std::vector<std::uint32_t> clause_offset(m);
  std::uint32_t next = num_vars;
  for (std::uint32_t e = 0; e < m; ++e) {
    clause_offset[e] = next;
    next += 1 + static_cast<std::uint32_t>(h.edge(e).size());
  }

  TreeDecomposition out;
  out.tree_edges = td.tree_edges;
  for (const auto& bag : td.bags) {
    std::vector<std::uint32_t> lifted;
    for (std::uint32_t node : bag) {
      if (node < n) {
        lifted.push_back(node);
      } else {
        lifted.push_back(node);
        lifted.push_back(clause_offset[node - n]);
      }
    }
    std::sort(lifted.begin(), lifted.end());
    out.bags.push_back(std::move(lifted));
  }
  for (std::uint32_t e = 0; e < m; ++e) {
    const auto& edge = h.edge(e);
    for (std::uint32_t j = 0; j < edge.size(); ++j) {
      const std::uint32_t v = edge[j];
      std::uint32_t host = 0;
      for (; host < td.bags.size(); ++host) {
        const auto& bag = td.bags[host];
        if (std::binary_search(bag.begin(), bag.end(), v) && std::binary_search(bag.begin(), bag.end(), n + e)) break;
      }
      const auto id = static_cast<std::uint32_t>(out.bags.size());
      std::vector<std::uint32_t> bag{v, n + e, clause_offset[e] + 1 + j};
      std::sort(bag.begin(), bag.end());
      out.bags.push_back(std::move(bag));
      out.tree_edges.emplace_back(host, id);
    }
  }
  return out;
}

TreeDecomposition minfill_decomposition(const Graph& g) {
  const std::size_t n = g.num_nodes();
  TreeDecomposition td;
  if (n == 0) {
    td.bags.emplace_back();
    return td;
  }

  std::vector<Bitset> adj(n, Bitset(n));
  std::vector<std::size_t> degree(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::uint32_t u : g.neighbors(v)) adj[v].set(u);
    degree[v] = g.neighbors(v).size();
  }
  // inner[u] = number of edges among the neighbours of u.
  std::vector<std::size_t> inner(n, 0);
  for (std::uint32_t u = 0; u < n; ++u) {
    std::size_t twice = 0;
    for (std::uint32_t a : g.neighbors(u)) twice += adj[a].and_count(adj[u]);
    inner[u] = twice / 2;
  }
  auto fill = [&](std::uint32_t u) { return degree[u] * (degree[u] - (degree[u] > 0 ? 1 : 0)) / 2 - inner[u]; };

  std::vector<bool> done(n, false);
  std::vector<std::uint32_t> elim_pos(n);
  std::vector<std::vector<std::uint32_t>> bag_of(n);
  std::vector<std::uint32_t> order;
  order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::uint32_t best = 0;
    std::size_t best_fill = SIZE_MAX;
    for (std::uint32_t u = 0; u < n; ++u) {
      if (done[u]) continue;
      const std::size_t f = fill(u);
      if (f < best_fill) {
        best_fill = f;
        best = u;
      }
    }
    const std::uint32_t v = best;
    std::vector<std::uint32_t> nbrs;
    adj[v].for_each([&](std::size_t u) { nbrs.push_back(static_cast<std::uint32_t>(u)); });

    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        const std::uint32_t a = nbrs[i], b = nbrs[j];
        if (adj[a].test(b)) continue;
        Bitset::for_each_common(adj[a], adj[b], [&](std::size_t u) { ++inner[u]; });
        const std::size_t common = adj[a].and_count(adj[b]);
        inner[a] += common;
        inner[b] += common;
        adj[a].set(b);
        adj[b].set(a);
        ++degree[a];
        ++degree[b];
      }
    }
    for (std::uint32_t u : nbrs) {
      inner[u] -= adj[u].and_count(adj[v]);
      --degree[u];
    }
    for (std::uint32_t u : nbrs) adj[u].reset(v);

    std::vector<std::uint32_t> bag = nbrs;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    bag_of[v] = std::move(bag);
    done[v] = true;
    elim_pos[v] = static_cast<std::uint32_t>(order.size());
    order.push_back(v);
  }

  // Bag 0 belongs to the last eliminated node.
  td.bags.resize(n);
  auto bag_id = [&](std::uint32_t v) { return static_cast<std::uint32_t>(n - 1 - elim_pos[v]); };
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::uint32_t id = bag_id(v);
    td.bags[id] = bag_of[v];
    if (id == 0) continue;
    std::optional<std::uint32_t> parent;
    for (std::uint32_t u : bag_of[v]) {
      if (u == v) continue;
      if (!parent || elim_pos[u] < elim_pos[*parent]) parent = u;
    }
    td.tree_edges.emplace_back(parent ? bag_id(*parent) : 0, id);
  }
  std::sort(td.tree_edges.begin(), td.tree_edges.end());
  return td;
}

}  // namespace kcbpo
