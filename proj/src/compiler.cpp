#include "kcbpo/compiler.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace kcbpo {

namespace {

constexpr std::uint32_t kNoNode = UINT32_MAX;

// Literal codes: 2*var for x, 2*var+1 for not x.
inline std::uint32_t code_of(std::int32_t lit) {
  return 2 * static_cast<std::uint32_t>(std::abs(lit)) + (lit < 0 ? 1U : 0U);
}
inline std::int32_t lit_of(std::uint32_t code) {
  const auto var = static_cast<std::int32_t>(code >> 1);
  return (code & 1U) ? -var : var;
}

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& key) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ key.size();
    for (std::uint32_t x : key) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

class Compiler {
 public:
  Compiler(const CnfFormula& f, const CompileConfig& cfg) : cfg_(cfg), builder_(f.num_vars()) {
    num_vars_ = f.num_vars();
    load_clauses(f);
    load_order(cfg);
    value_.assign(num_vars_ + 1, -1);
    uf_parent_.assign(num_vars_ + 1, 0);
    uf_stamp_.assign(num_vars_ + 1, 0);
  }

  NnfCircuit run(CompileStats* stats) {
    std::uint32_t root = kNoNode;
    bool conflict = false;
    for (std::uint32_t c = 0; c < num_clauses(); ++c) {
      if (clause_size(c) == 0) conflict = true;
      if (clause_size(c) == 1) units_.push_back(c);
    }
    if (!conflict) {
      const auto base = static_cast<std::uint32_t>(arena_.size());
      for (std::uint32_t c = 0; c < num_clauses(); ++c) arena_.push_back(c);
      root = branch(kNoNode, base, static_cast<std::uint32_t>(arena_.size()));
    }
    if (stats) {
      stats_.cache_entries = cache_.size();
      *stats = stats_;
    }
    if (root == kNoNode) root = builder_.false_node();
    return std::move(builder_).build(root, {true, true, false});
  }

 private:
  std::uint32_t num_clauses() const { return static_cast<std::uint32_t>(clause_start_.size() - 1); }
  std::uint32_t clause_size(std::uint32_t c) const { return clause_start_[c + 1] - clause_start_[c]; }

  void load_clauses(const CnfFormula& f) {
    clause_start_.push_back(0);
    for (const auto& clause : f.clauses) {
      std::vector<std::uint32_t> codes;
      bool tautology = false;
      for (std::int32_t lit : clause) {
        if (lit == 0 || static_cast<std::uint32_t>(std::abs(lit)) > num_vars_) {
          throw std::invalid_argument("compile: clause names an undeclared variable");
        }
        codes.push_back(code_of(lit));
      }
      std::sort(codes.begin(), codes.end());
      codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
      for (std::size_t i = 1; i < codes.size(); ++i) {
        if ((codes[i] ^ codes[i - 1]) == 1U) tautology = true;
      }
      if (tautology) continue;
      lits_.insert(lits_.end(), codes.begin(), codes.end());
      clause_start_.push_back(static_cast<std::uint32_t>(lits_.size()));
    }
    const std::size_t codes = 2 * (std::size_t{num_vars_} + 1);
    occ_start_.assign(codes + 1, 0);
    for (std::uint32_t code : lits_) ++occ_start_[code + 1];
    for (std::size_t i = 0; i < codes; ++i) occ_start_[i + 1] += occ_start_[i];
    occ_.resize(lits_.size());
    std::vector<std::uint32_t> fill(occ_start_.begin(), occ_start_.end() - 1);
    for (std::uint32_t c = 0; c < num_clauses(); ++c) {
      for (std::uint32_t i = clause_start_[c]; i < clause_start_[c + 1]; ++i) occ_[fill[lits_[i]]++] = c;
    }
    n_true_.assign(num_clauses(), 0);
    n_false_.assign(num_clauses(), 0);
  }

  void load_order(const CompileConfig& cfg) {
    rank_.assign(num_vars_ + 1, UINT32_MAX);
    std::uint32_t next = 0;
    for (std::uint32_t var : cfg.order) {
      if (var == 0 || var > num_vars_ || rank_[var] != UINT32_MAX) {
        throw std::invalid_argument("compile: order hint is not a set of variable ids");
      }
      rank_[var] = next++;
    }
    std::vector<std::uint32_t> rest;
    for (std::uint32_t var = 1; var <= num_vars_; ++var) {
      if (rank_[var] == UINT32_MAX) rest.push_back(var);
    }
    if (cfg.order.empty() && cfg.seed != 0) {
      std::mt19937_64 rng(cfg.seed);
      std::shuffle(rest.begin(), rest.end(), rng);
    }
    for (std::uint32_t var : rest) rank_[var] = next++;
  }

  bool is_true(std::uint32_t code) const {
    const std::int8_t v = value_[code >> 1];
    return v >= 0 && v == static_cast<std::int8_t>((code & 1U) ^ 1U);
  }

  // Assigns the literal and updates clause counters; returns false on conflict.
  bool assign(std::uint32_t code) {
    value_[code >> 1] = static_cast<std::int8_t>((code & 1U) ^ 1U);
    trail_.push_back(code);
    for (std::uint32_t i = occ_start_[code]; i < occ_start_[code + 1]; ++i) ++n_true_[occ_[i]];
    bool ok = true;
    const std::uint32_t neg = code ^ 1U;
    for (std::uint32_t i = occ_start_[neg]; i < occ_start_[neg + 1]; ++i) {
      const std::uint32_t c = occ_[i];
      const std::uint32_t nf = ++n_false_[c];
      if (n_true_[c] != 0) continue;
      const std::uint32_t size = clause_size(c);
      if (nf == size) {
        ok = false;
      } else if (nf + 1 == size) {
        units_.push_back(c);
      }
    }
    return ok;
  }

  bool propagate() {
    while (!units_.empty()) {
      const std::uint32_t c = units_.back();
      units_.pop_back();
      if (n_true_[c] != 0) continue;
      std::uint32_t pick = UINT32_MAX;
      for (std::uint32_t i = clause_start_[c]; i < clause_start_[c + 1]; ++i) {
        if (value_[lits_[i] >> 1] < 0) {
          pick = lits_[i];
          break;
        }
      }
      if (pick == UINT32_MAX) {
        units_.clear();
        return false;
      }
      if (!assign(pick)) {
        units_.clear();
        return false;
      }
    }
    return true;
  }

  void undo(std::size_t to) {
    while (trail_.size() > to) {
      const std::uint32_t code = trail_.back();
      trail_.pop_back();
      for (std::uint32_t i = occ_start_[code]; i < occ_start_[code + 1]; ++i) --n_true_[occ_[i]];
      const std::uint32_t neg = code ^ 1U;
      for (std::uint32_t i = occ_start_[neg]; i < occ_start_[neg + 1]; ++i) --n_false_[occ_[i]];
      value_[code >> 1] = -1;
    }
  }

  std::uint32_t uf_find(std::uint32_t v) {
    while (uf_parent_[v] != v) v = uf_parent_[v] = uf_parent_[uf_parent_[v]];
    return v;
  }
  void uf_touch(std::uint32_t v) {
    if (uf_stamp_[v] != uf_epoch_) {
      uf_stamp_[v] = uf_epoch_;
      uf_parent_[v] = v;
    }
  }

  // Assigns the decision (if any), propagates, and conjoins the implied
  // literals with the compiled components of the remaining clauses.
  std::uint32_t branch(std::uint32_t decision, std::uint32_t lo, std::uint32_t hi) {
    const std::size_t trail_mark = trail_.size();
    const std::size_t arena_mark = arena_.size();
    const std::size_t node_mark = nodes_.size();
    bool ok = true;
    if (decision != kNoNode) ok = assign(decision);
    ok = ok && propagate();
    if (!ok) {
      units_.clear();
      undo(trail_mark);
      return kNoNode;
    }
    for (std::size_t i = trail_mark; i < trail_.size(); ++i) nodes_.push_back(builder_.literal(lit_of(trail_[i])));

    // Residual clauses, grouped into components by shared variables.
    ++uf_epoch_;
    const auto res_lo = static_cast<std::uint32_t>(arena_.size());
    for (std::uint32_t i = lo; i < hi; ++i) {
      const std::uint32_t c = arena_[i];
      if (n_true_[c] != 0) continue;
      arena_.push_back(c);
      std::uint32_t first = 0;
      for (std::uint32_t j = clause_start_[c]; j < clause_start_[c + 1]; ++j) {
        const std::uint32_t var = lits_[j] >> 1;
        if (value_[var] >= 0) continue;
        uf_touch(var);
        if (first == 0) {
          first = var;
        } else {
          const std::uint32_t a = uf_find(first), b = uf_find(var);
          if (a != b) uf_parent_[a] = b;
        }
      }
    }
    const auto res_hi = static_cast<std::uint32_t>(arena_.size());

    if (res_lo < res_hi) {
      comp_of_clause_.clear();
      comp_count_.clear();
      ++comp_epoch_;
      for (std::uint32_t i = res_lo; i < res_hi; ++i) {
        const std::uint32_t c = arena_[i];
        std::uint32_t var = 0;
        for (std::uint32_t j = clause_start_[c]; j < clause_start_[c + 1] && var == 0; ++j) {
          if (value_[lits_[j] >> 1] < 0) var = lits_[j] >> 1;
        }
        const std::uint32_t root = uf_find(var);
        if (comp_stamp_.size() <= root) {
          comp_stamp_.resize(num_vars_ + 1, 0);
          comp_id_.resize(num_vars_ + 1, 0);
        }
        if (comp_stamp_[root] != comp_epoch_) {
          comp_stamp_[root] = comp_epoch_;
          comp_id_[root] = static_cast<std::uint32_t>(comp_count_.size());
          comp_count_.push_back(0);
        }
        comp_of_clause_.push_back(comp_id_[root]);
        ++comp_count_[comp_id_[root]];
      }
      const std::size_t k = comp_count_.size();
      const auto base = static_cast<std::uint32_t>(arena_.size());
      std::vector<std::uint32_t> start(k + 1, base);
      for (std::size_t j = 0; j < k; ++j) start[j + 1] = start[j] + comp_count_[j];
      arena_.resize(start[k]);
      std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
      for (std::uint32_t i = res_lo; i < res_hi; ++i) arena_[fill[comp_of_clause_[i - res_lo]]++] = arena_[i];

      for (std::size_t j = 0; j < k && ok; ++j) {
        const std::uint32_t node = component(start[j], start[j + 1]);
        if (node == kNoNode) {
          ok = false;
        } else {
          nodes_.push_back(node);
        }
      }
    }

    std::uint32_t result = kNoNode;
    if (ok) {
      const std::size_t count = nodes_.size() - node_mark;
      if (count == 0) {
        result = builder_.true_node();
      } else if (count == 1) {
        result = nodes_[node_mark];
      } else {
        result = builder_.add_and(std::span(nodes_.data() + node_mark, count));
      }
    }
    nodes_.resize(node_mark);
    arena_.resize(arena_mark);
    undo(trail_mark);
    return result;
  }

  std::uint32_t component(std::uint32_t lo, std::uint32_t hi) {
    key_.clear();
    std::uint32_t best_var = 0, best_rank = UINT32_MAX;
    for (std::uint32_t i = lo; i < hi; ++i) {
      const std::uint32_t c = arena_[i];
      for (std::uint32_t j = clause_start_[c]; j < clause_start_[c + 1]; ++j) {
        const std::uint32_t code = lits_[j];
        const std::uint32_t var = code >> 1;
        if (value_[var] >= 0) continue;
        key_.push_back(code);
        if (rank_[var] < best_rank) {
          best_rank = rank_[var];
          best_var = var;
        }
      }
      key_.push_back(0);
    }
    if (auto it = cache_.find(key_); it != cache_.end()) {
      ++stats_.cache_hits;
      return it->second;
    }

    ++stats_.decisions;
    std::vector<std::uint32_t> key = key_;
    const std::uint32_t low = branch(2 * best_var + 1, lo, hi);
    const std::uint32_t high = branch(2 * best_var, lo, hi);
    std::uint32_t result;
    if (low == kNoNode) {
      result = high;
    } else if (high == kNoNode) {
      result = low;
    } else {
      result = builder_.add_or({low, high}, static_cast<std::int32_t>(best_var));
    }
    if (cache_.size() < cfg_.max_cache_entries && stats_.cache_literals + key.size() <= cfg_.max_cache_literals) {
      stats_.cache_literals += key.size();
      cache_.emplace(std::move(key), result);
    } else {
      stats_.budget_exhausted = true;
    }
    return result;
  }

  const CompileConfig& cfg_;
  NnfBuilder builder_;
  std::uint32_t num_vars_ = 0;

  std::vector<std::uint32_t> clause_start_, lits_, occ_start_, occ_;
  std::vector<std::uint32_t> n_true_, n_false_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::int8_t> value_;
  std::vector<std::uint32_t> trail_, units_;

  std::vector<std::uint32_t> arena_;  // clause-id lists of active components
  std::vector<std::uint32_t> nodes_;  // pending And children
  std::vector<std::uint32_t> key_;

  std::vector<std::uint32_t> uf_parent_, uf_stamp_;
  std::uint32_t uf_epoch_ = 0;
  std::vector<std::uint32_t> comp_stamp_, comp_id_, comp_of_clause_, comp_count_;
  std::uint32_t comp_epoch_ = 0;

  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, KeyHash> cache_;
  CompileStats stats_;
};

}  // namespace

NnfCircuit compile(const CnfFormula& f, const CompileConfig& cfg, CompileStats* stats) {
  Compiler compiler(f, cfg);
  return compiler.run(stats);
}

std::vector<std::uint32_t> order_from_beta(const Hypergraph& h) {
  auto beta = beta_elimination_order(h);
  if (!beta) throw std::invalid_argument("order_from_beta: hypergraph is not beta-acyclic");
  const auto n = static_cast<std::uint32_t>(h.num_vertices());
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> position(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t v = (*beta)[n - 1 - i];
    position[v] = static_cast<std::uint32_t>(i);
    order.push_back(v + 1);
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ys;
  for (std::uint32_t e = 0; e < h.num_edges(); ++e) {
    std::uint32_t last = 0;
    for (std::uint32_t v : h.edge(e)) last = std::max(last, position[v]);
    ys.emplace_back(last, e);
  }
  std::stable_sort(ys.begin(), ys.end());
  for (auto [pos, e] : ys) order.push_back(n + e + 1);
  return order;
}

std::vector<std::uint32_t> order_from_decomposition(const TreeDecomposition& td, const CnfFormula& f) {
  if (auto err = decomposition_error(td, formula_incidence_graph(f))) {
    throw std::invalid_argument("order_from_decomposition: " + *err);
  }
  const std::uint32_t n = f.num_vars();
  std::vector<std::vector<std::uint32_t>> adj(td.bags.size());
  for (auto [a, b] : td.tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  std::vector<std::uint32_t> order;
  std::vector<bool> seen_var(n + 1, false);
  std::vector<bool> seen_bag(td.bags.size(), false);
  std::vector<std::uint32_t> stack;
  if (!td.bags.empty()) {
    stack.push_back(0);
    seen_bag[0] = true;
  }
  while (!stack.empty()) {
    const std::uint32_t b = stack.back();
    stack.pop_back();
    for (std::uint32_t node : td.bags[b]) {
      if (node < n && !seen_var[node + 1]) {
        seen_var[node + 1] = true;
        order.push_back(node + 1);
      }
    }
    for (auto it = adj[b].rbegin(); it != adj[b].rend(); ++it) {
      if (!seen_bag[*it]) {
        seen_bag[*it] = true;
        stack.push_back(*it);
      }
    }
  }
  return order;
}

}  // namespace kcbpo
