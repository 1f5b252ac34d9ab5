#include "kcbpo/encoder.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace kcbpo {

void CnfFormula::add_clause(std::vector<std::int32_t> clause, ClauseTag tag) {
  for (std::int32_t lit : clause) {
    const auto var = static_cast<std::uint32_t>(std::abs(lit));
    if (lit == 0 || var > num_vars()) throw std::invalid_argument("clause names an undeclared variable");
    if (std::find(clause.begin(), clause.end(), -lit) != clause.end()) {
      throw std::invalid_argument("tautological clause");
    }
  }
  clauses.push_back(std::move(clause));
  tags.push_back(tag);
}

bool CnfFormula::satisfied_by(const std::vector<std::uint8_t>& assignment) const {
  for (const auto& clause : clauses) {
    bool sat = false;
    for (std::int32_t lit : clause) {
      const bool value = assignment[static_cast<std::size_t>(std::abs(lit)) - 1] != 0;
      if (value == (lit > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

namespace {

CnfFormula empty_formula(const LiteralInstance& inst) {
  CnfFormula f;
  f.num_x = static_cast<std::uint32_t>(inst.num_vertices());
  f.num_y = static_cast<std::uint32_t>(inst.num_edges());
  return f;
}

// sigma_e(x_v) as a literal: x_v when the polarity is positive, else -x_v.
std::int32_t sigma_literal(const CnfFormula& f, std::uint32_t v, bool positive) {
  const auto var = static_cast<std::int32_t>(f.x_var(v));
  return positive ? var : -var;
}

void emit_r_clause(CnfFormula& f, const LiteralInstance& inst, std::uint32_t e) {
  const auto& edge = inst.hypergraph.edge(e);
  std::vector<std::int32_t> clause{static_cast<std::int32_t>(f.y_var(e))};
  for (std::size_t j = 0; j < edge.size(); ++j) clause.push_back(-sigma_literal(f, edge[j], inst.sigma[e][j]));
  f.add_clause(std::move(clause), {ClauseTag::R, e, 0});
}

}  // namespace

CnfFormula encode_basic(const LiteralInstance& inst) {
  CnfFormula f = empty_formula(inst);
  for (std::uint32_t e = 0; e < inst.num_edges(); ++e) {
    emit_r_clause(f, inst, e);
    const auto& edge = inst.hypergraph.edge(e);
    for (std::size_t j = 0; j < edge.size(); ++j) {
      f.add_clause({-static_cast<std::int32_t>(f.y_var(e)), sigma_literal(f, edge[j], inst.sigma[e][j])},
                   {ClauseTag::L, e, edge[j]});
    }
  }
  return f;
}

CnfFormula encode_ordered(const LiteralInstance& inst, const std::vector<std::uint32_t>& order) {
  const std::size_t n = inst.num_vertices();
  std::vector<std::size_t> rank(n, n);
  if (order.size() != n) throw std::invalid_argument("order must cover every vertex exactly once");
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= n || rank[order[i]] != n) throw std::invalid_argument("order must cover every vertex exactly once");
    rank[order[i]] = i;
  }

  CnfFormula f = empty_formula(inst);
  for (std::uint32_t e = 0; e < inst.num_edges(); ++e) {
    emit_r_clause(f, inst, e);
    const auto& edge = inst.hypergraph.edge(e);
    for (std::size_t j = 0; j < edge.size(); ++j) {
      std::vector<std::int32_t> clause{-static_cast<std::int32_t>(f.y_var(e)),
                                       sigma_literal(f, edge[j], inst.sigma[e][j])};
      for (std::size_t k = 0; k < edge.size(); ++k) {
        if (rank[edge[k]] > rank[edge[j]]) clause.push_back(-sigma_literal(f, edge[k], inst.sigma[e][k]));
      }
      f.add_clause(std::move(clause), {ClauseTag::L, e, edge[j]});
    }
  }
  return f;
}

Hypergraph formula_hypergraph(const CnfFormula& f) {
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<std::vector<std::uint32_t>> edges;
  for (const auto& clause : f.clauses) {
    std::vector<std::uint32_t> vars;
    for (std::int32_t lit : clause) vars.push_back(static_cast<std::uint32_t>(std::abs(lit)) - 1);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    if (seen.insert(vars).second) edges.push_back(std::move(vars));
  }
  return Hypergraph(f.num_vars(), std::move(edges), true);
}

Graph formula_incidence_graph(const CnfFormula& f) {
  const std::uint32_t n = f.num_vars();
  Graph g(n + f.clauses.size());
  for (std::uint32_t c = 0; c < f.clauses.size(); ++c) {
    for (std::int32_t lit : f.clauses[c]) g.add_edge(static_cast<std::uint32_t>(std::abs(lit)) - 1, n + c);
  }
  return g;
}

void write_dimacs(const CnfFormula& f, std::ostream& out) {
  out << "p cnf " << f.num_vars() << ' ' << f.clauses.size() << '\n';
  for (const auto& clause : f.clauses) {
    for (std::int32_t lit : clause) out << lit << ' ';
    out << "0\n";
  }
}

}  // namespace kcbpo
