#include "kcbpo/extform.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace kcbpo {

std::string LinearSystem::column_name(std::uint32_t col) const {
  if (col < num_y) return "y" + std::to_string(col);
  return "x" + std::to_string(col - num_y + 1);
}

bool LinearSystem::satisfied_by(const std::vector<Rational>& point) const {
  for (const Row& row : rows) {
    Rational lhs = 0;
    for (auto [col, coeff] : row.terms) lhs += point[col] * coeff;
    if (row.relation == Relation::equal ? lhs != row.rhs : lhs < row.rhs) return false;
  }
  return true;
}

namespace {

// Out-edges of every node in CSR form.
struct OutEdges {
  std::vector<std::uint32_t> start;
  std::vector<std::uint32_t> edges;
  std::vector<std::uint32_t> parent;  // per edge
  std::span<const std::uint32_t> of(std::uint32_t n) const {
    return {edges.data() + start[n], edges.data() + start[n + 1]};
  }
};

OutEdges out_edges(const NnfCircuit& c) {
  OutEdges o;
  o.parent = c.edge_parents();
  o.start.assign(c.node_count() + 1, 0);
  for (std::uint32_t e = 0; e < c.edge_count(); ++e) ++o.start[c.edge_child(e) + 1];
  for (std::uint32_t n = 0; n < c.node_count(); ++n) o.start[n + 1] += o.start[n];
  o.edges.resize(c.edge_count());
  std::vector<std::uint32_t> fill(o.start.begin(), o.start.end() - 1);
  for (std::uint32_t e = 0; e < c.edge_count(); ++e) o.edges[fill[c.edge_child(e)]++] = e;
  return o;
}

bool checked_add(std::int64_t a, std::int64_t b, std::int64_t& out) { return !__builtin_add_overflow(a, b, &out); }

}  // namespace

void require_normalized(const NnfCircuit& c, const char* what) {
  auto fail = [&](const std::string& why) { throw StructureError(std::string(what) + ": circuit is not normalized (" + why + ")"); };
  const std::uint32_t out = c.output();
  if (c.kind(out) != NodeKind::Or) fail("output is not an Or gate");
  std::vector<bool> reach(c.node_count(), false);
  reach[out] = true;
  std::vector<bool> seen_literal(2 * (std::size_t{c.num_vars()} + 1), false);
  for (std::uint32_t n = c.node_count(); n-- > 0;) {
    if (!reach[n]) fail("node " + std::to_string(n) + " does not reach the output");
    for (std::uint32_t ch : c.children(n)) {
      if (ch == out) fail("output has outgoing edges");
      reach[ch] = true;
    }
    if (c.kind(n) == NodeKind::False) fail("False input");
    if (c.kind(n) == NodeKind::Literal) {
      const std::int32_t lit = c.label(n);
      const std::size_t slot = 2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0);
      if (seen_literal[slot]) fail("literal " + std::to_string(lit) + " has several inputs");
      seen_literal[slot] = true;
    }
  }
  require_structure(c, false, true, what);
}

LinearSystem build_system(const NnfCircuit& c, bool include_x) {
  require_normalized(c, "build_system");
  const OutEdges out = out_edges(c);
  LinearSystem sys;
  sys.num_y = c.edge_count();
  sys.num_x = include_x ? c.num_vars() : 0;
  using Row = LinearSystem::Row;

  auto finish = [&](Row row) {
    std::sort(row.terms.begin(), row.terms.end());
    sys.rows.push_back(std::move(row));
  };
  auto add_out = [&](Row& row, std::uint32_t n) {
    for (std::uint32_t e : out.of(n)) row.terms.emplace_back(e, -1);
  };

  const std::uint32_t o = c.output();
  {
    Row row;
    for (std::uint32_t e = c.first_edge(o); e < c.first_edge(o) + c.children(o).size(); ++e) row.terms.emplace_back(e, 1);
    row.rhs = 1;
    finish(std::move(row));
  }
  // Gates from the output downwards.
  for (std::uint32_t n = c.node_count(); n-- > 0;) {
    if (n == o) continue;
    const std::uint32_t first = c.first_edge(n);
    const auto fan_in = static_cast<std::uint32_t>(c.children(n).size());
    if (c.kind(n) == NodeKind::Or) {
      Row row;
      for (std::uint32_t e = first; e < first + fan_in; ++e) row.terms.emplace_back(e, 1);
      add_out(row, n);
      row.rhs = 0;
      finish(std::move(row));
    } else if (c.kind(n) == NodeKind::And) {
      for (std::uint32_t e = first; e < first + fan_in; ++e) {
        Row row;
        row.terms.emplace_back(e, 1);
        add_out(row, n);
        row.rhs = 0;
        finish(std::move(row));
      }
    }
  }
  for (std::uint32_t e = 0; e < c.edge_count(); ++e) {
    Row row;
    row.terms.emplace_back(e, 1);
    row.relation = LinearSystem::Relation::greater_equal;
    row.rhs = 0;
    sys.rows.push_back(std::move(row));
  }
  if (include_x) {
    std::vector<std::uint32_t> positive(c.num_vars() + 1, UINT32_MAX);
    for (std::uint32_t n = 0; n < c.node_count(); ++n) {
      if (c.kind(n) == NodeKind::Literal && c.label(n) > 0) positive[static_cast<std::size_t>(c.label(n))] = n;
    }
    for (std::uint32_t v = 1; v <= c.num_vars(); ++v) {
      Row row;
      row.terms.emplace_back(sys.x_column(v), 1);
      if (positive[v] != UINT32_MAX) add_out(row, positive[v]);
      row.rhs = 0;
      finish(std::move(row));
    }
  }
  return sys;
}

bool is_certificate(const Certificate& t, const NnfCircuit& c) {
  std::vector<bool> in(c.node_count(), false);
  for (std::uint32_t n : t) {
    if (n >= c.node_count()) return false;
    in[n] = true;
  }
  if (!in[c.output()]) return false;
  std::vector<bool> fed(c.node_count(), false);
  for (std::uint32_t n : t) {
    std::size_t chosen = 0;
    for (std::uint32_t ch : c.children(n)) {
      if (in[ch]) {
        ++chosen;
        fed[ch] = true;
      }
    }
    if (c.kind(n) == NodeKind::Or && chosen != 1) return false;
    if (c.kind(n) == NodeKind::And && chosen != c.children(n).size()) return false;
    if (c.kind(n) == NodeKind::False) return false;
  }
  for (std::uint32_t n : t) {
    if (n != c.output() && !fed[n]) return false;
  }
  return true;
}

std::vector<Certificate> enumerate_certificates(const NnfCircuit& c, std::size_t cap) {
  require_normalized(c, "enumerate_certificates");
  std::vector<Certificate> result;
  std::vector<bool> in(c.node_count(), false);

  // pending holds members whose children have not been chosen yet.
  auto recurse = [&](auto&& self, std::vector<std::uint32_t> pending) -> void {
    if (pending.empty()) {
      Certificate t;
      for (std::uint32_t n = 0; n < c.node_count(); ++n) {
        if (in[n]) t.push_back(n);
      }
      if (is_certificate(t, c)) {
        if (result.size() >= cap) throw CapExceeded("certificate enumeration exceeded the cap of " + std::to_string(cap));
        result.push_back(std::move(t));
      }
      return;
    }
    const std::uint32_t n = pending.back();
    pending.pop_back();
    if (c.kind(n) == NodeKind::Or) {
      for (std::uint32_t ch : c.children(n)) {
        const bool fresh = !in[ch];
        auto next = pending;
        if (fresh) {
          in[ch] = true;
          next.push_back(ch);
        }
        self(self, std::move(next));
        if (fresh) in[ch] = false;
      }
    } else if (c.kind(n) == NodeKind::And) {
      std::vector<std::uint32_t> added;
      for (std::uint32_t ch : c.children(n)) {
        if (!in[ch]) {
          in[ch] = true;
          added.push_back(ch);
          pending.push_back(ch);
        }
      }
      self(self, std::move(pending));
      for (std::uint32_t ch : added) in[ch] = false;
    } else {
      self(self, std::move(pending));
    }
  };
  in[c.output()] = true;
  recurse(recurse, std::vector<std::uint32_t>{c.output()});
  std::sort(result.begin(), result.end());
  return result;
}

CertificatePoint certificate_point(const Certificate& t, const NnfCircuit& c) {
  if (!is_certificate(t, c)) throw std::invalid_argument("certificate_point: not a certificate");
  std::vector<bool> in(c.node_count(), false);
  for (std::uint32_t n : t) in[n] = true;
  CertificatePoint p;
  p.y.assign(c.edge_count(), 0);
  p.x.assign(c.num_vars(), 0);
  const auto parents = c.edge_parents();
  for (std::uint32_t e = 0; e < c.edge_count(); ++e) p.y[e] = in[c.edge_child(e)] && in[parents[e]];
  for (std::uint32_t n : t) {
    if (c.kind(n) == NodeKind::Literal && c.label(n) > 0) p.x[static_cast<std::size_t>(c.label(n)) - 1] = 1;
  }
  return p;
}

DualSolution dual_optimize(const NnfCircuit& c, const std::vector<std::int64_t>& edge_cost) {
  require_normalized(c, "dual_optimize");
  if (edge_cost.size() != c.edge_count()) throw std::invalid_argument("dual_optimize: one cost per edge required");
  DualSolution z;
  z.z_or.assign(c.node_count(), 0);
  z.z_edge.assign(c.edge_count(), 0);
  std::vector<std::int64_t> contrib(c.node_count(), 0);
  auto overflow = [] { throw std::overflow_error("dual_optimize: value exceeds int64"); };

  for (std::uint32_t h = 0; h < c.node_count(); ++h) {
    const std::uint32_t first = c.first_edge(h);
    const auto kids = c.children(h);
    if (c.kind(h) == NodeKind::Or) {
      bool any = false;
      std::int64_t best = 0;
      for (std::uint32_t i = 0; i < kids.size(); ++i) {
        std::int64_t v;
        if (!checked_add(edge_cost[first + i], contrib[kids[i]], v)) overflow();
        if (!any || v > best) best = v;
        any = true;
      }
      if (!any) {
        if (h != c.output()) throw std::logic_error("dual_optimize: empty Or gate below the output");
        z.feasible = false;
        return z;
      }
      z.z_or[h] = contrib[h] = best;
    } else if (c.kind(h) == NodeKind::And) {
      std::int64_t sum = 0;
      for (std::uint32_t i = 0; i < kids.size(); ++i) {
        std::int64_t v;
        if (!checked_add(edge_cost[first + i], contrib[kids[i]], v)) overflow();
        z.z_edge[first + i] = v;
        if (!checked_add(sum, v, sum)) overflow();
      }
      contrib[h] = sum;
    }
  }
  z.value = z.z_or[c.output()];
  return z;
}

std::pair<std::vector<std::int64_t>, BigInt> edge_costs_from_weights(const NnfCircuit& c, const WeightFunction& w) {
  if (w.num_vars() != c.num_vars()) throw std::invalid_argument("weight function and circuit universes differ");
  std::vector<Rational> all;
  for (std::uint32_t v = 1; v <= w.num_vars(); ++v) {
    all.push_back(w.weight(v, 0));
    all.push_back(w.weight(v, 1));
  }
  const BigInt scale = common_denominator(all);
  std::vector<std::int64_t> cost(c.edge_count(), 0);
  for (std::uint32_t e = 0; e < c.edge_count(); ++e) {
    const std::uint32_t ch = c.edge_child(e);
    if (c.kind(ch) != NodeKind::Literal) continue;
    const std::int32_t lit = c.label(ch);
    const Rational scaled = w.weight(static_cast<std::uint32_t>(std::abs(lit)), lit > 0 ? 1 : 0) * scale;
    auto v = to_int64(scaled);
    if (!v) throw std::overflow_error("edge cost exceeds int64");
    cost[e] = *v;
  }
  return {cost, scale};
}

TuExample tu_example_circuit() {
  NnfBuilder b(0);
  const std::uint32_t t8 = b.add_true(), t9 = b.add_true(), t10 = b.add_true();
  const std::uint32_t a3 = b.add_and({t9, t10});
  const std::uint32_t g8 = b.add_or({t8});
  const std::uint32_t a2 = b.add_and({g8, a3});
  const std::uint32_t g3 = b.add_or({a2});
  const std::uint32_t ga = b.add_or({g3, g8});
  const std::uint32_t o = b.add_or({ga, a3});
  TuExample ex{std::move(b).build(o, {true, false, true}), {8, 6, 5, 7, 3, 9, 4, 2, 0, 1}};
  return ex;
}

BigInt determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  for (const auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
  }
  // Fraction-free Bareiss elimination.
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

BigInt tu_counterexample_check() {
  const TuExample ex = tu_example_circuit();
  const LinearSystem sys = build_system(ex.circuit, false);
  std::vector<std::uint32_t> label_of(ex.edge_of_label.size());
  for (std::uint32_t i = 0; i < ex.edge_of_label.size(); ++i) label_of[ex.edge_of_label[i]] = i + 1;

  // Equality rows as label -> coefficient maps.
  std::vector<std::map<std::uint32_t, int>> rows;
  for (const auto& row : sys.rows) {
    if (row.relation != LinearSystem::Relation::equal) continue;
    std::map<std::uint32_t, int> r;
    for (auto [col, coeff] : row.terms) r[label_of[col]] = coeff;
    rows.push_back(std::move(r));
  }
  const std::map<std::uint32_t, int> drop_a{{3, 1}, {2, -1}};
  const std::map<std::uint32_t, int> drop_b{{10, 1}, {6, -1}, {7, -1}};
  const std::vector<std::uint32_t> keep_columns{1, 3, 4, 5, 6, 7};

  std::vector<std::vector<BigInt>> matrix;
  for (const auto& r : rows) {
    if (r == drop_a || r == drop_b) continue;
    std::vector<BigInt> line;
    for (std::uint32_t label : keep_columns) {
      auto it = r.find(label);
      line.emplace_back(it == r.end() ? 0 : it->second);
    }
    matrix.push_back(std::move(line));
  }
  return determinant(std::move(matrix));
}

void write_lp(const LinearSystem& sys, const std::vector<Rational>& objective, const Rational& offset,
              std::ostream& out) {
  if (objective.size() != sys.num_columns()) throw std::invalid_argument("write_lp: one objective entry per column required");
  auto decimal = [](const Rational& v) {
    auto text = format_decimal(v);
    if (!text) throw std::invalid_argument("write_lp: coefficient " + format_rational(v) + " has no exact decimal form");
    return *text;
  };
  constexpr int kTermsPerLine = 8;

  out << "\\ objective offset " << decimal(offset) << '\n';
  out << "Maximize\n obj:";
  int on_line = 0;
  bool any = false;
  for (std::uint32_t col = 0; col < sys.num_columns(); ++col) {
    const Rational& v = objective[col];
    if (v == 0) continue;
    if (on_line == kTermsPerLine) {
      out << "\n ";
      on_line = 0;
    }
    out << (v < 0 ? " - " : " + ") << decimal(abs(v)) << ' ' << sys.column_name(col);
    ++on_line;
    any = true;
  }
  if (!any && sys.num_columns() > 0) out << " 0 " << sys.column_name(0);
  out << "\nSubject To\n";

  std::vector<std::uint32_t> lower_bounds;
  std::size_t index = 0;
  for (const auto& row : sys.rows) {
    const bool bound = row.relation == LinearSystem::Relation::greater_equal && row.terms.size() == 1 &&
                       row.terms[0].second == 1 && row.rhs == 0;
    if (bound) {
      lower_bounds.push_back(row.terms[0].first);
      continue;
    }
    out << " c" << index++ << ':';
    on_line = 0;
    for (auto [col, coeff] : row.terms) {
      if (on_line == kTermsPerLine) {
        out << "\n ";
        on_line = 0;
      }
      out << (coeff < 0 ? " - " : " + ") << sys.column_name(col);
      ++on_line;
    }
    if (row.terms.empty()) out << " 0 " << (sys.num_columns() > 0 ? sys.column_name(0) : "y0");
    out << (row.relation == LinearSystem::Relation::equal ? " = " : " >= ") << decimal(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (std::uint32_t col : lower_bounds) out << ' ' << sys.column_name(col) << " >= 0\n";
  for (std::uint32_t v = 1; v <= sys.num_x; ++v) out << ' ' << sys.column_name(sys.x_column(v)) << " free\n";
  out << "End\n";
}

}  // namespace kcbpo
