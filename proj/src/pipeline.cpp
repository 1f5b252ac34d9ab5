#include "kcbpo/pipeline.hpp"

#include <numeric>
#include <stdexcept>

#include "kcbpo/transforms.hpp"

namespace kcbpo {

CompiledInstance compile_instance(const LiteralInstance& inst, Encoding encoding) {
  const Hypergraph& h = inst.hypergraph;
  CompiledInstance out;
  CompileConfig cfg;
  const auto beta = encoding == Encoding::basic ? std::nullopt : beta_elimination_order(h);
  if (encoding == Encoding::automatic) encoding = beta ? Encoding::ordered : Encoding::basic;

  if (encoding == Encoding::ordered) {
    out.ordered = true;
    if (beta) {
      out.cnf = encode_ordered(inst, *beta);
      cfg.order = order_from_beta(h);
    } else {
      std::vector<std::uint32_t> identity(h.num_vertices());
      std::iota(identity.begin(), identity.end(), 0u);
      out.cnf = encode_ordered(inst, identity);
      cfg.order = order_from_decomposition(minfill_decomposition(formula_incidence_graph(out.cnf)), out.cnf);
    }
  } else {
    out.cnf = encode_basic(inst);
    const TreeDecomposition td = lift_decomposition(minfill_decomposition(incidence_graph(h)), h);
    cfg.order = order_from_decomposition(td, out.cnf);
  }
  out.circuit = compile(out.cnf, cfg, &out.stats);
  return out;
}

NnfCircuit apply_constraints(const NnfCircuit& circuit, const LiteralInstance& inst,
                             const std::optional<std::vector<std::uint32_t>>& card_sums,
                             const std::optional<KnapsackSpec>& knapsack) {
  NnfCircuit c = circuit;
  const auto n = static_cast<std::uint32_t>(inst.num_vertices());
  if (card_sums) {
    CardinalitySpec spec;
    spec.vars.resize(n);
    std::iota(spec.vars.begin(), spec.vars.end(), 1u);
    for (std::uint32_t s : *card_sums) {
      if (s <= n) spec.sums.push_back(s);
    }
    c = restrict_cardinality(c, spec);
  }
  if (knapsack) {
    if (knapsack->coeffs.size() != n) {
      throw std::invalid_argument("knapsack needs one coefficient per vertex (" + std::to_string(n) + ")");
    }
    std::vector<std::int64_t> coeffs(c.num_vars(), 0);
    std::copy(knapsack->coeffs.begin(), knapsack->coeffs.end(), coeffs.begin());
    c = knapsack_transform(c, coeffs, knapsack->lower, knapsack->upper);
  }
  return c;
}

namespace {

NnfCircuit constrained_circuit(const ParsedInstance& p, const SolveOptions& opts) {
  const CompiledInstance compiled = compile_instance(p.inst, opts.encoding);
  const auto& card = opts.card_sums ? opts.card_sums : p.card_sums;
  return apply_constraints(compiled.circuit, p.inst, card, opts.knapsack);
}

}  // namespace

std::optional<Solution> solve(const ParsedInstance& p, const SolveOptions& opts) {
  const NnfCircuit c = constrained_circuit(p, opts);
  const Optimum best = optimize(c, weights_from_profits(p.inst));
  if (!best.feasible) return std::nullopt;
  return Solution{p.objective(best.value), project_solution(best.witness, p.inst)};
}

std::vector<Solution> solve_top_k(const ParsedInstance& p, const SolveOptions& opts, std::size_t k) {
  const NnfCircuit c = constrained_circuit(p, opts);
  std::vector<Solution> out;
  for (const RankedAssignment& r : top_k(c, weights_from_profits(p.inst), k)) {
    out.push_back({p.objective(r.value), project_solution(r.assignment, p.inst)});
  }
  return out;
}

}  // namespace kcbpo
