#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kcbpo/errors.hpp"
#include "kcbpo/extform.hpp"
#include "kcbpo/instance.hpp"
#include "kcbpo/labs.hpp"
#include "kcbpo/oracle.hpp"
#include "kcbpo/pipeline.hpp"

namespace {

using namespace kcbpo;

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitParse = 2;
constexpr int kExitGuard = 3;

struct Common {
  std::string input = "-";
  std::string encoding = "auto";
  std::string card_set;
  std::string knapsack;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::int64_t parse_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + " '" + s + "'");
  }
}

std::vector<std::uint32_t> parse_sums(const std::string& s) {
  std::vector<std::uint32_t> out;
  for (const std::string& item : split(s, ',')) {
    const std::int64_t v = parse_int(item, "cardinality");
    if (v < 0 || v > UINT32_MAX) throw ParseError("bad cardinality '" + item + "'");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// L:U:c1,c2,...
KnapsackSpec parse_knapsack(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw ParseError("knapsack must be L:U:c1,c2,...");
  KnapsackSpec k;
  k.lower = parse_int(parts[0], "knapsack bound");
  k.upper = parse_int(parts[1], "knapsack bound");
  for (const std::string& c : split(parts[2], ',')) k.coeffs.push_back(parse_int(c, "knapsack coefficient"));
  return k;
}

Encoding parse_encoding(const std::string& s) {
  if (s == "auto") return Encoding::automatic;
  if (s == "basic") return Encoding::basic;
  if (s == "ordered") return Encoding::ordered;
  throw ParseError("unknown encoding '" + s + "'");
}

ParsedInstance load(const Common& c) {
  ParsedInstance p = parse_instance(read_input(c.input));
  for (const std::string& w : p.warnings) std::cerr << "warning: " << w << '\n';
  return p;
}

SolveOptions options(const Common& c) {
  SolveOptions o;
  o.encoding = parse_encoding(c.encoding);
  if (!c.card_set.empty()) o.card_sums = parse_sums(c.card_set);
  if (!c.knapsack.empty()) o.knapsack = parse_knapsack(c.knapsack);
  return o;
}

std::string point_text(const ParsedInstance& p, const std::vector<std::uint8_t>& x) {
  std::string out;
  const auto& labels = p.inst.hypergraph.labels();
  for (std::size_t v = 0; v < x.size(); ++v) {
    out += " v" + std::to_string(labels[v]) + "=" + (x[v] ? "1" : "0");
  }
  return out;
}

void print_best(const ParsedInstance& p, const std::optional<Solution>& s) {
  if (!s) {
    std::cout << "infeasible\n";
    return;
  }
  std::cout << "optimum " << format_rational(s->value) << '\n';
  std::cout << "x" << point_text(p, s->x) << '\n';
}

void print_ranked(const ParsedInstance& p, const std::vector<Solution>& list) {
  std::cout << "solutions " << list.size() << '\n';
  for (const Solution& s : list) std::cout << format_rational(s.value) << point_text(p, s.x) << '\n';
}

std::vector<Solution> run_oracle(const ParsedInstance& p, const SolveOptions& o, std::size_t k) {
  const auto n = static_cast<std::uint32_t>(p.inst.num_vertices());
  std::optional<std::vector<std::uint32_t>> card = o.card_sums ? o.card_sums : p.card_sums;
  std::vector<bool> allowed(n + 1, !card);
  if (card) {
    for (std::uint32_t s : *card) {
      if (s <= n) allowed[s] = true;
    }
  }
  std::vector<std::int64_t> coeffs;
  if (o.knapsack) {
    if (o.knapsack->coeffs.size() != n) {
      throw std::invalid_argument("knapsack needs one coefficient per vertex (" + std::to_string(n) + ")");
    }
    coeffs = o.knapsack->coeffs;
  }
  PointFilter filter = [&](std::uint32_t mask) {
    if (!allowed[static_cast<std::size_t>(std::popcount(mask))]) return false;
    if (!o.knapsack) return true;
    std::int64_t sum = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (mask >> v & 1u) sum += coeffs[v];
    }
    return o.knapsack->lower <= sum && sum <= o.knapsack->upper;
  };
  std::vector<Solution> out;
  for (const OraclePoint& pt : brute_force(p.inst, filter, k)) out.push_back({p.objective(pt.value), pt.x});
  return out;
}

void add_common(CLI::App* sub, Common& c, bool constraints) {
  sub->add_option("input", c.input, "Instance file (default: standard input)");
  sub->add_option("--encoding", c.encoding, "auto, basic or ordered")->check(CLI::IsMember({"auto", "basic", "ordered"}));
  if (constraints) {
    sub->add_option("--card-set", c.card_set, "Admissible numbers of ones, comma-separated");
    sub->add_option("--knapsack", c.knapsack, "L:U:c1,c2,... over the vertices in id order");
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Binary polynomial optimization through decision-DNNF compilation"};
  app.require_subcommand(1);
  Common common;

  auto* solve_cmd = app.add_subcommand("solve", "Maximize (or minimize) the polynomial");
  add_common(solve_cmd, common, true);

  std::size_t k = 1;
  auto* topk_cmd = app.add_subcommand("topk", "The k best points");
  add_common(topk_cmd, common, true);
  topk_cmd->add_option("--k", k, "Number of solutions")->required()->check(CLI::PositiveNumber);

  std::string card_set;
  auto* card_cmd = app.add_subcommand("card", "Optimize under a cardinality constraint over all vertices");
  add_common(card_cmd, common, false);
  card_cmd->add_option("--set", card_set, "Admissible numbers of ones, comma-separated")->required();

  bool emit_nnf = false, emit_cnf = false;
  auto* compile_cmd = app.add_subcommand("compile", "Encode and compile the instance");
  add_common(compile_cmd, common, true);
  compile_cmd->add_flag("--emit-nnf", emit_nnf, "Write the circuit in c2d NNF format");
  compile_cmd->add_flag("--emit-cnf", emit_cnf, "Write the encoding in DIMACS format");
  compile_cmd->get_option("--emit-nnf")->excludes("--emit-cnf");

  bool emit_lp = false, scale = false;
  auto* extform_cmd = app.add_subcommand("extform", "Extended formulation of the compiled circuit");
  add_common(extform_cmd, common, false);
  extform_cmd->add_flag("--emit-lp", emit_lp, "Write the formulation as a CPLEX LP file");
  extform_cmd->add_flag("--scale", scale, "Scale the objective to integer coefficients");

  std::optional<std::size_t> oracle_k;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive evaluation (at most 24 vertices)");
  add_common(oracle_cmd, common, true);
  oracle_cmd->add_option("--k", oracle_k, "Number of solutions")->check(CLI::PositiveNumber);

  int labs_n = 0, labs_w = 0;
  auto* labs_cmd = app.add_subcommand("gen-labs", "Print a low-autocorrelation instance");
  labs_cmd->add_option("n", labs_n, "Sequence length")->required();
  labs_cmd->add_option("w", labs_w, "Number of lags")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  if (labs_cmd->parsed()) {
    std::cout << gen_labs(labs_n, labs_w);
    return kExitOk;
  }

  const ParsedInstance p = load(common);
  SolveOptions opts = options(common);

  if (solve_cmd->parsed()) {
    print_best(p, solve(p, opts));
  } else if (topk_cmd->parsed()) {
    print_ranked(p, solve_top_k(p, opts, k));
  } else if (card_cmd->parsed()) {
    opts.card_sums = parse_sums(card_set);
    print_best(p, solve(p, opts));
  } else if (oracle_cmd->parsed()) {
    const auto list = run_oracle(p, opts, oracle_k.value_or(1));
    if (oracle_k) {
      print_ranked(p, list);
    } else {
      print_best(p, list.empty() ? std::nullopt : std::optional<Solution>(list.front()));
    }
  } else if (compile_cmd->parsed()) {
    const CompiledInstance compiled = compile_instance(p.inst, opts.encoding);
    const auto card = opts.card_sums ? opts.card_sums : p.card_sums;
    const NnfCircuit c = apply_constraints(compiled.circuit, p.inst, card, opts.knapsack);
    if (emit_cnf) {
      write_dimacs(compiled.cnf, std::cout);
    } else if (emit_nnf) {
      write_nnf(c, std::cout);
    } else {
      std::cout << "encoding " << (compiled.ordered ? "ordered" : "basic") << '\n';
      std::cout << "variables " << compiled.cnf.num_vars() << '\n';
      std::cout << "clauses " << compiled.cnf.clauses.size() << '\n';
      std::cout << "nodes " << c.node_count() << '\n';
      std::cout << "edges " << c.edge_count() << '\n';
      std::cout << "models " << model_count(c).get_str() << '\n';
    }
  } else if (extform_cmd->parsed()) {
    const CompiledInstance compiled = compile_instance(p.inst, opts.encoding);
    const NnfCircuit c = normalize_for_extform(compiled.circuit);
    const LinearSystem sys = build_system(c, true);
    const WeightFunction w = weights_from_profits(p.inst);
    if (emit_lp) {
      std::vector<Rational> objective(sys.num_columns(), Rational(0));
      for (std::uint32_t e = 0; e < c.edge_count(); ++e) {
        const std::uint32_t ch = c.edge_child(e);
        if (c.kind(ch) != NodeKind::Literal) continue;
        const std::int32_t lit = c.label(ch);
        objective[e] = w.weight(static_cast<std::uint32_t>(std::abs(lit)), lit > 0 ? 1 : 0);
      }
      Rational offset = p.offset;
      if (scale) {
        const BigInt factor = common_denominator(objective);
        for (Rational& v : objective) v *= factor;
        offset *= factor;
        std::cout << "\\ objective scaled by " << factor.get_str() << '\n';
      }
      if (p.sense == Sense::minimize) std::cout << "\\ minimization instance: maximize the negated objective\n";
      write_lp(sys, objective, offset, std::cout);
    } else {
      const auto [costs, factor] = edge_costs_from_weights(c, w);
      const DualSolution z = dual_optimize(c, costs);
      std::cout << "rows " << sys.rows.size() << '\n';
      std::cout << "columns " << sys.num_columns() << '\n';
      if (z.feasible) {
        std::cout << "optimum " << format_rational(p.objective(ratio(BigInt(static_cast<long>(z.value)), factor))) << '\n';
      } else {
        std::cout << "infeasible\n";
      }
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGuard;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
}
