#include "kcbpo/circuit.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <string>

namespace kcbpo {

// ---------------------------------------------------------------------------
// Storage

std::vector<std::uint32_t> NnfCircuit::edge_parents() const {
  std::vector<std::uint32_t> parents(children_.size());
  for (std::uint32_t n = 0; n < node_count(); ++n) {
    for (std::uint32_t e = offsets_[n]; e < offsets_[n + 1]; ++e) parents[e] = n;
  }
  return parents;
}

const SumAnnotation* NnfCircuit::annotation_of(std::uint32_t n) const {
  if (kinds_[n] != NodeKind::Or || labels_[n] >= 0) return nullptr;
  return &annotations_[static_cast<std::size_t>(-labels_[n] - 1)];
}

NnfCircuit NnfCircuit::with_output(std::uint32_t node) const {
  if (node >= node_count()) throw std::out_of_range("with_output: unknown node");
  NnfCircuit copy = *this;
  copy.output_ = node;
  return copy;
}

std::uint32_t NnfBuilder::add_node(NodeKind kind, std::int32_t label, std::span<const std::uint32_t> children) {
  const std::uint32_t id = c_.node_count();
  for (std::uint32_t ch : children) {
    if (ch >= id) throw std::invalid_argument("circuit child must precede its parent");
  }
  c_.kinds_.push_back(kind);
  c_.labels_.push_back(label);
  c_.children_.insert(c_.children_.end(), children.begin(), children.end());
  c_.offsets_.push_back(static_cast<std::uint32_t>(c_.children_.size()));
  return id;
}

std::uint32_t NnfBuilder::add_false() { return add_node(NodeKind::False, 0, {}); }
std::uint32_t NnfBuilder::add_true() { return add_node(NodeKind::True, 0, {}); }

std::uint32_t NnfBuilder::add_literal(std::int32_t lit) {
  const auto var = static_cast<std::uint32_t>(std::abs(lit));
  if (lit == 0 || var > c_.num_vars_) throw std::invalid_argument("literal outside the variable universe");
  return add_node(NodeKind::Literal, lit, {});
}

std::uint32_t NnfBuilder::add_and(std::span<const std::uint32_t> children) {
  return add_node(NodeKind::And, 0, children);
}

std::uint32_t NnfBuilder::add_or(std::span<const std::uint32_t> children, std::int32_t label) {
  if (label > 0 && static_cast<std::uint32_t>(label) > c_.num_vars_) {
    throw std::invalid_argument("decision variable outside the universe");
  }
  if (label < 0 && static_cast<std::size_t>(-label - 1) >= c_.annotations_.size()) {
    throw std::invalid_argument("unknown sum annotation");
  }
  return add_node(NodeKind::Or, label, children);
}

std::uint32_t NnfBuilder::false_node() {
  if (false_ < 0) false_ = add_false();
  return static_cast<std::uint32_t>(false_);
}

std::uint32_t NnfBuilder::true_node() {
  if (true_ < 0) true_ = add_true();
  return static_cast<std::uint32_t>(true_);
}

std::uint32_t NnfBuilder::literal(std::int32_t lit) {
  const std::size_t slot = 2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0);
  if (literal_cache_.size() <= slot) literal_cache_.resize(2 * (std::size_t{c_.num_vars_} + 1), UINT32_MAX);
  if (literal_cache_[slot] == UINT32_MAX) literal_cache_[slot] = add_literal(lit);
  return literal_cache_[slot];
}

std::int32_t NnfBuilder::annotation_label(SumAnnotation annotation) {
  std::sort(annotation.begin(), annotation.end());
  auto it = annotation_ids_.find(annotation);
  if (it != annotation_ids_.end()) return it->second;
  c_.annotations_.push_back(annotation);
  const auto label = -static_cast<std::int32_t>(c_.annotations_.size());
  annotation_ids_.emplace(std::move(annotation), label);
  return label;
}

void NnfBuilder::reserve(std::size_t nodes, std::size_t edges) {
  c_.kinds_.reserve(nodes);
  c_.labels_.reserve(nodes);
  c_.offsets_.reserve(nodes + 1);
  c_.children_.reserve(edges);
}

NnfCircuit NnfBuilder::build(std::uint32_t output, StructureReport certified) && {
  if (output >= c_.node_count()) throw std::invalid_argument("circuit output is not a node");
  c_.output_ = output;
  c_.certified_ = certified;
  return std::move(c_);
}

// ---------------------------------------------------------------------------
// Semantics and structure

std::vector<Bitset> variable_sets(const NnfCircuit& c) {
  std::vector<Bitset> vars(c.node_count(), Bitset(c.num_vars() + 1));
  for (std::uint32_t n = 0; n < c.node_count(); ++n) {
    if (c.kind(n) == NodeKind::Literal) vars[n].set(static_cast<std::size_t>(std::abs(c.label(n))));
    for (std::uint32_t ch : c.children(n)) vars[n] |= vars[ch];
  }
  return vars;
}

bool evaluate(const NnfCircuit& c, const std::vector<std::uint8_t>& assignment) {
  if (assignment.size() != c.num_vars()) throw std::invalid_argument("assignment must be total on the universe");
  std::vector<std::uint8_t> value(c.node_count());
  for (std::uint32_t n = 0; n < c.node_count(); ++n) {
    switch (c.kind(n)) {
      case NodeKind::False: value[n] = 0; break;
      case NodeKind::True: value[n] = 1; break;
      case NodeKind::Literal: {
        const std::int32_t lit = c.label(n);
        value[n] = (assignment[static_cast<std::size_t>(std::abs(lit)) - 1] != 0) == (lit > 0);
        break;
      }
      case NodeKind::And: {
        value[n] = 1;
        for (std::uint32_t ch : c.children(n)) value[n] &= value[ch];
        break;
      }
      case NodeKind::Or: {
        value[n] = 0;
        for (std::uint32_t ch : c.children(n)) value[n] |= value[ch];
        break;
      }
    }
  }
  return value[c.output()] != 0;
}

namespace {

// Swaps the bits of each (positive, negative) literal pair.
Bitset complement_literals(const Bitset& b) {
  Bitset out(b.size());
  b.for_each([&](std::size_t i) { out.set(i ^ 1U); });
  return out;
}

bool annotation_disjoint(const NnfCircuit& c, std::uint32_t n, std::vector<std::vector<std::vector<std::int64_t>>>& cache) {
  const std::size_t k = static_cast<std::size_t>(-c.label(n) - 1);
  auto& sums = cache[k];
  if (sums.empty()) {
    std::vector<std::int64_t> coeff(c.num_vars() + 1, 0);
    for (auto [var, co] : c.annotations()[k]) {
      if (var <= c.num_vars()) coeff[var] = co;
    }
    sums.resize(c.node_count());
    for (std::uint32_t m = 0; m < c.node_count(); ++m) {
      auto& s = sums[m];
      switch (c.kind(m)) {
        case NodeKind::False: break;
        case NodeKind::True: s = {0}; break;
        case NodeKind::Literal: {
          const std::int32_t lit = c.label(m);
          s = {lit > 0 ? coeff[static_cast<std::size_t>(lit)] : 0};
          break;
        }
        case NodeKind::And: {
          s = {0};
          for (std::uint32_t ch : c.children(m)) {
            std::vector<std::int64_t> next;
            for (std::int64_t a : s) {
              for (std::int64_t b : sums[ch]) next.push_back(a + b);
            }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            s = std::move(next);
          }
          break;
        }
        case NodeKind::Or: {
          for (std::uint32_t ch : c.children(m)) s.insert(s.end(), sums[ch].begin(), sums[ch].end());
          std::sort(s.begin(), s.end());
          s.erase(std::unique(s.begin(), s.end()), s.end());
          break;
        }
      }
    }
  }
  std::vector<std::int64_t> seen;
  std::size_t total = 0;
  for (std::uint32_t ch : c.children(n)) {
    seen.insert(seen.end(), sums[ch].begin(), sums[ch].end());
    total += sums[ch].size();
  }
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end() && seen.size() == total;
}

}  // namespace

StructureReport check_structure(const NnfCircuit& c) {
  StructureReport r{true, true, true};
  const auto vars = variable_sets(c);
  const std::size_t lit_bits = 2 * (std::size_t{c.num_vars()} + 1);

  // Forced literals: those true in every model; `unsat` marks nodes with no
  // model found structurally (treated as forcing everything).
  std::vector<Bitset> forced(c.node_count(), Bitset(lit_bits));
  std::vector<bool> unsat(c.node_count(), false);
  std::vector<std::vector<std::vector<std::int64_t>>> sum_cache(c.annotations().size());

  for (std::uint32_t n = 0; n < c.node_count(); ++n) {
    const auto kids = c.children(n);
    switch (c.kind(n)) {
      case NodeKind::False: unsat[n] = true; break;
      case NodeKind::True: break;
      case NodeKind::Literal: {
        const std::int32_t lit = c.label(n);
        forced[n].set(2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0));
        break;
      }
      case NodeKind::And: {
        Bitset acc(c.num_vars() + 1);
        for (std::uint32_t ch : kids) {
          if (acc.intersects(vars[ch])) r.decomposable = false;
          acc |= vars[ch];
          if (unsat[ch]) unsat[n] = true;
          forced[n] |= forced[ch];
        }
        break;
      }
      case NodeKind::Or: {
        bool first = true;
        std::vector<std::uint32_t> live;
        for (std::uint32_t ch : kids) {
          if (!(vars[ch] == vars[n])) r.smooth = false;
          if (unsat[ch]) continue;
          live.push_back(ch);
          if (first) {
            forced[n] = forced[ch];
            first = false;
          } else {
            forced[n] &= forced[ch];
          }
        }
        if (live.empty()) unsat[n] = true;
        if (!r.deterministic || live.size() < 2) break;
        if (c.label(n) < 0) {
          if (!annotation_disjoint(c, n, sum_cache)) r.deterministic = false;
          break;
        }
        for (std::size_t i = 0; i < live.size() && r.deterministic; ++i) {
          const Bitset flipped = complement_literals(forced[live[i]]);
          for (std::size_t j = i + 1; j < live.size(); ++j) {
            if (!flipped.intersects(forced[live[j]])) {
              r.deterministic = false;
              break;
            }
          }
        }
        break;
      }
    }
  }
  return r;
}

void require_structure(const NnfCircuit& c, bool deterministic, bool smooth_needed, const char* what) {
  const auto& cert = c.certified();
  if (cert.decomposable && (!deterministic || cert.deterministic) && (!smooth_needed || cert.smooth)) return;
  const StructureReport r = check_structure(c);
  auto fail = [&](const char* property) {
    throw StructureError(std::string(what) + ": circuit is not " + property);
  };
  if (!r.decomposable) fail("decomposable");
  if (deterministic && !r.deterministic) fail("structurally deterministic");
  if (smooth_needed && !r.smooth) fail("smooth");
}

namespace {

StructureReport effective_structure(const NnfCircuit& c) {
  const auto& cert = c.certified();
  if (cert.decomposable && cert.deterministic && cert.smooth) return cert;
  StructureReport r = check_structure(c);
  r.decomposable = r.decomposable || cert.decomposable;
  r.deterministic = r.deterministic || cert.deterministic;
  r.smooth = r.smooth || cert.smooth;
  return r;
}

void copy_annotations(const NnfCircuit& c, NnfBuilder& b) {
  for (const auto& a : c.annotations()) b.annotation_label(a);
}

// Copies a leaf through the builder, merging literal and constant nodes.
std::uint32_t copy_leaf(const NnfCircuit& c, std::uint32_t n, NnfBuilder& b) {
  switch (c.kind(n)) {
    case NodeKind::False: return b.false_node();
    case NodeKind::True: return b.true_node();
    default: return b.literal(c.label(n));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Transformations

NnfCircuit smooth(const NnfCircuit& c, bool pad_output) {
  require_structure(c, false, false, "smooth");
  const StructureReport before = effective_structure(c);
  const auto vars = variable_sets(c);

  NnfBuilder b(c.num_vars());
  copy_annotations(c, b);
  std::vector<std::uint32_t> gadget(c.num_vars() + 1, UINT32_MAX);
  auto gadget_of = [&](std::uint32_t var) {
    if (gadget[var] == UINT32_MAX) {
      const auto v = static_cast<std::int32_t>(var);
      gadget[var] = b.add_or({b.literal(v), b.literal(-v)}, v);
    }
    return gadget[var];
  };
  std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::uint32_t> padded;
  auto pad = [&](std::uint32_t node, const Bitset& have, const Bitset& want) {
    std::vector<std::uint32_t> missing;
    want.for_each([&](std::size_t v) {
      if (!have.test(v)) missing.push_back(static_cast<std::uint32_t>(v));
    });
    if (missing.empty()) return node;
    auto key = std::make_pair(node, missing);
    if (auto it = padded.find(key); it != padded.end()) return it->second;
    std::vector<std::uint32_t> kids{node};
    for (std::uint32_t v : missing) kids.push_back(gadget_of(v));
    const std::uint32_t id = b.add_and(kids);
    padded.emplace(std::move(key), id);
    return id;
  };

  std::vector<std::uint32_t> map(c.node_count());
  std::vector<std::uint32_t> kids;
  for (std::uint32_t n = 0; n < c.node_count(); ++n) {
    kids.clear();
    switch (c.kind(n)) {
      case NodeKind::False:
      case NodeKind::True:
      case NodeKind::Literal: map[n] = copy_leaf(c, n, b); break;
      case NodeKind::And:
        for (std::uint32_t ch : c.children(n)) kids.push_back(map[ch]);
        map[n] = b.add_and(kids);
        break;
      case NodeKind::Or:
        for (std::uint32_t ch : c.children(n)) {
          if (c.kind(ch) == NodeKind::False) continue;
          kids.push_back(pad(map[ch], vars[ch], vars[n]));
        }
        map[n] = kids.empty() ? b.false_node() : b.add_or(kids, c.label(n));
        break;
    }
  }
  std::uint32_t out = map[c.output()];
  if (pad_output && c.kind(c.output()) != NodeKind::False) {
    Bitset universe(c.num_vars() + 1);
    for (std::uint32_t v = 1; v <= c.num_vars(); ++v) universe.set(v);
    out = pad(out, vars[c.output()], universe);
  }
  return std::move(b).build(out, {true, before.deterministic, true});
}

NnfCircuit binarize_and(const NnfCircuit& c) {
  NnfBuilder b(c.num_vars());
  copy_annotations(c, b);
  std::vector<std::uint32_t> map(c.node_count());
  std::vector<std::uint32_t> kids;
  for (std::uint32_t n = 0; n < c.node_count(); ++n) {
    kids.clear();
    for (std::uint32_t ch : c.children(n)) kids.push_back(map[ch]);
    switch (c.kind(n)) {
      case NodeKind::False: map[n] = b.add_false(); break;
      case NodeKind::True: map[n] = b.add_true(); break;
      case NodeKind::Literal: map[n] = b.add_literal(c.label(n)); break;
      case NodeKind::Or: map[n] = b.add_or(kids, c.label(n)); break;
      case NodeKind::And: {
        if (kids.size() <= 2) {
          map[n] = b.add_and(kids);
          break;
        }
        std::uint32_t tail = b.add_and({kids[kids.size() - 2], kids.back()});
        for (std::size_t i = kids.size() - 2; i-- > 0;) tail = b.add_and({kids[i], tail});
        map[n] = tail;
        break;
      }
    }
  }
  return std::move(b).build(map[c.output()], c.certified());
}

NnfCircuit prune(const NnfCircuit& c) {
  std::vector<bool> live(c.node_count(), false);
  live[c.output()] = true;
  for (std::uint32_t n = c.node_count(); n-- > 0;) {
    if (!live[n]) continue;
    for (std::uint32_t ch : c.children(n)) live[ch] = true;
  }
  NnfBuilder b(c.num_vars());
  copy_annotations(c, b);
  std::vector<std::uint32_t> map(c.node_count(), UINT32_MAX);
  std::vector<std::uint32_t> kids;
  for (std::uint32_t n = 0; n < c.node_count(); ++n) {
    if (!live[n]) continue;
    kids.clear();
    for (std::uint32_t ch : c.children(n)) kids.push_back(map[ch]);
    switch (c.kind(n)) {
      case NodeKind::False: map[n] = b.add_false(); break;
      case NodeKind::True: map[n] = b.add_true(); break;
      case NodeKind::Literal: map[n] = b.add_literal(c.label(n)); break;
      case NodeKind::And: map[n] = b.add_and(kids); break;
      case NodeKind::Or: map[n] = b.add_or(kids, c.label(n)); break;
    }
  }
  return std::move(b).build(map[c.output()], c.certified());
}

namespace {

// Removes constants from gates and collapses single-child gates. Literal and
// constant inputs are shared.
NnfCircuit fold_constants(const NnfCircuit& c, StructureReport cert) {
  NnfBuilder b(c.num_vars());
  copy_annotations(c, b);
  std::vector<std::uint32_t> map(c.node_count());
  std::vector<std::uint32_t> kids;
  std::uint32_t f = UINT32_MAX, t = UINT32_MAX;
  auto is_false = [&](std::uint32_t id) { return id == f; };
  auto is_true = [&](std::uint32_t id) { return id == t; };
  auto false_id = [&] { return f = b.false_node(); };
  auto true_id = [&] { return t = b.true_node(); };
  for (std::uint32_t n = 0; n < c.node_count(); ++n) {
    kids.clear();
    switch (c.kind(n)) {
      case NodeKind::False: map[n] = false_id(); break;
      case NodeKind::True: map[n] = true_id(); break;
      case NodeKind::Literal: map[n] = b.literal(c.label(n)); break;
      case NodeKind::And: {
        bool dead = false;
        for (std::uint32_t ch : c.children(n)) {
          const std::uint32_t m = map[ch];
          if (is_false(m)) dead = true;
          if (!is_true(m)) kids.push_back(m);
        }
        if (dead) {
          map[n] = false_id();
        } else if (kids.empty()) {
          map[n] = true_id();
        } else {
          map[n] = kids.size() == 1 ? kids[0] : b.add_and(kids);
        }
        break;
      }
      case NodeKind::Or: {
        bool all_true = true;
        for (std::uint32_t ch : c.children(n)) {
          const std::uint32_t m = map[ch];
          if (is_false(m)) continue;
          if (!is_true(m)) all_true = false;
          kids.push_back(m);
        }
        if (kids.empty()) {
          map[n] = false_id();
        } else if (all_true) {
          map[n] = true_id();
        } else {
          map[n] = kids.size() == 1 ? kids[0] : b.add_or(kids, c.label(n));
        }
        break;
      }
    }
  }
  return std::move(b).build(map[c.output()], cert);
}

}  // namespace

NnfCircuit normalize_for_extform(const NnfCircuit& c) {
  require_structure(c, false, false, "normalize_for_extform");
  const StructureReport before = effective_structure(c);
  const StructureReport cert{true, before.deterministic, true};

  NnfCircuit folded = fold_constants(c, {true, before.deterministic, false});
  NnfCircuit smoothed = fold_constants(smooth(folded, true), cert);

  // Wrap the output in an Or gate; an unsatisfiable circuit gets an empty Or.
  NnfBuilder b(smoothed.num_vars());
  copy_annotations(smoothed, b);
  std::vector<std::uint32_t> kids;
  std::uint32_t out = 0;
  {
    std::vector<std::uint32_t> map(smoothed.node_count());
    for (std::uint32_t n = 0; n < smoothed.node_count(); ++n) {
      kids.clear();
      for (std::uint32_t ch : smoothed.children(n)) kids.push_back(map[ch]);
      switch (smoothed.kind(n)) {
        case NodeKind::False: map[n] = b.add_false(); break;
        case NodeKind::True: map[n] = b.add_true(); break;
        case NodeKind::Literal: map[n] = b.add_literal(smoothed.label(n)); break;
        case NodeKind::And: map[n] = b.add_and(kids); break;
        case NodeKind::Or: map[n] = b.add_or(kids, smoothed.label(n)); break;
      }
    }
    const std::uint32_t root = smoothed.output();
    if (smoothed.kind(root) == NodeKind::Or) {
      out = map[root];
    } else if (smoothed.kind(root) == NodeKind::False) {
      out = b.add_or(std::span<const std::uint32_t>{});
    } else {
      out = b.add_or({map[root]});
    }
  }
  return prune(std::move(b).build(out, cert));
}

// ---------------------------------------------------------------------------
// Counting and enumeration

BigInt model_count(const NnfCircuit& c) {
  require_structure(c, true, false, "model_count");
  const auto vars = variable_sets(c);
  std::vector<std::size_t> width(c.node_count());
  for (std::uint32_t n = 0; n < c.node_count(); ++n) width[n] = vars[n].count();

  std::vector<BigInt> count(c.node_count());
  for (std::uint32_t n = 0; n < c.node_count(); ++n) {
    switch (c.kind(n)) {
      case NodeKind::False: count[n] = 0; break;
      case NodeKind::True:
      case NodeKind::Literal: count[n] = 1; break;
      case NodeKind::And:
        count[n] = 1;
        for (std::uint32_t ch : c.children(n)) count[n] *= count[ch];
        break;
      case NodeKind::Or:
        count[n] = 0;
        for (std::uint32_t ch : c.children(n)) {
          BigInt term = count[ch];
          mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), width[n] - width[ch]);
          count[n] += term;
        }
        break;
    }
  }
  BigInt total = count[c.output()];
  mpz_mul_2exp(total.get_mpz_t(), total.get_mpz_t(), c.num_vars() - width[c.output()]);
  return total;
}

std::vector<std::vector<std::uint8_t>> enumerate_models(const NnfCircuit& c, std::size_t cap) {
  require_structure(c, false, false, "enumerate_models");
  if (c.num_vars() > 63) throw std::invalid_argument("enumerate_models supports at most 63 variables");
  const auto vars = variable_sets(c);
  auto mask_of = [](const Bitset& b) {
    std::uint64_t m = 0;
    b.for_each([&](std::size_t v) { m |= std::uint64_t{1} << v; });
    return m;
  };
  auto check = [&](std::size_t size) {
    if (size > cap) throw CapExceeded("model enumeration exceeded the cap of " + std::to_string(cap));
  };
  // Adds every combination of the free bits to each model.
  auto expand = [&](std::vector<std::uint64_t>& models, std::uint64_t free) {
    for (std::uint64_t bits = free; bits; bits &= bits - 1) {
      const std::uint64_t bit = bits & (~bits + 1);
      const std::size_t size = models.size();
      check(2 * size);
      for (std::size_t i = 0; i < size; ++i) models.push_back(models[i] | bit);
    }
  };

  std::vector<bool> live(c.node_count(), false);
  live[c.output()] = true;
  for (std::uint32_t n = c.node_count(); n-- > 0;) {
    if (live[n]) {
      for (std::uint32_t ch : c.children(n)) live[ch] = true;
    }
  }

  std::vector<std::vector<std::uint64_t>> models(c.node_count());
  for (std::uint32_t n = 0; n < c.node_count(); ++n) {
    if (!live[n]) continue;
    auto& out = models[n];
    switch (c.kind(n)) {
      case NodeKind::False: break;
      case NodeKind::True: out = {0}; break;
      case NodeKind::Literal: {
        const std::int32_t lit = c.label(n);
        out = {lit > 0 ? std::uint64_t{1} << lit : 0};
        break;
      }
      case NodeKind::And:
        out = {0};
        for (std::uint32_t ch : c.children(n)) {
          check(out.size() * models[ch].size());
          std::vector<std::uint64_t> next;
          next.reserve(out.size() * models[ch].size());
          for (std::uint64_t a : out) {
            for (std::uint64_t m : models[ch]) next.push_back(a | m);
          }
          out = std::move(next);
        }
        break;
      case NodeKind::Or: {
        const std::uint64_t mine = mask_of(vars[n]);
        for (std::uint32_t ch : c.children(n)) {
          std::vector<std::uint64_t> part = models[ch];
          expand(part, mine & ~mask_of(vars[ch]));
          out.insert(out.end(), part.begin(), part.end());
          check(out.size());
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        break;
      }
    }
  }

  std::vector<std::uint64_t> all = models[c.output()];
  std::uint64_t universe = 0;
  for (std::uint32_t v = 1; v <= c.num_vars(); ++v) universe |= std::uint64_t{1} << v;
  expand(all, universe & ~mask_of(vars[c.output()]));
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  check(all.size());

  std::vector<std::vector<std::uint8_t>> result;
  result.reserve(all.size());
  for (std::uint64_t m : all) {
    std::vector<std::uint8_t> a(c.num_vars());
    for (std::uint32_t v = 1; v <= c.num_vars(); ++v) a[v - 1] = (m >> v) & 1U;
    result.push_back(std::move(a));
  }
  std::sort(result.begin(), result.end());
  return result;
}

// ---------------------------------------------------------------------------
// c2d format

void write_nnf(const NnfCircuit& input, std::ostream& out) {
  const NnfCircuit pruned = input.output() + 1 == input.node_count() ? NnfCircuit{} : prune(input);
  const NnfCircuit& c = input.output() + 1 == input.node_count() ? input : pruned;
  out << "nnf " << c.node_count() << ' ' << c.edge_count() << ' ' << c.num_vars() << '\n';
  for (std::uint32_t n = 0; n < c.node_count(); ++n) {
    const auto kids = c.children(n);
    switch (c.kind(n)) {
      case NodeKind::False: out << "O 0 0\n"; continue;
      case NodeKind::True: out << "A 0\n"; continue;
      case NodeKind::Literal: out << "L " << c.label(n) << '\n'; continue;
      case NodeKind::And: out << "A " << kids.size(); break;
      case NodeKind::Or: out << "O " << std::max(c.label(n), 0) << ' ' << kids.size(); break;
    }
    for (std::uint32_t ch : kids) out << ' ' << ch;
    out << '\n';
  }
}

NnfCircuit read_nnf(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("nnf line " + std::to_string(line_no) + ": " + msg);
  };
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == 'c') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) fail("missing header");
  std::istringstream header(line);
  std::string tag;
  long long nodes = -1, edges = -1, vars = -1;
  header >> tag >> nodes >> edges >> vars;
  if (tag != "nnf" || !header || nodes < 1 || edges < 0 || vars < 0 || vars > INT32_MAX) fail("bad header");

  NnfBuilder b(static_cast<std::uint32_t>(vars));
  std::size_t edge_total = 0;
  std::vector<std::uint32_t> kids;
  for (long long n = 0; n < nodes; ++n) {
    if (!next_line()) fail("expected " + std::to_string(nodes) + " nodes");
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    auto read_children = [&](long long k) {
      if (k < 0) fail("negative child count");
      kids.clear();
      for (long long i = 0; i < k; ++i) {
        long long ch = -1;
        if (!(ls >> ch) || ch < 0 || ch >= n) fail("bad child reference");
        kids.push_back(static_cast<std::uint32_t>(ch));
      }
      edge_total += kids.size();
    };
    std::string rest;
    if (kind == "L") {
      long long lit = 0;
      if (!(ls >> lit) || lit == 0 || std::llabs(lit) > vars) fail("bad literal");
      b.add_literal(static_cast<std::int32_t>(lit));
    } else if (kind == "A") {
      long long k = -1;
      if (!(ls >> k)) fail("bad And node");
      read_children(k);
      if (kids.empty()) {
        b.add_true();
      } else {
        b.add_and(kids);
      }
    } else if (kind == "O") {
      long long d = -1, k = -1;
      if (!(ls >> d >> k) || d < 0 || d > vars) fail("bad Or node");
      read_children(k);
      if (kids.empty() && d == 0) {
        b.add_false();
      } else {
        b.add_or(kids, static_cast<std::int32_t>(d));
      }
    } else {
      fail("unknown node type '" + kind + "'");
    }
    if (ls >> rest) fail("trailing tokens");
  }
  if (static_cast<long long>(edge_total) != edges) fail("edge count does not match the header");
  return std::move(b).build(static_cast<std::uint32_t>(nodes - 1));
}

}  // namespace kcbpo
