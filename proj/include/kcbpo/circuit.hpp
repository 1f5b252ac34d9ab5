#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "kcbpo/bitset.hpp"
#include "kcbpo/errors.hpp"
#include "kcbpo/rational.hpp"

namespace kcbpo {

enum class NodeKind : std::uint8_t { False, True, Literal, And, Or };

struct StructureReport {
  bool decomposable = false;
  bool deterministic = false;
  bool smooth = false;
  bool operator==(const StructureReport&) const = default;
};

// Coefficients of a linear form over variables. An Or labelled with
// annotation k is deterministic when its children have pairwise disjoint
// sets of attainable values of this form.
using SumAnnotation = std::vector<std::pair<std::uint32_t, std::int64_t>>;

// Node ids are topological: every child id is smaller than its parent's.
// Edge ids are positions in the flat child array, so edge e runs from
// child(e) to the node whose child range contains e.
//
// Labels: Literal nodes store a signed variable. Or nodes store a decision
// variable (> 0), nothing (0), or -(k+1) for sum annotation k.
class NnfCircuit {
 public:
  std::uint32_t num_vars() const { return num_vars_; }
  std::uint32_t node_count() const { return static_cast<std::uint32_t>(kinds_.size()); }
  std::uint32_t edge_count() const { return static_cast<std::uint32_t>(children_.size()); }
  std::uint32_t output() const { return output_; }

  NodeKind kind(std::uint32_t n) const { return kinds_[n]; }
  std::int32_t label(std::uint32_t n) const { return labels_[n]; }
  std::span<const std::uint32_t> children(std::uint32_t n) const {
    return {children_.data() + offsets_[n], children_.data() + offsets_[n + 1]};
  }
  std::uint32_t first_edge(std::uint32_t n) const { return offsets_[n]; }
  std::uint32_t edge_child(std::uint32_t e) const { return children_[e]; }
  // Parent node of every edge.
  std::vector<std::uint32_t> edge_parents() const;

  const std::vector<SumAnnotation>& annotations() const { return annotations_; }
  const SumAnnotation* annotation_of(std::uint32_t n) const;

  // Properties guaranteed by the producer; they let large circuits skip the
  // structural checks. A read file is never certified.
  const StructureReport& certified() const { return certified_; }
  void set_certified(StructureReport r) { certified_ = r; }

  NnfCircuit with_output(std::uint32_t node) const;

 private:
  friend class NnfBuilder;
  std::uint32_t num_vars_ = 0;
  std::vector<NodeKind> kinds_;
  std::vector<std::int32_t> labels_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<std::uint32_t> children_;
  std::vector<SumAnnotation> annotations_;
  std::uint32_t output_ = 0;
  StructureReport certified_;
};

class NnfBuilder {
 public:
  explicit NnfBuilder(std::uint32_t num_vars) { c_.num_vars_ = num_vars; }

  std::uint32_t add_false();
  std::uint32_t add_true();
  std::uint32_t add_literal(std::int32_t lit);
  std::uint32_t add_and(std::span<const std::uint32_t> children);
  std::uint32_t add_or(std::span<const std::uint32_t> children, std::int32_t label = 0);
  std::uint32_t add_and(std::initializer_list<std::uint32_t> children) { return add_and(std::span(children.begin(), children.size())); }
  std::uint32_t add_or(std::initializer_list<std::uint32_t> children, std::int32_t label = 0) {
    return add_or(std::span(children.begin(), children.size()), label);
  }

  // Shared nodes, created on first use.
  std::uint32_t false_node();
  std::uint32_t true_node();
  std::uint32_t literal(std::int32_t lit);

  // Returns the Or label referring to the annotation (deduplicated).
  std::int32_t annotation_label(SumAnnotation annotation);

  std::uint32_t node_count() const { return c_.node_count(); }
  std::uint32_t edge_count() const { return c_.edge_count(); }
  void reserve(std::size_t nodes, std::size_t edges);

  NnfCircuit build(std::uint32_t output, StructureReport certified = {}) &&;

 private:
  std::uint32_t add_node(NodeKind kind, std::int32_t label, std::span<const std::uint32_t> children);
  NnfCircuit c_;
  std::vector<std::uint32_t> literal_cache_;  // index 2*var + negative
  std::int64_t false_ = -1, true_ = -1;
  std::map<SumAnnotation, std::int32_t> annotation_ids_;
};

// Variables mentioned below each node (bit index = variable id).
std::vector<Bitset> variable_sets(const NnfCircuit& c);

// assignment[var-1] in {0,1}; throws std::invalid_argument if the size is wrong.
bool evaluate(const NnfCircuit& c, const std::vector<std::uint8_t>& assignment);

StructureReport check_structure(const NnfCircuit& c);
// Throws StructureError unless the required properties are certified or
// verified. `what` names the operation for the message.
void require_structure(const NnfCircuit& c, bool deterministic, bool smooth, const char* what);

// Pads Or children with (x or not x) gadgets; with pad_output the output
// also mentions every variable of the universe.
NnfCircuit smooth(const NnfCircuit& c, bool pad_output = false);
NnfCircuit binarize_and(const NnfCircuit& c);
// Keeps only nodes reachable from the output, preserving relative order.
NnfCircuit prune(const NnfCircuit& c);
NnfCircuit normalize_for_extform(const NnfCircuit& c);

BigInt model_count(const NnfCircuit& c);
// All models over the universe in lexicographic order (variable 1 first).
// Throws CapExceeded when any intermediate model list exceeds cap.
std::vector<std::vector<std::uint8_t>> enumerate_models(const NnfCircuit& c, std::size_t cap);

void write_nnf(const NnfCircuit& c, std::ostream& out);
NnfCircuit read_nnf(std::istream& in);

}  // namespace kcbpo
