#pragma once

// Immutable undirected attributed graph. Node ids are remapped to a dense
// 0-based range at construction; the original ids are kept for reporting.
// Categorical attribute values are interned to level codes with levels
// sorted lexicographically, so codes do not depend on input row order. An
// empty cell is interned as its own level (missing-as-category); a missing
// label is the distinct sentinel kMissingLabel.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace crawlrlr {

using NodeId = std::uint32_t;

constexpr int kMissingLabel = -1;

struct EdgeCleanupStats {
  std::size_t dropped_self_loops = 0;
  std::size_t dropped_duplicates = 0;
};

// Raw categorical column: one string value per node, "" meaning missing.
struct RawAttribute {
  std::string name;
  std::vector<std::string> values;
};

class AttributedGraph {
 public:
  AttributedGraph() = default;

  // Builds a graph from raw edges and string-valued attributes. Self-loops
  // and duplicate edges are dropped (counted in `stats` when given). Label
  // values of "" mean missing; the label column is kept separate from the
  // feature attributes.
  AttributedGraph(std::size_t node_count,
                  std::vector<std::pair<NodeId, NodeId>> edges,
                  const std::vector<RawAttribute>& attributes,
                  const std::vector<std::string>& label_values,
                  std::vector<std::uint64_t> original_ids,
                  EdgeCleanupStats* stats = nullptr);

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edge_count_; }  // undirected

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  int label(NodeId v) const { return labels_[v]; }
  bool is_labeled(NodeId v) const { return labels_[v] != kMissingLabel; }
  const std::vector<int>& labels() const { return labels_; }
  // Number of label classes H (>= 2 whenever labels are present).
  int num_classes() const { return static_cast<int>(class_names_.size()); }
  const std::vector<std::string>& class_names() const { return class_names_; }

  std::size_t attribute_count() const { return attr_names_.size(); }
  const std::vector<std::string>& attribute_names() const { return attr_names_; }
  // Index of the named attribute, or -1 when absent.
  int attribute_index(const std::string& name) const;
  const std::vector<std::string>& attribute_levels(std::size_t attr) const {
    return attr_levels_[attr];
  }
  // Level index of the named attribute value, or -1 when absent.
  int attribute_level_index(std::size_t attr, const std::string& value) const;
  std::int32_t attribute_code(NodeId v, std::size_t attr) const {
    return attr_codes_[attr][v];
  }
  const std::string& attribute_value(NodeId v, std::size_t attr) const {
    return attr_levels_[attr][static_cast<std::size_t>(attr_codes_[attr][v])];
  }

  std::uint64_t original_id(NodeId v) const { return original_ids_[v]; }
  const std::vector<std::uint64_t>& original_ids() const { return original_ids_; }
  // Dense id for an original id, or -1 when unknown.
  std::int64_t node_for_original(std::uint64_t original) const;

  // Induced subgraph on `nodes` (dense ids of this graph, need not be
  // sorted). Attribute/label dictionaries are carried over verbatim so class
  // indices and feature layouts stay comparable with the parent graph.
  AttributedGraph induced_subgraph(std::span<const NodeId> nodes) const;

  std::vector<NodeId> all_nodes() const;

  bool operator==(const AttributedGraph& other) const;

 private:
  std::size_t node_count_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<int> labels_;
  std::vector<std::string> class_names_;
  std::vector<std::string> attr_names_;
  std::vector<std::vector<std::string>> attr_levels_;
  std::vector<std::vector<std::int32_t>> attr_codes_;
  std::vector<std::uint64_t> original_ids_;

  void build_adjacency(std::vector<std::pair<NodeId, NodeId>> edges,
                       EdgeCleanupStats* stats);
};

struct LabelSplit {
  std::vector<bool> observed;  // one flag per node

  std::size_t observed_count() const;
  static LabelSplit all_observed(std::size_t node_count);
};

// Largest connected component as an induced subgraph; ties broken by the
// component containing the smallest node id.
AttributedGraph giant_component(const AttributedGraph& g);

// Marks ceil(fraction * |V|) uniformly random nodes as observed.
// Requires every node to be labeled (the harness knows ground truth).
LabelSplit split_labels(const AttributedGraph& g, double fraction,
                        std::uint64_t rng_seed);

// Induced subgraph on the observed nodes, restricted to its giant component.
AttributedGraph labeled_subgraph(const AttributedGraph& g,
                                 const LabelSplit& split);

}  // namespace crawlrlr
