#pragma once

// Aggregated node features: intercept, one-hot self attributes, neighbor
// attribute-value proportions, and neighbor label proportions. Label
// proportions are taken over the *visibly labeled* neighbors only (their
// count is the denominator); a node with no labeled neighbors gets zeros
// there. Feature order is fixed: intercept, self one-hots in spec order,
// neighbor attribute proportions, neighbor label proportions.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "crawlrlr/graph.hpp"

namespace crawlrlr {

// By-name feature description; serializes to/from JSON (see serialize.hpp).
struct FeatureSpecConfig {
  bool intercept = true;
  std::vector<std::string> self_attrs;
  std::vector<std::pair<std::string, std::string>> neighbor_attr_props;
  // Label level names whose neighbor proportions are features; empty plus
  // all_label_props=true means every class.
  std::vector<std::string> neighbor_label_props;
  bool all_label_props = false;
};

class FeatureSpec {
 public:
  // Resolves names against the graph's dictionaries. Unknown attribute or
  // level names raise ConfigError.
  static FeatureSpec build(const AttributedGraph& g, const FeatureSpecConfig& cfg);
  // Default harness spec: intercept + all self attributes + all neighbor
  // attribute-value proportions + all neighbor label proportions.
  static FeatureSpec all_features(const AttributedGraph& g);
  static FeatureSpec intercept_only();

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& names() const { return names_; }

  bool intercept() const { return intercept_; }
  const std::vector<int>& self_attrs() const { return self_attrs_; }
  const std::vector<std::size_t>& self_attr_widths() const { return self_widths_; }
  const std::vector<std::pair<int, int>>& neighbor_attr_props() const {
    return neighbor_attr_props_;
  }
  const std::vector<int>& neighbor_label_props() const {
    return neighbor_label_props_;
  }

  bool operator==(const FeatureSpec& other) const = default;

 private:
  bool intercept_ = true;
  std::vector<int> self_attrs_;                      // attribute indices
  std::vector<std::size_t> self_widths_;             // one-hot widths
  std::vector<std::pair<int, int>> neighbor_attr_props_;  // (attr, level)
  std::vector<int> neighbor_label_props_;            // class indices
  std::size_t dim_ = 0;
  std::vector<std::string> names_;
};

// Realized feature rows for every node of a graph, row-major n x d.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t dim = 0;
  bool intercept_column = false;  // column 0 is an unpenalized intercept
  std::vector<double> data;

  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * dim, dim};
  }
  std::span<double> row(std::size_t i) {
    return {data.data() + i * dim, dim};
  }
};

std::vector<double> build_features(const AttributedGraph& g,
                                   const FeatureSpec& spec, NodeId v,
                                   const LabelSplit& visibility);

// Proportions estimated from min(k, d_v) neighbors sampled uniformly
// without replacement; self features stay exact.
std::vector<double> build_features_stochastic(const AttributedGraph& g,
                                              const FeatureSpec& spec, NodeId v,
                                              const LabelSplit& visibility,
                                              std::size_t k,
                                              std::uint64_t rng_seed);

FeatureMatrix build_feature_matrix(const AttributedGraph& g,
                                   const FeatureSpec& spec,
                                   const LabelSplit& visibility);

}  // namespace crawlrlr
