#include "crawlrlr/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include "crawlrlr/error.hpp"
#include "crawlrlr/rng.hpp"

namespace crawlrlr {

namespace {

// Sorted unique values of a string column; "" participates as its own level.
std::vector<std::string> collect_levels(const std::vector<std::string>& values) {
  std::vector<std::string> levels(values);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

std::int32_t level_code(const std::vector<std::string>& levels,
                        const std::string& value) {
  const auto it = std::lower_bound(levels.begin(), levels.end(), value);
  return static_cast<std::int32_t>(it - levels.begin());
}

}  // namespace

AttributedGraph::AttributedGraph(std::size_t node_count,
                                 std::vector<std::pair<NodeId, NodeId>> edges,
                                 const std::vector<RawAttribute>& attributes,
                                 const std::vector<std::string>& label_values,
                                 std::vector<std::uint64_t> original_ids,
                                 EdgeCleanupStats* stats)
    : node_count_(node_count), original_ids_(std::move(original_ids)) {
  if (label_values.size() != node_count_ || original_ids_.size() != node_count_) {
    throw ArgumentError("graph construction: per-node array sizes disagree");
  }
  for (const auto& [u, v] : edges) {
    if (u >= node_count_ || v >= node_count_) {
      throw ArgumentError("graph construction: edge endpoint out of range");
    }
  }
  build_adjacency(std::move(edges), stats);

  // Label dictionary: sorted distinct non-missing values.
  std::vector<std::string> present;
  present.reserve(label_values.size());
  for (const auto& s : label_values) {
    if (!s.empty()) present.push_back(s);
  }
  class_names_ = collect_levels(present);
  labels_.resize(node_count_);
  for (std::size_t v = 0; v < node_count_; ++v) {
    labels_[v] = label_values[v].empty()
                     ? kMissingLabel
                     : level_code(class_names_, label_values[v]);
  }

  attr_names_.reserve(attributes.size());
  attr_levels_.reserve(attributes.size());
  attr_codes_.reserve(attributes.size());
  for (const auto& attr : attributes) {
    if (attr.values.size() != node_count_) {
      throw ArgumentError("graph construction: attribute '" + attr.name +
                          "' has wrong value count");
    }
    attr_names_.push_back(attr.name);
    attr_levels_.push_back(collect_levels(attr.values));
    std::vector<std::int32_t> codes(node_count_);
    for (std::size_t v = 0; v < node_count_; ++v) {
      codes[v] = level_code(attr_levels_.back(), attr.values[v]);
    }
    attr_codes_.push_back(std::move(codes));
  }
}

void AttributedGraph::build_adjacency(
    std::vector<std::pair<NodeId, NodeId>> edges, EdgeCleanupStats* stats) {
  EdgeCleanupStats local;
  std::vector<std::vector<NodeId>> adj(node_count_);
  for (const auto& [u, v] : edges) {
    if (u == v) {
      ++local.dropped_self_loops;
      continue;
    }
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  offsets_.assign(node_count_ + 1, 0);
  std::size_t total = 0;
  for (std::size_t v = 0; v < node_count_; ++v) {
    auto& nbrs = adj[v];
    std::sort(nbrs.begin(), nbrs.end());
    const auto unique_end = std::unique(nbrs.begin(), nbrs.end());
    local.dropped_duplicates += static_cast<std::size_t>(nbrs.end() - unique_end);
    nbrs.erase(unique_end, nbrs.end());
    total += nbrs.size();
    offsets_[v + 1] = total;
  }
  // Both directions were inserted, so each duplicate undirected edge was
  // counted twice (once per endpoint).
  local.dropped_duplicates /= 2;
  adjacency_.reserve(total);
  for (const auto& nbrs : adj) {
    adjacency_.insert(adjacency_.end(), nbrs.begin(), nbrs.end());
  }
  edge_count_ = total / 2;
  if (stats) *stats = local;
}

bool AttributedGraph::has_edge(NodeId u, NodeId v) const {
  const auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

int AttributedGraph::attribute_index(const std::string& name) const {
  for (std::size_t i = 0; i < attr_names_.size(); ++i) {
    if (attr_names_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

int AttributedGraph::attribute_level_index(std::size_t attr,
                                           const std::string& value) const {
  const auto& levels = attr_levels_[attr];
  const auto it = std::lower_bound(levels.begin(), levels.end(), value);
  if (it == levels.end() || *it != value) return -1;
  return static_cast<int>(it - levels.begin());
}

std::int64_t AttributedGraph::node_for_original(std::uint64_t original) const {
  for (std::size_t v = 0; v < node_count_; ++v) {
    if (original_ids_[v] == original) return static_cast<std::int64_t>(v);
  }
  return -1;
}

AttributedGraph AttributedGraph::induced_subgraph(
    std::span<const NodeId> nodes) const {
  std::vector<NodeId> kept(nodes.begin(), nodes.end());
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (NodeId v : kept) {
    if (v >= node_count_) {
      throw ArgumentError("induced_subgraph: node id out of range");
    }
  }

  std::vector<std::int64_t> dense(node_count_, -1);
  for (std::size_t i = 0; i < kept.size(); ++i) dense[kept[i]] = static_cast<std::int64_t>(i);

  AttributedGraph out;
  out.node_count_ = kept.size();
  out.offsets_.assign(kept.size() + 1, 0);
  std::size_t total = 0;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (NodeId u : neighbors(kept[i])) {
      if (dense[u] >= 0) ++total;
    }
    out.offsets_[i + 1] = total;
  }
  out.adjacency_.reserve(total);
  for (NodeId v : kept) {
    for (NodeId u : neighbors(v)) {
      if (dense[u] >= 0) out.adjacency_.push_back(static_cast<NodeId>(dense[u]));
    }
  }
  out.edge_count_ = total / 2;

  // Dictionaries transfer verbatim; only the per-node columns are subset.
  out.class_names_ = class_names_;
  out.attr_names_ = attr_names_;
  out.attr_levels_ = attr_levels_;
  out.labels_.reserve(kept.size());
  out.original_ids_.reserve(kept.size());
  for (NodeId v : kept) {
    out.labels_.push_back(labels_[v]);
    out.original_ids_.push_back(original_ids_[v]);
  }
  out.attr_codes_.resize(attr_codes_.size());
  for (std::size_t a = 0; a < attr_codes_.size(); ++a) {
    out.attr_codes_[a].reserve(kept.size());
    for (NodeId v : kept) out.attr_codes_[a].push_back(attr_codes_[a][v]);
  }
  return out;
}

std::vector<NodeId> AttributedGraph::all_nodes() const {
  std::vector<NodeId> nodes(node_count_);
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  return nodes;
}

bool AttributedGraph::operator==(const AttributedGraph& other) const {
  return node_count_ == other.node_count_ && offsets_ == other.offsets_ &&
         adjacency_ == other.adjacency_ && labels_ == other.labels_ &&
         class_names_ == other.class_names_ && attr_names_ == other.attr_names_ &&
         attr_levels_ == other.attr_levels_ && attr_codes_ == other.attr_codes_ &&
         original_ids_ == other.original_ids_;
}

std::size_t LabelSplit::observed_count() const {
  std::size_t n = 0;
  for (bool b : observed) n += b ? 1 : 0;
  return n;
}

LabelSplit LabelSplit::all_observed(std::size_t node_count) {
  LabelSplit split;
  split.observed.assign(node_count, true);
  return split;
}

AttributedGraph giant_component(const AttributedGraph& g) {
  if (g.node_count() == 0) {
    throw ArgumentError("giant_component: empty graph");
  }
  const std::size_t n = g.node_count();
  std::vector<std::int64_t> component(n, -1);
  std::vector<std::size_t> sizes;
  for (NodeId start = 0; start < n; ++start) {
    if (component[start] >= 0) continue;
    const std::int64_t id = static_cast<std::int64_t>(sizes.size());
    std::size_t size = 0;
    std::queue<NodeId> frontier;
    frontier.push(start);
    component[start] = id;
    while (!frontier.empty()) {
      const NodeId v = frontier.front();
      frontier.pop();
      ++size;
      for (NodeId u : g.neighbors(v)) {
        if (component[u] < 0) {
          component[u] = id;
          frontier.push(u);
        }
      }
    }
    sizes.push_back(size);
  }
  // Components are discovered in order of their smallest node id, so the
  // first maximal one realizes the tie-break.
  std::size_t best = 0;
  for (std::size_t c = 1; c < sizes.size(); ++c) {
    if (sizes[c] > sizes[best]) best = c;
  }
  std::vector<NodeId> kept;
  kept.reserve(sizes[best]);
  for (NodeId v = 0; v < n; ++v) {
    if (component[v] == static_cast<std::int64_t>(best)) kept.push_back(v);
  }
  return g.induced_subgraph(kept);
}

LabelSplit split_labels(const AttributedGraph& g, double fraction,
                        std::uint64_t rng_seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ArgumentError("split_labels: fraction must be in (0, 1]");
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!g.is_labeled(v)) {
      throw ArgumentError("split_labels: graph has unlabeled nodes");
    }
  }
  const std::size_t n = g.node_count();
  const std::size_t k = static_cast<std::size_t>(
      std::min<double>(static_cast<double>(n),
                       std::ceil(fraction * static_cast<double>(n))));
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  Rng rng(rng_seed);
  rng.partial_shuffle(order, k);
  LabelSplit split;
  split.observed.assign(n, false);
  for (std::size_t i = 0; i < k; ++i) split.observed[order[i]] = true;
  return split;
}

AttributedGraph labeled_subgraph(const AttributedGraph& g,
                                 const LabelSplit& split) {
  if (split.observed.size() != g.node_count()) {
    throw ArgumentError("labeled_subgraph: split size mismatch");
  }
  std::vector<NodeId> observed;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (split.observed[v]) observed.push_back(v);
  }
  if (observed.empty()) {
    throw DataError("no labeled giant component");
  }
  return giant_component(g.induced_subgraph(observed));
}

}  // namespace crawlrlr
