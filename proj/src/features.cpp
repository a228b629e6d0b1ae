#include "crawlrlr/features.hpp"

#include <algorithm>

#include "crawlrlr/error.hpp"
#include "crawlrlr/rng.hpp"

namespace crawlrlr {

FeatureSpec FeatureSpec::build(const AttributedGraph& g,
                               const FeatureSpecConfig& cfg) {
  FeatureSpec spec;
  spec.intercept_ = cfg.intercept;
  if (cfg.intercept) spec.names_.push_back("intercept");

  for (const auto& name : cfg.self_attrs) {
    const int a = g.attribute_index(name);
    if (a < 0) throw ConfigError("feature spec: unknown attribute '" + name + "'");
    spec.self_attrs_.push_back(a);
    const auto& levels = g.attribute_levels(static_cast<std::size_t>(a));
    spec.self_widths_.push_back(levels.size());
    for (const auto& level : levels) {
      spec.names_.push_back("self:" + name + "=" + (level.empty() ? "<missing>" : level));
    }
  }
  for (const auto& [name, value] : cfg.neighbor_attr_props) {
    const int a = g.attribute_index(name);
    if (a < 0) throw ConfigError("feature spec: unknown attribute '" + name + "'");
    const int level = g.attribute_level_index(static_cast<std::size_t>(a), value);
    if (level < 0) {
      throw ConfigError("feature spec: attribute '" + name +
                        "' has no level '" + value + "'");
    }
    spec.neighbor_attr_props_.emplace_back(a, level);
    spec.names_.push_back("nprop:" + name + "=" + (value.empty() ? "<missing>" : value));
  }
  if (cfg.all_label_props) {
    for (int c = 0; c < g.num_classes(); ++c) {
      spec.neighbor_label_props_.push_back(c);
      spec.names_.push_back("lprop:" + g.class_names()[static_cast<std::size_t>(c)]);
    }
  } else {
    for (const auto& value : cfg.neighbor_label_props) {
      const auto& classes = g.class_names();
      const auto it = std::find(classes.begin(), classes.end(), value);
      if (it == classes.end()) {
        throw ConfigError("feature spec: unknown label class '" + value + "'");
      }
      spec.neighbor_label_props_.push_back(static_cast<int>(it - classes.begin()));
      spec.names_.push_back("lprop:" + value);
    }
  }

  spec.dim_ = (spec.intercept_ ? 1 : 0) + spec.neighbor_attr_props_.size() +
              spec.neighbor_label_props_.size();
  for (std::size_t w : spec.self_widths_) spec.dim_ += w;
  if (spec.dim_ == 0) throw ConfigError("feature spec: empty feature vector");
  return spec;
}

FeatureSpec FeatureSpec::all_features(const AttributedGraph& g) {
  FeatureSpecConfig cfg;
  cfg.intercept = true;
  cfg.all_label_props = true;
  for (std::size_t a = 0; a < g.attribute_count(); ++a) {
    const auto& name = g.attribute_names()[a];
    cfg.self_attrs.push_back(name);
    for (const auto& level : g.attribute_levels(a)) {
      cfg.neighbor_attr_props.emplace_back(name, level);
    }
  }
  return build(g, cfg);
}

FeatureSpec FeatureSpec::intercept_only() {
  FeatureSpec spec;
  spec.intercept_ = true;
  spec.dim_ = 1;
  spec.names_ = {"intercept"};
  return spec;
}

namespace {

// Aggregates proportions over the given neighbors into out.
void fill_proportions(const AttributedGraph& g, const FeatureSpec& spec,
                      std::span<const NodeId> nbrs, const LabelSplit& visibility,
                      std::span<double> out, std::size_t attr_base,
                      std::size_t label_base) {
  const auto& attr_props = spec.neighbor_attr_props();
  const auto& label_props = spec.neighbor_label_props();
  if (!nbrs.empty()) {
    for (std::size_t i = 0; i < attr_props.size(); ++i) {
      const auto [a, level] = attr_props[i];
      std::size_t count = 0;
      for (NodeId u : nbrs) {
        if (g.attribute_code(u, static_cast<std::size_t>(a)) == level) ++count;
      }
      out[attr_base + i] =
          static_cast<double>(count) / static_cast<double>(nbrs.size());
    }
  }
  if (!label_props.empty()) {
    std::size_t labeled = 0;
    std::vector<std::size_t> class_counts(g.num_classes() > 0
                                              ? static_cast<std::size_t>(g.num_classes())
                                              : std::size_t{0},
                                          0);
    for (NodeId u : nbrs) {
      if (visibility.observed[u] && g.is_labeled(u)) {
        ++labeled;
        ++class_counts[static_cast<std::size_t>(g.label(u))];
      }
    }
    for (std::size_t i = 0; i < label_props.size(); ++i) {
      out[label_base + i] =
          labeled == 0
              ? 0.0
              : static_cast<double>(class_counts[static_cast<std::size_t>(label_props[i])]) /
                    static_cast<double>(labeled);
    }
  }
}

std::vector<double> build_impl(const AttributedGraph& g, const FeatureSpec& spec,
                               NodeId v, const LabelSplit& visibility,
                               std::span<const NodeId> nbrs) {
  if (v >= g.node_count()) throw ArgumentError("build_features: node out of range");
  if (visibility.observed.size() != g.node_count()) {
    throw ArgumentError("build_features: visibility size mismatch");
  }
  std::vector<double> phi(spec.dim(), 0.0);
  std::size_t pos = 0;
  if (spec.intercept()) phi[pos++] = 1.0;
  for (std::size_t i = 0; i < spec.self_attrs().size(); ++i) {
    const auto a = static_cast<std::size_t>(spec.self_attrs()[i]);
    phi[pos + static_cast<std::size_t>(g.attribute_code(v, a))] = 1.0;
    pos += spec.self_attr_widths()[i];
  }
  const std::size_t attr_base = pos;
  const std::size_t label_base = attr_base + spec.neighbor_attr_props().size();
  fill_proportions(g, spec, nbrs, visibility, phi, attr_base, label_base);
  return phi;
}

}  // namespace

std::vector<double> build_features(const AttributedGraph& g,
                                   const FeatureSpec& spec, NodeId v,
                                   const LabelSplit& visibility) {
  if (v >= g.node_count()) throw ArgumentError("build_features: node out of range");
  return build_impl(g, spec, v, visibility, g.neighbors(v));
}

std::vector<double> build_features_stochastic(const AttributedGraph& g,
                                              const FeatureSpec& spec, NodeId v,
                                              const LabelSplit& visibility,
                                              std::size_t k,
                                              std::uint64_t rng_seed) {
  if (k == 0) throw ArgumentError("build_features_stochastic: k must be >= 1");
  if (v >= g.node_count()) throw ArgumentError("build_features: node out of range");
  const auto nbrs = g.neighbors(v);
  if (k >= nbrs.size()) return build_impl(g, spec, v, visibility, nbrs);
  std::vector<NodeId> pool(nbrs.begin(), nbrs.end());
  Rng rng(rng_seed);
  rng.partial_shuffle(pool, k);
  pool.resize(k);
  return build_impl(g, spec, v, visibility, pool);
}

FeatureMatrix build_feature_matrix(const AttributedGraph& g,
                                   const FeatureSpec& spec,
                                   const LabelSplit& visibility) {
  FeatureMatrix m;
  m.rows = g.node_count();
  m.dim = spec.dim();
  m.intercept_column = spec.intercept();
  m.data.resize(m.rows * m.dim);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const std::vector<double> phi = build_features(g, spec, v, visibility);
    std::copy(phi.begin(), phi.end(), m.row(v).begin());
  }
  return m;
}

}  // namespace crawlrlr
