#pragma once

// File formats.
//
// Edge file: one undirected edge per line as two whitespace-separated
// integer ids. Blank lines and lines starting with '#' are skipped.
// Duplicate edges, reversed duplicates, and self-loops are dropped at load
// (counted in EdgeCleanupStats).
//
// Attribute file: CSV with a header row naming the columns. The first
// column must be `node_id`; the remaining columns are categorical
// attributes, one of which is designated the label attribute at load time.
// One row per node, an empty cell meaning MISSING. Values must not contain
// commas. Every node appearing in the edge file must have a row; rows for
// isolated nodes are allowed.

#include <string>

#include "crawlrlr/graph.hpp"

namespace crawlrlr {

AttributedGraph load_graph(const std::string& edge_file,
                           const std::string& attr_file,
                           const std::string& label_attr,
                           EdgeCleanupStats* stats = nullptr);

void write_edge_file(const AttributedGraph& g, const std::string& path);

// Writes the attribute CSV including the label column (named `label_attr`).
void write_attr_file(const AttributedGraph& g, const std::string& path,
                     const std::string& label_attr);

}  // namespace crawlrlr
