#include "crawlrlr/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "crawlrlr/error.hpp"

namespace crawlrlr {

namespace {

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::uint64_t parse_id(const std::string& token, const std::string& file,
                       std::size_t line_no) {
  std::uint64_t value = 0;
  std::size_t pos = 0;
  try {
    value = std::stoull(token, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != token.size() || token.empty()) {
    throw ParseError(file + ":" + std::to_string(line_no) +
                     ": expected integer node id, got '" + token + "'");
  }
  return value;
}

}  // namespace

AttributedGraph load_graph(const std::string& edge_file,
                           const std::string& attr_file,
                           const std::string& label_attr,
                           EdgeCleanupStats* stats) {
  // Pass 1: attribute rows keyed by original id.
  std::ifstream attrs_in(attr_file);
  if (!attrs_in) throw ParseError("cannot open attribute file: " + attr_file);
  std::string line;
  if (!std::getline(attrs_in, line)) {
    throw ParseError(attr_file + ":1: missing header row");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_csv(line);
  if (header.empty() || header[0] != "node_id") {
    throw ParseError(attr_file + ":1: first header column must be 'node_id'");
  }
  std::int64_t label_col = -1;
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i] == label_attr) label_col = static_cast<std::int64_t>(i);
  }
  if (label_col < 0) {
    throw ConfigError("label attribute '" + label_attr + "' not in header of " +
                      attr_file);
  }

  std::map<std::uint64_t, std::vector<std::string>> rows;
  std::size_t line_no = 1;
  while (std::getline(attrs_in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank_or_comment(line)) continue;
    std::vector<std::string> cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw ParseError(attr_file + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " cells, got " +
                       std::to_string(cells.size()));
    }
    const std::uint64_t id = parse_id(cells[0], attr_file, line_no);
    if (rows.count(id)) {
      throw ParseError(attr_file + ":" + std::to_string(line_no) +
                       ": duplicate node id " + std::to_string(id));
    }
    cells.erase(cells.begin());
    rows.emplace(id, std::move(cells));
  }

  // Pass 2: edges in original ids.
  std::ifstream edges_in(edge_file);
  if (!edges_in) throw ParseError("cannot open edge file: " + edge_file);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw_edges;
  std::vector<std::uint64_t> missing;
  line_no = 0;
  while (std::getline(edges_in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank_or_comment(line)) continue;
    std::istringstream ss(line);
    std::string a, b, extra;
    if (!(ss >> a >> b) || (ss >> extra)) {
      throw ParseError(edge_file + ":" + std::to_string(line_no) +
                       ": expected two whitespace-separated node ids");
    }
    raw_edges.emplace_back(parse_id(a, edge_file, line_no),
                           parse_id(b, edge_file, line_no));
  }
  for (const auto& [u, v] : raw_edges) {
    if (!rows.count(u)) missing.push_back(u);
    if (!rows.count(v)) missing.push_back(v);
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    std::string list;
    const std::size_t shown = std::min<std::size_t>(missing.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) {
      if (i) list += ", ";
      list += std::to_string(missing[i]);
    }
    if (missing.size() > shown) {
      list += ", +" + std::to_string(missing.size() - shown) + " more";
    }
    throw DataError("edge file references nodes absent from attribute file: " +
                    list);
  }

  // Dense ids in ascending original-id order (rows is an ordered map).
  std::vector<std::uint64_t> original_ids;
  original_ids.reserve(rows.size());
  for (const auto& [id, cells] : rows) original_ids.push_back(id);
  std::map<std::uint64_t, NodeId> dense;
  for (std::size_t i = 0; i < original_ids.size(); ++i) {
    dense.emplace(original_ids[i], static_cast<NodeId>(i));
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(raw_edges.size());
  for (const auto& [u, v] : raw_edges) {
    edges.emplace_back(dense.at(u), dense.at(v));
  }

  std::vector<RawAttribute> attributes;
  std::vector<std::string> label_values(rows.size());
  for (std::size_t col = 1; col < header.size(); ++col) {
    if (static_cast<std::int64_t>(col) == label_col) continue;
    RawAttribute attr;
    attr.name = header[col];
    attr.values.reserve(rows.size());
    attributes.push_back(std::move(attr));
  }
  for (const auto& [id, cells] : rows) {
    const NodeId v = dense.at(id);
    label_values[v] = cells[static_cast<std::size_t>(label_col) - 1];
    std::size_t a = 0;
    for (std::size_t col = 1; col < header.size(); ++col) {
      if (static_cast<std::int64_t>(col) == label_col) continue;
      attributes[a++].values.push_back(cells[col - 1]);
    }
  }
  // The per-attribute loops above appended in id order because rows is
  // ordered; re-check the sizes to be safe.
  for (auto& attr : attributes) {
    if (attr.values.size() != rows.size()) {
      throw DataError("internal: attribute column size mismatch");
    }
  }

  return AttributedGraph(rows.size(), std::move(edges), attributes,
                         label_values, std::move(original_ids), stats);
}

void write_edge_file(const AttributedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  out << "# undirected edges: <node_id> <node_id>\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (NodeId u : g.neighbors(v)) {
      if (v < u) out << g.original_id(v) << ' ' << g.original_id(u) << '\n';
    }
  }
}

void write_attr_file(const AttributedGraph& g, const std::string& path,
                     const std::string& label_attr) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  out << "node_id";
  for (const auto& name : g.attribute_names()) out << ',' << name;
  out << ',' << label_attr << '\n';
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out << g.original_id(v);
    for (std::size_t a = 0; a < g.attribute_count(); ++a) {
      out << ',' << g.attribute_value(v, a);
    }
    out << ',' << (g.is_labeled(v) ? g.class_names()[static_cast<std::size_t>(g.label(v))] : std::string())
        << '\n';
  }
}

}  // namespace crawlrlr
