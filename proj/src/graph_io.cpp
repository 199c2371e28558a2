#include "bicount/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iostream>

#include "bicount/errors.hpp"

namespace bicount {
namespace {

// Splits on ASCII whitespace.
std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::uint64_t parse_id(std::string_view token, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("expected a non-negative integer id, got '" + std::string(token) + "'", line_no);
  }
  return value;
}

// Maps sorted distinct labels to dense ids.
std::vector<std::uint64_t> distinct_sorted(std::vector<std::uint64_t> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

NodeId dense_id(const std::vector<std::uint64_t>& labels, std::uint64_t label) {
  return static_cast<NodeId>(std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
}

}  // namespace

InputFormat parse_input_format(std::string_view name) {
  if (name == "plain") return InputFormat::kPlainEdgeList;
  if (name == "konect") return InputFormat::kKonect;
  throw ArgumentError("unknown format '" + std::string(name) + "' (expected plain or konect)");
}

LoadedGraph load_graph(std::istream& in, InputFormat format) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (format == InputFormat::kKonect && !line.empty() && line.front() == '%') continue;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() < 2) throw ParseError("expected two node ids", line_no);
    if (format == InputFormat::kPlainEdgeList && tokens.size() > 2) {
      throw ParseError("expected exactly two node ids", line_no);
    }
    // Konect weight/timestamp columns are ignored.
    std::uint64_t u = parse_id(tokens[0], line_no);
    std::uint64_t v = parse_id(tokens[1], line_no);
    if (format == InputFormat::kKonect && (u == 0 || v == 0)) {
      throw ParseError("konect ids are 1-based", line_no);
    }
    raw.emplace_back(u, v);
  }
  if (raw.empty()) throw ParseError("empty input: no edges", 0);

  LoadedGraph out;
  std::vector<std::uint64_t> us, vs;
  us.reserve(raw.size());
  vs.reserve(raw.size());
  for (const auto& [u, v] : raw) {
    us.push_back(u);
    vs.push_back(v);
  }
  out.u_labels = distinct_sorted(std::move(us));
  out.v_labels = distinct_sorted(std::move(vs));
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& [u, v] : raw) edges.emplace_back(dense_id(out.u_labels, u), dense_id(out.v_labels, v));
  out.graph = BipartiteGraph::from_edges(out.u_labels.size(), out.v_labels.size(), edges, &out.duplicates_dropped);
  return out;
}

LoadedGraph load_graph_file(const std::string& path, InputFormat format) {
  if (path == "-") return load_graph(std::cin, format);
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  return load_graph(in, format);
}

void write_edge_list(std::ostream& out, const BipartiteGraph& g, const std::vector<std::uint64_t>& u_labels,
                     const std::vector<std::uint64_t>& v_labels) {
  for (const auto& [u, v] : g.edges()) {
    out << (u_labels.empty() ? u : u_labels[u]) << ' ' << (v_labels.empty() ? v : v_labels[v]) << '\n';
  }
}

}  // namespace bicount
