#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "bicount/graph.hpp"

namespace bicount {

enum class InputFormat {
  kPlainEdgeList,  // "u v" per line, arbitrary non-negative ids
  kKonect,         // '%' comments, "u v [weight [timestamp]]", 1-based ids
};

// Accepts "plain" and "konect"; throws ArgumentError otherwise.
InputFormat parse_input_format(std::string_view name);

// A parsed graph plus the external label of every dense id. Labels are ascending per side.
struct LoadedGraph {
  BipartiteGraph graph;
  std::vector<std::uint64_t> u_labels;
  std::vector<std::uint64_t> v_labels;
  std::size_t duplicates_dropped = 0;
};

// Throws ParseError on a malformed line or when no edge is found.
LoadedGraph load_graph(std::istream& in, InputFormat format);

// "-" reads stdin.
LoadedGraph load_graph_file(const std::string& path, InputFormat format);

// Writes one "u v" line per edge in plain format. Uses the given labels when non-empty.
void write_edge_list(std::ostream& out, const BipartiteGraph& g, const std::vector<std::uint64_t>& u_labels = {},
                     const std::vector<std::uint64_t>& v_labels = {});

}  // namespace bicount
