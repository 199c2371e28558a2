#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bicount/graph.hpp"

namespace bicount {

// Predicted work of one NPC call; always finite.
using CostValue = double;

inline constexpr double kDefaultCostCeiling = 1e300;

// Cost of an NPC call with l = |C_U|, r = |C_V| and e cross edges, for counts with p >= x,
// q >= y: 0 when l < x or r < y, else min((e/m)^m, 2^(m/2)) with m = min(l, r). Overflow is
// detected in the log domain; such values come back as `ceiling`.
CostValue cost_es(std::int64_t l, std::int64_t r, std::int64_t e, int x, int y,
                  double ceiling = kDefaultCostCeiling);

enum class SplitChoice { kNodeSplit, kEdgeSplit };

// Reusable per-worker buffers for estimate_node.
class EstimatorScratch {
 public:
  explicit EstimatorScratch(std::size_t u_count) : common_(u_count, 0) {}

 private:
  friend SplitChoice estimate_node(const BipartiteGraph&, const NodeRank&, NodeId, int, int, EstimatorScratch&);
  std::vector<std::uint32_t> common_;
  std::vector<NodeId> touched_;
  std::vector<NodeId> ordered_;
};

// Chooses node-split or edge-split for root u by comparing the predicted cost of the single
// node-split call against the summed cost of the per-edge calls. Ties go to edge-split.
SplitChoice estimate_node(const BipartiteGraph& g, const NodeRank& rank, NodeId u, int x, int y,
                          EstimatorScratch& scratch);
SplitChoice estimate_node(const BipartiteGraph& g, const NodeRank& rank, NodeId u, int x, int y);

// Per-U-node split decisions precomputed for counts with p >= x, q >= y.
struct CostIndex {
  int x = 1;
  int y = 1;
  std::uint64_t graph_hash = 0;
  std::vector<bool> edge_split;  // true = edge-split, indexed by U id
  double build_ms = 0.0;

  bool operator==(const CostIndex& other) const {
    return x == other.x && y == other.y && graph_hash == other.graph_hash && edge_split == other.edge_split;
  }
};

CostIndex build_cost_index(const BipartiteGraph& g, const NodeRank& rank, int x, int y, unsigned threads = 1);
// Ranks g by core order first.
CostIndex build_cost_index(const BipartiteGraph& g, int x, int y, unsigned threads = 1);

// JSON record {"x", "y", "graph_hash" (16 hex digits), "u_count", "edge_split" ('0'/'1' string)}.
std::string serialize_cost_index(const CostIndex& index);
// Throws ParseError on malformed input.
CostIndex parse_cost_index(std::string_view text);

}  // namespace bicount
