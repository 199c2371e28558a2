#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bicount {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;  // (u, v)

// Immutable bipartite graph G = (U, V, E) in compressed adjacency form for both sides.
// Neighbor arrays are strictly increasing; u_neighbors(u) holds V ids and v_neighbors(v) holds U ids.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  // Builds from (u, v) pairs over dense ids. Duplicate pairs are collapsed and counted in
  // *duplicates when given. Throws ArgumentError on ids outside [0, u_count) x [0, v_count).
  static BipartiteGraph from_edges(std::size_t u_count, std::size_t v_count, std::span<const Edge> edges,
                                   std::size_t* duplicates = nullptr);

  std::size_t u_count() const { return u_offsets_.empty() ? 0 : u_offsets_.size() - 1; }
  std::size_t v_count() const { return v_offsets_.empty() ? 0 : v_offsets_.size() - 1; }
  std::size_t edge_count() const { return u_adj_.size(); }

  std::span<const NodeId> u_neighbors(NodeId u) const {
    return {u_adj_.data() + u_offsets_[u], u_adj_.data() + u_offsets_[u + 1]};
  }
  std::span<const NodeId> v_neighbors(NodeId v) const {
    return {v_adj_.data() + v_offsets_[v], v_adj_.data() + v_offsets_[v + 1]};
  }
  std::size_t u_degree(NodeId u) const { return u_offsets_[u + 1] - u_offsets_[u]; }
  std::size_t v_degree(NodeId v) const { return v_offsets_[v + 1] - v_offsets_[v]; }

  bool has_edge(NodeId u, NodeId v) const;

  // Edges sorted by (u, v).
  std::vector<Edge> edges() const;

  // Same graph with U and V swapped.
  BipartiteGraph transposed() const;

  bool operator==(const BipartiteGraph&) const = default;

 private:
  std::vector<std::size_t> u_offsets_{0};
  std::vector<NodeId> u_adj_;
  std::vector<std::size_t> v_offsets_{0};
  std::vector<NodeId> v_adj_;
};

// Table-2 style summary. Average degrees are kept as exact fractions edge_count / side size.
struct GraphStats {
  std::size_t u_count = 0;
  std::size_t v_count = 0;
  std::size_t edge_count = 0;
  std::size_t max_degree_u = 0;
  std::size_t max_degree_v = 0;
  std::uint64_t avg_degree_u_num = 0;
  std::uint64_t avg_degree_u_den = 1;
  std::uint64_t avg_degree_v_num = 0;
  std::uint64_t avg_degree_v_den = 1;

  double avg_degree_u() const { return static_cast<double>(avg_degree_u_num) / avg_degree_u_den; }
  double avg_degree_v() const { return static_cast<double>(avg_degree_v_num) / avg_degree_v_den; }
};

GraphStats graph_stats(const BipartiteGraph& g);

// 64-bit FNV-1a over the side sizes and the sorted edge list.
std::uint64_t graph_hash(const BipartiteGraph& g);

// Position of each node in one total order over U and V. Only same-side comparisons are used
// by the search.
struct NodeRank {
  std::vector<std::uint32_t> u_rank;
  std::vector<std::uint32_t> v_rank;
};

// Degeneracy order: repeatedly removes a node of minimum remaining degree from U and V taken
// together; rank = removal index. Ties go to U before V, then to the smaller id.
NodeRank core_order(const BipartiteGraph& g);

// A subgraph with dense ids plus maps from its ids back to the ids of the graph it came from.
struct ReducedGraph {
  BipartiteGraph graph;
  std::vector<NodeId> u_original;
  std::vector<NodeId> v_original;
};

// (p,q)-core: maximal subgraph where every U node keeps >= q neighbors and every V node keeps
// >= p neighbors. Linear-time peeling. Throws ArgumentError when p or q is zero.
ReducedGraph pq_core_reduce(const BipartiteGraph& g, int p, int q);

}  // namespace bicount
