#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bicount/graph.hpp"

namespace bicount {

// Index of a candidate inside one search subproblem. Local ids follow ascending rank.
using LocalId = std::uint32_t;

enum class Side : std::uint8_t { kU = 0, kV = 1 };

constexpr Side opposite(Side s) { return s == Side::kU ? Side::kV : Side::kU; }
constexpr std::size_t side_index(Side s) { return static_cast<std::size_t>(s); }

// Dense row-major bit matrix; rows are U candidates, columns V candidates.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + 63) / 64), bits_(rows * stride_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c) { bits_[r * stride_ + c / 64] |= std::uint64_t{1} << (c % 64); }
  bool test(std::size_t r, std::size_t c) const {
    return (bits_[r * stride_ + c / 64] >> (c % 64)) & 1U;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> bits_;
};

// |C_U|, |C_V|, |P_U|, |P_V|, |H_U|, |H_V| of a search vertex.
struct SetSizes {
  std::int64_t c0 = 0;
  std::int64_t c1 = 0;
  std::int64_t p0 = 0;
  std::int64_t p1 = 0;
  std::int64_t h0 = 0;
  std::int64_t h1 = 0;
};

// The six sets of one NPC recursion, maintained in place.
//
// Candidates live in an array partition (members first, swap-to-boundary removal), each with
// the number of its non-neighbors in the opposite candidate set. Pivot and hold sets are kept as
// sizes only, unless member tracking is on, in which case their graph ids are recorded too.
// Every mutation goes to an undo log; rollback(mark) restores the exact prior layout.
//
// Invariants (checked by check_invariants): every candidate is adjacent to every pivot and hold
// node on the other side, nonneighbors(x) = |opposite candidates \ N(x)|, and edge_count() =
// sum over C_U of (|C_V| - nonneighbors(u)).
class SearchState {
 public:
  // u_nodes / v_nodes: graph ids of the candidates, in ascending rank. adjacency(i, j) tells
  // whether u_nodes[i] and v_nodes[j] are adjacent. hold_u / hold_v: graph ids of the initial holds.
  SearchState(std::vector<NodeId> u_nodes, std::vector<NodeId> v_nodes, BitMatrix adjacency,
              std::vector<NodeId> hold_u, std::vector<NodeId> hold_v, bool track_members = false);

  // Convenience for tests and small callers: reads adjacency from g.
  static SearchState from_graph(const BipartiteGraph& g, std::vector<NodeId> u_nodes, std::vector<NodeId> v_nodes,
                                std::vector<NodeId> hold_u, std::vector<NodeId> hold_v, bool track_members = false);

  std::size_t candidate_count(Side s) const { return sets_[side_index(s)].size; }
  std::span<const LocalId> candidates(Side s) const {
    const auto& set = sets_[side_index(s)];
    return {set.items.data(), set.size};
  }
  bool is_candidate(Side s, LocalId x) const {
    const auto& set = sets_[side_index(s)];
    return set.pos[x] < set.size;
  }
  std::size_t nonneighbors(Side s, LocalId x) const { return nonnbr_[side_index(s)][x]; }
  std::uint64_t edge_count() const { return edge_count_; }
  std::size_t pivot_count(Side s) const { return pivot_count_[side_index(s)]; }
  std::size_t hold_count(Side s) const { return hold_count_[side_index(s)]; }
  SetSizes sizes() const;

  // Only populated when member tracking is on.
  bool tracks_members() const { return track_members_; }
  std::span<const NodeId> pivots(Side s) const { return pivots_[side_index(s)]; }
  std::span<const NodeId> holds(Side s) const { return holds_[side_index(s)]; }

  std::size_t local_count(Side s) const { return graph_ids_[side_index(s)].size(); }
  NodeId graph_id(Side s, LocalId x) const { return graph_ids_[side_index(s)][x]; }

  // x on side s, y on the opposite side.
  bool adjacent(Side s, LocalId x, LocalId y) const {
    return s == Side::kU ? adjacency_.test(x, y) : adjacency_.test(y, x);
  }

  std::size_t mark() const { return log_.size(); }
  void rollback(std::size_t mark);

  // Drops a candidate, updating the opposite side's non-neighbor counts and the edge count.
  void remove_candidate(Side s, LocalId x);
  // Moves a candidate adjacent to all opposite candidates into the pivot set.
  void move_to_pivot(Side s, LocalId x);
  // Records x (already removed from the candidates) as a hold node.
  void push_hold(Side s, LocalId x);

  // Recomputes non-neighbor counts and the edge count from scratch; empty string when they agree
  // with the maintained values, else a description of the first mismatch.
  std::string check_invariants() const;

  // Full copy of the mutable state, for backtrack-integrity checks.
  struct Snapshot {
    std::vector<LocalId> items[2];
    std::vector<std::uint32_t> pos[2];
    std::size_t size[2];
    std::vector<std::uint32_t> nonnbr[2];
    std::uint64_t edge_count;
    std::size_t pivot_count[2];
    std::size_t hold_count[2];
    std::size_t pivot_members[2];
    std::size_t hold_members[2];
    bool operator==(const Snapshot&) const = default;
  };
  Snapshot snapshot() const;

 private:
  struct CandidateSet {
    std::vector<LocalId> items;
    std::vector<std::uint32_t> pos;
    std::size_t size = 0;
  };
  enum class Op : std::uint8_t { kRemove, kPivot, kHold };
  struct LogEntry {
    Op op;
    Side side;
    LocalId node;
    std::uint32_t position;
  };

  void detach(Side s, LocalId x);
  void reattach(Side s, LocalId x, std::uint32_t position);

  std::vector<NodeId> graph_ids_[2];
  BitMatrix adjacency_;
  CandidateSet sets_[2];
  std::vector<std::uint32_t> nonnbr_[2];
  std::uint64_t edge_count_ = 0;
  std::size_t pivot_count_[2] = {0, 0};
  std::size_t hold_count_[2] = {0, 0};
  bool track_members_ = false;
  std::vector<NodeId> pivots_[2];
  std::vector<NodeId> holds_[2];
  std::vector<LogEntry> log_;
};

}  // namespace bicount
