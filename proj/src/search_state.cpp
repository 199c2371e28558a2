#include "bicount/search_state.hpp"

#include <cassert>
#include <numeric>

#include "bicount/errors.hpp"

namespace bicount {

SearchState::SearchState(std::vector<NodeId> u_nodes, std::vector<NodeId> v_nodes, BitMatrix adjacency,
                         std::vector<NodeId> hold_u, std::vector<NodeId> hold_v, bool track_members)
    : adjacency_(std::move(adjacency)), track_members_(track_members) {
  if (adjacency_.rows() != u_nodes.size() || adjacency_.cols() != v_nodes.size()) {
    throw ArgumentError("adjacency matrix does not match candidate sets");
  }
  graph_ids_[0] = std::move(u_nodes);
  graph_ids_[1] = std::move(v_nodes);
  for (std::size_t s = 0; s < 2; ++s) {
    const std::size_t n = graph_ids_[s].size();
    sets_[s].items.resize(n);
    sets_[s].pos.resize(n);
    std::iota(sets_[s].items.begin(), sets_[s].items.end(), LocalId{0});
    std::iota(sets_[s].pos.begin(), sets_[s].pos.end(), std::uint32_t{0});
    sets_[s].size = n;
    nonnbr_[s].assign(n, 0);
  }
  const std::size_t nu = graph_ids_[0].size();
  const std::size_t nv = graph_ids_[1].size();
  std::vector<std::uint32_t> column_degree(nv, 0);
  for (std::size_t i = 0; i < nu; ++i) {
    std::uint32_t degree = 0;
    for (std::size_t j = 0; j < nv; ++j) {
      if (adjacency_.test(i, j)) {
        ++degree;
        ++column_degree[j];
      }
    }
    nonnbr_[0][i] = static_cast<std::uint32_t>(nv - degree);
    edge_count_ += degree;
  }
  for (std::size_t j = 0; j < nv; ++j) nonnbr_[1][j] = static_cast<std::uint32_t>(nu - column_degree[j]);

  hold_count_[0] = hold_u.size();
  hold_count_[1] = hold_v.size();
  if (track_members_) {
    holds_[0] = std::move(hold_u);
    holds_[1] = std::move(hold_v);
  }
}

SearchState SearchState::from_graph(const BipartiteGraph& g, std::vector<NodeId> u_nodes, std::vector<NodeId> v_nodes,
                                    std::vector<NodeId> hold_u, std::vector<NodeId> hold_v, bool track_members) {
  BitMatrix adjacency(u_nodes.size(), v_nodes.size());
  for (std::size_t i = 0; i < u_nodes.size(); ++i) {
    for (std::size_t j = 0; j < v_nodes.size(); ++j) {
      if (g.has_edge(u_nodes[i], v_nodes[j])) adjacency.set(i, j);
    }
  }
  return SearchState(std::move(u_nodes), std::move(v_nodes), std::move(adjacency), std::move(hold_u),
                     std::move(hold_v), track_members);
}

SetSizes SearchState::sizes() const {
  return SetSizes{static_cast<std::int64_t>(sets_[0].size),       static_cast<std::int64_t>(sets_[1].size),
                  static_cast<std::int64_t>(pivot_count_[0]),     static_cast<std::int64_t>(pivot_count_[1]),
                  static_cast<std::int64_t>(hold_count_[0]),      static_cast<std::int64_t>(hold_count_[1])};
}

void SearchState::detach(Side s, LocalId x) {
  const std::size_t si = side_index(s);
  const std::size_t oi = side_index(opposite(s));
  auto& self = sets_[si];
  const auto& other = sets_[oi];
  if (nonnbr_[si][x] > 0) {
    for (std::size_t i = 0; i < other.size; ++i) {
      LocalId y = other.items[i];
      if (!adjacent(s, x, y)) --nonnbr_[oi][y];
    }
  }
  edge_count_ -= other.size - nonnbr_[si][x];

  std::uint32_t at = self.pos[x];
  LocalId last = self.items[self.size - 1];
  self.items[at] = last;
  self.pos[last] = at;
  self.items[self.size - 1] = x;
  self.pos[x] = static_cast<std::uint32_t>(self.size - 1);
  --self.size;
  log_.push_back({Op::kRemove, s, x, at});
}

void SearchState::reattach(Side s, LocalId x, std::uint32_t position) {
  const std::size_t si = side_index(s);
  const std::size_t oi = side_index(opposite(s));
  auto& self = sets_[si];
  const auto& other = sets_[oi];
  ++self.size;
  assert(self.items[self.size - 1] == x);
  LocalId displaced = self.items[position];
  self.items[position] = x;
  self.pos[x] = position;
  self.items[self.size - 1] = displaced;
  self.pos[displaced] = static_cast<std::uint32_t>(self.size - 1);

  if (nonnbr_[si][x] > 0) {
    for (std::size_t i = 0; i < other.size; ++i) {
      LocalId y = other.items[i];
      if (!adjacent(s, x, y)) ++nonnbr_[oi][y];
    }
  }
  edge_count_ += other.size - nonnbr_[si][x];
}

void SearchState::remove_candidate(Side s, LocalId x) {
  assert(is_candidate(s, x));
  detach(s, x);
}

void SearchState::move_to_pivot(Side s, LocalId x) {
  assert(is_candidate(s, x) && nonnbr_[side_index(s)][x] == 0);
  detach(s, x);
  log_.back().op = Op::kPivot;
  ++pivot_count_[side_index(s)];
  if (track_members_) pivots_[side_index(s)].push_back(graph_id(s, x));
}

void SearchState::push_hold(Side s, LocalId x) {
  assert(!is_candidate(s, x));
  ++hold_count_[side_index(s)];
  if (track_members_) holds_[side_index(s)].push_back(graph_id(s, x));
  log_.push_back({Op::kHold, s, x, 0});
}

void SearchState::rollback(std::size_t mark) {
  while (log_.size() > mark) {
    LogEntry entry = log_.back();
    log_.pop_back();
    const std::size_t si = side_index(entry.side);
    switch (entry.op) {
      case Op::kHold:
        --hold_count_[si];
        if (track_members_) holds_[si].pop_back();
        break;
      case Op::kPivot:
        --pivot_count_[si];
        if (track_members_) pivots_[si].pop_back();
        reattach(entry.side, entry.node, entry.position);
        break;
      case Op::kRemove:
        reattach(entry.side, entry.node, entry.position);
        break;
    }
  }
}

std::string SearchState::check_invariants() const {
  std::uint64_t edges = 0;
  for (Side s : {Side::kU, Side::kV}) {
    const auto& other = sets_[side_index(opposite(s))];
    for (LocalId x : candidates(s)) {
      std::uint32_t missing = 0;
      for (std::size_t i = 0; i < other.size; ++i) {
        if (!adjacent(s, x, other.items[i])) ++missing;
      }
      if (missing != nonnbr_[side_index(s)][x]) {
        return std::string(s == Side::kU ? "U" : "V") + " candidate " + std::to_string(x) + ": maintained " +
               std::to_string(nonnbr_[side_index(s)][x]) + " non-neighbors, recomputed " + std::to_string(missing);
      }
      if (s == Side::kU) edges += other.size - missing;
    }
  }
  if (edges != edge_count_) {
    return "edge count: maintained " + std::to_string(edge_count_) + ", recomputed " + std::to_string(edges);
  }
  return {};
}

SearchState::Snapshot SearchState::snapshot() const {
  Snapshot snap;
  for (std::size_t s = 0; s < 2; ++s) {
    snap.items[s] = sets_[s].items;
    snap.pos[s] = sets_[s].pos;
    snap.size[s] = sets_[s].size;
    snap.nonnbr[s] = nonnbr_[s];
    snap.pivot_count[s] = pivot_count_[s];
    snap.hold_count[s] = hold_count_[s];
    snap.pivot_members[s] = pivots_[s].size();
    snap.hold_members[s] = holds_[s].size();
  }
  snap.edge_count = edge_count_;
  return snap;
}

}  // namespace bicount
