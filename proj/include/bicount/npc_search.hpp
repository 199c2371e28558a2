#pragma once

#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bicount/errors.hpp"
#include "bicount/pivot_engine.hpp"
#include "bicount/search_state.hpp"

namespace bicount {

// The NPC recursion, parameterised by what happens at a leaf.
//
// A Leaf provides
//   static constexpr bool kClosedForm;
//   void on_leaf(const SearchState&, SearchMetrics&);
// and, when kClosedForm is true (single-(p,q) counting only),
//   void on_closed_form(const BigCount&, SearchMetrics&);
// which receives the early_terminate value for a single remaining candidate. Leaves without a
// closed form get that case as two explicit leaf states (without / with the candidate held).
template <class Leaf>
class NpcSearch {
 public:
  NpcSearch(SearchState& state, Leaf& leaf, SearchMetrics& metrics, const SearchLimits& limits)
      : state_(state), leaf_(leaf), metrics_(metrics), limits_(limits) {}

  void run() { descend(0); }

 private:
  struct Frame {
    Partition partition;
    std::vector<LocalId> dropped;
  };

  Frame& frame(std::size_t depth) {
    while (frames_.size() <= depth) frames_.emplace_back();
    return frames_[depth];
  }

  void descend(std::size_t depth) {
    if (depth > limits_.max_depth) {
      throw ResourceError("recursion depth cap of " + std::to_string(limits_.max_depth) + " exceeded");
    }
    ++metrics_.npc_calls;
    std::optional<SearchState::Snapshot> before;
    if (limits_.verify) {
      if (auto problem = state_.check_invariants(); !problem.empty()) {
        throw std::logic_error("search state invariant broken: " + problem);
      }
      before = state_.snapshot();
    }
    const std::size_t mark = state_.mark();
    visit(depth);
    state_.rollback(mark);
    if (limits_.verify && state_.snapshot() != *before) {
      throw std::logic_error("search state not restored after backtracking");
    }
  }

  // Drops the opposite candidates that are not adjacent to x, then holds x.
  void hold_with_neighbors(Side side, LocalId x, std::vector<LocalId>& dropped) {
    const Side other = opposite(side);
    dropped.clear();
    for (LocalId y : state_.candidates(other)) {
      if (!state_.adjacent(side, x, y)) dropped.push_back(y);
    }
    for (LocalId y : dropped) state_.remove_candidate(other, y);
    state_.push_hold(side, x);
  }

  void visit(std::size_t depth) {
    if (state_.edge_count() == 0 || state_.hold_count(Side::kU) >= static_cast<std::size_t>(limits_.p) ||
        state_.hold_count(Side::kV) >= static_cast<std::size_t>(limits_.q)) {
      if (state_.edge_count() == 0) {
        ++metrics_.leaves_no_edge;
      } else {
        ++metrics_.leaves_hold_limit;
      }
      leaf_.on_leaf(state_, metrics_);
      return;
    }

    find_pivots(state_);

    const SetSizes s = state_.sizes();
    if (s.h0 > limits_.p || s.h1 > limits_.q || s.c0 + s.p0 + s.h0 < limits_.p_floor ||
        s.c1 + s.p1 + s.h1 < limits_.q_floor) {
      ++metrics_.size_bound_prunes;
      return;
    }
    if (state_.edge_count() == 0) {
      ++metrics_.leaves_no_edge;
      leaf_.on_leaf(state_, metrics_);
      return;
    }
    if (s.c0 == 1 || s.c1 == 1) {
      ++metrics_.single_candidate_closures;
      if constexpr (Leaf::kClosedForm) {
        leaf_.on_closed_form(*early_terminate(state_, limits_.p, limits_.q), metrics_);
      } else {
        const Side side = s.c0 == 1 ? Side::kU : Side::kV;
        const LocalId x = state_.candidates(side)[0];
        state_.remove_candidate(side, x);
        leaf_.on_leaf(state_, metrics_);
        hold_with_neighbors(side, x, frame(depth).dropped);
        leaf_.on_leaf(state_, metrics_);
      }
      return;
    }

    Frame& f = frame(depth);
    min_nonneighbor_partition(state_, f.partition);
    const Side side = f.partition.side;
    for (LocalId x : f.partition.nodes) {
      state_.remove_candidate(side, x);
      const std::size_t branch_mark = state_.mark();
      hold_with_neighbors(side, x, f.dropped);
      descend(depth + 1);
      state_.rollback(branch_mark);
    }
    descend(depth + 1);
  }

  SearchState& state_;
  Leaf& leaf_;
  SearchMetrics& metrics_;
  SearchLimits limits_;
  std::deque<Frame> frames_;
};

// Reuses out.nodes' storage.
void min_nonneighbor_partition(const SearchState& state, Partition& out);

// Leaf policy for single (p,q) counting.
struct CountLeaf {
  static constexpr bool kClosedForm = true;

  int p = 1;
  int q = 1;
  BigCount total = 0;

  void on_leaf(const SearchState& state, SearchMetrics& metrics) {
    const SetSizes s = state.sizes();
    BigCount value = count_contribution(s, p, q);
    if (value == 0) return;
    if (s.h0 < p && s.h1 < q) {
      metrics.bicliques_counted_combinatorially += value;
    } else {
      metrics.bicliques_counted_at_hold_limit += value;
    }
    total += value;
  }

  void on_closed_form(const BigCount& value, SearchMetrics& metrics) {
    metrics.bicliques_counted_combinatorially += value;
    total += value;
  }
};

}  // namespace bicount
