#include "bicount/pivot_engine.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "bicount/cost_estimator.hpp"
#include "bicount/errors.hpp"
#include "bicount/npc_search.hpp"
#include "root_driver.hpp"

namespace bicount {

void SearchMetrics::merge(const SearchMetrics& other) {
  npc_calls += other.npc_calls;
  leaves_no_edge += other.leaves_no_edge;
  leaves_hold_limit += other.leaves_hold_limit;
  size_bound_prunes += other.size_bound_prunes;
  single_candidate_closures += other.single_candidate_closures;
  node_split_roots += other.node_split_roots;
  edge_split_roots += other.edge_split_roots;
  bicliques_counted_combinatorially += other.bicliques_counted_combinatorially;
  bicliques_counted_at_hold_limit += other.bicliques_counted_at_hold_limit;
}

BigCount count_contribution(const SetSizes& s, int p, int q) {
  const std::int64_t need_u = p - s.h0;
  const std::int64_t need_v = q - s.h1;
  if (s.c0 == 0 || s.c1 == 0) return binomial(s.p0 + s.c0, need_u) * binomial(s.p1 + s.c1, need_v);
  const BigCount pivots_only = binomial(s.p0, need_u) * binomial(s.p1, need_v);
  return binomial(s.p0 + s.c0, need_u) * binomial(s.p1, need_v) +
         binomial(s.p0, need_u) * binomial(s.p1 + s.c1, need_v) - pivots_only;
}

std::size_t find_pivots(SearchState& state) {
  std::size_t moved = 0;
  for (Side side : {Side::kU, Side::kV}) {
    // Walking down from the end keeps unvisited members in place when a pivot is swapped out.
    for (std::size_t i = state.candidate_count(side); i-- > 0;) {
      const LocalId x = state.candidates(side)[i];
      if (state.nonneighbors(side, x) == 0) {
        state.move_to_pivot(side, x);
        ++moved;
      }
    }
  }
  return moved;
}

void min_nonneighbor_partition(const SearchState& state, Partition& out) {
  const std::size_t cu = state.candidate_count(Side::kU);
  const std::size_t cv = state.candidate_count(Side::kV);
  std::size_t best_key = std::numeric_limits<std::size_t>::max();
  Side best_side = Side::kU;
  LocalId best = 0;
  for (LocalId x : state.candidates(Side::kU)) {
    const std::size_t key = std::min(cu, state.nonneighbors(Side::kU, x));
    if (key < best_key || (key == best_key && x < best)) {
      best_key = key;
      best = x;
    }
  }
  for (LocalId x : state.candidates(Side::kV)) {
    const std::size_t key = std::min(state.nonneighbors(Side::kV, x), cv);
    if (key < best_key || (key == best_key && best_side == Side::kV && x < best)) {
      best_key = key;
      best_side = Side::kV;
      best = x;
    }
  }

  // |C_U \ N(w)| and |C_V \ N(w)|; N(w) never meets w's own side.
  const std::size_t missing_u = best_side == Side::kU ? cu : state.nonneighbors(Side::kV, best);
  const std::size_t missing_v = best_side == Side::kU ? state.nonneighbors(Side::kU, best) : cv;

  out.pivot_side = best_side;
  out.pivot_node = best;
  out.side = missing_u <= missing_v ? Side::kU : Side::kV;
  out.nodes.clear();
  for (LocalId x : state.candidates(out.side)) {
    if (out.side == best_side || !state.adjacent(out.side, x, best)) out.nodes.push_back(x);
  }
  std::sort(out.nodes.begin(), out.nodes.end());
}

Partition min_nonneighbor_partition(const SearchState& state) {
  Partition out;
  min_nonneighbor_partition(state, out);
  return out;
}

std::optional<BigCount> early_terminate(const SearchState& state, int p, int q) {
  const SetSizes s = state.sizes();
  if (s.h0 > p || s.h1 > q) return BigCount(0);
  if (s.c0 + s.p0 + s.h0 < p || s.c1 + s.p1 + s.h1 < q) return BigCount(0);
  if (s.c0 == 1) {
    const LocalId u = state.candidates(Side::kU)[0];
    const auto n_u = static_cast<std::int64_t>(s.c1 - state.nonneighbors(Side::kU, u));
    return binomial(s.p0, p - s.h0) * binomial(s.p1 + s.c1, q - s.h1) +
           binomial(s.p0, p - s.h0 - 1) * binomial(s.p1 + n_u, q - s.h1);
  }
  if (s.c1 == 1) {
    const LocalId v = state.candidates(Side::kV)[0];
    const auto n_v = static_cast<std::int64_t>(s.c0 - state.nonneighbors(Side::kV, v));
    return binomial(s.p0 + n_v, p - s.h0) * binomial(s.p1, q - s.h1 - 1) +
           binomial(s.p0 + s.c0, p - s.h0) * binomial(s.p1, q - s.h1);
  }
  return std::nullopt;
}

BigCount npc_count(SearchState& state, int p, int q, SearchMetrics& metrics, std::size_t max_depth, bool verify) {
  CountLeaf leaf{p, q};
  SearchLimits limits{p, q, p, q, max_depth, verify};
  NpcSearch<CountLeaf>(state, leaf, metrics, limits).run();
  return leaf.total;
}

const char* strategy_name(SplitStrategy s) {
  switch (s) {
    case SplitStrategy::kNodeSplit:
      return "node-split";
    case SplitStrategy::kEdgeSplit:
      return "edge-split";
    case SplitStrategy::kEstimator:
      return "estimator";
    case SplitStrategy::kEstimatorIndex:
      return "estimator-index";
  }
  return "?";
}

SplitStrategy parse_strategy(const std::string& name) {
  for (auto s : {SplitStrategy::kNodeSplit, SplitStrategy::kEdgeSplit, SplitStrategy::kEstimator,
                 SplitStrategy::kEstimatorIndex}) {
    if (name == strategy_name(s)) return s;
  }
  throw ArgumentError("unknown strategy '" + name + "'");
}

namespace detail {

ReducedGraph prepare(const BipartiteGraph& g, int p, int q, const CountOptions& options) {
  if (p < 1 || q < 1) throw ArgumentError("p and q must be >= 1");
  if (options.strategy == SplitStrategy::kEstimatorIndex) {
    if (options.index == nullptr) throw ArgumentError("strategy estimator-index needs a cost index");
    if (options.index->edge_split.size() != g.u_count() || options.index->graph_hash != graph_hash(g)) {
      throw ArgumentError("cost index was built for a different graph");
    }
  }
  if (options.core_reduction) return pq_core_reduce(g, p, q);
  ReducedGraph same{g, std::vector<NodeId>(g.u_count()), std::vector<NodeId>(g.v_count())};
  std::iota(same.u_original.begin(), same.u_original.end(), NodeId{0});
  std::iota(same.v_original.begin(), same.v_original.end(), NodeId{0});
  return same;
}

}  // namespace detail

CountResult top_level_count(const BipartiteGraph& g, int p, int q, const CountOptions& options) {
  const ReducedGraph reduced = detail::prepare(g, p, q, options);
  const NodeRank rank = core_order(reduced.graph);
  const int xy = std::min(p, q);
  const detail::RootPlan plan{options.strategy, options.index, reduced.u_original, xy, xy};
  const SearchLimits limits{p, q, p, q, options.max_depth, options.verify_invariants};

  auto results = detail::run_roots<CountLeaf>(reduced.graph, rank, plan, limits, options.threads, false,
                                              [&] { return CountLeaf{p, q}; });
  CountResult out;
  for (const auto& r : results) {
    out.count += r.leaf.total;
    out.metrics.merge(r.metrics);
  }
  return out;
}

}  // namespace bicount
