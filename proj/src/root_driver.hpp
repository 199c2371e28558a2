#pragma once

// Top-level decomposition shared by the counting modes: one node-split or edge-split search per
// U node of an already reduced graph, optionally spread over worker threads.

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "bicount/cost_estimator.hpp"
#include "bicount/npc_search.hpp"

namespace bicount::detail {

// Validates the arguments and applies the (p,q)-core reduction unless disabled.
ReducedGraph prepare(const BipartiteGraph& g, int p, int q, const CountOptions& options);

struct RootPlan {
  SplitStrategy strategy = SplitStrategy::kEstimator;
  const CostIndex* index = nullptr;
  std::span<const NodeId> u_original;  // reduced id -> id the index was built over
  int x = 1;
  int y = 1;
};

// Builds the search states rooted at one U node. Owns per-worker scratch.
class RootBuilder {
 public:
  RootBuilder(const BipartiteGraph& g, const NodeRank& rank, bool track_members)
      : g_(g),
        rank_(rank),
        track_members_(track_members),
        u_local_(g.u_count(), kUnset),
        estimator_(g.u_count()) {}

  bool edge_split(NodeId u, const RootPlan& plan) {
    switch (plan.strategy) {
      case SplitStrategy::kNodeSplit:
        return false;
      case SplitStrategy::kEdgeSplit:
        return true;
      case SplitStrategy::kEstimator:
        return estimate_node(g_, rank_, u, plan.x, plan.y, estimator_) == SplitChoice::kEdgeSplit;
      case SplitStrategy::kEstimatorIndex:
        return plan.index->edge_split[plan.u_original[u]];
    }
    return false;
  }

  // Calls fn(SearchState&) once for node-split or once per neighbor for edge-split.
  template <class Fn>
  void for_each_root(NodeId u, bool use_edge_split, Fn&& fn) {
    by_rank_v_.assign(g_.u_neighbors(u).begin(), g_.u_neighbors(u).end());
    std::sort(by_rank_v_.begin(), by_rank_v_.end(),
              [&](NodeId a, NodeId b) { return rank_.v_rank[a] < rank_.v_rank[b]; });
    const std::uint32_t own = rank_.u_rank[u];

    if (!use_edge_split) {
      // C_U: higher-ranked 2-hop neighbors of u; C_V: all of N(u).
      std::vector<NodeId> cu;
      for (NodeId v : by_rank_v_) {
        for (NodeId w : g_.v_neighbors(v)) {
          if (rank_.u_rank[w] > own && u_local_[w] == kUnset) {
            u_local_[w] = 0;
            cu.push_back(w);
          }
        }
      }
      std::vector<NodeId> cv = by_rank_v_;
      SearchState state = build(std::move(cu), std::move(cv), {u}, {});
      fn(state);
      return;
    }

    for (std::size_t i = 0; i < by_rank_v_.size(); ++i) {
      const NodeId v = by_rank_v_[i];
      // C_U: higher-ranked neighbors of v; C_V: neighbors of u ranked above v.
      std::vector<NodeId> cu;
      for (NodeId w : g_.v_neighbors(v)) {
        if (rank_.u_rank[w] > own) cu.push_back(w);
      }
      std::vector<NodeId> cv(by_rank_v_.begin() + static_cast<std::ptrdiff_t>(i) + 1, by_rank_v_.end());
      SearchState state = build(std::move(cu), std::move(cv), {u}, {v});
      fn(state);
    }
  }

 private:
  static constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

  // cv must already be in rank order. Leaves u_local_ all unset.
  SearchState build(std::vector<NodeId> cu, std::vector<NodeId> cv, std::vector<NodeId> hold_u,
                    std::vector<NodeId> hold_v) {
    std::sort(cu.begin(), cu.end(), [&](NodeId a, NodeId b) { return rank_.u_rank[a] < rank_.u_rank[b]; });
    for (std::size_t i = 0; i < cu.size(); ++i) u_local_[cu[i]] = static_cast<std::uint32_t>(i);
    BitMatrix adjacency(cu.size(), cv.size());
    for (std::size_t j = 0; j < cv.size(); ++j) {
      for (NodeId w : g_.v_neighbors(cv[j])) {
        if (u_local_[w] != kUnset) adjacency.set(u_local_[w], j);
      }
    }
    for (NodeId w : cu) u_local_[w] = kUnset;
    return SearchState(std::move(cu), std::move(cv), std::move(adjacency), std::move(hold_u), std::move(hold_v),
                       track_members_);
  }

  const BipartiteGraph& g_;
  const NodeRank& rank_;
  bool track_members_;
  std::vector<std::uint32_t> u_local_;
  std::vector<NodeId> by_rank_v_;
  EstimatorScratch estimator_;
};

template <class Leaf>
struct WorkerResult {
  Leaf leaf;
  SearchMetrics metrics;
};

// Runs every root of g with a private leaf accumulator per worker. Results come back in worker
// order; callers merge them by exact addition, so the thread count never changes the outcome.
template <class Leaf, class MakeLeaf>
std::vector<WorkerResult<Leaf>> run_roots(const BipartiteGraph& g, const NodeRank& rank, const RootPlan& plan,
                                          const SearchLimits& limits, unsigned threads, bool track_members,
                                          MakeLeaf make_leaf) {
  const std::size_t n = g.u_count();
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<WorkerResult<Leaf>> results;
  results.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) results.push_back({make_leaf(), {}});

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&](unsigned t) {
    try {
      RootBuilder builder(g, rank, track_members);
      auto& [leaf, metrics] = results[t];
      for (std::size_t u = next++; u < n && !failed.load(); u = next++) {
        const bool edge = builder.edge_split(static_cast<NodeId>(u), plan);
        ++(edge ? metrics.edge_split_roots : metrics.node_split_roots);
        builder.for_each_root(static_cast<NodeId>(u), edge, [&](SearchState& state) {
          NpcSearch<Leaf>(state, leaf, metrics, limits).run();
        });
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      failed = true;
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace bicount::detail
