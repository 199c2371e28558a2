#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bicount/bigcount.hpp"
#include "bicount/graph.hpp"
#include "bicount/search_state.hpp"

namespace bicount {

struct CostIndex;

inline constexpr std::size_t kDefaultMaxDepth = 100000;

struct SearchMetrics {
  std::uint64_t npc_calls = 0;
  std::uint64_t leaves_no_edge = 0;
  std::uint64_t leaves_hold_limit = 0;
  std::uint64_t size_bound_prunes = 0;
  std::uint64_t single_candidate_closures = 0;
  std::uint64_t node_split_roots = 0;
  std::uint64_t edge_split_roots = 0;
  // Count mode only; their sum is the total.
  BigCount bicliques_counted_combinatorially = 0;
  BigCount bicliques_counted_at_hold_limit = 0;

  void merge(const SearchMetrics& other);
  BigCount total() const { return bicliques_counted_combinatorially + bicliques_counted_at_hold_limit; }
};

// Leaf value for sizes satisfying the termination condition (no cross edge, or a hold set full).
// With both candidate sets non-empty the C_U-only and C_V-only extensions overlap in the pivot
// biclique, which is subtracted once.
BigCount count_contribution(const SetSizes& sizes, int p, int q);

// Moves every candidate with no non-neighbor into its pivot set (U side first). Returns the
// number moved. Recorded in the state's undo log.
std::size_t find_pivots(SearchState& state);

// Branch list of the minimum non-neighbor partition. The list for the other side is empty.
struct Partition {
  Side side = Side::kU;
  std::vector<LocalId> nodes;  // ascending rank
  Side pivot_side = Side::kU;  // the node w the partition was built from
  LocalId pivot_node = 0;
};

// Picks w minimising min(|C_U \ N(w)|, |C_V \ N(w)|) (ties: U before V, then lower rank), then
// branches on C_U \ N(w) when it is no larger than C_V \ N(w), else on C_V \ N(w).
// Requires both candidate sets non-empty and pivots already extracted.
Partition min_nonneighbor_partition(const SearchState& state);

// Shortcut evaluation after pivot extraction: a hold set overshooting (p, q) or candidates too
// few to reach it give 0; a single candidate on either side is closed in one step. Returns
// nullopt when none applies.
std::optional<BigCount> early_terminate(const SearchState& state, int p, int q);

// Parameters of one recursion. Single counting uses p = p_floor and q = q_floor; range counting
// stops holds at the upper bounds and prunes by the lower ones.
struct SearchLimits {
  int p = 1;
  int q = 1;
  int p_floor = 1;
  int q_floor = 1;
  std::size_t max_depth = kDefaultMaxDepth;
  bool verify = false;
};

// Exact number of (p,q)-bicliques that contain the state's holds and extend them from the pivot
// and candidate sets. The state is restored on return.
BigCount npc_count(SearchState& state, int p, int q, SearchMetrics& metrics,
                   std::size_t max_depth = kDefaultMaxDepth, bool verify = false);

enum class SplitStrategy { kNodeSplit, kEdgeSplit, kEstimator, kEstimatorIndex };

const char* strategy_name(SplitStrategy s);
// Accepts node-split, edge-split, estimator, estimator-index.
SplitStrategy parse_strategy(const std::string& name);

struct CountOptions {
  SplitStrategy strategy = SplitStrategy::kEstimator;
  // Required by kEstimatorIndex; indexed by the input graph's U ids.
  const CostIndex* index = nullptr;
  unsigned threads = 1;
  std::size_t max_depth = kDefaultMaxDepth;
  bool verify_invariants = false;
  bool core_reduction = true;
};

struct CountResult {
  BigCount count = 0;
  SearchMetrics metrics;
};

// Global (p,q)-biclique count. Reduces to the (p,q)-core, ranks by core order, then sums one
// node-split or edge-split search per U node. Throws ArgumentError when p or q is < 1 or the
// index does not fit the graph, ResourceError when the depth cap is hit.
CountResult top_level_count(const BipartiteGraph& g, int p, int q, const CountOptions& options = {});

}  // namespace bicount
