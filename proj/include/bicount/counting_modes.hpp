#pragma once

#include <cstddef>
#include <vector>

#include "bicount/bigcount.hpp"
#include "bicount/graph.hpp"
#include "bicount/pivot_engine.hpp"
#include "bicount/search_state.hpp"

namespace bicount {

// Per-node (p,q)-biclique participation, indexed by the input graph's ids.
struct LocalCounts {
  int p = 1;
  int q = 1;
  std::vector<BigCount> u;
  std::vector<BigCount> v;
};

// Adds the participation of every node of a leaf state to `local` (indexed by graph id of the
// state). The state must track members. Bicliques through C_V are attributed to their first
// C_V node in rank order, which gives each C_V node the same share.
void local_leaf(const SearchState& state, int p, int q, LocalCounts& local);

struct LocalResult {
  LocalCounts counts;
  BigCount total = 0;  // sum of the U entries divided by p
  SearchMetrics metrics;
};

// Exact per-node counts. Nodes removed by the core reduction stay in the vectors with 0.
LocalResult local_count(const BipartiteGraph& g, int p, int q, const CountOptions& options = {});

struct RangeBounds {
  int p_min = 1;
  int p_max = 1;
  int q_min = 1;
  int q_max = 1;
};

// Dense counts for p in [p_min, p_max], q in [q_min, q_max].
class RangeMatrix {
 public:
  RangeMatrix() = default;
  explicit RangeMatrix(const RangeBounds& bounds);

  const RangeBounds& bounds() const { return bounds_; }
  BigCount& at(int p, int q);
  const BigCount& at(int p, int q) const;
  void add(const RangeMatrix& other);

  bool operator==(const RangeMatrix&) const = default;

 private:
  std::size_t cell(int p, int q) const;

  RangeBounds bounds_;
  std::vector<BigCount> cells_;
};

// Adds a leaf's contribution to every in-range cell.
void range_leaf(const SetSizes& sizes, RangeMatrix& matrix);

struct RangeResult {
  RangeMatrix matrix;
  SearchMetrics metrics;
};

// One search pass for the whole rectangle. Holds stop at the upper bounds, pruning and the core
// reduction use the lower ones. Throws ArgumentError unless 1 <= p_min <= p_max and
// 1 <= q_min <= q_max.
RangeResult range_count(const BipartiteGraph& g, const RangeBounds& bounds, const CountOptions& options = {});

}  // namespace bicount
