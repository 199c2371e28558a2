#include "bicount/counting_modes.hpp"

#include <algorithm>

#include "bicount/errors.hpp"
#include "bicount/npc_search.hpp"
#include "root_driver.hpp"

namespace bicount {

namespace {

void add_to(std::vector<BigCount>& local, std::span<const NodeId> nodes, const BigCount& value) {
  if (value == 0) return;
  for (NodeId x : nodes) local[x] += value;
}

void add_candidates(std::vector<BigCount>& local, const SearchState& state, Side side, const BigCount& value) {
  if (value == 0) return;
  for (LocalId x : state.candidates(side)) local[state.graph_id(side, x)] += value;
}

struct LocalLeaf {
  static constexpr bool kClosedForm = false;

  LocalCounts counts;

  void on_leaf(const SearchState& state, SearchMetrics&) { local_leaf(state, counts.p, counts.q, counts); }
};

struct RangeLeaf {
  static constexpr bool kClosedForm = false;

  RangeMatrix matrix;

  void on_leaf(const SearchState& state, SearchMetrics&) { range_leaf(state.sizes(), matrix); }
};

}  // namespace

void local_leaf(const SearchState& state, int p, int q, LocalCounts& local) {
  const SetSizes s = state.sizes();
  const std::int64_t need_u = p - s.h0;
  const std::int64_t need_v = q - s.h1;
  auto& lu = local.u;
  auto& lv = local.v;

  if (s.c0 == 0 || s.c1 == 0) {
    const std::int64_t p0 = s.p0 + s.c0;
    const std::int64_t p1 = s.p1 + s.c1;
    const BigCount per_u = binomial(p0 - 1, need_u - 1) * binomial(p1, need_v);
    const BigCount per_v = binomial(p0, need_u) * binomial(p1 - 1, need_v - 1);
    const BigCount per_hold = binomial(p0, need_u) * binomial(p1, need_v);
    add_to(lu, state.pivots(Side::kU), per_u);
    add_candidates(lu, state, Side::kU, per_u);
    add_to(lv, state.pivots(Side::kV), per_v);
    add_candidates(lv, state, Side::kV, per_v);
    add_to(lu, state.holds(Side::kU), per_hold);
    add_to(lv, state.holds(Side::kV), per_hold);
    return;
  }

  // Bicliques without C_V: C_U joins P_U.
  {
    const std::int64_t p0 = s.p0 + s.c0;
    const BigCount per_u = binomial(p0 - 1, need_u - 1) * binomial(s.p1, need_v);
    const BigCount per_v = binomial(p0, need_u) * binomial(s.p1 - 1, need_v - 1);
    const BigCount per_hold = binomial(p0, need_u) * binomial(s.p1, need_v);
    add_to(lu, state.pivots(Side::kU), per_u);
    add_candidates(lu, state, Side::kU, per_u);
    add_to(lv, state.pivots(Side::kV), per_v);
    add_to(lu, state.holds(Side::kU), per_hold);
    add_to(lv, state.holds(Side::kV), per_hold);
  }

  // Bicliques through C_V, each held at its first C_V node v_i with v_{i+1}.. still in P_V.
  // Summing over i collapses each node's share to a difference of two binomials.
  const std::int64_t top = s.p1 + s.c1;
  const BigCount u_side = binomial(s.p0, need_u);
  const BigCount per_u = binomial(s.p0 - 1, need_u - 1) * (binomial(top, need_v) - binomial(s.p1, need_v));
  const BigCount per_pivot_v = u_side * (binomial(top - 1, need_v - 1) - binomial(s.p1 - 1, need_v - 1));
  const BigCount per_candidate_v = u_side * binomial(top - 1, need_v - 1);
  const BigCount per_hold = u_side * (binomial(top, need_v) - binomial(s.p1, need_v));
  add_to(lu, state.pivots(Side::kU), per_u);
  add_to(lv, state.pivots(Side::kV), per_pivot_v);
  add_candidates(lv, state, Side::kV, per_candidate_v);
  add_to(lu, state.holds(Side::kU), per_hold);
  add_to(lv, state.holds(Side::kV), per_hold);
}

LocalResult local_count(const BipartiteGraph& g, int p, int q, const CountOptions& options) {
  const ReducedGraph reduced = detail::prepare(g, p, q, options);
  const BipartiteGraph& rg = reduced.graph;
  const NodeRank rank = core_order(rg);
  const int xy = std::min(p, q);
  const detail::RootPlan plan{options.strategy, options.index, reduced.u_original, xy, xy};
  const SearchLimits limits{p, q, p, q, options.max_depth, options.verify_invariants};

  auto results = detail::run_roots<LocalLeaf>(rg, rank, plan, limits, options.threads, true, [&] {
    return LocalLeaf{LocalCounts{p, q, std::vector<BigCount>(rg.u_count()), std::vector<BigCount>(rg.v_count())}};
  });

  LocalResult out;
  out.counts = LocalCounts{p, q, std::vector<BigCount>(g.u_count()), std::vector<BigCount>(g.v_count())};
  for (const auto& r : results) {
    for (std::size_t i = 0; i < rg.u_count(); ++i) out.counts.u[reduced.u_original[i]] += r.leaf.counts.u[i];
    for (std::size_t i = 0; i < rg.v_count(); ++i) out.counts.v[reduced.v_original[i]] += r.leaf.counts.v[i];
    out.metrics.merge(r.metrics);
  }
  BigCount sum_u = 0;
  for (const auto& c : out.counts.u) sum_u += c;
  out.total = sum_u / p;
  return out;
}

RangeMatrix::RangeMatrix(const RangeBounds& bounds)
    : bounds_(bounds),
      cells_(static_cast<std::size_t>(bounds.p_max - bounds.p_min + 1) *
             static_cast<std::size_t>(bounds.q_max - bounds.q_min + 1)) {}

std::size_t RangeMatrix::cell(int p, int q) const {
  if (p < bounds_.p_min || p > bounds_.p_max || q < bounds_.q_min || q > bounds_.q_max) {
    throw std::out_of_range("range cell outside the bounds");
  }
  return static_cast<std::size_t>(p - bounds_.p_min) * static_cast<std::size_t>(bounds_.q_max - bounds_.q_min + 1) +
         static_cast<std::size_t>(q - bounds_.q_min);
}

BigCount& RangeMatrix::at(int p, int q) { return cells_[cell(p, q)]; }
const BigCount& RangeMatrix::at(int p, int q) const { return cells_[cell(p, q)]; }

void RangeMatrix::add(const RangeMatrix& other) {
  for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] += other.cells_[i];
}

namespace {

// sign * C(n_u, p - h0) * C(n_v, q - h1) over p in [l0, p_hi], q in [l1, q_hi].
void sweep(RangeMatrix& m, const SetSizes& s, std::int64_t n_u, std::int64_t n_v, std::int64_t p_hi,
           std::int64_t q_hi, int sign) {
  const RangeBounds& b = m.bounds();
  const std::int64_t l0 = std::max<std::int64_t>(s.h0, b.p_min);
  const std::int64_t l1 = std::max<std::int64_t>(s.h1, b.q_min);
  p_hi = std::min<std::int64_t>(p_hi, b.p_max);
  q_hi = std::min<std::int64_t>(q_hi, b.q_max);
  for (std::int64_t p = l0; p <= p_hi; ++p) {
    const BigCount left = binomial(n_u, p - s.h0);
    if (left == 0) continue;
    for (std::int64_t q = l1; q <= q_hi; ++q) {
      const BigCount value = left * binomial(n_v, q - s.h1);
      if (sign > 0) {
        m.at(static_cast<int>(p), static_cast<int>(q)) += value;
      } else {
        m.at(static_cast<int>(p), static_cast<int>(q)) -= value;
      }
    }
  }
}

}  // namespace

void range_leaf(const SetSizes& s, RangeMatrix& matrix) {
  if (s.c0 == 0 || s.c1 == 0) {
    sweep(matrix, s, s.p0 + s.c0, s.p1 + s.c1, s.p0 + s.c0 + s.h0, s.p1 + s.c1 + s.h1, 1);
    return;
  }
  sweep(matrix, s, s.p0 + s.c0, s.p1, s.p0 + s.c0 + s.h0, s.p1 + s.h1, 1);
  sweep(matrix, s, s.p0, s.p1 + s.c1, s.p0 + s.h0, s.p1 + s.c1 + s.h1, 1);
  sweep(matrix, s, s.p0, s.p1, s.p0 + s.h0, s.p1 + s.h1, -1);
}

RangeResult range_count(const BipartiteGraph& g, const RangeBounds& bounds, const CountOptions& options) {
  if (bounds.p_min < 1 || bounds.q_min < 1 || bounds.p_min > bounds.p_max || bounds.q_min > bounds.q_max) {
    throw ArgumentError("range bounds need 1 <= p_min <= p_max and 1 <= q_min <= q_max");
  }
  const ReducedGraph reduced = detail::prepare(g, bounds.p_min, bounds.q_min, options);
  const NodeRank rank = core_order(reduced.graph);
  const int xy = std::min(bounds.p_min, bounds.q_min);
  const detail::RootPlan plan{options.strategy, options.index, reduced.u_original, xy, xy};
  const SearchLimits limits{bounds.p_max, bounds.q_max, bounds.p_min, bounds.q_min, options.max_depth,
                            options.verify_invariants};

  auto results = detail::run_roots<RangeLeaf>(reduced.graph, rank, plan, limits, options.threads, false,
                                              [&] { return RangeLeaf{RangeMatrix(bounds)}; });
  RangeResult out{RangeMatrix(bounds), {}};
  for (const auto& r : results) {
    out.matrix.add(r.leaf.matrix);
    out.metrics.merge(r.metrics);
  }
  return out;
}

}  // namespace bicount
