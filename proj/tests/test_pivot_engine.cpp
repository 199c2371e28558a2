#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bicount/cost_estimator.hpp"
#include "bicount/errors.hpp"
#include "bicount/npc_search.hpp"
#include "bicount/oracle.hpp"
#include "bicount/pivot_engine.hpp"
#include "test_support.hpp"

using namespace bicount;
using bicount::testing::graph_of;

namespace {

SetSizes sizes(std::int64_t c0, std::int64_t c1, std::int64_t p0, std::int64_t p1, std::int64_t h0,
               std::int64_t h1) {
  return SetSizes{c0, c1, p0, p1, h0, h1};
}

constexpr SplitStrategy kAll[] = {SplitStrategy::kNodeSplit, SplitStrategy::kEdgeSplit, SplitStrategy::kEstimator,
                                  SplitStrategy::kEstimatorIndex};

BigCount count_with(const BipartiteGraph& g, int p, int q, SplitStrategy s, bool verify = false) {
  CostIndex index = build_cost_index(g, std::min(p, q), std::min(p, q));
  CountOptions o;
  o.strategy = s;
  o.index = &index;
  o.verify_invariants = verify;
  return top_level_count(g, p, q, o).count;
}

// The example graph with the extra edge u1-v0 that the step-by-step trace relies on.
BipartiteGraph figure1_with_u1_v0() {
  auto edges = oracle::figure1().edges;
  edges.emplace_back(1, 0);
  return BipartiteGraph::from_edges(5, 5, edges);
}

}  // namespace

TEST_CASE("count_contribution") {
  CHECK(count_contribution(sizes(3, 1, 0, 2, 1, 1), 3, 3) == 3);
  CHECK(count_contribution(sizes(0, 0, 2, 2, 1, 1), 3, 3) == 1);
  CHECK(count_contribution(sizes(2, 3, 1, 0, 1, 0), 2, 2) == 3);
  // One side empty: plain product.
  CHECK(count_contribution(sizes(0, 4, 3, 1, 0, 0), 2, 2) == binomial(3, 2) * binomial(5, 2));
  // Hold overshoot gives nothing.
  CHECK(count_contribution(sizes(0, 0, 5, 5, 4, 0), 3, 3) == 0);
}

TEST_CASE("find_pivots on the example root") {
  // Node-split root at u0: C_U = {u1..u4}, C_V = {v0..v3}, H_U = {u0}.
  auto g = figure1_with_u1_v0();
  auto s = SearchState::from_graph(g, {1, 2, 3, 4}, {0, 1, 2, 3}, {0}, {}, true);
  CHECK(find_pivots(s) == 2);
  CHECK(s.pivot_count(Side::kV) == 2);
  auto pv = std::vector<NodeId>(s.pivots(Side::kV).begin(), s.pivots(Side::kV).end());
  std::sort(pv.begin(), pv.end());
  CHECK(pv == std::vector<NodeId>{1, 2});
  CHECK(s.candidate_count(Side::kU) == 4);
  CHECK(s.candidate_count(Side::kV) == 2);
  CHECK(s.check_invariants().empty());

  // Nothing left to move.
  CHECK(find_pivots(s) == 0);
}

TEST_CASE("find_pivots drains a complete bipartite state") {
  auto g = oracle::complete_bipartite(3, 4);
  auto s = SearchState::from_graph(g, {0, 1, 2}, {0, 1, 2, 3}, {}, {});
  CHECK(find_pivots(s) == 7);
  CHECK(s.pivot_count(Side::kU) == 3);
  CHECK(s.pivot_count(Side::kV) == 4);
  CHECK(s.edge_count() == 0);
}

TEST_CASE("minimum non-neighbor partition reproduces the example trace") {
  auto g = figure1_with_u1_v0();
  auto s = SearchState::from_graph(g, {1, 2, 3, 4}, {0, 1, 2, 3}, {0}, {}, true);
  find_pivots(s);
  const Partition part = min_nonneighbor_partition(s);
  CHECK(part.pivot_side == Side::kU);
  CHECK(s.graph_id(Side::kU, part.pivot_node) == 1);  // w = u1
  CHECK(part.side == Side::kV);
  REQUIRE(part.nodes.size() == 1);
  CHECK(s.graph_id(Side::kV, part.nodes[0]) == 3);  // L_V = {v3}

  // Holding v3 leaves C_U = {u2,u3,u4}, C_V = {v0} with no cross edge: three bicliques.
  s.remove_candidate(Side::kV, part.nodes[0]);
  for (LocalId x : std::vector<LocalId>(s.candidates(Side::kU).begin(), s.candidates(Side::kU).end())) {
    if (!s.adjacent(Side::kV, part.nodes[0], x)) s.remove_candidate(Side::kU, x);
  }
  s.push_hold(Side::kV, part.nodes[0]);
  CHECK(s.edge_count() == 0);
  const SetSizes z = s.sizes();
  CHECK(z.c0 == 3);
  CHECK(z.c1 == 1);
  CHECK(z.p1 == 2);
  CHECK(count_contribution(z, 3, 3) == 3);
}

TEST_CASE("minimum non-neighbor partition small cases") {
  // Perfect matching 2x2: every node has one non-neighbor; w = u0, branch on V, one node.
  auto m = graph_of(2, 2, {{0, 0}, {1, 1}});
  auto s = SearchState::from_graph(m, {0, 1}, {0, 1}, {}, {});
  CHECK(find_pivots(s) == 0);
  auto part = min_nonneighbor_partition(s);
  CHECK(part.pivot_side == Side::kU);
  CHECK(part.pivot_node == 0);
  CHECK(part.side == Side::kV);
  CHECK(part.nodes == std::vector<LocalId>{1});

  // |C_U| = 1: once v0 has left as a pivot, the single U candidate is its own branch list.
  auto one = graph_of(1, 3, {{0, 0}});
  auto t = SearchState::from_graph(one, {0}, {0, 1, 2}, {}, {});
  CHECK(find_pivots(t) == 1);
  auto p2 = min_nonneighbor_partition(t);
  CHECK(p2.side == Side::kU);
  CHECK(p2.nodes == std::vector<LocalId>{0});
}

TEST_CASE("early termination") {
  auto g = oracle::figure1().graph();
  {
    auto s = SearchState::from_graph(g, {2}, {1}, {0, 1, 3, 4}, {});
    CHECK(early_terminate(s, 3, 3) == BigCount(0));  // h0 = p + 1
  }
  {
    // c0 + p0 + h0 = p - 1
    auto s = SearchState::from_graph(g, {2}, {1, 2, 3}, {3}, {});
    CHECK(early_terminate(s, 3, 3) == BigCount(0));
  }
  {
    // One U candidate u with n_u = 2 = c1; p0 = 1, p1 = 0, h0 = h1 = 1, p = q = 2.
    auto k = oracle::complete_bipartite(3, 3);
    auto s = SearchState::from_graph(k, {1, 2}, {1, 2}, {0}, {0});
    s.move_to_pivot(Side::kU, 0);
    const SetSizes z = s.sizes();
    CHECK(z.c0 == 1);
    CHECK(z.p0 == 1);
    CHECK(early_terminate(s, 2, 2) == BigCount(4));
  }
  {
    // Single V candidate, checked against the search itself.
    auto s = SearchState::from_graph(g, {0, 1, 2, 3}, {3}, {}, {2});
    SearchMetrics m;
    const auto closed = early_terminate(s, 2, 2);
    REQUIRE(closed.has_value());
    CHECK(*closed == npc_count(s, 2, 2, m));
  }
  {
    auto s = SearchState::from_graph(g, {2, 3, 4}, {1, 2, 3, 4}, {}, {});
    CHECK_FALSE(early_terminate(s, 2, 2).has_value());
  }
}

TEST_CASE("npc_count on complete candidates") {
  for (int m = 1; m <= 6; ++m) {
    for (int n = 1; n <= 6; ++n) {
      auto k = oracle::complete_bipartite(m, n);
      std::vector<NodeId> us(m), vs(n);
      for (int i = 0; i < m; ++i) us[i] = i;
      for (int i = 0; i < n; ++i) vs[i] = i;
      for (int p = 1; p <= m; ++p) {
        for (int q = 1; q <= n; ++q) {
          auto s = SearchState::from_graph(k, us, vs, {}, {});
          SearchMetrics metrics;
          CHECK(npc_count(s, p, q, metrics) == binomial(m, p) * binomial(n, q));
        }
      }
    }
  }
}

TEST_CASE("npc_count leaves the state untouched") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = oracle::random_bipartite(8, 8, 0.5, seed);
    std::vector<NodeId> us(8), vs(8);
    for (NodeId i = 0; i < 8; ++i) us[i] = vs[i] = i;
    auto s = SearchState::from_graph(g, us, vs, {}, {});
    const auto before = s.snapshot();
    SearchMetrics metrics;
    const BigCount c = npc_count(s, 2, 2, metrics, kDefaultMaxDepth, true);
    CHECK(s.snapshot() == before);
    CHECK(c == oracle::brute_force_count(g, 2, 2));
  }
}

TEST_CASE("global counts") {
  auto fig = oracle::figure1().graph();
  for (auto s : kAll) {
    CAPTURE(strategy_name(s));
    CHECK(count_with(fig, 3, 3, s) == 10);
  }
  auto k44 = oracle::complete_bipartite(4, 4);
  for (auto s : kAll) CHECK(count_with(k44, 2, 2, s) == 36);

  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto g = oracle::random_bipartite(10, 10, 0.2 + 0.025 * seed, seed);
    for (int p = 1; p <= 4; ++p) {
      for (int q = 1; q <= 4; ++q) {
        const BigCount expect = oracle::brute_force_count(g, p, q);
        for (auto s : kAll) CHECK(count_with(g, p, q, s) == expect);
      }
    }
  }
}

TEST_CASE("metrics add up") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = oracle::random_bipartite(12, 12, 0.6, seed);
    for (int pq = 2; pq <= 5; ++pq) {
      auto r = top_level_count(g, pq, pq);
      CHECK(r.metrics.total() == r.count);
      CHECK(r.metrics.node_split_roots + r.metrics.edge_split_roots <= 12);
      CHECK(r.metrics.npc_calls > 0);
    }
  }
}

TEST_CASE("thread count and relabeling never change the result") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto g = oracle::random_bipartite(14, 11, 0.45, seed);
    auto relabeled = bicount::testing::relabel(g, seed + 100).graph;
    for (int p = 2; p <= 4; ++p) {
      CountOptions one;
      CountOptions four;
      four.threads = 4;
      auto a = top_level_count(g, p, 3, one);
      auto b = top_level_count(g, p, 3, four);
      CHECK(a.count == b.count);
      CHECK(a.metrics.npc_calls == b.metrics.npc_calls);
      CHECK(a.metrics.bicliques_counted_combinatorially == b.metrics.bicliques_counted_combinatorially);
      CHECK(top_level_count(relabeled, p, 3).count == a.count);
    }
  }
}

TEST_CASE("argument and resource errors") {
  auto g = oracle::figure1().graph();
  CHECK_THROWS_AS(top_level_count(g, 0, 3), ArgumentError);
  CHECK_THROWS_AS(top_level_count(g, 3, 0), ArgumentError);
  CountOptions no_index;
  no_index.strategy = SplitStrategy::kEstimatorIndex;
  CHECK_THROWS_AS(top_level_count(g, 3, 3, no_index), ArgumentError);
  CostIndex other = build_cost_index(oracle::complete_bipartite(5, 5), 3, 3);
  no_index.index = &other;
  CHECK_THROWS_AS(top_level_count(g, 3, 3, no_index), ArgumentError);

  CountOptions shallow;
  shallow.max_depth = 0;
  shallow.strategy = SplitStrategy::kNodeSplit;
  CHECK_THROWS_AS(top_level_count(oracle::random_bipartite(10, 10, 0.5, 3), 2, 2, shallow), ResourceError);

  CHECK(parse_strategy("edge-split") == SplitStrategy::kEdgeSplit);
  CHECK_THROWS_AS(parse_strategy("vertex-split"), ArgumentError);
}

TEST_CASE("core reduction is optional") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = oracle::random_bipartite(9, 9, 0.4, seed);
    CountOptions raw;
    raw.core_reduction = false;
    for (int p = 1; p <= 4; ++p) CHECK(top_level_count(g, p, 2, raw).count == top_level_count(g, p, 2).count);
  }
}
