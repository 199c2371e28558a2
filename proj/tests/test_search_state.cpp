#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bicount/oracle.hpp"
#include "bicount/search_state.hpp"

using namespace bicount;

namespace {

SearchState whole_graph(const BipartiteGraph& g, bool track = false) {
  std::vector<NodeId> us(g.u_count()), vs(g.v_count());
  for (NodeId i = 0; i < us.size(); ++i) us[i] = i;
  for (NodeId i = 0; i < vs.size(); ++i) vs[i] = i;
  return SearchState::from_graph(g, us, vs, {}, {}, track);
}

}  // namespace

TEST_CASE("initial counts") {
  auto g = oracle::figure1().graph();
  auto s = whole_graph(g);
  CHECK(s.candidate_count(Side::kU) == 5);
  CHECK(s.candidate_count(Side::kV) == 5);
  CHECK(s.edge_count() == 19);
  CHECK(s.nonneighbors(Side::kU, 0) == 1);  // u0 misses v4
  CHECK(s.nonneighbors(Side::kU, 1) == 2);  // u1 misses v0, v3
  CHECK(s.nonneighbors(Side::kV, 0) == 4);  // only u0 reaches v0
  CHECK(s.nonneighbors(Side::kV, 1) == 0);
  CHECK(s.check_invariants().empty());
  const SetSizes z = s.sizes();
  CHECK(z.c0 == 5);
  CHECK(z.p0 == 0);
  CHECK(z.h1 == 0);
}

TEST_CASE("remove, pivot and hold keep the counts and roll back exactly") {
  auto g = oracle::figure1().graph();
  auto s = whole_graph(g, true);
  const auto before = s.snapshot();
  const std::size_t mark = s.mark();

  s.remove_candidate(Side::kV, 0);  // v0 gone: u0 now sees every remaining V
  CHECK(s.nonneighbors(Side::kU, 0) == 1);
  CHECK(s.nonneighbors(Side::kU, 2) == 0);
  CHECK(s.edge_count() == 18);
  CHECK(s.check_invariants().empty());

  s.move_to_pivot(Side::kV, 1);
  CHECK(s.pivot_count(Side::kV) == 1);
  CHECK(s.pivots(Side::kV).size() == 1);
  CHECK(s.pivots(Side::kV)[0] == 1);
  CHECK(s.edge_count() == 13);
  CHECK(s.check_invariants().empty());

  s.remove_candidate(Side::kU, 3);
  s.push_hold(Side::kU, 3);
  CHECK(s.hold_count(Side::kU) == 1);
  CHECK(s.holds(Side::kU)[0] == 3);
  CHECK_FALSE(s.is_candidate(Side::kU, 3));
  CHECK(s.check_invariants().empty());

  s.rollback(mark);
  CHECK(s.snapshot() == before);
  CHECK(s.check_invariants().empty());
}

TEST_CASE("random operation sequences stay consistent") {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = oracle::random_bipartite(3 + seed % 9, 3 + (seed * 5) % 9, 0.5, seed);
    auto s = whole_graph(g, seed % 2 == 0);
    std::vector<std::pair<std::size_t, SearchState::Snapshot>> marks;
    for (int step = 0; step < 60; ++step) {
      const int op = static_cast<int>(rng() % 4);
      const Side side = rng() % 2 ? Side::kU : Side::kV;
      if (op == 0) {
        marks.emplace_back(s.mark(), s.snapshot());
      } else if (op == 3 && !marks.empty()) {
        s.rollback(marks.back().first);
        CHECK(s.snapshot() == marks.back().second);
        marks.pop_back();
      } else if (s.candidate_count(side) > 0) {
        auto c = s.candidates(side);
        const LocalId x = c[rng() % c.size()];
        if (op == 1) {
          s.remove_candidate(side, x);
          if (rng() % 2) s.push_hold(side, x);
        } else if (s.nonneighbors(side, x) == 0) {
          s.move_to_pivot(side, x);
        } else {
          s.remove_candidate(side, x);
        }
      }
      REQUIRE(s.check_invariants().empty());
    }
    while (!marks.empty()) {
      s.rollback(marks.back().first);
      CHECK(s.snapshot() == marks.back().second);
      marks.pop_back();
    }
  }
}
