#include "bicount/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <random>
#include <stdexcept>

#include "bicount/errors.hpp"

namespace bicount::oracle {

namespace {

// Kept apart from the library's binomial on purpose: a plain Pascal row per call.
BigCount choose(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  std::vector<BigCount> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;
  for (std::int64_t i = 1; i <= n; ++i) {
    for (std::int64_t j = std::min(i, k); j > 0; --j) row[j] += row[j - 1];
  }
  return row[static_cast<std::size_t>(k)];
}

double log_choose(std::size_t n, std::size_t k) {
  if (k > n) return -1.0;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Visits every k-subset S of one side with |common neighbors| >= need, calling
// fn(S, common).
class SubsetWalk {
 public:
  SubsetWalk(const BipartiteGraph& g, bool u_side, std::size_t k, std::size_t need, std::uint64_t budget)
      : g_(g), u_side_(u_side), k_(k), need_(need), budget_(budget) {}

  template <class Fn>
  void run(Fn&& fn) {
    const std::size_t n = u_side_ ? g_.u_count() : g_.v_count();
    std::vector<NodeId> everything(u_side_ ? g_.v_count() : g_.u_count());
    for (std::size_t i = 0; i < everything.size(); ++i) everything[i] = static_cast<NodeId>(i);
    std::vector<NodeId> chosen;
    walk(0, n, everything, chosen, fn);
  }

 private:
  std::span<const NodeId> neighbors(NodeId x) const { return u_side_ ? g_.u_neighbors(x) : g_.v_neighbors(x); }

  template <class Fn>
  void walk(std::size_t from, std::size_t n, const std::vector<NodeId>& common, std::vector<NodeId>& chosen,
            Fn& fn) {
    if (++visited_ > budget_) throw ResourceError("oracle budget exceeded");
    if (chosen.size() == k_) {
      fn(chosen, common);
      return;
    }
    for (std::size_t x = from; x + (k_ - chosen.size()) <= n; ++x) {
      std::vector<NodeId> next;
      auto nb = neighbors(static_cast<NodeId>(x));
      std::set_intersection(common.begin(), common.end(), nb.begin(), nb.end(), std::back_inserter(next));
      if (next.size() < need_) continue;
      chosen.push_back(static_cast<NodeId>(x));
      walk(x + 1, n, next, chosen, fn);
      chosen.pop_back();
    }
  }

  const BipartiteGraph& g_;
  bool u_side_;
  std::size_t k_;
  std::size_t need_;
  std::uint64_t budget_;
  std::uint64_t visited_ = 0;
};

bool enumerate_u(const BipartiteGraph& g, int p, int q) {
  return log_choose(g.u_count(), p) <= log_choose(g.v_count(), q);
}

}  // namespace

BigCount brute_force_count(const BipartiteGraph& g, int p, int q, std::uint64_t budget) {
  if (p < 1 || q < 1) throw ArgumentError("p and q must be >= 1");
  const bool u_side = enumerate_u(g, p, q);
  const auto k = static_cast<std::size_t>(u_side ? p : q);
  const auto other = static_cast<std::size_t>(u_side ? q : p);
  if (k > (u_side ? g.u_count() : g.v_count())) return 0;
  BigCount total = 0;
  SubsetWalk(g, u_side, k, other, budget).run([&](const std::vector<NodeId>&, const std::vector<NodeId>& common) {
    total += choose(static_cast<std::int64_t>(common.size()), static_cast<std::int64_t>(other));
  });
  return total;
}

LocalCounts brute_force_local(const BipartiteGraph& g, int p, int q, std::uint64_t budget) {
  if (p < 1 || q < 1) throw ArgumentError("p and q must be >= 1");
  LocalCounts local{p, q, std::vector<BigCount>(g.u_count()), std::vector<BigCount>(g.v_count())};
  const bool u_side = enumerate_u(g, p, q);
  const auto k = static_cast<std::size_t>(u_side ? p : q);
  const auto other = static_cast<std::size_t>(u_side ? q : p);
  if (k > (u_side ? g.u_count() : g.v_count())) return local;
  auto& chosen_side = u_side ? local.u : local.v;
  auto& other_side = u_side ? local.v : local.u;
  SubsetWalk(g, u_side, k, other, budget)
      .run([&](const std::vector<NodeId>& chosen, const std::vector<NodeId>& common) {
        const auto t = static_cast<std::int64_t>(common.size());
        const BigCount per_chosen = choose(t, static_cast<std::int64_t>(other));
        const BigCount per_common = choose(t - 1, static_cast<std::int64_t>(other) - 1);
        for (NodeId x : chosen) chosen_side[x] += per_chosen;
        for (NodeId y : common) other_side[y] += per_common;
      });
  return local;
}

BipartiteGraph random_bipartite(std::size_t u_count, std::size_t v_count, double probability, std::uint64_t seed) {
  if (!(probability >= 0.0 && probability <= 1.0)) throw ArgumentError("edge probability must be in [0, 1]");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < u_count; ++u) {
    for (std::size_t v = 0; v < v_count; ++v) {
      // 53 random bits as a double in [0, 1); identical on every platform.
      if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < probability) {
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
      }
    }
  }
  return BipartiteGraph::from_edges(u_count, v_count, edges);
}

BipartiteGraph complete_bipartite(std::size_t u_count, std::size_t v_count) {
  return random_bipartite(u_count, v_count, 1.0, 0);
}

BipartiteGraph FixtureGraph::graph() const { return BipartiteGraph::from_edges(u_count, v_count, edges); }

const FixtureGraph& figure1() {
  static const FixtureGraph fixture = [] {
    FixtureGraph f;
    f.name = "figure1";
    f.u_count = 5;
    f.v_count = 5;
    f.edges = {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 4}};
    for (NodeId u = 2; u <= 4; ++u) {
      for (NodeId v = 1; v <= 4; ++v) f.edges.emplace_back(u, v);
    }
    f.provenance =
        "Rebuilt from the worked example's stated counts: ten (3,3)-bicliques, v0 dropped by the (3,3)-core. "
        "Whether u1 and v0 are adjacent is left open by the example; the edge is omitted here, which keeps "
        "every stated count.";
    return f;
  }();
  return fixture;
}

}  // namespace bicount::oracle
