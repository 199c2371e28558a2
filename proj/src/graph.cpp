#include "bicount/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "bicount/errors.hpp"

namespace bicount {
namespace {

// Counting-sort CSR build for one side; by_u selects which endpoint owns the row.
void build_csr(std::size_t n, std::span<const Edge> edges, bool by_u, std::vector<std::size_t>& offsets,
               std::vector<NodeId>& adj) {
  offsets.assign(n + 1, 0);
  for (const auto& [u, v] : edges) ++offsets[(by_u ? u : v) + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  adj.resize(edges.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [u, v] : edges) adj[cursor[by_u ? u : v]++] = by_u ? v : u;
}

}  // namespace

BipartiteGraph BipartiteGraph::from_edges(std::size_t u_count, std::size_t v_count, std::span<const Edge> edges,
                                          std::size_t* duplicates) {
  std::vector<Edge> sorted(edges.begin(), edges.end());
  for (const auto& [u, v] : sorted) {
    if (u >= u_count || v >= v_count) {
      throw ArgumentError("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  auto last = std::unique(sorted.begin(), sorted.end());
  if (duplicates) *duplicates = static_cast<std::size_t>(sorted.end() - last);
  sorted.erase(last, sorted.end());

  BipartiteGraph g;
  build_csr(u_count, sorted, true, g.u_offsets_, g.u_adj_);
  // Edges are sorted by (u, v), so each V list is filled in increasing u order.
  build_csr(v_count, sorted, false, g.v_offsets_, g.v_adj_);
  return g;
}

bool BipartiteGraph::has_edge(NodeId u, NodeId v) const {
  auto nbrs = u_neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> BipartiteGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < u_count(); ++u) {
    for (NodeId v : u_neighbors(u)) out.emplace_back(u, v);
  }
  return out;
}

BipartiteGraph BipartiteGraph::transposed() const {
  BipartiteGraph t;
  t.u_offsets_ = v_offsets_;
  t.u_adj_ = v_adj_;
  t.v_offsets_ = u_offsets_;
  t.v_adj_ = u_adj_;
  return t;
}

GraphStats graph_stats(const BipartiteGraph& g) {
  GraphStats s;
  s.u_count = g.u_count();
  s.v_count = g.v_count();
  s.edge_count = g.edge_count();
  for (NodeId u = 0; u < g.u_count(); ++u) s.max_degree_u = std::max(s.max_degree_u, g.u_degree(u));
  for (NodeId v = 0; v < g.v_count(); ++v) s.max_degree_v = std::max(s.max_degree_v, g.v_degree(v));
  auto reduce = [&](std::size_t side, std::uint64_t& num, std::uint64_t& den) {
    if (side == 0) {
      num = 0;
      den = 1;
      return;
    }
    std::uint64_t d = std::gcd<std::uint64_t, std::uint64_t>(s.edge_count, side);
    num = s.edge_count / d;
    den = side / d;
  };
  reduce(s.u_count, s.avg_degree_u_num, s.avg_degree_u_den);
  reduce(s.v_count, s.avg_degree_v_num, s.avg_degree_v_den);
  return s;
}

std::uint64_t graph_hash(const BipartiteGraph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
      h ^= (word >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(g.u_count());
  mix(g.v_count());
  for (NodeId u = 0; u < g.u_count(); ++u) {
    for (NodeId v : g.u_neighbors(u)) {
      mix((static_cast<std::uint64_t>(u) << 32) | v);
    }
  }
  return h;
}

NodeRank core_order(const BipartiteGraph& g) {
  const std::size_t nu = g.u_count();
  const std::size_t n = nu + g.v_count();
  // Combined index: U nodes first, then V nodes, which makes (degree, index) the tie-break key.
  std::vector<std::size_t> degree(n);
  for (NodeId u = 0; u < nu; ++u) degree[u] = g.u_degree(u);
  for (NodeId v = 0; v < g.v_count(); ++v) degree[nu + v] = g.v_degree(v);

  using Entry = std::pair<std::size_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (std::size_t i = 0; i < n; ++i) heap.emplace(degree[i], i);

  std::vector<bool> removed(n, false);
  NodeRank rank;
  rank.u_rank.assign(nu, 0);
  rank.v_rank.assign(g.v_count(), 0);
  std::uint32_t next = 0;
  while (!heap.empty()) {
    auto [d, i] = heap.top();
    heap.pop();
    if (removed[i] || d != degree[i]) continue;  // stale entry
    removed[i] = true;
    if (i < nu) {
      rank.u_rank[i] = next++;
      for (NodeId v : g.u_neighbors(static_cast<NodeId>(i))) {
        if (!removed[nu + v]) heap.emplace(--degree[nu + v], nu + v);
      }
    } else {
      rank.v_rank[i - nu] = next++;
      for (NodeId u : g.v_neighbors(static_cast<NodeId>(i - nu))) {
        if (!removed[u]) heap.emplace(--degree[u], u);
      }
    }
  }
  return rank;
}

ReducedGraph pq_core_reduce(const BipartiteGraph& g, int p, int q) {
  if (p < 1 || q < 1) throw ArgumentError("p and q must be >= 1");
  const std::size_t nu = g.u_count();
  const std::size_t nv = g.v_count();
  std::vector<std::size_t> du(nu), dv(nv);
  std::vector<bool> gone_u(nu, false), gone_v(nv, false);
  std::vector<NodeId> queue_u, queue_v;
  for (NodeId u = 0; u < nu; ++u) {
    du[u] = g.u_degree(u);
    if (du[u] < static_cast<std::size_t>(q)) {
      gone_u[u] = true;
      queue_u.push_back(u);
    }
  }
  for (NodeId v = 0; v < nv; ++v) {
    dv[v] = g.v_degree(v);
    if (dv[v] < static_cast<std::size_t>(p)) {
      gone_v[v] = true;
      queue_v.push_back(v);
    }
  }
  // Each node is queued at most once and each edge is touched at most twice.
  while (!queue_u.empty() || !queue_v.empty()) {
    if (!queue_u.empty()) {
      NodeId u = queue_u.back();
      queue_u.pop_back();
      for (NodeId v : g.u_neighbors(u)) {
        if (!gone_v[v] && --dv[v] < static_cast<std::size_t>(p)) {
          gone_v[v] = true;
          queue_v.push_back(v);
        }
      }
    } else {
      NodeId v = queue_v.back();
      queue_v.pop_back();
      for (NodeId u : g.v_neighbors(v)) {
        if (!gone_u[u] && --du[u] < static_cast<std::size_t>(q)) {
          gone_u[u] = true;
          queue_u.push_back(u);
        }
      }
    }
  }

  ReducedGraph out;
  std::vector<NodeId> new_u(nu), new_v(nv);
  for (NodeId u = 0; u < nu; ++u) {
    if (!gone_u[u]) {
      new_u[u] = static_cast<NodeId>(out.u_original.size());
      out.u_original.push_back(u);
    }
  }
  for (NodeId v = 0; v < nv; ++v) {
    if (!gone_v[v]) {
      new_v[v] = static_cast<NodeId>(out.v_original.size());
      out.v_original.push_back(v);
    }
  }
  std::vector<Edge> kept;
  for (NodeId u : out.u_original) {
    for (NodeId v : g.u_neighbors(u)) {
      if (!gone_v[v]) kept.emplace_back(new_u[u], new_v[v]);
    }
  }
  out.graph = BipartiteGraph::from_edges(out.u_original.size(), out.v_original.size(), kept);
  return out;
}

}  // namespace bicount
