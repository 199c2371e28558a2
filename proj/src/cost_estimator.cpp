#include "bicount/cost_estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include <json.hpp>

#include "bicount/errors.hpp"

namespace bicount {

CostValue cost_es(std::int64_t l, std::int64_t r, std::int64_t e, int x, int y, double ceiling) {
  if (l < x || r < y) return 0.0;
  const std::int64_t m = std::min(l, r);
  if (m <= 0 || e <= 0) return 0.0;
  const double md = static_cast<double>(m);
  const double log_edge_term = md * std::log(static_cast<double>(e) / md);
  const double log_node_term = md / 2.0 * std::log(2.0);
  if (std::min(log_edge_term, log_node_term) >= std::log(ceiling)) return ceiling;
  // In range: pow is exact on the integer powers of two that make ties common.
  return std::min(std::pow(static_cast<double>(e) / md, md), std::pow(2.0, md / 2.0));
}

SplitChoice estimate_node(const BipartiteGraph& g, const NodeRank& rank, NodeId u, int x, int y,
                          EstimatorScratch& scratch) {
  auto& common = scratch.common_;
  auto& touched = scratch.touched_;
  auto& ordered = scratch.ordered_;
  const std::uint32_t own_rank = rank.u_rank[u];
  const auto need_u = static_cast<std::uint32_t>(y);
  const auto need_v = static_cast<std::int64_t>(x) - 1;

  // common[w] = |N(w) ∩ N(u)| for higher-ranked w; l counts those reaching y.
  std::int64_t l = 0;
  touched.clear();
  for (NodeId v : g.u_neighbors(u)) {
    for (NodeId w : g.v_neighbors(v)) {
      if (rank.u_rank[w] <= own_rank) continue;
      if (common[w] == 0) touched.push_back(w);
      if (++common[w] == need_u) ++l;
    }
  }

  ordered.assign(g.u_neighbors(u).begin(), g.u_neighbors(u).end());
  std::sort(ordered.begin(), ordered.end(), [&](NodeId a, NodeId b) { return rank.v_rank[a] < rank.v_rank[b]; });
  const std::size_t degree = ordered.size();

  // r: neighbors of u with at least x-1 qualifying w; e: edges between those w and N(u).
  std::int64_t r = 0;
  std::int64_t e = 0;
  std::vector<std::int64_t> suffix(degree, 0);
  for (std::size_t i = 0; i < degree; ++i) {
    std::int64_t qualifying = 0;
    for (NodeId w : g.v_neighbors(ordered[i])) {
      if (rank.u_rank[w] > own_rank && common[w] >= need_u) {
        ++qualifying;
        ++e;
      }
    }
    if (qualifying >= need_v) {
      ++r;
      suffix[i] = 1;
    }
  }
  for (std::size_t i = degree; i-- > 1;) suffix[i - 1] += suffix[i];

  // One estimate per edge (u, v_i); common[w] is consumed as edges are passed, so it holds the
  // number of w's neighbors among v_i and later.
  CostValue cost_edge = 0.0;
  for (std::size_t i = 0; i < degree; ++i) {
    std::int64_t l_edge = 0;
    std::int64_t e_edge = 0;
    for (NodeId w : g.v_neighbors(ordered[i])) {
      if (rank.u_rank[w] <= own_rank) continue;
      if (common[w] >= need_u) {
        ++l_edge;
        e_edge += common[w];
      }
      --common[w];
    }
    if (l_edge >= need_v) {
      cost_edge = std::min(cost_edge + cost_es(l_edge, suffix[i], e_edge, x, y), kDefaultCostCeiling);
    }
  }
  for (NodeId w : touched) common[w] = 0;

  const CostValue cost_node = cost_es(l, r, e, x, y);
  return cost_node < cost_edge ? SplitChoice::kNodeSplit : SplitChoice::kEdgeSplit;
}

SplitChoice estimate_node(const BipartiteGraph& g, const NodeRank& rank, NodeId u, int x, int y) {
  EstimatorScratch scratch(g.u_count());
  return estimate_node(g, rank, u, x, y, scratch);
}

CostIndex build_cost_index(const BipartiteGraph& g, const NodeRank& rank, int x, int y, unsigned threads) {
  if (x < 1 || y < 1) throw ArgumentError("x and y must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = g.u_count();
  std::vector<char> decisions(n, 0);
  auto work = [&](std::size_t begin, std::size_t end) {
    EstimatorScratch scratch(n);
    for (std::size_t u = begin; u < end; ++u) {
      decisions[u] = estimate_node(g, rank, static_cast<NodeId>(u), x, y, scratch) == SplitChoice::kEdgeSplit;
    }
  };
  threads = std::max(1U, threads);
  if (threads == 1 || n < 2) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t begin = 0; begin < n; begin += chunk) pool.emplace_back(work, begin, std::min(n, begin + chunk));
    for (auto& t : pool) t.join();
  }

  CostIndex index;
  index.x = x;
  index.y = y;
  index.graph_hash = graph_hash(g);
  index.edge_split.assign(decisions.begin(), decisions.end());
  index.build_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return index;
}

CostIndex build_cost_index(const BipartiteGraph& g, int x, int y, unsigned threads) {
  return build_cost_index(g, core_order(g), x, y, threads);
}

std::string serialize_cost_index(const CostIndex& index) {
  char hash[17];
  std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(index.graph_hash));
  std::string bits;
  bits.reserve(index.edge_split.size());
  for (bool b : index.edge_split) bits.push_back(b ? '1' : '0');
  nlohmann::json j = {{"x", index.x},
                      {"y", index.y},
                      {"graph_hash", hash},
                      {"u_count", index.edge_split.size()},
                      {"edge_split", bits}};
  return j.dump(2) + "\n";
}

CostIndex parse_cost_index(std::string_view text) {
  CostIndex index;
  try {
    auto j = nlohmann::json::parse(text);
    index.x = j.at("x").get<int>();
    index.y = j.at("y").get<int>();
    index.graph_hash = std::stoull(j.at("graph_hash").get<std::string>(), nullptr, 16);
    const auto bits = j.at("edge_split").get<std::string>();
    if (bits.size() != j.at("u_count").get<std::size_t>()) throw ParseError("u_count does not match edge_split", 0);
    for (char c : bits) {
      if (c != '0' && c != '1') throw ParseError("edge_split must contain only 0 and 1", 0);
      index.edge_split.push_back(c == '1');
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad cost index: ") + e.what(), 0);
  } catch (const std::logic_error& e) {  // stoull
    throw ParseError(std::string("bad cost index hash: ") + e.what(), 0);
  }
  if (index.x < 1 || index.y < 1) throw ParseError("cost index x and y must be >= 1", 0);
  return index;
}

}  // namespace bicount
