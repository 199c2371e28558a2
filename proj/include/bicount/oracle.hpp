#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bicount/bigcount.hpp"
#include "bicount/counting_modes.hpp"
#include "bicount/graph.hpp"

// Slow, definition-level reference implementations used to check the counting code.
namespace bicount::oracle {

inline constexpr std::uint64_t kDefaultBudget = 50'000'000;

// Enumerates the p-subsets of U (or q-subsets of V, whichever side has fewer) by common-neighbor
// intersection and adds C(|common|, other parameter) per subset. Throws ResourceError once more
// than `budget` subsets have been visited.
BigCount brute_force_count(const BipartiteGraph& g, int p, int q, std::uint64_t budget = kDefaultBudget);

// Same enumeration, tallying membership per node.
LocalCounts brute_force_local(const BipartiteGraph& g, int p, int q, std::uint64_t budget = kDefaultBudget);

// Each of the u_count * v_count pairs is an edge with the given probability. Same seed, same graph.
BipartiteGraph random_bipartite(std::size_t u_count, std::size_t v_count, double probability, std::uint64_t seed);

BipartiteGraph complete_bipartite(std::size_t u_count, std::size_t v_count);

struct FixtureGraph {
  std::string name;
  std::size_t u_count = 0;
  std::size_t v_count = 0;
  std::vector<Edge> edges;
  std::string provenance;

  BipartiteGraph graph() const;
};

// The 5+5 node example graph with ten (3,3)-bicliques.
const FixtureGraph& figure1();

}  // namespace bicount::oracle
