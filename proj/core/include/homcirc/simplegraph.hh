#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homcirc/decomposition.hh"
#include "homcirc/pattern.hh"
#include "homcirc/rational.hh"

namespace homcirc {

// General simple graph on vertices 0..n-1.  Edges are stored as (u, v) with
// u < v, sorted and deduplicated by normalize().  The optional extras carry
// a fixed bipartition (side 0 / side 1 per vertex), vertex colors, exact
// rational edge weights, and per-edge orientations (0 = undirected,
// 1 = u->v, 2 = v->u).
struct SimpleGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::optional<std::vector<int>> side;
  std::vector<int> colors;                    // empty or size n
  std::map<std::pair<int, int>, Rat> weights; // keys must be edges
  std::vector<int> edge_dir;                  // empty or size edges.size()

  void normalize();
  auto valid() const -> bool;

  auto num_edges() const -> int { return int(edges.size()); }
  auto has_edge(int u, int v) const -> bool;
  auto degree(int v) const -> int;
  auto adjacency() const -> std::vector<std::vector<int>>;
  auto weight(int u, int v) const -> Rat;  // 1 when no weight is stored
};

auto is_connected(const SimpleGraph& g) -> bool;

// Proper 2-coloring by BFS; empty when g has an odd cycle.  Respects the
// fixed bipartition when present (returns it unchanged).
auto two_coloring(const SimpleGraph& g) -> std::optional<std::vector<int>>;

// Brute-force isomorphism with degree pruning; structure only (ignores
// weights/colors).  Caps at 10 vertices.  Returns a vertex bijection g -> h.
auto graphs_isomorphic(const SimpleGraph& g, const SimpleGraph& h)
    -> std::optional<std::vector<int>>;

// Bridges to the bipartite world.  pattern_to_simple requires a simple
// pattern (no multiplicities) and fixes the bipartition left=0 / right=1.
// simple_to_pattern requires a fixed bipartition; side-0 vertices become
// left vertices in increasing vertex order, side-1 the right ones.
// host_matrix does the same and emits the 0/1 (or weighted) matrix.
auto pattern_to_simple(const BipartitePattern& f) -> SimpleGraph;
auto simple_to_pattern(const SimpleGraph& g) -> BipartitePattern;
auto host_matrix(const SimpleGraph& g) -> WeightedHost;

// All graphs on nv labelled vertices up to isomorphism (canonical
// representatives, deterministic order).  nv <= 7.
auto enumerate_graphs(int nv, bool connected_only) -> std::vector<SimpleGraph>;

struct SimpleTw {
  int width = 0;
  TreeDecomposition td;
};

// Exact treewidth of a general simple graph via elimination-order DP over
// vertex subsets, with a witness decomposition (bags over vertex ids).
auto simple_treewidth(const SimpleGraph& g, int cap = 12) -> SimpleTw;

// Coverage / edge coverage / connectivity check for decompositions of a
// SimpleGraph.  Returns the first violation, or nullopt when valid.
auto validate_simple_decomposition(const SimpleGraph& g,
                                   const TreeDecomposition& td)
    -> std::optional<std::string>;

// Homomorphism counting, two independent routes.  hom_count is pruned
// backtracking (per connected component, last vertex counted by candidate
// set size).  hom_count_dp runs a sparse dynamic program over a rooted tree
// decomposition of f; the two must agree on every tested instance.  The
// weighted variant sums the product of host edge weights over the images of
// f's edges.
auto hom_count(const SimpleGraph& f, const SimpleGraph& g) -> long long;
auto hom_count_weighted(const SimpleGraph& f, const SimpleGraph& g) -> Rat;
auto hom_count_dp(const SimpleGraph& f, const TreeDecomposition& td,
                  const SimpleGraph& g) -> long long;

}  // namespace homcirc
