#pragma once

#include <string>
#include <utility>
#include <vector>

#include "homcirc/pattern.hh"

namespace homcirc {

// Tree decomposition over global vertex ids (left a -> a, right b ->
// left_size + b).  Bags are kept sorted.  `root` is meaningful for nice
// decompositions; for generic ones it is advisory.
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> tree_edges;
  int root = 0;

  auto num_nodes() const -> int { return int(bags.size()); }
  auto width() const -> int;  // max bag size - 1; -1 if no bags
};

struct TdValidation {
  bool ok = false;
  int width = -1;
  std::string message;  // first violation found, empty when valid
};

auto validate_tree_decomposition(const BipartitePattern& f,
                                 const TreeDecomposition& td) -> TdValidation;

struct TreewidthResult {
  int width = 0;
  TreeDecomposition witness;
};

// Exact treewidth via elimination-order DP over vertex subsets.  Throws if
// the pattern has more than `cap` vertices.
auto exact_treewidth(const BipartitePattern& f, int cap = 12)
    -> TreewidthResult;

// Transforms a valid decomposition into one where every bag has the same
// size k (the max bag size of the input), adjacent bags intersect in exactly
// k-1 vertices, and every node of the rooted result has at most k children.
// When |V(F)| <= k the result is a single bag holding all vertices.
auto nice_decomposition(const BipartitePattern& f, const TreeDecomposition& td)
    -> TreeDecomposition;

// PACE-2017 .td text format.  num_graph_vertices goes into the header line.
auto write_td(const TreeDecomposition& td, int num_graph_vertices)
    -> std::string;
auto read_td(const std::string& text) -> TreeDecomposition;

struct GraphParams {
  int vc = 0;    // minimum vertex cover size
  int mn = 0;    // maximum matching size
  int hdtw = 0;  // max treewidth over all quotients by side-partition pairs
  int cc = 0;    // logical vertex cover number at (n, m)
};

auto graph_params(const BipartitePattern& f, int n, int m) -> GraphParams;

// Minimum vertex cover of the underlying simple graph (brute force).
auto vertex_cover_number(const BipartitePattern& f) -> int;
// Maximum matching of the underlying simple graph (augmenting paths).
auto matching_number(const BipartitePattern& f) -> int;

}  // namespace homcirc
