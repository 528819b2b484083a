#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "homcirc/partition.hh"
#include "homcirc/rational.hh"

namespace homcirc {

// A bipartite multigraph pattern.  Left vertices are 0..left_size-1, right
// vertices are 0..right_size-1 in their own index space; where a single
// global index is needed (tree decompositions, params) the convention is
// left vertex a -> a, right vertex b -> left_size + b.
struct BipartitePattern {
  int left_size = 0;
  int right_size = 0;
  // (a, b, multiplicity), normalized: sorted by (a,b), multiplicities >= 1,
  // no duplicate (a,b) rows.
  std::vector<std::array<int, 3>> edges;

  void normalize();
  auto valid() const -> bool;

  auto num_vertices() const -> int { return left_size + right_size; }
  auto num_edges() const -> long;  // with multiplicity
  // |V(F)| + |E(F)| counted with multiplicity.
  auto size_norm() const -> long { return num_vertices() + num_edges(); }
  auto is_simple() const -> bool;
  auto multiplicity(int a, int b) const -> int;
  auto multiplicity_matrix() const -> std::vector<std::vector<int>>;
  auto degree_left(int a) const -> int;   // with multiplicity
  auto degree_right(int b) const -> int;

  auto operator==(const BipartitePattern& o) const -> bool = default;
};

// A pattern with distinguished (ordered) labelled vertices per side;
// several labels may share a vertex.  left_labels[i] is the left vertex
// carrying label i, etc.
struct LabelledPattern {
  BipartitePattern base;
  std::vector<int> left_labels;
  std::vector<int> right_labels;

  auto valid() const -> bool;
  auto num_labels() const -> int {
    return int(left_labels.size() + right_labels.size());
  }
  auto operator==(const LabelledPattern& o) const -> bool = default;
};

// An n x m matrix of exact rationals, interpreted as edge weights of a
// complete bipartite host.
struct WeightedHost {
  int n = 0;
  int m = 0;
  std::vector<Rat> entries;  // row-major, n*m

  WeightedHost() = default;
  WeightedHost(int n_, int m_) : n(n_), m(m_), entries(size_t(n_) * m_, Rat(0)) {}

  auto at(int i, int j) -> Rat& { return entries[size_t(i) * m + j]; }
  auto at(int i, int j) const -> const Rat& { return entries[size_t(i) * m + j]; }
};

// Quotient of F by a pair of partitions (pi on the left side, sigma on the
// right side).  Blocks become vertices (in canonical block order);
// multiplicities of merged edges add up.  Edges inside a block cannot occur
// (the graph is bipartite and blocks stay within a side).
auto quotient(const BipartitePattern& f, const SetPartition& pi,
              const SetPartition& sigma) -> BipartitePattern;

// Complement within the complete bipartite graph K_{n,m}: F is padded with
// isolated vertices up to (n, m) and simple-complemented.  Requires F simple
// and left_size <= n, right_size <= m.
auto bipartite_complement(const BipartitePattern& f, int n, int m)
    -> BipartitePattern;

// Number of bipartition-respecting automorphisms (brute force over side
// permutations; intended for patterns with sides <= 8).
auto automorphism_count(const BipartitePattern& f) -> long;

// Bipartition-respecting isomorphism test (side sizes and multiplicities
// must match under some pair of side permutations).
auto patterns_isomorphic(const BipartitePattern& f, const BipartitePattern& g)
    -> bool;

// Isomorphism carrying the i-th label of f to the i-th label of g, per side.
auto labelled_isomorphic(const LabelledPattern& f, const LabelledPattern& g)
    -> bool;

// Canonical form under side permutations: lexicographically least flattened
// multiplicity matrix.  Used to deduplicate pattern sweeps.
auto canonical_key(const BipartitePattern& f) -> std::string;

// All simple patterns with the given side sizes, one per isomorphism class.
auto enumerate_simple_patterns(int left, int right)
    -> std::vector<BipartitePattern>;

}  // namespace homcirc
