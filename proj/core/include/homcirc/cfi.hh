#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homcirc/simplegraph.hh"

namespace homcirc {

// CFI gadget graph over a connected simple base.  Vertices are pairs
// (v, T) with T a parity-constrained subset of the edges incident to v;
// they are laid out gadget by gadget in base-vertex order, masks ascending
// over the sorted incident edge list.  rho projects onto the base and is a
// homomorphism; when the base carries a bipartition the instance inherits
// it through rho.
struct CfiInstance {
  SimpleGraph base;
  std::vector<int> twist;                // U, one bit per base vertex
  SimpleGraph graph;                     // the gadget graph
  std::vector<int> rho;                  // gadget vertex -> base vertex
  std::vector<uint32_t> t_mask;          // T as bits over sorted E(v)
  std::vector<std::vector<int>> inc;     // per base vertex, sorted E(v) ids
};

auto cfi_gamma(const SimpleGraph& base) -> long;
auto cfi(const SimpleGraph& base, const std::vector<int>& twist)
    -> CfiInstance;

// For twists of even total parity: an explicit isomorphism a.graph ->
// b.graph obtained by toggling T along an edge set whose boundary is
// a.twist + b.twist, verified edge-by-edge before returning.  nullopt when
// the parities differ.
auto even_twist_isomorphism(const CfiInstance& a, const CfiInstance& b)
    -> std::optional<std::vector<int>>;

struct Oddomorphism {
  std::vector<int> phi;                     // V(F) -> V(G)
  std::vector<std::pair<int, int>> sub;     // edge set of the witness F'
};

// Exhaustive search over homomorphisms F -> G and edge subsets of F.  Both
// graphs capped at 7 vertices.  Maps that are not surjective on vertices
// and edges are pruned up front.
auto exists_weak_oddomorphism(const SimpleGraph& f, const SimpleGraph& g)
    -> std::optional<Oddomorphism>;

// G x K_2 with the canonical bipartition (copy 0 on side 0).
auto bipartite_double_cover(const SimpleGraph& g) -> SimpleGraph;

// Number of matchings with exactly h edges.
auto matching_counts(const SimpleGraph& g, int h) -> long long;

}  // namespace homcirc
