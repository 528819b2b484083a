#pragma once

#include <map>
#include <string>
#include <vector>

#include "homcirc/circuit.hh"
#include "homcirc/decomposition.hh"
#include "homcirc/pattern.hh"

namespace homcirc {

struct SynthReport {
  Circuit circuit;
  long measured_size = 0;
  // Theoretical size bound for the pass (0 when the pass does not claim one).
  Rat size_bound = Rat(0);
  int max_sup_claim = 0;
  // True when the decomposition met the structural conditions under which the
  // size bound is asserted.
  bool shape_conformant = false;
  std::map<std::string, std::string> stats;
};

// Compiles the homomorphism polynomial hom_{F,n,m} into a Sym_n x Sym_m
// symmetric circuit driven by a (niceified) tree decomposition of F.
// Every gate key's support has at most k = width+1 entries.
auto synth_hom(const BipartitePattern& f, const TreeDecomposition& td, int n,
               int m) -> SynthReport;

// sub_{F,n,m} as (1/|Aut F|) sum of signed hom circuits over quotients of F
// by side-partition pairs.
auto synth_sub_moebius(const BipartitePattern& f, int n, int m) -> SynthReport;

// sub_{F,n,m} for simple F via vertex-cover type interpolation; cap bounds
// the logical cover size.
auto synth_sub_cover(const BipartitePattern& f, int n, int m,
                     int cover_cap = 4) -> SynthReport;

enum class BicliqueKind { Direct, Complement };

// Direct two-level circuits for sub of K_{k,k} (Direct) respectively
// K_{n-k,n-k} (Complement) inside (n,n).
auto synth_biclique(BicliqueKind kind, int k, int n) -> SynthReport;

// Interpolation engine: `slots` are Const gates of `c` acting as formal
// variables.  Returns a circuit computing the coefficient of the monomial
// with the given per-slot target degrees, assuming per-slot degree bounds.
// Grid points are 0..bound per slot; Vandermonde inversion is exact.
auto extract_coefficient(const Circuit& c, const std::vector<int>& slots,
                         const std::vector<int>& target_degrees,
                         const std::vector<int>& degree_bounds) -> Circuit;

// Row `target` of the inverse of the (d+1)x(d+1) Vandermonde matrix on the
// given points (exact Gaussian elimination; points must be distinct).
auto vandermonde_inverse_row(const std::vector<Rat>& points, int target)
    -> std::vector<Rat>;

}  // namespace homcirc
