#pragma once

#include <map>
#include <string>
#include <vector>

#include "homcirc/circuit.hh"
#include "homcirc/pattern.hh"
#include "homcirc/rational.hh"

namespace homcirc {

// Integer partition of n, weakly decreasing positive parts.
struct IntegerPartition {
  std::vector<int> parts;

  auto n() const -> int;
  auto num_parts() const -> int { return int(parts.size()); }
  // Depth parameter: n minus the number of parts.
  auto b() const -> int { return n() - num_parts(); }
  auto valid() const -> bool;
  auto operator<=>(const IntegerPartition&) const = default;
};

auto integer_partitions(int n) -> std::vector<IntegerPartition>;

// Cycle type of a permutation given as images, weakly decreasing.
auto cycle_type(const std::vector<int>& perm) -> std::vector<int>;

// Number of permutations of [n] with the given cycle type.
auto conjugacy_class_size(const std::vector<int>& type) -> Rat;

// Irreducible character of Sym_n at the conjugacy class of `type`,
// via the Murnaghan-Nakayama border-strip recursion (memoized).
auto character_value(const IntegerPartition& lam, const std::vector<int>& type)
    -> long long;

// Direct sum over Sym_n; a must be square, n <= 8.
auto brute_force_immanant(const IntegerPartition& lam, const WeightedHost& a)
    -> Rat;

// Determinant via the Faddeev-LeVerrier trace recurrence: O(n^4) gates,
// key-certified symmetric under the simultaneous row/column action.
auto synth_symmetric_determinant(int n) -> Circuit;

// Tuples of directed cycles, one slot per (length, copy) index, whose edge
// union is a partial cycle cover (pairwise identical or vertex-disjoint;
// length-1 cycles are self-loops).  Each cycle is a vertex sequence rotated
// to start at its minimum vertex.
struct CycleTupleFamily {
  int n = 0;
  std::vector<int> index;  // i_1..i_m: number of cycles per length
  std::vector<std::vector<std::vector<int>>> tuples;
  Rat bound;  // product over lengths of (n!/(n-l)!)^{i_l}
};

auto enumerate_cycle_covers(int n, const std::vector<int>& index,
                            long cap = 5'000'000) -> CycleTupleFamily;

struct ImmanantReport {
  Circuit circuit;
  long measured_size = 0;
  Rat size_bound = Rat(0);
  // Length-1 cycles are read as self-loop edges x_ii and the multiplicity
  // alpha_1 as the fixed-point count.
  bool self_loop_cycles = true;
  std::map<std::string, std::string> stats;
};

// Circuit computing imm over the class function sgn(pi) * prod_l
// alpha_l(pi)^{i_l}: sums determinants of cycle-decorated matrices over the
// enumerated tuple family and extracts the target coefficient by exact
// interpolation.
auto synth_imm_fI(const std::vector<int>& index, int n) -> ImmanantReport;

// Full pipeline for imm_lambda; requires b(lambda) <= cap.  The per-index
// coefficients are calibrated by solving the exact classwise linear system
// against character_value; an inconsistent system raises an error instead of
// producing a wrong circuit.
auto synth_immanant(const IntegerPartition& lam, int cap = 3)
    -> ImmanantReport;

}  // namespace homcirc
