#pragma once

#include <functional>
#include <vector>

#include "homcirc/rational.hh"

namespace homcirc {

// A partition of the ground set {0, ..., n-1} into disjoint nonempty blocks.
// Canonical form: within each block elements are sorted ascending, and blocks
// are ordered by their minimum element.
struct SetPartition {
    int ground_size = 0;
    std::vector<std::vector<int>> blocks;

    void canonicalize();
    auto valid() const -> bool;
    // block index of each element, by canonical block order
    auto block_of() const -> std::vector<int>;
    auto num_blocks() const -> int { return static_cast<int>(blocks.size()); }

    auto operator==(const SetPartition &) const -> bool = default;
};

// the discrete partition (all singletons)
auto discrete_partition(int n) -> SetPartition;

// All partitions of {0..n-1}; exactly Bell(n) results, canonical, no
// duplicates. n <= 12 enforced.
auto enumerate_partitions(int ground_size) -> std::vector<SetPartition>;

// mu_pi = (-1)^{|A| - |A/pi|} * prod_{P} (|P|-1)!   (integer-valued)
auto moebius(const SetPartition &pi) -> Rat;

// Independent oracle: recursive definition over the partition lattice
// ordered by refinement (pi <= sigma iff pi refines sigma), with
// mu(s,s) = 1 and mu(s,u) = -sum_{s <= t < u} mu(s,t); returns
// mu(discrete, pi).
auto moebius_recursive(const SetPartition &pi) -> Rat;

// true iff every block of pi is contained in a block of sigma
auto refines(const SetPartition &pi, const SetPartition &sigma) -> bool;

// Checks both inversion identities for a user-supplied value table
//   p : maps h : A -> I (given as vector<int> of size |A|) to rationals.
//   sum_{h: A->I} p_h        = sum_pi sum_{h inj on A/pi} p_{h∘pi}
//   sum_{h: A->I, inj} p_h   = sum_pi mu_pi sum_{h: A/pi -> I} p_{h∘pi}
// ground sizes capped at 5.
auto check_moebius_inversion(int a_size, int i_size,
                             const std::function<Rat(const std::vector<int> &)> &p) -> bool;

// Enumerates all maps {0..a-1} -> {0..i-1}, calling f with each.
void for_each_map(int a, int i, const std::function<void(const std::vector<int> &)> &f);

// Enumerates injective maps only.
void for_each_injection(int a, int i, const std::function<void(const std::vector<int> &)> &f);

}  // namespace homcirc
