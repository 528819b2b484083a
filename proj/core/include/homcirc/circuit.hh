#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homcirc/pattern.hh"
#include "homcirc/rational.hh"

namespace homcirc {

enum class GateKind : uint8_t { Input, Const, Add, Mul };

// Arithmetic circuit over variables x_{ij}.  Gates are stored in parallel
// arrays indexed by dense gate id; children always precede parents, which
// keeps the circuit acyclic by construction and makes evaluation a single
// forward sweep.  Wire multiplicities model repeated edges (x^2 etc.).
//
// Each gate may carry a key (tag, support tuple): distinct per gate, with
// the support listing the graph indices the gate "depends on" positionally.
// Support entries are global: left index i -> i, right index j -> n+j for
// the Sym_n x Sym_m group; plain 0..n-1 for the diagonal Sym_n group.
class Circuit {
 public:
  enum class Group : uint8_t { SymNM, SymN };

  int n = 0;
  int m = 0;
  Group group = Group::SymNM;
  int output = -1;

  auto num_gates() const -> size_t { return kind_.size(); }
  auto kind(size_t g) const -> GateKind { return kind_[g]; }
  auto input_pos(size_t g) const -> std::pair<int, int> { return payload_[g]; }
  auto const_value(size_t g) const -> const Rat& {
    return consts_[payload_[g].first];
  }
  // children of an Add/Mul gate as (child id, multiplicity) pairs
  auto child_begin(size_t g) const -> const std::pair<int, int>* {
    return wires_.data() + payload_[g].first;
  }
  auto child_end(size_t g) const -> const std::pair<int, int>* {
    return wires_.data() + payload_[g].second;
  }
  auto has_key(size_t g) const -> bool { return key_tag_[g] != kNoKey; }
  auto key_tag(size_t g) const -> int { return key_tag_[g]; }
  auto key_support(size_t g) const -> std::vector<int>;

  // gates + wires counted with multiplicity
  auto size_measure() const -> long;
  // Structural sanity: children precede parents, output set, every variable
  // read by at most one input gate, keys pairwise distinct.  The key check
  // can be skipped for very large machine-generated circuits where the
  // uniqueness is guaranteed by construction and the check would dominate
  // memory.
  auto validate(bool check_keys = true) const -> std::optional<std::string>;

  // Evaluates over a weighted host (entries indexed by the input positions).
  // Intermediate values are freed after their last use, so circuits with
  // millions of gates stay within memory.
  auto evaluate(const WeightedHost& host) const -> Rat;

  struct PermutationCheck {
    bool ok = false;
    std::string message;
    std::vector<int> mapping;  // gate bijection when ok
  };
  // Key-relabeling bijection induced by vertex permutations.  perm_left has
  // size n; perm_right size m.  For the diagonal group both must coincide.
  auto apply_permutation(const std::vector<int>& perm_left,
                         const std::vector<int>& perm_right) const
      -> PermutationCheck;
  // Checks apply_permutation on a generating set (transposition + full cycle
  // per side); symmetry under generators extends to the whole group.
  auto verify_symmetry() const -> PermutationCheck;

  struct OrbitStats {
    bool exact = false;
    long max_orb = 0;
    int max_sup = 0;
    std::vector<long> orbit_sizes;  // per gate, exact mode only
    std::vector<std::string> notes;
  };
  // Exact mode (n+m <= 8 for SymNM, n <= 8 for SymN) walks the whole group:
  // true orbit sizes, support verification, greedy support minimization.
  // Otherwise reports the annotated bound from key supports.
  auto orbit_stats() const -> OrbitStats;

  auto serialize() const -> std::string;
  static auto deserialize(const std::string& text) -> Circuit;

  static constexpr int kNoKey = INT32_MIN;

 private:
  friend class CircuitBuilder;
  std::vector<GateKind> kind_;
  std::vector<std::pair<int, int>> payload_;
  std::vector<std::pair<int, int>> wires_;
  std::vector<Rat> consts_;
  std::vector<int> key_tag_;
  std::vector<std::pair<int, int>> key_sup_;
  std::vector<int> sup_;

  auto key_map() const -> std::map<std::pair<int, std::vector<int>>, int>;
  auto permutation_bijection(const std::vector<int>& vertex_map,
                             const std::map<std::pair<int, std::vector<int>>, int>& keys)
      const -> PermutationCheck;
};

// Incremental construction with key-based deduplication: requesting a gate
// whose key already exists returns the existing id (synthesizers use this as
// their memo table).  Children must already exist.
class CircuitBuilder {
 public:
  CircuitBuilder(int n, int m, Circuit::Group group);

  auto find(int tag, const std::vector<int>& support) const -> int;  // -1 if absent
  auto input(int i, int j, int tag, const std::vector<int>& support) -> int;
  auto constant(const Rat& value, int tag, const std::vector<int>& support)
      -> int;
  auto add(const std::vector<std::pair<int, int>>& children, int tag,
           const std::vector<int>& support) -> int;
  auto mul(const std::vector<std::pair<int, int>>& children, int tag,
           const std::vector<int>& support) -> int;
  // fresh tag namespace helper: returns consecutive negative-free tags
  auto fresh_tag() -> int { return next_tag_++; }

  // Disables the key-dedup map for gates the caller guarantees to be unique
  // (bulk instantiation of non-shared subcircuits).  Keys are still recorded
  // in the circuit; take() then skips the global uniqueness re-check.
  void set_dedup(bool on) {
    dedup_ = on;
    if (!on) skipped_dedup_ = true;
  }

  void set_output(int g) { c_.output = g; }
  auto take() -> Circuit;
  auto peek() const -> const Circuit& { return c_; }

 private:
  auto emplace(GateKind k, std::pair<int, int> payload, int tag,
               const std::vector<int>& support) -> int;
  Circuit c_;
  std::map<std::pair<int, std::vector<int>>, int> keys_;
  int next_tag_ = 1 << 20;
  bool dedup_ = true;
  bool skipped_dedup_ = false;
};

}  // namespace homcirc
