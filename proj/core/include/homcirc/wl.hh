#pragma once

#include <functional>
#include <string>
#include <vector>

#include "homcirc/cfi.hh"
#include "homcirc/rational.hh"
#include "homcirc/simplegraph.hh"

namespace homcirc {

struct WlVerdict {
  bool equivalent = false;
  int rounds = 0;
  std::string fingerprint_g;  // stable color histogram, canonical string
  std::string fingerprint_h;
};

// k-dimensional Weisfeiler-Leman over a shared color palette: initial
// colors are canonical strings of each ordered k-tuple's induced structure
// (equalities, adjacency, weights, vertex colors, bipartition sides), and
// refinement appends the sorted multiset of substituted-tuple color
// vectors.  k = 1 is classic color refinement.  Equivalent means equal
// stable histograms.  Counting-logic queries go through c_equivalent,
// which runs (k-1)-WL.
auto k_wl_equivalent(const SimpleGraph& g, const SimpleGraph& h, int k)
    -> WlVerdict;
auto c_equivalent(const SimpleGraph& g, const SimpleGraph& h, int k)
    -> WlVerdict;

// Small named bipartite base graphs for experiments and the command line:
// c4/c6/c8/c10 (even cycles), k22/k33/k34/k44 (bicliques), grid33/grid34,
// q3 (the 3-cube), k2, path3.  All come with a fixed bipartition.
auto named_base(const std::string& name) -> SimpleGraph;

struct HostPair {
  std::string id;
  WeightedHost g0;
  WeightedHost g1;
  bool isomorphic = false;  // true for same-parity twist pairs
};

// Equivalent-host pairs from bipartite CFI instances whose bases have
// treewidth >= k: the even/odd pair plus same-parity random-twist pairs for
// each base, at least min_pairs in total.  All hosts of one base share the
// same shape, so circuits synthesized at that shape evaluate on both.
auto cfi_host_pairs(int k, int min_pairs, uint64_t seed)
    -> std::vector<HostPair>;

struct WidthExperimentRow {
  std::string id;
  bool equal = false;
  Rat value0;
  Rat value1;
};

// Evaluates a symmetric-polynomial evaluator on both sides of each pair and
// records any value gap (a witness that the polynomial's counting width
// exceeds the k used to generate the pairs).
auto counting_width_experiment(
    const std::function<Rat(const WeightedHost&)>& eval,
    const std::vector<HostPair>& pairs) -> std::vector<WidthExperimentRow>;

}  // namespace homcirc
