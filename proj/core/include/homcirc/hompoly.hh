#pragma once

#include <optional>
#include <set>
#include <vector>

#include "homcirc/decomposition.hh"
#include "homcirc/pattern.hh"
#include "homcirc/rational.hh"

namespace homcirc {

// One summand of a homomorphism polynomial map: an exact coefficient, a
// labelled pattern, and an optional width certificate.  A certificate is a
// tree decomposition of `pat.base` (global vertex ids) whose root bag
// contains every labelled vertex; its max bag size is the witnessed width
// class.
struct HomPolyTerm {
  Rat coeff;
  LabelledPattern pat;
  std::optional<TreeDecomposition> cert;
};

// A finite rational linear combination of labelled homomorphism polynomial
// maps, targeting hosts of fixed size (n, m), with ell left labels and r
// right labels shared by every term.
struct HomPolyExpr {
  int n = 0;
  int m = 0;
  int ell = 0;
  int r = 0;
  std::vector<HomPolyTerm> terms;

  // The edgeless pattern with one distinct vertex per label; evaluates to 1
  // at every tuple.
  static auto one(int n, int m, int ell, int r) -> HomPolyExpr;
  // The empty combination; evaluates to 0.
  static auto zero(int n, int m, int ell, int r) -> HomPolyExpr;
  // Edgeless pattern placing left labels i and j (0-based) on a shared
  // vertex; indicator of v_i == v_j.
  static auto eq_gadget(int n, int m, int ell, int r, int i, int j)
      -> HomPolyExpr;
};

// Certificate check: valid decomposition of the term's pattern, root bag
// holds all labelled vertices, max bag size <= k.
auto term_cert_ok(const HomPolyTerm& t, int k) -> std::optional<std::string>;

// Merge isomorphic terms (patterns up to 10 vertices; larger ones merge on
// exact equality only) and drop zero coefficients.
auto normalize(HomPolyExpr e) -> HomPolyExpr;

auto expr_add(const HomPolyExpr& a, const HomPolyExpr& b) -> HomPolyExpr;
auto expr_scale(HomPolyExpr e, const Rat& c) -> HomPolyExpr;

// Sum over all maps pinned on the labels of the product of host entries
// along pattern edges (with multiplicity), weighted by term coefficients.
auto eval_expr(const HomPolyExpr& e, const std::vector<int>& v,
               const std::vector<int>& w, const WeightedHost& g) -> Rat;

// Interchange the two sides: the result has arities (r, ell) and targets
// (m, n); eval_expr(swap(e), w, v, transpose(g)) == eval_expr(e, v, w, g).
auto swap_expr(const HomPolyExpr& e) -> HomPolyExpr;

// Drop the i-th left label (0-based); evaluates to the sum over all values
// of the dropped slot.
auto unlabel(const HomPolyExpr& e, int i) -> HomPolyExpr;

// Sum over v in [n] minus the values held by slots in J.
auto restricted_sum(const HomPolyExpr& e, int i, const std::set<int>& j)
    -> HomPolyExpr;

// Disjoint union; arities add, evaluation is the product on split tuples.
auto tensor(const HomPolyExpr& a, const HomPolyExpr& b) -> HomPolyExpr;

// Identify equally-indexed label vertices; pointwise product of evaluations.
auto glue(const HomPolyExpr& a, const HomPolyExpr& b) -> HomPolyExpr;

// Pointwise product over all n values of slot i, expanded back into a linear
// combination.  Inherently exponential; capped at n <= max_n and at most
// max_terms distinct terms after normalization.
auto product(const HomPolyExpr& e, int i, int max_n = 5, int max_terms = 3)
    -> HomPolyExpr;

// Product over [n] minus the values held by slots in J.
auto restricted_product(const HomPolyExpr& e, int i, const std::set<int>& j,
                        int max_n = 5, int max_terms = 3) -> HomPolyExpr;

// Coefficients (low degree first) of the unique polynomial of degree
// < points.size() through the given (point, value) pairs.
auto lagrange_coeffs(const std::vector<std::pair<Rat, Rat>>& points)
    -> std::vector<Rat>;

// Semantic equality: agreement at every label tuple on every given host.
auto exprs_agree(const HomPolyExpr& a, const HomPolyExpr& b,
                 const std::vector<WeightedHost>& hosts) -> bool;

}  // namespace homcirc
