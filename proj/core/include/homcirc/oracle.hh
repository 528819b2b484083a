#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "homcirc/circuit.hh"
#include "homcirc/pattern.hh"
#include "homcirc/rational.hh"

namespace homcirc {

// Brute-force counts over a weighted host; these are the ground truth the
// rest of the repository is validated against, so they stay as dumb direct
// enumerations.  Pattern size capped at 8 vertices.
auto brute_hom(const BipartitePattern& f, const WeightedHost& g) -> Rat;
auto brute_emb(const BipartitePattern& f, const WeightedHost& g) -> Rat;
auto brute_sub(const BipartitePattern& f, const WeightedHost& g) -> Rat;

// Exact multivariate polynomials over the variable grid x_{ij}, i in [n],
// j in [m], exponent vectors in row-major order.  No zero coefficients are
// ever stored.
struct SparsePolynomial {
  int n = 0;
  int m = 0;
  std::map<std::vector<uint16_t>, Rat> terms;

  SparsePolynomial() = default;
  SparsePolynomial(int n_, int m_) : n(n_), m(m_) {}

  static auto constant(int n, int m, const Rat& c) -> SparsePolynomial;
  static auto variable(int n, int m, int i, int j) -> SparsePolynomial;

  void add_term(std::vector<uint16_t> expo, const Rat& coeff);
  auto operator+=(const SparsePolynomial& o) -> SparsePolynomial&;
  auto operator*(const SparsePolynomial& o) const -> SparsePolynomial;
  void scale(const Rat& c);
  auto pow(unsigned e) const -> SparsePolynomial;
  auto evaluate(const WeightedHost& g) const -> Rat;
  auto is_zero() const -> bool { return terms.empty(); }
  auto operator==(const SparsePolynomial& o) const -> bool = default;

  // sorted `e1,e2,...,ek : p/q` lines, for golden files
  auto to_lines() const -> std::string;
};

// Exact expansion of a circuit; throws when the running monomial count
// exceeds the cap.
auto expand_circuit(const Circuit& c, size_t monomial_cap = 4000000)
    -> SparsePolynomial;

// Exponents clipped to 1, like monomials merged; agrees on all 0/1 hosts.
auto multilinearize(const SparsePolynomial& p) -> SparsePolynomial;

enum class EqMode { Auto, Exact, Randomized };

struct EqualVerdict {
  bool agree = false;
  bool exact = false;
  std::string note;
};

// Identity test: exact mode compares expansions; randomized mode evaluates
// both circuits at `trials` integer points drawn from [0, 2^61) and, on
// agreement, reports "indistinguishable (probabilistic)" -- never "equal".
auto circuits_equal(const Circuit& a, const Circuit& b, int trials,
                    uint64_t seed, EqMode mode = EqMode::Auto) -> EqualVerdict;

// sub_{F,n,m} as an explicit polynomial (direct enumeration of injections).
auto brute_sub_polynomial(const BipartitePattern& f, int n, int m)
    -> SparsePolynomial;

// sub_{F,n,m} with the grid variables merged into class variables
// y_1..y_r according to a partition of [n] x [m]; class_of is row-major,
// values 0..r-1.  Requires n,m <= 3 and |V(F)| = n+m, F simple.  The result
// lives on a 1 x r grid (variable y_c at position (0,c)).
auto symbolic_sub_by_edge_classes(const BipartitePattern& f,
                                  const std::vector<int>& class_of, int n,
                                  int m) -> SparsePolynomial;

// Monomial symmetric polynomial m_lambda(y_1..y_n) on an n x 1 grid
// (y_i = x_{i,0}); stress-test generator only.
auto monomial_symmetric(const std::vector<int>& lambda, int n)
    -> SparsePolynomial;

}  // namespace homcirc
