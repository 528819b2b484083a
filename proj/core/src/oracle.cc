#include "homcirc/oracle.hh"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace homcirc {

namespace {

// odometer over maps side -> [count]
template <typename Fn>
void maps(int slots, int count, bool injective, Fn&& fn) {
  std::vector<int> h(slots, 0);
  std::vector<char> used(count, 0);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == slots) {
      fn(h);
      return;
    }
    for (int v = 0; v < count; ++v) {
      if (injective && used[v]) continue;
      h[pos] = v;
      used[v] = 1;
      self(self, pos + 1);
      used[v] = 0;
    }
  };
  rec(rec, 0);
}

auto brute_count(const BipartitePattern& f, const WeightedHost& g,
                 bool injective) -> Rat {
  if (f.num_vertices() > 8)
    throw std::invalid_argument("brute count: pattern exceeds 8 vertices");
  if (injective && (f.left_size > g.n || f.right_size > g.m)) return Rat(0);
  Rat total(0);
  maps(f.left_size, g.n, injective, [&](const std::vector<int>& hl) {
    maps(f.right_size, g.m, injective, [&](const std::vector<int>& hr) {
      Rat p(1);
      for (const auto& e : f.edges) {
        const Rat& w = g.at(hl[e[0]], hr[e[1]]);
        if (w == 0) return;
        for (int t = 0; t < e[2]; ++t) p *= w;
      }
      total += p;
    });
  });
  return total;
}

}  // namespace

auto brute_hom(const BipartitePattern& f, const WeightedHost& g) -> Rat {
  if (f.num_vertices() > 8)
    throw std::invalid_argument("brute count: pattern exceeds 8 vertices");
  // Same sum over all vertex maps as the emb enumerator, but once one side
  // is pinned the other side's vertices are independent, so their sums pull
  // out by distributivity.  Enumerates whichever side is cheaper.
  auto mm = f.multiplicity_matrix();
  Rat total(0);
  auto vertex_sum = [](int count, auto&& factor) {
    Rat s(0);
    for (int v = 0; v < count; ++v) s += factor(v);
    return s;
  };
  bool right_cheaper = f.right_size * std::log(std::max(g.m, 1)) <=
                       f.left_size * std::log(std::max(g.n, 1));
  if (right_cheaper) {
    maps(f.right_size, g.m, false, [&](const std::vector<int>& hr) {
      Rat p(1);
      for (int a = 0; a < f.left_size && p != 0; ++a)
        p *= vertex_sum(g.n, [&](int i) {
          Rat q(1);
          for (int b = 0; b < f.right_size && q != 0; ++b) {
            const Rat& w = g.at(i, hr[b]);
            for (int t = 0; t < mm[a][b]; ++t) {
              q *= w;
              if (q == 0) break;
            }
          }
          return q;
        });
      total += p;
    });
  } else {
    maps(f.left_size, g.n, false, [&](const std::vector<int>& hl) {
      Rat p(1);
      for (int b = 0; b < f.right_size && p != 0; ++b)
        p *= vertex_sum(g.m, [&](int j) {
          Rat q(1);
          for (int a = 0; a < f.left_size && q != 0; ++a) {
            const Rat& w = g.at(hl[a], j);
            for (int t = 0; t < mm[a][b]; ++t) {
              q *= w;
              if (q == 0) break;
            }
          }
          return q;
        });
      total += p;
    });
  }
  return total;
}

auto brute_emb(const BipartitePattern& f, const WeightedHost& g) -> Rat {
  return brute_count(f, g, true);
}

auto brute_sub(const BipartitePattern& f, const WeightedHost& g) -> Rat {
  Rat e = brute_emb(f, g);
  e /= automorphism_count(f);
  e.canonicalize();
  return e;
}

auto SparsePolynomial::constant(int n, int m, const Rat& c)
    -> SparsePolynomial {
  SparsePolynomial p(n, m);
  if (c != 0) p.terms[std::vector<uint16_t>(size_t(n) * m, 0)] = c;
  return p;
}

auto SparsePolynomial::variable(int n, int m, int i, int j)
    -> SparsePolynomial {
  SparsePolynomial p(n, m);
  std::vector<uint16_t> e(size_t(n) * m, 0);
  e[size_t(i) * m + j] = 1;
  p.terms[std::move(e)] = 1;
  return p;
}

void SparsePolynomial::add_term(std::vector<uint16_t> expo, const Rat& coeff) {
  if (coeff == 0) return;
  auto it = terms.find(expo);
  if (it == terms.end()) {
    terms.emplace(std::move(expo), coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms.erase(it);
  }
}

auto SparsePolynomial::operator+=(const SparsePolynomial& o)
    -> SparsePolynomial& {
  for (const auto& [e, c] : o.terms) add_term(e, c);
  return *this;
}

auto SparsePolynomial::operator*(const SparsePolynomial& o) const
    -> SparsePolynomial {
  SparsePolynomial r(n, m);
  for (const auto& [ea, ca] : terms)
    for (const auto& [eb, cb] : o.terms) {
      std::vector<uint16_t> e(ea);
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(std::move(e), ca * cb);
    }
  return r;
}

void SparsePolynomial::scale(const Rat& c) {
  if (c == 0) {
    terms.clear();
    return;
  }
  for (auto& [e, v] : terms) {
    v *= c;
    v.canonicalize();
  }
}

auto SparsePolynomial::pow(unsigned e) const -> SparsePolynomial {
  SparsePolynomial r = constant(n, m, 1);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

auto SparsePolynomial::evaluate(const WeightedHost& g) const -> Rat {
  Rat total(0);
  for (const auto& [e, c] : terms) {
    Rat p = c;
    for (size_t v = 0; v < e.size(); ++v)
      for (int t = 0; t < e[v]; ++t) p *= g.entries[v];
    total += p;
  }
  total.canonicalize();
  return total;
}

auto SparsePolynomial::to_lines() const -> std::string {
  std::ostringstream os;
  for (const auto& [e, c] : terms) {
    for (size_t i = 0; i < e.size(); ++i) {
      if (i) os << ',';
      os << e[i];
    }
    os << " : " << rat_str(c) << '\n';
  }
  return os.str();
}

auto expand_circuit(const Circuit& c, size_t monomial_cap)
    -> SparsePolynomial {
  const size_t ng = c.num_gates();
  const int pn = c.n, pm = c.group == Circuit::Group::SymN ? c.n : c.m;
  std::vector<int> refs(ng, 0);
  for (size_t g = 0; g < ng; ++g)
    if (c.kind(g) == GateKind::Add || c.kind(g) == GateKind::Mul)
      for (auto it = c.child_begin(g); it != c.child_end(g); ++it)
        ++refs[it->first];
  ++refs[c.output];

  std::vector<SparsePolynomial> val(ng);
  size_t live = 0;
  auto release = [&](int g) {
    if (--refs[g] == 0) {
      live -= val[g].terms.size();
      SparsePolynomial().terms.swap(val[g].terms);
    }
  };
  for (size_t g = 0; g < ng; ++g) {
    if (refs[g] == 0) continue;
    switch (c.kind(g)) {
      case GateKind::Input: {
        auto [i, j] = c.input_pos(g);
        val[g] = SparsePolynomial::variable(pn, pm, i, j);
        break;
      }
      case GateKind::Const:
        val[g] = SparsePolynomial::constant(pn, pm, c.const_value(g));
        break;
      case GateKind::Add: {
        SparsePolynomial s(pn, pm);
        for (auto it = c.child_begin(g); it != c.child_end(g); ++it) {
          SparsePolynomial t = val[it->first];
          if (it->second != 1) t.scale(Rat(it->second));
          s += t;
        }
        for (auto it = c.child_begin(g); it != c.child_end(g); ++it)
          release(it->first);
        val[g] = std::move(s);
        break;
      }
      case GateKind::Mul: {
        SparsePolynomial s = SparsePolynomial::constant(pn, pm, 1);
        for (auto it = c.child_begin(g); it != c.child_end(g); ++it) {
          s = s * (it->second == 1 ? val[it->first]
                                   : val[it->first].pow(it->second));
          if (s.terms.size() > monomial_cap)
            throw std::length_error("expand_circuit: monomial cap exceeded");
        }
        for (auto it = c.child_begin(g); it != c.child_end(g); ++it)
          release(it->first);
        val[g] = std::move(s);
        break;
      }
    }
    live += val[g].terms.size();
    if (live > 4 * monomial_cap)
      throw std::length_error("expand_circuit: live monomial cap exceeded");
  }
  return val[c.output];
}

auto multilinearize(const SparsePolynomial& p) -> SparsePolynomial {
  SparsePolynomial r(p.n, p.m);
  for (const auto& [e, c] : p.terms) {
    std::vector<uint16_t> f(e);
    for (auto& x : f) x = x ? 1 : 0;
    r.add_term(std::move(f), c);
  }
  return r;
}

namespace {

auto circuit_degree_bound(const Circuit& c) -> long {
  std::vector<long> deg(c.num_gates(), 0);
  const long cap = 1'000'000'000L;
  for (size_t g = 0; g < c.num_gates(); ++g) {
    switch (c.kind(g)) {
      case GateKind::Input:
        deg[g] = 1;
        break;
      case GateKind::Const:
        deg[g] = 0;
        break;
      case GateKind::Add:
        for (auto it = c.child_begin(g); it != c.child_end(g); ++it)
          deg[g] = std::max(deg[g], deg[it->first]);
        break;
      case GateKind::Mul:
        for (auto it = c.child_begin(g); it != c.child_end(g); ++it)
          deg[g] = std::min(cap, deg[g] + deg[it->first] * it->second);
        break;
    }
  }
  return deg[c.output];
}

}  // namespace

auto circuits_equal(const Circuit& a, const Circuit& b, int trials,
                    uint64_t seed, EqMode mode) -> EqualVerdict {
  EqualVerdict v;
  const int an = a.n, am = a.group == Circuit::Group::SymN ? a.n : a.m;
  const int bn = b.n, bm = b.group == Circuit::Group::SymN ? b.n : b.m;
  if (an != bn || am != bm)
    throw std::invalid_argument("circuits_equal: dimension mismatch");
  if (mode != EqMode::Randomized) {
    try {
      auto pa = expand_circuit(a);
      auto pb = expand_circuit(b);
      v.exact = true;
      v.agree = pa.terms == pb.terms;
      v.note = v.agree ? "equal (exact expansion)"
                       : "differ (exact expansion)";
      return v;
    } catch (const std::length_error&) {
      if (mode == EqMode::Exact) throw;
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint64_t> dist(0, (uint64_t(1) << 61) - 1);
  for (int t = 0; t < trials; ++t) {
    WeightedHost g(an, am);
    for (auto& e : g.entries) e = Rat(mpz_class(std::to_string(dist(rng))));
    if (a.evaluate(g) != b.evaluate(g)) {
      v.agree = false;
      v.note = "differ at random point (trial " + std::to_string(t) + ")";
      return v;
    }
  }
  long d = std::max(circuit_degree_bound(a), circuit_degree_bound(b));
  v.agree = true;
  v.note = "indistinguishable (probabilistic); " + std::to_string(trials) +
           " trials over [0,2^61), degree bound " + std::to_string(d) +
           ", per-trial error <= degree/2^61";
  return v;
}

auto brute_sub_polynomial(const BipartitePattern& f, int n, int m)
    -> SparsePolynomial {
  if (f.num_vertices() > 8)
    throw std::invalid_argument("brute_sub_polynomial: pattern too large");
  SparsePolynomial acc(n, m);
  maps(f.left_size, n, true, [&](const std::vector<int>& hl) {
    maps(f.right_size, m, true, [&](const std::vector<int>& hr) {
      std::vector<uint16_t> e(size_t(n) * m, 0);
      for (const auto& ed : f.edges)
        e[size_t(hl[ed[0]]) * m + hr[ed[1]]] += ed[2];
      acc.add_term(std::move(e), 1);
    });
  });
  Rat inv(1);
  inv /= automorphism_count(f);
  acc.scale(inv);
  return acc;
}

auto symbolic_sub_by_edge_classes(const BipartitePattern& f,
                                  const std::vector<int>& class_of, int n,
                                  int m) -> SparsePolynomial {
  if (n > 3 || m > 3)
    throw std::invalid_argument("symbolic_sub_by_edge_classes: n,m <= 3");
  if (f.num_vertices() != n + m || f.left_size != n || f.right_size != m)
    throw std::invalid_argument(
        "symbolic_sub_by_edge_classes: pattern must have (n,m) vertices");
  if (!f.is_simple())
    throw std::invalid_argument("symbolic_sub_by_edge_classes: F must be simple");
  if (int(class_of.size()) != n * m)
    throw std::invalid_argument("symbolic_sub_by_edge_classes: bad class map");
  int r = 0;
  for (int c : class_of) r = std::max(r, c + 1);
  auto p = brute_sub_polynomial(f, n, m);
  SparsePolynomial out(1, r);
  for (const auto& [e, c] : p.terms) {
    std::vector<uint16_t> ye(r, 0);
    for (size_t v = 0; v < e.size(); ++v) ye[class_of[v]] += e[v];
    out.add_term(std::move(ye), c);
  }
  return out;
}

auto monomial_symmetric(const std::vector<int>& lambda, int n)
    -> SparsePolynomial {
  SparsePolynomial p(n, 1);
  if (int(lambda.size()) > n) return p;
  std::vector<int> perm(n, 0);
  for (size_t i = 0; i < lambda.size(); ++i) perm[i] = lambda[i];
  std::sort(perm.begin(), perm.end());
  do {
    std::vector<uint16_t> e(n, 0);
    for (int i = 0; i < n; ++i) e[i] = uint16_t(perm[i]);
    p.add_term(std::move(e), 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return p;
}

}  // namespace homcirc
