#include "doctest.h"

#include <random>
#include <set>

#include "homcirc/hompoly.hh"
#include "homcirc/oracle.hh"

using namespace homcirc;

namespace {

std::mt19937_64 rng(7);

auto rand_host(int n, int m) -> WeightedHost {
  WeightedHost g(n, m);
  for (auto& e : g.entries) e = random_rat(rng);
  return g;
}

auto rand_expr(int n, int m, int ell, int r, int nterms) -> HomPolyExpr {
  HomPolyExpr e = HomPolyExpr::zero(n, m, ell, r);
  for (int t = 0; t < nterms; ++t) {
    HomPolyTerm tm;
    tm.coeff = random_rat(rng);
    if (tm.coeff == 0) tm.coeff = Rat(1);
    int L = std::max(1, ell + int(rng() % 2));
    int R = std::max(1, r + int(rng() % 2));
    tm.pat.base.left_size = L;
    tm.pat.base.right_size = R;
    for (int a = 0; a < L; ++a)
      for (int b = 0; b < R; ++b)
        if (rng() % 2) tm.pat.base.edges.push_back({a, b, 1 + int(rng() % 2)});
    tm.pat.base.normalize();
    for (int s = 0; s < ell; ++s) tm.pat.left_labels.push_back(int(rng() % L));
    for (int s = 0; s < r; ++s) tm.pat.right_labels.push_back(int(rng() % R));
    TreeDecomposition td;
    std::vector<int> bag(L + R);
    for (int v = 0; v < L + R; ++v) bag[v] = v;
    td.bags.push_back(bag);
    td.root = 0;
    tm.cert = td;
    e.terms.push_back(tm);
  }
  return e;
}

template <typename Fn>
void all_tuples(int ell, int r, int n, int m, Fn&& fn) {
  std::vector<int> v(ell, 0), w(r, 0);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == ell + r) {
      fn(v, w);
      return;
    }
    int range = pos < ell ? n : m;
    int* s = pos < ell ? &v[pos] : &w[pos - ell];
    for (int x = 0; x < range; ++x) {
      *s = x;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
}

auto transpose(const WeightedHost& g) -> WeightedHost {
  WeightedHost gt(g.m, g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.m; ++j) gt.at(j, i) = g.at(i, j);
  return gt;
}

constexpr int kN = 3, kM = 3;

}  // namespace

TEST_CASE("swap exchanges sides") {
  for (int it = 0; it < 8; ++it) {
    int ell = 1 + int(rng() % 2), r = int(rng() % 2);
    auto e = rand_expr(kN, kM, ell, r, 1 + int(rng() % 2));
    auto g = rand_host(kN, kM);
    auto sw = swap_expr(e);
    auto gt = transpose(g);
    all_tuples(ell, r, kN, kM, [&](auto& v, auto& w) {
      CHECK(eval_expr(sw, w, v, gt) == eval_expr(e, v, w, g));
    });
  }
}

TEST_CASE("unlabel sums over the dropped slot") {
  for (int it = 0; it < 8; ++it) {
    int ell = 1 + int(rng() % 2), r = int(rng() % 2);
    auto e = rand_expr(kN, kM, ell, r, 2);
    auto g = rand_host(kN, kM);
    auto ul = unlabel(e, 0);
    all_tuples(ell - 1, r, kN, kM, [&](auto& v, auto& w) {
      Rat want(0);
      for (int x = 0; x < kN; ++x) {
        std::vector<int> vv{x};
        vv.insert(vv.end(), v.begin(), v.end());
        want += eval_expr(e, vv, w, g);
      }
      CHECK(eval_expr(ul, v, w, g) == want);
    });
  }
}

TEST_CASE("glue and tensor multiply pointwise") {
  for (int it = 0; it < 6; ++it) {
    int ell = 1, r = 1;
    auto a = rand_expr(kN, kM, ell, r, 2);
    auto b = rand_expr(kN, kM, ell, r, 1);
    auto g = rand_host(kN, kM);
    auto gl = glue(a, b);
    all_tuples(ell, r, kN, kM, [&](auto& v, auto& w) {
      CHECK(eval_expr(gl, v, w, g) ==
            eval_expr(a, v, w, g) * eval_expr(b, v, w, g));
    });
    for (auto& t : gl.terms) CHECK(!term_cert_ok(t, 20).has_value());
    auto tn = tensor(a, b);
    all_tuples(ell, r, kN, kM, [&](auto& v, auto& w) {
      all_tuples(ell, r, kN, kM, [&](auto& v2, auto& w2) {
        std::vector<int> vv(v);
        vv.insert(vv.end(), v2.begin(), v2.end());
        std::vector<int> ww(w);
        ww.insert(ww.end(), w2.begin(), w2.end());
        CHECK(eval_expr(tn, vv, ww, g) ==
              eval_expr(a, v, w, g) * eval_expr(b, v2, w2, g));
      });
    });
  }
}

TEST_CASE("restricted sum skips excluded values") {
  for (int it = 0; it < 6; ++it) {
    int ell = 2 + int(rng() % 2), r = 1;
    auto e = rand_expr(kN, kM, ell, r, 2);
    auto g = rand_host(kN, kM);
    std::set<int> J{1};
    if (ell == 3 && rng() % 2) J.insert(2);
    auto rs = restricted_sum(e, 0, J);
    all_tuples(ell - 1, r, kN, kM, [&](auto& v, auto& w) {
      Rat want(0);
      for (int x = 0; x < kN; ++x) {
        bool excl = false;
        for (int j : J) excl |= v[j - 1] == x;
        if (excl) continue;
        std::vector<int> vv{x};
        vv.insert(vv.end(), v.begin(), v.end());
        want += eval_expr(e, vv, w, g);
      }
      CHECK(eval_expr(rs, v, w, g) == want);
    });
  }
}

TEST_CASE("product expands the pointwise power") {
  for (int it = 0; it < 5; ++it) {
    int ell = 1 + int(rng() % 2), r = 1;
    auto e = rand_expr(kN, kM, ell, r, 1 + int(rng() % 2));
    auto g = rand_host(kN, kM);
    auto pr = product(e, 0);
    all_tuples(ell - 1, r, kN, kM, [&](auto& v, auto& w) {
      Rat want(1);
      for (int x = 0; x < kN; ++x) {
        std::vector<int> vv{x};
        vv.insert(vv.end(), v.begin(), v.end());
        want *= eval_expr(e, vv, w, g);
      }
      CHECK(eval_expr(pr, v, w, g) == want);
    });
    for (auto& t : pr.terms) CHECK(!term_cert_ok(t, 40).has_value());
  }
}

TEST_CASE("restricted product") {
  for (int it = 0; it < 4; ++it) {
    auto e = rand_expr(kN, kM, 2, 1, 1);
    auto g = rand_host(kN, kM);
    auto rp = restricted_product(e, 0, {1}, 5, 4);
    all_tuples(1, 1, kN, kM, [&](auto& v, auto& w) {
      Rat want(1);
      for (int x = 0; x < kN; ++x) {
        if (v[0] == x) continue;
        want *= eval_expr(e, {x, v[0]}, w, g);
      }
      CHECK(eval_expr(rp, v, w, g) == want);
    });
  }
}

TEST_CASE("fully unlabelled expression equals hom") {
  BipartitePattern f{2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 1, 1}}};
  f.normalize();
  HomPolyExpr e = HomPolyExpr::zero(kN, kM, 2, 2);
  HomPolyTerm t;
  t.coeff = Rat(1);
  t.pat.base = f;
  t.pat.left_labels = {0, 1};
  t.pat.right_labels = {0, 1};
  e.terms.push_back(t);
  auto g = rand_host(kN, kM);
  auto cur = swap_expr(unlabel(unlabel(e, 0), 0));
  cur = unlabel(unlabel(cur, 0), 0);
  CHECK(eval_expr(cur, {}, {}, transpose(g)) == brute_hom(f, g));
}

TEST_CASE("normalize merges isomorphic terms") {
  auto e = HomPolyExpr::one(kN, kM, 0, 0);
  auto dbl = expr_add(e, e);
  auto norm = normalize(dbl);
  REQUIRE(norm.terms.size() == 1);
  CHECK(norm.terms[0].coeff == 2);
  auto zero = expr_add(e, expr_scale(e, Rat(-1)));
  CHECK(normalize(zero).terms.empty());
}

TEST_CASE("eq_gadget is the equality indicator") {
  auto eq = HomPolyExpr::eq_gadget(kN, kM, 2, 0, 0, 1);
  auto g = rand_host(kN, kM);
  all_tuples(2, 0, kN, kM, [&](auto& v, auto& w) {
    CHECK(eval_expr(eq, v, w, g) == (v[0] == v[1] ? Rat(1) : Rat(0)));
  });
}

TEST_CASE("lagrange interpolation") {
  // through (0,1),(1,2),(2,5): 1 + x^2
  auto c = lagrange_coeffs({{Rat(0), Rat(1)}, {Rat(1), Rat(2)}, {Rat(2), Rat(5)}});
  REQUIRE(c.size() == 3);
  CHECK(c[0] == 1);
  CHECK(c[1] == 0);
  CHECK(c[2] == 1);
}

TEST_CASE("exprs_agree distinguishes different maps") {
  auto one = HomPolyExpr::one(kN, kM, 1, 0);
  auto two = expr_scale(one, Rat(2));
  std::vector<WeightedHost> hosts{rand_host(kN, kM), rand_host(kN, kM)};
  CHECK(exprs_agree(one, one, hosts));
  CHECK(!exprs_agree(one, two, hosts));
}
