// Acceptance battery: one pass/fail line per criterion, all checks exact
// (zero tolerance) over the rationals.  Exit status is the number of failed
// criteria.

#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "homcirc/cfi.hh"
#include "homcirc/decomposition.hh"
#include "homcirc/hompoly.hh"
#include "homcirc/immanant.hh"
#include "homcirc/oracle.hh"
#include "homcirc/partition.hh"
#include "homcirc/pattern.hh"
#include "homcirc/simplegraph.hh"
#include "homcirc/synth.hh"
#include "homcirc/wl.hh"

using namespace homcirc;

namespace {

using clk = std::chrono::steady_clock;

int g_failed_criteria = 0;

struct Report {
  bool pass = true;
  std::string detail;

  void fail(const std::string& what) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

void finish(int id, const std::string& name, const Report& r, double secs) {
  if (!r.pass) ++g_failed_criteria;
  std::printf("criterion %d (%s): %s%s%s [%.1fs]\n", id, name.c_str(),
              r.pass ? "PASS" : "FAIL", r.detail.empty() ? "" : " -- ",
              r.detail.c_str(), secs);
  std::fflush(stdout);
}

auto rand_host(std::mt19937_64& rng, int n, int m) -> WeightedHost {
  WeightedHost h(n, m);
  for (auto& e : h.entries) e = random_rat(rng);
  return h;
}

// All bipartite multigraphs with <= max_v vertices and total edge
// multiplicity <= max_mult, one representative per isomorphism class.
auto multigraph_classes(int max_v, int max_mult)
    -> std::vector<BipartitePattern> {
  std::vector<BipartitePattern> out;
  std::set<std::string> seen;
  for (int ls = 1; ls < max_v; ++ls)
    for (int rs = 1; rs + ls <= max_v; ++rs) {
      int cells = ls * rs;
      std::vector<int> mult(cells, 0);
      std::function<void(int, int)> rec = [&](int cell, int left) {
        if (cell == cells) {
          BipartitePattern f;
          f.left_size = ls;
          f.right_size = rs;
          for (int c = 0; c < cells; ++c)
            if (mult[c]) f.edges.push_back({c / rs, c % rs, mult[c]});
          f.normalize();
          auto key = std::to_string(ls) + "|" + std::to_string(rs) + "|" +
                     canonical_key(f);
          if (seen.insert(key).second) out.push_back(f);
          return;
        }
        for (int v = 0; v <= left; ++v) {
          mult[cell] = v;
          rec(cell + 1, left - v);
        }
        mult[cell] = 0;
      };
      rec(0, max_mult);
    }
  return out;
}

// One simple pattern per isomorphism class with <= max_v vertices.
auto simple_classes(int max_v) -> std::vector<BipartitePattern> {
  std::vector<BipartitePattern> out;
  std::set<std::string> seen;
  for (int ls = 1; ls < max_v; ++ls)
    for (int rs = 1; rs + ls <= max_v; ++rs)
      for (auto& f : enumerate_simple_patterns(ls, rs)) {
        auto key = std::to_string(ls) + "|" + std::to_string(rs) + "|" +
                   canonical_key(f);
        if (seen.insert(key).second) out.push_back(f);
      }
  return out;
}

// 5 k!^2 k (n+m)^{k+1} ||F||^2 with k = bag size of the decomposition
auto size_bound_formula(int k, int n, int m, long norm) -> Rat {
  Rat b = Rat(5) * factorial(k) * factorial(k) * Rat(k);
  for (int i = 0; i <= k; ++i) b *= Rat(n + m);
  return b * Rat(norm) * Rat(norm);
}

// ---------------------------------------------------------------- 1 and 2

void criteria_1_2() {
  auto t0 = clk::now();
  std::mt19937_64 rng(2024);
  Report r1, r2;
  long instances = 0, host_checks = 0, exact_orbit_checks = 0;
  auto classes = multigraph_classes(6, 8);
  for (auto& f : classes) {
    auto tw = exact_treewidth(f);
    int k = tw.width + 1;
    for (int n = 2; n <= 5; ++n)
      for (int m = 2; m <= 5; ++m) {
        auto rep = synth_hom(f, tw.witness, n, m);
        ++instances;
        for (int t = 0; t < 20; ++t) {
          auto h = rand_host(rng, n, m);
          ++host_checks;
          if (rep.circuit.evaluate(h) != brute_hom(f, h)) {
            r1.fail("value mismatch at " + canonical_key(f) + " n=" +
                    std::to_string(n) + " m=" + std::to_string(m));
            break;
          }
        }
        if (rep.shape_conformant &&
            Rat(rep.measured_size) > size_bound_formula(k, n, m, f.size_norm()))
          r2.fail("size bound exceeded at " + canonical_key(f));
        auto os = rep.circuit.orbit_stats();
        if (os.max_sup > k)
          r2.fail("support " + std::to_string(os.max_sup) + " > k=" +
                  std::to_string(k) + " at " + canonical_key(f));
        if (os.exact) {
          ++exact_orbit_checks;
          Rat cap(1);
          for (int i = 0; i < os.max_sup; ++i) cap *= Rat(n + m);
          if (Rat(os.max_orb) > cap)
            r2.fail("orbit " + std::to_string(os.max_orb) + " > (n+m)^sup at " +
                    canonical_key(f));
        }
        if (!r1.pass && !r2.pass) goto done;
      }
  }
done:
  double secs = std::chrono::duration<double>(clk::now() - t0).count();
  if (secs > 600) r1.fail("sweep exceeded 10 minutes");
  if (r1.pass)
    r1.detail = std::to_string(classes.size()) + " pattern classes, " +
                std::to_string(instances) + " instances, " +
                std::to_string(host_checks) + " exact host comparisons";
  if (r2.pass)
    r2.detail = "size bound on conforming decompositions, support <= k on " +
                std::to_string(instances) + " circuits, " +
                std::to_string(exact_orbit_checks) + " exact-orbit checks";
  finish(1, "hom-circuit soundness", r1, secs);
  finish(2, "size and support bounds", r2, secs);
}

// --------------------------------------------------------------------- 3

void criterion_3() {
  auto t0 = clk::now();
  Report r;
  long host_checks = 0;
  for (auto& f : simple_classes(5)) {
    for (int n = 1; n <= 4 && r.pass; ++n)
      for (int m = 1; m <= 4; ++m) {
        if (n * m > 12) continue;
        auto rep = synth_sub_moebius(f, n, m);
        bool bad = false;
        for (int mask = 0; mask < (1 << (n * m)); ++mask) {
          WeightedHost h(n, m);
          for (int p = 0; p < n * m; ++p) h.entries[p] = Rat((mask >> p) & 1);
          ++host_checks;
          if (rep.circuit.evaluate(h) != brute_sub(f, h)) {
            bad = true;
            break;
          }
        }
        if (bad) {
          r.fail("mismatch at " + canonical_key(f) + " n=" + std::to_string(n) +
                 " m=" + std::to_string(m));
          break;
        }
      }
    if (!r.pass) break;
  }

  // 2 sub_P3 = hom_P3 - hom_{K2 doubled} as expanded polynomials
  BipartitePattern p3{1, 2, {{0, 0, 1}, {0, 1, 1}}};
  p3.normalize();
  BipartitePattern k2sq{1, 1, {{0, 0, 2}}};
  k2sq.normalize();
  for (int n = 2; n <= 4; ++n)
    for (int m = 2; m <= 4; ++m) {
      auto sub = expand_circuit(synth_sub_moebius(p3, n, m).circuit);
      sub.scale(Rat(2));
      auto homp =
          expand_circuit(synth_hom(p3, exact_treewidth(p3).witness, n, m).circuit);
      auto homk =
          expand_circuit(synth_hom(k2sq, exact_treewidth(k2sq).witness, n, m).circuit);
      homk.scale(Rat(-1));
      homp += homk;
      if (!(sub == homp))
        r.fail("polynomial identity failed at n=" + std::to_string(n) + " m=" +
               std::to_string(m));
    }
  if (r.pass)
    r.detail = std::to_string(host_checks) +
               " exhaustive 0/1 host comparisons; expanded-polynomial identity "
               "on 9 shapes";
  finish(3, "Moebius subgraph equivalence", r,
         std::chrono::duration<double>(clk::now() - t0).count());
}

// --------------------------------------------------------------------- 4

void criterion_4() {
  auto t0 = clk::now();
  Report r;
  long pairs = 0;
  for (auto& f : simple_classes(5))
    for (int n = 1; n <= 4; ++n)
      for (int m = 1; m <= 4; ++m) {
        if (f.left_size > n || f.right_size > m) continue;
        if (graph_params(f, n, m).cc > 2) continue;
        ++pairs;
        try {
          auto cover = synth_sub_cover(f, n, m, 4);
          auto moeb = synth_sub_moebius(f, n, m);
          auto v =
              circuits_equal(cover.circuit, moeb.circuit, 0, 0, EqMode::Exact);
          if (!v.agree || !v.exact) {
            r.fail("cover/moebius disagree at " + canonical_key(f) + " n=" +
                   std::to_string(n) + " m=" + std::to_string(m) + " (" +
                   v.note + ")");
            goto biclique;
          }
        } catch (const std::exception& ex) {
          r.fail(std::string("cover synthesis threw: ") + ex.what());
          goto biclique;
        }
      }
biclique:
  long biclique_checks = 0;
  for (int k = 1; k <= 2; ++k)
    for (int n = k; n <= 4; ++n) {
      BipartitePattern kkk;
      kkk.left_size = k;
      kkk.right_size = k;
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) kkk.edges.push_back({a, b, 1});
      kkk.normalize();
      auto want = brute_sub_polynomial(kkk, n, n);
      auto direct = expand_circuit(synth_biclique(BicliqueKind::Direct, k, n).circuit);
      if (!(direct == want))
        r.fail("direct biclique k=" + std::to_string(k) + " n=" + std::to_string(n));
      // the complement-kind circuit with parameter n-k also computes
      // sub of K_{k,k} inside (n, n)
      auto comp =
          expand_circuit(synth_biclique(BicliqueKind::Complement, n - k, n).circuit);
      if (!(comp == want))
        r.fail("complement biclique route k=" + std::to_string(k) + " n=" +
               std::to_string(n));
      biclique_checks += 2;
    }
  if (r.pass)
    r.detail = std::to_string(pairs) + " exact expansion comparisons, " +
               std::to_string(biclique_checks) + " biclique expansions";
  finish(4, "cover interpolation equivalence", r,
         std::chrono::duration<double>(clk::now() - t0).count());
}

// --------------------------------------------------------------------- 5

void criterion_5() {
  auto t0 = clk::now();
  Report r;
  std::mt19937_64 rng(77);
  long checks = 0;

  auto rand_expr = [&](int n, int m, int ell, int rr, int nterms) {
    HomPolyExpr e = HomPolyExpr::zero(n, m, ell, rr);
    for (int t = 0; t < nterms; ++t) {
      HomPolyTerm tm;
      tm.coeff = random_rat(rng);
      if (tm.coeff == 0) tm.coeff = Rat(1);
      int L = std::max(1, ell + int(rng() % 2));
      int R = std::max(1, rr + int(rng() % 2));
      tm.pat.base.left_size = L;
      tm.pat.base.right_size = R;
      for (int a = 0; a < L; ++a)
        for (int b = 0; b < R; ++b)
          if (rng() % 2) tm.pat.base.edges.push_back({a, b, 1 + int(rng() % 2)});
      tm.pat.base.normalize();
      for (int s = 0; s < ell; ++s) tm.pat.left_labels.push_back(int(rng() % L));
      for (int s = 0; s < rr; ++s) tm.pat.right_labels.push_back(int(rng() % R));
      TreeDecomposition td;
      std::vector<int> bag(L + R);
      for (int v = 0; v < L + R; ++v) bag[v] = v;
      td.bags.push_back(bag);
      td.root = 0;
      tm.cert = td;
      e.terms.push_back(tm);
    }
    return e;
  };

  auto all_tuples = [](int ell, int rr, int n, int m, auto&& fn) {
    std::vector<int> v(ell, 0), w(rr, 0);
    auto rec = [&](auto&& self, int pos) -> void {
      if (pos == ell + rr) {
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
  };

  auto chk = [&](bool ok, const char* op) {
    ++checks;
    if (ok) return;
    r.fail(std::string("operation ") + op);
  };

  for (int it = 0; it < 200 && r.pass; ++it) {
    int n = 2 + int(rng() % 3), m = 2 + int(rng() % 3);
    auto g = rand_host(rng, n, m);
    WeightedHost gt(m, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) gt.at(j, i) = g.at(i, j);
    int nterms = 1 + int(rng() % 3);

    {  // swap
      int ell = 1 + int(rng() % 2), rr = int(rng() % 2);
      auto e = rand_expr(n, m, ell, rr, nterms);
      auto sw = swap_expr(e);
      all_tuples(ell, rr, n, m, [&](auto& v, auto& w) {
        chk(eval_expr(sw, w, v, gt) == eval_expr(e, v, w, g), "swap");
      });
    }
    {  // unlabel
      int ell = 1 + int(rng() % 2), rr = int(rng() % 2);
      auto e = rand_expr(n, m, ell, rr, nterms);
      auto ul = unlabel(e, 0);
      all_tuples(ell - 1, rr, n, m, [&](auto& v, auto& w) {
        Rat want(0);
        for (int x = 0; x < n; ++x) {
          std::vector<int> vv{x};
          vv.insert(vv.end(), v.begin(), v.end());
          want += eval_expr(e, vv, w, g);
        }
        chk(eval_expr(ul, v, w, g) == want, "unlabel");
      });
    }
    {  // restricted sum
      int ell = 2 + int(rng() % 2);
      auto e = rand_expr(n, m, ell, 1, nterms);
      std::set<int> J{1};
      if (ell == 3 && rng() % 2) J.insert(2);
      auto rs = restricted_sum(e, 0, J);
      all_tuples(ell - 1, 1, n, m, [&](auto& v, auto& w) {
        Rat want(0);
        for (int x = 0; x < n; ++x) {
          bool excl = false;
          for (int j : J) excl |= v[j - 1] == x;
          if (excl) continue;
          std::vector<int> vv{x};
          vv.insert(vv.end(), v.begin(), v.end());
          want += eval_expr(e, vv, w, g);
        }
        chk(eval_expr(rs, v, w, g) == want, "restricted-sum");
      });
    }
    {  // tensor + glue
      int ell = 1, rr = 1;
      auto a = rand_expr(n, m, ell, rr, nterms);
      auto b = rand_expr(n, m, ell, rr, 1 + int(rng() % 2));
      auto gl = glue(a, b);
      all_tuples(ell, rr, n, m, [&](auto& v, auto& w) {
        chk(eval_expr(gl, v, w, g) ==
                eval_expr(a, v, w, g) * eval_expr(b, v, w, g),
            "glue");
      });
      auto tn = tensor(a, b);
      all_tuples(ell, rr, n, m, [&](auto& v, auto& w) {
        all_tuples(ell, rr, n, m, [&](auto& v2, auto& w2) {
          std::vector<int> vv(v);
          vv.insert(vv.end(), v2.begin(), v2.end());
          std::vector<int> ww(w);
          ww.insert(ww.end(), w2.begin(), w2.end());
          chk(eval_expr(tn, vv, ww, g) ==
                  eval_expr(a, v, w, g) * eval_expr(b, v2, w2, g),
              "tensor");
        });
      });
    }
    {  // product: expansion coefficients fixed, verified at every tuple
      int ell = 1 + int(rng() % 2);
      auto e = rand_expr(n, m, ell, 1, 1 + int(rng() % 2));
      auto pr = product(e, 0);
      all_tuples(ell - 1, 1, n, m, [&](auto& v, auto& w) {
        Rat want(1);
        for (int x = 0; x < n; ++x) {
          std::vector<int> vv{x};
          vv.insert(vv.end(), v.begin(), v.end());
          want *= eval_expr(e, vv, w, g);
        }
        chk(eval_expr(pr, v, w, g) == want, "product");
      });
      for (auto& t : pr.terms)
        chk(!term_cert_ok(t, 60).has_value(), "product-cert");
    }
    {  // restricted product
      auto e = rand_expr(n, m, 2, 1, 1);
      auto rp = restricted_product(e, 0, {1}, 5, 4);
      all_tuples(1, 1, n, m, [&](auto& v, auto& w) {
        Rat want(1);
        for (int x = 0; x < n; ++x) {
          if (v[0] == x) continue;
          want *= eval_expr(e, {x, v[0]}, w, g);
        }
        chk(eval_expr(rp, v, w, g) == want, "restricted-product");
      });
    }
  }
  if (r.pass)
    r.detail = "200 randomized instances per operation, " +
               std::to_string(checks) + " pointwise exact checks";
  finish(5, "operation algebra soundness", r,
         std::chrono::duration<double>(clk::now() - t0).count());
}

// --------------------------------------------------------------------- 6

void criterion_6() {
  auto t0 = clk::now();
  Report r;

  // (a) twist parity <=> isomorphism <=> equal hom counts, exhaustively
  long instances = 0;
  for (int nv = 2; nv <= 6; ++nv)
    for (auto& base : enumerate_graphs(nv, true)) {
      auto g0 = cfi(base, std::vector<int>(nv, 0));
      long long h0 = hom_count(base, g0.graph);
      for (unsigned u = 0; u < (1u << nv); ++u) {
        std::vector<int> tw(nv);
        for (int b = 0; b < nv; ++b) tw[b] = u >> b & 1;
        auto iu = cfi(base, tw);
        bool even = std::popcount(u) % 2 == 0;
        bool iso = even_twist_isomorphism(g0, iu).has_value();
        long long hu = hom_count(base, iu.graph);
        ++instances;
        if (iso != even || (h0 == hu) != even) {
          r.fail("parity triple failed, base on " + std::to_string(nv) +
                 " vertices, twist " + std::to_string(u));
          goto part_b;
        }
      }
    }
part_b:
  // (b) pairs from treewidth-3 bases are not separated by 2-WL (level C^3)
  for (const char* name : {"k33", "grid33"}) {
    auto base = named_base(name);
    int nv = base.n;
    auto m0 = cfi(base, std::vector<int>(nv, 0));
    std::vector<int> odd(nv, 0);
    odd[0] = 1;
    auto m1 = cfi(base, odd);
    if (!c_equivalent(m0.graph, m1.graph, 3).equivalent)
      r.fail(std::string("C^3 separated the ") + name + " pair");
    if (hom_count(base, m0.graph) == hom_count(base, m1.graph))
      r.fail(std::string("base hom count failed to separate the ") + name +
             " pair");
  }

  // (c) monotonicity and strictness <=> weak oddomorphism, base C4
  {
    auto c4 = named_base("c4");
    auto g0 = cfi(c4, {0, 0, 0, 0});
    auto g1 = cfi(c4, {1, 0, 0, 0});
    long f_count = 0;
    for (int nv = 1; nv <= 5; ++nv)
      for (auto& f : enumerate_graphs(nv, false)) {
        ++f_count;
        long long h0 = hom_count(f, g0.graph), h1 = hom_count(f, g1.graph);
        if (h0 < h1) {
          r.fail("monotonicity failed for a pattern on " + std::to_string(nv) +
                 " vertices");
          continue;
        }
        if ((h0 > h1) != exists_weak_oddomorphism(f, c4).has_value())
          r.fail("strictness/oddomorphism mismatch on " + std::to_string(nv) +
                 " vertices");
      }
    if (r.pass)
      r.detail = std::to_string(instances) + " twist instances, " +
                 std::to_string(f_count) + " oddomorphism patterns";
  }
  double secs = std::chrono::duration<double>(clk::now() - t0).count();
  if (secs > 900) r.fail("battery exceeded 15 minutes");
  finish(6, "gadget and refinement battery", r, secs);
}

// --------------------------------------------------------------------- 7

void criterion_7() {
  auto t0 = clk::now();
  Report r;
  // circuits of width class k: single hom circuits of treewidth < k plus a
  // subgraph combination
  std::map<int, std::vector<BipartitePattern>> pats;
  {
    BipartitePattern p3{1, 2, {{0, 0, 1}, {0, 1, 1}}};
    p3.normalize();
    BipartitePattern t4{2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 1, 1}}};
    t4.normalize();
    BipartitePattern c4{2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}}};
    c4.normalize();
    BipartitePattern c6{3, 3, {{0, 0, 1}, {0, 1, 1}, {1, 1, 1},
                               {1, 2, 1}, {2, 2, 1}, {2, 0, 1}}};
    c6.normalize();
    pats[2] = {p3, t4};
    pats[3] = {c4, c6};
  }
  long evaluations = 0;
  for (int k : {2, 3}) {
    auto pairs = cfi_host_pairs(k, 50, 1234);
    if (int(pairs.size()) < 50) r.fail("not enough pairs for k=" + std::to_string(k));
    for (auto& f : pats[k]) {
      std::map<std::pair<int, int>, Circuit> hom_cache, sub_cache;
      for (auto& p : pairs) {
        auto key = std::pair{p.g0.n, p.g0.m};
        if (!hom_cache.count(key)) {
          hom_cache.emplace(key, synth_hom(f, exact_treewidth(f).witness,
                                           key.first, key.second)
                                     .circuit);
          sub_cache.emplace(key,
                            synth_sub_moebius(f, key.first, key.second).circuit);
        }
        ++evaluations;
        if (hom_cache.at(key).evaluate(p.g0) != hom_cache.at(key).evaluate(p.g1))
          r.fail("hom circuit separated a C^" + std::to_string(k) + " pair " +
                 p.id);
        if (sub_cache.at(key).evaluate(p.g0) != sub_cache.at(key).evaluate(p.g1))
          r.fail("sub circuit separated a C^" + std::to_string(k) + " pair " +
                 p.id);
      }
    }
  }
  if (r.pass)
    r.detail = std::to_string(evaluations) +
               " circuit/pair evaluations (hom and sub routes), 0 violations";
  finish(7, "counting width upper bound", r,
         std::chrono::duration<double>(clk::now() - t0).count());
}

// --------------------------------------------------------------------- 8

void criterion_8() {
  auto t0 = clk::now();
  Report r;
  std::mt19937_64 rng(11);
  long checks = 0;
  for (int n = 1; n <= 5; ++n)
    for (auto& lam : integer_partitions(n)) {
      auto rep = synth_immanant(lam, 4);
      for (int t = 0; t < 10; ++t) {
        WeightedHost a = rand_host(rng, n, n);
        ++checks;
        if (rep.circuit.evaluate(a) != brute_force_immanant(lam, a)) {
          r.fail("immanant mismatch at n=" + std::to_string(n));
          break;
        }
      }
    }
  // endpoints
  for (int n = 1; n <= 5; ++n) {
    WeightedHost ones(n, n), id(n, n);
    for (auto& e : ones.entries) e = Rat(1);
    for (int i = 0; i < n; ++i) id.at(i, i) = Rat(1);
    if (synth_immanant({{n}}, 4).circuit.evaluate(ones) != factorial(n))
      r.fail("permanent endpoint n=" + std::to_string(n));
    if (synth_immanant({{std::vector<int>(n, 1)}}, 4).circuit.evaluate(id) != 1)
      r.fail("determinant endpoint n=" + std::to_string(n));
  }
  // character orthogonality
  for (int n = 1; n <= 6; ++n) {
    auto parts = integer_partitions(n);
    for (auto& l1 : parts)
      for (auto& l2 : parts) {
        Rat s(0);
        for (auto& cls : parts)
          s += conjugacy_class_size(cls.parts) *
               Rat(long(character_value(l1, cls.parts)) *
                   long(character_value(l2, cls.parts)));
        if (s != (l1 == l2 ? factorial(n) : Rat(0)))
          r.fail("orthogonality failed at n=" + std::to_string(n));
      }
  }
  if (r.pass)
    r.detail = "all partitions of n <= 5, " + std::to_string(checks) +
               " random matrices; endpoints and orthogonality";
  finish(8, "immanant end to end", r,
         std::chrono::duration<double>(clk::now() - t0).count());
}

// --------------------------------------------------------------------- 9

void criterion_9() {
  auto t0 = clk::now();
  Report r;
  long qualifying = 0;
  for (int n = 1; n <= 4; ++n) {
    // complement of the perfect matching on (n, n)
    BipartitePattern f;
    f.left_size = f.right_size = n;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b) f.edges.push_back({a, b, 1});
    f.normalize();
    auto rep = synth_sub_moebius(f, n, n);
    // every simple (n,n) host whose degrees permit a copy: all degrees in
    // {n-1, n}; rows enumerated directly, columns filtered
    std::vector<int> row_masks;
    for (int mask = 0; mask < (1 << n); ++mask) {
      int d = std::popcount(unsigned(mask));
      if (d >= n - 1) row_masks.push_back(mask);
    }
    std::vector<int> rows(n, 0);
    auto rec = [&](auto&& self, int i) -> void {
      if (!r.pass) return;
      if (i == n) {
        int ell = 0;
        for (int a = 0; a < n; ++a)
          if (std::popcount(unsigned(rows[a])) == n) ++ell;
        for (int b = 0; b < n; ++b) {
          int cd = 0;
          for (int a = 0; a < n; ++a) cd += rows[a] >> b & 1;
          if (cd < n - 1) return;
        }
        ++qualifying;
        WeightedHost h(n, n);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) h.at(a, b) = Rat(rows[a] >> b & 1);
        Rat want = factorial(ell);
        if (brute_sub(f, h) != want)
          r.fail("oracle value != l! at n=" + std::to_string(n));
        else if (rep.circuit.evaluate(h) != want)
          r.fail("circuit value != l! at n=" + std::to_string(n));
        return;
      }
      for (int mask : row_masks) {
        rows[i] = mask;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
    // exhaustive sweep over every 0/1 host for n = 3: non-qualifying hosts
    // are only checked against the oracle (the l! formula does not apply)
    if (n == 3 && r.pass) {
      for (int mask = 0; mask < (1 << 9); ++mask) {
        WeightedHost h(3, 3);
        for (int p = 0; p < 9; ++p) h.entries[p] = Rat(mask >> p & 1);
        if (rep.circuit.evaluate(h) != brute_sub(f, h)) {
          r.fail("circuit/oracle mismatch in the exhaustive n=3 sweep");
          break;
        }
      }
    }
  }
  if (r.pass)
    r.detail = std::to_string(qualifying) +
               " qualifying hosts across n <= 4, plus the exhaustive n=3 sweep";
  finish(9, "matching-complement example", r,
         std::chrono::duration<double>(clk::now() - t0).count());
}

}  // namespace

int main() {
  criteria_1_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failed_criteria == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criteria FAILED\n", g_failed_criteria);
  return g_failed_criteria;
}
