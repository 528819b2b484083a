#include "doctest.h"

#include <random>

#include "homcirc/decomposition.hh"
#include "homcirc/oracle.hh"
#include "homcirc/synth.hh"

using namespace homcirc;

namespace {

std::mt19937_64 rng(7);

auto rand_host(int n, int m) -> WeightedHost {
  WeightedHost h(n, m);
  for (auto& e : h.entries) e = random_rat(rng);
  return h;
}

auto ones(int n, int m) -> WeightedHost {
  WeightedHost h(n, m);
  for (auto& e : h.entries) e = Rat(1);
  return h;
}

}  // namespace

TEST_CASE("synth_hom matches brute force on small patterns") {
  for (int ls = 1; ls <= 3; ++ls)
    for (int rs = 1; rs <= 3; ++rs)
      for (auto& f : enumerate_simple_patterns(ls, rs))
        for (int n = 2; n <= 3; ++n)
          for (int m = 2; m <= 3; ++m) {
            auto tw = exact_treewidth(f);
            auto rep = synth_hom(f, tw.witness, n, m);
            REQUIRE(rep.circuit.verify_symmetry().ok);
            for (int t = 0; t < 3; ++t) {
              auto h = rand_host(n, m);
              CHECK(rep.circuit.evaluate(h) == brute_hom(f, h));
            }
            if (rep.shape_conformant)
              CHECK(Rat(rep.measured_size) <= rep.size_bound);
          }
}

TEST_CASE("synth_hom fixed values") {
  BipartitePattern p3{1, 2, {{0, 0, 1}, {0, 1, 1}}};
  p3.normalize();
  auto rep = synth_hom(p3, exact_treewidth(p3).witness, 3, 3);
  CHECK(rep.circuit.evaluate(ones(3, 3)) == 27);
  WeightedHost id2(2, 2);
  id2.at(0, 0) = id2.at(1, 1) = Rat(1);
  auto rep2 = synth_hom(p3, exact_treewidth(p3).witness, 2, 2);
  CHECK(rep2.circuit.evaluate(id2) == 2);
}

TEST_CASE("synth_sub_moebius exact on exhaustive 0/1 hosts") {
  for (int ls = 1; ls <= 2; ++ls)
    for (int rs = 1; rs <= 2; ++rs)
      for (auto& f : enumerate_simple_patterns(ls, rs)) {
        int n = 3, m = 2;
        auto rep = synth_sub_moebius(f, n, m);
        REQUIRE(rep.circuit.verify_symmetry().ok);
        for (int mask = 0; mask < (1 << (n * m)); ++mask) {
          WeightedHost h(n, m);
          for (int p = 0; p < n * m; ++p) h.entries[p] = Rat((mask >> p) & 1);
          if (rep.circuit.evaluate(h) != brute_sub(f, h)) {
            FAIL_CHECK("sub mismatch ls=" << ls << " rs=" << rs
                                          << " mask=" << mask);
            break;
          }
        }
      }
}

TEST_CASE("synth_sub_cover agrees with brute force") {
  for (int ls = 1; ls <= 2; ++ls)
    for (int rs = 1; rs <= 2; ++rs)
      for (auto& f : enumerate_simple_patterns(ls, rs)) {
        int n = 3, m = 3;
        auto rep = synth_sub_cover(f, n, m, 4);
        REQUIRE(rep.circuit.verify_symmetry().ok);
        for (int t = 0; t < 20; ++t) {
          WeightedHost h(n, m);
          for (auto& e : h.entries) e = Rat(int(rng() % 2));
          CHECK(rep.circuit.evaluate(h) == brute_sub(f, h));
        }
      }
}

TEST_CASE("biclique circuits") {
  auto r1 = synth_biclique(BicliqueKind::Direct, 1, 2);
  CHECK(r1.circuit.evaluate(ones(2, 2)) == 4);
  // k = 0 complement kind: product of all entries
  auto r2 = synth_biclique(BicliqueKind::Complement, 0, 2);
  WeightedHost h(2, 2);
  h.at(0, 0) = Rat(2);
  h.at(0, 1) = Rat(3);
  h.at(1, 0) = Rat(5);
  h.at(1, 1) = Rat(7);
  CHECK(r2.circuit.evaluate(h) == 210);
  // direct k=2 vs brute force on K_{2,2}
  BipartitePattern k22{2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}}};
  k22.normalize();
  auto r3 = synth_biclique(BicliqueKind::Direct, 2, 3);
  for (int t = 0; t < 10; ++t) {
    auto g = rand_host(3, 3);
    CHECK(r3.circuit.evaluate(g) == brute_sub(k22, g));
  }
}

TEST_CASE("vandermonde inverse rows") {
  std::vector<Rat> pts{Rat(0), Rat(1), Rat(2)};
  // row extracting the constant coefficient: evaluates correctly on 2+3x+x^2
  auto row = vandermonde_inverse_row(pts, 0);
  auto poly = [](const Rat& x) -> Rat { return Rat(2) + Rat(3) * x + x * x; };
  Rat acc(0);
  for (size_t i = 0; i < pts.size(); ++i) acc += row[i] * poly(pts[i]);
  CHECK(acc == 2);
  auto row2 = vandermonde_inverse_row(pts, 2);
  Rat acc2(0);
  for (size_t i = 0; i < pts.size(); ++i) acc2 += row2[i] * poly(pts[i]);
  CHECK(acc2 == 1);
}

TEST_CASE("extract_coefficient recovers slot coefficients") {
  // circuit (s*x00 + x01) with slot s; coefficient of s^1 should be x00
  CircuitBuilder b(1, 2, Circuit::Group::SymNM);
  auto x0 = b.input(0, 0, 1, {0, 1});
  auto x1 = b.input(0, 1, 1, {0, 2});
  auto s = b.constant(Rat(0), 2, {});
  auto m = b.mul({{s, 1}, {x0, 1}}, 3, {0, 1});
  auto sum = b.add({{m, 1}, {x1, 1}}, 4, {0, 1, 2});
  b.set_output(sum);
  auto c = b.take();
  auto coeff1 = extract_coefficient(c, {s}, {1}, {1});
  auto coeff0 = extract_coefficient(c, {s}, {0}, {1});
  WeightedHost h(1, 2);
  h.at(0, 0) = Rat(5);
  h.at(0, 1) = Rat(11);
  CHECK(coeff1.evaluate(h) == 5);
  CHECK(coeff0.evaluate(h) == 11);
}
