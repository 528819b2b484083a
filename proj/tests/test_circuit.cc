#include "doctest.h"

#include <random>

#include "homcirc/circuit.hh"
#include "homcirc/oracle.hh"

using namespace homcirc;

namespace {

// x00*x01 + x10*x11: the row-product sum, keyed by the owning left vertex.
auto row_product_circuit() -> Circuit {
  CircuitBuilder b(2, 2, Circuit::Group::SymNM);
  std::vector<std::pair<int, int>> rows;
  for (int i = 0; i < 2; ++i) {
    auto x0 = b.input(i, 0, 1, {i, 2});
    auto x1 = b.input(i, 1, 1, {i, 3});
    auto p = b.mul({{x0, 1}, {x1, 1}}, 2, {i});
    rows.push_back({p, 1});
  }
  auto s = b.add(rows, 3, {});
  b.set_output(s);
  return b.take();
}

}  // namespace

TEST_CASE("evaluate basic gates") {
  CircuitBuilder b(2, 2, Circuit::Group::SymNM);
  auto x = b.input(0, 1, 1, {0, 3});
  auto k = b.constant(Rat("3/2"), 2, {});
  auto m = b.mul({{x, 1}, {k, 1}}, 3, {0, 3});
  auto s = b.add({{m, 2}, {k, 1}}, 4, {0, 3});
  b.set_output(s);
  auto c = b.take();
  WeightedHost h(2, 2);
  h.at(0, 1) = Rat(4);
  CHECK(c.evaluate(h) == Rat("27/2"));
  CHECK(!c.validate().has_value());
}

TEST_CASE("builder key lookup and uniqueness") {
  CircuitBuilder b(2, 2, Circuit::Group::SymNM);
  auto a = b.input(0, 0, 1, {0, 2});
  CHECK(b.find(1, {0, 2}) == a);
  CHECK(b.find(1, {1, 2}) == -1);
  CHECK_THROWS(b.input(0, 0, 1, {0, 2}));
}

TEST_CASE("symmetry verification accepts symmetric circuit") {
  auto c = row_product_circuit();
  CHECK(c.verify_symmetry().ok);
  std::mt19937_64 rng(3);
  WeightedHost h(2, 2);
  for (auto& e : h.entries) e = random_rat(rng);
  CHECK(c.evaluate(h) ==
        h.at(0, 0) * h.at(0, 1) + h.at(1, 0) * h.at(1, 1));
}

TEST_CASE("symmetry verification rejects missing orbit mate") {
  CircuitBuilder b(2, 2, Circuit::Group::SymNM);
  auto x0 = b.input(0, 0, 1, {0, 2});
  auto x1 = b.input(0, 1, 1, {0, 3});
  auto p = b.mul({{x0, 1}, {x1, 1}}, 2, {0});
  b.set_output(p);  // no row-1 mate
  CHECK(!b.take().verify_symmetry().ok);
}

TEST_CASE("permutation bijection maps gates") {
  auto c = row_product_circuit();
  auto pc = c.apply_permutation({1, 0}, {0, 1});
  REQUIRE(pc.ok);
  CHECK(pc.mapping.size() == c.num_gates());
}

TEST_CASE("orbit stats exact mode") {
  auto c = row_product_circuit();
  auto os = c.orbit_stats();
  CHECK(os.exact);
  CHECK(os.max_sup == 2);
  CHECK(os.max_orb <= 4);
  for (long s : os.orbit_sizes) CHECK(s >= 1);
}

TEST_CASE("serialize round trip") {
  auto c = row_product_circuit();
  auto text = c.serialize();
  auto back = Circuit::deserialize(text);
  std::mt19937_64 rng(5);
  WeightedHost h(2, 2);
  for (auto& e : h.entries) e = random_rat(rng);
  CHECK(back.evaluate(h) == c.evaluate(h));
  CHECK(back.verify_symmetry().ok);
  CHECK(back.serialize() == text);
}

TEST_CASE("size measure counts wires with multiplicity") {
  CircuitBuilder b(1, 1, Circuit::Group::SymNM);
  auto x = b.input(0, 0, 1, {0, 1});
  auto sq = b.mul({{x, 2}}, 2, {0, 1});
  b.set_output(sq);
  auto c = b.take();
  CHECK(c.size_measure() == 4);  // 2 gates + one wire of multiplicity 2
}

TEST_CASE("expand and multilinearize") {
  CircuitBuilder b(1, 1, Circuit::Group::SymNM);
  auto x = b.input(0, 0, 1, {0, 1});
  auto sq = b.mul({{x, 2}}, 2, {0, 1});
  auto s = b.add({{sq, 1}, {x, 1}}, 3, {0, 1});
  b.set_output(s);
  auto poly = expand_circuit(b.take());
  CHECK(poly.terms.size() == 2);  // x^2 + x
  auto ml = multilinearize(poly);
  REQUIRE(ml.terms.size() == 1);  // 2x
  CHECK(ml.terms.begin()->second == Rat(2));
}

TEST_CASE("circuits_equal exact and randomized") {
  auto a = row_product_circuit();
  auto b2 = row_product_circuit();
  auto v = circuits_equal(a, b2, 8, 77, EqMode::Exact);
  CHECK(v.agree);
  CHECK(v.exact);
  auto vr = circuits_equal(a, b2, 8, 77, EqMode::Randomized);
  CHECK(vr.agree);
  CHECK(!vr.exact);

  // different polynomial: sum of all entries
  CircuitBuilder b3(2, 2, Circuit::Group::SymNM);
  std::vector<std::pair<int, int>> kids;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      kids.push_back({b3.input(i, j, 1, {i, 2 + j}), 1});
  b3.set_output(b3.add(kids, 2, {}));
  CHECK(!circuits_equal(a, b3.take(), 8, 77).agree);
}
