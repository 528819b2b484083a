#include "doctest.h"

#include <bit>
#include <random>

#include "homcirc/cfi.hh"
#include "homcirc/oracle.hh"
#include "homcirc/simplegraph.hh"
#include "homcirc/wl.hh"

using namespace homcirc;

TEST_CASE("gadget construction basics") {
  auto k2 = named_base("k2");
  auto i0 = cfi(k2, {0, 0});
  CHECK(i0.graph.n == 2);
  CHECK(i0.graph.num_edges() == 1);
  auto c4 = named_base("c4");
  CHECK(cfi(c4, {0, 0, 0, 0}).graph.n == 8);
  CHECK(cfi_gamma(c4) == 8);
  auto k33 = named_base("k33");
  CHECK(cfi(k33, std::vector<int>(6, 0)).graph.n == 24);
}

TEST_CASE("twist parity decides isomorphism") {
  auto c4 = named_base("c4");
  auto g0 = cfi(c4, {0, 0, 0, 0});
  for (unsigned u = 0; u < 16; ++u) {
    std::vector<int> tw(4);
    for (int b = 0; b < 4; ++b) tw[b] = u >> b & 1;
    auto iu = cfi(c4, tw);
    bool even = std::popcount(u) % 2 == 0;
    auto iso = even_twist_isomorphism(g0, iu);
    CHECK(iso.has_value() == even);
    CHECK(graphs_isomorphic(g0.graph, iu.graph).has_value() == even);
    CHECK((hom_count(c4, g0.graph) == hom_count(c4, iu.graph)) == even);
  }
}

TEST_CASE("hom counting fixed values") {
  auto k2 = named_base("k2");
  auto k33 = named_base("k33");
  CHECK(hom_count(k2, k33) == 18);  // 2|E|
  SimpleGraph k1;
  k1.n = 1;
  CHECK(hom_count(k1, k33) == 6);  // |V|
}

TEST_CASE("dp hom counting agrees with backtracking") {
  auto c4 = named_base("c4");
  std::vector<SimpleGraph> hosts{named_base("k33"), c4, named_base("q3"),
                                 cfi(c4, {0, 0, 0, 1}).graph};
  for (auto& f : enumerate_graphs(4, false)) {
    auto tw = simple_treewidth(f);
    for (auto& g : hosts) CHECK(hom_count(f, g) == hom_count_dp(f, tw.td, g));
  }
}

TEST_CASE("weighted hom counting agrees with the bipartite oracle") {
  std::mt19937_64 rng(5);
  for (auto& f0 : enumerate_graphs(4, true)) {
    auto col = two_coloring(f0);
    if (!col || f0.num_edges() == 0) continue;
    auto f = f0;
    f.side = *col;
    auto pat = simple_to_pattern(f);
    WeightedHost h(3, 3), ht(3, 3);
    for (auto& e : h.entries) e = random_rat(rng);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) ht.at(j, i) = h.at(i, j);
    SimpleGraph host;
    host.n = 6;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (h.at(i, j) != 0) {
          host.edges.push_back({i, 3 + j});
          host.weights[{i, 3 + j}] = h.at(i, j);
        }
    host.normalize();
    // both ways of assigning pattern sides to host sides
    CHECK(hom_count_weighted(f, host) == brute_hom(pat, h) + brute_hom(pat, ht));
  }
}

TEST_CASE("bipartite double cover") {
  SimpleGraph tri;
  tri.n = 3;
  tri.edges = {{0, 1}, {0, 2}, {1, 2}};
  auto cov = bipartite_double_cover(tri);
  SimpleGraph c6;
  c6.n = 6;
  for (int v = 0; v < 6; ++v)
    c6.edges.push_back({std::min(v, (v + 1) % 6), std::max(v, (v + 1) % 6)});
  c6.normalize();
  CHECK(graphs_isomorphic(cov, c6).has_value());
  auto cov2 = bipartite_double_cover(named_base("k2"));
  CHECK(cov2.n == 4);
  CHECK(cov2.num_edges() == 2);
}

TEST_CASE("matching counts") {
  auto k33 = named_base("k33");
  CHECK(matching_counts(k33, 3) == 6);
  CHECK(matching_counts(k33, 1) == 9);
  CHECK(matching_counts(k33, 2) == 18);
}

TEST_CASE("weak oddomorphisms characterize strict hom gaps") {
  auto c4 = named_base("c4");
  CHECK(exists_weak_oddomorphism(c4, c4).has_value());
  SimpleGraph k1;
  k1.n = 1;
  CHECK(!exists_weak_oddomorphism(k1, named_base("k2")).has_value());
  auto g0 = cfi(c4, {0, 0, 0, 0});
  auto g1 = cfi(c4, {1, 0, 0, 0});
  for (auto& f : enumerate_graphs(4, false)) {
    long long h0 = hom_count(f, g0.graph), h1 = hom_count(f, g1.graph);
    CHECK(h0 >= h1);
    CHECK((h0 > h1) == exists_weak_oddomorphism(f, c4).has_value());
  }
}

TEST_CASE("treewidth of simple graphs") {
  SimpleGraph path;
  path.n = 4;
  path.edges = {{0, 1}, {1, 2}, {2, 3}};
  CHECK(simple_treewidth(path).width == 1);
  CHECK(simple_treewidth(named_base("c4")).width == 2);
  CHECK(simple_treewidth(named_base("k33")).width == 3);
  CHECK(simple_treewidth(named_base("grid33")).width == 3);
}
