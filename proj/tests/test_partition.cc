#include "doctest.h"

#include <random>

#include "homcirc/partition.hh"

using namespace homcirc;

TEST_CASE("partition enumeration sizes") {
  CHECK(enumerate_partitions(0).size() == 1);
  CHECK(enumerate_partitions(1).size() == 1);
  CHECK(enumerate_partitions(2).size() == 2);
  CHECK(enumerate_partitions(3).size() == 5);
  CHECK(enumerate_partitions(4).size() == 15);
  CHECK(enumerate_partitions(6).size() == 203);
  for (auto& pi : enumerate_partitions(4)) CHECK(pi.valid());
}

TEST_CASE("moebius closed form") {
  CHECK(moebius(discrete_partition(4)) == 1);
  SetPartition top2{2, {{0, 1}}};
  CHECK(moebius(top2) == -1);
  SetPartition top3{3, {{0, 1, 2}}};
  CHECK(moebius(top3) == 2);
}

TEST_CASE("moebius agrees with lattice recursion") {
  for (int n = 1; n <= 6; ++n)
    for (auto& pi : enumerate_partitions(n))
      CHECK(moebius(pi) == moebius_recursive(pi));
}

TEST_CASE("inversion identities") {
  CHECK(check_moebius_inversion(2, 3, [](const std::vector<int>&) {
    return Rat(1);
  }));
  CHECK(check_moebius_inversion(1, 4, [](const std::vector<int>& h) {
    return Rat(h[0] + 1);
  }));
  std::mt19937_64 rng(99);
  std::vector<Rat> table(27);
  for (auto& v : table) v = random_rat(rng);
  CHECK(check_moebius_inversion(3, 3, [&](const std::vector<int>& h) {
    return table[h[0] * 9 + h[1] * 3 + h[2]];
  }));
}

TEST_CASE("refinement order") {
  SetPartition top{3, {{0, 1, 2}}};
  SetPartition mid{3, {{0, 1}, {2}}};
  CHECK(refines(discrete_partition(3), mid));
  CHECK(refines(mid, top));
  CHECK(!refines(top, mid));
}
