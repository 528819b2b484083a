#include "homcirc/pattern.hh"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace homcirc {

void BipartitePattern::normalize() {
  std::map<std::pair<int, int>, int> acc;
  for (const auto& e : edges) acc[{e[0], e[1]}] += e[2];
  edges.clear();
  for (const auto& [ab, mult] : acc) {
    if (mult != 0) edges.push_back({ab.first, ab.second, mult});
  }
}

auto BipartitePattern::valid() const -> bool {
  if (left_size < 0 || right_size < 0) return false;
  std::pair<int, int> prev{-1, -1};
  for (const auto& e : edges) {
    if (e[0] < 0 || e[0] >= left_size || e[1] < 0 || e[1] >= right_size)
      return false;
    if (e[2] < 1) return false;
    if (std::pair{e[0], e[1]} <= prev) return false;
    prev = {e[0], e[1]};
  }
  return true;
}

auto BipartitePattern::num_edges() const -> long {
  long s = 0;
  for (const auto& e : edges) s += e[2];
  return s;
}

auto BipartitePattern::is_simple() const -> bool {
  for (const auto& e : edges)
    if (e[2] != 1) return false;
  return true;
}

auto BipartitePattern::multiplicity(int a, int b) const -> int {
  for (const auto& e : edges)
    if (e[0] == a && e[1] == b) return e[2];
  return 0;
}

auto BipartitePattern::multiplicity_matrix() const
    -> std::vector<std::vector<int>> {
  std::vector<std::vector<int>> m(left_size, std::vector<int>(right_size, 0));
  for (const auto& e : edges) m[e[0]][e[1]] = e[2];
  return m;
}

auto BipartitePattern::degree_left(int a) const -> int {
  int d = 0;
  for (const auto& e : edges)
    if (e[0] == a) d += e[2];
  return d;
}

auto BipartitePattern::degree_right(int b) const -> int {
  int d = 0;
  for (const auto& e : edges)
    if (e[1] == b) d += e[2];
  return d;
}

auto LabelledPattern::valid() const -> bool {
  if (!base.valid()) return false;
  auto in_range = [](const std::vector<int>& v, int bound) {
    for (int x : v)
      if (x < 0 || x >= bound) return false;
    return true;
  };
  return in_range(left_labels, base.left_size) &&
         in_range(right_labels, base.right_size);
}

auto quotient(const BipartitePattern& f, const SetPartition& pi,
              const SetPartition& sigma) -> BipartitePattern {
  if (pi.ground_size != f.left_size || sigma.ground_size != f.right_size)
    throw std::invalid_argument("quotient: partition ground sets do not match");
  BipartitePattern q;
  q.left_size = pi.num_blocks();
  q.right_size = sigma.num_blocks();
  auto bl = pi.block_of();
  auto br = sigma.block_of();
  for (const auto& e : f.edges)
    q.edges.push_back({bl[e[0]], br[e[1]], e[2]});
  q.normalize();
  return q;
}

auto bipartite_complement(const BipartitePattern& f, int n, int m)
    -> BipartitePattern {
  if (!f.is_simple())
    throw std::invalid_argument("bipartite_complement: pattern not simple");
  if (f.left_size > n || f.right_size > m)
    throw std::invalid_argument("bipartite_complement: pattern exceeds (n,m)");
  BipartitePattern c;
  c.left_size = n;
  c.right_size = m;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < m; ++b)
      if (f.multiplicity(a, b) == 0) c.edges.push_back({a, b, 1});
  return c;
}

namespace {

template <typename Fn>
void for_each_permutation(int n, Fn&& fn) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    fn(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace

auto automorphism_count(const BipartitePattern& f) -> long {
  auto mat = f.multiplicity_matrix();
  long count = 0;
  for_each_permutation(f.left_size, [&](const std::vector<int>& pl) {
    for_each_permutation(f.right_size, [&](const std::vector<int>& pr) {
      for (int a = 0; a < f.left_size; ++a)
        for (int b = 0; b < f.right_size; ++b)
          if (mat[a][b] != mat[pl[a]][pr[b]]) return;
      ++count;
    });
  });
  return count;
}

auto patterns_isomorphic(const BipartitePattern& f, const BipartitePattern& g)
    -> bool {
  if (f.left_size != g.left_size || f.right_size != g.right_size) return false;
  if (f.num_edges() != g.num_edges()) return false;
  auto fm = f.multiplicity_matrix();
  auto gm = g.multiplicity_matrix();
  bool found = false;
  for_each_permutation(f.left_size, [&](const std::vector<int>& pl) {
    if (found) return;
    for_each_permutation(f.right_size, [&](const std::vector<int>& pr) {
      if (found) return;
      for (int a = 0; a < f.left_size; ++a)
        for (int b = 0; b < f.right_size; ++b)
          if (fm[a][b] != gm[pl[a]][pr[b]]) return;
      found = true;
    });
  });
  return found;
}

auto labelled_isomorphic(const LabelledPattern& f, const LabelledPattern& g)
    -> bool {
  if (f.base.left_size != g.base.left_size ||
      f.base.right_size != g.base.right_size)
    return false;
  if (f.left_labels.size() != g.left_labels.size() ||
      f.right_labels.size() != g.right_labels.size())
    return false;
  if (f.base.num_edges() != g.base.num_edges()) return false;
  auto fm = f.base.multiplicity_matrix();
  auto gm = g.base.multiplicity_matrix();
  bool found = false;
  for_each_permutation(f.base.left_size, [&](const std::vector<int>& pl) {
    if (found) return;
    for (size_t i = 0; i < f.left_labels.size(); ++i)
      if (pl[f.left_labels[i]] != g.left_labels[i]) return;
    for_each_permutation(f.base.right_size, [&](const std::vector<int>& pr) {
      if (found) return;
      for (size_t i = 0; i < f.right_labels.size(); ++i)
        if (pr[f.right_labels[i]] != g.right_labels[i]) return;
      for (int a = 0; a < f.base.left_size; ++a)
        for (int b = 0; b < f.base.right_size; ++b)
          if (fm[a][b] != gm[pl[a]][pr[b]]) return;
      found = true;
    });
  });
  return found;
}

auto canonical_key(const BipartitePattern& f) -> std::string {
  auto mat = f.multiplicity_matrix();
  std::string best;
  bool have = false;
  for_each_permutation(f.left_size, [&](const std::vector<int>& pl) {
    for_each_permutation(f.right_size, [&](const std::vector<int>& pr) {
      std::string cur;
      cur.reserve(size_t(f.left_size) * f.right_size * 2 + 8);
      cur += std::to_string(f.left_size) + "x" + std::to_string(f.right_size) + ":";
      for (int a = 0; a < f.left_size; ++a)
        for (int b = 0; b < f.right_size; ++b) {
          cur += std::to_string(mat[pl[a]][pr[b]]);
          cur += ',';
        }
      if (!have || cur < best) {
        best = std::move(cur);
        have = true;
      }
    });
  });
  if (!have)
    best = std::to_string(f.left_size) + "x" + std::to_string(f.right_size) + ":";
  return best;
}

auto enumerate_simple_patterns(int left, int right)
    -> std::vector<BipartitePattern> {
  std::vector<BipartitePattern> out;
  std::set<std::string> seen;
  const int pairs = left * right;
  for (uint32_t mask = 0; mask < (1u << pairs); ++mask) {
    BipartitePattern f;
    f.left_size = left;
    f.right_size = right;
    for (int a = 0; a < left; ++a)
      for (int b = 0; b < right; ++b)
        if (mask >> (a * right + b) & 1) f.edges.push_back({a, b, 1});
    if (seen.insert(canonical_key(f)).second) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace homcirc
