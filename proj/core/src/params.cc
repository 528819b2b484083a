#include <algorithm>
#include <stdexcept>
#include <vector>

#include "homcirc/decomposition.hh"

namespace homcirc {

auto vertex_cover_number(const BipartitePattern& f) -> int {
  const int n = f.num_vertices();
  if (n > 24)
    throw std::invalid_argument("vertex_cover_number: pattern too large");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : f.edges) edges.push_back({e[0], f.left_size + e[1]});
  int best = n;
  for (uint32_t s = 0; s < (1u << n); ++s) {
    int sz = __builtin_popcount(s);
    if (sz >= best) continue;
    bool ok = true;
    for (auto [u, v] : edges)
      if (!(s >> u & 1) && !(s >> v & 1)) {
        ok = false;
        break;
      }
    if (ok) best = sz;
  }
  return best;
}

auto matching_number(const BipartitePattern& f) -> int {
  std::vector<std::vector<int>> adj(f.left_size);
  for (const auto& e : f.edges) adj[e[0]].push_back(e[1]);
  std::vector<int> match_right(f.right_size, -1);
  int matched = 0;
  for (int a = 0; a < f.left_size; ++a) {
    std::vector<char> seen(f.right_size, 0);
    auto augment = [&](auto&& self, int u) -> bool {
      for (int b : adj[u]) {
        if (seen[b]) continue;
        seen[b] = 1;
        if (match_right[b] == -1 || self(self, match_right[b])) {
          match_right[b] = u;
          return true;
        }
      }
      return false;
    };
    if (augment(augment, a)) ++matched;
  }
  return matched;
}

auto graph_params(const BipartitePattern& f, int n, int m) -> GraphParams {
  GraphParams p;
  p.vc = vertex_cover_number(f);
  p.mn = matching_number(f);

  int hdtw = 0;
  auto left_parts = enumerate_partitions(f.left_size);
  auto right_parts = enumerate_partitions(f.right_size);
  for (const auto& pi : left_parts)
    for (const auto& sigma : right_parts) {
      auto q = quotient(f, pi, sigma);
      hdtw = std::max(hdtw, exact_treewidth(q).width);
    }
  p.hdtw = hdtw;

  if (!f.is_simple())
    throw std::invalid_argument("graph_params: cc requires a simple pattern");
  BipartitePattern padded = f;
  padded.left_size = n;
  padded.right_size = m;
  if (f.left_size > n || f.right_size > m)
    throw std::invalid_argument("graph_params: pattern exceeds (n,m)");
  p.cc = std::min(vertex_cover_number(padded),
                  vertex_cover_number(bipartite_complement(f, n, m)));
  return p;
}

}  // namespace homcirc
