#include "homcirc/simplegraph.hh"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace homcirc {

void SimpleGraph::normalize() {
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

auto SimpleGraph::valid() const -> bool {
  for (size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u < 0 || v >= n || u >= v) return false;
    if (i > 0 && edges[i] <= edges[i - 1]) return false;
    if (side && (*side)[u] == (*side)[v]) return false;
  }
  if (side && int(side->size()) != n) return false;
  if (!colors.empty() && int(colors.size()) != n) return false;
  if (!edge_dir.empty() && edge_dir.size() != edges.size()) return false;
  for (auto& [e, w] : weights) {
    (void)w;
    if (!std::binary_search(edges.begin(), edges.end(), e)) return false;
  }
  return true;
}

auto SimpleGraph::has_edge(int u, int v) const -> bool {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::pair{u, v});
}

auto SimpleGraph::degree(int v) const -> int {
  int d = 0;
  for (auto& [a, b] : edges) d += (a == v) + (b == v);
  return d;
}

auto SimpleGraph::adjacency() const -> std::vector<std::vector<int>> {
  std::vector<std::vector<int>> adj(n);
  for (auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

auto SimpleGraph::weight(int u, int v) const -> Rat {
  if (u > v) std::swap(u, v);
  auto it = weights.find({u, v});
  return it == weights.end() ? Rat(1) : it->second;
}

auto is_connected(const SimpleGraph& g) -> bool {
  if (g.n == 0) return true;
  auto adj = g.adjacency();
  std::vector<char> seen(g.n, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int cnt = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++cnt;
        q.push_back(w);
      }
  }
  return cnt == g.n;
}

auto two_coloring(const SimpleGraph& g) -> std::optional<std::vector<int>> {
  if (g.side) return *g.side;
  auto adj = g.adjacency();
  std::vector<int> col(g.n, -1);
  for (int s = 0; s < g.n; ++s) {
    if (col[s] >= 0) continue;
    col[s] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w : adj[v]) {
        if (col[w] < 0) {
          col[w] = 1 - col[v];
          q.push_back(w);
        } else if (col[w] == col[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return col;
}

namespace {

auto degree_vector(const SimpleGraph& g) -> std::vector<int> {
  std::vector<int> d(g.n, 0);
  for (auto& [u, v] : g.edges) ++d[u], ++d[v];
  return d;
}

auto iso_rec(const SimpleGraph& g, const SimpleGraph& h,
             const std::vector<int>& dg, const std::vector<int>& dh,
             std::vector<int>& map, std::vector<char>& used, int v) -> bool {
  if (v == g.n) return true;
  for (int w = 0; w < h.n; ++w) {
    if (used[w] || dg[v] != dh[w]) continue;
    bool ok = true;
    for (int u = 0; u < v && ok; ++u)
      if (g.has_edge(u, v) != h.has_edge(map[u], w)) ok = false;
    if (!ok) continue;
    map[v] = w;
    used[w] = 1;
    if (iso_rec(g, h, dg, dh, map, used, v + 1)) return true;
    used[w] = 0;
  }
  return false;
}

}  // namespace

auto graphs_isomorphic(const SimpleGraph& g, const SimpleGraph& h)
    -> std::optional<std::vector<int>> {
  if (g.n != h.n || g.edges.size() != h.edges.size()) return std::nullopt;
  if (g.n > 10) throw std::domain_error("graphs_isomorphic: cap exceeded");
  auto dg = degree_vector(g), dh = degree_vector(h);
  auto sg = dg, sh = dh;
  std::sort(sg.begin(), sg.end());
  std::sort(sh.begin(), sh.end());
  if (sg != sh) return std::nullopt;
  std::vector<int> map(g.n, -1);
  std::vector<char> used(g.n, 0);
  if (iso_rec(g, h, dg, dh, map, used, 0)) return map;
  return std::nullopt;
}

auto pattern_to_simple(const BipartitePattern& f) -> SimpleGraph {
  if (!f.is_simple())
    throw std::domain_error("pattern_to_simple: pattern has multiplicities");
  SimpleGraph g;
  g.n = f.num_vertices();
  for (auto& e : f.edges) g.edges.push_back({e[0], f.left_size + e[1]});
  g.normalize();
  std::vector<int> s(g.n, 1);
  for (int a = 0; a < f.left_size; ++a) s[a] = 0;
  g.side = s;
  return g;
}

auto simple_to_pattern(const SimpleGraph& g) -> BipartitePattern {
  if (!g.side) throw std::domain_error("simple_to_pattern: no bipartition");
  std::vector<int> idx(g.n, -1);
  int nl = 0, nr = 0;
  for (int v = 0; v < g.n; ++v) idx[v] = (*g.side)[v] == 0 ? nl++ : nr++;
  BipartitePattern f;
  f.left_size = nl;
  f.right_size = nr;
  for (auto& [u, v] : g.edges) {
    int a = (*g.side)[u] == 0 ? u : v;
    int b = a == u ? v : u;
    f.edges.push_back({idx[a], idx[b], 1});
  }
  f.normalize();
  return f;
}

auto host_matrix(const SimpleGraph& g) -> WeightedHost {
  if (!g.side) throw std::domain_error("host_matrix: no bipartition");
  std::vector<int> idx(g.n, -1);
  int nl = 0, nr = 0;
  for (int v = 0; v < g.n; ++v) idx[v] = (*g.side)[v] == 0 ? nl++ : nr++;
  WeightedHost h(nl, nr);
  for (auto& [u, v] : g.edges) {
    int a = (*g.side)[u] == 0 ? u : v;
    int b = a == u ? v : u;
    h.at(idx[a], idx[b]) = g.weight(u, v);
  }
  return h;
}

namespace {

// Edge bitmask canonicalization: position of pair (i<j) in the fixed
// row-major pair order.
auto pair_index(int i, int j, int nv) -> int {
  int idx = 0;
  for (int a = 0; a < i; ++a) idx += nv - a - 1;
  return idx + (j - i - 1);
}

auto mask_connected(uint32_t mask, int nv) -> bool {
  std::vector<uint32_t> adj(nv, 0);
  int p = 0;
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j, ++p)
      if (mask >> p & 1) {
        adj[i] |= 1u << j;
        adj[j] |= 1u << i;
      }
  uint32_t seen = 1, frontier = 1;
  while (frontier) {
    uint32_t next = 0;
    for (int v = 0; v < nv; ++v)
      if (frontier >> v & 1) next |= adj[v];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1u << nv) - 1;
}

}  // namespace

auto enumerate_graphs(int nv, bool connected_only) -> std::vector<SimpleGraph> {
  if (nv < 1 || nv > 7) throw std::domain_error("enumerate_graphs: nv cap");
  int pairs = nv * (nv - 1) / 2;
  std::vector<int> perm(nv);
  std::iota(perm.begin(), perm.end(), 0);
  // Precompute, for each permutation, where each pair bit moves.
  std::vector<std::vector<int>> moves;
  do {
    std::vector<int> mv(pairs);
    int p = 0;
    for (int i = 0; i < nv; ++i)
      for (int j = i + 1; j < nv; ++j, ++p) {
        int a = perm[i], b = perm[j];
        if (a > b) std::swap(a, b);
        mv[p] = pair_index(a, b, nv);
      }
    moves.push_back(std::move(mv));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<SimpleGraph> out;
  for (uint32_t mask = 0; mask < (1u << pairs); ++mask) {
    bool canonical = true;
    for (auto& mv : moves) {
      uint32_t img = 0;
      for (int p = 0; p < pairs; ++p)
        if (mask >> p & 1) img |= 1u << mv[p];
      if (img < mask) {
        canonical = false;
        break;
      }
    }
    if (!canonical) continue;
    if (connected_only && !mask_connected(mask, nv)) continue;
    SimpleGraph g;
    g.n = nv;
    int p = 0;
    for (int i = 0; i < nv; ++i)
      for (int j = i + 1; j < nv; ++j, ++p)
        if (mask >> p & 1) g.edges.push_back({i, j});
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

// Number of vertices outside s, distinct from v, reachable from v through
// internal vertices in s.
auto elim_cost(const std::vector<uint32_t>& adj, uint32_t s, int v) -> int {
  uint32_t seen = adj[v], frontier = adj[v] & s;
  while (frontier) {
    uint32_t next = 0;
    for (int w = 0; w < int(adj.size()); ++w)
      if (frontier >> w & 1) next |= adj[w];
    next &= ~seen;
    seen |= next;
    frontier = next & s;
  }
  return std::popcount(seen & ~s & ~(1u << v));
}

}  // namespace

auto simple_treewidth(const SimpleGraph& g, int cap) -> SimpleTw {
  int nv = g.n;
  if (nv > cap) throw std::domain_error("simple_treewidth: cap exceeded");
  SimpleTw res;
  if (nv == 0) return res;
  std::vector<uint32_t> adj(nv, 0);
  for (auto& [u, v] : g.edges) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  std::vector<int8_t> f(size_t(1) << nv, 0);
  for (uint32_t s = 1; s < (1u << nv); ++s) {
    int best = nv;
    for (int v = 0; v < nv; ++v)
      if (s >> v & 1) {
        uint32_t t = s & ~(1u << v);
        best = std::min(best, std::max(int(f[t]), elim_cost(adj, t, v)));
      }
    f[s] = int8_t(best);
  }
  res.width = f[(1u << nv) - 1];

  // Recover an elimination order (first-eliminated first) by peeling the
  // full set, then build bags from the fill-in graph.
  std::vector<int> order(nv);
  uint32_t s = (1u << nv) - 1;
  for (int pos = nv - 1; pos >= 0; --pos) {
    for (int v = 0; v < nv; ++v)
      if (s >> v & 1) {
        uint32_t t = s & ~(1u << v);
        if (std::max(int(f[t]), elim_cost(adj, t, v)) == int(f[s])) {
          order[pos] = v;
          s = t;
          break;
        }
      }
  }
  std::vector<int> pos(nv);
  for (int i = 0; i < nv; ++i) pos[order[i]] = i;
  auto fill = adj;
  std::vector<std::vector<int>> bags(nv);
  for (int i = 0; i < nv; ++i) {
    int v = order[i];
    std::vector<int> later;
    for (int w = 0; w < nv; ++w)
      if ((fill[v] >> w & 1) && pos[w] > i) later.push_back(w);
    for (int a : later)
      for (int b : later)
        if (a != b) fill[a] |= 1u << b;
    bags[i] = later;
    bags[i].push_back(v);
    std::sort(bags[i].begin(), bags[i].end());
  }
  TreeDecomposition td;
  td.bags = bags;
  td.root = nv - 1;
  for (int i = 0; i < nv; ++i) {
    int v = order[i];
    int parent = nv - 1;
    for (int w : bags[i])
      if (w != v) parent = std::min(parent, pos[w]);
    if (i != nv - 1) td.tree_edges.push_back({parent, i});
  }
  res.td = std::move(td);
  if (auto bad = validate_simple_decomposition(g, res.td))
    throw std::logic_error("simple_treewidth: witness invalid: " + *bad);
  if (res.td.width() != res.width)
    throw std::logic_error("simple_treewidth: witness width mismatch");
  return res;
}

auto validate_simple_decomposition(const SimpleGraph& g,
                                   const TreeDecomposition& td)
    -> std::optional<std::string> {
  int nb = td.num_nodes();
  if (nb == 0) return g.n == 0 ? std::nullopt
                               : std::optional<std::string>("no bags");
  std::vector<std::vector<int>> occ(g.n);
  for (int b = 0; b < nb; ++b)
    for (int v : td.bags[b]) {
      if (v < 0 || v >= g.n) return "bag vertex out of range";
      occ[v].push_back(b);
    }
  for (int v = 0; v < g.n; ++v)
    if (occ[v].empty()) return "vertex " + std::to_string(v) + " uncovered";
  for (auto& [u, v] : g.edges) {
    bool covered = false;
    for (int b = 0; b < nb && !covered; ++b) {
      auto& bag = td.bags[b];
      covered = std::binary_search(bag.begin(), bag.end(), u) &&
                std::binary_search(bag.begin(), bag.end(), v);
    }
    if (!covered)
      return "edge " + std::to_string(u) + "-" + std::to_string(v) +
             " uncovered";
  }
  std::vector<std::vector<int>> tadj(nb);
  for (auto& [a, b] : td.tree_edges) {
    if (a < 0 || a >= nb || b < 0 || b >= nb) return "tree edge out of range";
    tadj[a].push_back(b);
    tadj[b].push_back(a);
  }
  if (int(td.tree_edges.size()) != nb - 1) return "tree edge count wrong";
  for (int v = 0; v < g.n; ++v) {
    std::vector<char> in_occ(nb, 0), seen(nb, 0);
    for (int b : occ[v]) in_occ[b] = 1;
    std::deque<int> q{occ[v][0]};
    seen[occ[v][0]] = 1;
    int cnt = 1;
    while (!q.empty()) {
      int b = q.front();
      q.pop_front();
      for (int c : tadj[b])
        if (in_occ[c] && !seen[c]) {
          seen[c] = 1;
          ++cnt;
          q.push_back(c);
        }
    }
    if (cnt != int(occ[v].size()))
      return "occurrence set of vertex " + std::to_string(v) +
             " disconnected";
  }
  return std::nullopt;
}

namespace {

struct HostBits {
  int n = 0;
  int words = 0;
  std::vector<uint64_t> adj;  // row-major bitset rows

  explicit HostBits(const SimpleGraph& g)
      : n(g.n), words((g.n + 63) / 64), adj(size_t(g.n) * words, 0) {
    for (auto& [u, v] : g.edges) {
      adj[size_t(u) * words + v / 64] |= uint64_t(1) << (v % 64);
      adj[size_t(v) * words + u / 64] |= uint64_t(1) << (u % 64);
    }
  }
  auto row(int v) const -> const uint64_t* { return &adj[size_t(v) * words]; }
};

// BFS order of one component from a max-degree seed; every vertex after the
// seed has an earlier neighbor, which keeps candidate sets tight.
auto component_orders(const SimpleGraph& f) -> std::vector<std::vector<int>> {
  auto adj = f.adjacency();
  auto deg = degree_vector(f);
  std::vector<char> seen(f.n, 0);
  std::vector<std::vector<int>> comps;
  for (int iter = 0; iter < f.n; ++iter) {
    int seed = -1;
    for (int v = 0; v < f.n; ++v)
      if (!seen[v] && (seed < 0 || deg[v] > deg[seed])) seed = v;
    if (seed < 0) break;
    std::vector<int> order{seed};
    seen[seed] = 1;
    for (size_t i = 0; i < order.size(); ++i)
      for (int w : adj[order[i]])
        if (!seen[w]) {
          seen[w] = 1;
          order.push_back(w);
        }
    comps.push_back(std::move(order));
  }
  return comps;
}

auto count_component(const std::vector<int>& order,
                     const std::vector<std::vector<int>>& fadj,
                     const HostBits& hb, std::vector<int>& img,
                     std::vector<uint64_t>& scratch) -> long long {
  std::vector<int> pos(fadj.size(), -1);
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = int(i);
  // img holds host images indexed by pattern vertex.
  std::vector<uint64_t> full(hb.words, ~uint64_t(0));
  if (hb.n % 64) full[hb.words - 1] = (uint64_t(1) << (hb.n % 64)) - 1;

  std::function<long long(size_t)> rec = [&](size_t i) -> long long {
    int u = order[i];
    uint64_t* cand = &scratch[i * hb.words];
    std::copy(full.begin(), full.end(), cand);
    for (int w : fadj[u])
      if (pos[w] >= 0 && size_t(pos[w]) < i) {
        const uint64_t* r = hb.row(img[w]);
        for (int t = 0; t < hb.words; ++t) cand[t] &= r[t];
      }
    if (i + 1 == order.size()) {
      long long c = 0;
      for (int t = 0; t < hb.words; ++t) c += std::popcount(cand[t]);
      return c;
    }
    long long total = 0;
    for (int t = 0; t < hb.words; ++t) {
      uint64_t bits = cand[t];
      while (bits) {
        int b = std::countr_zero(bits);
        bits &= bits - 1;
        img[u] = t * 64 + b;
        total += rec(i + 1);
      }
    }
    return total;
  };
  return rec(0);
}

}  // namespace

auto hom_count(const SimpleGraph& f, const SimpleGraph& g) -> long long {
  if (f.n == 0) return 1;
  if (g.n == 0) return 0;
  HostBits hb(g);
  auto fadj = f.adjacency();
  std::vector<int> img(f.n, -1);
  long long total = 1;
  for (auto& order : component_orders(f)) {
    std::vector<uint64_t> scratch(order.size() * hb.words);
    total *= count_component(order, fadj, hb, img, scratch);
    if (total == 0) return 0;
  }
  return total;
}

namespace {

auto weighted_component(const std::vector<int>& order,
                        const std::vector<std::vector<int>>& fadj,
                        const SimpleGraph& g, std::vector<int>& img,
                        std::vector<int>& pos, size_t i) -> Rat {
  if (i == order.size()) return Rat(1);
  int u = order[i];
  Rat total(0);
  for (int x = 0; x < g.n; ++x) {
    Rat w(1);
    bool ok = true;
    for (int v : fadj[u])
      if (pos[v] >= 0 && size_t(pos[v]) < i) {
        if (!g.has_edge(img[v], x)) {
          ok = false;
          break;
        }
        w *= g.weight(img[v], x);
      }
    if (!ok || w == 0) continue;
    img[u] = x;
    total += w * weighted_component(order, fadj, g, img, pos, i + 1);
  }
  return total;
}

}  // namespace

auto hom_count_weighted(const SimpleGraph& f, const SimpleGraph& g) -> Rat {
  if (f.n == 0) return Rat(1);
  if (g.n == 0) return Rat(0);
  auto fadj = f.adjacency();
  std::vector<int> img(f.n, -1);
  Rat total(1);
  for (auto& order : component_orders(f)) {
    std::vector<int> pos(f.n, -1);
    for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = int(i);
    total *= weighted_component(order, fadj, g, img, pos, 0);
    if (total == 0) return Rat(0);
  }
  return total;
}

namespace {

// Packed key for a bag assignment: 7 bits per coordinate in bag order.
auto pack_key(const std::vector<int>& vals) -> uint64_t {
  uint64_t key = 0;
  for (int v : vals) key = key << 7 | uint64_t(v);
  return key;
}

// Enumerates maps bag -> V(G) respecting every f-edge inside the bag, via
// backtracking with earlier-neighbor candidate intersection.
void enumerate_bag(const std::vector<int>& bag, const SimpleGraph& f,
                   const HostBits& hb,
                   const std::function<void(const std::vector<int>&)>& emit) {
  size_t k = bag.size();
  std::vector<int> vals(k, -1);
  std::vector<std::vector<int>> earlier(k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < i; ++j)
      if (f.has_edge(bag[j], bag[i])) earlier[i].push_back(int(j));
  std::vector<uint64_t> full(hb.words, ~uint64_t(0));
  if (hb.n % 64) full[hb.words - 1] = (uint64_t(1) << (hb.n % 64)) - 1;
  std::vector<uint64_t> scratch(k * hb.words);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == k) {
      emit(vals);
      return;
    }
    uint64_t* cand = &scratch[i * hb.words];
    std::copy(full.begin(), full.end(), cand);
    for (int j : earlier[i]) {
      const uint64_t* r = hb.row(vals[j]);
      for (int t = 0; t < hb.words; ++t) cand[t] &= r[t];
    }
    for (int t = 0; t < hb.words; ++t) {
      uint64_t bits = cand[t];
      while (bits) {
        int b = std::countr_zero(bits);
        bits &= bits - 1;
        vals[i] = t * 64 + b;
        rec(i + 1);
      }
    }
  };
  rec(0);
}

}  // namespace

auto hom_count_dp(const SimpleGraph& f, const TreeDecomposition& td,
                  const SimpleGraph& g) -> long long {
  if (auto bad = validate_simple_decomposition(f, td))
    throw std::domain_error("hom_count_dp: invalid decomposition: " + *bad);
  if (f.n == 0) return 1;
  if (g.n == 0) return 0;
  if (g.n >= 128) throw std::domain_error("hom_count_dp: host too large");
  HostBits hb(g);
  int nb = td.num_nodes();
  std::vector<std::vector<int>> tadj(nb);
  for (auto& [a, b] : td.tree_edges) {
    tadj[a].push_back(b);
    tadj[b].push_back(a);
  }
  int root = td.root >= 0 && td.root < nb ? td.root : 0;

  // ext[t]: packed bag assignment -> number of extensions to the vertices
  // introduced strictly below t.  Children are folded in as functions of
  // the shared coordinates.
  std::function<std::unordered_map<uint64_t, long long>(int, int)> solve =
      [&](int t, int parent) -> std::unordered_map<uint64_t, long long> {
    auto& bag = td.bags[t];
    struct ChildTab {
      std::vector<int> shared_pos;  // positions in this bag shared with child
      std::unordered_map<uint64_t, long long> by_shared;
    };
    std::vector<ChildTab> kids;
    for (int c : tadj[t]) {
      if (c == parent) continue;
      auto sub = solve(c, t);
      ChildTab ct;
      auto& cbag = td.bags[c];
      std::vector<int> shared_in_child;
      for (size_t i = 0; i < cbag.size(); ++i)
        if (std::binary_search(bag.begin(), bag.end(), cbag[i]))
          shared_in_child.push_back(int(i));
      for (int i : shared_in_child) {
        auto it = std::lower_bound(bag.begin(), bag.end(), cbag[i]);
        ct.shared_pos.push_back(int(it - bag.begin()));
      }
      for (auto& [key, cnt] : sub) {
        std::vector<int> vals(cbag.size());
        uint64_t k = key;
        for (int i = int(cbag.size()) - 1; i >= 0; --i) {
          vals[i] = int(k & 127);
          k >>= 7;
        }
        std::vector<int> sh;
        for (int i : shared_in_child) sh.push_back(vals[i]);
        ct.by_shared[pack_key(sh)] += cnt;
      }
      kids.push_back(std::move(ct));
    }
    std::unordered_map<uint64_t, long long> table;
    enumerate_bag(bag, f, hb, [&](const std::vector<int>& vals) {
      long long cnt = 1;
      for (auto& ct : kids) {
        std::vector<int> sh;
        for (int p : ct.shared_pos) sh.push_back(vals[p]);
        auto it = ct.by_shared.find(pack_key(sh));
        if (it == ct.by_shared.end()) {
          cnt = 0;
          break;
        }
        cnt *= it->second;
      }
      if (cnt) table[pack_key(vals)] += cnt;
    });
    return table;
  };

  auto top = solve(root, -1);
  long long total = 0;
  for (auto& [k, v] : top) {
    (void)k;
    total += v;
  }
  return total;
}

}  // namespace homcirc
