#include "homcirc/cfi.hh"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

namespace homcirc {

auto cfi_gamma(const SimpleGraph& base) -> long {
  long g = 0;
  for (int v = 0; v < base.n; ++v) {
    int d = base.degree(v);
    g += d == 0 ? 1 : long(1) << (d - 1);
  }
  return g;
}

auto cfi(const SimpleGraph& base, const std::vector<int>& twist)
    -> CfiInstance {
  if (!base.valid() || !is_connected(base))
    throw std::domain_error("cfi: base must be a connected simple graph");
  if (int(twist.size()) != base.n)
    throw std::domain_error("cfi: twist size mismatch");
  CfiInstance ins;
  ins.base = base;
  ins.twist = twist;
  ins.inc.assign(base.n, {});
  for (int e = 0; e < base.num_edges(); ++e) {
    ins.inc[base.edges[e].first].push_back(e);
    ins.inc[base.edges[e].second].push_back(e);
  }
  std::vector<std::vector<int>> gadget(base.n);  // gadget vertex ids per v
  for (int v = 0; v < base.n; ++v) {
    int d = int(ins.inc[v].size());
    for (uint32_t mask = 0; mask < (1u << d); ++mask) {
      if (std::popcount(mask) % 2 != (twist[v] & 1)) continue;
      gadget[v].push_back(int(ins.rho.size()));
      ins.rho.push_back(v);
      ins.t_mask.push_back(mask);
    }
  }
  ins.graph.n = int(ins.rho.size());
  for (int e = 0; e < base.num_edges(); ++e) {
    auto [u, v] = base.edges[e];
    int pu = int(std::lower_bound(ins.inc[u].begin(), ins.inc[u].end(), e) -
                 ins.inc[u].begin());
    int pv = int(std::lower_bound(ins.inc[v].begin(), ins.inc[v].end(), e) -
                 ins.inc[v].begin());
    for (int a : gadget[u])
      for (int b : gadget[v])
        if ((ins.t_mask[a] >> pu & 1) == (ins.t_mask[b] >> pv & 1))
          ins.graph.edges.push_back({std::min(a, b), std::max(a, b)});
  }
  ins.graph.normalize();
  if (base.side) {
    std::vector<int> s(ins.graph.n);
    for (int x = 0; x < ins.graph.n; ++x) s[x] = (*base.side)[ins.rho[x]];
    ins.graph.side = s;
  }
  bool no_isolated = true;
  for (int v = 0; v < base.n; ++v)
    if (ins.inc[v].empty()) no_isolated = false;
  if (no_isolated && ins.graph.n != cfi_gamma(base))
    throw std::logic_error("cfi: gadget count mismatch");
  return ins;
}

auto even_twist_isomorphism(const CfiInstance& a, const CfiInstance& b)
    -> std::optional<std::vector<int>> {
  if (a.base.n != b.base.n || a.base.edges != b.base.edges)
    throw std::domain_error("even_twist_isomorphism: bases differ");
  const auto& base = a.base;
  std::vector<int> diff(base.n);
  int parity = 0;
  for (int v = 0; v < base.n; ++v) {
    diff[v] = (a.twist[v] ^ b.twist[v]) & 1;
    parity ^= diff[v];
  }
  if (parity) return std::nullopt;

  // Build D with boundary `diff` by pairing support vertices along paths.
  auto adj = base.adjacency();
  std::vector<char> in_d(base.num_edges(), 0);
  auto edge_id = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(base.edges.begin(), base.edges.end(),
                               std::pair{u, v});
    return int(it - base.edges.begin());
  };
  while (true) {
    int s = -1, t = -1;
    for (int v = 0; v < base.n && t < 0; ++v)
      if (diff[v]) (s < 0 ? s : t) = v;
    if (s < 0) break;
    std::vector<int> prev(base.n, -1);
    std::deque<int> q{s};
    prev[s] = s;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w : adj[v])
        if (prev[w] < 0) {
          prev[w] = v;
          q.push_back(w);
        }
    }
    for (int v = t; v != s; v = prev[v]) in_d[edge_id(v, prev[v])] ^= 1;
    diff[s] ^= 1;
    diff[t] ^= 1;
  }

  // Index b's gadget vertices by (base vertex, mask).
  std::map<std::pair<int, uint32_t>, int> lookup;
  for (int x = 0; x < b.graph.n; ++x)
    lookup[{b.rho[x], b.t_mask[x]}] = x;
  std::vector<int> map(a.graph.n, -1);
  for (int x = 0; x < a.graph.n; ++x) {
    int v = a.rho[x];
    uint32_t d_local = 0;
    for (size_t p = 0; p < a.inc[v].size(); ++p)
      if (in_d[a.inc[v][p]]) d_local |= uint32_t(1) << p;
    auto it = lookup.find({v, a.t_mask[x] ^ d_local});
    if (it == lookup.end()) return std::nullopt;
    map[x] = it->second;
  }
  std::vector<char> hit(b.graph.n, 0);
  for (int x : map) {
    if (hit[x]) return std::nullopt;
    hit[x] = 1;
  }
  auto mapped = a.graph.edges;
  for (auto& [u, v] : mapped) {
    u = map[u];
    v = map[v];
    if (u > v) std::swap(u, v);
  }
  std::sort(mapped.begin(), mapped.end());
  if (mapped != b.graph.edges) return std::nullopt;
  return map;
}

namespace {

auto all_homs(const SimpleGraph& f, const SimpleGraph& g)
    -> std::vector<std::vector<int>> {
  std::vector<std::vector<int>> out;
  std::vector<int> phi(f.n, -1);
  std::function<void(int)> rec = [&](int v) {
    if (v == f.n) {
      out.push_back(phi);
      return;
    }
    for (int x = 0; x < g.n; ++x) {
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        if (f.has_edge(u, v) && !g.has_edge(phi[u], x)) ok = false;
      if (!ok) continue;
      phi[v] = x;
      rec(v + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace

auto exists_weak_oddomorphism(const SimpleGraph& f, const SimpleGraph& g)
    -> std::optional<Oddomorphism> {
  if (f.n > 7 || g.n > 7)
    throw std::domain_error("exists_weak_oddomorphism: cap exceeded");
  int ne = f.num_edges();
  auto gadj = g.adjacency();
  for (auto& phi : all_homs(f, g)) {
    // A restriction can only be surjective if phi already is.
    std::vector<char> vhit(g.n, 0);
    for (int x : phi) vhit[x] = 1;
    if (std::count(vhit.begin(), vhit.end(), char(1)) != g.n) continue;
    std::vector<char> ehit(g.num_edges(), 0);
    int ecount = 0;
    auto g_edge_id = [&](int u, int v) {
      if (u > v) std::swap(u, v);
      auto it = std::lower_bound(g.edges.begin(), g.edges.end(),
                                 std::pair{u, v});
      return it != g.edges.end() && *it == std::pair{u, v}
                 ? int(it - g.edges.begin())
                 : -1;
    };
    for (auto& [u, v] : f.edges) {
      int id = g_edge_id(phi[u], phi[v]);
      if (id >= 0 && !ehit[id]) {
        ehit[id] = 1;
        ++ecount;
      }
    }
    if (ecount != g.num_edges()) continue;

    // Isolated vertices of a candidate subgraph are phi-even and change
    // nothing, so it suffices to range over edge subsets with their
    // endpoints as the vertex set.  Full edge set first.
    for (uint32_t mask = (1u << ne); mask-- > 0;) {
      std::vector<char> in_w(f.n, 0);
      std::vector<std::vector<int>> fadj(f.n);
      for (int e = 0; e < ne; ++e)
        if (mask >> e & 1) {
          auto [u, v] = f.edges[e];
          in_w[u] = in_w[v] = 1;
          fadj[u].push_back(v);
          fadj[v].push_back(u);
        }
      std::vector<int> odd_in_fibre(g.n, 0);
      std::vector<char> fibre_used(g.n, 0);
      std::vector<char> ehit2(g.num_edges(), 0);
      int ecount2 = 0;
      bool ok = true;
      for (int a = 0; a < f.n && ok; ++a) {
        if (!in_w[a]) continue;
        fibre_used[phi[a]] = 1;
        int odd = -1;  // -1 unknown, 0 even, 1 odd
        for (int v : gadj[phi[a]]) {
          int c = 0;
          for (int b : fadj[a])
            if (phi[b] == v) ++c;
          int p = c & 1;
          if (odd < 0)
            odd = p;
          else if (odd != p)
            ok = false;
        }
        if (odd == 1) ++odd_in_fibre[phi[a]];
      }
      if (!ok) continue;
      for (int e = 0; e < ne; ++e)
        if (mask >> e & 1) {
          int id = g_edge_id(phi[f.edges[e].first], phi[f.edges[e].second]);
          if (id >= 0 && !ehit2[id]) {
            ehit2[id] = 1;
            ++ecount2;
          }
        }
      if (ecount2 != g.num_edges()) continue;
      for (int v = 0; v < g.n && ok; ++v)
        if (!fibre_used[v] || odd_in_fibre[v] % 2 == 0) ok = false;
      if (!ok) continue;
      Oddomorphism w;
      w.phi = phi;
      for (int e = 0; e < ne; ++e)
        if (mask >> e & 1) w.sub.push_back(f.edges[e]);
      return w;
    }
  }
  return std::nullopt;
}

auto bipartite_double_cover(const SimpleGraph& g) -> SimpleGraph {
  SimpleGraph c;
  c.n = 2 * g.n;
  for (auto& [u, v] : g.edges) {
    c.edges.push_back({std::min(u, g.n + v), std::max(u, g.n + v)});
    c.edges.push_back({std::min(v, g.n + u), std::max(v, g.n + u)});
    if (auto it = g.weights.find({u, v}); it != g.weights.end()) {
      c.weights[c.edges[c.edges.size() - 2]] = it->second;
      c.weights[c.edges.back()] = it->second;
    }
  }
  c.normalize();
  std::vector<int> s(c.n, 1);
  for (int v = 0; v < g.n; ++v) s[v] = 0;
  c.side = s;
  if (!g.colors.empty()) {
    c.colors.resize(c.n);
    for (int v = 0; v < g.n; ++v) c.colors[v] = c.colors[g.n + v] = g.colors[v];
  }
  return c;
}

namespace {

auto matchings_rec(const SimpleGraph& g, int e, uint64_t used, int h)
    -> long long {
  if (h == 0) return 1;
  if (e >= g.num_edges() || g.num_edges() - e < h) return 0;
  long long total = matchings_rec(g, e + 1, used, h);
  auto [u, v] = g.edges[e];
  if (!(used >> u & 1) && !(used >> v & 1))
    total += matchings_rec(g, e + 1, used | uint64_t(1) << u | uint64_t(1) << v,
                           h - 1);
  return total;
}

}  // namespace

auto matching_counts(const SimpleGraph& g, int h) -> long long {
  if (g.n > 64) throw std::domain_error("matching_counts: cap exceeded");
  if (h < 0) return 0;
  return matchings_rec(g, 0, 0, h);
}

}  // namespace homcirc
