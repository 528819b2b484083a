#include "homcirc/wl.hh"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace homcirc {

namespace {

auto vertex_atom(const SimpleGraph& g, int v) -> std::string {
  std::string s;
  if (!g.colors.empty()) s += "c" + std::to_string(g.colors[v]);
  if (g.side) s += "s" + std::to_string((*g.side)[v]);
  return s;
}

auto pair_atom(const SimpleGraph& g, int u, int v) -> std::string {
  if (u == v) return "=";
  if (!g.has_edge(u, v)) return ".";
  std::string s = "e" + rat_str(g.weight(u, v));
  if (!g.edge_dir.empty()) {
    auto key = std::pair{std::min(u, v), std::max(u, v)};
    auto it = std::lower_bound(g.edges.begin(), g.edges.end(), key);
    int dir = g.edge_dir[it - g.edges.begin()];
    if (dir) s += (dir == 1) == (u < v) ? ">" : "<";
  }
  return s;
}

// Classic color refinement; the k >= 2 logic degenerates for k = 1 (a
// 1-tuple carries no internal adjacency), so neighbors enter explicitly.
auto refine_1wl(const SimpleGraph& g, const SimpleGraph& h) -> WlVerdict {
  auto adj_g = g.adjacency(), adj_h = h.adjacency();
  std::vector<int> cg(g.n), ch(h.n);
  int rounds = 0;
  {
    std::map<std::string, int> palette;
    for (int v = 0; v < g.n; ++v)
      cg[v] = palette.try_emplace(vertex_atom(g, v), int(palette.size()))
                  .first->second;
    for (int v = 0; v < h.n; ++v)
      ch[v] = palette.try_emplace(vertex_atom(h, v), int(palette.size()))
                  .first->second;
  }
  size_t prev = 0;
  while (true) {
    std::map<std::string, int> palette;
    auto next = [&](const SimpleGraph& gr, const std::vector<std::vector<int>>& adj,
                    const std::vector<int>& col, int v) {
      std::vector<std::string> nb;
      for (int w : adj[v])
        nb.push_back(rat_str(gr.weight(v, w)) + ":" + std::to_string(col[w]));
      std::sort(nb.begin(), nb.end());
      std::string s = std::to_string(col[v]) + "|";
      for (auto& x : nb) s += x + ",";
      return s;
    };
    std::vector<int> ng(g.n), nh(h.n);
    for (int v = 0; v < g.n; ++v)
      ng[v] = palette.try_emplace(next(g, adj_g, cg, v), int(palette.size()))
                  .first->second;
    for (int v = 0; v < h.n; ++v)
      nh[v] = palette.try_emplace(next(h, adj_h, ch, v), int(palette.size()))
                  .first->second;
    cg = ng;
    ch = nh;
    ++rounds;
    if (palette.size() == prev) break;
    prev = palette.size();
  }
  WlVerdict verdict;
  verdict.rounds = rounds;
  std::map<int, long> hg, hh;
  for (int c : cg) ++hg[c];
  for (int c : ch) ++hh[c];
  auto fp = [](const std::map<int, long>& m) {
    std::string s;
    for (auto& [c, n] : m) s += std::to_string(c) + ":" + std::to_string(n) + ";";
    return s;
  };
  verdict.fingerprint_g = fp(hg);
  verdict.fingerprint_h = fp(hh);
  verdict.equivalent = hg == hh;
  return verdict;
}

}  // namespace

auto k_wl_equivalent(const SimpleGraph& g, const SimpleGraph& h, int k)
    -> WlVerdict {
  if (k < 1 || k > 3) throw std::domain_error("k_wl_equivalent: k in 1..3");
  if (g.n != h.n) {
    WlVerdict v;
    v.equivalent = false;
    return v;
  }
  if (k == 1) return refine_1wl(g, h);
  int n = g.n;
  long tuples = 1;
  for (int i = 0; i < k; ++i) tuples *= n;

  auto decode = [&](long idx, std::vector<int>& t) {
    for (int i = k - 1; i >= 0; --i) {
      t[i] = int(idx % n);
      idx /= n;
    }
  };
  auto atom = [&](const SimpleGraph& gr, const std::vector<int>& t) {
    std::string s;
    for (int i = 0; i < k; ++i) s += vertex_atom(gr, t[i]) + "/";
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (i != j) s += pair_atom(gr, t[i], t[j]) + ";";
    return s;
  };

  std::vector<int> cg(tuples), ch(tuples);
  {
    std::map<std::string, int> palette;
    std::vector<int> t(k);
    for (long idx = 0; idx < tuples; ++idx) {
      decode(idx, t);
      cg[idx] = palette.try_emplace(atom(g, t), int(palette.size()))
                    .first->second;
      ch[idx] = palette.try_emplace(atom(h, t), int(palette.size()))
                    .first->second;
    }
  }

  // Substituting w at position i moves the index by (w - t[i]) * stride_i.
  std::vector<long> stride(k, 1);
  for (int i = k - 2; i >= 0; --i) stride[i] = stride[i + 1] * n;

  int rounds = 0;
  size_t prev = 0;
  while (true) {
    std::map<std::string, int> palette;
    auto next = [&](const std::vector<int>& col, long idx,
                    const std::vector<int>& t) {
      std::vector<std::string> subs;
      for (int w = 0; w < n; ++w) {
        std::string vec;
        for (int i = 0; i < k; ++i) {
          long jdx = idx + (long(w) - t[i]) * stride[i];
          vec += std::to_string(col[jdx]) + ",";
        }
        subs.push_back(vec);
      }
      std::sort(subs.begin(), subs.end());
      std::string s = std::to_string(col[idx]) + "|";
      for (auto& x : subs) s += x + "#";
      return s;
    };
    std::vector<int> ng(tuples), nh(tuples);
    std::vector<int> t(k);
    for (long idx = 0; idx < tuples; ++idx) {
      decode(idx, t);
      ng[idx] = palette.try_emplace(next(cg, idx, t), int(palette.size()))
                    .first->second;
      nh[idx] = palette.try_emplace(next(ch, idx, t), int(palette.size()))
                    .first->second;
    }
    cg = std::move(ng);
    ch = std::move(nh);
    ++rounds;
    if (palette.size() == prev) break;
    prev = palette.size();
  }

  WlVerdict verdict;
  verdict.rounds = rounds;
  std::map<int, long> hg, hh;
  for (int c : cg) ++hg[c];
  for (int c : ch) ++hh[c];
  auto fp = [](const std::map<int, long>& m) {
    std::string s;
    for (auto& [c, cnt] : m)
      s += std::to_string(c) + ":" + std::to_string(cnt) + ";";
    return s;
  };
  verdict.fingerprint_g = fp(hg);
  verdict.fingerprint_h = fp(hh);
  verdict.equivalent = hg == hh;
  return verdict;
}

auto c_equivalent(const SimpleGraph& g, const SimpleGraph& h, int k)
    -> WlVerdict {
  if (k < 2) throw std::domain_error("c_equivalent: k >= 2");
  return k_wl_equivalent(g, h, k - 1);
}

namespace {

auto cycle_graph(int len) -> SimpleGraph {
  SimpleGraph g;
  g.n = len;
  for (int v = 0; v < len; ++v)
    g.edges.push_back({std::min(v, (v + 1) % len), std::max(v, (v + 1) % len)});
  g.normalize();
  if (len % 2 == 0) {
    std::vector<int> s(len);
    for (int v = 0; v < len; ++v) s[v] = v % 2;
    g.side = s;
  }
  return g;
}

auto biclique_graph(int a, int b) -> SimpleGraph {
  SimpleGraph g;
  g.n = a + b;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) g.edges.push_back({i, a + j});
  g.normalize();
  std::vector<int> s(g.n, 1);
  for (int i = 0; i < a; ++i) s[i] = 0;
  g.side = s;
  return g;
}

auto grid_graph(int r, int c) -> SimpleGraph {
  SimpleGraph g;
  g.n = r * c;
  auto id = [&](int i, int j) { return i * c + j; };
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      if (i + 1 < r) g.edges.push_back({id(i, j), id(i + 1, j)});
      if (j + 1 < c) g.edges.push_back({id(i, j), id(i, j + 1)});
    }
  g.normalize();
  std::vector<int> s(g.n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) s[id(i, j)] = (i + j) % 2;
  g.side = s;
  return g;
}

auto cube_graph() -> SimpleGraph {
  SimpleGraph g;
  g.n = 8;
  for (int v = 0; v < 8; ++v)
    for (int b = 0; b < 3; ++b)
      if (!(v >> b & 1)) g.edges.push_back({v, v | 1 << b});
  g.normalize();
  std::vector<int> s(8);
  for (int v = 0; v < 8; ++v) s[v] = std::popcount(unsigned(v)) % 2;
  g.side = s;
  return g;
}

}  // namespace

auto named_base(const std::string& name) -> SimpleGraph {
  if (name == "k2") return biclique_graph(1, 1);
  if (name == "path3") {
    auto g = biclique_graph(1, 2);
    return g;
  }
  if (name == "c4") return cycle_graph(4);
  if (name == "c6") return cycle_graph(6);
  if (name == "c8") return cycle_graph(8);
  if (name == "c10") return cycle_graph(10);
  if (name == "k22") return biclique_graph(2, 2);
  if (name == "k33") return biclique_graph(3, 3);
  if (name == "k34") return biclique_graph(3, 4);
  if (name == "k44") return biclique_graph(4, 4);
  if (name == "grid33") return grid_graph(3, 3);
  if (name == "grid34") return grid_graph(3, 4);
  if (name == "q3") return cube_graph();
  throw std::domain_error("named_base: unknown base " + name);
}

auto cfi_host_pairs(int k, int min_pairs, uint64_t seed)
    -> std::vector<HostPair> {
  std::vector<std::string> names;
  if (k == 2)
    names = {"c4", "c6", "c8", "c10"};
  else if (k == 3)
    names = {"k33", "grid33", "q3", "k34"};
  else
    throw std::domain_error("cfi_host_pairs: k in {2, 3}");

  std::mt19937_64 rng(seed);
  std::vector<HostPair> out;
  for (size_t b = 0; out.size() < size_t(min_pairs); b = (b + 1) % names.size()) {
    auto base = named_base(names[b]);
    if (simple_treewidth(base).width < k)
      throw std::logic_error("cfi_host_pairs: base treewidth too small");
    int round = int(out.size() / names.size());
    std::vector<int> u(base.n, 0), v(base.n, 0);
    if (round == 0) {
      v[0] = 1;  // the canonical even/odd pair
    } else {
      for (int& x : u) x = int(rng() & 1);
      for (int& x : v) x = int(rng() & 1);
    }
    int pu = 0, pv = 0;
    for (int x : u) pu ^= x;
    for (int x : v) pv ^= x;
    HostPair p;
    p.id = "k" + std::to_string(k) + "-" + names[b] + "-" +
           std::to_string(out.size()) + "-par" + std::to_string(pu) +
           std::to_string(pv);
    p.g0 = host_matrix(cfi(base, u).graph);
    p.g1 = host_matrix(cfi(base, v).graph);
    p.isomorphic = pu == pv;
    out.push_back(std::move(p));
  }
  return out;
}

auto counting_width_experiment(
    const std::function<Rat(const WeightedHost&)>& eval,
    const std::vector<HostPair>& pairs) -> std::vector<WidthExperimentRow> {
  std::vector<WidthExperimentRow> rows;
  for (auto& p : pairs) {
    WidthExperimentRow r;
    r.id = p.id;
    r.value0 = eval(p.g0);
    r.value1 = eval(p.g1);
    r.equal = r.value0 == r.value1;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace homcirc
