#include "homcirc/decomposition.hh"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace homcirc {

namespace {

// Simple adjacency bitmasks over global vertex ids.
auto adjacency_masks(const BipartitePattern& f) -> std::vector<uint32_t> {
  std::vector<uint32_t> adj(f.num_vertices(), 0);
  for (const auto& e : f.edges) {
    int u = e[0], v = f.left_size + e[1];
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  return adj;
}

auto tree_connected(int n, const std::vector<std::pair<int, int>>& edges)
    -> bool {
  if (n == 0) return true;
  if (int(edges.size()) != n - 1) return false;
  std::vector<std::vector<int>> nbr(n);
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n || a == b) return false;
    nbr[a].push_back(b);
    nbr[b].push_back(a);
  }
  std::vector<char> seen(n, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int cnt = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y : nbr[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++cnt;
        q.push_back(y);
      }
  }
  return cnt == n;
}

}  // namespace

auto TreeDecomposition::width() const -> int {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, int(b.size()) - 1);
  return w;
}

auto validate_tree_decomposition(const BipartitePattern& f,
                                 const TreeDecomposition& td) -> TdValidation {
  TdValidation r;
  const int n = f.num_vertices();
  const int t = td.num_nodes();
  if (t == 0) {
    r.message = "decomposition has no bags";
    return r;
  }
  for (const auto& b : td.bags)
    for (int v : b)
      if (v < 0 || v >= n) {
        r.message = "bag contains out-of-range vertex " + std::to_string(v);
        return r;
      }
  if (!tree_connected(t, td.tree_edges)) {
    r.message = "tree edges do not form a tree";
    return r;
  }
  // every vertex occurs, and its occurrence set is connected
  std::vector<std::vector<int>> nbr(t);
  for (auto [a, b] : td.tree_edges) {
    nbr[a].push_back(b);
    nbr[b].push_back(a);
  }
  for (int v = 0; v < n; ++v) {
    std::vector<char> has(t, 0);
    int total = 0, start = -1;
    for (int i = 0; i < t; ++i)
      if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) {
        has[i] = 1;
        ++total;
        start = i;
      }
    if (total == 0) {
      r.message = "vertex " + std::to_string(v) + " occurs in no bag";
      return r;
    }
    std::vector<char> seen(t, 0);
    std::deque<int> q{start};
    seen[start] = 1;
    int cnt = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : nbr[x])
        if (has[y] && !seen[y]) {
          seen[y] = 1;
          ++cnt;
          q.push_back(y);
        }
    }
    if (cnt != total) {
      r.message = "occurrence set of vertex " + std::to_string(v) +
                  " is disconnected";
      return r;
    }
  }
  // every edge covered by some bag
  for (const auto& e : f.edges) {
    int u = e[0], v = f.left_size + e[1];
    bool covered = false;
    for (const auto& b : td.bags)
      if (std::binary_search(b.begin(), b.end(), u) &&
          std::binary_search(b.begin(), b.end(), v)) {
        covered = true;
        break;
      }
    if (!covered) {
      r.message = "edge (" + std::to_string(e[0]) + "," + std::to_string(e[1]) +
                  ") covered by no bag";
      return r;
    }
  }
  r.ok = true;
  r.width = td.width();
  return r;
}

auto exact_treewidth(const BipartitePattern& f, int cap) -> TreewidthResult {
  const int n = f.num_vertices();
  if (n > cap)
    throw std::invalid_argument("exact_treewidth: pattern exceeds cap of " +
                                std::to_string(cap) + " vertices");
  TreewidthResult res;
  if (n == 0) {
    res.width = -1;
    res.witness.bags = {{}};
    return res;
  }
  auto adj = adjacency_masks(f);
  const uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);

  // Q(S, v): number of vertices outside S+{v} adjacent to the component of v
  // inside S+{v}.
  auto q_value = [&](uint32_t s, int v) -> int {
    uint32_t inside = s | (1u << v);
    uint32_t comp = 1u << v;
    for (;;) {
      uint32_t grow = comp;
      uint32_t it = comp;
      while (it) {
        int x = __builtin_ctz(it);
        it &= it - 1;
        grow |= adj[x] & inside;
      }
      if (grow == comp) break;
      comp = grow;
    }
    uint32_t boundary = 0;
    uint32_t it = comp;
    while (it) {
      int x = __builtin_ctz(it);
      it &= it - 1;
      boundary |= adj[x];
    }
    return __builtin_popcount(boundary & ~inside);
  };

  // f(S): best achievable max-Q over elimination prefixes that eliminate
  // exactly the set S.
  std::vector<int8_t> dp(size_t(1) << n, int8_t(127));
  std::vector<int8_t> choice(size_t(1) << n, int8_t(-1));
  dp[0] = -1;  // so a single isolated vertex yields width 0 via max(-1, 0)
  for (uint32_t s = 1; s <= full; ++s) {
    int best = 127, bestv = -1;
    uint32_t it = s;
    while (it) {
      int v = __builtin_ctz(it);
      it &= it - 1;
      int val = std::max(int(dp[s & ~(1u << v)]), q_value(s & ~(1u << v), v));
      if (val < best) {
        best = val;
        bestv = v;
      }
    }
    dp[s] = int8_t(best);
    choice[s] = int8_t(bestv);
  }
  res.width = std::max(0, int(dp[full]));

  // recover elimination order (last eliminated first in `choice` walk)
  std::vector<int> order(n);
  uint32_t s = full;
  for (int i = n - 1; i >= 0; --i) {
    int v = choice[s];
    order[i] = v;
    s &= ~(1u << v);
  }
  // fill-in along the order, build bags
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  auto fill = adj;
  std::vector<std::vector<int>> bags(n);
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    uint32_t later = 0;
    uint32_t it = fill[v];
    while (it) {
      int x = __builtin_ctz(it);
      it &= it - 1;
      if (pos[x] > i) later |= 1u << x;
    }
    // clique-ify later neighbors
    uint32_t it1 = later;
    while (it1) {
      int x = __builtin_ctz(it1);
      it1 &= it1 - 1;
      fill[x] |= later & ~(1u << x);
    }
    std::vector<int> bag{v};
    uint32_t it2 = later;
    while (it2) {
      bag.push_back(__builtin_ctz(it2));
      it2 &= it2 - 1;
    }
    std::sort(bag.begin(), bag.end());
    bags[i] = std::move(bag);
  }
  res.witness.bags = bags;
  for (int i = 0; i < n; ++i) {
    // parent: node of the earliest-eliminated later fill-neighbor
    int parent = -1;
    for (int u : bags[i])
      if (pos[u] > i && (parent == -1 || pos[u] < parent)) parent = pos[u];
    if (parent == -1 && i + 1 < n) parent = i + 1;
    if (parent != -1) res.witness.tree_edges.push_back({i, parent});
  }
  res.witness.root = n - 1;
  return res;
}

namespace {

struct MutableTree {
  std::vector<std::set<int>> bags;
  std::vector<std::set<int>> nbr;  // adjacency between nodes
  std::vector<char> alive;

  auto add_node(std::set<int> bag) -> int {
    bags.push_back(std::move(bag));
    nbr.emplace_back();
    alive.push_back(1);
    return int(bags.size()) - 1;
  }
  void connect(int a, int b) {
    nbr[a].insert(b);
    nbr[b].insert(a);
  }
  void disconnect(int a, int b) {
    nbr[a].erase(b);
    nbr[b].erase(a);
  }
  // contract node x into neighbor y (x removed, x's other neighbors move)
  void contract_into(int x, int y) {
    for (int z : std::set<int>(nbr[x]))
      if (z != y) {
        disconnect(x, z);
        connect(y, z);
      }
    disconnect(x, y);
    alive[x] = 0;
  }
};

}  // namespace

auto nice_decomposition(const BipartitePattern& f, const TreeDecomposition& td)
    -> TreeDecomposition {
  auto check = validate_tree_decomposition(f, td);
  if (!check.ok)
    throw std::invalid_argument("nice_decomposition: invalid input: " +
                                check.message);
  const int n = f.num_vertices();
  size_t k = 0;
  for (const auto& b : td.bags) k = std::max(k, b.size());
  if (n <= int(k) || td.num_nodes() == 1) {
    TreeDecomposition single;
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    single.bags = {all};
    single.root = 0;
    return single;
  }

  MutableTree t;
  for (const auto& b : td.bags) t.add_node(std::set<int>(b.begin(), b.end()));
  for (auto [a, b] : td.tree_edges) t.connect(a, b);

  // Phase 1: contract adjacent subset bags; pad small bags from neighbors.
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t x = 0; x < t.bags.size() && !changed; ++x) {
      if (!t.alive[x]) continue;
      for (int y : t.nbr[x]) {
        if (std::includes(t.bags[y].begin(), t.bags[y].end(),
                          t.bags[x].begin(), t.bags[x].end())) {
          t.contract_into(int(x), y);
          changed = true;
          break;
        }
      }
    }
    if (changed) continue;
    for (size_t x = 0; x < t.bags.size(); ++x) {
      if (!t.alive[x] || t.bags[x].size() >= k) continue;
      for (int y : t.nbr[x]) {
        for (int v : t.bags[y])
          if (!t.bags[x].count(v)) {
            t.bags[x].insert(v);
            changed = true;
            break;
          }
        if (changed) break;
      }
      if (changed) break;
    }
  }

  // Phase 2: smooth edges so adjacent bags intersect in exactly k-1
  // vertices, inserting one-swap chains.
  {
    std::vector<std::pair<int, int>> edges;
    for (size_t x = 0; x < t.bags.size(); ++x)
      if (t.alive[x])
        for (int y : t.nbr[x])
          if (int(x) < y) edges.push_back({int(x), y});
    for (auto [s0, t0] : edges) {
      std::vector<int> out, in;  // leave bag(s0), enter toward bag(t0)
      for (int v : t.bags[s0])
        if (!t.bags[t0].count(v)) out.push_back(v);
      for (int v : t.bags[t0])
        if (!t.bags[s0].count(v)) in.push_back(v);
      if (out.size() <= 1) continue;
      t.disconnect(s0, t0);
      int prev = s0;
      std::set<int> cur = t.bags[s0];
      for (size_t i = 0; i + 1 < out.size(); ++i) {
        cur.erase(out[i]);
        cur.insert(in[i]);
        int mid = t.add_node(cur);
        t.connect(prev, mid);
        prev = mid;
      }
      t.connect(prev, t0);
    }
  }

  // Compact into rooted child lists.
  std::vector<int> remap(t.bags.size(), -1);
  std::vector<std::set<int>> bags;
  for (size_t x = 0; x < t.bags.size(); ++x)
    if (t.alive[x]) {
      remap[x] = int(bags.size());
      bags.push_back(t.bags[x]);
    }
  int nn = int(bags.size());
  std::vector<std::vector<int>> children(nn);
  std::vector<int> parent(nn, -1);
  {
    std::vector<std::vector<int>> adj(nn);
    for (size_t x = 0; x < t.bags.size(); ++x)
      if (t.alive[x])
        for (int y : t.nbr[x])
          if (remap[x] < remap[y]) {
            adj[remap[x]].push_back(remap[y]);
            adj[remap[y]].push_back(remap[x]);
          }
    std::deque<int> q{0};
    std::vector<char> seen(nn, 0);
    seen[0] = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : adj[x])
        if (!seen[y]) {
          seen[y] = 1;
          parent[y] = x;
          children[x].push_back(y);
          q.push_back(y);
        }
    }
  }

  // Phase 3: bound out-degree by k.  Group children by the vertex they drop
  // relative to the parent bag; merge equal-bag children; chain each group.
  std::deque<int> work{0};
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    auto& ch = children[s];
    // merge children with identical bags
    for (size_t i = 0; i < ch.size(); ++i)
      for (size_t j = i + 1; j < ch.size();) {
        if (bags[ch[i]] == bags[ch[j]]) {
          for (int g : children[ch[j]]) {
            parent[g] = ch[i];
            children[ch[i]].push_back(g);
          }
          children[ch[j]].clear();
          ch.erase(ch.begin() + j);
        } else {
          ++j;
        }
      }
    // group by dropped vertex
    std::map<int, std::vector<int>> groups;
    for (int c : ch) {
      int dropped = -1;
      for (int v : bags[s])
        if (!bags[c].count(v)) {
          dropped = v;
          break;
        }
      groups[dropped].push_back(c);
    }
    ch.clear();
    for (auto& [u, grp] : groups) {
      ch.push_back(grp[0]);
      parent[grp[0]] = s;
      for (size_t i = 0; i + 1 < grp.size(); ++i) {
        parent[grp[i + 1]] = grp[i];
        children[grp[i]].push_back(grp[i + 1]);
      }
      for (int c : grp) work.push_back(c);
    }
  }

  TreeDecomposition out;
  for (const auto& b : bags)
    out.bags.push_back(std::vector<int>(b.begin(), b.end()));
  for (int x = 1; x < nn; ++x)
    if (parent[x] >= 0) out.tree_edges.push_back({parent[x], x});
  out.root = 0;
  return out;
}

auto write_td(const TreeDecomposition& td, int num_graph_vertices)
    -> std::string {
  std::ostringstream os;
  size_t maxbag = 0;
  for (const auto& b : td.bags) maxbag = std::max(maxbag, b.size());
  os << "s td " << td.bags.size() << ' ' << maxbag << ' ' << num_graph_vertices
     << '\n';
  for (size_t i = 0; i < td.bags.size(); ++i) {
    os << "b " << i + 1;
    for (int v : td.bags[i]) os << ' ' << v + 1;
    os << '\n';
  }
  for (auto [a, b] : td.tree_edges) os << a + 1 << ' ' << b + 1 << '\n';
  return os.str();
}

auto read_td(const std::string& text) -> TreeDecomposition {
  TreeDecomposition td;
  std::istringstream is(text);
  std::string line;
  size_t declared_bags = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 's') {
      std::string s, tdw;
      size_t nb, w, nv;
      if (!(ls >> s >> tdw >> nb >> w >> nv) || tdw != "td")
        throw std::invalid_argument("read_td: malformed header: " + line);
      declared_bags = nb;
      td.bags.assign(nb, {});
      have_header = true;
    } else if (line[0] == 'b') {
      char c;
      size_t id;
      if (!(ls >> c >> id) || !have_header || id < 1 || id > declared_bags)
        throw std::invalid_argument("read_td: malformed bag line: " + line);
      int v;
      while (ls >> v) td.bags[id - 1].push_back(v - 1);
      std::sort(td.bags[id - 1].begin(), td.bags[id - 1].end());
    } else {
      size_t a, b;
      if (!(ls >> a >> b) || !have_header || a < 1 || a > declared_bags ||
          b < 1 || b > declared_bags)
        throw std::invalid_argument("read_td: malformed edge line: " + line);
      td.tree_edges.push_back({int(a - 1), int(b - 1)});
    }
  }
  if (!have_header) throw std::invalid_argument("read_td: missing header");
  return td;
}

}  // namespace homcirc
