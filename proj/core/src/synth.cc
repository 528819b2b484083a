#include "homcirc/synth.hh"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace homcirc {

namespace {

// tag layout shared by the synthesis passes
constexpr int kTagInput = 1;
constexpr int kTagOne = 2;
constexpr int kTagValueBase = 5000;  // + running value index

auto shared_input(CircuitBuilder& b, int n, int i, int j) -> int {
  std::vector<int> sup{i, n + j};
  int g = b.find(kTagInput, sup);
  return g >= 0 ? g : b.input(i, j, kTagInput, sup);
}

auto one_gate(CircuitBuilder& b) -> int {
  int g = b.find(kTagOne, {});
  return g >= 0 ? g : b.constant(Rat(1), kTagOne, {});
}

// Const gates shared per distinct rational value.
struct ValuePool {
  std::map<std::string, int> ids;
  auto get(CircuitBuilder& b, const Rat& v) -> int {
    auto key = rat_str(v);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int g = b.constant(v, kTagValueBase + int(ids.size()), {});
    ids.emplace(key, g);
    return g;
  }
};

struct RootedTree {
  std::vector<std::vector<int>> children;
  std::vector<int> parent;
  std::vector<int> depth;
};

auto root_tree(const TreeDecomposition& td) -> RootedTree {
  int nn = td.num_nodes();
  std::vector<std::vector<int>> adj(nn);
  for (auto [a, c] : td.tree_edges) {
    adj[a].push_back(c);
    adj[c].push_back(a);
  }
  RootedTree rt;
  rt.children.resize(nn);
  rt.parent.assign(nn, -1);
  rt.depth.assign(nn, -1);
  std::vector<int> queue{td.root};
  rt.depth[td.root] = 0;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int s = queue[qi];
    for (int t : adj[s])
      if (rt.depth[t] < 0) {
        rt.depth[t] = rt.depth[s] + 1;
        rt.parent[t] = s;
        rt.children[s].push_back(t);
        queue.push_back(t);
      }
  }
  return rt;
}

// Homomorphism-circuit compiler over a nice decomposition.  Each pattern edge
// is charged to the shallowest node whose bag covers it, so the product over
// a node's factors enumerates every edge exactly once; one summation gate per
// (tree edge, restriction of the bag assignment) introduces the child's fresh
// vertex.  Supports carry the host images of the bag in sorted-vertex order.
struct HomCompiler {
  CircuitBuilder& b;
  const BipartitePattern& f;
  const TreeDecomposition& td;
  int n, m, tag_base;
  RootedTree rt;
  std::vector<std::vector<std::array<int, 3>>> assigned;  // per node
  std::map<std::pair<int, int>, int> edge_index;          // (parent,child)

  HomCompiler(CircuitBuilder& b_, const BipartitePattern& f_,
              const TreeDecomposition& td_, int n_, int m_, int tag_base_)
      : b(b_), f(f_), td(td_), n(n_), m(m_), tag_base(tag_base_) {
    rt = root_tree(td);
    int nn = td.num_nodes();
    assigned.resize(nn);
    int ei = 0;
    for (int s = 0; s < nn; ++s)
      for (int t : rt.children[s]) edge_index[{s, t}] = ei++;
    const int L = f.left_size;
    for (const auto& e : f.edges) {
      int ga = e[0], gb = L + e[1];
      int best = -1;
      for (int s = 0; s < nn; ++s) {
        const auto& bag = td.bags[s];
        if (std::binary_search(bag.begin(), bag.end(), ga) &&
            std::binary_search(bag.begin(), bag.end(), gb) &&
            (best < 0 || rt.depth[s] < rt.depth[best]))
          best = s;
      }
      if (best < 0)
        throw std::invalid_argument("decomposition does not cover an edge");
      assigned[best].push_back(e);
    }
  }

  auto tag_f(int s) const -> int { return tag_base + 1 + s; }
  auto tag_k(int s, int t) const -> int {
    return tag_base + 1 + td.num_nodes() + edge_index.at({s, t});
  }

  // sup holds host images aligned with the sorted bag: left value v -> v,
  // right value w -> n + w.
  auto build_node(int s, const std::vector<int>& sup) -> int {
    int g = b.find(tag_f(s), sup);
    if (g >= 0) return g;
    const auto& bag = td.bags[s];
    const int L = f.left_size;
    std::map<int, int> kids;
    for (const auto& e : assigned[s]) {
      int pa = int(std::lower_bound(bag.begin(), bag.end(), e[0]) - bag.begin());
      int pb = int(std::lower_bound(bag.begin(), bag.end(), L + e[1]) -
                   bag.begin());
      kids[shared_input(b, n, sup[pa], sup[pb] - n)] += e[2];
    }
    for (int t : rt.children[s]) kids[build_edge(s, t, sup)] += 1;
    std::vector<std::pair<int, int>> ch(kids.begin(), kids.end());
    if (ch.empty()) ch.push_back({one_gate(b), 1});
    return b.mul(ch, tag_f(s), sup);
  }

  auto build_edge(int s, int t, const std::vector<int>& sup_s) -> int {
    const auto& bs = td.bags[s];
    const auto& bt = td.bags[t];
    // values of the shared vertices, in bag(t)'s sorted order
    std::vector<int> common_sup;
    int fresh = -1;  // the vertex introduced by t
    for (int v : bt) {
      auto it = std::lower_bound(bs.begin(), bs.end(), v);
      if (it != bs.end() && *it == v)
        common_sup.push_back(sup_s[it - bs.begin()]);
      else if (fresh < 0)
        fresh = v;
      else
        throw std::logic_error("decomposition edge introduces two vertices");
    }
    int tg = tag_k(s, t);
    int g = b.find(tg, common_sup);
    if (g >= 0) return g;
    if (fresh < 0) throw std::logic_error("decomposition edge introduces none");
    const int L = f.left_size;
    int domain = fresh < L ? n : m;
    std::vector<std::pair<int, int>> kids;
    for (int c = 0; c < domain; ++c) {
      std::vector<int> sup_t;
      size_t ci = 0;
      for (int v : bt) {
        if (v == fresh)
          sup_t.push_back(fresh < L ? c : n + c);
        else
          sup_t.push_back(common_sup[ci++]);
      }
      kids.push_back({build_node(t, sup_t), 1});
    }
    return b.add(kids, tg, common_sup);
  }

  auto build_root() -> int {
    const auto& bag = td.bags[td.root];
    const int L = f.left_size;
    std::vector<int> vals(bag.size(), 0);
    std::vector<std::pair<int, int>> kids;
    while (true) {
      std::vector<int> sup(bag.size());
      for (size_t p = 0; p < bag.size(); ++p)
        sup[p] = bag[p] < L ? vals[p] : n + vals[p];
      kids.push_back({build_node(td.root, sup), 1});
      size_t p = 0;
      for (; p < bag.size(); ++p) {
        int dom = bag[p] < L ? n : m;
        if (++vals[p] < dom) break;
        vals[p] = 0;
      }
      if (p == bag.size()) break;
    }
    return b.add(kids, tag_base, {});
  }

  // number of tags this compiler consumes starting at tag_base
  auto tag_span() const -> int {
    return 1 + td.num_nodes() + int(edge_index.size());
  }
};

auto check_shape(const TreeDecomposition& td, const RootedTree& rt) -> bool {
  if (td.bags.empty()) return false;
  size_t k = td.bags.front().size();
  for (const auto& bg : td.bags)
    if (bg.size() != k) return false;
  for (auto [a, c] : td.tree_edges) {
    std::vector<int> inter;
    std::set_intersection(td.bags[a].begin(), td.bags[a].end(),
                          td.bags[c].begin(), td.bags[c].end(),
                          std::back_inserter(inter));
    if (inter.size() + 1 != k) return false;
  }
  for (const auto& ch : rt.children)
    if (ch.size() > k) return false;
  return true;
}

auto hom_size_bound(int k, int n, int m, long fnorm) -> Rat {
  Rat bound = Rat(5) * factorial(k) * factorial(k) * Rat(k);
  for (int i = 0; i <= k; ++i) bound *= Rat(n + m);
  return bound * Rat(fnorm) * Rat(fnorm);
}

void fill_common_report(SynthReport& r) {
  r.measured_size = r.circuit.size_measure();
}

// all injective ordered tuples of length k from 0..dom-1
auto injections(int k, int dom) -> std::vector<std::vector<int>> {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<char> used(dom, 0);
  auto rec = [&](auto&& self) -> void {
    if (int(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v < dom; ++v)
      if (!used[v]) {
        used[v] = 1;
        cur.push_back(v);
        self(self);
        cur.pop_back();
        used[v] = 0;
      }
  };
  rec(rec);
  return out;
}

}  // namespace

auto synth_hom(const BipartitePattern& f, const TreeDecomposition& td, int n,
               int m) -> SynthReport {
  if (!f.valid()) throw std::invalid_argument("synth_hom: invalid pattern");
  if (n < 1 || m < 1) throw std::invalid_argument("synth_hom: need n,m >= 1");
  if (f.num_vertices() == 0)
    throw std::invalid_argument("synth_hom: empty pattern");
  auto check = validate_tree_decomposition(f, td);
  if (!check.ok)
    throw std::invalid_argument("synth_hom: invalid decomposition: " +
                                check.message);
  TreeDecomposition nice = nice_decomposition(f, td);
  RootedTree rt = root_tree(nice);
  int k = int(nice.bags.front().size());

  CircuitBuilder b(n, m, Circuit::Group::SymNM);
  HomCompiler hc(b, f, nice, n, m, 10);
  b.set_output(hc.build_root());

  SynthReport r;
  r.circuit = b.take();
  r.size_bound = hom_size_bound(k, n, m, f.size_norm());
  r.max_sup_claim = k;
  r.shape_conformant = check_shape(nice, rt);
  r.stats["k"] = std::to_string(k);
  r.stats["nodes"] = std::to_string(nice.num_nodes());
  fill_common_report(r);
  return r;
}

auto synth_sub_moebius(const BipartitePattern& f, int n, int m) -> SynthReport {
  if (!f.valid()) throw std::invalid_argument("synth_sub: invalid pattern");
  if (f.left_size > 12 || f.right_size > 12)
    throw std::invalid_argument("synth_sub: pattern side over partition cap");
  struct Term {
    BipartitePattern q;
    Rat coeff;
  };
  std::map<std::string, Term> terms;
  for (const auto& pi : enumerate_partitions(f.left_size))
    for (const auto& sigma : enumerate_partitions(f.right_size)) {
      BipartitePattern q = quotient(f, pi, sigma);
      Rat c = moebius(pi) * moebius(sigma);
      auto key = canonical_key(q);
      auto it = terms.find(key);
      if (it == terms.end())
        terms.emplace(key, Term{std::move(q), c});
      else
        it->second.coeff += c;
    }
  Rat aut = Rat(automorphism_count(f));

  CircuitBuilder b(n, m, Circuit::Group::SymNM);
  int next_base = 10;
  std::vector<std::pair<int, int>> kids;
  int qi = 0;
  for (auto& [key, term] : terms) {
    if (term.coeff == 0) continue;
    TreewidthResult tw = exact_treewidth(term.q);
    TreeDecomposition nice = nice_decomposition(term.q, tw.witness);
    HomCompiler hc(b, term.q, nice, n, m, next_base);
    int root = hc.build_root();
    next_base += hc.tag_span();
    int cg = b.constant(term.coeff / aut, next_base++, {});
    kids.push_back({b.mul({{cg, 1}, {root, 1}}, next_base++, {}), 1});
    ++qi;
  }
  if (kids.empty()) kids.push_back({one_gate(b), 1});
  b.set_output(b.add(kids, 3, {}));

  SynthReport r;
  r.circuit = b.take();
  r.max_sup_claim = 0;
  for (size_t g = 0; g < r.circuit.num_gates(); ++g)
    if (r.circuit.has_key(g))
      r.max_sup_claim = std::max(
          r.max_sup_claim, int(r.circuit.key_support(g).size()));
  r.shape_conformant = true;
  r.stats["quotient_terms"] = std::to_string(qi);
  r.stats["aut"] = rat_str(aut);
  fill_common_report(r);
  return r;
}

auto synth_biclique(BicliqueKind kind, int k, int n) -> SynthReport {
  if (k < 0 || k > n) throw std::invalid_argument("synth_biclique: bad k");
  CircuitBuilder b(n, n, Circuit::Group::SymNM);
  std::vector<int> ground(n);
  for (int i = 0; i < n; ++i) ground[i] = i;
  std::vector<std::vector<int>> ksets;
  {
    std::vector<int> cur;
    auto rec = [&](auto&& self, int from) -> void {
      if (int(cur.size()) == k) {
        ksets.push_back(cur);
        return;
      }
      for (int v = from; v < n; ++v) {
        cur.push_back(v);
        self(self, v + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
  }
  std::vector<std::pair<int, int>> kids;
  for (const auto& A : ksets)
    for (const auto& B : ksets) {
      std::vector<char> inA(n, 0), inB(n, 0);
      for (int a : A) inA[a] = 1;
      for (int v : B) inB[v] = 1;
      std::vector<std::pair<int, int>> factors;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          bool take = kind == BicliqueKind::Direct ? (inA[i] && inB[j])
                                                   : (!inA[i] && !inB[j]);
          if (take) factors.push_back({shared_input(b, n, i, j), 1});
        }
      if (factors.empty()) factors.push_back({one_gate(b), 1});
      std::vector<int> sup(A);
      for (int v : B) sup.push_back(n + v);
      kids.push_back({b.mul(factors, -10, sup), 1});
    }
  b.set_output(b.add(kids, 11, {}));

  SynthReport r;
  r.circuit = b.take();
  Rat bound = Rat(5) * Rat(n + 1) * Rat(n + 1);
  for (int i = 0; i < 2 * k; ++i) bound *= Rat(n);
  r.size_bound = bound;
  r.max_sup_claim = 2 * k;
  r.shape_conformant = true;
  fill_common_report(r);
  return r;
}

auto vandermonde_inverse_row(const std::vector<Rat>& points, int target)
    -> std::vector<Rat> {
  const int d = int(points.size());
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (points[i] == points[j])
        throw std::invalid_argument("repeated interpolation points");
  if (target < 0 || target >= d)
    throw std::invalid_argument("target degree outside point range");
  // Gauss-Jordan on [V | I], V[r][e] = p_r^e
  std::vector<std::vector<Rat>> a(d, std::vector<Rat>(2 * d, Rat(0)));
  for (int r = 0; r < d; ++r) {
    Rat p(1);
    for (int e = 0; e < d; ++e) {
      a[r][e] = p;
      p *= points[r];
    }
    a[r][d + r] = Rat(1);
  }
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int r = col; r < d; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::logic_error("singular Vandermonde matrix");
    std::swap(a[col], a[piv]);
    Rat inv = Rat(1) / a[col][col];
    for (int c = 0; c < 2 * d; ++c) a[col][c] *= inv;
    for (int r = 0; r < d; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat factor = a[r][col];
      for (int c = 0; c < 2 * d; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  std::vector<Rat> row(d);
  for (int r = 0; r < d; ++r) row[r] = a[target][d + r];
  return row;
}

auto extract_coefficient(const Circuit& c, const std::vector<int>& slots,
                         const std::vector<int>& target_degrees,
                         const std::vector<int>& degree_bounds) -> Circuit {
  const int t = int(slots.size());
  if (int(target_degrees.size()) != t || int(degree_bounds.size()) != t)
    throw std::invalid_argument("extract_coefficient: arity mismatch");
  long grid_total = 1;
  for (int v = 0; v < t; ++v) {
    if (target_degrees[v] < 0 || target_degrees[v] > degree_bounds[v])
      throw std::invalid_argument("extract_coefficient: degree bound violated");
    grid_total *= degree_bounds[v] + 1;
    if (grid_total * long(c.num_gates()) > 50'000'000L)
      throw std::length_error("extract_coefficient: grid over cap");
  }
  for (int s : slots)
    if (s < 0 || size_t(s) >= c.num_gates() || c.kind(s) != GateKind::Const)
      throw std::invalid_argument("extract_coefficient: slot is not a Const");

  // per-variable inverse-Vandermonde rows on points 0..bound
  std::vector<std::vector<Rat>> rows(t);
  for (int v = 0; v < t; ++v) {
    std::vector<Rat> pts;
    for (int p = 0; p <= degree_bounds[v]; ++p) pts.push_back(Rat(p));
    rows[v] = vandermonde_inverse_row(pts, target_degrees[v]);
  }

  CircuitBuilder b(c.n, c.m, c.group);
  ValuePool pool;
  std::vector<int> slot_of(c.num_gates(), -1);
  for (int v = 0; v < t; ++v) slot_of[slots[v]] = v;

  std::vector<int> point(t, 0);
  std::vector<std::pair<int, int>> sum_kids;
  const int ng = int(c.num_gates());
  long grid_index = 0;
  while (true) {
    Rat weight(1);
    for (int v = 0; v < t; ++v) weight *= rows[v][point[v]];
    if (weight != 0) {
      int base = 100000 + int(grid_index) * (ng + 2);
      std::vector<int> remap(ng, -1);
      for (int g = 0; g < ng; ++g) {
        switch (c.kind(g)) {
          case GateKind::Input: {
            auto [i, j] = c.input_pos(g);
            remap[g] = shared_input(b, c.n, i, j);
            break;
          }
          case GateKind::Const:
            remap[g] = slot_of[g] >= 0
                           ? pool.get(b, Rat(point[slot_of[g]]))
                           : pool.get(b, c.const_value(g));
            break;
          case GateKind::Add:
          case GateKind::Mul: {
            std::vector<std::pair<int, int>> kids;
            for (auto it = c.child_begin(g); it != c.child_end(g); ++it)
              kids.push_back({remap[it->first], it->second});
            std::vector<int> sup =
                c.has_key(g) ? c.key_support(g) : std::vector<int>{};
            remap[g] = c.kind(g) == GateKind::Add ? b.add(kids, base + g, sup)
                                                  : b.mul(kids, base + g, sup);
            break;
          }
        }
      }
      int wg = pool.get(b, weight);
      sum_kids.push_back(
          {b.mul({{wg, 1}, {remap[c.output], 1}}, base + ng, {}), 1});
    }
    ++grid_index;
    int v = 0;
    for (; v < t; ++v) {
      if (++point[v] <= degree_bounds[v]) break;
      point[v] = 0;
    }
    if (v == t) break;
  }
  if (sum_kids.empty()) sum_kids.push_back({pool.get(b, Rat(0)), 1});
  b.set_output(b.add(sum_kids, 3, {}));
  return b.take();
}

auto synth_sub_cover(const BipartitePattern& f, int n, int m, int cover_cap)
    -> SynthReport {
  if (!f.valid() || !f.is_simple())
    throw std::invalid_argument("synth_sub_cover: needs a valid simple pattern");
  if (f.left_size > n || f.right_size > m)
    throw std::invalid_argument("synth_sub_cover: pattern exceeds host sizes");

  // strip isolated vertices, remember the binomial padding factor
  std::vector<int> keep_l, keep_r;
  for (int a = 0; a < f.left_size; ++a)
    if (f.degree_left(a) > 0) keep_l.push_back(a);
  for (int v = 0; v < f.right_size; ++v)
    if (f.degree_right(v) > 0) keep_r.push_back(v);
  const int a0 = int(keep_l.size()), b0 = int(keep_r.size());
  const int iso_l = f.left_size - a0, iso_r = f.right_size - b0;

  // F1: the stripped pattern padded with isolated vertices to full (n, m)
  BipartitePattern f1;
  f1.left_size = n;
  f1.right_size = m;
  {
    std::vector<int> lmap(f.left_size, -1), rmap(f.right_size, -1);
    for (int i = 0; i < a0; ++i) lmap[keep_l[i]] = i;
    for (int i = 0; i < b0; ++i) rmap[keep_r[i]] = i;
    for (const auto& e : f.edges)
      f1.edges.push_back({lmap[e[0]], rmap[e[1]], 1});
    f1.normalize();
  }

  const int vc_direct = vertex_cover_number(f1);
  BipartitePattern comp = bipartite_complement(f1, n, m);
  const int vc_comp = vertex_cover_number(comp);
  const bool biclique_case = vc_comp < vc_direct;
  const int k = std::min(vc_direct, vc_comp);
  if (k > cover_cap)
    throw std::length_error("synth_sub_cover: logical cover over cap");
  const BipartitePattern& covered = biclique_case ? comp : f1;

  // lexicographically first minimum cover of `covered` (global vertex ids)
  const int L = n;  // f1 is full-size: global left a -> a, right v -> n + v
  std::vector<int> cover;
  {
    std::vector<std::pair<int, int>> cedges;
    for (const auto& e : covered.edges) cedges.push_back({e[0], L + e[1]});
    std::vector<int> cur;
    auto covers = [&](const std::vector<int>& cand) {
      for (auto [u, v] : cedges)
        if (!std::binary_search(cand.begin(), cand.end(), u) &&
            !std::binary_search(cand.begin(), cand.end(), v))
          return false;
      return true;
    };
    auto rec = [&](auto&& self, int from) -> bool {
      if (int(cur.size()) == k) {
        if (!covers(cur)) return false;
        cover = cur;
        return true;
      }
      for (int v = from; v < n + m; ++v) {
        cur.push_back(v);
        if (self(self, v + 1)) return true;
        cur.pop_back();
      }
      return false;
    };
    rec(rec, 0);
    if (int(cover.size()) != k)
      throw std::logic_error("synth_sub_cover: cover search failed");
  }
  std::vector<int> ka, kb;  // cover vertices per side (f1 vertex ids)
  for (int v : cover)
    (v < n ? ka : kb).push_back(v < n ? v : v - n);

  // types: neighbourhood (w.r.t. E(F1)) in the cover, per outside vertex
  auto type_of_right = [&](int j) {
    std::vector<int> s;
    for (int a : ka)
      if (f1.multiplicity(a, j) > 0) s.push_back(a);
    return s;
  };
  auto type_of_left = [&](int i) {
    std::vector<int> s;
    for (int v : kb)
      if (f1.multiplicity(i, v) > 0) s.push_back(v);
    return s;
  };
  std::map<std::vector<int>, int> cnt_a, cnt_b;  // used types with counts
  for (int j = 0; j < m; ++j)
    if (!std::binary_search(kb.begin(), kb.end(), j)) ++cnt_a[type_of_right(j)];
  for (int i = 0; i < n; ++i)
    if (!std::binary_search(ka.begin(), ka.end(), i)) ++cnt_b[type_of_left(i)];

  struct Side {
    std::vector<std::vector<int>> types;  // used, canonical order, [0] pinned
    std::vector<int> counts;
    int degree = 0;  // number of outside positions
    std::vector<std::vector<Rat>> rows;  // inverse-Vandermonde per variable
  };
  auto make_side = [](std::map<std::vector<int>, int>& cnt, int degree) {
    Side s;
    s.degree = degree;
    std::vector<std::vector<int>> order;
    for (auto& [ty, c] : cnt) order.push_back(ty);
    std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
      return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    for (auto& ty : order) {
      s.types.push_back(ty);
      s.counts.push_back(cnt[ty]);
    }
    std::vector<Rat> pts;
    for (int p = 0; p <= degree; ++p) pts.push_back(Rat(p));
    for (size_t v = 1; v < s.types.size(); ++v)
      s.rows.push_back(vandermonde_inverse_row(pts, s.counts[v]));
    return s;
  };
  Side side_a = make_side(cnt_a, m - int(kb.size()));
  Side side_b = make_side(cnt_b, n - int(ka.size()));

  CircuitBuilder b(n, m, Circuit::Group::SymNM);
  ValuePool pool;

  // tag regions; grid and type ids below stay well under the strides
  constexpr int kTagP = 10, kTagPi = 11, kTagTerm = 12, kTagTotal = 13,
                kTagScale = 14, kTagOut = 15, kTagCoeffA = 16, kTagCoeffB = 17,
                kTagQA = 20000, kTagQB = 40000, kTagFacA = 60000,
                kTagFacB = 2000000, kTagMulA = 4000000, kTagMulB = 6000000,
                kTagWtA = 8000000, kTagWtB = 10000000;

  // Support of a type-product gate: the type's host images (in the type's
  // own vertex order, so relabelled keys stay present verbatim under any
  // permutation) plus the position.
  auto p_support = [&](const std::vector<int>& imgs, int host, bool right_pos) {
    std::vector<int> sup;
    for (int i : imgs) sup.push_back(right_pos ? i : n + i);
    sup.push_back(right_pos ? n + host : host);
    return sup;
  };

  // product gate for one type at one outside position; empty type -> 1
  auto p_gate = [&](const std::vector<int>& imgs, int host, bool right_pos)
      -> int {
    if (imgs.empty()) return one_gate(b);
    std::vector<std::pair<int, int>> factors;
    for (int i : imgs)
      factors.push_back({right_pos ? shared_input(b, n, i, host)
                                   : shared_input(b, n, host, i),
                         1});
    auto sup = p_support(imgs, host, right_pos);
    int g = b.find(kTagP, sup);
    return g >= 0 ? g : b.mul(factors, kTagP, sup);
  };

  // coefficient circuit for one side under a fixed cover injection
  auto side_coeff = [&](const Side& side, const std::vector<int>& same_imgs,
                        const std::vector<int>& other_imgs,
                        const std::vector<int>& iota_sup, bool right_pos,
                        int tagQ, int tagFac, int tagMul, int tagWt,
                        int tagCoeff) -> int {
    // same_imgs: host images of the cover vertices the types live on
    // (ordered like the cover side); other_imgs: images blocking positions.
    if (side.degree == 0) return one_gate(b);
    int found = b.find(tagCoeff, iota_sup);
    if (found >= 0) return found;
    std::vector<int> positions;
    int dom = right_pos ? m : n;
    for (int h = 0; h < dom; ++h)
      if (!std::binary_search(other_imgs.begin(), other_imgs.end(), h))
        positions.push_back(h);
    // host images per type, sorted
    std::vector<std::vector<int>> timgs;
    for (const auto& ty : side.types) {
      std::vector<int> imgs;
      for (int v : ty) {
        auto src = right_pos ? ka : kb;
        auto pos = std::lower_bound(src.begin(), src.end(), v) - src.begin();
        imgs.push_back(same_imgs[pos]);
      }
      timgs.push_back(std::move(imgs));
    }
    const int nvars = int(side.types.size()) - 1;
    std::vector<int> point(std::max(nvars, 0), 0);
    std::vector<std::pair<int, int>> coeff_kids;
    int grid_index = 0;
    while (true) {
      Rat weight(1);
      for (int v = 0; v < nvars; ++v) weight *= side.rows[v][point[v]];
      if (weight != 0) {
        std::vector<std::pair<int, int>> qfactors;
        for (int h : positions) {
          std::vector<std::pair<int, int>> terms;
          for (size_t ty = 0; ty < side.types.size(); ++ty) {
            Rat val = ty == 0 ? Rat(1) : Rat(point[ty - 1]);
            if (val == 0) continue;
            int pg = p_gate(timgs[ty], h, right_pos);
            if (val == 1) {
              terms.push_back({pg, 1});
            } else {
              // type id and grid value are structural (permutation-stable);
              // the support mirrors the underlying product gate
              int mt = tagMul + int(ty) * (side.degree + 1) +
                       int(val.get_num().get_si());
              auto ms = p_support(timgs[ty], h, right_pos);
              int mg = b.find(mt, ms);
              if (mg < 0) mg = b.mul({{pool.get(b, val), 1}, {pg, 1}}, mt, ms);
              terms.push_back({mg, 1});
            }
          }
          std::vector<int> fsup(iota_sup);
          fsup.push_back(right_pos ? n + h : h);
          int fg = b.find(tagFac + grid_index, fsup);
          if (fg < 0)
            fg = terms.empty()
                     ? b.add({{pool.get(b, Rat(0)), 1}}, tagFac + grid_index,
                             fsup)
                     : b.add(terms, tagFac + grid_index, fsup);
          qfactors.push_back({fg, 1});
        }
        int qg = b.find(tagQ + grid_index, iota_sup);
        if (qg < 0) qg = b.mul(qfactors, tagQ + grid_index, iota_sup);
        int wg = b.find(tagWt + grid_index, iota_sup);
        if (wg < 0)
          wg = b.mul({{pool.get(b, weight), 1}, {qg, 1}}, tagWt + grid_index,
                     iota_sup);
        coeff_kids.push_back({wg, 1});
      }
      int v = 0;
      for (; v < nvars; ++v) {
        if (++point[v] <= side.degree) break;
        point[v] = 0;
      }
      ++grid_index;
      if (v == nvars || nvars == 0) break;
    }
    if (coeff_kids.empty()) coeff_kids.push_back({pool.get(b, Rat(0)), 1});
    return b.add(coeff_kids, tagCoeff, iota_sup);
  };

  // enumerate cover injections per side and assemble the terms
  auto inj_a = injections(int(ka.size()), n);
  auto inj_b = injections(int(kb.size()), m);
  std::vector<std::pair<int, int>> total_kids;
  for (const auto& ia : inj_a)
    for (const auto& ib : inj_b) {
      std::vector<int> iota_sup(ia);
      for (int v : ib) iota_sup.push_back(n + v);
      std::vector<int> sa(ia), sb(ib);
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());

      // p_iota: edges inside the cover, plus every uncovered pair when the
      // complement cover was selected (outside part is then a biclique)
      std::vector<std::pair<int, int>> pfac;
      for (size_t x = 0; x < ka.size(); ++x)
        for (size_t y = 0; y < kb.size(); ++y)
          if (f1.multiplicity(ka[x], kb[y]) > 0)
            pfac.push_back({shared_input(b, n, ia[x], ib[y]), 1});
      if (biclique_case)
        for (int i = 0; i < n; ++i)
          if (!std::binary_search(sa.begin(), sa.end(), i))
            for (int j = 0; j < m; ++j)
              if (!std::binary_search(sb.begin(), sb.end(), j))
                pfac.push_back({shared_input(b, n, i, j), 1});
      if (pfac.empty()) pfac.push_back({one_gate(b), 1});
      int pg = b.mul(pfac, kTagPi, iota_sup);

      int ca = side_coeff(side_a, ia, sb, iota_sup, true, kTagQA, kTagFacA,
                          kTagMulA, kTagWtA, kTagCoeffA);
      int cb = side_coeff(side_b, ib, sa, iota_sup, false, kTagQB, kTagFacB,
                          kTagMulB, kTagWtB, kTagCoeffB);
      total_kids.push_back(
          {b.mul({{pg, 1}, {ca, 1}, {cb, 1}}, kTagTerm, iota_sup), 1});
    }
  int total = b.add(total_kids, kTagTotal, {});

  Rat scale(1);
  for (int c : side_a.counts) scale *= factorial(c);
  for (int c : side_b.counts) scale *= factorial(c);
  scale /= Rat(automorphism_count(f1));
  scale *= binomial(n - a0, iso_l) * binomial(m - b0, iso_r);
  int sg = b.constant(scale, kTagScale, {});
  b.set_output(b.mul({{sg, 1}, {total, 1}}, kTagOut, {}));

  SynthReport r;
  r.circuit = b.take();
  r.max_sup_claim = k + 1;
  r.shape_conformant = true;
  r.stats["cover_size"] = std::to_string(k);
  r.stats["case"] = biclique_case ? "biclique" : "independent";
  r.stats["injections"] = std::to_string(inj_a.size() * inj_b.size());
  fill_common_report(r);
  return r;
}

}  // namespace homcirc
