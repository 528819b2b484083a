#include "homcirc/hompoly.hh"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "homcirc/partition.hh"

namespace homcirc {

namespace {

auto single_bag_cert(const BipartitePattern& f) -> TreeDecomposition {
  TreeDecomposition td;
  std::vector<int> bag(f.num_vertices());
  std::iota(bag.begin(), bag.end(), 0);
  td.bags.push_back(bag);
  td.root = 0;
  return td;
}

auto label_globals(const LabelledPattern& p) -> std::vector<int> {
  std::vector<int> out;
  for (int v : p.left_labels) out.push_back(v);
  for (int w : p.right_labels) out.push_back(p.base.left_size + w);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Remaps cert vertex ids and renumbers b's nodes after a's; adds a fresh
// root whose bag is `root_bag`, adjacent to both old roots.
auto join_certs(const TreeDecomposition& a, const TreeDecomposition& b,
                const std::vector<int>& amap, const std::vector<int>& bmap,
                std::vector<int> root_bag) -> TreeDecomposition {
  TreeDecomposition td;
  auto push = [&](const TreeDecomposition& src, const std::vector<int>& vmap) {
    for (const auto& bag : src.bags) {
      std::vector<int> nb;
      for (int v : bag) nb.push_back(vmap[v]);
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
      td.bags.push_back(std::move(nb));
    }
  };
  push(a, amap);
  int off = a.num_nodes();
  push(b, bmap);
  for (auto [x, y] : a.tree_edges) td.tree_edges.push_back({x, y});
  for (auto [x, y] : b.tree_edges) td.tree_edges.push_back({x + off, y + off});
  int fresh = td.num_nodes();
  std::sort(root_bag.begin(), root_bag.end());
  root_bag.erase(std::unique(root_bag.begin(), root_bag.end()),
                 root_bag.end());
  td.bags.push_back(std::move(root_bag));
  td.tree_edges.push_back({fresh, a.root});
  td.tree_edges.push_back({fresh, b.root + off});
  td.root = fresh;
  return td;
}

struct MergeMaps {
  // combined-index -> new-index, per side; combined order is a's vertices
  // followed by b's.
  std::vector<int> left, right;
  int new_left = 0, new_right = 0;
};

auto merge_side(int na, int nb, const std::vector<std::pair<int, int>>& ids)
    -> std::pair<std::vector<int>, int> {
  std::vector<int> parent(na + nb);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [x, y] : ids) parent[find(x)] = find(y);
  std::vector<int> out(na + nb, -1);
  int next = 0;
  std::vector<int> rep_id(na + nb, -1);
  for (int v = 0; v < na + nb; ++v) {
    int rv = find(v);
    if (rep_id[rv] < 0) rep_id[rv] = next++;
    out[v] = rep_id[rv];
  }
  return {out, next};
}

// Glue or disjoint-union of the underlying labelled patterns.  When
// `identify` is set, equally-indexed labels are merged and the arities stay
// (ell, r); otherwise labels concatenate.
auto combine_terms(const HomPolyTerm& a, const HomPolyTerm& b, bool identify)
    -> HomPolyTerm {
  const auto& pa = a.pat;
  const auto& pb = b.pat;
  std::vector<std::pair<int, int>> lids, rids;
  if (identify) {
    for (size_t s = 0; s < pa.left_labels.size(); ++s)
      lids.push_back({pa.left_labels[s], pa.base.left_size + pb.left_labels[s]});
    for (size_t s = 0; s < pa.right_labels.size(); ++s)
      rids.push_back(
          {pa.right_labels[s], pa.base.right_size + pb.right_labels[s]});
  }
  auto [lmap, nl] = merge_side(pa.base.left_size, pb.base.left_size, lids);
  auto [rmap, nr] = merge_side(pa.base.right_size, pb.base.right_size, rids);

  HomPolyTerm out;
  out.coeff = a.coeff * b.coeff;
  out.pat.base.left_size = nl;
  out.pat.base.right_size = nr;
  for (const auto& e : pa.base.edges)
    out.pat.base.edges.push_back({lmap[e[0]], rmap[e[1]], e[2]});
  for (const auto& e : pb.base.edges)
    out.pat.base.edges.push_back(
        {lmap[pa.base.left_size + e[0]], rmap[pa.base.right_size + e[1]], e[2]});
  out.pat.base.normalize();
  for (int v : pa.left_labels) out.pat.left_labels.push_back(lmap[v]);
  if (!identify)
    for (int v : pb.left_labels)
      out.pat.left_labels.push_back(lmap[pa.base.left_size + v]);
  for (int w : pa.right_labels) out.pat.right_labels.push_back(rmap[w]);
  if (!identify)
    for (int w : pb.right_labels)
      out.pat.right_labels.push_back(rmap[pa.base.right_size + w]);

  if (a.cert && b.cert) {
    auto gmap = [&](const LabelledPattern& p, const std::vector<int>& lm,
                    const std::vector<int>& rm, int loff, int roff) {
      std::vector<int> m(p.base.num_vertices());
      for (int v = 0; v < p.base.left_size; ++v) m[v] = lm[loff + v];
      for (int w = 0; w < p.base.right_size; ++w)
        m[p.base.left_size + w] = nl + rm[roff + w];
      return m;
    };
    auto amap = gmap(pa, lmap, rmap, 0, 0);
    auto bmap = gmap(pb, lmap, rmap, pa.base.left_size, pa.base.right_size);
    out.cert = join_certs(*a.cert, *b.cert, amap, bmap, label_globals(out.pat));
  }
  return out;
}

auto unlabel_term(HomPolyTerm t, int i) -> HomPolyTerm {
  t.pat.left_labels.erase(t.pat.left_labels.begin() + i);
  return t;
}

auto eval_term(const LabelledPattern& p, const std::vector<int>& v,
               const std::vector<int>& w, const WeightedHost& g) -> Rat {
  const int nl = p.base.left_size, nr = p.base.right_size;
  std::vector<int> pin(nl + nr, -1);
  for (size_t s = 0; s < p.left_labels.size(); ++s) {
    int& slot = pin[p.left_labels[s]];
    if (slot >= 0 && slot != v[s]) return Rat(0);
    slot = v[s];
  }
  for (size_t s = 0; s < p.right_labels.size(); ++s) {
    int& slot = pin[nl + p.right_labels[s]];
    if (slot >= 0 && slot != w[s]) return Rat(0);
    slot = w[s];
  }
  Rat total(1);
  // Edges with both ends pinned contribute directly; the rest split into
  // connected components over the unpinned vertices, each summed on its own.
  std::vector<int> parent(nl + nr);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : p.base.edges) {
    int a = e[0], b = nl + e[1];
    if (pin[a] >= 0 && pin[b] >= 0) {
      const Rat& x = g.at(pin[a], pin[b]);
      for (int t = 0; t < e[2]; ++t) total *= x;
    } else if (pin[a] < 0 && pin[b] < 0) {
      parent[find(a)] = find(b);
    }
  }
  std::map<int, std::vector<int>> comp_edges;  // rep -> edge indices
  std::map<int, std::vector<int>> comp_verts;
  for (int u = 0; u < nl + nr; ++u)
    if (pin[u] < 0) comp_verts[find(u)].push_back(u);
  for (size_t ei = 0; ei < p.base.edges.size(); ++ei) {
    const auto& e = p.base.edges[ei];
    int a = e[0], b = nl + e[1];
    if (pin[a] >= 0 && pin[b] >= 0) continue;
    comp_edges[find(pin[a] < 0 ? a : b)].push_back(int(ei));
  }
  for (const auto& [rep, verts] : comp_verts) {
    std::vector<int> asg(nl + nr, -1);
    Rat sum(0);
    auto rec = [&](auto&& self, size_t idx) -> void {
      if (idx == verts.size()) {
        Rat prod(1);
        for (int ei : comp_edges[rep]) {
          const auto& e = p.base.edges[ei];
          int a = e[0], b = nl + e[1];
          int ia = pin[a] >= 0 ? pin[a] : asg[a];
          int ib = pin[b] >= 0 ? pin[b] : asg[b];
          const Rat& x = g.at(ia, ib);
          for (int t = 0; t < e[2]; ++t) prod *= x;
        }
        sum += prod;
        return;
      }
      int u = verts[idx];
      int range = u < nl ? g.n : g.m;
      for (int val = 0; val < range; ++val) {
        asg[u] = val;
        self(self, idx + 1);
      }
      asg[u] = -1;
    };
    rec(rec, 0);
    total *= sum;
  }
  return total;
}

auto pattern_key(const LabelledPattern& p) -> std::string {
  std::string k = std::to_string(p.base.left_size) + "|" +
                  std::to_string(p.base.right_size) + "|";
  for (const auto& e : p.base.edges)
    k += std::to_string(e[0]) + "," + std::to_string(e[1]) + "," +
         std::to_string(e[2]) + ";";
  k += "|";
  for (int v : p.left_labels) k += std::to_string(v) + ",";
  k += "|";
  for (int w : p.right_labels) k += std::to_string(w) + ",";
  return k;
}

// Invariant fingerprint used to group candidates before the expensive
// isomorphism test.
auto iso_bucket(const LabelledPattern& p) -> std::string {
  std::vector<int> dl, dr;
  for (int v = 0; v < p.base.left_size; ++v) dl.push_back(p.base.degree_left(v));
  for (int w = 0; w < p.base.right_size; ++w)
    dr.push_back(p.base.degree_right(w));
  std::sort(dl.begin(), dl.end());
  std::sort(dr.begin(), dr.end());
  std::string k = std::to_string(p.base.left_size) + "|" +
                  std::to_string(p.base.right_size) + "|";
  for (int d : dl) k += std::to_string(d) + ",";
  k += "|";
  for (int d : dr) k += std::to_string(d) + ",";
  k += "|";
  for (size_t s = 0; s < p.left_labels.size(); ++s)
    k += std::to_string(p.base.degree_left(p.left_labels[s])) + ",";
  k += "|";
  for (size_t s = 0; s < p.right_labels.size(); ++s)
    k += std::to_string(p.base.degree_right(p.right_labels[s])) + ",";
  return k;
}

auto poly_apply(const std::vector<Rat>& coeffs, const HomPolyExpr& base)
    -> HomPolyExpr {
  HomPolyExpr result = HomPolyExpr::zero(base.n, base.m, base.ell, base.r);
  HomPolyExpr power = HomPolyExpr::one(base.n, base.m, base.ell, base.r);
  for (size_t d = 0; d < coeffs.size(); ++d) {
    if (d > 0) power = normalize(glue(power, base));
    if (coeffs[d] != 0)
      result = expr_add(result, expr_scale(power, coeffs[d]));
  }
  return normalize(result);
}

auto poly_through(int npoints, const Rat& at_zero, const Rat& elsewhere)
    -> std::vector<Rat> {
  std::vector<std::pair<Rat, Rat>> pts;
  pts.push_back({Rat(0), at_zero});
  for (int x = 1; x < npoints; ++x) pts.push_back({Rat(x), elsewhere});
  return lagrange_coeffs(pts);
}

}  // namespace

auto HomPolyExpr::one(int n, int m, int ell, int r) -> HomPolyExpr {
  HomPolyExpr e{n, m, ell, r, {}};
  HomPolyTerm t;
  t.coeff = Rat(1);
  t.pat.base.left_size = ell;
  t.pat.base.right_size = r;
  for (int s = 0; s < ell; ++s) t.pat.left_labels.push_back(s);
  for (int s = 0; s < r; ++s) t.pat.right_labels.push_back(s);
  t.cert = single_bag_cert(t.pat.base);
  e.terms.push_back(std::move(t));
  return e;
}

auto HomPolyExpr::zero(int n, int m, int ell, int r) -> HomPolyExpr {
  return HomPolyExpr{n, m, ell, r, {}};
}

auto HomPolyExpr::eq_gadget(int n, int m, int ell, int r, int i, int j)
    -> HomPolyExpr {
  if (i == j || i < 0 || j < 0 || i >= ell || j >= ell)
    throw std::invalid_argument("eq_gadget: bad label slots");
  HomPolyExpr e{n, m, ell, r, {}};
  HomPolyTerm t;
  t.coeff = Rat(1);
  t.pat.base.left_size = ell - 1;
  t.pat.base.right_size = r;
  int next = 0;
  t.pat.left_labels.assign(ell, -1);
  for (int s = 0; s < ell; ++s) {
    if (s == std::max(i, j))
      t.pat.left_labels[s] = t.pat.left_labels[std::min(i, j)];
    else
      t.pat.left_labels[s] = next++;
  }
  for (int s = 0; s < r; ++s) t.pat.right_labels.push_back(s);
  t.cert = single_bag_cert(t.pat.base);
  e.terms.push_back(std::move(t));
  return e;
}

auto term_cert_ok(const HomPolyTerm& t, int k) -> std::optional<std::string> {
  if (!t.cert) return "no certificate";
  auto val = validate_tree_decomposition(t.pat.base, *t.cert);
  if (!val.ok) return val.message;
  if (val.width + 1 > k)
    return "bag size " + std::to_string(val.width + 1) + " exceeds " +
           std::to_string(k);
  const auto& rb = t.cert->bags[t.cert->root];
  for (int v : label_globals(t.pat))
    if (!std::binary_search(rb.begin(), rb.end(), v))
      return "root bag misses labelled vertex " + std::to_string(v);
  return std::nullopt;
}

auto normalize(HomPolyExpr e) -> HomPolyExpr {
  std::map<std::string, std::vector<size_t>> buckets;
  std::vector<HomPolyTerm> out;
  for (auto& t : e.terms) {
    if (t.coeff == 0) continue;
    bool merged = false;
    std::string bk = t.pat.base.num_vertices() <= 10 ? iso_bucket(t.pat)
                                                     : pattern_key(t.pat);
    for (size_t idx : buckets[bk]) {
      bool same = t.pat.base.num_vertices() <= 10
                      ? labelled_isomorphic(t.pat, out[idx].pat)
                      : t.pat == out[idx].pat;
      if (same) {
        out[idx].coeff += t.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) {
      buckets[bk].push_back(out.size());
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const HomPolyTerm& t) { return t.coeff == 0; });
  e.terms = std::move(out);
  return e;
}

auto expr_add(const HomPolyExpr& a, const HomPolyExpr& b) -> HomPolyExpr {
  if (a.n != b.n || a.m != b.m || a.ell != b.ell || a.r != b.r)
    throw std::invalid_argument("expr_add: shape mismatch");
  HomPolyExpr e = a;
  e.terms.insert(e.terms.end(), b.terms.begin(), b.terms.end());
  return normalize(std::move(e));
}

auto expr_scale(HomPolyExpr e, const Rat& c) -> HomPolyExpr {
  if (c == 0) {
    e.terms.clear();
    return e;
  }
  for (auto& t : e.terms) t.coeff *= c;
  return e;
}

auto eval_expr(const HomPolyExpr& e, const std::vector<int>& v,
               const std::vector<int>& w, const WeightedHost& g) -> Rat {
  if (int(v.size()) != e.ell || int(w.size()) != e.r)
    throw std::invalid_argument("eval_expr: tuple arity mismatch");
  if (g.n != e.n || g.m != e.m)
    throw std::invalid_argument("eval_expr: host size mismatch");
  for (int x : v)
    if (x < 0 || x >= e.n) throw std::out_of_range("eval_expr: left tuple");
  for (int x : w)
    if (x < 0 || x >= e.m) throw std::out_of_range("eval_expr: right tuple");
  Rat total(0);
  for (const auto& t : e.terms) total += t.coeff * eval_term(t.pat, v, w, g);
  return total;
}

auto swap_expr(const HomPolyExpr& e) -> HomPolyExpr {
  HomPolyExpr out{e.m, e.n, e.r, e.ell, {}};
  for (const auto& t : e.terms) {
    HomPolyTerm s;
    s.coeff = t.coeff;
    s.pat.base.left_size = t.pat.base.right_size;
    s.pat.base.right_size = t.pat.base.left_size;
    for (const auto& ed : t.pat.base.edges)
      s.pat.base.edges.push_back({ed[1], ed[0], ed[2]});
    s.pat.base.normalize();
    s.pat.left_labels = t.pat.right_labels;
    s.pat.right_labels = t.pat.left_labels;
    if (t.cert) {
      TreeDecomposition td = *t.cert;
      int ol = t.pat.base.left_size;
      int nl = s.pat.base.left_size;
      for (auto& bag : td.bags) {
        for (int& x : bag) x = x < ol ? nl + x : x - ol;
        std::sort(bag.begin(), bag.end());
      }
      s.cert = std::move(td);
    }
    out.terms.push_back(std::move(s));
  }
  return out;
}

auto unlabel(const HomPolyExpr& e, int i) -> HomPolyExpr {
  if (i < 0 || i >= e.ell) throw std::invalid_argument("unlabel: bad slot");
  HomPolyExpr out{e.n, e.m, e.ell - 1, e.r, {}};
  for (const auto& t : e.terms) out.terms.push_back(unlabel_term(t, i));
  return out;
}

auto restricted_sum(const HomPolyExpr& e, int i, const std::set<int>& j)
    -> HomPolyExpr {
  if (j.count(i)) throw std::invalid_argument("restricted_sum: i in J");
  if (j.empty()) return unlabel(e, i);
  HomPolyExpr ind = HomPolyExpr::zero(e.n, e.m, e.ell, e.r);
  for (int jj : j)
    ind = expr_add(ind, HomPolyExpr::eq_gadget(e.n, e.m, e.ell, e.r, i, jj));
  HomPolyExpr delta = poly_apply(poly_through(e.ell + 1, Rat(1), Rat(0)), ind);
  return normalize(unlabel(glue(delta, e), i));
}

auto tensor(const HomPolyExpr& a, const HomPolyExpr& b) -> HomPolyExpr {
  if (a.n != b.n || a.m != b.m)
    throw std::invalid_argument("tensor: host size mismatch");
  HomPolyExpr out{a.n, a.m, a.ell + b.ell, a.r + b.r, {}};
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms)
      out.terms.push_back(combine_terms(ta, tb, false));
  return out;
}

auto glue(const HomPolyExpr& a, const HomPolyExpr& b) -> HomPolyExpr {
  if (a.n != b.n || a.m != b.m || a.ell != b.ell || a.r != b.r)
    throw std::invalid_argument("glue: shape mismatch");
  HomPolyExpr out{a.n, a.m, a.ell, a.r, {}};
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms)
      out.terms.push_back(combine_terms(ta, tb, true));
  return out;
}

auto product(const HomPolyExpr& e0, int i, int max_n, int max_terms)
    -> HomPolyExpr {
  if (i < 0 || i >= e0.ell) throw std::invalid_argument("product: bad slot");
  HomPolyExpr e = normalize(e0);
  const int n = e.n;
  if (n == 0) return HomPolyExpr::one(e.n, e.m, e.ell - 1, e.r);
  if (e.terms.empty()) return HomPolyExpr::zero(e.n, e.m, e.ell - 1, e.r);
  const int tn = int(e.terms.size());
  if (n > max_n || tn > max_terms)
    throw std::domain_error(
        "product: expansion cap exceeded (n=" + std::to_string(n) +
        ", terms=" + std::to_string(tn) + "); the construction is "
        "exponential in n by design");

  // Compositions of n into tn parts; one per function orbit.
  std::vector<std::vector<int>> lambdas;
  std::vector<int> cur(tn, 0);
  auto comp = [&](auto&& self, int pos, int left) -> void {
    if (pos == tn - 1) {
      cur[pos] = left;
      lambdas.push_back(cur);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      cur[pos] = c;
      self(self, pos + 1, left - c);
    }
  };
  comp(comp, 0, n);

  auto partitions = enumerate_partitions(n);
  std::vector<Rat> mus;
  for (const auto& pi : partitions) mus.push_back(moebius(pi));

  HomPolyExpr out = HomPolyExpr::zero(e.n, e.m, e.ell - 1, e.r);
  std::vector<HomPolyTerm> acc;
  for (const auto& lam : lambdas) {
    Rat alpha(1);
    for (int t = 0; t < tn; ++t)
      for (int c = 0; c < lam[t]; ++c) alpha *= e.terms[t].coeff;
    // Orbit representative: block-wise assignment.
    std::vector<int> rep;
    for (int t = 0; t < tn; ++t) rep.insert(rep.end(), lam[t], t);
    // Pairs (g, h) with g o h = rep, counted directly.
    long beta = 0;
    {
      std::vector<int> h(n);
      std::iota(h.begin(), h.end(), 0);
      do {
        std::vector<int> g(n), counts(tn, 0);
        for (int x = 0; x < n; ++x) g[h[x]] = rep[x];
        for (int x = 0; x < n; ++x) ++counts[g[x]];
        bool in_orbit = true;
        for (int t = 0; t < tn; ++t)
          if (counts[t] != lam[t]) in_orbit = false;
        if (in_orbit) ++beta;
      } while (std::next_permutation(h.begin(), h.end()));
    }
    Rat scale = alpha / Rat(beta);

    // All g in the orbit.
    std::vector<std::vector<int>> orbit;
    std::vector<int> gcur(n, -1), left(lam);
    auto geng = [&](auto&& self, int pos) -> void {
      if (pos == n) {
        orbit.push_back(gcur);
        return;
      }
      for (int t = 0; t < tn; ++t) {
        if (left[t] == 0) continue;
        --left[t];
        gcur[pos] = t;
        self(self, pos + 1);
        ++left[t];
      }
    };
    geng(geng, 0);

    for (const auto& g : orbit) {
      for (size_t pidx = 0; pidx < partitions.size(); ++pidx) {
        const auto& pi = partitions[pidx];
        HomPolyTerm composite;
        bool first_block = true;
        for (const auto& block : pi.blocks) {
          HomPolyTerm bt;
          bool first = true;
          for (int v : block) {
            HomPolyTerm copy = e.terms[g[v]];
            copy.coeff = Rat(1);
            bt = first ? std::move(copy) : combine_terms(bt, copy, true);
            first = false;
          }
          bt = unlabel_term(std::move(bt), i);
          composite = first_block ? std::move(bt)
                                  : combine_terms(composite, bt, true);
          first_block = false;
        }
        composite.coeff = scale * mus[pidx];
        acc.push_back(std::move(composite));
      }
    }
  }
  out.terms = std::move(acc);
  return normalize(std::move(out));
}

auto restricted_product(const HomPolyExpr& e, int i, const std::set<int>& j,
                        int max_n, int max_terms) -> HomPolyExpr {
  if (j.count(i)) throw std::invalid_argument("restricted_product: i in J");
  if (j.empty()) return product(e, i, max_n, max_terms);
  int jj = *j.rbegin();
  std::set<int> rest(j.begin(), std::prev(j.end()));
  HomPolyExpr sum_d = HomPolyExpr::zero(e.n, e.m, e.ell - 1, e.r);
  for (int jp : rest)
    sum_d = expr_add(
        sum_d, unlabel(HomPolyExpr::eq_gadget(e.n, e.m, e.ell, e.r, jp, jj), i));
  sum_d = expr_scale(std::move(sum_d), Rat(1) / Rat(e.n));
  HomPolyExpr psi = poly_apply(poly_through(e.ell + 1, Rat(0), Rat(1)), sum_d);

  HomPolyExpr base = restricted_product(e, i, rest, max_n, max_terms);
  HomPolyExpr bumped = restricted_product(
      expr_add(e, HomPolyExpr::eq_gadget(e.n, e.m, e.ell, e.r, i, jj)), i,
      rest, max_n, max_terms);
  HomPolyExpr one_e = HomPolyExpr::one(e.n, e.m, e.ell - 1, e.r);
  HomPolyExpr res =
      expr_add(glue(psi, base),
               glue(expr_add(one_e, expr_scale(psi, Rat(-1))),
                    expr_add(bumped, expr_scale(base, Rat(-1)))));
  return normalize(std::move(res));
}

auto lagrange_coeffs(const std::vector<std::pair<Rat, Rat>>& points)
    -> std::vector<Rat> {
  const size_t k = points.size();
  std::vector<Rat> result(k, Rat(0));
  for (size_t t = 0; t < k; ++t) {
    std::vector<Rat> basis{Rat(1)};
    Rat denom(1);
    for (size_t u = 0; u < k; ++u) {
      if (u == t) continue;
      denom *= points[t].first - points[u].first;
      std::vector<Rat> next(basis.size() + 1, Rat(0));
      for (size_t d = 0; d < basis.size(); ++d) {
        next[d] += basis[d] * (-points[u].first);
        next[d + 1] += basis[d];
      }
      basis = std::move(next);
    }
    Rat w = points[t].second / denom;
    for (size_t d = 0; d < basis.size(); ++d) result[d] += w * basis[d];
  }
  return result;
}

auto exprs_agree(const HomPolyExpr& a, const HomPolyExpr& b,
                 const std::vector<WeightedHost>& hosts) -> bool {
  if (a.n != b.n || a.m != b.m || a.ell != b.ell || a.r != b.r) return false;
  std::vector<int> v(a.ell, 0), w(a.r, 0);
  for (const auto& g : hosts) {
    auto tuples = [&](auto&& self, int pos) -> bool {
      if (pos == a.ell + a.r)
        return eval_expr(a, v, w, g) == eval_expr(b, v, w, g);
      int range = pos < a.ell ? a.n : a.m;
      int* slot = pos < a.ell ? &v[pos] : &w[pos - a.ell];
      for (int x = 0; x < range; ++x) {
        *slot = x;
        if (!self(self, pos + 1)) return false;
      }
      return true;
    };
    if (!tuples(tuples, 0)) return false;
  }
  return true;
}

}  // namespace homcirc
