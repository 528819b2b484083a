#include "homcirc/immanant.hh"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "homcirc/synth.hh"

namespace homcirc {

namespace {

// Shared Const gates, one per distinct value.
struct ConstPool {
  std::map<std::string, int> ids;

  auto get(CircuitBuilder& b, const Rat& v) -> int {
    auto key = rat_str(v);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int g = b.constant(v, b.fresh_tag(), {});
    ids.emplace(key, g);
    return g;
  }
};

// Determinant of the given entry gates by the Faddeev-LeVerrier trace
// recurrence.  Tags are tag_base + 10*step + role with supports (i,j),
// (i,l,j) or empty, so the gate keys relabel onto each other under the
// diagonal Sym_n action whenever the entry gates do.
auto emit_fl_det(CircuitBuilder& b, ConstPool& pool,
                 const std::vector<std::vector<int>>& entry, int n,
                 int tag_base) -> int {
  auto m_prev = entry;
  int c_prev = -1;
  for (int k = 1; k <= n; ++k) {
    int t = tag_base + 10 * k;
    if (k > 1) {
      // N = M_{k-1} + c_{k-1} I, then M_k = A * N.
      auto nmat = m_prev;
      for (int i = 0; i < n; ++i)
        nmat[i][i] = b.add({{m_prev[i][i], 1}, {c_prev, 1}}, t, {i, i});
      std::vector<std::vector<int>> mk(n, std::vector<int>(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          std::vector<std::pair<int, int>> kids;
          for (int l = 0; l < n; ++l)
            kids.push_back({b.mul({{entry[i][l], 1}, {nmat[l][j], 1}}, t + 1,
                                  {i, l, j}),
                            1});
          mk[i][j] = b.add(kids, t + 2, {i, j});
        }
      m_prev = std::move(mk);
    }
    std::vector<std::pair<int, int>> diag;
    for (int i = 0; i < n; ++i) diag.push_back({m_prev[i][i], 1});
    int tr = b.add(diag, t + 3, {});
    c_prev = b.mul({{pool.get(b, Rat(-1) / Rat(k)), 1}, {tr, 1}}, t + 4, {});
  }
  int sign = n % 2 == 0 ? 1 : -1;
  return b.mul({{pool.get(b, Rat(sign)), 1}, {c_prev, 1}},
               tag_base + 10 * (n + 1), {});
}

auto strip_zeros(std::vector<int> v) -> std::vector<int> {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

auto mn_rec(std::vector<int> lam, std::vector<int> rho,
            std::map<std::pair<std::vector<int>, std::vector<int>>, long long>&
                memo) -> long long {
  lam = strip_zeros(std::move(lam));
  rho = strip_zeros(std::move(rho));
  if (lam.empty()) return 1;
  auto key = std::pair{lam, rho};
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  const int r = rho[0];
  std::vector<int> rest(rho.begin() + 1, rho.end());
  long long total = 0;
  const int len = int(lam.size());
  for (int s = 0; s < len; ++s)
    for (int e = s; e < len; ++e) {
      std::vector<int> mu = lam;
      for (int i = s; i < e; ++i) mu[i] = lam[i + 1] - 1;
      mu[e] = lam[s] - r + (e - s);
      bool ok = true;
      for (int i = 0; i < len && ok; ++i) {
        if (mu[i] < 0) ok = false;
        if (i + 1 < len && mu[i] < mu[i + 1]) ok = false;
      }
      if (!ok) continue;
      long long sub = mn_rec(mu, rest, memo);
      total += (e - s) % 2 == 0 ? sub : -sub;
    }
  memo.emplace(key, total);
  return total;
}

// All directed cycles of length l on [n], rotated to start at the minimum
// vertex; length 1 means a self-loop.
auto cycles_of_length(int n, int l) -> std::vector<std::vector<int>> {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self) -> void {
    if (int(cur.size()) == l) {
      out.push_back(cur);
      return;
    }
    for (int v = cur[0] + 1; v < n; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      cur.push_back(v);
      self(self);
      cur.pop_back();
      used[v] = 0;
    }
  };
  for (int v0 = 0; v0 + l <= n; ++v0) {
    cur = {v0};
    std::fill(used.begin(), used.end(), 0);
    used[v0] = 1;
    rec(rec);
  }
  return out;
}

auto cycle_edges(const std::vector<int>& cyc)
    -> std::vector<std::pair<int, int>> {
  std::vector<std::pair<int, int>> e;
  for (size_t i = 0; i < cyc.size(); ++i)
    e.push_back({cyc[i], cyc[(i + 1) % cyc.size()]});
  return e;
}

struct Calibration {
  std::vector<std::vector<int>> index_set;  // the K tuples
  std::vector<Rat> chi;                     // one per K tuple
};

// Exact Gaussian elimination; returns a particular solution (free variables
// zero) or nullopt when inconsistent.
auto solve_exact(std::vector<std::vector<Rat>> a, std::vector<Rat> b)
    -> std::optional<std::vector<Rat>> {
  const int rows = int(a.size());
  const int cols = rows ? int(a[0].size()) : 0;
  std::vector<int> pivot_col(rows, -1);
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = -1;
    for (int r2 = rank; r2 < rows; ++r2)
      if (a[r2][c] != 0) {
        p = r2;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[rank]);
    std::swap(b[p], b[rank]);
    Rat inv = Rat(1) / a[rank][c];
    for (int c2 = c; c2 < cols; ++c2) a[rank][c2] *= inv;
    b[rank] *= inv;
    for (int r2 = 0; r2 < rows; ++r2) {
      if (r2 == rank || a[r2][c] == 0) continue;
      Rat f = a[r2][c];
      for (int c2 = c; c2 < cols; ++c2) a[r2][c2] -= f * a[rank][c2];
      b[r2] -= f * b[rank];
    }
    pivot_col[rank] = c;
    ++rank;
  }
  for (int r2 = rank; r2 < rows; ++r2)
    if (b[r2] != 0) return std::nullopt;
  std::vector<Rat> x(cols, Rat(0));
  for (int r2 = 0; r2 < rank; ++r2) x[pivot_col[r2]] = b[r2];
  return x;
}

// Coefficients (by exponent) of binomial(x, k) as a polynomial in x.
auto binom_poly(int k) -> std::vector<Rat> {
  std::vector<Rat> p{Rat(1)};
  for (int t = 0; t < k; ++t) {
    std::vector<Rat> q(p.size() + 1, Rat(0));
    for (size_t d = 0; d < p.size(); ++d) {
      q[d] += p[d] * Rat(-t);
      q[d + 1] += p[d];
    }
    p = std::move(q);
  }
  Rat f = Rat(1) / factorial(k);
  for (auto& c : p) c *= f;
  return p;
}

// The eta expansion: monomial coefficients of prod_l binom(alpha_l, k_l) by
// exponent tuple (i_1..i_m).
auto eta_expand(const std::vector<int>& kt)
    -> std::map<std::vector<int>, Rat> {
  const int m = int(kt.size());
  std::map<std::vector<int>, Rat> acc;
  acc[std::vector<int>(m, 0)] = Rat(1);
  for (int l = 0; l < m; ++l) {
    auto poly = binom_poly(kt[l]);
    std::map<std::vector<int>, Rat> next;
    for (const auto& [expo, c] : acc)
      for (size_t d = 0; d < poly.size(); ++d) {
        if (poly[d] == 0) continue;
        auto e2 = expo;
        e2[l] += int(d);
        next[e2] += c * poly[d];
      }
    acc = std::move(next);
  }
  std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
  return acc;
}

auto calibrate(const IntegerPartition& lam, int m) -> Calibration {
  const int n = lam.n();
  const int r = lam.parts.empty() ? 0 : lam.parts[0];
  Calibration cal;
  {
    std::vector<int> kt(m, 0);
    int lo = std::max(0, m - r + 1);
    auto rec = [&](auto&& self, int l, int wsum) -> void {
      if (l == m) {
        if (wsum >= lo) cal.index_set.push_back(kt);
        return;
      }
      for (int k = 0; (l + 1) * k + wsum <= m; ++k) {
        kt[l] = k;
        self(self, l + 1, wsum + (l + 1) * k);
      }
      kt[l] = 0;
    };
    rec(rec, 0, 0);
  }
  auto classes = integer_partitions(n);
  std::vector<std::vector<Rat>> a;
  std::vector<Rat> b;
  for (const auto& cls : classes) {
    std::vector<int> alpha(m + 1, 0);
    for (int part : cls.parts)
      if (part <= m) ++alpha[part];
    std::vector<Rat> row;
    for (const auto& kt : cal.index_set) {
      Rat prod(1);
      for (int l = 1; l <= m; ++l) prod *= binomial(alpha[l], kt[l - 1]);
      row.push_back(prod);
    }
    a.push_back(std::move(row));
    int sign = (n - cls.num_parts()) % 2 == 0 ? 1 : -1;
    b.push_back(Rat(long(sign) * long(character_value(lam, cls.parts))));
  }
  auto sol = solve_exact(std::move(a), std::move(b));
  if (!sol)
    throw std::runtime_error(
        "immanant calibration failed: the classwise coefficient system is "
        "inconsistent");
  cal.chi = std::move(*sol);
  return cal;
}

// Emits the interpolated coefficient-extraction circuit for imm_{f_I};
// returns the root gate.  next_base is advanced past the tags used.
auto emit_imm_fI(CircuitBuilder& b, ConstPool& pool,
                 const std::vector<std::vector<int>>& xin,
                 const std::vector<int>& index, int n, int& next_base,
                 std::map<std::string, std::string>* stats) -> int {
  auto family = enumerate_cycle_covers(n, index);
  // Interpolation slots: one variable per cycle, degree bound = its length.
  struct Slot {
    int len;
    std::vector<Rat> row;  // inverse-Vandermonde row for the target degree
  };
  std::vector<Slot> slots;
  for (size_t l = 1; l <= index.size(); ++l) {
    if (index[l - 1] == 0) continue;
    std::vector<Rat> pts;
    for (int p = 0; p <= int(l); ++p) pts.push_back(Rat(p));
    auto row = vandermonde_inverse_row(pts, int(l));
    for (int k = 0; k < index[l - 1]; ++k)
      slots.push_back({int(l), row});
  }

  // Pass 1: group grid points by the decorated entry matrix they induce and
  // accumulate interpolation weights.
  struct Bucket {
    Rat weight = Rat(0);
    std::map<std::pair<int, int>, Rat> consts;
  };
  std::map<std::string, Bucket> buckets;
  for (const auto& tup : family.tuples) {
    std::vector<int> point(slots.size(), 0);
    for (;;) {
      Rat w(1);
      for (size_t s = 0; s < slots.size(); ++s) w *= slots[s].row[point[s]];
      if (w != 0) {
        std::map<std::pair<int, int>, Rat> consts;
        for (size_t s = 0; s < slots.size(); ++s)
          for (auto e : cycle_edges(tup[s])) {
            consts.try_emplace(e, Rat(1)).first->second *= Rat(point[s]);
          }
        std::string sig;
        for (const auto& [e, c] : consts)
          sig += std::to_string(e.first) + "," + std::to_string(e.second) +
                 "=" + rat_str(c) + ";";
        auto& bk = buckets[sig];
        bk.weight += w;
        bk.consts = std::move(consts);
      }
      size_t s = 0;
      while (s < slots.size() && point[s] == slots[s].len) point[s++] = 0;
      if (s == slots.size()) break;
      ++point[s];
    }
  }

  // Pass 2: one determinant subcircuit per surviving decorated matrix.
  std::vector<std::pair<int, int>> terms;
  long dets = 0;
  for (const auto& [sig, bk] : buckets) {
    if (bk.weight == 0) continue;
    ++dets;
    int base = next_base;
    std::vector<std::vector<int>> entry(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto it = bk.consts.find({i, j});
        if (it == bk.consts.end())
          entry[i][j] = xin[i][j];
        else if (it->second == 0)
          entry[i][j] = pool.get(b, Rat(0));
        else if (it->second == 1)
          entry[i][j] = xin[i][j];
        else
          entry[i][j] =
              b.mul({{pool.get(b, it->second), 1}, {xin[i][j], 1}}, base,
                    {i, j});
      }
    int det = emit_fl_det(b, pool, entry, n, base);
    terms.push_back(
        {b.mul({{pool.get(b, bk.weight), 1}, {det, 1}}, base + 10 * (n + 2),
               {}),
         1});
    next_base += 10 * (n + 3);
  }
  if (stats) {
    (*stats)["tuples"] = std::to_string(family.tuples.size());
    (*stats)["grid_buckets"] = std::to_string(buckets.size());
    (*stats)["determinants"] = std::to_string(dets);
  }
  if (terms.empty()) return pool.get(b, Rat(0));
  int out = b.add(terms, next_base, {});
  next_base += 1;
  return out;
}

auto make_inputs(CircuitBuilder& b, int n) -> std::vector<std::vector<int>> {
  std::vector<std::vector<int>> xin(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) xin[i][j] = b.input(i, j, 1, {i, j});
  return xin;
}

}  // namespace

auto IntegerPartition::n() const -> int {
  return std::accumulate(parts.begin(), parts.end(), 0);
}

auto IntegerPartition::valid() const -> bool {
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) return false;
    if (i > 0 && parts[i] > parts[i - 1]) return false;
  }
  return true;
}

auto integer_partitions(int n) -> std::vector<IntegerPartition> {
  std::vector<IntegerPartition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left, int maxp) -> void {
    if (left == 0) {
      out.push_back({cur});
      return;
    }
    for (int p = std::min(left, maxp); p >= 1; --p) {
      cur.push_back(p);
      self(self, left - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

auto cycle_type(const std::vector<int>& perm) -> std::vector<int> {
  std::vector<char> seen(perm.size(), 0);
  std::vector<int> type;
  for (size_t v = 0; v < perm.size(); ++v) {
    if (seen[v]) continue;
    int len = 0;
    for (size_t u = v; !seen[u]; u = perm[u]) {
      seen[u] = 1;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.rbegin(), type.rend());
  return type;
}

auto conjugacy_class_size(const std::vector<int>& type) -> Rat {
  int n = std::accumulate(type.begin(), type.end(), 0);
  Rat denom(1);
  std::map<int, int> mult;
  for (int l : type) ++mult[l];
  for (auto [l, c] : mult) {
    for (int t = 0; t < c; ++t) denom *= Rat(l);
    denom *= factorial(c);
  }
  return factorial(n) / denom;
}

auto character_value(const IntegerPartition& lam, const std::vector<int>& type)
    -> long long {
  int tn = std::accumulate(type.begin(), type.end(), 0);
  if (lam.n() != tn)
    throw std::invalid_argument("character_value: size mismatch");
  static std::map<std::pair<std::vector<int>, std::vector<int>>, long long>
      memo;
  auto t = type;
  std::sort(t.rbegin(), t.rend());
  return mn_rec(lam.parts, t, memo);
}

auto brute_force_immanant(const IntegerPartition& lam, const WeightedHost& a)
    -> Rat {
  const int n = lam.n();
  if (a.n != n || a.m != n)
    throw std::invalid_argument("brute_force_immanant: matrix size mismatch");
  if (n > 8) throw std::domain_error("brute_force_immanant: n > 8");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rat total(0);
  do {
    Rat prod{long(character_value(lam, cycle_type(perm)))};
    if (prod != 0)
      for (int i = 0; i < n; ++i) prod *= a.at(i, perm[i]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

auto synth_symmetric_determinant(int n) -> Circuit {
  if (n < 1) throw std::invalid_argument("synth_symmetric_determinant: n < 1");
  CircuitBuilder b(n, n, Circuit::Group::SymN);
  ConstPool pool;
  auto xin = make_inputs(b, n);
  b.set_output(emit_fl_det(b, pool, xin, n, 100));
  return b.take();
}

auto enumerate_cycle_covers(int n, const std::vector<int>& index, long cap)
    -> CycleTupleFamily {
  CycleTupleFamily fam;
  fam.n = n;
  fam.index = index;
  fam.bound = Rat(1);
  for (size_t l = 1; l <= index.size(); ++l) {
    if (index[l - 1] < 0)
      throw std::invalid_argument("enumerate_cycle_covers: negative count");
    Rat per = factorial(n) / factorial(n - std::min<int>(int(l), n));
    for (int k = 0; k < index[l - 1]; ++k) fam.bound *= per;
  }
  if (fam.bound > Rat(cap))
    throw std::length_error("enumerate_cycle_covers: cap exceeded");

  std::vector<std::vector<std::vector<int>>> pools;  // per slot
  for (size_t l = 1; l <= index.size(); ++l) {
    if (index[l - 1] == 0) continue;
    auto cs = cycles_of_length(n, int(l));
    for (int k = 0; k < index[l - 1]; ++k) pools.push_back(cs);
  }
  std::vector<std::vector<int>> cur(pools.size());
  auto compatible = [&](size_t upto, const std::vector<int>& cand) -> bool {
    for (size_t s = 0; s < upto; ++s) {
      if (cur[s] == cand) continue;
      for (int v : cur[s])
        for (int u : cand)
          if (u == v) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, size_t slot) -> void {
    if (slot == pools.size()) {
      fam.tuples.push_back(cur);
      return;
    }
    for (const auto& c : pools[slot]) {
      if (!compatible(slot, c)) continue;
      cur[slot] = c;
      self(self, slot + 1);
    }
    cur[slot].clear();
  };
  rec(rec, 0);
  if (Rat(long(fam.tuples.size())) > fam.bound)
    throw std::logic_error("enumerate_cycle_covers: bound violated");
  return fam;
}

auto synth_imm_fI(const std::vector<int>& index, int n) -> ImmanantReport {
  ImmanantReport rep;
  CircuitBuilder b(n, n, Circuit::Group::SymN);
  ConstPool pool;
  auto xin = make_inputs(b, n);
  int next_base = 100;
  b.set_output(emit_imm_fI(b, pool, xin, index, n, next_base, &rep.stats));
  rep.circuit = b.take();
  rep.measured_size = rep.circuit.size_measure();
  // Reported bookkeeping bound: grid size times family bound times the
  // determinant backend size.
  auto fam_bound = enumerate_cycle_covers(n, index).bound;
  int total = std::accumulate(index.begin(), index.end(), 0);
  Rat grid(1);
  for (int t = 0; t < total; ++t) grid *= Rat(int(index.size()));
  rep.size_bound = grid * fam_bound * Rat(n) * Rat(n) * Rat(n) * Rat(n);
  return rep;
}

auto synth_immanant(const IntegerPartition& lam, int cap) -> ImmanantReport {
  if (!lam.valid() || lam.parts.empty())
    throw std::invalid_argument("synth_immanant: bad partition");
  const int n = lam.n();
  const int s = lam.num_parts();
  const int m = n - s;
  if (m > cap)
    throw std::domain_error("synth_immanant: b(lambda)=" + std::to_string(m) +
                            " exceeds cap " + std::to_string(cap));
  auto cal = calibrate(lam, m);

  // Accumulate one coefficient per distinct exponent tuple I across all K.
  std::map<std::vector<int>, Rat> coef;
  for (size_t ki = 0; ki < cal.index_set.size(); ++ki) {
    if (cal.chi[ki] == 0) continue;
    for (const auto& [expo, c] : eta_expand(cal.index_set[ki]))
      coef[expo] += cal.chi[ki] * c;
  }
  std::erase_if(coef, [](const auto& kv) { return kv.second == 0; });

  ImmanantReport rep;
  CircuitBuilder b(n, n, Circuit::Group::SymN);
  ConstPool pool;
  auto xin = make_inputs(b, n);
  int next_base = 100;
  std::vector<std::pair<int, int>> terms;
  for (const auto& [expo, c] : coef) {
    int sub = emit_imm_fI(b, pool, xin, expo, n, next_base, nullptr);
    terms.push_back(
        {b.mul({{pool.get(b, c), 1}, {sub, 1}}, next_base, {}), 1});
    next_base += 1;
  }
  int out = terms.empty() ? pool.get(b, Rat(0)) : b.add(terms, next_base, {});
  b.set_output(out);
  rep.circuit = b.take();
  rep.measured_size = rep.circuit.size_measure();
  rep.size_bound = Rat(1);
  for (int t = 0; t < 6 * m + 4; ++t) rep.size_bound *= Rat(n);
  for (int t = 0; t < m; ++t) rep.size_bound *= Rat(m);
  rep.stats["index_tuples"] = std::to_string(cal.index_set.size());
  rep.stats["monomials"] = std::to_string(coef.size());
  rep.stats["b_lambda"] = std::to_string(m);
  return rep;
}

}  // namespace homcirc
