#include "homcirc/circuit.hh"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace homcirc {

namespace {

auto rat_pow(const Rat& base, unsigned long e) -> Rat {
  if (e == 1) return base;
  Rat r = base;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(r.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(r.get_mpq_t()), e);
  return r;
}

template <typename Fn>
void for_each_perm(int n, Fn&& fn) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    fn(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace

auto Circuit::key_support(size_t g) const -> std::vector<int> {
  auto [b, e] = key_sup_[g];
  return std::vector<int>(sup_.begin() + b, sup_.begin() + e);
}

auto Circuit::size_measure() const -> long {
  long s = long(num_gates());
  for (size_t g = 0; g < num_gates(); ++g)
    if (kind_[g] == GateKind::Add || kind_[g] == GateKind::Mul)
      for (auto it = child_begin(g); it != child_end(g); ++it) s += it->second;
  return s;
}

auto Circuit::validate(bool check_keys) const -> std::optional<std::string> {
  const size_t ng = num_gates();
  if (output < 0 || size_t(output) >= ng) return "output gate out of range";
  std::set<std::pair<int, int>> input_vars;
  std::set<std::pair<int, std::vector<int>>> seen_keys;
  for (size_t g = 0; g < ng; ++g) {
    switch (kind_[g]) {
      case GateKind::Input: {
        auto [i, j] = payload_[g];
        int jbound = group == Group::SymN ? n : m;
        if (i < 0 || i >= n || j < 0 || j >= jbound)
          return "input gate " + std::to_string(g) + " out of range";
        if (!input_vars.insert({i, j}).second)
          return "variable read by two input gates";
        break;
      }
      case GateKind::Const:
        if (payload_[g].first < 0 || size_t(payload_[g].first) >= consts_.size())
          return "const gate with dangling value";
        break;
      case GateKind::Add:
      case GateKind::Mul:
        for (auto it = child_begin(g); it != child_end(g); ++it) {
          if (it->first < 0 || size_t(it->first) >= g)
            return "gate " + std::to_string(g) + " has non-preceding child";
          if (it->second < 1) return "wire with multiplicity < 1";
        }
        break;
    }
    if (check_keys && has_key(g) &&
        !seen_keys.insert({key_tag_[g], key_support(g)}).second)
      return "duplicate gate key";
  }
  return std::nullopt;
}

auto Circuit::evaluate(const WeightedHost& host) const -> Rat {
  const size_t ng = num_gates();
  if ((group == Group::SymNM && (host.n != n || host.m != m)) ||
      (group == Group::SymN && (host.n != n || host.m != n)))
    throw std::invalid_argument("evaluate: host dimensions do not match");
  // reference counts for free-after-last-use
  std::vector<int> refs(ng, 0);
  for (size_t g = 0; g < ng; ++g)
    if (kind_[g] == GateKind::Add || kind_[g] == GateKind::Mul)
      for (auto it = child_begin(g); it != child_end(g); ++it)
        ++refs[it->first];
  ++refs[output];

  std::vector<Rat> pool;
  std::vector<int> slot(ng, -1);
  std::vector<int> free_slots;
  auto alloc = [&](size_t g) -> Rat& {
    int s;
    if (!free_slots.empty()) {
      s = free_slots.back();
      free_slots.pop_back();
      pool[s] = 0;
    } else {
      s = int(pool.size());
      pool.emplace_back(0);
    }
    slot[g] = s;
    return pool[s];
  };
  auto release = [&](size_t g) {
    if (--refs[g] == 0) {
      Rat().swap(pool[slot[g]]);
      free_slots.push_back(slot[g]);
      slot[g] = -1;
    }
  };

  for (size_t g = 0; g < ng; ++g) {
    if (refs[g] == 0) continue;  // dead gate
    Rat& v = alloc(g);
    switch (kind_[g]) {
      case GateKind::Input:
        v = host.at(payload_[g].first, payload_[g].second);
        break;
      case GateKind::Const:
        v = consts_[payload_[g].first];
        break;
      case GateKind::Add:
        for (auto it = child_begin(g); it != child_end(g); ++it) {
          if (it->second == 1)
            v += pool[slot[it->first]];
          else
            v += pool[slot[it->first]] * it->second;
        }
        for (auto it = child_begin(g); it != child_end(g); ++it)
          release(it->first);
        break;
      case GateKind::Mul:
        v = 1;
        for (auto it = child_begin(g); it != child_end(g); ++it)
          v *= rat_pow(pool[slot[it->first]], it->second);
        for (auto it = child_begin(g); it != child_end(g); ++it)
          release(it->first);
        break;
    }
    v.canonicalize();
  }
  return pool[slot[output]];
}

auto Circuit::key_map() const
    -> std::map<std::pair<int, std::vector<int>>, int> {
  std::map<std::pair<int, std::vector<int>>, int> keys;
  for (size_t g = 0; g < num_gates(); ++g)
    if (has_key(g)) keys[{key_tag_[g], key_support(g)}] = int(g);
  return keys;
}

auto Circuit::permutation_bijection(
    const std::vector<int>& vertex_map,
    const std::map<std::pair<int, std::vector<int>>, int>& keys) const
    -> PermutationCheck {
  PermutationCheck r;
  const size_t ng = num_gates();
  r.mapping.assign(ng, -1);
  for (size_t g = 0; g < ng; ++g) {
    if (!has_key(g)) {
      r.message = "gate " + std::to_string(g) + " has no key";
      return r;
    }
    auto sup = key_support(g);
    for (int& v : sup) v = vertex_map[v];
    if (key_tag_[g] < 0) std::sort(sup.begin(), sup.end());
    auto it = keys.find({key_tag_[g], sup});
    if (it == keys.end()) {
      r.message = "relabeled key of gate " + std::to_string(g) + " is absent";
      return r;
    }
    r.mapping[g] = it->second;
  }
  for (size_t g = 0; g < ng; ++g) {
    size_t h = size_t(r.mapping[g]);
    if (kind_[g] != kind_[h]) {
      r.message = "gate kinds differ under relabeling";
      return r;
    }
    switch (kind_[g]) {
      case GateKind::Input: {
        auto [i, j] = payload_[g];
        int ii = vertex_map[i];
        int jj = group == Group::SymN ? vertex_map[j] : vertex_map[n + j] - n;
        if (payload_[h] != std::pair{ii, jj}) {
          r.message = "input gate does not map to the permuted variable";
          return r;
        }
        break;
      }
      case GateKind::Const:
        if (consts_[payload_[g].first] != consts_[payload_[h].first]) {
          r.message = "const values differ under relabeling";
          return r;
        }
        break;
      case GateKind::Add:
      case GateKind::Mul: {
        std::vector<std::pair<int, int>> a, b;
        for (auto it = child_begin(g); it != child_end(g); ++it)
          a.push_back({r.mapping[it->first], it->second});
        for (auto it = child_begin(h); it != child_end(h); ++it)
          b.push_back(*it);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) {
          r.message = "wire multisets differ under relabeling";
          return r;
        }
        break;
      }
    }
  }
  r.ok = true;
  return r;
}

namespace {

// global vertex map for (perm_left, perm_right)
auto make_vertex_map(Circuit::Group group, int n, int m,
                     const std::vector<int>& pl, const std::vector<int>& pr)
    -> std::vector<int> {
  if (group == Circuit::Group::SymN) return pl;
  std::vector<int> vm(n + m);
  for (int i = 0; i < n; ++i) vm[i] = pl[i];
  for (int j = 0; j < m; ++j) vm[n + j] = n + pr[j];
  return vm;
}

}  // namespace

auto Circuit::apply_permutation(const std::vector<int>& perm_left,
                                const std::vector<int>& perm_right) const
    -> PermutationCheck {
  if (int(perm_left.size()) != n ||
      int(perm_right.size()) != (group == Group::SymN ? n : m))
    throw std::invalid_argument("apply_permutation: wrong permutation sizes");
  if (group == Group::SymN && perm_left != perm_right)
    throw std::invalid_argument(
        "apply_permutation: diagonal group needs equal permutations");
  auto keys = key_map();
  return permutation_bijection(
      make_vertex_map(group, n, m, perm_left, perm_right), keys);
}

auto Circuit::verify_symmetry() const -> PermutationCheck {
  auto keys = key_map();
  auto identity = [](int k) {
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    return p;
  };
  auto generators = [&](int k) {
    std::vector<std::vector<int>> gens;
    if (k >= 2) {
      auto t = identity(k);
      std::swap(t[0], t[1]);
      gens.push_back(t);
      auto c = identity(k);
      std::rotate(c.begin(), c.begin() + 1, c.end());
      gens.push_back(c);
    }
    return gens;
  };
  PermutationCheck last;
  last.ok = true;
  if (group == Group::SymN) {
    for (const auto& p : generators(n)) {
      last = permutation_bijection(p, keys);
      if (!last.ok) return last;
    }
    return last;
  }
  for (const auto& p : generators(n)) {
    last = permutation_bijection(make_vertex_map(group, n, m, p, identity(m)),
                                 keys);
    if (!last.ok) return last;
  }
  for (const auto& p : generators(m)) {
    last = permutation_bijection(make_vertex_map(group, n, m, identity(n), p),
                                 keys);
    if (!last.ok) return last;
  }
  return last;
}

auto Circuit::orbit_stats() const -> OrbitStats {
  OrbitStats st;
  for (size_t g = 0; g < num_gates(); ++g)
    if (has_key(g))
      st.max_sup =
          std::max(st.max_sup, key_sup_[g].second - key_sup_[g].first);

  const bool exact_ok = group == Group::SymNM ? (n + m <= 8) : (n <= 8);
  if (!exact_ok) {
    st.exact = false;
    long base = group == Group::SymNM ? n + m : n;
    long bound = 1;
    for (int i = 0; i < st.max_sup; ++i) bound *= base;
    st.max_orb = bound;
    st.notes.push_back("annotated mode: maxOrb is the support bound");
    return st;
  }
  st.exact = true;
  const size_t ng = num_gates();
  auto keys = key_map();

  // collect all vertex maps of the group
  std::vector<std::vector<int>> maps;
  if (group == Group::SymN) {
    for_each_perm(n, [&](const std::vector<int>& p) { maps.push_back(p); });
  } else {
    for_each_perm(n, [&](const std::vector<int>& pl) {
      for_each_perm(m, [&](const std::vector<int>& pr) {
        maps.push_back(make_vertex_map(group, n, m, pl, pr));
      });
    });
  }

  std::vector<int> parent(ng);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  std::vector<std::vector<int>> bijections;
  bijections.reserve(maps.size());
  for (const auto& vm : maps) {
    auto pc = permutation_bijection(vm, keys);
    if (!pc.ok) {
      st.notes.push_back("not symmetric: " + pc.message);
      st.exact = false;
      return st;
    }
    for (size_t g = 0; g < ng; ++g) {
      int a = find(int(g)), b = find(pc.mapping[g]);
      if (a != b) parent[a] = b;
    }
    bijections.push_back(std::move(pc.mapping));
  }
  std::vector<long> comp_size(ng, 0);
  for (size_t g = 0; g < ng; ++g) ++comp_size[find(int(g))];
  st.orbit_sizes.resize(ng);
  for (size_t g = 0; g < ng; ++g) {
    st.orbit_sizes[g] = comp_size[find(int(g))];
    st.max_orb = std::max(st.max_orb, st.orbit_sizes[g]);
  }

  // verify each key tuple really is a support: pointwise stabilizer of the
  // tuple must fix the gate
  auto fixes_tuple = [&](const std::vector<int>& vm,
                         const std::vector<int>& tup) {
    for (int v : tup)
      if (vm[v] != v) return false;
    return true;
  };
  for (size_t e = 0; e < maps.size(); ++e)
    for (size_t g = 0; g < ng; ++g)
      if (fixes_tuple(maps[e], key_support(g)) &&
          bijections[e][g] != int(g)) {
        st.notes.push_back("key tuple of gate " + std::to_string(g) +
                           " is not a support");
        return st;
      }

  // greedy support minimization
  const int half = (group == Group::SymNM ? n + m : n) / 2;
  bool uniqueness_caveat = false;
  for (size_t g = 0; g < ng; ++g) {
    auto tup = key_support(g);
    bool shrunk = true;
    while (shrunk && !tup.empty()) {
      shrunk = false;
      for (size_t i = 0; i < tup.size(); ++i) {
        auto reduced = tup;
        reduced.erase(reduced.begin() + i);
        bool still_support = true;
        for (size_t e = 0; e < maps.size() && still_support; ++e)
          if (fixes_tuple(maps[e], reduced) && bijections[e][g] != int(g))
            still_support = false;
        if (still_support) {
          tup = reduced;
          shrunk = true;
          break;
        }
      }
    }
    if (!tup.empty() && int(tup.size()) >= half) uniqueness_caveat = true;
  }
  if (uniqueness_caveat)
    st.notes.push_back("minimal support not certified unique");
  return st;
}

auto Circuit::serialize() const -> std::string {
  std::ostringstream os;
  os << "c circuit n=" << n << " m=" << m
     << " group=" << (group == Group::SymNM ? "symnm" : "symn")
     << " out=" << output << '\n';
  for (size_t g = 0; g < num_gates(); ++g) {
    os << "g " << g << ' ';
    switch (kind_[g]) {
      case GateKind::Input:
        os << "IN " << payload_[g].first << ' ' << payload_[g].second;
        break;
      case GateKind::Const:
        os << "CONST " << rat_str(consts_[payload_[g].first]);
        break;
      case GateKind::Add:
      case GateKind::Mul:
        os << (kind_[g] == GateKind::Add ? "ADD" : "MUL");
        for (auto it = child_begin(g); it != child_end(g); ++it)
          os << ' ' << it->first << '*' << it->second;
        break;
    }
    os << '\n';
  }
  for (size_t g = 0; g < num_gates(); ++g) {
    if (!has_key(g)) continue;
    os << "k " << g << ' ' << key_tag_[g];
    for (int v : key_support(g)) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

auto Circuit::deserialize(const std::string& text) -> Circuit {
  Circuit c;
  std::istringstream is(text);
  std::string line;
  bool have_header = false;
  long next_id = 0;
  auto fail = [](const std::string& why) -> Circuit {
    throw std::invalid_argument("deserialize: " + why);
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "c") {
      if (have_header) return fail("multiple headers / outputs");
      std::string word;
      std::map<std::string, std::string> kv;
      while (ls >> word) {
        auto eq = word.find('=');
        if (eq != std::string::npos) kv[word.substr(0, eq)] = word.substr(eq + 1);
      }
      if (!kv.count("n") || !kv.count("m") || !kv.count("group") ||
          !kv.count("out"))
        return fail("malformed header: " + line);
      c.n = std::stoi(kv["n"]);
      c.m = std::stoi(kv["m"]);
      c.output = std::stoi(kv["out"]);
      if (kv["group"] == "symnm")
        c.group = Group::SymNM;
      else if (kv["group"] == "symn")
        c.group = Group::SymN;
      else
        return fail("unknown group: " + kv["group"]);
      have_header = true;
    } else if (head == "g") {
      if (!have_header) return fail("gate before header");
      long id;
      std::string op;
      if (!(ls >> id >> op) || id != next_id)
        return fail("gate ids must be dense and increasing: " + line);
      ++next_id;
      if (op == "IN") {
        int i, j;
        if (!(ls >> i >> j)) return fail("malformed IN line: " + line);
        c.kind_.push_back(GateKind::Input);
        c.payload_.push_back({i, j});
      } else if (op == "CONST") {
        std::string v;
        if (!(ls >> v)) return fail("malformed CONST line: " + line);
        c.kind_.push_back(GateKind::Const);
        c.payload_.push_back({int(c.consts_.size()), 0});
        c.consts_.push_back(parse_rat(v));
      } else if (op == "ADD" || op == "MUL") {
        c.kind_.push_back(op == "ADD" ? GateKind::Add : GateKind::Mul);
        int begin = int(c.wires_.size());
        std::string w;
        while (ls >> w) {
          auto star = w.find('*');
          if (star == std::string::npos)
            return fail("malformed wire (need child*mult): " + line);
          int child = std::stoi(w.substr(0, star));
          int mult = std::stoi(w.substr(star + 1));
          if (child < 0 || child >= id)
            return fail("wire to non-preceding gate " + std::to_string(child));
          if (mult < 1) return fail("wire multiplicity < 1");
          c.wires_.push_back({child, mult});
        }
        c.payload_.push_back({begin, int(c.wires_.size())});
      } else {
        return fail("unknown gate op: " + op);
      }
      c.key_tag_.push_back(kNoKey);
      c.key_sup_.push_back({0, 0});
    } else if (head == "k") {
      long id;
      int tag;
      if (!(ls >> id >> tag) || id < 0 || id >= next_id)
        return fail("key line for unknown gate: " + line);
      if (c.key_tag_[id] != kNoKey) return fail("duplicate key line");
      int begin = int(c.sup_.size());
      int v;
      while (ls >> v) c.sup_.push_back(v);
      c.key_tag_[id] = tag;
      c.key_sup_[id] = {begin, int(c.sup_.size())};
    } else {
      return fail("unknown line: " + line);
    }
  }
  if (!have_header) return fail("missing header");
  if (auto err = c.validate()) return fail(*err);
  int bound = c.group == Group::SymN ? c.n : c.n + c.m;
  for (int v : c.sup_)
    if (v < 0 || v >= bound) return fail("support entry out of range");
  return c;
}

CircuitBuilder::CircuitBuilder(int n, int m, Circuit::Group group) {
  c_.n = n;
  c_.m = m;
  c_.group = group;
}

auto CircuitBuilder::find(int tag, const std::vector<int>& support) const
    -> int {
  auto it = keys_.find({tag, support});
  return it == keys_.end() ? -1 : it->second;
}

auto CircuitBuilder::emplace(GateKind k, std::pair<int, int> payload, int tag,
                             const std::vector<int>& support) -> int {
  int id = int(c_.kind_.size());
  if (dedup_) {
    auto ins = keys_.insert({{tag, support}, id});
    if (!ins.second)
      throw std::logic_error("circuit builder: duplicate key requested");
  }
  c_.kind_.push_back(k);
  c_.payload_.push_back(payload);
  c_.key_tag_.push_back(tag);
  int begin = int(c_.sup_.size());
  c_.sup_.insert(c_.sup_.end(), support.begin(), support.end());
  c_.key_sup_.push_back({begin, int(c_.sup_.size())});
  return id;
}

auto CircuitBuilder::input(int i, int j, int tag,
                           const std::vector<int>& support) -> int {
  return emplace(GateKind::Input, {i, j}, tag, support);
}

auto CircuitBuilder::constant(const Rat& value, int tag,
                              const std::vector<int>& support) -> int {
  c_.consts_.push_back(value);
  c_.consts_.back().canonicalize();
  return emplace(GateKind::Const, {int(c_.consts_.size()) - 1, 0}, tag,
                 support);
}

auto CircuitBuilder::add(const std::vector<std::pair<int, int>>& children,
                         int tag, const std::vector<int>& support) -> int {
  int begin = int(c_.wires_.size());
  c_.wires_.insert(c_.wires_.end(), children.begin(), children.end());
  return emplace(GateKind::Add, {begin, int(c_.wires_.size())}, tag, support);
}

auto CircuitBuilder::mul(const std::vector<std::pair<int, int>>& children,
                         int tag, const std::vector<int>& support) -> int {
  int begin = int(c_.wires_.size());
  c_.wires_.insert(c_.wires_.end(), children.begin(), children.end());
  return emplace(GateKind::Mul, {begin, int(c_.wires_.size())}, tag, support);
}

auto CircuitBuilder::take() -> Circuit {
  if (auto err = c_.validate(!skipped_dedup_))
    throw std::logic_error("circuit builder produced invalid circuit: " + *err);
  keys_.clear();
  return std::move(c_);
}

}  // namespace homcirc
