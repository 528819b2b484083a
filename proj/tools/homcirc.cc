// Command-line front end: synth / eval / verify / cfi / wl / widthlab.
// Exit codes: 0 ok, 1 usage, 2 parse error, 3 cap exceeded,
// 4 verification failure.

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "homcirc/cfi.hh"
#include "homcirc/circuit.hh"
#include "homcirc/decomposition.hh"
#include "homcirc/immanant.hh"
#include "homcirc/oracle.hh"
#include "homcirc/synth.hh"
#include "homcirc/wl.hh"

using json = nlohmann::json;
using namespace homcirc;

namespace {

constexpr const char* kVersion = "homcirc 0.1.0";

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

auto slurp(const std::string& path) -> std::string {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Output files are written to a sibling temp file and renamed into place.
void atomic_write(const std::string& path, const std::string& text) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << text;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename into " + path);
}

auto digest(const std::string& data) -> std::string {
  uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

auto parse_pattern(const std::string& text) -> BipartitePattern {
  json j = json::parse(text);
  BipartitePattern f;
  f.left_size = j.at("left").get<int>();
  f.right_size = j.at("right").get<int>();
  for (auto& e : j.at("edges")) {
    int mult = e.size() > 2 ? e[2].get<int>() : 1;
    f.edges.push_back({e[0].get<int>(), e[1].get<int>(), mult});
  }
  f.normalize();
  if (!f.valid()) throw ParseError("invalid pattern");
  return f;
}

auto parse_host(const std::string& text) -> WeightedHost {
  json j = json::parse(text);
  WeightedHost h(j.at("n").get<int>(), j.at("m").get<int>());
  if (j.contains("entries")) {
    auto& rows = j.at("entries");
    if (int(rows.size()) != h.n) throw ParseError("host row count");
    for (int i = 0; i < h.n; ++i) {
      if (int(rows[i].size()) != h.m) throw ParseError("host column count");
      for (int jj = 0; jj < h.m; ++jj)
        h.at(i, jj) = parse_rat(rows[i][jj].get<std::string>());
    }
  } else if (j.contains("triples")) {
    for (auto& t : j.at("triples")) {
      int i = t[0].get<int>(), jj = t[1].get<int>();
      if (i < 0 || i >= h.n || jj < 0 || jj >= h.m)
        throw ParseError("host triple out of range");
      h.at(i, jj) = parse_rat(t[2].get<std::string>());
    }
  } else {
    throw ParseError("host needs entries or triples");
  }
  return h;
}

auto parse_graph(const std::string& text) -> SimpleGraph {
  json j = json::parse(text);
  SimpleGraph g;
  g.n = j.at("n").get<int>();
  for (auto& e : j.at("edges")) {
    g.edges.push_back({e[0].get<int>(), e[1].get<int>()});
    if (e.size() > 2)
      g.weights[{std::min(e[0].get<int>(), e[1].get<int>()),
                 std::max(e[0].get<int>(), e[1].get<int>())}] =
          parse_rat(e[2].get<std::string>());
  }
  g.normalize();
  if (j.contains("side")) g.side = j.at("side").get<std::vector<int>>();
  if (j.contains("colors")) g.colors = j.at("colors").get<std::vector<int>>();
  if (!g.valid()) throw ParseError("invalid graph");
  return g;
}

auto graph_json(const SimpleGraph& g) -> json {
  json j;
  j["n"] = g.n;
  json es = json::array();
  for (auto& [u, v] : g.edges) {
    if (auto it = g.weights.find({u, v}); it != g.weights.end())
      es.push_back({u, v, rat_str(it->second)});
    else
      es.push_back({u, v});
  }
  j["edges"] = es;
  if (g.side) j["side"] = *g.side;
  if (!g.colors.empty()) j["colors"] = g.colors;
  return j;
}

auto parse_lambda(const std::string& s) -> IntegerPartition {
  IntegerPartition lam;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) lam.parts.push_back(std::stoi(part));
  if (!lam.valid()) throw ParseError("invalid partition " + s);
  return lam;
}

auto base_report(uint64_t seed) -> json {
  json r;
  r["version"] = kVersion;
  r["seed"] = seed;
  return r;
}

auto random_host(std::mt19937_64& rng, int n, int m) -> WeightedHost {
  WeightedHost h(n, m);
  for (auto& e : h.entries) e = random_rat(rng);
  return h;
}

// Ryser's inclusion-exclusion permanent; fine up to ~20 rows.
auto ryser_permanent(const WeightedHost& h) -> Rat {
  if (h.n != h.m) throw ParseError("permanent needs a square host");
  if (h.n > 20) throw std::domain_error("permanent host too large");
  int n = h.n;
  Rat total(0);
  for (uint32_t s = 1; s < (1u << n); ++s) {
    Rat prod(1);
    for (int i = 0; i < n && prod != 0; ++i) {
      Rat row(0);
      for (int j = 0; j < n; ++j)
        if (s >> j & 1) row += h.at(i, j);
      prod *= row;
    }
    int sign = (n - std::popcount(s)) % 2 ? -1 : 1;
    total += sign * prod;
  }
  return total;
}

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

auto run(int argc, char** argv) -> int {
  CLI::App app{std::string(kVersion) +
               " - symmetric circuits for graph polynomials"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "compile a circuit");
  std::string kind, pattern_path, td_path, out_path = "circuit.txt",
                    report_path, lambda_str, biclique_kind = "direct";
  int n = 0, m = 0, kk = 1, cap_cycles = 3, cover_cap = 4;
  uint64_t seed = 0;
  synth->add_option("kind", kind,
                    "hom | sub-moebius | sub-cover | biclique | immanant | "
                    "determinant")
      ->required();
  synth->add_option("--pattern", pattern_path, "pattern JSON");
  synth->add_option("--td", td_path, "tree decomposition (PACE .td)");
  synth->add_option("--n", n, "host rows");
  synth->add_option("--m", m, "host columns");
  synth->add_option("--k", kk, "biclique half-size");
  synth->add_option("--biclique-kind", biclique_kind, "direct | complement");
  synth->add_option("--lambda", lambda_str, "partition, e.g. 3,1");
  synth->add_option("--cap-cycles", cap_cycles, "immanant cycle-length cap");
  synth->add_option("--cap-cover", cover_cap, "logical cover cap");
  synth->add_option("--out", out_path, "circuit output file");
  synth->add_option("--report", report_path, "JSON report output file");
  synth->add_option("--seed", seed, "seed recorded in the report");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a circuit on a host");
  std::string circuit_path, host_path;
  eval->add_option("--circuit", circuit_path)->required();
  eval->add_option("--host", host_path)->required();

  // verify
  auto* verify = app.add_subcommand("verify", "circuit vs brute-force oracle");
  std::string vmode = "hom";
  int trials = 0;
  verify->add_option("--circuit", circuit_path)->required();
  verify->add_option("--pattern", pattern_path)->required();
  verify->add_option("--mode", vmode, "hom | sub");
  verify->add_option("--trials", trials)->required();
  verify->add_option("--seed", seed)->required();

  // cfi
  auto* cfic = app.add_subcommand("cfi", "build a CFI gadget graph");
  std::string base_name, base_path, twist_str;
  cfic->add_option("--base", base_name, "named base (c4, k33, ...)");
  cfic->add_option("--base-file", base_path, "base graph JSON");
  cfic->add_option("--twist", twist_str, "twist bits, e.g. 0001")->required();
  cfic->add_option("--out", out_path, "graph output file");

  // wl
  auto* wlc = app.add_subcommand(
      "wl", "counting-logic equivalence (level k runs (k-1)-WL)");
  std::vector<std::string> graph_paths;
  wlc->add_option("--k", kk, "counting-logic level (2..4)")->required();
  wlc->add_option("graphs", graph_paths, "two graph JSON files")
      ->expected(2);

  // widthlab
  auto* width = app.add_subcommand("widthlab", "counting-width experiment");
  std::string poly = "perm";
  int pairs_wanted = 50;
  width->add_option("--poly", poly, "perm | hom (with --pattern)");
  width->add_option("--pattern", pattern_path, "pattern JSON for --poly hom");
  width->add_option("--k", kk, "equivalence level (2 or 3)")->required();
  width->add_option("--pairs", pairs_wanted, "number of host pairs");
  width->add_option("--out", out_path, "JSONL report path");
  width->add_option("--seed", seed)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (synth->parsed()) {
    SynthReport rep;
    json jrep = base_report(seed);
    if (kind == "determinant") {
      if (n < 1) throw Usage("determinant needs --n");
      rep.circuit = synth_symmetric_determinant(n);
      rep.measured_size = rep.circuit.num_gates();
    } else if (kind == "immanant") {
      auto ir = synth_immanant(parse_lambda(lambda_str), cap_cycles);
      rep.circuit = std::move(ir.circuit);
      rep.measured_size = ir.measured_size;
      rep.size_bound = ir.size_bound;
      for (auto& [k2, v] : ir.stats) jrep["stats"][k2] = v;
    } else if (kind == "biclique") {
      rep = synth_biclique(biclique_kind == "complement"
                               ? BicliqueKind::Complement
                               : BicliqueKind::Direct,
                           kk, n);
    } else {
      if (pattern_path.empty()) throw Usage("synth needs --pattern");
      auto ptext = slurp(pattern_path);
      auto f = parse_pattern(ptext);
      jrep["pattern_digest"] = digest(ptext);
      if (kind == "hom") {
        TreeDecomposition td;
        if (!td_path.empty()) {
          auto ttext = slurp(td_path);
          td = read_td(ttext);
          jrep["td_digest"] = digest(ttext);
        } else if (f.num_vertices() <= 12) {
          td = exact_treewidth(f).witness;
        } else {
          std::cerr << "pattern too large without --td\n";
          return 3;
        }
        rep = synth_hom(f, td, n, m);
      } else if (kind == "sub-moebius") {
        rep = synth_sub_moebius(f, n, m);
      } else if (kind == "sub-cover") {
        rep = synth_sub_cover(f, n, m, cover_cap);
      } else {
        throw Usage("unknown synth kind " + kind);
      }
    }
    auto text = rep.circuit.serialize();
    atomic_write(out_path, text);
    jrep["circuit_digest"] = digest(text);
    jrep["measured_size"] = rep.measured_size;
    jrep["size_bound"] = rat_str(rep.size_bound);
    jrep["max_sup_claim"] = rep.max_sup_claim;
    jrep["shape_conformant"] = rep.shape_conformant;
    for (auto& [k2, v] : rep.stats) jrep["stats"][k2] = v;
    if (!report_path.empty()) atomic_write(report_path, jrep.dump(2) + "\n");
    std::cout << "wrote " << out_path << " (" << rep.circuit.num_gates()
              << " gates)\n";
    return 0;
  }

  if (eval->parsed()) {
    auto c = Circuit::deserialize(slurp(circuit_path));
    auto h = parse_host(slurp(host_path));
    if (h.n != c.n || h.m != c.m) throw ParseError("host/circuit dimensions");
    std::cout << rat_str(c.evaluate(h)) << "\n";
    return 0;
  }

  if (verify->parsed()) {
    if (trials <= 0) throw Usage("--trials must be positive");
    auto c = Circuit::deserialize(slurp(circuit_path));
    auto f = parse_pattern(slurp(pattern_path));
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
      auto h = random_host(rng, c.n, c.m);
      Rat want = vmode == "sub" ? brute_sub(f, h) : brute_hom(f, h);
      Rat got = c.evaluate(h);
      if (want != got) {
        std::cout << "FAIL at trial " << t << ": circuit " << rat_str(got)
                  << " oracle " << rat_str(want) << "\nhost:";
        for (auto& e : h.entries) std::cout << " " << rat_str(e);
        std::cout << "\n";
        return 4;
      }
    }
    auto sym = c.verify_symmetry();
    if (!sym.ok) {
      std::cout << "FAIL symmetry: " << sym.message << "\n";
      return 4;
    }
    std::cout << "PASS (" << trials << " trials)\n";
    return 0;
  }

  if (cfic->parsed()) {
    SimpleGraph base = base_path.empty() ? named_base(base_name)
                                         : parse_graph(slurp(base_path));
    if (int(twist_str.size()) != base.n) throw ParseError("twist length");
    std::vector<int> tw;
    for (char ch : twist_str) {
      if (ch != '0' && ch != '1') throw ParseError("twist bits");
      tw.push_back(ch - '0');
    }
    auto ins = cfi(base, tw);
    json j = graph_json(ins.graph);
    j["rho"] = ins.rho;
    atomic_write(out_path, j.dump(2) + "\n");
    std::cout << "wrote " << out_path << " (" << ins.graph.n
              << " vertices)\n";
    return 0;
  }

  if (wlc->parsed()) {
    auto g = parse_graph(slurp(graph_paths[0]));
    auto h = parse_graph(slurp(graph_paths[1]));
    auto v = c_equivalent(g, h, kk);
    std::cout << (v.equivalent ? "EQUIVALENT" : "DISTINGUISHED") << " after "
              << v.rounds << " rounds\n";
    return 0;
  }

  if (width->parsed()) {
    auto pairs = cfi_host_pairs(kk, pairs_wanted, seed);
    std::function<Rat(const WeightedHost&)> evalf;
    std::map<std::pair<int, int>, Circuit> cache;
    if (poly == "perm") {
      // Exact permanent; square hosts only (the k=2 cycle bases and the
      // square k=3 bases).  Non-square pairs are skipped up front.
      pairs.erase(std::remove_if(pairs.begin(), pairs.end(),
                                 [](const HostPair& p) {
                                   return p.g0.n != p.g0.m || p.g0.n > 20;
                                 }),
                  pairs.end());
      evalf = [](const WeightedHost& h) { return ryser_permanent(h); };
    } else {
      auto f = parse_pattern(slurp(pattern_path));
      auto td = exact_treewidth(f).witness;
      evalf = [&, f, td](const WeightedHost& h) -> Rat {
        auto key = std::pair{h.n, h.m};
        if (!cache.count(key))
          cache.emplace(key, synth_hom(f, td, h.n, h.m).circuit);
        return cache.at(key).evaluate(h);
      };
    }
    std::string lines;
    int gaps = 0;
    for (auto& row : counting_width_experiment(evalf, pairs)) {
      json j;
      j["id"] = row.id;
      j["equal"] = row.equal;
      j["value0"] = rat_str(row.value0);
      j["value1"] = rat_str(row.value1);
      lines += j.dump() + "\n";
      gaps += !row.equal;
    }
    atomic_write(out_path, lines);
    std::cout << pairs.size() << " pairs, " << gaps << " gaps, report in "
              << out_path << "\n";
    return 0;
  }

  return 1;
}

}  // namespace

auto main(int argc, char** argv) -> int {
  try {
    return run(argc, argv);
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
