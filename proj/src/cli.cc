// Command-line front end: parse a JSON arrangement description, run the
// computations and verifications, emit deterministic TSV or JSON reports.

#include <omp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "torsal/generators.hpp"

using nlohmann::json;
using namespace torsal;

namespace {

struct SpecInput {
  ToricArrangement A;
  ChoiceOverrides ov;
};

Rat parse_offset(const json &j) {
  long num = j.at("num").get<long>();
  long den = j.at("den").get<long>();
  if (den == 0) throw std::runtime_error("offset denominator is zero");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

void merge_choices(ChoiceOverrides &ov, const json &j) {
  if (j.contains("R"))
    for (auto it = j["R"].begin(); it != j["R"].end(); ++it)
      ov.R[it.key()] = it.value().get<std::vector<int>>();
  if (j.contains("B"))
    for (auto it = j["B"].begin(); it != j["B"].end(); ++it)
      ov.B[it.key()] = it.value().get<std::vector<int>>();
  if (j.contains("RM"))
    for (auto it = j["RM"].begin(); it != j["RM"].end(); ++it)
      ov.RM[it.key()] = it.value().get<std::vector<int>>();
  if (j.contains("base_layers"))
    ov.base_layers = j["base_layers"].get<std::vector<std::string>>();
  if (j.contains("ordering"))
    ov.order = j["ordering"].get<std::vector<std::string>>();
}

SpecInput parse_spec(const json &j) {
  SpecInput s;
  s.A.d = j.at("dimension").get<int>();
  std::set<std::string> names;
  for (const auto &h : j.at("hypertori")) {
    Hypertorus t;
    if (h.contains("name")) t.name = h["name"].get<std::string>();
    for (long v : h.at("chi").get<std::vector<long>>()) t.chi.push_back(Int(v));
    if ((int)t.chi.size() != s.A.d)
      throw std::runtime_error("chi length does not match the dimension");
    if (h.contains("offset")) t.offset = parse_offset(h["offset"]);
    s.A.tori.push_back(t);
  }
  for (int i = 0; i < s.A.n(); ++i)
    if (!names.insert(s.A.name(i)).second)
      throw std::runtime_error("duplicate hypertorus name: " + s.A.name(i));
  if (j.contains("ordering"))
    s.ov.order = j["ordering"].get<std::vector<std::string>>();
  if (j.contains("choices")) merge_choices(s.ov, j["choices"]);
  s.A.validate();
  return s;
}

// ---- deterministic table emitter ----

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void emit(const Table &t, const std::string &format) {
  if (format == "json") {
    json out = json::array();
    for (const auto &r : t.rows) {
      json o = json::object();
      for (size_t i = 0; i < t.header.size(); ++i) o[t.header[i]] = r[i];
      out.push_back(o);
    }
    std::cout << out.dump(2) << "\n";
    return;
  }
  for (size_t i = 0; i < t.header.size(); ++i)
    std::cout << (i ? "\t" : "") << t.header[i];
  std::cout << "\n";
  for (const auto &r : t.rows) {
    for (size_t i = 0; i < r.size(); ++i) std::cout << (i ? "\t" : "") << r[i];
    std::cout << "\n";
  }
}

std::string rat_str(const Rat &r) { return r.get_str(); }

std::string vec_str(const RatVec &v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + rat_str(v[i]);
  return out + ")";
}

std::string coords_str(const RatVec &v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + rat_str(v[i]);
  return out;
}

std::string join(const std::vector<std::string> &v, const std::string &sep) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

// ---- commands ----

int cmd_layers(Generators &g, const std::string &format) {
  Table t;
  t.header = {"name", "rank", "base", "directions", "hypertori"};
  for (const auto &L : g.lp.layers) {
    std::vector<std::string> dirs, hs;
    for (int c = 0; c < L.dir.nc; ++c) {
      RatVec col(g.A.d);
      for (int i = 0; i < g.A.d; ++i) col[i] = Rat(L.dir.at(i, c));
      dirs.push_back(vec_str(col));
    }
    for (int h : L.tori) hs.push_back(g.A.name(h));
    t.rows.push_back({L.name, std::to_string(L.rank), vec_str(L.base),
                      join(dirs, ";"), join(hs, ",")});
  }
  emit(t, format);
  return 0;
}

int cmd_faces(Generators &g, const std::string &format) {
  Table t;
  t.header = {"id", "dim", "layer", "hypertori"};
  for (int F = 0; F < (int)g.fc.faces.size(); ++F) {
    std::vector<std::string> hs;
    for (int h : g.fc.faces[F].loc) hs.push_back(g.A.name(h));
    t.rows.push_back({std::to_string(F), std::to_string(g.fc.faces[F].dim),
                      g.lp.layers[g.facelayer[F]].name, join(hs, ",")});
  }
  emit(t, format);
  return 0;
}

int cmd_salvetti(Generators &g, const std::string &format) {
  // cells of the toric Salvetti complex counted by dimension
  std::map<int, int> bydim;
  for (const auto &[F, cell] : g.G.objects)
    bydim[g.fc.faces[F].dim + g.fc.faces[F].sal.dim(cell)]++;
  Table t;
  t.header = {"dim", "cells"};
  for (const auto &[d, c] : bydim)
    t.rows.push_back({std::to_string(d), std::to_string(c)});
  t.rows.push_back({"total", std::to_string(g.G.objects.size())});
  t.rows.push_back({"morphisms", std::to_string(g.G.gmor.size())});
  emit(t, format);
  return 0;
}

// number of nbc sets of A[L] of size rank(L), and binomials, for the
// combinatorial Betti numbers
Int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

IntVec combinatorial_betti(Generators &g) {
  IntVec b(g.A.d + 1, Int(0));
  for (int L = 0; L < (int)g.lp.layers.size(); ++L) {
    Int nbc = (Int)nbc_slots(g, L).size();
    int r = g.lp.layers[L].rank;
    for (int k = r; k <= g.A.d; ++k) b[k] += nbc * binom(g.A.d - r, k - r);
  }
  return b;
}

int cmd_betti(Generators &g, const std::string &format, int maxdeg) {
  Table t;
  t.header = {"complex"};
  int top = maxdeg < 0 ? g.A.d : std::min(maxdeg, g.A.d);
  for (int k = 0; k <= top; ++k) t.header.push_back("b" + std::to_string(k));
  t.header.push_back("torsion");
  auto row = [&](const std::string &name, NerveComplex &N) {
    std::vector<std::string> r = {name};
    std::vector<std::string> tor;
    for (int k = 0; k <= top; ++k) {
      const auto &h = N.homology(k);
      r.push_back(std::to_string(h.betti));
      for (const Int &v : h.torsion)
        tor.push_back(std::to_string(k) + ":" + v.get_str());
    }
    r.push_back(join(tor, ";"));
    t.rows.push_back(r);
  };
  row("Sal", g.N);
  for (int L = 0; L < (int)g.lp.layers.size(); ++L)
    row("S_" + g.lp.layers[L].name, g.sub(L, g.ch.F_L[L]).N);
  emit(t, format);
  return 0;
}

int cmd_generators(Generators &g, const std::string &format) {
  GeneratorTable T = build_table(g);
  Table t;
  t.header = {"class"};
  for (const auto &c : T.columns) t.header.push_back("S_" + c);
  for (const auto &r : T.rows) {
    std::vector<std::string> row = {r.name};
    for (const auto &c : r.cells) row.push_back(c);
    t.rows.push_back(row);
  }
  emit(t, format);
  return 0;
}

int cmd_restrict(Generators &g, const std::string &format, int maxdeg) {
  Table t;
  t.header = {"layer", "degree", "class", "coords"};
  int top = maxdeg < 0 ? g.A.d : std::min(maxdeg, g.A.d);
  for (int L = 0; L < (int)g.lp.layers.size(); ++L)
    for (int k = 0; k <= top; ++k) {
      const RatMat &M = g.restriction(L, g.ch.F_L[L], k);
      for (int j = 0; j < M.nc; ++j) {
        std::string cname =
            k == 1 ? g.hat_names[j] : "e" + std::to_string(k) + "_" + std::to_string(j);
        RatVec col(M.nr);
        for (int i = 0; i < M.nr; ++i) col[i] = M.at(i, j);
        t.rows.push_back({g.lp.layers[L].name, std::to_string(k), cname,
                          coords_str(col)});
      }
    }
  emit(t, format);
  return 0;
}

std::string slot_name(Generators &g, int L, const std::vector<int> &S) {
  std::string name = "w(";
  for (size_t i = 0; i < S.size(); ++i) name += (i ? "," : "") + g.A.name(S[i]);
  return name + "|" + g.lp.layers[L].name + ")";
}

int cmd_omega_sl(Generators &g, const std::string &format) {
  Table t;
  t.header = {"slot", "degree", "coords", "status"};
  int bad = 0;
  for (int L = 0; L < (int)g.lp.layers.size(); ++L)
    for (const auto &S : nbc_slots(g, L)) {
      Report rep;
      RatVec x = omega_SL(g, L, S, &rep);
      if (!rep.ok) ++bad;
      t.rows.push_back({slot_name(g, L, S),
                        std::to_string(g.lp.layers[L].rank), coords_str(x),
                        rep.ok ? "pass" : "FAIL"});
    }
  emit(t, format);
  return bad ? 1 : 0;
}

int cmd_verify(Generators &g, const std::string &format, const std::string &which) {
  std::vector<Report> reports;
  auto want = [&](const std::string &s) { return which == "all" || which == s; };

  if (want("chains")) {
    for (int M = 0; M < (int)g.lp.layers.size(); ++M) {
      if (g.lp.layers[M].rank != g.A.d - 1) continue;
      Report agg;
      agg.title = "basis change over all chamber pairs, " + g.lp.layers[M].name;
      for (int B : g.fp0.chambers)
        for (int Bp : g.fp0.chambers) {
          Report r = verify_basis_change(g, M, B, Bp);
          if (!r.ok) {
            agg.ok = false;
            for (const auto &l : r.lines) agg.lines.push_back(r.title + ": " + l);
          }
        }
      reports.push_back(agg);
    }
  }
  if (want("homology")) {
    Report r;
    r.title = "betti numbers, torsion and dual pairings";
    IntVec cb = combinatorial_betti(g);
    for (int k = 0; k <= g.A.d; ++k) {
      const auto &h = g.N.homology(k);
      r.check(h.torsion.empty(), "torsion-free in degree " + std::to_string(k));
      r.check(Int(h.betti) == cb[k],
              "homological b" + std::to_string(k) + " = " + std::to_string(h.betti) +
                  " matches the layer count " + cb[k].get_str());
    }
    for (size_t i = 0; i < g.hat.size(); ++i)
      for (size_t j = 0; j < g.hat.size(); ++j)
        r.check(pairq(g.dual[i], g.hat[j]) == (i == j ? 1 : 0),
                "global pairing at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    for (int L = 0; L < (int)g.lp.layers.size(); ++L) {
      const auto &lb = g.lbasis[L];
      for (size_t i = 0; i < lb.hat.size(); ++i)
        for (size_t j = 0; j < lb.hat.size(); ++j)
          r.check(pairq(lb.dual[i], lb.hat[j]) == (i == j ? 1 : 0),
                  "pairing at " + g.lp.layers[L].name);
    }
    reports.push_back(r);
  }
  if (want("restriction")) {
    for (int L = 0; L < (int)g.lp.layers.size(); ++L)
      reports.push_back(verify_restriction(g, L));
    for (int L = 1; L < (int)g.lp.layers.size(); ++L)
      reports.push_back(verify_quotient_omega(g, L));
    reports.push_back(verify_omega_hat_claims(g));
  }
  if (want("omega-sl")) {
    Report r;
    r.title = "omega_SL slots";
    int count = 0;
    for (int L = 0; L < (int)g.lp.layers.size(); ++L)
      for (const auto &S : nbc_slots(g, L)) {
        omega_SL(g, L, S, &r);
        ++count;
      }
    r.note("slots: " + std::to_string(count));
    reports.push_back(r);
  }
  if (want("injectivity")) reports.push_back(verify_injectivity(g));
  if (want("generation")) {
    reports.push_back(verify_generation(g));
    for (int L = 0; L < (int)g.lp.layers.size(); ++L)
      reports.push_back(verify_module_structure(g, L));
  }
  if (want("coherence")) {
    bool found = false;
    for (int B : g.fp0.chambers) {
      Report probe = verify_brieskorn(g, B, 0);
      if (!probe.applicable) continue;
      found = true;
      reports.push_back(probe);
      for (int q = 1; q < g.A.d; ++q) reports.push_back(verify_brieskorn(g, B, q));
      break;
    }
    if (!found) {
      Report r;
      r.title = "restriction coherence";
      r.applicable = false;
      r.note("no chamber satisfies the adjacency hypothesis");
      reports.push_back(r);
    }
  }

  Table t;
  t.header = {"check", "status", "detail"};
  int bad = 0;
  for (const auto &r : reports) {
    std::string status = r.applicable ? (r.ok ? "pass" : "FAIL") : "inapplicable";
    if (r.applicable && !r.ok) ++bad;
    t.rows.push_back({r.title, status, join(r.lines, "; ")});
  }
  emit(t, format);
  return bad ? 1 : 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"exact cohomology engine for complexified toric arrangements"};
  app.require_subcommand(1);

  std::string input, choices_file, format = "tsv", which = "all";
  int maxdeg = -1;
  long seed = 0;
  app.add_option("--input", input, "arrangement description (JSON)")->required();
  app.add_option("--choices", choices_file, "choice overrides (JSON)");
  app.add_option("--format", format, "tsv or json")
      ->check(CLI::IsMember({"tsv", "json"}));
  app.add_option("--max-degree", maxdeg, "cap the cohomological degree");
  app.add_option("--seed", seed, "seed for randomized property suites");

  auto *c_layers = app.add_subcommand("layers", "layer poset");
  auto *c_faces = app.add_subcommand("faces", "torus faces");
  auto *c_sal = app.add_subcommand("salvetti", "toric Salvetti cell counts");
  auto *c_betti = app.add_subcommand("betti", "Betti numbers and torsion");
  auto *c_gen = app.add_subcommand("generators", "restriction table of the generators");
  auto *c_restrict = app.add_subcommand("restrict", "restriction matrices per layer");
  auto *c_omega = app.add_subcommand("omega-sl", "solved omega_SL classes");
  auto *c_verify = app.add_subcommand("verify", "run the verification suites");
  c_verify->add_option("which", which, "all|chains|homology|restriction|omega-sl|injectivity|generation|coherence")
      ->check(CLI::IsMember({"all", "chains", "homology", "restriction", "omega-sl",
                             "injectivity", "generation", "coherence"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) ? 2 : 0;
  }

  if (const char *tn = std::getenv("TORSAL_THREADS")) {
    int n = std::atoi(tn);
    if (n > 0) omp_set_num_threads(n);
  }

  try {
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open input file: " + input);
    json j = json::parse(in);
    SpecInput spec = parse_spec(j);
    if (!choices_file.empty()) {
      std::ifstream cin2(choices_file);
      if (!cin2) throw std::runtime_error("cannot open choices file: " + choices_file);
      merge_choices(spec.ov, json::parse(cin2));
    }
    Generators g = build_generators(spec.A, spec.ov);

    if (c_layers->parsed()) return cmd_layers(g, format);
    if (c_faces->parsed()) return cmd_faces(g, format);
    if (c_sal->parsed()) return cmd_salvetti(g, format);
    if (c_betti->parsed()) return cmd_betti(g, format, maxdeg);
    if (c_gen->parsed()) return cmd_generators(g, format);
    if (c_restrict->parsed()) return cmd_restrict(g, format, maxdeg);
    if (c_omega->parsed()) return cmd_omega_sl(g, format);
    if (c_verify->parsed()) return cmd_verify(g, format, which);
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
