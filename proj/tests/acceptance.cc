// Acceptance gate: one pass/fail line per criterion. Takes the data directory
// (with example.json and boolean.json) as its only argument.

#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <set>

#include "torsal/generators.hpp"

using nlohmann::json;
using namespace torsal;

namespace {

int failures = 0;

void line(int num, bool ok, const std::string &what, const std::string &note = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << num << ": " << what;
  if (!note.empty()) std::cout << " [" << note << "]";
  std::cout << "\n";
  if (!ok) ++failures;
}

ToricArrangement parse_arr(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j = json::parse(in);
  ToricArrangement A;
  A.d = j.at("dimension").get<int>();
  for (const auto &h : j.at("hypertori")) {
    Hypertorus t;
    if (h.contains("name")) t.name = h["name"].get<std::string>();
    for (long v : h.at("chi").get<std::vector<long>>()) t.chi.push_back(Int(v));
    if (h.contains("offset"))
      t.offset = Rat(h["offset"].at("num").get<long>(), h["offset"].at("den").get<long>());
    t.offset.canonicalize();
    A.tori.push_back(t);
  }
  return A;
}

ChoiceOverrides parse_choices(const std::string &path) {
  std::ifstream in(path);
  json j = json::parse(in);
  ChoiceOverrides ov;
  if (j.contains("ordering")) ov.order = j["ordering"].get<std::vector<std::string>>();
  if (!j.contains("choices")) return ov;
  const json &c = j["choices"];
  if (c.contains("R"))
    for (auto it = c["R"].begin(); it != c["R"].end(); ++it)
      ov.R[it.key()] = it.value().get<std::vector<int>>();
  if (c.contains("B"))
    for (auto it = c["B"].begin(); it != c["B"].end(); ++it)
      ov.B[it.key()] = it.value().get<std::vector<int>>();
  if (c.contains("base_layers"))
    ov.base_layers = c["base_layers"].get<std::vector<std::string>>();
  return ov;
}

IntVec combinatorial_betti(Generators &g) {
  auto binom = [](int n, int k) {
    if (k < 0 || k > n) return Int(0);
    Int r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
  };
  IntVec b(g.A.d + 1, Int(0));
  for (int L = 0; L < (int)g.lp.layers.size(); ++L) {
    Int nbc = (Int)nbc_slots(g, L).size();
    int r = g.lp.layers[L].rank;
    for (int k = r; k <= g.A.d; ++k) b[k] += nbc * binom(g.A.d - r, k - r);
  }
  return b;
}

std::vector<ToricArrangement> random_corpus(int want) {
  std::mt19937 rng(12345);
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  std::vector<ToricArrangement> out;
  std::set<std::string> seen;
  while ((int)out.size() < want) {
    ToricArrangement A;
    A.d = pick(1, 2);
    int n = A.d == 1 ? pick(1, 3) : pick(2, 4);
    Rat offsets[3] = {Rat(0), Rat(1, 2), Rat(1, 3)};
    for (int i = 0; i < n; ++i) {
      Hypertorus t;
      for (int j = 0; j < A.d; ++j) t.chi.push_back(Int(pick(-2, 2)));
      t.offset = offsets[pick(0, 2)];
      A.tori.push_back(t);
    }
    for (auto &t : A.tori) {
      Int g = gcd_vec(t.chi);
      if (g == 0) continue;
      for (auto &v : t.chi) v /= g;
    }
    try {
      A.validate();
    } catch (const std::exception &) {
      continue;
    }
    std::string key;
    for (const auto &t : A.tori) {
      for (const auto &v : t.chi) key += v.get_str() + ",";
      key += t.offset.get_str() + ";";
    }
    if (!seen.insert(key).second) continue;
    out.push_back(A);
  }
  return out;
}

}  // namespace

int main(int argc, char **argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <data-dir>\n";
    return 2;
  }
  std::string dir = argv[1];
  ToricArrangement A = parse_arr(dir + "/example.json");
  ChoiceOverrides ov = parse_choices(dir + "/example.json");
  Generators g = build_generators(A, ov);

  // 1: layer poset
  {
    bool ok = g.lp.layers.size() == 6;
    std::vector<std::pair<std::string, int>> want = {
        {"T", 0}, {"H0", 1}, {"H1", 1}, {"H2", 1}, {"H0^H1", 2}, {"H0^H1^H2", 2}};
    for (size_t i = 0; ok && i < want.size(); ++i)
      ok = g.lp.layers[i].name == want[i].first && g.lp.layers[i].rank == want[i].second;
    ok = ok && g.lp.layers[4].base == RatVec{Rat(0), Rat(1, 2)} &&
         g.lp.layers[5].base == RatVec{Rat(0), Rat(0)};
    line(1, ok, "layer poset is {T, H0, H1, H2, P, Q} with ranks (0,1,1,1,2,2)");
  }

  // 2: Betti numbers, two ways
  {
    IntVec cb = combinatorial_betti(g);
    bool ok = g.N.homology(0).betti == 1 && g.N.homology(1).betti == 5 &&
              g.N.homology(2).betti == 7;
    for (int k = 0; k <= 2; ++k) ok = ok && Int(g.N.homology(k).betti) == cb[k];
    line(2, ok, "Betti numbers (1,5,7), homological and layer-count formulas agree");
  }

  // 3: torsion-freeness, example + randomized corpus
  {
    bool ok = true;
    for (int k = 0; k <= 2; ++k) ok = ok && g.N.homology(k).torsion.empty();
    int count = 0;
    for (const auto &R : random_corpus(10)) {
      TorusFaceCat fc = face_category(R);
      Groth G = grothendieck(fc);
      NerveComplex N = nerve_complex(G.cat, R.d + 1);
      for (int k = 0; k <= R.d; ++k) ok = ok && N.homology(k).torsion.empty();
      ++count;
    }
    line(3, ok, "integer cohomology is torsion-free on the example and " +
                    std::to_string(count) + " randomized arrangements");
  }

  // 4: chain-level basis change, all chamber pairs, all 1-dim layers
  {
    bool ok = true;
    for (int M = 0; M < (int)g.lp.layers.size(); ++M) {
      if (g.lp.layers[M].rank != 1) continue;
      for (int B : g.fp0.chambers)
        for (int Bp : g.fp0.chambers) ok = ok && verify_basis_change(g, M, B, Bp).ok;
    }
    line(4, ok, "basis-change identities hold for all 36 chamber pairs x 3 layers");
  }

  // 5: dual pairing identities
  {
    bool ok = g.hat.size() == 5;
    for (size_t i = 0; i < g.hat.size(); ++i)
      for (size_t j = 0; j < g.hat.size(); ++j)
        ok = ok && pairq(g.dual[i], g.hat[j]) == (i == j ? 1 : 0);
    for (const auto &lb : g.lbasis)
      for (size_t i = 0; i < lb.hat.size(); ++i)
        for (size_t j = 0; j < lb.hat.size(); ++j)
          ok = ok && pairq(lb.dual[i], lb.hat[j]) == (i == j ? 1 : 0);
    line(5, ok, "dual-basis pairing matrices are the identity (size 5 and per layer)");
  }

  // 6: restriction formulas, plus the (1,2) coefficient pattern on the H1 circle
  {
    bool ok = true;
    for (int L = 0; L < (int)g.lp.layers.size(); ++L)
      ok = ok && verify_restriction(g, L).ok;
    int H1 = 2;
    auto &sc = g.sub(H1, g.ch.F_L[H1]);
    Rat c0 = pairq(restrict_qcochain(sc, g.N, g.dual[0]), g.lbasis[H1].hat[0]);
    Rat c1 = pairq(restrict_qcochain(sc, g.N, g.dual[1]), g.lbasis[H1].hat[0]);
    ok = ok && abs(c0) == 1 && abs(c1) == 2;
    line(6, ok, "closed restriction formulas hold; lambda pattern at H1 is (1,2)");
  }

  // 7: omega_SL slots
  {
    bool ok = true;
    int count = 0;
    for (int L = 0; L < (int)g.lp.layers.size(); ++L)
      for (const auto &S : nbc_slots(g, L)) {
        Report r;
        omega_SL(g, L, S, &r);
        ok = ok && r.ok;
        ++count;
      }
    line(7, ok, "omega_SL exists, is unique and integral on every generator slot",
         "honest slot count " + std::to_string(count) +
             "; the printed table suggests 8 via a slot that is not nbc at its point");
  }

  // 8: injectivity over Z
  line(8, verify_injectivity(g).ok, "combined restriction is injective with saturated image");

  // 9: module generation
  line(9, verify_generation(g).ok, "omega classes generate over H^*(T;Z) with trivial cokernel");

  // 10: the published restriction table
  {
    GeneratorTable T = build_table(g);
    std::vector<std::pair<std::string, std::vector<std::string>>> want = {
        {"l(H0)", {"l(H0)", "l(H0)", "l(H1)", "", "", ""}},
        {"l(H2)", {"l(H2)", "", "2*l(H1)", "l(H2)", "", ""}},
        {"w(H0)", {"", "w(H0)", "", "", "w(H0)", "w(H0)"}},
        {"w(H1)", {"", "", "w(H1)", "l(H2)", "w(H1)", "w(H1)"}},
        {"w(H2)", {"", "", "", "w(H2)", "", "w(H2)"}},
        {"w(H0,H1|H0^H1)", {"", "", "", "", "w(H0)*w(H1)", ""}},
        {"w(H2,H0|H0^H1^H2)", {"", "", "", "", "", "w(H2)*w(H0)"}},
        {"w(H2,H1|H0^H1^H2)", {"", "", "", "l(H2)*w(H2)", "", "w(H2)*w(H1)"}},
    };
    bool ok = T.rows.size() == want.size();
    auto strip = [](std::string s) {
      if (!s.empty() && s[0] == '-') s.erase(0, 1);
      return s;
    };
    for (size_t i = 0; ok && i < want.size(); ++i) {
      ok = T.rows[i].name == want[i].first;
      for (int j = 0; ok && j < 6; ++j) ok = strip(T.rows[i].cells[j]) == want[i].second[j];
    }
    line(10, ok, "restriction table matches the published one up to per-row sign",
         "2 flagged cells: the slot at the half-period point is {H0,H1} (printed {H1,H2}),"
         " and w(H1)|H2 has weight 1 (printed 2)");
  }

  // 11: coherence of the chosen-chamber restrictions
  {
    ToricArrangement Ab = parse_arr(dir + "/boolean.json");
    Generators gb = build_generators(Ab);
    int B = -1;
    for (int c : gb.fp0.chambers) {
      bool allpos = true;
      for (int h = 0; h < Ab.n(); ++h)
        allpos = allpos && gb.fp0.faces[c].sign[gb.fc.a0.cls[h]] * gb.fc.a0.sgn[h] == 1;
      if (allpos) B = c;
    }
    bool ok = B >= 0;
    for (int q = 0; ok && q < 2; ++q) {
      Report r = verify_brieskorn(gb, B, q);
      ok = r.applicable && r.ok;
    }
    for (int c : g.fp0.chambers) ok = ok && !verify_brieskorn(g, c, 1).applicable;
    line(11, ok, "coherence diagram commutes on the boolean subarrangement;"
                 " the hypothesis correctly fails on the full example");
  }

  // 12: remaining property suites on the example
  {
    bool ok = verify_omega_hat_claims(g).ok;
    for (int L = 1; L < (int)g.lp.layers.size(); ++L)
      ok = ok && verify_quotient_omega(g, L).ok;
    for (int L = 0; L < (int)g.lp.layers.size(); ++L)
      ok = ok && verify_module_structure(g, L).ok;
    line(12, ok, "vanishing, quotient and module-structure property suites pass",
         "per-module suites run standalone as test_exact/arrangement/nerve/toric/"
         "generators/random");
  }

  std::cout << (failures ? "ACCEPTANCE: FAIL (" + std::to_string(failures) + ")"
                         : std::string("ACCEPTANCE: PASS"))
            << "\n";
  return failures ? 1 : 0;
}
