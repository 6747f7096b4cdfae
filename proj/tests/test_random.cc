// Randomized corpus: small arrangements (d <= 2, <= 4 hypertori, offsets in
// {0, 1/2, 1/3}) with a fixed seed; checks torsion-freeness, the two-way
// Betti count, pairing identities, basis change and quotient pullbacks.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "torsal/generators.hpp"

using namespace torsal;

namespace {

std::vector<ToricArrangement> corpus(int want) {
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
    // make the characters primitive; reject the rest via validate()
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

std::vector<Generators> &built() {
  static std::vector<Generators> gs = [] {
    std::vector<Generators> v;
    for (const auto &A : corpus(10)) v.push_back(build_generators(A));
    return v;
  }();
  return gs;
}

}  // namespace

TEST_CASE("corpus: torsion-freeness and the two-way Betti count") {
  for (auto &g : built()) {
    INFO("d=" << g.A.d << " n=" << g.A.n());
    IntVec cb = combinatorial_betti(g);
    for (int k = 0; k <= g.A.d; ++k) {
      CHECK(g.N.homology(k).torsion.empty());
      CHECK(Int(g.N.homology(k).betti) == cb[k]);
    }
    CHECK(g.N.homology(1).betti == g.A.d + g.A.n());
  }
}

TEST_CASE("corpus: dual pairings are the identity, globally and per layer") {
  for (auto &g : built()) {
    for (size_t i = 0; i < g.hat.size(); ++i)
      for (size_t j = 0; j < g.hat.size(); ++j)
        CHECK(pairq(g.dual[i], g.hat[j]) == (i == j ? 1 : 0));
    for (const auto &lb : g.lbasis)
      for (size_t i = 0; i < lb.hat.size(); ++i)
        for (size_t j = 0; j < lb.hat.size(); ++j)
          CHECK(pairq(lb.dual[i], lb.hat[j]) == (i == j ? 1 : 0));
  }
}

TEST_CASE("corpus: galleries are minimal") {
  for (auto &g : built())
    for (const auto &[M, gal] : g.ch.gallery) {
      (void)M;
      size_t seps = separators(g.fp0.faces[gal.front()].sign,
                               g.fp0.faces[gal.back()].sign)
                        .size();
      CHECK(gal.size() == seps + 1);
    }
}

TEST_CASE("corpus: basis change identities on sampled chamber pairs") {
  std::mt19937 rng(777);
  for (auto &g : built()) {
    for (int M = 0; M < (int)g.lp.layers.size(); ++M) {
      if (g.lp.layers[M].rank != g.A.d - 1) continue;
      int nc = (int)g.fp0.chambers.size();
      int B = g.fp0.chambers[rng() % nc];
      int Bp = g.fp0.chambers[rng() % nc];
      Report r = verify_basis_change(g, M, B, Bp);
      INFO(r.str());
      CHECK(r.ok);
    }
  }
}

TEST_CASE("corpus: quotient pullbacks of the omega classes") {
  for (auto &g : built()) {
    // one positive-rank layer per arrangement keeps the corpus fast
    for (int L = 1; L < (int)g.lp.layers.size(); ++L) {
      Report r = verify_quotient_omega(g, L);
      INFO(r.str());
      CHECK(r.ok);
      break;
    }
  }
}

TEST_CASE("corpus: combined restriction is injective over Z") {
  int done = 0;
  for (auto &g : built()) {
    if (done >= 4) break;
    Report r = verify_injectivity(g);
    INFO("d=" << g.A.d << " n=" << g.A.n() << "\n" << r.str());
    CHECK(r.ok);
    ++done;
  }
}
