#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "torsal/exact.hpp"

using namespace torsal;

static IntMat mk(int r, int c, std::vector<long> v) {
  IntMat m(r, c);
  for (int i = 0; i < r * c; ++i) m.a[i] = v[i];
  return m;
}

static void check_smith(const IntMat &M, bool parallel) {
  auto S = smith_normal_form(M, true, true, parallel);
  // U * M * V == D exactly
  CHECK(S.U.mul(M).mul(S.V) == S.D);
  // divisibility chain
  for (size_t i = 0; i + 1 < S.divisors.size(); ++i)
    CHECK(S.divisors[i + 1] % S.divisors[i] == 0);
  for (const auto &d : S.divisors) CHECK(d > 0);
  // D diagonal
  for (int i = 0; i < S.D.nr; ++i)
    for (int j = 0; j < S.D.nc; ++j)
      if (i != j) CHECK(S.D.at(i, j) == 0);
  // U, V unimodular: |det| = 1 via their own SNF divisors all 1
  auto su = smith_normal_form(S.U, false, false, false);
  CHECK(su.rank == S.U.nr);
  for (const auto &d : su.divisors) CHECK(d == 1);
  auto sv = smith_normal_form(S.V, false, false, false);
  CHECK(sv.rank == S.V.nr);
  for (const auto &d : sv.divisors) CHECK(d == 1);
}

TEST_CASE("smith normal form: pinned small cases") {
  // identity 2x2 -> diag(1,1)
  auto S = smith_normal_form(IntMat::identity(2));
  CHECK(S.divisors == IntVec{1, 1});
  // already diagonal with divisibility
  S = smith_normal_form(mk(2, 2, {2, 0, 0, 2}));
  CHECK(S.divisors == IntVec{2, 2});
  // |det| = 2 forces diag(1,2)
  S = smith_normal_form(mk(2, 2, {1, 2, 3, 4}));
  CHECK(S.divisors == IntVec{1, 2});
  check_smith(mk(2, 2, {1, 2, 3, 4}), false);
}

TEST_CASE("smith normal form: randomized reconstruction, serial == parallel") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> dim(1, 8), val(-9, 9);
  for (int trial = 0; trial < 40; ++trial) {
    IntMat M(dim(rng), dim(rng));
    for (auto &x : M.a) x = val(rng);
    check_smith(M, false);
    auto a = smith_normal_form(M, true, true, false);
    auto b = smith_normal_form(M, true, true, true);
    CHECK(a.D == b.D);
    CHECK(a.U == b.U);
    CHECK(a.V == b.V);
  }
}

TEST_CASE("hermite normal form") {
  auto H = hermite_normal_form(IntMat::identity(3));
  CHECK(H.H == IntMat::identity(3));
  H = hermite_normal_form(mk(1, 2, {2, 4}));
  CHECK(H.H == mk(1, 2, {2, 4}));
  H = hermite_normal_form(mk(2, 2, {1, 0, 1, 2}));
  CHECK(H.H == mk(2, 2, {1, 0, 0, 2}));
  // U*M = H for random matrices
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> dim(1, 7), val(-9, 9);
  for (int trial = 0; trial < 30; ++trial) {
    IntMat M(dim(rng), dim(rng));
    for (auto &x : M.a) x = val(rng);
    auto hd = hermite_normal_form(M);
    CHECK(hd.U.mul(M) == hd.H);
    auto su = smith_normal_form(hd.U, false, false, false);
    for (const auto &d : su.divisors) CHECK(d == 1);
    CHECK(su.rank == M.nr);
  }
}

TEST_CASE("solve_linear_integer") {
  // identity: solution = b, empty kernel
  auto s = solve_linear_integer(IntMat::identity(3), {Int(4), Int(-1), Int(7)});
  CHECK(s.over_z);
  CHECK(s.x == IntVec{4, -1, 7});
  CHECK(s.kernel.nc == 0);
  // [[2]] x = [1]: not over Z, x = 1/2 over Q
  s = solve_linear_integer(mk(1, 1, {2}), {Int(1)});
  CHECK(!s.over_z);
  CHECK(s.over_q);
  CHECK(s.xq[0] == Rat(1, 2));
  // [[1,1]] x = [0]: solution 0, kernel spans (1,-1)
  s = solve_linear_integer(mk(1, 2, {1, 1}), {Int(0)});
  CHECK(s.over_z);
  CHECK(mk(1, 2, {1, 1}).mul(s.x) == IntVec{0});
  CHECK(s.kernel.nc == 1);
  CHECK(s.kernel.at(0, 0) == -s.kernel.at(1, 0));
  CHECK(abs(s.kernel.at(0, 0)) == 1);
  // inconsistent
  s = solve_linear_integer(mk(2, 1, {1, 1}), {Int(0), Int(1)});
  CHECK(!s.over_z);
  CHECK(!s.over_q);
  // random verification by substitution
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> dim(1, 6), val(-5, 5);
  for (int trial = 0; trial < 40; ++trial) {
    IntMat M(dim(rng), dim(rng));
    for (auto &x : M.a) x = val(rng);
    IntVec t(M.nc);
    for (auto &x : t) x = val(rng);
    IntVec b = M.mul(t);
    auto r = solve_linear_integer(M, b);
    CHECK(r.over_z);
    CHECK(M.mul(r.x) == b);
    for (int j = 0; j < r.kernel.nc; ++j) {
      IntVec k(M.nc);
      for (int i = 0; i < M.nc; ++i) k[i] = r.kernel.at(i, j);
      IntVec z = M.mul(k);
      for (const auto &v : z) CHECK(v == 0);
    }
  }
}

TEST_CASE("integer kernel is saturated and correct") {
  auto K = integer_kernel(mk(1, 3, {2, 4, 6}));
  CHECK(K.nc == 2);
  // kernel of [2 4 6] over Z contains (1,1,-1): representable
  auto s = solve_linear_integer(K, {Int(1), Int(1), Int(-1)});
  CHECK(s.over_z);
}

TEST_CASE("quotient_group") {
  // full lattice -> trivial
  auto G = quotient_group(mk(2, 2, {1, 0, 0, 1}), 2);
  CHECK(G.invariants.empty());
  CHECK(G.free_rank == 0);
  CHECK(G.order == 1);
  CHECK(G.elements.size() == 1);
  // span{(1,0),(1,2)} -> Z/2 with representative (0,1/2)
  G = quotient_group(mk(2, 2, {1, 0, 1, 2}), 2);
  CHECK(G.invariants == IntVec{2});
  CHECK(G.order == 2);
  REQUIRE(G.generators.size() == 1);
  CHECK(G.generators[0] == RatVec{Rat(0), Rat(1, 2)});
  CHECK(G.elements.size() == 2);
  // unimodular -> trivial
  G = quotient_group(mk(2, 2, {1, 2, 0, 1}), 2);
  CHECK(G.invariants.empty());
  // order equals |det| for square nonsingular generators
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> val(-4, 4);
  for (int trial = 0; trial < 25; ++trial) {
    IntMat M(3, 3);
    for (auto &x : M.a) x = val(rng);
    auto S = smith_normal_form(M, false, false, false);
    if (S.rank < 3) continue;
    Int det = 1;
    for (const auto &d : S.divisors) det *= d;
    auto Q = quotient_group(M, 3);
    CHECK(Q.order == det);
    CHECK(Q.free_rank == 0);
    // every representative t satisfies M t integral
    for (const auto &t : Q.generators) {
      for (int i = 0; i < 3; ++i) {
        Rat v = 0;
        for (int j = 0; j < 3; ++j) v += Rat(M.at(i, j)) * t[j];
        CHECK(is_integral(v));
      }
    }
  }
  // free rank reported
  G = quotient_group(mk(1, 3, {0, 0, 2}), 3);
  CHECK(G.free_rank == 2);
  CHECK(G.invariants == IntVec{2});
}

TEST_CASE("rational rref / solve / nullspace") {
  RatMat M(2, 3);
  M.at(0, 0) = 1; M.at(0, 1) = 2; M.at(0, 2) = 3;
  M.at(1, 0) = 2; M.at(1, 1) = 4; M.at(1, 2) = 7;
  CHECK(rank_rat(M) == 2);
  auto x = solve_rat(M, {Rat(6), Rat(13)});
  REQUIRE(x.has_value());
  RatVec back = M.mul(*x);
  CHECK(back == RatVec{Rat(6), Rat(13)});
  auto N = nullspace_rat(M);
  CHECK(N.nc == 1);
  RatVec k(3);
  for (int i = 0; i < 3; ++i) k[i] = N.at(i, 0);
  RatVec z = M.mul(k);
  CHECK(z == RatVec{Rat(0), Rat(0)});
  auto none = solve_rat(RatMat::from_int(mk(2, 1, {1, 1})), {Rat(0), Rat(1)});
  CHECK(!none.has_value());
}
