#include "torsal/exact.hpp"

#include <omp.h>

#include <sstream>
#include <stdexcept>

namespace torsal {

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::transpose() const {
  IntMat t(nc, nr);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntVec IntMat::mul(const IntVec &x) const {
  if ((int)x.size() != nc) throw std::invalid_argument("IntMat::mul: size mismatch");
  IntVec r(nr);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j)
      if (at(i, j) != 0) r[i] += at(i, j) * x[j];
  return r;
}

IntMat IntMat::mul(const IntMat &B) const {
  if (nc != B.nr) throw std::invalid_argument("IntMat::mul: shape mismatch");
  IntMat r(nr, B.nc);
  for (int i = 0; i < nr; ++i)
    for (int k = 0; k < nc; ++k) {
      const Int &m = at(i, k);
      if (m == 0) continue;
      for (int j = 0; j < B.nc; ++j)
        if (B.at(k, j) != 0) r.at(i, j) += m * B.at(k, j);
    }
  return r;
}

bool IntMat::is_zero() const {
  for (const auto &x : a)
    if (x != 0) return false;
  return true;
}

std::string IntMat::str() const {
  std::ostringstream os;
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nc; ++j) os << at(i, j) << (j + 1 < nc ? " " : "");
    os << "\n";
  }
  return os.str();
}

RatVec RatMat::mul(const RatVec &x) const {
  if ((int)x.size() != nc) throw std::invalid_argument("RatMat::mul: size mismatch");
  RatVec r(nr, Rat(0));
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j)
      if (at(i, j) != 0) r[i] += at(i, j) * x[j];
  return r;
}

RatMat RatMat::from_int(const IntMat &m) {
  RatMat r(m.nr, m.nc);
  for (size_t k = 0; k < m.a.size(); ++k) r.a[k] = Rat(m.a[k]);
  return r;
}

std::vector<int> rref(RatMat &m) {
  std::vector<int> pivots;
  int r = 0;
  for (int j = 0; j < m.nc && r < m.nr; ++j) {
    int p = -1;
    for (int i = r; i < m.nr; ++i)
      if (m.at(i, j) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int k = 0; k < m.nc; ++k) swap(m.at(p, k), m.at(r, k));
    Rat inv = 1 / m.at(r, j);
    for (int k = j; k < m.nc; ++k) m.at(r, k) *= inv;
    for (int i = 0; i < m.nr; ++i) {
      if (i == r || m.at(i, j) == 0) continue;
      Rat f = m.at(i, j);
      for (int k = j; k < m.nc; ++k) m.at(i, k) -= f * m.at(r, k);
    }
    pivots.push_back(j);
    ++r;
  }
  return pivots;
}

int rank_rat(RatMat m) { return (int)rref(m).size(); }

std::optional<RatVec> solve_rat(const RatMat &M, const RatVec &b) {
  if ((int)b.size() != M.nr) throw std::invalid_argument("solve_rat: size mismatch");
  RatMat aug(M.nr, M.nc + 1);
  for (int i = 0; i < M.nr; ++i) {
    for (int j = 0; j < M.nc; ++j) aug.at(i, j) = M.at(i, j);
    aug.at(i, M.nc) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == M.nc) return std::nullopt;
  RatVec x(M.nc, Rat(0));
  for (size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug.at((int)k, M.nc);
  return x;
}

RatMat nullspace_rat(const RatMat &M) {
  RatMat m = M;
  auto piv = rref(m);
  std::vector<char> is_piv(M.nc, 0);
  for (int j : piv) is_piv[j] = 1;
  std::vector<int> free_cols;
  for (int j = 0; j < M.nc; ++j)
    if (!is_piv[j]) free_cols.push_back(j);
  RatMat K(M.nc, (int)free_cols.size());
  for (size_t f = 0; f < free_cols.size(); ++f) {
    int j = free_cols[f];
    K.at(j, (int)f) = 1;
    for (size_t k = 0; k < piv.size(); ++k) K.at(piv[k], (int)f) = -m.at((int)k, j);
  }
  return K;
}

namespace {

// Floor quotient with positive divisor.
Int fdiv(const Int &a, const Int &p) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return q;
}

struct PivotPos {
  int i = -1, j = -1;
};

// Smallest-absolute-value nonzero entry of the submatrix with rows, cols >= t;
// ties broken by row then column index. Early exit on |entry| == 1.
PivotPos find_pivot(const IntMat &M, int t) {
  PivotPos best;
  Int best_abs;
  for (int i = t; i < M.nr; ++i) {
    for (int j = t; j < M.nc; ++j) {
      const Int &v = M.at(i, j);
      if (v == 0) continue;
      Int av = abs(v);
      if (best.i < 0 || av < best_abs) {
        best = {i, j};
        best_abs = av;
        if (best_abs == 1) return best;
      }
    }
  }
  return best;
}

void swap_rows(IntMat &M, int i, int j) {
  if (i == j) return;
  for (int k = 0; k < M.nc; ++k) swap(M.at(i, k), M.at(j, k));
}
void swap_cols(IntMat &M, int i, int j) {
  if (i == j) return;
  for (int k = 0; k < M.nr; ++k) swap(M.at(k, i), M.at(k, j));
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMat &M, bool want_U, bool want_V,
                                     bool parallel) {
  SmithDecomposition S;
  S.D = M;
  IntMat &D = S.D;
  if (want_U) S.U = IntMat::identity(M.nr);
  if (want_V) S.V = IntMat::identity(M.nc);
  S.have_U = want_U;
  S.have_V = want_V;

  int tmax = std::min(M.nr, M.nc);
  for (int t = 0; t < tmax; ++t) {
    bool done = false;
    while (!done) {
      PivotPos p = find_pivot(D, t);
      if (p.i < 0) { done = true; break; }  // submatrix zero: finished entirely
      swap_rows(D, t, p.i);
      if (want_U) swap_rows(S.U, t, p.i);
      swap_cols(D, t, p.j);
      if (want_V) swap_cols(S.V, t, p.j);
      if (D.at(t, t) < 0) {
        for (int k = 0; k < D.nc; ++k) D.at(t, k) = -D.at(t, k);
        if (want_U)
          for (int k = 0; k < S.U.nc; ++k) S.U.at(t, k) = -S.U.at(t, k);
      }
      Int piv = D.at(t, t);

      // Clear column t below the pivot.
#pragma omp parallel for schedule(dynamic, 16) if (parallel && D.nr - t > 64)
      for (int i = t + 1; i < D.nr; ++i) {
        if (D.at(i, t) == 0) continue;
        Int q = fdiv(D.at(i, t), piv);
        if (q == 0) continue;
        for (int k = t; k < D.nc; ++k)
          if (D.at(t, k) != 0) D.at(i, k) -= q * D.at(t, k);
        if (want_U)
          for (int k = 0; k < S.U.nc; ++k)
            if (S.U.at(t, k) != 0) S.U.at(i, k) -= q * S.U.at(t, k);
      }
      // Clear row t right of the pivot.
#pragma omp parallel for schedule(dynamic, 16) if (parallel && D.nc - t > 64)
      for (int j = t + 1; j < D.nc; ++j) {
        if (D.at(t, j) == 0) continue;
        Int q = fdiv(D.at(t, j), piv);
        if (q == 0) continue;
        for (int k = t; k < D.nr; ++k)
          if (D.at(k, t) != 0) D.at(k, j) -= q * D.at(k, t);
        if (want_V)
          for (int k = 0; k < S.V.nr; ++k)
            if (S.V.at(k, t) != 0) S.V.at(k, j) -= q * S.V.at(k, t);
      }

      bool cross_clear = true;
      for (int i = t + 1; i < D.nr && cross_clear; ++i)
        if (D.at(i, t) != 0) cross_clear = false;
      for (int j = t + 1; j < D.nc && cross_clear; ++j)
        if (D.at(t, j) != 0) cross_clear = false;
      if (!cross_clear) continue;

      // Enforce that the pivot divides the rest of the submatrix.
      int bad_row = -1;
      for (int i = t + 1; i < D.nr && bad_row < 0; ++i)
        for (int j = t + 1; j < D.nc; ++j)
          if (D.at(i, j) % piv != 0) { bad_row = i; break; }
      if (bad_row >= 0) {
        for (int k = 0; k < D.nc; ++k) D.at(t, k) += D.at(bad_row, k);
        if (want_U)
          for (int k = 0; k < S.U.nc; ++k) S.U.at(t, k) += S.U.at(bad_row, k);
        continue;
      }
      done = true;
    }
    if (D.at(t, t) == 0) break;
    S.divisors.push_back(D.at(t, t));
    ++S.rank;
  }
  return S;
}

HermiteDecomposition hermite_normal_form(const IntMat &M) {
  HermiteDecomposition H;
  H.H = M;
  H.U = IntMat::identity(M.nr);
  IntMat &A = H.H;
  int r = 0;
  for (int j = 0; j < A.nc && r < A.nr; ++j) {
    // gcd elimination in column j among rows >= r
    while (true) {
      int p = -1;
      Int best_abs;
      for (int i = r; i < A.nr; ++i) {
        if (A.at(i, j) == 0) continue;
        Int av = abs(A.at(i, j));
        if (p < 0 || av < best_abs) { p = i; best_abs = av; }
      }
      if (p < 0) { p = -2; break; }  // column clear, no pivot here
      swap_rows(A, r, p);
      swap_rows(H.U, r, p);
      if (A.at(r, j) < 0) {
        for (int k = 0; k < A.nc; ++k) A.at(r, k) = -A.at(r, k);
        for (int k = 0; k < H.U.nc; ++k) H.U.at(r, k) = -H.U.at(r, k);
      }
      Int piv = A.at(r, j);
      bool clear = true;
      for (int i = r + 1; i < A.nr; ++i) {
        if (A.at(i, j) == 0) continue;
        Int q = fdiv(A.at(i, j), piv);
        for (int k = 0; k < A.nc; ++k)
          if (A.at(r, k) != 0) A.at(i, k) -= q * A.at(r, k);
        for (int k = 0; k < H.U.nc; ++k)
          if (H.U.at(r, k) != 0) H.U.at(i, k) -= q * H.U.at(r, k);
        if (A.at(i, j) != 0) clear = false;
      }
      if (clear) break;
    }
    if (A.at(r, j) == 0) continue;  // no pivot in this column
    Int piv = A.at(r, j);
    for (int i = 0; i < r; ++i) {
      if (A.at(i, j) == 0) continue;
      Int q = fdiv(A.at(i, j), piv);
      if (q == 0) continue;
      for (int k = 0; k < A.nc; ++k)
        if (A.at(r, k) != 0) A.at(i, k) -= q * A.at(r, k);
      for (int k = 0; k < H.U.nc; ++k)
        if (H.U.at(r, k) != 0) H.U.at(i, k) -= q * H.U.at(r, k);
    }
    ++r;
  }
  return H;
}

IntMat integer_kernel(const IntMat &M) {
  auto hd = hermite_normal_form(M.transpose());
  int rank = 0;
  for (int i = 0; i < hd.H.nr; ++i) {
    bool z = true;
    for (int j = 0; j < hd.H.nc; ++j)
      if (hd.H.at(i, j) != 0) { z = false; break; }
    if (!z) rank = i + 1;
  }
  IntMat K(M.nc, hd.H.nr - rank);
  for (int i = rank; i < hd.H.nr; ++i)
    for (int j = 0; j < M.nc; ++j) K.at(j, i - rank) = hd.U.at(i, j);
  return K;
}

IntSolve solve_linear_integer(const IntMat &M, const IntVec &b) {
  if ((int)b.size() != M.nr) throw std::invalid_argument("solve_linear_integer: size mismatch");
  IntSolve out;
  auto hd = hermite_normal_form(M.transpose());  // hd.U * M^T = hd.H
  // C := H^T satisfies M * W = C with W = U^T; columns of C are echelon.
  int n = M.nc, m = M.nr;
  std::vector<int> pivot_row(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (hd.H.at(i, j) != 0) { pivot_row[i] = j; break; }
  IntVec res = b;
  RatVec resq(m);
  for (int i = 0; i < m; ++i) resq[i] = Rat(b[i]);
  IntVec y(n);
  RatVec yq(n, Rat(0));
  bool int_ok = true, rat_ok = true;
  for (int c = 0; c < n && rat_ok; ++c) {
    int pr = pivot_row[c];
    if (pr < 0) continue;  // zero column: kernel direction
    const Int &pv = hd.H.at(c, pr);
    // integer attempt
    if (int_ok) {
      if (res[pr] % pv == 0) {
        Int q = res[pr] / pv;
        y[c] = q;
        if (q != 0)
          for (int j = 0; j < m; ++j) res[j] -= q * hd.H.at(c, j);
      } else {
        int_ok = false;
      }
    }
    // rational always
    Rat qq = Rat(resq[pr]) / Rat(pv);
    yq[c] = qq;
    if (qq != 0)
      for (int j = 0; j < m; ++j) resq[j] -= qq * Rat(hd.H.at(c, j));
  }
  for (int j = 0; j < m; ++j) {
    if (resq[j] != 0) rat_ok = false;
    if (int_ok && res[j] != 0) int_ok = false;
  }
  out.over_q = rat_ok;
  out.over_z = rat_ok && int_ok;
  if (out.over_z) {
    out.x.assign(n, Int(0));
    for (int c = 0; c < n; ++c)
      if (y[c] != 0)
        for (int k = 0; k < n; ++k) out.x[k] += hd.U.at(c, k) * y[c];
  }
  if (out.over_q) {
    out.xq.assign(n, Rat(0));
    for (int c = 0; c < n; ++c)
      if (yq[c] != 0)
        for (int k = 0; k < n; ++k) out.xq[k] += Rat(hd.U.at(c, k)) * yq[c];
  }
  out.kernel = integer_kernel(M);
  return out;
}

FiniteAbelianGroup quotient_group(const IntMat &gens, int ambient) {
  if (gens.nr > 0 && gens.nc != ambient)
    throw std::invalid_argument("quotient_group: generator width mismatch");
  FiniteAbelianGroup G;
  IntMat M = gens.nr == 0 ? IntMat(0, ambient) : gens;
  auto S = smith_normal_form(M, false, true, false);
  G.free_rank = ambient - S.rank;
  for (int i = 0; i < S.rank; ++i) {
    const Int &d = S.divisors[i];
    if (d > 1) {
      G.invariants.push_back(d);
      RatVec t(ambient);
      for (int k = 0; k < ambient; ++k) t[k] = Rat(S.V.at(k, i)) / Rat(d);
      G.generators.push_back(reduce_mod_Z(t));
      G.order *= d;
    }
  }
  // enumerate all torsion elements in mixed-radix order
  size_t s = G.invariants.size();
  std::vector<Int> idx(s, Int(0));
  while (true) {
    RatVec e(ambient, Rat(0));
    for (size_t k = 0; k < s; ++k)
      for (int c = 0; c < ambient; ++c) e[c] += Rat(idx[k]) * G.generators[k][c];
    G.elements.push_back(reduce_mod_Z(e));
    size_t k = s;
    while (k > 0) {
      --k;
      idx[k] += 1;
      if (idx[k] < G.invariants[k]) break;
      idx[k] = 0;
      if (k == 0) { k = SIZE_MAX; break; }
    }
    if (s == 0 || k == SIZE_MAX) break;
  }
  return G;
}

Int gcd_vec(const IntVec &v) {
  Int g = 0;
  for (const auto &x : v) {
    Int gg;
    mpz_gcd(gg.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    g = gg;
  }
  return g;
}

bool is_integral(const Rat &q) { return q.get_den() == 1; }

Int floor_rat(const Rat &q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return f;
}

RatVec reduce_mod_Z(const RatVec &v) {
  RatVec r = v;
  for (auto &x : r) x -= Rat(floor_rat(x));
  return r;
}

}  // namespace torsal
