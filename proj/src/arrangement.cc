#include "torsal/arrangement.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace torsal {

Sign HyperplaneArrangement::eval(int h, const RatVec &x) const {
  Rat v = -hp[h].offset;
  for (int j = 0; j < d; ++j) v += hp[h].normal[j] * x[j];
  return sgn(v);
}

SignVec HyperplaneArrangement::signs(const RatVec &x) const {
  SignVec sv(n());
  for (int h = 0; h < n(); ++h) sv[h] = eval(h, x);
  return sv;
}

// ---------------------------------------------------------------- Fourier-Motzkin

namespace {

void normalize_con(LinCon &c) {
  Rat s;
  for (const auto &v : c.a)
    if (v != 0) { s = abs(v); break; }
  if (s == 0 && c.b != 0) s = abs(c.b);
  if (s == 0) return;
  for (auto &v : c.a) v /= s;
  c.b /= s;
}

struct ConLess {
  bool operator()(const LinCon &x, const LinCon &y) const {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.strict < y.strict;
  }
};

// Drop constant constraints (detecting infeasible ones), normalize, dedup.
// Returns false on an infeasible constant constraint.
bool simplify_cons(std::vector<LinCon> &cons) {
  std::set<LinCon, ConLess> seen;
  std::vector<LinCon> out;
  for (auto &c : cons) {
    bool allz = true;
    for (const auto &v : c.a)
      if (v != 0) { allz = false; break; }
    if (allz) {
      int s = sgn(c.b);
      if (s < 0 || (s == 0 && c.strict)) return false;
      continue;
    }
    normalize_con(c);
    if (seen.insert(c).second) out.push_back(c);
  }
  cons.swap(out);
  return true;
}

// Eliminate variable k-1; result is over k-1 variables.
std::vector<LinCon> eliminate_last(int k, const std::vector<LinCon> &cons) {
  std::vector<LinCon> out;
  std::vector<const LinCon *> pos, neg;
  for (const auto &c : cons) {
    int s = sgn(c.a[k - 1]);
    if (s > 0)
      pos.push_back(&c);
    else if (s < 0)
      neg.push_back(&c);
    else {
      LinCon r{RatVec(c.a.begin(), c.a.end() - 1), c.b, c.strict};
      out.push_back(std::move(r));
    }
  }
  for (const LinCon *p : pos)
    for (const LinCon *n : neg) {
      // scale p by -cn > 0 and n by cp > 0; the x terms cancel
      Rat cp = p->a[k - 1], cn = n->a[k - 1];
      LinCon r;
      r.a.resize(k - 1);
      for (int j = 0; j < k - 1; ++j) r.a[j] = -cn * p->a[j] + cp * n->a[j];
      r.b = -cn * p->b + cp * n->b;
      r.strict = p->strict || n->strict;
      out.push_back(std::move(r));
    }
  return out;
}

}  // namespace

std::optional<RatVec> fm_feasible(int k, std::vector<LinCon> cons) {
  std::vector<std::vector<LinCon>> levels(k + 1);
  if (!simplify_cons(cons)) return std::nullopt;
  levels[k] = std::move(cons);
  for (int kk = k; kk >= 1; --kk) {
    auto next = eliminate_last(kk, levels[kk]);
    if (!simplify_cons(next)) return std::nullopt;
    levels[kk - 1] = std::move(next);
  }
  // back-substitute a witness
  RatVec s;
  for (int kk = 1; kk <= k; ++kk) {
    bool hasL = false, hasU = false, strictL = false, strictU = false;
    Rat L, U;
    for (const auto &c : levels[kk]) {
      int sc = sgn(c.a[kk - 1]);
      if (sc == 0) continue;
      Rat rest = c.b;
      for (int j = 0; j < kk - 1; ++j) rest += c.a[j] * s[j];
      Rat bound = -rest / c.a[kk - 1];
      if (sc > 0) {
        if (!hasL || bound > L) { L = bound; strictL = c.strict; hasL = true; }
        else if (bound == L) strictL = strictL || c.strict;
      } else {
        if (!hasU || bound < U) { U = bound; strictU = c.strict; hasU = true; }
        else if (bound == U) strictU = strictU || c.strict;
      }
    }
    Rat x;
    if (!hasL && !hasU) x = 0;
    else if (!hasU) x = L + 1;
    else if (!hasL) x = U - 1;
    else if (L < U) x = (L + U) / 2;
    else {
      assert(L == U && !strictL && !strictU);
      x = L;
    }
    s.push_back(x);
  }
  return s;
}

std::pair<std::optional<Rat>, std::optional<Rat>> fm_bounds(int k, std::vector<LinCon> cons,
                                                            int var) {
  for (auto &c : cons) std::swap(c.a[0], c.a[var]);
  bool ok = simplify_cons(cons);
  assert(ok);
  for (int kk = k; kk >= 2; --kk) {
    cons = eliminate_last(kk, cons);
    ok = simplify_cons(cons);
    assert(ok);
  }
  std::optional<Rat> lo, hi;
  for (const auto &c : cons) {
    int s = sgn(c.a[0]);
    if (s == 0) continue;
    Rat bound = -c.b / c.a[0];
    if (s > 0) {
      if (!lo || bound > *lo) lo = bound;
    } else {
      if (!hi || bound < *hi) hi = bound;
    }
  }
  return {lo, hi};
}

// ---------------------------------------------------------------- realization

std::optional<AffineSubspace> solve_equations(const HyperplaneArrangement &arr,
                                              const std::vector<int> &zeros) {
  AffineSubspace ss;
  if (zeros.empty()) {
    ss.p0.assign(arr.d, Rat(0));
    ss.V = RatMat(arr.d, arr.d);
    for (int i = 0; i < arr.d; ++i) ss.V.at(i, i) = 1;
    return ss;
  }
  RatMat M((int)zeros.size(), arr.d);
  RatVec b(zeros.size());
  for (size_t i = 0; i < zeros.size(); ++i) {
    for (int j = 0; j < arr.d; ++j) M.at((int)i, j) = arr.hp[zeros[i]].normal[j];
    b[i] = arr.hp[zeros[i]].offset;
  }
  auto x = solve_rat(M, b);
  if (!x) return std::nullopt;
  ss.p0 = *x;
  ss.V = nullspace_rat(M);
  return ss;
}

namespace {

// a = V^T n_h, b = <n_h, p0> - c_h: the induced form of hyperplane h on the
// parametrized subspace.
void induced_form(const HyperplaneArrangement &arr, const AffineSubspace &ss, int h,
                  RatVec &a, Rat &b) {
  int k = ss.dim();
  a.assign(k, Rat(0));
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < arr.d; ++i) a[j] += arr.hp[h].normal[i] * ss.V.at(i, j);
  b = -arr.hp[h].offset;
  for (int i = 0; i < arr.d; ++i) b += arr.hp[h].normal[i] * ss.p0[i];
}

bool is_zero_vec(const RatVec &a) {
  for (const auto &v : a)
    if (v != 0) return false;
  return true;
}

RatVec embed(const AffineSubspace &ss, const RatVec &s) {
  RatVec x = ss.p0;
  for (int i = 0; i < (int)x.size(); ++i)
    for (int j = 0; j < ss.dim(); ++j) x[i] += ss.V.at(i, j) * s[j];
  return x;
}

}  // namespace

std::optional<RatVec> realize_sign_vector(const HyperplaneArrangement &arr,
                                          const SignVec &sv) {
  std::vector<int> zeros;
  for (int h = 0; h < arr.n(); ++h)
    if (sv[h] == 0) zeros.push_back(h);
  auto ss = solve_equations(arr, zeros);
  if (!ss) return std::nullopt;
  std::vector<LinCon> cons;
  RatVec a;
  Rat b;
  for (int h = 0; h < arr.n(); ++h) {
    if (sv[h] == 0) continue;
    induced_form(arr, *ss, h, a, b);
    if (is_zero_vec(a)) {
      if (sgn(b) != sv[h]) return std::nullopt;
      continue;
    }
    LinCon c;
    c.a = a;
    c.b = b;
    if (sv[h] < 0) {
      for (auto &v : c.a) v = -v;
      c.b = -c.b;
    }
    cons.push_back(std::move(c));
  }
  auto s = fm_feasible(ss->dim(), cons);
  if (!s) return std::nullopt;
  return embed(*ss, *s);
}

// ---------------------------------------------------------------- face poset

int FacePoset::find(const SignVec &sv) const {
  auto it = index.find(sv);
  return it == index.end() ? -1 : it->second;
}

bool FacePoset::leq(int f, int g) const {
  const SignVec &a = faces[f].sign, &b = faces[g].sign;
  for (size_t h = 0; h < a.size(); ++h)
    if (a[h] != 0 && a[h] != b[h]) return false;
  return true;
}

namespace {

FacePoset finish_poset(const HyperplaneArrangement &arr, std::vector<AffFace> faces) {
  std::sort(faces.begin(), faces.end(), [](const AffFace &x, const AffFace &y) {
    if (x.dim != y.dim) return x.dim < y.dim;
    return x.sign < y.sign;
  });
  FacePoset fp;
  fp.arr = arr;
  fp.faces = std::move(faces);
  for (int i = 0; i < (int)fp.faces.size(); ++i) {
    fp.index[fp.faces[i].sign] = i;
    if (fp.faces[i].dim == arr.d) fp.chambers.push_back(i);
  }
  return fp;
}

// all hyperplanes containing the subspace
std::vector<int> full_zero_set(const HyperplaneArrangement &arr, const AffineSubspace &ss) {
  std::vector<int> z;
  RatVec a;
  Rat b;
  for (int h = 0; h < arr.n(); ++h) {
    induced_form(arr, ss, h, a, b);
    if (is_zero_vec(a) && b == 0) z.push_back(h);
  }
  return z;
}

}  // namespace

FacePoset face_poset(const HyperplaneArrangement &arr) {
  struct FlatRec {
    std::vector<int> zset;
    AffineSubspace ss;
  };
  std::vector<FlatRec> flats;
  std::map<std::vector<int>, int> seen;
  {
    auto amb = solve_equations(arr, {});
    FlatRec f{full_zero_set(arr, *amb), *amb};
    seen[f.zset] = 0;
    flats.push_back(std::move(f));
  }
  for (size_t i = 0; i < flats.size(); ++i) {
    std::vector<int> zset = flats[i].zset;  // copy: flats may reallocate
    for (int h = 0; h < arr.n(); ++h) {
      if (std::find(zset.begin(), zset.end(), h) != zset.end()) continue;
      std::vector<int> eqs = zset;
      eqs.push_back(h);
      auto ss = solve_equations(arr, eqs);
      if (!ss) continue;
      FlatRec f{full_zero_set(arr, *ss), *ss};
      if (seen.count(f.zset)) continue;
      seen[f.zset] = (int)flats.size();
      flats.push_back(std::move(f));
    }
  }

  std::vector<AffFace> faces;
  for (const auto &fl : flats) {
    int k = fl.ss.dim();
    SignVec base(arr.n(), 0);
    std::vector<int> cutting;
    std::vector<RatVec> cut_a;
    std::vector<Rat> cut_b;
    bool dead = false;
    RatVec a;
    Rat b;
    for (int h = 0; h < arr.n(); ++h) {
      if (std::find(fl.zset.begin(), fl.zset.end(), h) != fl.zset.end()) continue;
      induced_form(arr, fl.ss, h, a, b);
      if (is_zero_vec(a)) {
        int s = sgn(b);
        assert(s != 0);  // else h would contain the flat
        base[h] = s;
        (void)dead;
      } else {
        cutting.push_back(h);
        cut_a.push_back(a);
        cut_b.push_back(b);
      }
    }
    struct Cell {
      std::vector<LinCon> cons;
      SignVec sv;
      RatVec wit;  // witness in flat coordinates (valid after each feasibility test)
    };
    std::vector<Cell> cells;
    {
      Cell c;
      c.sv = base;
      auto w = fm_feasible(k, {});
      c.wit = *w;
      cells.push_back(std::move(c));
    }
    for (size_t ci = 0; ci < cutting.size(); ++ci) {
      std::vector<Cell> next;
      for (const auto &cell : cells) {
        for (int s : {-1, +1}) {
          LinCon con;
          con.a = cut_a[ci];
          con.b = cut_b[ci];
          if (s < 0) {
            for (auto &v : con.a) v = -v;
            con.b = -con.b;
          }
          auto cons = cell.cons;
          cons.push_back(con);
          auto w = fm_feasible(k, cons);
          if (!w) continue;
          Cell nc;
          nc.cons = std::move(cons);
          nc.sv = cell.sv;
          nc.sv[cutting[ci]] = s;
          nc.wit = *w;
          next.push_back(std::move(nc));
        }
      }
      cells.swap(next);
    }
    for (const auto &cell : cells) {
      AffFace f;
      f.sign = cell.sv;
      f.dim = k;
      f.witness = embed(fl.ss, cell.wit);
      faces.push_back(std::move(f));
    }
  }
  return finish_poset(arr, std::move(faces));
}

FacePoset face_poset_bruteforce(const HyperplaneArrangement &arr) {
  std::vector<AffFace> faces;
  int n = arr.n();
  SignVec sv(n, -1);
  for (;;) {
    auto w = realize_sign_vector(arr, sv);
    if (w) {
      std::vector<int> zeros;
      for (int h = 0; h < n; ++h)
        if (sv[h] == 0) zeros.push_back(h);
      auto ss = solve_equations(arr, zeros);
      AffFace f;
      f.sign = sv;
      f.dim = ss->dim();
      f.witness = *w;
      faces.push_back(std::move(f));
    }
    int i = 0;
    while (i < n && sv[i] == 1) sv[i++] = -1;
    if (i == n) break;
    ++sv[i];
  }
  return finish_poset(arr, std::move(faces));
}

namespace {

std::vector<LinCon> closure_cons(const HyperplaneArrangement &arr, const SignVec &sv) {
  std::vector<LinCon> cons;
  for (int h = 0; h < arr.n(); ++h) {
    LinCon c;
    c.a = arr.hp[h].normal;
    c.b = -arr.hp[h].offset;
    c.strict = false;
    if (sv[h] == 0) {
      LinCon c2 = c;
      for (auto &v : c2.a) v = -v;
      c2.b = -c2.b;
      cons.push_back(std::move(c2));
      cons.push_back(std::move(c));
    } else {
      if (sv[h] < 0) {
        for (auto &v : c.a) v = -v;
        c.b = -c.b;
      }
      cons.push_back(std::move(c));
    }
  }
  return cons;
}

}  // namespace

std::vector<std::pair<std::optional<Rat>, std::optional<Rat>>> face_closure_bounds(
    const HyperplaneArrangement &arr, const SignVec &sv) {
  auto cons = closure_cons(arr, sv);
  std::vector<std::pair<std::optional<Rat>, std::optional<Rat>>> out;
  for (int j = 0; j < arr.d; ++j) out.push_back(fm_bounds(arr.d, cons, j));
  return out;
}

bool face_closure_meets_box(const HyperplaneArrangement &arr, const SignVec &sv,
                            const Rat &lo, const Rat &hi) {
  auto cons = closure_cons(arr, sv);
  for (int j = 0; j < arr.d; ++j) {
    LinCon c1;
    c1.a.assign(arr.d, Rat(0));
    c1.a[j] = 1;
    c1.b = -lo;
    c1.strict = false;
    cons.push_back(std::move(c1));
    LinCon c2;
    c2.a.assign(arr.d, Rat(0));
    c2.a[j] = -1;
    c2.b = hi;
    c2.strict = false;
    cons.push_back(std::move(c2));
  }
  return fm_feasible(arr.d, cons).has_value();
}

// ---------------------------------------------------------------- sign calculus

SignVec compose_faces(const SignVec &F, const SignVec &G) {
  SignVec out(F.size());
  for (size_t h = 0; h < F.size(); ++h) out[h] = G[h] != 0 ? G[h] : F[h];
  return out;
}

SignVec restrict_signs(const SignVec &F, const std::vector<int> &subset) {
  SignVec out;
  out.reserve(subset.size());
  for (int h : subset) out.push_back(F[h]);
  return out;
}

std::vector<int> separators(const SignVec &C1, const SignVec &C2) {
  std::vector<int> out;
  for (size_t h = 0; h < C1.size(); ++h)
    if (C1[h] != 0 && C2[h] != 0 && C1[h] != C2[h]) out.push_back((int)h);
  return out;
}

std::optional<int> opposite_chamber(const FacePoset &fp, int chamber,
                                    const std::vector<int> &flat_hps) {
  auto fl = solve_equations(fp.arr, flat_hps);
  if (!fl) return std::nullopt;
  std::vector<int> zx = full_zero_set(fp.arr, *fl);
  SignVec f0 = fp.faces[chamber].sign;
  for (int h : zx) f0[h] = 0;
  int fi = fp.find(f0);
  if (fi < 0) return std::nullopt;
  if (fp.faces[fi].dim != fl->dim()) return std::nullopt;  // not adjacent
  SignVec op = fp.faces[chamber].sign;
  for (int h : zx) op[h] = -op[h];
  int ci = fp.find(op);
  if (ci < 0) return std::nullopt;
  return ci;
}

std::vector<int> minimal_gallery(const FacePoset &fp, int c1, int c2) {
  std::vector<int> gal{c1};
  int cur = c1;
  const SignVec &target = fp.faces[c2].sign;
  size_t guard = fp.faces[cur].sign.size() + 1;
  while (cur != c2 && guard--) {
    auto sep = separators(fp.faces[cur].sign, target);
    int best = -1;
    for (int h : sep) {
      SignVec cand = fp.faces[cur].sign;
      cand[h] = -cand[h];
      int ci = fp.find(cand);
      if (ci < 0) continue;
      if (best < 0 || fp.faces[ci].sign < fp.faces[best].sign) best = ci;
    }
    assert(best >= 0);
    gal.push_back(best);
    cur = best;
  }
  assert(cur == c2);
  return gal;
}

// ---------------------------------------------------------------- Salvetti

int SalvettiPoset::find(int face, int chamber) const {
  auto it = index.find({face, chamber});
  return it == index.end() ? -1 : it->second;
}

int SalvettiPoset::dim(int cell) const {
  return fp->arr.d - fp->faces[cells[cell].face].dim;
}

bool SalvettiPoset::leq(int x, int y) const {
  const SalvettiCell &a = cells[x], &b = cells[y];
  if (!fp->leq(b.face, a.face)) return false;
  return compose_faces(fp->faces[b.chamber].sign, fp->faces[a.face].sign) ==
         fp->faces[a.chamber].sign;
}

SalvettiPoset salvetti_poset(const FacePoset &fp) {
  SalvettiPoset sp;
  sp.fp = &fp;
  for (int f = 0; f < (int)fp.faces.size(); ++f)
    for (int c : fp.chambers)
      if (fp.leq(f, c)) {
        sp.index[{f, c}] = (int)sp.cells.size();
        sp.cells.push_back({f, c});
      }
  return sp;
}

std::vector<int> subposet_S_C(const SalvettiPoset &sp, int chamber) {
  std::vector<int> out;
  const FacePoset &fp = *sp.fp;
  for (int i = 0; i < (int)sp.cells.size(); ++i) {
    const auto &cell = sp.cells[i];
    if (compose_faces(fp.faces[chamber].sign, fp.faces[cell.face].sign) ==
        fp.faces[cell.chamber].sign)
      out.push_back(i);
  }
  return out;
}

std::vector<int> subposet_S_upper(const SalvettiPoset &sp, int face) {
  std::set<int> acc;
  const FacePoset &fp = *sp.fp;
  for (int c : fp.chambers)
    if (fp.leq(face, c))
      for (int i : subposet_S_C(sp, c)) acc.insert(i);
  return std::vector<int>(acc.begin(), acc.end());
}

SignVec i_m_fill(const SignVec &Fm, const std::vector<int> &target_pos,
                 const SignVec &target_face) {
#ifndef NDEBUG
  std::vector<int> z;
  for (size_t h = 0; h < Fm.size(); ++h)
    if (Fm[h] == 0) z.push_back((int)h);
  std::vector<int> tp = target_pos;
  std::sort(tp.begin(), tp.end());
  assert(z == tp);
#endif
  SignVec out = Fm;
  for (size_t k = 0; k < target_pos.size(); ++k) out[target_pos[k]] = target_face[k];
  return out;
}

// ---------------------------------------------------------------- nbc

int arrangement_rank(const HyperplaneArrangement &arr) {
  RatMat M(arr.n(), arr.d);
  for (int h = 0; h < arr.n(); ++h)
    for (int j = 0; j < arr.d; ++j) M.at(h, j) = arr.hp[h].normal[j];
  return rank_rat(M);
}

namespace {

int subset_rank(const HyperplaneArrangement &arr, unsigned mask) {
  int cnt = __builtin_popcount(mask);
  RatMat M(cnt, arr.d);
  int r = 0;
  for (int h = 0; h < arr.n(); ++h)
    if (mask & (1u << h)) {
      for (int j = 0; j < arr.d; ++j) M.at(r, j) = arr.hp[h].normal[j];
      ++r;
    }
  return rank_rat(M);
}

}  // namespace

std::vector<std::vector<std::vector<int>>> nbc_sets(const HyperplaneArrangement &arr,
                                                    const std::vector<int> &order) {
  int n = arr.n();
  assert(n < 31);
  int r = arrangement_rank(arr);
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<bool> indep(1u << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    indep[mask] = subset_rank(arr, mask) == __builtin_popcount(mask);
  // circuits: minimal dependent sets; broken circuit = circuit minus least element
  std::vector<unsigned> broken;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (indep[mask]) continue;
    bool minimal = true;
    for (int h = 0; h < n && minimal; ++h)
      if ((mask & (1u << h)) && !indep[mask & ~(1u << h)]) minimal = false;
    if (!minimal) continue;
    int least = -1;
    for (int h = 0; h < n; ++h)
      if ((mask & (1u << h)) && (least < 0 || pos[h] < pos[least])) least = h;
    broken.push_back(mask & ~(1u << least));
  }
  std::vector<std::vector<std::pair<std::vector<int>, std::vector<int>>>> grouped(r + 1);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!indep[mask]) continue;
    bool ok = true;
    for (unsigned bc : broken)
      if ((mask & bc) == bc) { ok = false; break; }
    if (!ok) continue;
    std::vector<int> elems;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << order[i])) elems.push_back(order[i]);  // sorted by order position
    std::vector<int> key;
    for (int h : elems) key.push_back(pos[h]);
    grouped[elems.size()].push_back({key, elems});
  }
  std::vector<std::vector<std::vector<int>>> out(r + 1);
  for (int k = 0; k <= r; ++k) {
    std::sort(grouped[k].begin(), grouped[k].end());
    for (auto &p : grouped[k]) out[k].push_back(std::move(p.second));
  }
  return out;
}

}  // namespace torsal
