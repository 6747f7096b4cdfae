#include "torsal/toric.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>
#include <stdexcept>

namespace torsal {

namespace {

Rat dot(const IntVec &a, const RatVec &x) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * x[i];
  return s;
}

Int ceil_rat(const Rat &q) { return -floor_rat(-q); }

bool ratvec_less(const RatVec &a, const RatVec &b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

IntMat rows_from(const ToricArrangement &A, const std::vector<int> &S) {
  IntMat M((int)S.size(), A.d);
  for (int i = 0; i < (int)S.size(); ++i)
    for (int j = 0; j < A.d; ++j) M.at(i, j) = A.tori[S[i]].chi[j];
  return M;
}

// does the point lie in the same component as base within the coset cut out
// by the characters in rows (both assumed to satisfy the congruences)?
bool same_component(const IntMat &rows, const RatVec &base, const RatVec &p) {
  if (rows.nr == 0) return true;
  IntVec b(rows.nr);
  for (int i = 0; i < rows.nr; ++i) {
    Rat s = 0;
    for (int j = 0; j < rows.nc; ++j) s += Rat(rows.at(i, j)) * (p[j] - base[j]);
    if (!is_integral(s)) return false;
    b[i] = s.get_num();
  }
  return solve_linear_integer(rows, b).over_z;
}

IntMat int_inverse(const IntMat &U) {
  RatMat M = RatMat::from_int(U);
  IntMat out(U.nr, U.nc);
  for (int j = 0; j < U.nc; ++j) {
    RatVec e(U.nr, Rat(0));
    e[j] = 1;
    auto x = solve_rat(M, e);
    if (!x) throw std::runtime_error("matrix not invertible");
    for (int i = 0; i < U.nr; ++i) {
      assert(is_integral((*x)[i]));
      out.at(i, j) = (*x)[i].get_num();
    }
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------ arrangement ----

IntMat ToricArrangement::char_matrix() const {
  IntMat X(n(), d);
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < d; ++j) X.at(i, j) = tori[i].chi[j];
  return X;
}

Rat ToricArrangement::pairing(int h, const RatVec &x) const {
  return dot(tori[h].chi, x);
}

std::string ToricArrangement::name(int h) const {
  return tori[h].name.empty() ? "H" + std::to_string(h) : tori[h].name;
}

void ToricArrangement::validate() const {
  for (const auto &t : tori) {
    if ((int)t.chi.size() != d) throw std::runtime_error("character dimension mismatch");
    Int g = gcd_vec(t.chi);
    if (g != 1)
      throw std::runtime_error(
          "character not primitive: split non-connected hypertori into their components");
    if (t.offset < 0 || t.offset >= 1) throw std::runtime_error("offset must lie in [0,1)");
  }
  if (rank_rat(RatMat::from_int(char_matrix())) != d)
    throw std::runtime_error("arrangement not essential");
  std::set<std::pair<IntVec, Rat>> seen;
  for (const auto &t : tori) {
    int s = 0;
    for (const auto &c : t.chi)
      if (c != 0) { s = c > 0 ? 1 : -1; break; }
    IntVec nu = t.chi;
    for (auto &c : nu) c *= s;
    Rat off = Rat(s) * t.offset;
    off -= Rat(floor_rat(off));
    if (!seen.insert({nu, off}).second) throw std::runtime_error("coinciding hypertori");
  }
}

// ---------------------------------------------------------------- layers ----

std::optional<CosetComponents> solve_congruences(const ToricArrangement &A,
                                                 const std::vector<int> &S) {
  CosetComponents out;
  if (S.empty()) {
    out.bases = {RatVec(A.d, Rat(0))};
    out.dir = IntMat::identity(A.d);
    out.rank = 0;
    return out;
  }
  IntMat X = rows_from(A, S);
  RatVec r((int)S.size());
  for (size_t i = 0; i < S.size(); ++i) r[i] = A.tori[S[i]].offset;
  // left kernel rows of X
  IntMat W = integer_kernel(X.transpose()).transpose();
  IntVec z((int)S.size(), Int(0));
  if (W.nr > 0) {
    IntVec b(W.nr);
    for (int i = 0; i < W.nr; ++i) {
      Rat s = 0;
      for (int j = 0; j < W.nc; ++j) s += Rat(W.at(i, j)) * r[j];
      if (!is_integral(s)) return std::nullopt;
      b[i] = -s.get_num();
    }
    auto sol = solve_linear_integer(W, b);
    if (!sol.over_z) return std::nullopt;
    z = sol.x;
  }
  RatVec rhs(r.size());
  for (size_t i = 0; i < r.size(); ++i) rhs[i] = r[i] + Rat(z[i]);
  auto t0 = solve_rat(RatMat::from_int(X), rhs);
  assert(t0);
  out.dir = integer_kernel(X);
  out.rank = A.d - out.dir.nc;
  auto G = quotient_group(X, A.d);
  for (const auto &e : G.elements) {
    RatVec cand(A.d);
    for (int j = 0; j < A.d; ++j) cand[j] = (*t0)[j] + e[j];
    cand = reduce_mod_Z(cand);
    bool dup = false;
    for (const auto &b : out.bases)
      if (same_component(X, b, cand)) { dup = true; break; }
    if (!dup) out.bases.push_back(cand);
  }
  std::sort(out.bases.begin(), out.bases.end(), ratvec_less);
  return out;
}

bool LayerPoset::on_layer(const Layer &L, const RatVec &point) const {
  for (int h : L.tori)
    if (!is_integral(A.pairing(h, point) - A.tori[h].offset)) return false;
  return same_component(rows_from(A, L.tori), L.base, point);
}

int LayerPoset::find(const std::vector<int> &tori, const RatVec &point) const {
  for (int i = 0; i < (int)layers.size(); ++i)
    if (layers[i].tori == tori && on_layer(layers[i], point)) return i;
  return -1;
}

bool LayerPoset::leq(int i, int j) const {
  if (i == j) return true;
  const Layer &Li = layers[i], &Lj = layers[j];
  if (!std::includes(Lj.tori.begin(), Lj.tori.end(), Li.tori.begin(), Li.tori.end()))
    return false;
  return on_layer(Li, Lj.base);
}

LayerPoset layer_poset(const ToricArrangement &A) {
  A.validate();
  LayerPoset lp;
  lp.A = A;
  Layer T;
  T.base = RatVec(A.d, Rat(0));
  T.dir = IntMat::identity(A.d);
  lp.layers.push_back(T);
  for (size_t i = 0; i < lp.layers.size(); ++i) {
    std::vector<int> cur = lp.layers[i].tori;  // copy: vector may reallocate
    for (int h = 0; h < A.n(); ++h) {
      if (std::binary_search(cur.begin(), cur.end(), h)) continue;
      std::vector<int> S = cur;
      S.insert(std::lower_bound(S.begin(), S.end(), h), h);
      auto cc = solve_congruences(A, S);
      if (!cc) continue;
      for (const auto &b : cc->bases) {
        // full hypertorus set of the component through b
        std::vector<int> full;
        for (int h2 = 0; h2 < A.n(); ++h2) {
          bool perp = true;
          for (int c = 0; c < cc->dir.nc && perp; ++c) {
            Int s = 0;
            for (int j = 0; j < A.d; ++j) s += A.tori[h2].chi[j] * cc->dir.at(j, c);
            if (s != 0) perp = false;
          }
          if (perp && is_integral(A.pairing(h2, b) - A.tori[h2].offset)) full.push_back(h2);
        }
        bool dup = false;
        for (const auto &L : lp.layers)
          if (L.tori == full && lp.on_layer(L, b)) { dup = true; break; }
        if (dup) continue;
        Layer L;
        L.tori = full;
        L.base = reduce_mod_Z(b);
        L.dir = integer_kernel(rows_from(A, full));
        L.rank = A.d - L.dir.nc;
        lp.layers.push_back(std::move(L));
      }
    }
  }
  std::sort(lp.layers.begin(), lp.layers.end(), [](const Layer &a, const Layer &b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.tori != b.tori) return a.tori < b.tori;
    return ratvec_less(a.base, b.base);
  });
  // names: join the hypertorus names; ordinal suffix only on collisions
  for (size_t i = 0; i < lp.layers.size(); ++i) {
    Layer &L = lp.layers[i];
    if (L.tori.empty()) {
      L.name = "T";
      continue;
    }
    std::string base;
    for (size_t k = 0; k < L.tori.size(); ++k)
      base += (k ? "^" : "") + A.name(L.tori[k]);
    int shared = 0, ord = 0;
    for (const auto &o : lp.layers)
      if (o.tori == L.tori) ++shared;
    for (size_t j = 0; j < i; ++j)
      if (lp.layers[j].tori == L.tori) ++ord;
    L.name = shared > 1 ? base + "." + std::to_string(ord) : base;
  }
  return lp;
}

// ------------------------------------------------------- linearized A_0 ----

A0Data build_A0(const ToricArrangement &A) {
  A0Data out;
  out.A0.d = A.d;
  out.cls.resize(A.n());
  out.sgn.resize(A.n());
  std::map<IntVec, int> idx;
  for (int h = 0; h < A.n(); ++h) {
    int s = 0;
    for (const auto &c : A.tori[h].chi)
      if (c != 0) { s = c > 0 ? 1 : -1; break; }
    out.sgn[h] = s;
    IntVec nu = A.tori[h].chi;
    for (auto &c : nu) c *= s;
    auto it = idx.find(nu);
    if (it == idx.end()) {
      it = idx.emplace(nu, out.A0.n()).first;
      Hyperplane hp;
      hp.normal.resize(nu.size());
      for (size_t j = 0; j < nu.size(); ++j) hp.normal[j] = Rat(nu[j]);
      hp.offset = 0;
      out.A0.hp.push_back(hp);
    }
    out.cls[h] = it->second;
  }
  return out;
}

// ---------------------------------------------------------- face category ----

FaceKey TorusFaceCat::point_key(const RatVec &x) const {
  FaceKey key;
  key.first.resize(A.n());
  key.second.resize(A.n());
  for (int h = 0; h < A.n(); ++h) {
    Rat u = A.pairing(h, x) - A.tori[h].offset;
    if (is_integral(u)) {
      key.first[h] = 1;
      key.second[h] = u.get_num();
    } else {
      key.first[h] = 0;
      key.second[h] = floor_rat(u);
    }
  }
  return key;
}

FaceKey TorusFaceCat::face_key(int wface) const { return point_key(WP.faces[wface].witness); }

std::pair<int, IntVec> TorusFaceCat::canonical(const FaceKey &key) const {
  FaceKey red = key;
  for (int i = 0; i < coset_basis.nr; ++i) {
    int p = -1;
    for (int j = 0; j < coset_basis.nc; ++j)
      if (coset_basis.at(i, j) != 0) { p = j; break; }
    assert(p >= 0 && coset_basis.at(i, p) > 0);
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), red.second[p].get_mpz_t(), coset_basis.at(i, p).get_mpz_t());
    if (q != 0)
      for (int j = 0; j < coset_basis.nc; ++j) red.second[j] -= q * coset_basis.at(i, j);
  }
  auto it = orbit_map.find(red);
  if (it == orbit_map.end()) return {-1, {}};
  int F = it->second;
  IntVec diff(A.n());
  for (int h = 0; h < A.n(); ++h) diff[h] = key.second[h] - faces[F].kvec[h];
  auto sol = solve_linear_integer(X, diff);
  assert(sol.over_z);
  return {F, sol.x};
}

int TorusFaceCat::window_face_by_key(const FaceKey &key) const {
  auto it = wmap.find(key);
  return it == wmap.end() ? -1 : it->second;
}

int TorusFaceCat::locate_face(const RatVec &x) const {
  int F = canonical(point_key(x)).first;
  assert(F >= 0);
  return F;
}

TorusFaceCat face_category(const ToricArrangement &A) {
  A.validate();
  TorusFaceCat fc;
  fc.A = A;
  fc.a0 = build_A0(A);
  fc.X = A.char_matrix();
  // basis of the column lattice of X, as echelon rows
  if (A.d > 0) {
    auto hd = hermite_normal_form(fc.X.transpose());
    IntMat B(A.d, A.n());
    int rows = 0;
    for (int i = 0; i < hd.H.nr; ++i) {
      bool nz = false;
      for (int j = 0; j < hd.H.nc; ++j)
        if (hd.H.at(i, j) != 0) { nz = true; break; }
      if (!nz) continue;
      for (int j = 0; j < hd.H.nc; ++j) B.at(rows, j) = hd.H.at(i, j);
      ++rows;
    }
    assert(rows == A.d);
    fc.coset_basis = B;
  } else {
    fc.coset_basis = IntMat(0, 0);
  }

  fc.lo = -1;
  fc.hi = 2;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 7) throw std::runtime_error("window growth failed to terminate");
    fc.W = HyperplaneArrangement{};
    fc.W.d = A.d;
    fc.lift.clear();
    for (int h = 0; h < A.n(); ++h) {
      Rat mn = 0, mx = 0;
      for (int j = 0; j < A.d; ++j) {
        Rat c = Rat(A.tori[h].chi[j]);
        mn += c * (c > 0 ? fc.lo : fc.hi);
        mx += c * (c > 0 ? fc.hi : fc.lo);
      }
      Int k0 = ceil_rat(mn - A.tori[h].offset), k1 = floor_rat(mx - A.tori[h].offset);
      for (Int k = k0; k <= k1; ++k) {
        Hyperplane hp;
        hp.normal.resize(A.d);
        for (int j = 0; j < A.d; ++j) hp.normal[j] = Rat(A.tori[h].chi[j]);
        hp.offset = A.tori[h].offset + Rat(k);
        fc.W.hp.push_back(hp);
        fc.lift.push_back({h, k});
      }
    }
    fc.WP = face_poset(fc.W);
    int nf = (int)fc.WP.faces.size();
    std::vector<char> genuine(nf, 0), meets(nf, 0);
    for (int f = 0; f < nf; ++f) {
      auto bounds = face_closure_bounds(fc.W, fc.WP.faces[f].sign);
      bool g = true;
      for (const auto &[blo, bhi] : bounds)
        if (!blo || !bhi || *blo < fc.lo || *bhi > fc.hi) { g = false; break; }
      genuine[f] = g;
      meets[f] = face_closure_meets_box(fc.W, fc.WP.faces[f].sign, 0, 1);
    }
    bool ok = true;
    for (int f = 0; f < nf && ok; ++f)
      if (meets[f] && !genuine[f]) ok = false;
    fc.wmap.clear();
    fc.orbit_map.clear();
    fc.faces.clear();
    if (ok) {
      for (int f = 0; f < nf; ++f)
        if (genuine[f]) fc.wmap[fc.face_key(f)] = f;
      for (int f = 0; f < nf; ++f) {
        if (!meets[f] || !genuine[f]) continue;
        FaceKey key = fc.face_key(f);
        FaceKey red = key;
        // canonical() needs faces[] filled; reduce by hand here
        for (int i = 0; i < fc.coset_basis.nr; ++i) {
          int p = -1;
          for (int j = 0; j < fc.coset_basis.nc; ++j)
            if (fc.coset_basis.at(i, j) != 0) { p = j; break; }
          Int q;
          mpz_fdiv_q(q.get_mpz_t(), red.second[p].get_mpz_t(),
                     fc.coset_basis.at(i, p).get_mpz_t());
          if (q != 0)
            for (int j = 0; j < fc.coset_basis.nc; ++j)
              red.second[j] -= q * fc.coset_basis.at(i, j);
        }
        if (fc.orbit_map.count(red)) continue;
        fc.orbit_map[red] = (int)fc.faces.size();
        TorusFace tf;
        tf.rep = f;
        tf.dim = fc.WP.faces[f].dim;
        tf.on = key.first;
        tf.kvec = key.second;
        for (int h = 0; h < A.n(); ++h)
          if (key.first[h]) tf.loc.push_back(h);
        fc.faces.push_back(std::move(tf));
      }
      // every coface of a representative must be a genuine face of a known orbit
      for (const auto &tf : fc.faces) {
        for (int g = 0; g < nf && ok; ++g) {
          if (!fc.WP.leq(tf.rep, g)) continue;
          if (!genuine[g]) { ok = false; break; }
          if (fc.canonical(fc.face_key(g)).first < 0) ok = false;
        }
        if (!ok) break;
      }
    }
    if (ok) break;
    fc.lo *= 2;
    fc.hi *= 2;
  }

  // local arrangements and Salvetti posets (faces vector is final: pointers
  // into elements stay valid)
  for (auto &tf : fc.faces) {
    tf.arr.d = A.d;
    for (int h : tf.loc) {
      Hyperplane hp;
      hp.normal.resize(A.d);
      for (int j = 0; j < A.d; ++j) hp.normal[j] = Rat(fc.a0.sgn[h] * A.tori[h].chi[j]);
      hp.offset = 0;
      tf.arr.hp.push_back(hp);
      // window hyperplane of the on-lift at the representative
      int widx = -1;
      for (int w = 0; w < fc.W.n(); ++w)
        if (fc.lift[w].first == h && fc.lift[w].second == tf.kvec[h] &&
            fc.WP.faces[tf.rep].sign[w] == 0) {
          widx = w;
          break;
        }
      assert(widx >= 0);
      tf.lift_idx.push_back(widx);
    }
  }
  for (auto &tf : fc.faces) {
    tf.local = face_poset(tf.arr);
    tf.sal = salvetti_poset(tf.local);
  }

  // morphisms: one per window coface of each representative
  std::map<std::pair<int, int>, int> by_src_g;
  for (int Fi = 0; Fi < (int)fc.faces.size(); ++Fi) {
    const TorusFace &tf = fc.faces[Fi];
    for (int g = 0; g < (int)fc.WP.faces.size(); ++g) {
      if (g == tf.rep || !fc.WP.leq(tf.rep, g)) continue;
      auto [Gi, t] = fc.canonical(fc.face_key(g));
      assert(Gi >= 0);
      FaceCatMor m;
      m.src = Fi;
      m.dst = Gi;
      m.g = g;
      m.t = t;
      m.Fm.resize((int)tf.loc.size());
      for (size_t i = 0; i < tf.loc.size(); ++i)
        m.Fm[i] = fc.a0.sgn[tf.loc[i]] * fc.WP.faces[g].sign[tf.lift_idx[i]];
      by_src_g[{Fi, g}] = (int)fc.mors.size();
      fc.mors.push_back(std::move(m));
    }
  }
  fc.cat.nobj = (int)fc.faces.size();
  for (const auto &m : fc.mors) fc.cat.mor.push_back({m.src, m.dst});
  std::vector<std::vector<int>> by_src(fc.faces.size());
  for (int i = 0; i < (int)fc.mors.size(); ++i) by_src[fc.mors[i].src].push_back(i);
  for (int i = 0; i < (int)fc.mors.size(); ++i) {
    const FaceCatMor &m1 = fc.mors[i];
    for (int j : by_src[m1.dst]) {
      const FaceCatMor &m2 = fc.mors[j];
      FaceKey key = fc.face_key(m2.g);
      IntVec shift = fc.X.mul(m1.t);
      for (int h = 0; h < A.n(); ++h) key.second[h] += shift[h];
      int wf = fc.window_face_by_key(key);
      assert(wf >= 0);
      fc.cat.comp[{i, j}] = by_src_g.at({m1.src, wf});
    }
  }
  return fc;
}

std::vector<int> flat_XLF(const TorusFaceCat &fc, const Layer &L, int F) {
  RatMat span((int)L.tori.size(), fc.A.d);
  for (size_t i = 0; i < L.tori.size(); ++i)
    for (int j = 0; j < fc.A.d; ++j) span.at((int)i, j) = Rat(fc.A.tori[L.tori[i]].chi[j]);
  int r0 = rank_rat(span);
  std::vector<int> out;
  const auto &loc = fc.faces[F].loc;
  for (size_t p = 0; p < loc.size(); ++p) {
    RatMat ext(span.nr + 1, fc.A.d);
    ext.a.assign(span.a.begin(), span.a.end());
    ext.a.resize((size_t)(span.nr + 1) * fc.A.d);
    for (int j = 0; j < fc.A.d; ++j) ext.at(span.nr, j) = Rat(fc.A.tori[loc[p]].chi[j]);
    if (rank_rat(ext) == r0) out.push_back((int)p);
  }
  return out;
}

// ------------------------------------------------ Grothendieck category ----

int Groth::D_cell(int mi, int ycell) const {
  const FaceCatMor &m = fc->mors[mi];
  const TorusFace &F = fc->faces[m.src];
  const TorusFace &G = fc->faces[m.dst];
  std::vector<int> pos;
  for (size_t i = 0, j = 0; j < G.loc.size(); ++i) {
    assert(i < F.loc.size());
    if (F.loc[i] == G.loc[j]) {
      pos.push_back((int)i);
      ++j;
    }
  }
  const SalvettiCell &y = G.sal.cells[ycell];
  SignVec fullG = i_m_fill(m.Fm, pos, G.local.faces[y.face].sign);
  SignVec fullK = i_m_fill(m.Fm, pos, G.local.faces[y.chamber].sign);
  int gf = F.local.index.at(fullG);
  int kf = F.local.index.at(fullK);
  int cell = F.sal.find(gf, kf);
  assert(cell >= 0);
  return cell;
}

Groth grothendieck(const TorusFaceCat &fc) {
  Groth G;
  G.fc = &fc;
  for (int Fi = 0; Fi < (int)fc.faces.size(); ++Fi)
    for (int c = 0; c < (int)fc.faces[Fi].sal.cells.size(); ++c) {
      G.obj_index[{Fi, c}] = (int)G.objects.size();
      G.objects.push_back({Fi, c});
    }
  for (int Fi = 0; Fi < (int)fc.faces.size(); ++Fi) {
    const auto &sal = fc.faces[Fi].sal;
    for (int x = 0; x < (int)sal.cells.size(); ++x)
      for (int y = 0; y < (int)sal.cells.size(); ++y) {
        if (x == y || !sal.leq(x, y)) continue;
        G.gmor.push_back({G.obj_index.at({Fi, x}), G.obj_index.at({Fi, y}), -1});
      }
  }
  for (int mi = 0; mi < (int)fc.mors.size(); ++mi) {
    const FaceCatMor &m = fc.mors[mi];
    const auto &ssal = fc.faces[m.src].sal;
    for (int y = 0; y < (int)fc.faces[m.dst].sal.cells.size(); ++y) {
      int dy = G.D_cell(mi, y);
      for (int x = 0; x < (int)ssal.cells.size(); ++x) {
        if (!ssal.leq(x, dy)) continue;
        G.gmor.push_back({G.obj_index.at({m.src, x}), G.obj_index.at({m.dst, y}), mi});
      }
    }
  }
  G.cat.nobj = (int)G.objects.size();
  for (int i = 0; i < (int)G.gmor.size(); ++i) {
    G.cat.mor.push_back({G.gmor[i].src, G.gmor[i].dst});
    G.mor_index[{G.gmor[i].src, G.gmor[i].dst, G.gmor[i].fm}] = i;
  }
  std::vector<std::vector<int>> by_src(G.cat.nobj);
  for (int i = 0; i < (int)G.gmor.size(); ++i) by_src[G.gmor[i].src].push_back(i);
  for (int i = 0; i < (int)G.gmor.size(); ++i)
    for (int j : by_src[G.gmor[i].dst]) {
      int f1 = G.gmor[i].fm, f2 = G.gmor[j].fm;
      int fm = f1 < 0 ? f2 : f2 < 0 ? f1 : fc.cat.comp.at({f1, f2});
      G.cat.comp[{i, j}] = G.mor_index.at({G.gmor[i].src, G.gmor[j].dst, fm});
    }
  return G;
}

SubCategory subcategory_S(const Groth &G, const LayerPoset &lp, int Y,
                          const FacePoset &fp0, int F0) {
  const TorusFaceCat &fc = *G.fc;
  const Layer &LY = lp.layers[Y];
  // linear hull of F0 must be X_Y
  std::vector<RatVec> zr, yr;
  const SignVec &f0s = fp0.faces[F0].sign;
  for (int j = 0; j < fp0.arr.n(); ++j)
    if (f0s[j] == 0) zr.push_back(fp0.arr.hp[j].normal);
  for (int h : LY.tori) yr.push_back(fc.a0.A0.hp[fc.a0.cls[h]].normal);
  auto rk = [&](const std::vector<RatVec> &rows) {
    RatMat M((int)rows.size(), fc.A.d);
    for (size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < fc.A.d; ++j) M.at((int)i, j) = rows[i][j];
    return rank_rat(M);
  };
  std::vector<RatVec> both = zr;
  both.insert(both.end(), yr.begin(), yr.end());
  if (rk(zr) != rk(yr) || rk(zr) != rk(both))
    throw std::runtime_error("F0 hull does not match X_Y");

  std::vector<char> facekeep(fc.faces.size(), 0);
  std::vector<std::set<int>> upper(fc.faces.size());
  for (int Fi = 0; Fi < (int)fc.faces.size(); ++Fi) {
    const TorusFace &tf = fc.faces[Fi];
    int sup = lp.find(tf.loc, fc.WP.faces[tf.rep].witness);
    assert(sup >= 0);
    if (!lp.leq(Y, sup)) continue;
    facekeep[Fi] = 1;
    SignVec sv(tf.loc.size());
    for (size_t i = 0; i < tf.loc.size(); ++i) sv[i] = f0s[fc.a0.cls[tf.loc[i]]];
    int f0loc = tf.local.index.at(sv);
    for (int c : subposet_S_upper(tf.sal, f0loc)) upper[Fi].insert(c);
  }
  std::vector<int> keep;
  for (int o = 0; o < (int)G.objects.size(); ++o) {
    auto [Fi, c] = G.objects[o];
    if (facekeep[Fi] && upper[Fi].count(c)) keep.push_back(o);
  }
  return full_subcategory(G.cat, keep);
}

// ---------------------------------------------------------------- functors ----

QuotientSetup quotient_setup(const TorusFaceCat &fc, const LayerPoset &lp, int L) {
  QuotientSetup Q;
  Q.L = L;
  const Layer &LL = lp.layers[L];
  int d = fc.A.d, k = LL.dir.nc, r = d - k;
  IntMat B, U;
  if (k == 0) {
    B = IntMat::identity(d);
    U = IntMat::identity(d);
  } else {
    auto S = smith_normal_form(LL.dir, true, true);
    for (const auto &dv : S.divisors) assert(dv == 1);  // saturated lattice
    U = S.U;
    B = int_inverse(U);
  }
  Q.proj = RatMat(r, d);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < d; ++j) Q.proj.at(i, j) = Rat(U.at(k + i, j));
  Q.sub = LL.tori;
  Q.Abar.d = r;
  for (int h : Q.sub) {
    Hypertorus t;
    t.name = fc.A.name(h);
    t.chi.resize(r);
    for (int j = 0; j < r; ++j) {
      Int s = 0;
      for (int i = 0; i < d; ++i) s += fc.A.tori[h].chi[i] * B.at(i, k + j);
      t.chi[j] = s;
    }
    t.offset = fc.A.tori[h].offset;
    Q.Abar.tori.push_back(std::move(t));
  }
  Q.fcbar = face_category(Q.Abar);
  Q.lpbar = layer_poset(Q.Abar);
  return Q;
}

int QuotientSetup::pi_face(const TorusFaceCat &fc, int F) const {
  return fcbar.locate_face(proj.mul(fc.WP.faces[fc.faces[F].rep].witness));
}

int QuotientSetup::pi_layer(const LayerPoset &lp, int Y) const {
  std::vector<int> qt;
  for (int i = 0; i < (int)sub.size(); ++i)
    if (std::binary_search(lp.layers[Y].tori.begin(), lp.layers[Y].tori.end(), sub[i]))
      qt.push_back(i);
  int res = lpbar.find(qt, proj.mul(lp.layers[Y].base));
  assert(res >= 0);
  return res;
}

SignVec QuotientSetup::pi_face0(const A0Data &a0, const SignVec &F0) const {
  SignVec out(fcbar.a0.A0.n(), 0);
  for (int i = 0; i < (int)sub.size(); ++i) {
    int h = sub[i];
    out[fcbar.a0.cls[i]] = fcbar.a0.sgn[i] * a0.sgn[h] * F0[a0.cls[h]];
  }
  return out;
}

namespace {

// shared machinery for the quotient / subarrangement / translation functors:
// `pt` maps source angle coordinates to target angle coordinates, `down` sends
// a source hypertorus to its target counterpart (-1 = dropped)
Functor map_groth(const Groth &G, const TorusFaceCat &fct, const Groth &Gt,
                  const std::function<RatVec(const RatVec &)> &pt,
                  const std::vector<int> &down) {
  const TorusFaceCat &fc = *G.fc;
  int nF = (int)fc.faces.size();
  std::vector<int> Ft(nF);              // image face
  std::vector<IntVec> tau(nF);          // relocation of the image lift
  std::vector<std::vector<int>> cellmap(nF);
  for (int Fi = 0; Fi < nF; ++Fi) {
    const TorusFace &tf = fc.faces[Fi];
    FaceKey pk = fct.point_key(pt(fc.WP.faces[tf.rep].witness));
    auto [Fb, t] = fct.canonical(pk);
    assert(Fb >= 0);
    Ft[Fi] = Fb;
    tau[Fi] = t;
    std::vector<int> pos, img;
    for (size_t p = 0; p < tf.loc.size(); ++p)
      if (down[tf.loc[p]] >= 0) {
        pos.push_back((int)p);
        img.push_back(down[tf.loc[p]]);
      }
    assert(img == fct.faces[Fb].loc);
    const TorusFace &tb = fct.faces[Fb];
    cellmap[Fi].resize(tf.sal.cells.size());
    for (int c = 0; c < (int)tf.sal.cells.size(); ++c) {
      const SalvettiCell &cell = tf.sal.cells[c];
      SignVec sG(pos.size()), sK(pos.size());
      for (size_t j = 0; j < pos.size(); ++j) {
        int h = tf.loc[pos[j]];
        int factor = fct.a0.sgn[down[h]] * fc.a0.sgn[h];
        sG[j] = factor * tf.local.faces[cell.face].sign[pos[j]];
        sK[j] = factor * tf.local.faces[cell.chamber].sign[pos[j]];
      }
      int lf = tb.local.index.at(sG);
      int ch = tb.local.index.at(sK);
      cellmap[Fi][c] = tb.sal.find(lf, ch);
      assert(cellmap[Fi][c] >= 0);
    }
  }
  // face-category morphism images
  std::map<std::pair<int, int>, int> t_by_src_g;
  for (int i = 0; i < (int)fct.mors.size(); ++i)
    t_by_src_g[{fct.mors[i].src, fct.mors[i].g}] = i;
  std::vector<int> fmor(fc.mors.size());
  for (int mi = 0; mi < (int)fc.mors.size(); ++mi) {
    const FaceCatMor &m = fc.mors[mi];
    FaceKey key = fct.point_key(pt(fc.WP.faces[m.g].witness));
    IntVec shift = fct.X.mul(tau[m.src]);
    for (size_t h = 0; h < key.second.size(); ++h) key.second[h] -= shift[h];
    int wf = fct.window_face_by_key(key);
    assert(wf >= 0);
    if (wf == fct.faces[Ft[m.src]].rep) {
      assert(Ft[m.src] == Ft[m.dst]);
      fmor[mi] = -1;
    } else {
      fmor[mi] = t_by_src_g.at({Ft[m.src], wf});
      assert(fct.mors[fmor[mi]].dst == Ft[m.dst]);
    }
  }
  Functor F;
  F.obj.resize(G.objects.size());
  for (int o = 0; o < (int)G.objects.size(); ++o) {
    auto [Fi, c] = G.objects[o];
    F.obj[o] = Gt.obj_index.at({Ft[Fi], cellmap[Fi][c]});
  }
  F.mor.resize(G.gmor.size());
  for (int i = 0; i < (int)G.gmor.size(); ++i) {
    int o1 = F.obj[G.gmor[i].src], o2 = F.obj[G.gmor[i].dst];
    if (o1 == o2) {
      F.mor[i] = -1;
      continue;
    }
    int fm = G.gmor[i].fm < 0 ? -1 : fmor[G.gmor[i].fm];
    F.mor[i] = Gt.mor_index.at({o1, o2, fm});
  }
  return F;
}

}  // namespace

Functor quotient_functor(const Groth &G, const QuotientSetup &Q, const Groth &Gbar) {
  const TorusFaceCat &fc = *G.fc;
  std::vector<int> down(fc.A.n(), -1);
  for (int i = 0; i < (int)Q.sub.size(); ++i) down[Q.sub[i]] = i;
  return map_groth(G, Q.fcbar, Gbar, [&](const RatVec &x) { return Q.proj.mul(x); }, down);
}

Functor subarrangement_map(const Groth &G, const std::vector<int> &sub,
                           const TorusFaceCat &fcp, const Groth &Gp) {
  const TorusFaceCat &fc = *G.fc;
  if (arrangement_rank(fcp.a0.A0) != fc.A.d)
    throw std::runtime_error("subarrangement drops rank");
  std::vector<int> down(fc.A.n(), -1);
  std::vector<int> ss = sub;
  std::sort(ss.begin(), ss.end());
  for (int i = 0; i < (int)ss.size(); ++i) down[ss[i]] = i;
  return map_groth(G, fcp, Gp, [](const RatVec &x) { return x; }, down);
}

Functor translation_functor(const Groth &G, const RatVec &g) {
  const TorusFaceCat &fc = *G.fc;
  for (int h = 0; h < fc.A.n(); ++h)
    if (!is_integral(fc.A.pairing(h, g)))
      throw std::runtime_error("translation does not stabilize the arrangement");
  std::vector<int> down(fc.A.n());
  for (int h = 0; h < fc.A.n(); ++h) down[h] = h;
  return map_groth(G, fc, G,
                   [&](const RatVec &x) {
                     RatVec y = x;
                     for (int j = 0; j < fc.A.d; ++j) y[j] += g[j];
                     return y;
                   },
                   down);
}

// ------------------------------------------------------------- stabilizer ----

FiniteAbelianGroup stabilizer(const ToricArrangement &A, const std::vector<int> &S) {
  return quotient_group(rows_from(A, S), A.d);
}

std::vector<int> stab_layer(const LayerPoset &lp, const FiniteAbelianGroup &GS, int Y) {
  const Layer &L = lp.layers[Y];
  std::vector<int> out;
  for (int i = 0; i < (int)GS.elements.size(); ++i) {
    RatVec p(lp.A.d);
    for (int j = 0; j < lp.A.d; ++j) p[j] = L.base[j] + GS.elements[i][j];
    // e fixes the layer iff the translated layer meets (hence equals) it
    if (lp.on_layer(L, p)) out.push_back(i);
  }
  return out;
}

}  // namespace torsal
