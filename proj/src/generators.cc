#include "torsal/generators.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace torsal {

namespace {

void chain_add(Chain &z, int idx, const Int &v) {
  if (v == 0) return;
  Int &e = z.c[idx];
  e += v;
  if (e == 0) z.c.erase(idx);
}

void chain_acc(Chain &z, const Chain &w, const Int &scale) {
  for (const auto &[i, v] : w.c) chain_add(z, i, scale * v);
}

void qc_add(QCochain &c, int idx, const Rat &v) {
  if (v == 0) return;
  Rat &e = c.c[idx];
  e += v;
  if (e == 0) c.c.erase(idx);
}

// A_0 hyperplanes containing the linear span X_L of the layer
std::vector<int> hull_hyperplanes(const HyperplaneArrangement &A0, const Layer &L) {
  std::vector<int> out;
  for (int j = 0; j < A0.n(); ++j) {
    bool all0 = true;
    for (int c = 0; c < L.dir.nc && all0; ++c) {
      Rat s = 0;
      for (int i = 0; i < L.dir.nr; ++i) s += A0.hp[j].normal[i] * Rat(L.dir.at(i, c));
      if (s != 0) all0 = false;
    }
    if (all0) out.push_back(j);
  }
  return out;
}

// face of A_0 cut from the chamber by the flat: zero on `flat`, chamber signs
// elsewhere; -1 when the chamber is not adjacent to the flat
int flat_face_of(const FacePoset &fp0, int chamber, const std::vector<int> &flat) {
  SignVec sv = fp0.faces[chamber].sign;
  for (int j : flat) sv[j] = 0;
  return fp0.find(sv);
}

SignVec localize(const TorusFaceCat &fc, int F, const SignVec &s0) {
  const TorusFace &tf = fc.faces[F];
  SignVec sv(tf.loc.size());
  for (size_t i = 0; i < tf.loc.size(); ++i) sv[i] = s0[fc.a0.cls[tf.loc[i]]];
  return sv;
}

int local_chamber(const Generators &g, int F, int chamber0) {
  SignVec sv = localize(g.fc, F, g.fp0.faces[chamber0].sign);
  auto it = g.fc.faces[F].local.index.find(sv);
  assert(it != g.fc.faces[F].local.index.end());
  return it->second;
}

int vertex_cell(const Generators &g, int F, int lchamber) {
  int c = g.fc.faces[F].sal.find(lchamber, lchamber);
  assert(c >= 0);
  return c;
}

int wall_pos(const SignVec &a, const SignVec &b) {
  int p = -1;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) {
      assert(p < 0);
      p = (int)i;
    }
  assert(p >= 0);
  return p;
}

// gallery of M localized at the torus face F: consecutive runs collapsed
std::vector<int> local_gallery(const Generators &g, int M, int F) {
  std::vector<int> out;
  for (int c : g.ch.gallery.at(M)) {
    int id = local_chamber(g, F, c);
    if (out.empty() || out.back() != id) out.push_back(id);
  }
  const FacePoset &lp = g.fc.faces[F].local;
  std::set<int> seen(out.begin(), out.end());
  assert(seen.size() == out.size());
  for (size_t i = 0; i + 1 < out.size(); ++i)
    wall_pos(lp.faces[out[i]].sign, lp.faces[out[i + 1]].sign);
  return out;
}

int nerve1(const NerveComplex &N, int mid) {
  auto it = N.simplex_index[1].find({mid});
  assert(it != N.simplex_index[1].end());
  return it->second;
}

int groth_edge(const Generators &g, int srcobj, int dstobj, int fm) {
  auto it = g.G.mor_index.find({srcobj, dstobj, fm});
  assert(it != g.G.mor_index.end());
  return nerve1(g.N, it->second);
}

int gobj(const Generators &g, int F, int cell) { return g.G.obj_index.at({F, cell}); }

// circle of torus faces of the one-dimensional layer M, walked in the
// gallery-consistent direction
struct CircleStep {
  int P = 0;                 // dim-0 torus face
  std::vector<int> gal;      // localized gallery (local chamber ids)
  int m_in = -1, m_out = -1; // face-category morphisms to the flanking edges
};
struct Circle {
  std::vector<CircleStep> steps;
  std::vector<int> Gs;  // edge face between step j and step j+1 (cyclic)
};

Circle circle_walk(const Generators &g, int M) {
  const auto &lay = g.lp.layers[M];
  assert(lay.rank == g.A.d - 1);
  std::set<int> Ps, Gset;
  for (int F = 0; F < (int)g.fc.faces.size(); ++F) {
    if (g.fc.faces[F].dim == 0 && g.lp.leq(M, g.facelayer[F])) Ps.insert(F);
    if (g.fc.faces[F].dim == 1 && g.facelayer[F] == M) Gset.insert(F);
  }
  assert(!Gset.empty());
  std::map<int, std::vector<int>> galP;
  for (int P : Ps) galP[P] = local_gallery(g, M, P);
  // classify each circle morphism by where it drags the edge vertex
  std::map<int, std::vector<int>> inc;          // edge face -> morphism ids
  std::map<int, std::pair<int, int>> ends;      // vertex face -> (m_in, m_out)
  int R = g.ch.gallery.at(M).front();
  for (int mi = 0; mi < (int)g.fc.mors.size(); ++mi) {
    const FaceCatMor &m = g.fc.mors[mi];
    if (!Ps.count(m.src) || !Gset.count(m.dst)) continue;
    int vG = vertex_cell(g, m.dst, local_chamber(g, m.dst, R));
    int D = g.G.D_cell(mi, vG);
    const auto &gal = galP[m.src];
    int v0 = vertex_cell(g, m.src, gal.front());
    int vk = vertex_cell(g, m.src, gal.back());
    assert(D == v0 || D == vk);
    auto &e = ends.emplace(m.src, std::make_pair(-1, -1)).first->second;
    if (D == v0) {
      assert(e.first < 0);
      e.first = mi;
    } else {
      assert(e.second < 0);
      e.second = mi;
    }
    inc[m.dst].push_back(mi);
  }
  for (int P : Ps) {
    assert(ends.count(P));
    assert(ends[P].first >= 0 && ends[P].second >= 0);
  }
  for (const auto &[Gf, ms] : inc) {
    (void)Gf;
    assert(ms.size() == 2);
  }
  Circle out;
  int P0 = *Ps.begin(), cur = P0;
  do {
    CircleStep st;
    st.P = cur;
    st.gal = galP[cur];
    st.m_in = ends[cur].first;
    st.m_out = ends[cur].second;
    out.steps.push_back(st);
    int Gf = g.fc.mors[st.m_out].dst;
    out.Gs.push_back(Gf);
    const auto &ms = inc[Gf];
    int partner = ms[0] == st.m_out ? ms[1] : ms[0];
    cur = g.fc.mors[partner].src;
    assert(ends[cur].first == partner);
  } while (cur != P0);
  assert(out.steps.size() == Ps.size() && out.Gs.size() == Gset.size());
  return out;
}

Rat mor_shift(const TorusFaceCat &fc, int mi, int coord) {
  const FaceCatMor &m = fc.mors[mi];
  const RatVec &ws = fc.WP.faces[fc.faces[m.src].rep].witness;
  const RatVec &wd = fc.WP.faces[fc.faces[m.dst].rep].witness;
  return wd[coord] + Rat(m.t[coord]) - ws[coord];
}

Int lcm_int(const Int &a, const Int &b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::string rat_str(const Rat &r) { return r.get_str(); }

std::string term(const Rat &c, const std::string &name) {
  if (c == 1) return name;
  if (c == -1) return "-" + name;
  return rat_str(c) + "*" + name;
}

std::string join_terms(const std::vector<std::string> &ts) {
  std::string out;
  for (const auto &t : ts) {
    if (!out.empty() && t[0] != '-') out += "+";
    out += t;
  }
  return out;
}

}  // namespace

Generators &Generators::operator=(Generators &&o) noexcept {
  A = std::move(o.A);
  fc = std::move(o.fc);
  lp = std::move(o.lp);
  fp0 = std::move(o.fp0);
  G = std::move(o.G);
  N = std::move(o.N);
  ch = std::move(o.ch);
  facelayer = std::move(o.facelayer);
  mu = std::move(o.mu);
  hat = std::move(o.hat);
  dual = std::move(o.dual);
  hat_names = std::move(o.hat_names);
  lam_sign = std::move(o.lam_sign);
  lbasis = std::move(o.lbasis);
  subcache = std::move(o.subcache);
  rmat_cache = std::move(o.rmat_cache);
  G.fc = &fc;
  return *this;
}

void Report::check(bool cond, const std::string &what) {
  if (!cond) {
    ok = false;
    lines.push_back("FAIL: " + what);
  }
}

std::string Report::str() const {
  std::ostringstream os;
  os << title << ": " << (applicable ? (ok ? "ok" : "FAIL") : "not applicable") << "\n";
  for (const auto &l : lines) os << "  " << l << "\n";
  return os.str();
}

// ----------------------------------------------------------------- choices ----

static ChoiceSet make_choices(const Generators &g, const ChoiceOverrides &ov) {
  const ToricArrangement &A = g.A;
  const FacePoset &fp0 = g.fp0;
  int n = A.n(), d = A.d;
  ChoiceSet ch;

  ch.order.resize(n);
  for (int i = 0; i < n; ++i) ch.order[i] = i;
  auto hyper_by_name = [&](const std::string &s) {
    for (int h = 0; h < n; ++h)
      if (A.name(h) == s) return h;
    throw std::runtime_error("unknown hypertorus: " + s);
  };
  auto layer_by_name = [&](const std::string &s) {
    for (int i = 0; i < (int)g.lp.layers.size(); ++i)
      if (g.lp.layers[i].name == s) return i;
    throw std::runtime_error("unknown layer: " + s);
  };
  if (ov.order) {
    if ((int)ov.order->size() != n) throw std::runtime_error("order must list all hypertori");
    for (int i = 0; i < n; ++i) ch.order[i] = hyper_by_name((*ov.order)[i]);
    std::set<int> s(ch.order.begin(), ch.order.end());
    if ((int)s.size() != n) throw std::runtime_error("order has repeats");
  }

  auto chamber_from = [&](const std::vector<int> &s) {
    if ((int)s.size() != n) throw std::runtime_error("chamber needs one sign per hypertorus");
    SignVec sv(fp0.arr.n(), 0);
    for (int h = 0; h < n; ++h) {
      if (s[h] != 1 && s[h] != -1) throw std::runtime_error("chamber signs must be +-1");
      int v = s[h] * g.fc.a0.sgn[h];
      int j = g.fc.a0.cls[h];
      if (sv[j] != 0 && sv[j] != v) throw std::runtime_error("inconsistent chamber signs");
      sv[j] = v;
    }
    int c = fp0.find(sv);
    if (c < 0) throw std::runtime_error("chamber signs are not realizable");
    return c;
  };

  // B(L) and the face of A_0 below it on X_L
  int nl = (int)g.lp.layers.size();
  ch.B_L.resize(nl);
  ch.F_L.resize(nl);
  for (int L = 0; L < nl; ++L) {
    std::vector<int> flat = hull_hyperplanes(fp0.arr, g.lp.layers[L]);
    int B = -1;
    auto it = ov.B.find(g.lp.layers[L].name);
    if (it != ov.B.end()) {
      B = chamber_from(it->second);
      if (flat_face_of(fp0, B, flat) < 0)
        throw std::runtime_error("B(" + g.lp.layers[L].name + ") is not adjacent to the layer");
    } else {
      for (int c : fp0.chambers)
        if (flat_face_of(fp0, c, flat) >= 0) {
          B = c;
          break;
        }
    }
    assert(B >= 0);
    ch.B_L[L] = B;
    ch.F_L[L] = flat_face_of(fp0, B, flat);
  }

  // R_M and the gallery for every one-dimensional layer
  for (int M = 0; M < nl; ++M) {
    if (g.lp.layers[M].rank != d - 1) continue;
    std::vector<int> flat = hull_hyperplanes(fp0.arr, g.lp.layers[M]);
    int R = -1;
    auto it = ov.RM.find(g.lp.layers[M].name);
    if (it != ov.RM.end()) {
      R = chamber_from(it->second);
      if (flat_face_of(fp0, R, flat) < 0)
        throw std::runtime_error("R(" + g.lp.layers[M].name + ") is not adjacent");
    } else {
      for (int c : fp0.chambers)
        if (flat_face_of(fp0, c, flat) >= 0) {
          R = c;
          break;
        }
    }
    assert(R >= 0);
    ch.R_M[M] = R;
    SignVec sv = fp0.faces[R].sign;
    std::set<int> onflat(flat.begin(), flat.end());
    for (int j = 0; j < fp0.arr.n(); ++j)
      if (!onflat.count(j)) sv[j] = -sv[j];
    int cend = fp0.find(sv);
    assert(cend >= 0);
    ch.gallery[M] = minimal_gallery(fp0, R, cend);
  }

  ch.R_H.resize(n);
  for (int h = 0; h < n; ++h) {
    auto it = ov.R.find(A.name(h));
    ch.R_H[h] = it != ov.R.end() ? chamber_from(it->second) : fp0.chambers[0];
  }

  // independent one-dimensional layers spanning the torus directions
  auto greedy = [&](const std::vector<int> &cand, int want) {
    std::vector<int> out;
    std::vector<RatVec> dirs;
    for (int M : cand) {
      RatVec v(d);
      for (int i = 0; i < d; ++i) v[i] = Rat(g.lp.layers[M].dir.at(i, 0));
      dirs.push_back(v);
      RatMat T((int)dirs.size(), d);
      for (int r = 0; r < (int)dirs.size(); ++r)
        for (int c = 0; c < d; ++c) T.at(r, c) = dirs[r][c];
      if (rank_rat(T) == (int)dirs.size())
        out.push_back(M);
      else
        dirs.pop_back();
      if ((int)out.size() == want) break;
    }
    return out;
  };
  std::vector<int> onedim;
  for (int M = 0; M < nl; ++M)
    if (g.lp.layers[M].rank == d - 1) onedim.push_back(M);
  if (ov.base_layers) {
    for (const auto &s : *ov.base_layers) {
      int M = layer_by_name(s);
      if (g.lp.layers[M].rank != d - 1) throw std::runtime_error("base layer must be 1-dim");
      ch.base_layers.push_back(M);
    }
    if ((int)ch.base_layers.size() != d || greedy(ch.base_layers, d).size() != (size_t)d)
      throw std::runtime_error("base layers must be d independent directions");
  } else {
    ch.base_layers = greedy(onedim, d);
    assert((int)ch.base_layers.size() == d);
  }

  ch.N_L.resize(nl);
  for (int L = 0; L < nl; ++L) {
    int want = d - g.lp.layers[L].rank;
    if (L == 0) {
      ch.N_L[L] = ch.base_layers;
      continue;
    }
    std::vector<int> cand;
    for (int M : onedim)
      if (g.lp.leq(L, M)) cand.push_back(M);
    ch.N_L[L] = greedy(cand, want);
    assert((int)ch.N_L[L].size() == want);
  }
  return ch;
}

// -------------------------------------------------------------- raw chains ----

Chain lambda_chain(const Generators &g, int M, int B) {
  Circle cw = circle_walk(g, M);
  int R = g.ch.gallery.at(M).front();
  Chain z;
  z.degree = 1;
  int ns = (int)cw.steps.size();
  for (int j = 0; j < ns; ++j) {
    const CircleStep &st = cw.steps[j];
    const FacePoset &lf = g.fc.faces[st.P].local;
    SignVec locB = localize(g.fc, st.P, g.fp0.faces[B].sign);
    int k = (int)st.gal.size() - 1;
    assert(k >= 1);
    for (int i = 0; i < k; ++i) {
      const SignVec &a = lf.faces[st.gal[i]].sign;
      const SignVec &b = lf.faces[st.gal[i + 1]].sign;
      int p = wall_pos(a, b);
      SignVec wsv = a;
      wsv[p] = 0;
      int wall = lf.index.at(wsv);
      SignVec esv = wsv;
      esv[p] = locB[p];
      int ech = lf.index.at(esv);
      int ecell = g.fc.faces[st.P].sal.find(wall, ech);
      assert(ecell >= 0);
      int eobj = gobj(g, st.P, ecell);
      chain_add(z, groth_edge(g, gobj(g, st.P, vertex_cell(g, st.P, st.gal[i])), eobj, -1), 1);
      chain_add(z, groth_edge(g, gobj(g, st.P, vertex_cell(g, st.P, st.gal[i + 1])), eobj, -1), -1);
    }
    // flanking edge faces of the circle
    int Gf = cw.Gs[j];
    int vG = vertex_cell(g, Gf, local_chamber(g, Gf, R));
    int vGobj = gobj(g, Gf, vG);
    chain_add(z, groth_edge(g, gobj(g, st.P, vertex_cell(g, st.P, st.gal.back())), vGobj, st.m_out), 1);
    const CircleStep &nx = cw.steps[(j + 1) % ns];
    chain_add(z, groth_edge(g, gobj(g, nx.P, vertex_cell(g, nx.P, nx.gal.front())), vGobj, nx.m_in), -1);
  }
  assert(g.N.is_cycle(z));
  return z;
}

Chain xi_chain(const Generators &g, int M, int h, int B, int P) {
  const FacePoset &lf = g.fc.faces[P].local;
  const auto &loc = g.fc.faces[P].loc;
  int q = -1;
  for (size_t i = 0; i < loc.size(); ++i)
    if (loc[i] == h) q = (int)i;
  assert(q >= 0);
  std::vector<int> gal = local_gallery(g, M, P);
  SignVec locB = localize(g.fc, P, g.fp0.faces[B].sign);
  int found = -1;
  for (size_t i = 0; i + 1 < gal.size(); ++i) {
    int p = wall_pos(lf.faces[gal[i]].sign, lf.faces[gal[i + 1]].sign);
    if (p == q) {
      assert(found < 0);  // a minimal gallery crosses each wall once
      found = (int)i;
    }
  }
  assert(found >= 0);
  const SignVec &a = lf.faces[gal[found]].sign;
  SignVec wsv = a;
  wsv[q] = 0;
  int wall = lf.index.at(wsv);
  SignVec esv = wsv, bsv = wsv;
  esv[q] = locB[q];
  bsv[q] = -locB[q];
  int e = g.fc.faces[P].sal.find(wall, lf.index.at(esv));
  int eb = g.fc.faces[P].sal.find(wall, lf.index.at(bsv));
  assert(e >= 0 && eb >= 0);
  int vi = gobj(g, P, vertex_cell(g, P, gal[found]));
  int vj = gobj(g, P, vertex_cell(g, P, gal[found + 1]));
  int eo = gobj(g, P, e), ebo = gobj(g, P, eb);
  Chain z;
  z.degree = 1;
  chain_add(z, groth_edge(g, vi, eo, -1), 1);
  chain_add(z, groth_edge(g, vj, eo, -1), -1);
  chain_add(z, groth_edge(g, vj, ebo, -1), 1);
  chain_add(z, groth_edge(g, vi, ebo, -1), -1);
  assert(g.N.is_cycle(z));
  return z;
}

Chain omega_square(const Generators &g, int F, int K) {
  const FacePoset &lf = g.fc.faces[F].local;
  const SignVec &ksv = lf.faces[K].sign;
  int p = -1;
  for (size_t i = 0; i < ksv.size(); ++i)
    if (ksv[i] == 0) {
      assert(p < 0);
      p = (int)i;
    }
  assert(p >= 0);
  int h = g.fc.faces[F].loc[p];
  int sR = g.fp0.faces[g.ch.R_H[h]].sign[g.fc.a0.cls[h]];
  assert(sR != 0);
  SignVec c1 = ksv, c2 = ksv;
  c1[p] = sR;
  c2[p] = -sR;
  int ch1 = lf.index.at(c1), ch2 = lf.index.at(c2);
  const SalvettiPoset &sal = g.fc.faces[F].sal;
  int v1 = gobj(g, F, sal.find(ch1, ch1));
  int v2 = gobj(g, F, sal.find(ch2, ch2));
  int e1 = gobj(g, F, sal.find(K, ch1));
  int e2 = gobj(g, F, sal.find(K, ch2));
  Chain z;
  z.degree = 1;
  chain_add(z, groth_edge(g, v1, e1, -1), 1);
  chain_add(z, groth_edge(g, v2, e1, -1), -1);
  chain_add(z, groth_edge(g, v2, e2, -1), 1);
  chain_add(z, groth_edge(g, v1, e2, -1), -1);
  assert(g.N.is_cycle(z));
  return z;
}

Chain omega_hat_chain(const Generators &g, int h) {
  for (int F = 0; F < (int)g.fc.faces.size(); ++F) {
    const auto &loc = g.fc.faces[F].loc;
    if (loc.size() == 1 && loc[0] == h)
      return omega_square(g, F, g.fc.faces[F].local.index.at(SignVec{0}));
  }
  throw std::runtime_error("no torus face on a single hypertorus");
}

int epsilon(const Generators &g, int h, int B) {
  int j = g.fc.a0.cls[h];
  return g.fp0.faces[B].sign[j] == g.fp0.faces[g.ch.R_H[h]].sign[j] ? 1 : -1;
}

IntVec displacement(const Generators &g, const Chain &z) {
  IntVec out(g.A.d);
  for (int j = 0; j < g.A.d; ++j) {
    Rat v = pairq(g.mu[j], z);
    assert(is_integral(v));
    out[j] = v.get_num();
  }
  return out;
}

Chain lambda_norm(Generators &g, int M, int B) {
  Chain z = lambda_chain(g, M, B);
  auto it = g.lam_sign.find(M);
  if (it == g.lam_sign.end()) {
    IntVec disp = displacement(g, z);
    int s = 0;
    for (const Int &v : disp)
      if (v != 0) {
        s = v > 0 ? 1 : -1;
        break;
      }
    assert(s != 0);
    it = g.lam_sign.emplace(M, s).first;
  }
  if (it->second < 0)
    for (auto &[i, v] : z.c) v = -v;
  return z;
}

std::vector<int> separating_at(const Generators &g, int F, int B, int Bp) {
  std::vector<int> out;
  const SignVec &a = g.fp0.faces[B].sign, &b = g.fp0.faces[Bp].sign;
  for (int h : g.fc.faces[F].loc)
    if (a[g.fc.a0.cls[h]] != b[g.fc.a0.cls[h]]) out.push_back(h);
  return out;
}

// ---------------------------------------------------------- cochain plumbing ----

QCochain to_q(const Cochain &c) {
  QCochain out;
  out.degree = c.degree;
  for (const auto &[i, v] : c.c) out.c[i] = Rat(v);
  return out;
}

QCochain pull_qcochain(const Functor &F, const NerveComplex &Nsrc,
                       const NerveComplex &Ndst, const QCochain &c) {
  int k = c.degree;
  QCochain out;
  out.degree = k;
  for (int i = 0; i < Nsrc.size(k); ++i) {
    if (k == 0) {  // degree-0 simplex id = object id
      auto cv = c.c.find(F.obj[i]);
      if (cv != c.c.end()) qc_add(out, i, cv->second);
      continue;
    }
    const auto &sig = Nsrc.simplices[k][i];
    std::vector<int> img;
    bool degen = false;
    for (int m : sig) {
      int fm = F.mor[m];
      if (fm < 0) {
        degen = true;
        break;
      }
      img.push_back(fm);
    }
    if (degen) continue;
    auto it = Ndst.simplex_index[k].find(img);
    assert(it != Ndst.simplex_index[k].end());
    auto cv = c.c.find(it->second);
    if (cv != c.c.end()) qc_add(out, i, cv->second);
  }
  return out;
}

QCochain restrict_qcochain(const SubComplex &sc, const NerveComplex &Nbig,
                           const QCochain &c) {
  return pull_qcochain(sc.sub.incl, sc.N, Nbig, c);
}

std::optional<Chain> try_chain_to_sub(const SubComplex &sc, const NerveComplex &Nbig,
                                      const Chain &z) {
  Chain out;
  out.degree = z.degree;
  for (const auto &[idx, v] : z.c) {
    if (z.degree == 0) {  // degree-0 simplex id = object id
      auto it = sc.objpos.find(idx);
      if (it == sc.objpos.end()) return std::nullopt;
      out.c[it->second] = v;
      continue;
    }
    const auto &sig = Nbig.simplices[z.degree][idx];
    std::vector<int> loc;
    for (int m : sig) {
      auto it = sc.morpos.find(m);
      if (it == sc.morpos.end()) return std::nullopt;
      loc.push_back(it->second);
    }
    out.c[sc.N.simplex_index[z.degree].at(loc)] = v;
  }
  return out;
}

Chain chain_to_sub(const SubComplex &sc, const NerveComplex &Nbig, const Chain &z) {
  auto r = try_chain_to_sub(sc, Nbig, z);
  if (!r) throw std::runtime_error("chain leaves the subcomplex");
  return *r;
}

RatVec qclass_coords(NerveComplex &N, const QCochain &c, int k) {
  assert(c.degree == k);
  Int l = 1;
  for (const auto &[i, v] : c.c) {
    (void)i;
    l = lcm_int(l, Int(v.get_den()));
  }
  Cochain ic;
  ic.degree = k;
  for (const auto &[i, v] : c.c) {
    Rat s = v * Rat(l);
    assert(is_integral(s));
    ic.c[i] = s.get_num();
  }
  RatVec out = N.cocycle_class_coords(ic, k);
  for (auto &v : out) v /= Rat(l);
  return out;
}

QCochain cup_list(const NerveComplex &N, const std::vector<QCochain> &fs) {
  QCochain acc = to_q(unit_cochain(N));
  for (const auto &f : fs) acc = cupq(N, acc, f);
  return acc;
}

// ------------------------------------------------------------- subcomplexes ----

SubComplex &Generators::sub(int Y, int F0) {
  auto key = std::make_pair(Y, F0);
  auto it = subcache.find(key);
  if (it != subcache.end()) return it->second;
  SubComplex sc;
  sc.Y = Y;
  sc.F0 = F0;
  sc.sub = subcategory_S(G, lp, Y, fp0, F0);
  sc.N = nerve_complex(sc.sub.cat, A.d + 1);
  for (int i = 0; i < (int)sc.sub.objs.size(); ++i) sc.objpos[sc.sub.objs[i]] = i;
  for (int i = 0; i < (int)sc.sub.mors.size(); ++i) sc.morpos[sc.sub.mors[i]] = i;
  return subcache.emplace(key, std::move(sc)).first->second;
}

const RatMat &Generators::restriction(int Y, int F0, int k) {
  auto key = std::make_tuple(Y, F0, k);
  auto it = rmat_cache.find(key);
  if (it != rmat_cache.end()) return it->second;
  SubComplex &sc = sub(Y, F0);
  const auto &big = N.homology(k);
  assert(sc.N.homology(k).torsion.empty());
  RatMat M(sc.N.homology(k).betti, big.betti);
  for (int j = 0; j < big.betti; ++j) {
    RatVec col = qclass_coords(sc.N, restrict_qcochain(sc, N, to_q(big.cocycle_reps[j])), k);
    for (int i = 0; i < M.nr; ++i) M.at(i, j) = col[i];
  }
  return rmat_cache.emplace(key, std::move(M)).first->second;
}

// ------------------------------------------------------------------- build ----

Generators build_generators(const ToricArrangement &A, const ChoiceOverrides &ov) {
  Generators g;
  g.A = A;
  g.A.validate();
  g.fc = face_category(g.A);
  g.lp = layer_poset(g.A);
  g.fp0 = face_poset(g.fc.a0.A0);
  g.G = grothendieck(g.fc);
  g.G.fc = &g.fc;
  g.N = nerve_complex(g.G.cat, g.A.d + 1);
  g.facelayer.resize(g.fc.faces.size());
  for (int F = 0; F < (int)g.fc.faces.size(); ++F) {
    int lay = g.lp.find(g.fc.faces[F].loc, g.fc.WP.faces[g.fc.faces[F].rep].witness);
    assert(lay >= 0);
    g.facelayer[F] = lay;
  }
  g.ch = make_choices(g, ov);

  // torus coordinate classes
  g.mu.assign(g.A.d, QCochain{});
  for (int j = 0; j < g.A.d; ++j) {
    g.mu[j].degree = 1;
    for (int mi = 0; mi < (int)g.G.gmor.size(); ++mi) {
      if (g.G.gmor[mi].fm < 0) continue;
      Rat v = mor_shift(g.fc, g.G.gmor[mi].fm, j);
      if (v != 0) g.mu[j].c[nerve1(g.N, mi)] = v;
    }
  }

  const auto &h1 = g.N.homology(1);
  assert(h1.torsion.empty());
  assert(h1.betti == g.A.d + g.A.n());
  for (int i = 0; i < g.A.d; ++i) {
    int M = g.ch.base_layers[i];
    g.hat.push_back(lambda_norm(g, M, g.ch.B_L[0]));
    g.hat_names.push_back("l(" + g.lp.layers[M].name + ")");
  }
  for (int h = 0; h < g.A.n(); ++h) {
    g.hat.push_back(omega_hat_chain(g, h));
    g.hat_names.push_back("w(" + g.A.name(h) + ")");
  }
  g.dual = dual_cocycles(g.N, 1, g.hat);

  // per-layer bases in the chosen subcomplexes
  g.lbasis.resize(g.lp.layers.size());
  for (int L = 0; L < (int)g.lp.layers.size(); ++L) {
    SubComplex &sc = g.sub(L, g.ch.F_L[L]);
    auto &lb = g.lbasis[L];
    for (int M : g.ch.N_L[L]) {
      lb.hat.push_back(chain_to_sub(sc, g.N, lambda_norm(g, M, g.ch.B_L[L])));
      lb.names.push_back("l(" + g.lp.layers[M].name + ")");
      assert(sc.N.is_cycle(lb.hat.back()));
    }
    for (int h : g.lp.layers[L].tori) {
      std::optional<Chain> rep;
      for (int F = 0; F < (int)g.fc.faces.size() && !rep; ++F) {
        const auto &loc = g.fc.faces[F].loc;
        int p = -1;
        for (size_t i = 0; i < loc.size(); ++i)
          if (loc[i] == h) p = (int)i;
        if (p < 0) continue;
        const FacePoset &lf = g.fc.faces[F].local;
        for (int K = 0; K < (int)lf.faces.size() && !rep; ++K) {
          const SignVec &sv = lf.faces[K].sign;
          int zc = 0;
          for (int s : sv) zc += s == 0;
          if (zc != 1 || sv[p] != 0) continue;
          rep = try_chain_to_sub(sc, g.N, omega_square(g, F, K));
        }
      }
      if (!rep) throw std::runtime_error("no omega square inside the layer subcomplex");
      assert(sc.N.is_cycle(*rep));
      lb.hat.push_back(*rep);
      lb.names.push_back("w(" + g.A.name(h) + ")");
    }
    assert(sc.N.homology(1).torsion.empty());
    lb.dual = dual_cocycles(sc.N, 1, lb.hat);
  }
  return g;
}

// -------------------------------------------------------------- basis change ----

Report verify_basis_change(Generators &g, int M, int B, int Bp) {
  Report rep;
  rep.title = "basis change " + g.lp.layers[M].name + ": " +
              std::to_string(B) + " vs " + std::to_string(Bp);
  Chain lamB = lambda_chain(g, M, B);
  Chain lamBp = lambda_chain(g, M, Bp);
  const auto &AM = g.lp.layers[M].tori;
  auto in_AM = [&](int h) { return std::binary_search(AM.begin(), AM.end(), h); };

  Chain diff = lamB;
  chain_acc(diff, lamBp, -1);
  for (int P = 0; P < (int)g.fc.faces.size(); ++P) {
    if (g.fc.faces[P].dim != 0 || !g.lp.leq(M, g.facelayer[P])) continue;
    for (int h : separating_at(g, P, B, Bp)) {
      if (in_AM(h)) continue;
      chain_acc(diff, xi_chain(g, M, h, B, P), -1);
    }
  }
  rep.check(diff.c.empty(), "chain identity lambda_B - lambda_B' = sum of xi squares");

  // homology identity against the epsilon-weighted omega squares; the square
  // orientation of xi is anchored at the gallery start, omega's at R_H
  int RM = g.ch.gallery.at(M).front();
  Chain z = lamB;
  chain_acc(z, lamBp, -1);
  for (int F = 0; F < (int)g.fc.faces.size(); ++F) {
    if (!g.lp.leq(M, g.facelayer[F])) continue;
    for (int h : separating_at(g, F, B, Bp)) {
      if (in_AM(h)) continue;
      chain_acc(z, omega_hat_chain(g, h), -epsilon(g, h, RM) * epsilon(g, h, B));
    }
  }
  rep.check(g.N.is_cycle(z), "difference with omega squares is a cycle");
  g.N.homology(1);  // make sure the reduction exists
  Chain zr = g.N.apply_pi(z);
  RatVec b((int)g.N.alive[1].size(), Rat(0));
  for (const auto &[i, v] : zr.c) b[g.N.alive_pos[1].at(i)] = Rat(v);
  auto x = solve_rat(RatMat::from_int(g.N.rbnd[2]), b);
  rep.check(x.has_value(), "difference with omega squares bounds explicitly");
  return rep;
}

// --------------------------------------------------------------- restriction ----

Report verify_restriction(Generators &g, int L) {
  Report rep;
  rep.title = "restriction to " + g.lp.layers[L].name;
  SubComplex &sc = g.sub(L, g.ch.F_L[L]);
  auto &lb = g.lbasis[L];
  int d = g.A.d, n = g.A.n(), BT = g.ch.B_L[0], BL = g.ch.B_L[L];
  int nlam = (int)g.ch.N_L[L].size();
  const auto &tori = g.lp.layers[L].tori;

  for (int i = 0; i < d + n; ++i) {
    QCochain r = restrict_qcochain(sc, g.N, g.dual[i]);
    for (int j = 0; j < (int)lb.hat.size(); ++j) {
      Rat got = pairq(r, lb.hat[j]);
      Rat want;
      if (j < nlam) {
        int M = g.ch.N_L[L][j];
        Rat base = pairq(g.dual[i], lambda_norm(g, M, BT));
        want = base;
        if (i >= d) {
          int h = i - d;
          const auto &AM = g.lp.layers[M].tori;
          if (!std::binary_search(AM.begin(), AM.end(), h)) {
            Int count = 0;
            for (int F = 0; F < (int)g.fc.faces.size(); ++F) {
              if (!g.lp.leq(M, g.facelayer[F])) continue;
              for (int hh : separating_at(g, F, BL, BT))
                if (hh == h) ++count;
            }
            int RM = g.ch.gallery.at(M).front();
            want += Rat(g.lam_sign.at(M) * epsilon(g, h, RM) * epsilon(g, h, BL) * count);
          }
          rep.check(base == 0, "lambda part of " + g.hat_names[i] + " at base chamber");
        }
      } else {
        want = (i >= d && i - d == tori[j - nlam]) ? 1 : 0;
      }
      rep.check(got == want, "coefficient of " + g.hat_names[i] + " on " + lb.names[j] +
                                 " (got " + rat_str(got) + ", want " + rat_str(want) + ")");
    }
  }

  // high-degree torus classes restrict to zero
  for (int s = 1; s <= d; ++s) {
    if (g.lp.layers[L].rank <= d - s) continue;
    std::vector<int> idx(s);
    std::function<void(int, int)> go = [&](int pos, int from) {
      if (pos == s) {
        std::vector<QCochain> fs;
        for (int j : idx) fs.push_back(g.mu[j]);
        RatVec c = qclass_coords(sc.N, restrict_qcochain(sc, g.N, cup_list(g.N, fs)), s);
        bool zero = true;
        for (const auto &v : c) zero = zero && v == 0;
        rep.check(zero, "torus class of degree " + std::to_string(s) + " dies");
        return;
      }
      for (int j = from; j < d; ++j) {
        idx[pos] = j;
        go(pos + 1, j + 1);
      }
    };
    go(0, 0);
  }

  // the ideal generated by the lambda classes restricts into the local one
  for (int m = 1; m <= d; ++m) {
    if (g.N.homology(m).betti == 0) continue;
    std::vector<RatVec> local_span, images;
    int lb_dim = sc.N.homology(m).betti;
    for (int t = 0; t < nlam; ++t) {
      if (m == 1) {
        local_span.push_back(qclass_coords(sc.N, lb.dual[t], 1));
        continue;
      }
      for (const auto &y : sc.N.homology(m - 1).cocycle_reps)
        local_span.push_back(qclass_coords(sc.N, cupq(sc.N, lb.dual[t], to_q(y)), m));
    }
    for (int i = 0; i < d; ++i) {
      if (m == 1) {
        images.push_back(qclass_coords(sc.N, restrict_qcochain(sc, g.N, g.dual[i]), 1));
        continue;
      }
      for (const auto &y : g.N.homology(m - 1).cocycle_reps) {
        QCochain p = cupq(g.N, g.dual[i], to_q(y));
        images.push_back(qclass_coords(sc.N, restrict_qcochain(sc, g.N, p), m));
      }
    }
    auto rank_of = [&](const std::vector<RatVec> &rows) {
      if (rows.empty()) return 0;
      RatMat T((int)rows.size(), lb_dim);
      for (int r = 0; r < (int)rows.size(); ++r)
        for (int c = 0; c < lb_dim; ++c) T.at(r, c) = rows[r][c];
      return rank_rat(T);
    };
    int r1 = rank_of(local_span);
    std::vector<RatVec> both = local_span;
    both.insert(both.end(), images.begin(), images.end());
    rep.check(rank_of(both) == r1, "ideal containment in degree " + std::to_string(m));
  }
  return rep;
}

Report verify_quotient_omega(Generators &g, int L) {
  Report rep;
  rep.title = "quotient pullback of omega classes through " + g.lp.layers[L].name;
  if (L == 0) {
    rep.applicable = false;
    return rep;
  }
  QuotientSetup Q = quotient_setup(g.fc, g.lp, L);
  ChoiceOverrides ovq;
  SignVec pi0 = Q.pi_face0(g.fc.a0, g.fp0.faces[g.ch.B_L[0]].sign);
  std::vector<int> bt(Q.Abar.n());
  for (int i = 0; i < Q.Abar.n(); ++i)
    bt[i] = Q.fcbar.a0.sgn[i] * pi0[Q.fcbar.a0.cls[i]];
  ovq.B["T"] = bt;
  Generators gq = build_generators(Q.Abar, ovq);
  Functor Phi = quotient_functor(g.G, Q, gq.G);
  for (int i = 0; i < (int)Q.sub.size(); ++i) {
    int h = Q.sub[i];
    QCochain pulled = pull_qcochain(Phi, g.N, gq.N, gq.dual[Q.Abar.d + i]);
    RatVec a = qclass_coords(g.N, pulled, 1);
    RatVec b = qclass_coords(g.N, g.dual[g.A.d + h], 1);
    rep.check(a == b, "pullback of omega(" + g.A.name(h) + ")");
  }
  return rep;
}

// ------------------------------------------------------------------ omega_SL ----

std::vector<std::vector<int>> nbc_slots(const Generators &g, int L) {
  const auto &tori = g.lp.layers[L].tori;
  HyperplaneArrangement arrL;
  arrL.d = g.A.d;
  for (int h : tori) arrL.hp.push_back(g.fp0.arr.hp[g.fc.a0.cls[h]]);
  std::vector<int> order;
  for (int h : g.ch.order) {
    auto it = std::find(tori.begin(), tori.end(), h);
    if (it != tori.end()) order.push_back((int)(it - tori.begin()));
  }
  auto grouped = nbc_sets(arrL, order);
  int r = g.lp.layers[L].rank;
  std::vector<std::vector<int>> out;
  if (r >= (int)grouped.size()) return out;
  for (const auto &s : grouped[r]) {
    std::vector<int> hs;
    for (int p : s) hs.push_back(tori[p]);
    out.push_back(hs);
  }
  return out;
}

RatVec omega_SL(Generators &g, int L, const std::vector<int> &S, Report *rep) {
  int r = (int)S.size();
  assert(r == g.lp.layers[L].rank);
  FiniteAbelianGroup GS = stabilizer(g.A, S);
  std::vector<QCochain> fs;
  for (int h : S) fs.push_back(g.dual[g.A.d + h]);
  QCochain wS = cup_list(g.N, fs);

  std::vector<RatVec> rows;
  std::vector<Rat> rhs;
  for (int Y = 0; Y < (int)g.lp.layers.size(); ++Y) {
    // smallest layer of the sub-arrangement on S containing Y
    Layer syn;
    for (int s : S)
      if (std::binary_search(g.lp.layers[Y].tori.begin(), g.lp.layers[Y].tori.end(), s))
        syn.tori.push_back(s);
    std::sort(syn.tori.begin(), syn.tori.end());
    syn.base = g.lp.layers[Y].base;
    bool Lin = std::includes(g.lp.layers[L].tori.begin(), g.lp.layers[L].tori.end(),
                             syn.tori.begin(), syn.tori.end()) &&
               g.lp.on_layer(syn, g.lp.layers[L].base);
    Int stab = 0;
    for (const RatVec &e : GS.elements) {
      RatVec p = g.lp.layers[Y].base;
      for (size_t i = 0; i < p.size(); ++i) p[i] += e[i];
      if (g.lp.on_layer(syn, p)) ++stab;
    }
    assert(stab > 0);

    std::vector<int> flat = hull_hyperplanes(g.fp0.arr, g.lp.layers[Y]);
    std::set<int> flatset(flat.begin(), flat.end());
    for (int F0 = 0; F0 < (int)g.fp0.faces.size(); ++F0) {
      std::vector<int> zeros;
      for (int j = 0; j < g.fp0.arr.n(); ++j)
        if (g.fp0.faces[F0].sign[j] == 0) zeros.push_back(j);
      if (zeros != flat) continue;
      SubComplex &sc = g.sub(Y, F0);
      const RatMat &rho = g.restriction(Y, F0, r);
      RatVec target(rho.nr, Rat(0));
      if (Lin) {
        RatVec rw = qclass_coords(sc.N, restrict_qcochain(sc, g.N, wS), r);
        for (int i = 0; i < rho.nr; ++i) target[i] = rw[i] / Rat(stab);
      }
      for (int i = 0; i < rho.nr; ++i) {
        RatVec row(rho.nc);
        for (int j = 0; j < rho.nc; ++j) row[j] = rho.at(i, j);
        rows.push_back(row);
        rhs.push_back(target[i]);
      }
    }
  }
  RatMat M((int)rows.size(), g.N.homology(r).betti);
  for (int i = 0; i < M.nr; ++i)
    for (int j = 0; j < M.nc; ++j) M.at(i, j) = rows[i][j];
  auto x = solve_rat(M, rhs);
  std::string slot = "omega(";
  for (size_t i = 0; i < S.size(); ++i) slot += (i ? "," : "") + g.A.name(S[i]);
  slot += "|" + g.lp.layers[L].name + ")";
  if (!x) throw std::runtime_error(slot + ": conditions unsolvable");
  bool unique = nullspace_rat(M).nc == 0;
  bool integral = true;
  for (const auto &v : *x) integral = integral && is_integral(v);
  if (rep) {
    rep->check(unique, slot + " unique");
    rep->check(integral, slot + " integral");
    rep->note(slot + " exists");
  } else {
    assert(unique && integral);
  }
  return *x;
}

// ---------------------------------------------------------------- the table ----

static QCochain class_rep(NerveComplex &N, const RatVec &coords, int k) {
  QCochain out;
  out.degree = k;
  const auto &reps = N.homology(k).cocycle_reps;
  for (int i = 0; i < (int)coords.size(); ++i) {
    if (coords[i] == 0) continue;
    for (const auto &[idx, v] : reps[i].c) qc_add(out, idx, coords[i] * Rat(v));
  }
  return out;
}

// monomials in the local dual basis spanning H^deg of the layer subcomplex
struct LocalMonomials {
  std::vector<std::string> names;
  std::vector<RatVec> coords;  // class coords of each monomial
  std::vector<int> pick;       // greedily chosen independent subset
};

static LocalMonomials local_monomials(Generators &g, int L, int deg) {
  SubComplex &sc = g.sub(L, g.ch.F_L[L]);
  auto &lb = g.lbasis[L];
  int nlam = (int)g.ch.N_L[L].size();
  const auto &tori = g.lp.layers[L].tori;
  LocalMonomials out;
  int dim = sc.N.homology(deg).betti;

  HyperplaneArrangement arrL;
  arrL.d = g.A.d;
  for (int h : tori) arrL.hp.push_back(g.fp0.arr.hp[g.fc.a0.cls[h]]);
  std::vector<int> order;
  for (int h : g.ch.order) {
    auto it = std::find(tori.begin(), tori.end(), h);
    if (it != tori.end()) order.push_back((int)(it - tori.begin()));
  }
  auto grouped = nbc_sets(arrL, order);

  for (int a = deg; a >= 0; --a) {
    int s = deg - a;
    if (a > nlam || s >= (int)grouped.size()) continue;
    // lambda subsets of size a
    std::vector<std::vector<int>> lsets;
    std::vector<int> idx(a);
    std::function<void(int, int)> go = [&](int pos, int from) {
      if (pos == a) {
        lsets.push_back(idx);
        return;
      }
      for (int j = from; j < nlam; ++j) {
        idx[pos] = j;
        go(pos + 1, j + 1);
      }
    };
    go(0, 0);
    for (const auto &ls : lsets)
      for (const auto &ws : grouped[s]) {
        std::vector<QCochain> fs;
        std::string name;
        for (int j : ls) {
          fs.push_back(lb.dual[j]);
          name += (name.empty() ? "" : "*") + lb.names[j];
        }
        for (int p : ws) {
          fs.push_back(lb.dual[nlam + p]);
          name += (name.empty() ? "" : "*") + lb.names[nlam + p];
        }
        out.names.push_back(name);
        out.coords.push_back(qclass_coords(sc.N, cup_list(sc.N, fs), deg));
      }
  }
  // greedy independent subset spanning H^deg
  std::vector<RatVec> chosen;
  for (int i = 0; i < (int)out.names.size(); ++i) {
    std::vector<RatVec> cand = chosen;
    cand.push_back(out.coords[i]);
    RatMat M((int)cand.size(), dim);
    for (int r = 0; r < (int)cand.size(); ++r)
      for (int c = 0; c < dim; ++c) M.at(r, c) = cand[r][c];
    if (rank_rat(M) == (int)cand.size()) {
      chosen = cand;
      out.pick.push_back(i);
    }
    if ((int)chosen.size() == dim) break;
  }
  assert((int)out.pick.size() == dim);
  return out;
}

static std::string render_cell(Generators &g, int L, int deg, const RatVec &coords) {
  bool zero = true;
  for (const auto &v : coords) zero = zero && v == 0;
  if (zero) return "";
  if (deg == 0) return term(coords[0], "1");
  LocalMonomials mono = local_monomials(g, L, deg);
  int dim = (int)coords.size();
  RatMat M(dim, (int)mono.pick.size());
  for (int j = 0; j < (int)mono.pick.size(); ++j)
    for (int i = 0; i < dim; ++i) M.at(i, j) = mono.coords[mono.pick[j]][i];
  auto x = solve_rat(M, coords);
  assert(x.has_value());
  std::vector<std::string> ts;
  for (int j = 0; j < (int)mono.pick.size(); ++j)
    if ((*x)[j] != 0) ts.push_back(term((*x)[j], mono.names[mono.pick[j]]));
  return join_terms(ts);
}

GeneratorTable build_table(Generators &g) {
  GeneratorTable T;
  for (const auto &L : g.lp.layers) T.columns.push_back(L.name);
  std::vector<std::pair<std::string, std::pair<int, RatVec>>> rows;
  for (int i = 0; i < g.A.d; ++i)
    rows.push_back({g.hat_names[i], {1, qclass_coords(g.N, g.dual[i], 1)}});
  for (int L = 0; L < (int)g.lp.layers.size(); ++L) {
    int r = g.lp.layers[L].rank;
    if (r == 0) continue;
    for (const auto &S : nbc_slots(g, L)) {
      std::string name;
      if (r == 1) {
        name = "w(" + g.A.name(S[0]) + ")";
      } else {
        name = "w(";
        for (size_t i = 0; i < S.size(); ++i) name += (i ? "," : "") + g.A.name(S[i]);
        name += "|" + g.lp.layers[L].name + ")";
      }
      rows.push_back({name, {r, omega_SL(g, L, S)}});
    }
  }
  for (const auto &[name, dc] : rows) {
    TableRow tr;
    tr.name = name;
    tr.degree = dc.first;
    tr.coords = dc.second;
    QCochain repc = class_rep(g.N, dc.second, dc.first);
    for (int Y = 0; Y < (int)g.lp.layers.size(); ++Y) {
      SubComplex &sc = g.sub(Y, g.ch.F_L[Y]);
      RatVec c = qclass_coords(sc.N, restrict_qcochain(sc, g.N, repc), dc.first);
      tr.cells.push_back(render_cell(g, Y, dc.first, c));
    }
    T.rows.push_back(std::move(tr));
  }
  return T;
}

// ------------------------------------------------- injectivity / generation ----

Report verify_injectivity(Generators &g) {
  Report rep;
  rep.title = "combined restriction injectivity";
  for (int k = 0; k <= g.A.d; ++k) {
    int bk = g.N.homology(k).betti;
    std::vector<RatVec> rows;
    for (int Y = 0; Y < (int)g.lp.layers.size(); ++Y) {
      const RatMat &rho = g.restriction(Y, g.ch.F_L[Y], k);
      for (int i = 0; i < rho.nr; ++i) {
        RatVec row(rho.nc);
        for (int j = 0; j < rho.nc; ++j) row[j] = rho.at(i, j);
        rows.push_back(row);
      }
    }
    IntMat M((int)rows.size(), bk);
    bool integral = true;
    for (int i = 0; i < M.nr; ++i)
      for (int j = 0; j < bk; ++j) {
        integral = integral && is_integral(rows[i][j]);
        if (integral) M.at(i, j) = rows[i][j].get_num();
      }
    rep.check(integral, "integral restriction matrix in degree " + std::to_string(k));
    if (!integral) continue;
    auto snf = smith_normal_form(M, false, false);
    bool inj = snf.rank == bk;
    for (const auto &v : snf.divisors) inj = inj && (v == 1 || v == -1);
    rep.check(inj, "injective with saturated image in degree " + std::to_string(k) +
                       " (rank " + std::to_string(snf.rank) + " of " + std::to_string(bk) + ")");
  }
  return rep;
}

Report verify_generation(Generators &g) {
  Report rep;
  rep.title = "module generation by the omega classes";
  // collect the omega_{S,L} classes once
  std::vector<std::pair<int, QCochain>> gens;  // (degree, cochain)
  for (int L = 0; L < (int)g.lp.layers.size(); ++L) {
    int r = g.lp.layers[L].rank;
    for (const auto &S : nbc_slots(g, L))
      gens.push_back({r, class_rep(g.N, omega_SL(g, L, S), r)});
  }
  for (int k = 0; k <= g.A.d; ++k) {
    int bk = g.N.homology(k).betti;
    if (bk == 0) continue;
    std::vector<RatVec> cols;
    for (const auto &[r, wc] : gens) {
      if (r > k) continue;
      int s = k - r;
      std::vector<int> idx(s);
      std::function<void(int, int)> go = [&](int pos, int from) {
        if (pos == s) {
          QCochain p = wc;
          for (int j : idx) p = cupq(g.N, p, g.mu[j]);
          cols.push_back(qclass_coords(g.N, p, k));
          return;
        }
        for (int j = from; j < g.A.d; ++j) {
          idx[pos] = j;
          go(pos + 1, j + 1);
        }
      };
      go(0, 0);
    }
    IntMat M(bk, (int)cols.size());
    bool integral = true;
    for (int j = 0; j < (int)cols.size(); ++j)
      for (int i = 0; i < bk; ++i) {
        integral = integral && is_integral(cols[j][i]);
        if (integral) M.at(i, j) = cols[j][i].get_num();
      }
    rep.check(integral, "integral generator coordinates in degree " + std::to_string(k));
    if (!integral) continue;
    auto snf = smith_normal_form(M, false, false);
    bool onto = snf.rank == bk;
    for (const auto &v : snf.divisors) onto = onto && (v == 1 || v == -1);
    rep.check(onto, "trivial cokernel in degree " + std::to_string(k));
  }
  return rep;
}

Report verify_module_structure(Generators &g, int L) {
  Report rep;
  rep.title = "local module structure at " + g.lp.layers[L].name;
  SubComplex &sc = g.sub(L, g.ch.F_L[L]);
  const auto &tori = g.lp.layers[L].tori;
  int nlam = (int)g.ch.N_L[L].size();

  // the local omega squares are part of the chosen basis: nontrivial classes
  for (size_t j = 0; j < tori.size(); ++j) {
    RatVec c = qclass_coords(sc.N, g.lbasis[L].dual[nlam + j], 1);
    bool nz = false;
    for (const auto &v : c) nz = nz || v != 0;
    rep.check(nz, "omega(" + g.A.name(tori[j]) + ") survives locally");
  }

  // restricted omega products and torus classes span everything over Z
  HyperplaneArrangement arrL;
  arrL.d = g.A.d;
  for (int h : tori) arrL.hp.push_back(g.fp0.arr.hp[g.fc.a0.cls[h]]);
  std::vector<int> order;
  for (int h : g.ch.order) {
    auto it = std::find(tori.begin(), tori.end(), h);
    if (it != tori.end()) order.push_back((int)(it - tori.begin()));
  }
  auto grouped = nbc_sets(arrL, order);
  for (int k = 0; k <= g.A.d; ++k) {
    int bk = sc.N.homology(k).betti;
    if (bk == 0) continue;
    std::vector<RatVec> cols;
    for (int r = 0; r <= std::min(k, (int)grouped.size() - 1); ++r)
      for (const auto &S : grouped[r]) {
        std::vector<QCochain> fs;
        for (int p : S) fs.push_back(g.dual[g.A.d + tori[p]]);
        QCochain wloc = restrict_qcochain(sc, g.N, cup_list(g.N, fs));
        int s = k - r;
        std::vector<int> idx(s);
        std::function<void(int, int)> go = [&](int pos, int from) {
          if (pos == s) {
            QCochain p = wloc;
            for (int j : idx) p = cupq(sc.N, p, restrict_qcochain(sc, g.N, g.mu[j]));
            cols.push_back(qclass_coords(sc.N, p, k));
            return;
          }
          for (int j = from; j < g.A.d; ++j) {
            idx[pos] = j;
            go(pos + 1, j + 1);
          }
        };
        go(0, 0);
      }
    IntMat M(bk, (int)cols.size());
    bool integral = true;
    for (int j = 0; j < (int)cols.size(); ++j)
      for (int i = 0; i < bk; ++i) {
        integral = integral && is_integral(cols[j][i]);
        if (integral) M.at(i, j) = cols[j][i].get_num();
      }
    rep.check(integral, "integral local span in degree " + std::to_string(k));
    if (!integral) continue;
    auto snf = smith_normal_form(M, false, false);
    bool onto = snf.rank == bk;
    for (const auto &v : snf.divisors) onto = onto && (v == 1 || v == -1);
    rep.check(onto, "restricted omega products span degree " + std::to_string(k));
  }
  return rep;
}

Report verify_omega_hat_claims(Generators &g) {
  Report rep;
  rep.title = "omega squares die in the torus and under deletion";
  // projection to the face category kills the squares
  Functor proj;
  proj.obj.resize(g.G.cat.nobj);
  proj.mor.resize((int)g.G.gmor.size());
  for (int o = 0; o < g.G.cat.nobj; ++o) proj.obj[o] = g.G.objects[o].first;
  for (int m = 0; m < (int)g.G.gmor.size(); ++m) proj.mor[m] = g.G.gmor[m].fm;
  validate_functor(g.G.cat, g.fc.cat, proj);
  NerveComplex Nfc = nerve_complex(g.fc.cat, 2);
  assert(Nfc.homology(1).torsion.empty());
  for (int h = 0; h < g.A.n(); ++h) {
    Chain p = push_chain(proj, g.N, Nfc, omega_hat_chain(g, h));
    RatVec c = Nfc.cycle_class_coords(p, 1);
    bool zero = true;
    for (const auto &v : c) zero = zero && v == 0;
    rep.check(zero, "omega(" + g.A.name(h) + ") dies in the torus");
  }
  // deleting the defining hypertorus kills the square
  for (int h = 0; h < g.A.n(); ++h) {
    std::vector<int> keep;
    for (int i = 0; i < g.A.n(); ++i)
      if (i != h) keep.push_back(i);
    ToricArrangement Ap;
    Ap.d = g.A.d;
    for (int i : keep) Ap.tori.push_back(g.A.tori[i]);
    IntMat X = Ap.char_matrix();
    RatMat Xq(X.nr, X.nc);
    for (int i = 0; i < X.nr; ++i)
      for (int j = 0; j < X.nc; ++j) Xq.at(i, j) = Rat(X.at(i, j));
    if (rank_rat(Xq) < g.A.d) {
      rep.note("deletion of " + g.A.name(h) + " drops rank; skipped");
      continue;
    }
    TorusFaceCat fcp = face_category(Ap);
    Groth Gp = grothendieck(fcp);
    NerveComplex Np = nerve_complex(Gp.cat, 2);
    assert(Np.homology(1).torsion.empty());
    Functor Psi = subarrangement_map(g.G, keep, fcp, Gp);
    Chain p = push_chain(Psi, g.N, Np, omega_hat_chain(g, h));
    RatVec c = Np.cycle_class_coords(p, 1);
    bool zero = true;
    for (const auto &v : c) zero = zero && v == 0;
    rep.check(zero, "omega(" + g.A.name(h) + ") dies after deleting " + g.A.name(h));
  }
  return rep;
}

// ----------------------------------------------------------------- coherence ----

namespace {

// homotopy-splitting data for one layer Z: the Salvetti category of the local
// central arrangement, the face category of the layer, and the two projection
// functors out of the subcomplex S_{Z,F0}
struct SplitData {
  HyperplaneArrangement arr;
  FacePoset fp;
  SalvettiPoset sp;
  AcyclicCategory salcat;
  std::map<std::pair<int, int>, int> salmor;
  NerveComplex Nsal;
  std::vector<int> faces;          // torus faces inside Z
  SubCategory facecat;             // full subcategory of the face category
  std::map<int, int> fmorpos;      // fc morphism id -> position in facecat
  NerveComplex Nface;
  Functor theta_sal, theta_face;   // out of sub(Z, F0).sub.cat
  std::vector<int> pos;            // position of each hypertorus of A_Z in loc-lists
};

SplitData make_split(Generators &g, int Z, int F0) {
  SplitData sd;
  const auto &tori = g.lp.layers[Z].tori;
  sd.arr.d = g.A.d;
  for (int h : tori) sd.arr.hp.push_back(g.fp0.arr.hp[g.fc.a0.cls[h]]);
  sd.fp = face_poset(sd.arr);
  sd.sp = salvetti_poset(sd.fp);
  int nc = (int)sd.sp.cells.size();
  sd.salcat = category_from_poset(nc, [&](int a, int b) { return sd.sp.leq(a, b); });
  for (int m = 0; m < (int)sd.salcat.mor.size(); ++m)
    sd.salmor[sd.salcat.mor[m]] = m;
  sd.Nsal = nerve_complex(sd.salcat, g.A.d + 1);

  for (int F = 0; F < (int)g.fc.faces.size(); ++F)
    if (g.lp.leq(Z, g.facelayer[F])) sd.faces.push_back(F);
  sd.facecat = full_subcategory(g.fc.cat, sd.faces);
  for (int i = 0; i < (int)sd.facecat.mors.size(); ++i)
    sd.fmorpos[sd.facecat.mors[i]] = i;
  sd.Nface = nerve_complex(sd.facecat.cat, g.A.d + 1);

  SubComplex &sc = g.sub(Z, F0);
  std::map<int, int> facepos;
  for (int i = 0; i < (int)sd.faces.size(); ++i) facepos[sd.faces[i]] = i;

  auto to_sal = [&](int gobj_id) {
    auto [F, cell] = g.G.objects[gobj_id];
    const TorusFace &tf = g.fc.faces[F];
    std::vector<int> pos;
    for (size_t i = 0, j = 0; j < tori.size(); ++i) {
      assert(i < tf.loc.size());
      if (tf.loc[i] == tori[j]) {
        pos.push_back((int)i);
        ++j;
      }
    }
    const SalvettiCell &cl = tf.sal.cells[cell];
    SignVec fsv, csv;
    for (int p : pos) {
      fsv.push_back(tf.local.faces[cl.face].sign[p]);
      csv.push_back(tf.local.faces[cl.chamber].sign[p]);
    }
    int f = sd.fp.find(fsv), c = sd.fp.find(csv);
    assert(f >= 0 && c >= 0);
    int out = sd.sp.find(f, c);
    assert(out >= 0);
    return out;
  };

  int nobj = sc.sub.cat.nobj;
  sd.theta_sal.obj.resize(nobj);
  sd.theta_face.obj.resize(nobj);
  for (int o = 0; o < nobj; ++o) {
    sd.theta_sal.obj[o] = to_sal(sc.sub.objs[o]);
    sd.theta_face.obj[o] = facepos.at(g.G.objects[sc.sub.objs[o]].first);
  }
  sd.theta_sal.mor.resize((int)sc.sub.mors.size());
  sd.theta_face.mor.resize((int)sc.sub.mors.size());
  for (int m = 0; m < (int)sc.sub.mors.size(); ++m) {
    const GrothMor &gm = g.G.gmor[sc.sub.mors[m]];
    int x = to_sal(gm.src), y = to_sal(gm.dst);
    sd.theta_sal.mor[m] = x == y ? -1 : sd.salmor.at({x, y});
    sd.theta_face.mor[m] = gm.fm < 0 ? -1 : sd.fmorpos.at(gm.fm);
  }
  validate_functor(sc.sub.cat, sd.salcat, sd.theta_sal);
  validate_functor(sc.sub.cat, sd.facecat.cat, sd.theta_face);
  return sd;
}

// coefficients of a class of S_{Z,F0} in the Kuenneth product basis
struct KuennethBasis {
  std::vector<std::tuple<int, int, int>> label;  // (sal degree, sal idx, face idx)
  RatMat P;                                      // columns: product class coords
};

KuennethBasis kuenneth_basis(Generators &g, SplitData &sd, int Z, int F0, int m) {
  SubComplex &sc = g.sub(Z, F0);
  KuennethBasis kb;
  std::vector<RatVec> cols;
  for (int qa = 0; qa <= m; ++qa) {
    int ba = sd.Nsal.homology(qa).betti;
    int bb = qa <= m ? sd.Nface.homology(m - qa).betti : 0;
    for (int a = 0; a < ba; ++a) {
      QCochain pa = pull_qcochain(sd.theta_sal, sc.N, sd.Nsal,
                                  to_q(sd.Nsal.homology(qa).cocycle_reps[a]));
      for (int b = 0; b < bb; ++b) {
        QCochain pb = pull_qcochain(sd.theta_face, sc.N, sd.Nface,
                                    to_q(sd.Nface.homology(m - qa).cocycle_reps[b]));
        cols.push_back(qclass_coords(sc.N, cupq(sc.N, pa, pb), m));
        kb.label.push_back({qa, a, b});
      }
    }
  }
  int dim = sc.N.homology(m).betti;
  assert((int)cols.size() == dim);  // Kuenneth: the products form a basis
  kb.P = RatMat(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) kb.P.at(i, j) = cols[j][i];
  assert(rank_rat(kb.P) == dim);
  return kb;
}

}  // namespace

Report verify_brieskorn(Generators &g, int B, int q) {
  Report rep;
  rep.title = "restriction coherence through rank-" + std::to_string(q) + " layers";
  int nl = (int)g.lp.layers.size();
  std::vector<int> f0(nl, -1);
  bool applies = true;
  for (int L = 0; L < nl; ++L) {
    f0[L] = flat_face_of(g.fp0, B, hull_hyperplanes(g.fp0.arr, g.lp.layers[L]));
    if (f0[L] < 0) {
      rep.note("chamber not adjacent to " + g.lp.layers[L].name);
      applies = false;
    }
  }
  if (!applies) {
    rep.applicable = false;
    return rep;
  }

  std::map<int, SplitData> split;
  auto get_split = [&](int Z) -> SplitData & {
    auto it = split.find(Z);
    if (it == split.end()) it = split.emplace(Z, make_split(g, Z, f0[Z])).first;
    return it->second;
  };

  for (int L = 0; L < nl; ++L) {
    if (g.lp.layers[L].rank <= q) continue;
    std::vector<int> primes;
    for (int Lp = 0; Lp < nl; ++Lp)
      if (g.lp.layers[Lp].rank == q && g.lp.leq(Lp, L)) primes.push_back(Lp);
    SplitData &sL = get_split(L);

    // j functors S(A[L']) -> S(A[L]) with chamber fill from the face of B on L'
    std::map<int, Functor> jfun;
    std::map<int, Functor> incfun;  // face category of L into that of L'
    int dimq = sL.Nsal.homology(q).betti;
    int rows = 0;
    for (int Lp : primes) {
      SplitData &sP = get_split(Lp);
      rows += sP.Nsal.homology(q).betti;
      const auto &tL = g.lp.layers[L].tori;
      const auto &tP = g.lp.layers[Lp].tori;
      std::vector<int> pos;  // positions of A_{L'} inside A_L
      for (size_t i = 0, j = 0; j < tP.size(); ++i) {
        assert(i < tL.size());
        if (tL[i] == tP[j]) {
          pos.push_back((int)i);
          ++j;
        }
      }
      SignVec fill;  // localization at A_L of the face of B on X_{L'}
      for (int h : tL) fill.push_back(g.fp0.faces[f0[Lp]].sign[g.fc.a0.cls[h]]);
      auto imap = [&](int face) {
        SignVec sv = fill;
        for (size_t i = 0; i < pos.size(); ++i) sv[pos[i]] = sP.fp.faces[face].sign[i];
        int out = sL.fp.find(sv);
        assert(out >= 0);
        return out;
      };
      Functor jf;
      jf.obj.resize(sP.sp.cells.size());
      for (int c = 0; c < (int)sP.sp.cells.size(); ++c) {
        int f = imap(sP.sp.cells[c].face), ch = imap(sP.sp.cells[c].chamber);
        int out = sL.sp.find(f, ch);
        assert(out >= 0);
        jf.obj[c] = out;
      }
      jf.mor.resize(sP.salcat.mor.size());
      for (int m = 0; m < (int)sP.salcat.mor.size(); ++m) {
        int x = jf.obj[sP.salcat.src(m)], y = jf.obj[sP.salcat.dst(m)];
        jf.mor[m] = x == y ? -1 : sL.salmor.at({x, y});
      }
      validate_functor(sP.salcat, sL.salcat, jf);
      jfun.emplace(Lp, std::move(jf));

      std::map<int, int> fpos;
      for (int i = 0; i < (int)sP.faces.size(); ++i) fpos[sP.faces[i]] = i;
      Functor inc;
      inc.obj.resize(sL.faces.size());
      for (int i = 0; i < (int)sL.faces.size(); ++i) inc.obj[i] = fpos.at(sL.faces[i]);
      inc.mor.resize(sL.facecat.mors.size());
      for (int m = 0; m < (int)sL.facecat.mors.size(); ++m)
        inc.mor[m] = sP.fmorpos.at(sL.facecat.mors[m]);
      validate_functor(sL.facecat.cat, sP.facecat.cat, inc);
      incfun.emplace(Lp, std::move(inc));
    }
    rep.check(rows == dimq, "local Brieskorn dimensions match at " + g.lp.layers[L].name);

    // stacked pullback along the j functors must be invertible
    RatMat J(rows, dimq);
    {
      int r0 = 0;
      for (int Lp : primes) {
        SplitData &sP = get_split(Lp);
        for (int a = 0; a < dimq; ++a) {
          QCochain pa = pull_qcochain(jfun[Lp], sP.Nsal, sL.Nsal,
                                      to_q(sL.Nsal.homology(q).cocycle_reps[a]));
          RatVec c = qclass_coords(sP.Nsal, pa, q);
          for (int i = 0; i < (int)c.size(); ++i) J.at(r0 + i, a) = c[i];
        }
        r0 += sP.Nsal.homology(q).betti;
      }
    }
    rep.check(rank_rat(J) == dimq, "stacked local restriction invertible at " +
                                       g.lp.layers[L].name);

    for (int m = q; m <= std::min(g.A.d, q + g.A.d - g.lp.layers[L].rank); ++m) {
      int mb = g.N.homology(m).betti;
      if (mb == 0) continue;
      KuennethBasis kL = kuenneth_basis(g, sL, L, f0[L], m);
      int bfL = sL.Nface.homology(m - q).betti;
      const RatMat &rhoL = g.restriction(L, f0[L], m);
      std::map<int, KuennethBasis> kP;
      for (int Lp : primes) kP.emplace(Lp, kuenneth_basis(g, get_split(Lp), Lp, f0[Lp], m));

      for (int x = 0; x < mb; ++x) {
        // q-part of the restriction to L, in the product basis
        RatVec cl(rhoL.nr);
        for (int i = 0; i < rhoL.nr; ++i) cl[i] = rhoL.at(i, x);
        auto cco = solve_rat(kL.P, cl);
        assert(cco.has_value());
        RatMat want(dimq, bfL);
        for (int j = 0; j < (int)kL.label.size(); ++j) {
          auto [qa, a, b] = kL.label[j];
          if (qa == q) want.at(a, b) = (*cco)[j];
        }
        // assemble the target through the layers above
        RatMat Tm(rows, bfL);
        int r0 = 0;
        for (int Lp : primes) {
          SplitData &sP = get_split(Lp);
          const RatMat &rhoP = g.restriction(Lp, f0[Lp], m);
          RatVec cp(rhoP.nr);
          for (int i = 0; i < rhoP.nr; ++i) cp[i] = rhoP.at(i, x);
          auto cc = solve_rat(kP.at(Lp).P, cp);
          assert(cc.has_value());
          for (int j = 0; j < (int)kP.at(Lp).label.size(); ++j) {
            auto [qa, a, b] = kP.at(Lp).label[j];
            if (qa != q || (*cc)[j] == 0) continue;
            QCochain ib = pull_qcochain(incfun[Lp], sL.Nface, sP.Nface,
                                        to_q(sP.Nface.homology(m - q).cocycle_reps[b]));
            RatVec u = qclass_coords(sL.Nface, ib, m - q);
            for (int t = 0; t < bfL; ++t) Tm.at(r0 + a, t) += (*cc)[j] * u[t];
          }
          r0 += sP.Nsal.homology(q).betti;
        }
        // solve (stacked j pullback) * V = Tm and compare with the q-part
        bool same = true;
        for (int t = 0; t < bfL && same; ++t) {
          RatVec col(rows);
          for (int i = 0; i < rows; ++i) col[i] = Tm.at(i, t);
          auto v = solve_rat(J, col);
          assert(v.has_value());
          for (int a = 0; a < dimq; ++a) same = same && (*v)[a] == want.at(a, t);
        }
        rep.check(same, "coherence at " + g.lp.layers[L].name + ", degree " +
                            std::to_string(m) + ", basis class " + std::to_string(x));
      }
    }
  }
  return rep;
}

// ------------------------------------------------------ stabilizer averaging ----

Report verify_stabilizer_averaging(Generators &g, int L, const std::vector<int> &S,
                                   int Y) {
  Report rep;
  rep.title = "stabilizer averaging at " + g.lp.layers[Y].name;
  int r = (int)S.size();
  RatVec wsl = omega_SL(g, L, S, &rep);
  QCochain wc = class_rep(g.N, wsl, r);

  FiniteAbelianGroup GS = stabilizer(g.A, S);
  std::vector<int> stab = stab_layer(g.lp, GS, Y);
  QCochain lhs;
  lhs.degree = r;
  for (int e : stab) {
    Functor tr = translation_functor(g.G, GS.elements[e]);
    QCochain p = pull_qcochain(tr, g.N, g.N, wc);
    for (const auto &[i, v] : p.c) qc_add(lhs, i, v);
  }
  RatVec lcoords = qclass_coords(g.N, lhs, r);

  std::vector<int> S1, S2;
  for (int h : S)
    if (std::binary_search(g.lp.layers[Y].tori.begin(), g.lp.layers[Y].tori.end(), h))
      S1.push_back(h);
    else
      S2.push_back(h);
  std::vector<int> pos(g.A.n());
  for (int i = 0; i < g.A.n(); ++i) pos[g.ch.order[i]] = i;
  int inv = 0;
  for (int a : S1)
    for (int b : S2)
      if (pos[b] < pos[a]) ++inv;
  int sign = inv % 2 ? -1 : 1;

  QuotientSetup Q = quotient_setup(g.fc, g.lp, Y);
  ChoiceOverrides ovq;
  SignVec pi0 = Q.pi_face0(g.fc.a0, g.fp0.faces[g.ch.B_L[0]].sign);
  std::vector<int> bt(Q.Abar.n());
  for (int i = 0; i < Q.Abar.n(); ++i)
    bt[i] = Q.fcbar.a0.sgn[i] * pi0[Q.fcbar.a0.cls[i]];
  ovq.B["T"] = bt;
  Generators gq = build_generators(Q.Abar, ovq);
  std::vector<int> S1bar;
  for (int i = 0; i < (int)Q.sub.size(); ++i)
    if (std::binary_search(S1.begin(), S1.end(), Q.sub[i])) S1bar.push_back(i);
  int Lbar = Q.pi_layer(g.lp, Y);
  RatVec wbar = omega_SL(gq, Lbar, S1bar, &rep);
  QCochain wbarc = class_rep(gq.N, wbar, (int)S1bar.size());
  Functor Phi = quotient_functor(g.G, Q, gq.G);
  QCochain rhs = pull_qcochain(Phi, g.N, gq.N, wbarc);
  for (int h : S2) rhs = cupq(g.N, rhs, g.dual[g.A.d + h]);
  RatVec rcoords = qclass_coords(g.N, rhs, r);
  for (auto &v : rcoords) v *= sign;
  rep.check(lcoords == rcoords, "average equals quotient pullback times residual product");
  return rep;
}

}  // namespace torsal
