#include "torsal/nerve.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace torsal {

// ---------------------------------------------------------------- categories

void AcyclicCategory::validate(bool check_assoc) const {
  // no object cycles (Kahn toposort)
  std::vector<int> indeg(nobj, 0);
  for (const auto &[s, d] : mor) {
    if (s < 0 || s >= nobj || d < 0 || d >= nobj || s == d)
      throw std::runtime_error("bad morphism endpoints");
    ++indeg[d];
  }
  std::vector<int> queue;
  for (int i = 0; i < nobj; ++i)
    if (indeg[i] == 0) queue.push_back(i);
  int seen = 0;
  std::vector<std::vector<int>> out(nobj);
  for (int m = 0; m < (int)mor.size(); ++m) out[mor[m].first].push_back(m);
  while (!queue.empty()) {
    int x = queue.back();
    queue.pop_back();
    ++seen;
    for (int m : out[x])
      if (--indeg[mor[m].second] == 0) queue.push_back(mor[m].second);
  }
  if (seen != nobj) throw std::runtime_error("category has a cycle");
  // composition closure and typing
  for (int f = 0; f < (int)mor.size(); ++f)
    for (int g : out[mor[f].second]) {
      auto it = comp.find({f, g});
      if (it == comp.end()) throw std::runtime_error("missing composite");
      int h = it->second;
      if (mor[h].first != mor[f].first || mor[h].second != mor[g].second)
        throw std::runtime_error("ill-typed composite");
    }
  for (const auto &[key, h] : comp) {
    (void)h;
    if (mor[key.first].second != mor[key.second].first)
      throw std::runtime_error("composite of non-composable pair");
  }
  if (check_assoc) {
    for (int f = 0; f < (int)mor.size(); ++f)
      for (int g : out[mor[f].second])
        for (int h : out[mor[g].second]) {
          int gf = comp.at({f, g});
          int hg = comp.at({g, h});
          if (comp.at({gf, h}) != comp.at({f, hg}))
            throw std::runtime_error("composition not associative");
        }
  }
}

AcyclicCategory category_from_poset(int n, const std::function<bool(int, int)> &leq) {
  AcyclicCategory cat;
  cat.nobj = n;
  std::map<std::pair<int, int>, int> id;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && leq(x, y)) {
        id[{x, y}] = (int)cat.mor.size();
        cat.mor.push_back({x, y});
      }
  for (const auto &[xy, f] : id)
    for (const auto &[yz, g] : id)
      if (xy.second == yz.first) cat.comp[{f, g}] = id.at({xy.first, yz.second});
  return cat;
}

// ---------------------------------------------------------------- nerve build

NerveComplex nerve_complex(const AcyclicCategory &cat, int top) {
  // cheap acyclicity guard (full validation is the caller's choice)
  {
    std::vector<int> indeg(cat.nobj, 0);
    for (const auto &[s, d] : cat.mor) {
      (void)s;
      ++indeg[d];
    }
    std::vector<std::vector<int>> out(cat.nobj);
    for (int m = 0; m < (int)cat.mor.size(); ++m) out[cat.mor[m].first].push_back(m);
    std::vector<int> queue;
    for (int i = 0; i < cat.nobj; ++i)
      if (indeg[i] == 0) queue.push_back(i);
    int seen = 0;
    while (!queue.empty()) {
      int x = queue.back();
      queue.pop_back();
      ++seen;
      for (int m : out[x])
        if (--indeg[cat.mor[m].second] == 0) queue.push_back(cat.mor[m].second);
    }
    if (seen != cat.nobj) throw std::runtime_error("category has a cycle");
  }

  NerveComplex N;
  N.cat = cat;
  N.top = top;
  N.simplices.resize(top + 1);
  N.simplex_index.resize(top + 1);
  N.bnd.resize(top + 1);

  std::vector<std::vector<int>> out(cat.nobj);
  for (int m = 0; m < (int)cat.mor.size(); ++m) out[cat.mor[m].first].push_back(m);

  for (int i = 0; i < cat.nobj; ++i) N.simplices[0].push_back({});
  for (int k = 1; k <= top; ++k) {
    if (k == 1) {
      for (int m = 0; m < (int)cat.mor.size(); ++m) {
        N.simplex_index[1][{m}] = (int)N.simplices[1].size();
        N.simplices[1].push_back({m});
      }
    } else {
      for (const auto &s : N.simplices[k - 1])
        for (int m : out[cat.mor[s.back()].second]) {
          auto ext = s;
          ext.push_back(m);
          N.simplex_index[k][ext] = (int)N.simplices[k].size();
          N.simplices[k].push_back(std::move(ext));
        }
    }
    // boundaries
    N.bnd[k].resize(N.simplices[k].size());
    for (int idx = 0; idx < (int)N.simplices[k].size(); ++idx) {
      const auto &s = N.simplices[k][idx];
      SparseVec &col = N.bnd[k][idx];
      auto add = [&](int row, int sign) {
        Int &v = col[row];
        v += sign;
        if (v == 0) col.erase(row);
      };
      if (k == 1) {
        add(cat.mor[s[0]].second, +1);  // d_0: drop the morphism, keep target
        add(cat.mor[s[0]].first, -1);   // d_1: keep source
      } else {
        int sign = 1;
        {  // d_0: drop the first morphism
          std::vector<int> f(s.begin() + 1, s.end());
          add(N.simplex_index[k - 1].at(f), sign);
        }
        for (int i = 1; i <= k - 1; ++i) {  // d_i: compose around vertex i
          sign = -sign;
          std::vector<int> f;
          f.reserve(k - 1);
          for (int j = 0; j < i - 1; ++j) f.push_back(s[j]);
          f.push_back(cat.comp.at({s[i - 1], s[i]}));
          for (int j = i + 1; j < k; ++j) f.push_back(s[j]);
          add(N.simplex_index[k - 1].at(f), sign);
        }
        sign = -sign;
        {  // d_k: drop the last morphism
          std::vector<int> f(s.begin(), s.end() - 1);
          add(N.simplex_index[k - 1].at(f), sign);
        }
      }
    }
  }
  return N;
}

Chain NerveComplex::boundary(const Chain &z) const {
  Chain out;
  out.degree = z.degree - 1;
  if (z.degree < 1 || z.degree > top) return out;
  for (const auto &[idx, coef] : z.c)
    for (const auto &[row, v] : bnd[z.degree][idx]) {
      Int &acc = out.c[row];
      acc += coef * v;
      if (acc == 0) out.c.erase(row);
    }
  return out;
}

Cochain NerveComplex::coboundary(const Cochain &c) const {
  Cochain out;
  out.degree = c.degree + 1;
  if (c.degree + 1 > top) return out;
  int k = c.degree + 1;
  for (int idx = 0; idx < (int)simplices[k].size(); ++idx) {
    Int acc = 0;
    for (const auto &[row, v] : bnd[k][idx]) {
      auto it = c.c.find(row);
      if (it != c.c.end()) acc += v * it->second;
    }
    if (acc != 0) out.c[idx] = acc;
  }
  return out;
}

bool NerveComplex::is_cycle(const Chain &z) const { return boundary(z).c.empty(); }
bool NerveComplex::is_cocycle(const Cochain &c) const {
  assert(c.degree < top);
  return coboundary(c).c.empty();
}

// ---------------------------------------------------------------- reduction

void NerveComplex::reduce() {
  if (reduced_) return;
  reduced_ = true;
  // working sparse matrices + row adjacency, all degrees at once
  std::vector<std::vector<SparseVec>> cols(top + 1);
  std::vector<std::vector<std::set<int>>> rowadj(top + 1);
  std::vector<std::vector<char>> af(top + 1);
  for (int k = 0; k <= top; ++k) af[k].assign(size(k), 1);
  for (int k = 1; k <= top; ++k) {
    cols[k] = bnd[k];
    rowadj[k].assign(size(k - 1), {});
    for (int j = 0; j < size(k); ++j)
      for (const auto &[r, v] : cols[k][j]) {
        (void)v;
        rowadj[k][r].insert(j);
      }
  }

  auto do_reduce = [&](int k, int a, int b) {
    Int eps = cols[k][b].at(a);
    RedStep st;
    st.k = k;
    st.a = a;
    st.b = b;
    st.eps = eps > 0 ? 1 : -1;
    for (const auto &[r, v] : cols[k][b])
      if (r != a) st.colr[r] = v;
    for (int y : rowadj[k][a])
      if (y != b) st.row[y] = cols[k][y].at(a);
    steps.push_back(st);
    // column updates: d(y) -= c_a(y) * eps * d(b)
    SparseVec pivcol = cols[k][b];
    for (const auto &[y, cc] : st.row) {
      Int f = -cc * st.eps;
      for (const auto &[r, v] : pivcol) {
        Int &e = cols[k][y][r];
        bool was_new = (e == 0);
        e += f * v;
        if (e == 0) {
          cols[k][y].erase(r);
          rowadj[k][r].erase(y);
        } else if (was_new) {
          rowadj[k][r].insert(y);
        }
      }
      assert(cols[k][y].find(a) == cols[k][y].end());
    }
    // kill column b and row a in degree k
    for (const auto &[r, v] : pivcol) {
      (void)v;
      rowadj[k][r].erase(b);
    }
    cols[k][b].clear();
    af[k][b] = 0;
    af[k - 1][a] = 0;
    rowadj[k][a].clear();
    // delete row b in degree k+1
    if (k + 1 <= top) {
      for (int y : rowadj[k + 1][b]) cols[k + 1][y].erase(b);
      rowadj[k + 1][b].clear();
    }
    // delete column a in degree k-1
    if (k - 1 >= 1) {
      for (const auto &[r, v] : cols[k - 1][a]) {
        (void)v;
        rowadj[k - 1][r].erase(a);
      }
      cols[k - 1][a].clear();
    }
  };

  for (int k = 1; k <= top; ++k) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int b = 0; b < size(k); ++b) {
        if (!af[k][b] || cols[k][b].empty()) continue;
        // unit pivot in this column with the sparsest row
        int besta = -1;
        size_t bestn = 0;
        for (const auto &[r, v] : cols[k][b])
          if (v == 1 || v == -1) {
            size_t nn = rowadj[k][r].size();
            if (besta < 0 || nn < bestn) {
              besta = r;
              bestn = nn;
            }
          }
        if (besta < 0) continue;
        do_reduce(k, besta, b);
        changed = true;
      }
    }
  }

  alive.assign(top + 1, {});
  alive_pos.assign(top + 1, {});
  for (int k = 0; k <= top; ++k)
    for (int i = 0; i < size(k); ++i)
      if (af[k][i]) {
        alive_pos[k][i] = (int)alive[k].size();
        alive[k].push_back(i);
      }
  rbnd.assign(top + 1, IntMat());
  for (int k = 1; k <= top; ++k) {
    IntMat M((int)alive[k - 1].size(), (int)alive[k].size());
    for (int j = 0; j < (int)alive[k].size(); ++j)
      for (const auto &[r, v] : cols[k][alive[k][j]]) M.at(alive_pos[k - 1].at(r), j) = v;
    rbnd[k] = std::move(M);
  }
}

Chain NerveComplex::apply_pi(Chain z) const {
  for (const auto &st : steps) {
    if (z.degree == st.k - 1) {
      auto it = z.c.find(st.a);
      if (it == z.c.end()) continue;
      Int va = it->second;
      z.c.erase(it);
      for (const auto &[x, r] : st.colr) {
        Int &e = z.c[x];
        e -= va * st.eps * r;
        if (e == 0) z.c.erase(x);
      }
    } else if (z.degree == st.k) {
      z.c.erase(st.b);
    }
  }
  return z;
}

Chain NerveComplex::apply_iota(Chain z) const {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const auto &st = *it;
    if (z.degree != st.k) continue;
    Int s = 0;
    for (const auto &[y, cc] : st.row) {
      auto zt = z.c.find(y);
      if (zt != z.c.end()) s += zt->second * cc;
    }
    if (s != 0) z.c[st.b] = -s * st.eps;
  }
  return z;
}

Cochain NerveComplex::pull_cochain(Cochain c) const {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const auto &st = *it;
    if (c.degree != st.k - 1) continue;
    Int s = 0;
    for (const auto &[x, r] : st.colr) {
      auto ct = c.c.find(x);
      if (ct != c.c.end()) s += ct->second * r;
    }
    if (s != 0) c.c[st.a] = -st.eps * s;
  }
  return c;
}

// ---------------------------------------------------------------- homology

namespace {

IntMat unimodular_inverse(const IntMat &U) {
  RatMat R = RatMat::from_int(U);
  IntMat inv(U.nr, U.nc);
  for (int j = 0; j < U.nc; ++j) {
    RatVec e(U.nr, Rat(0));
    e[j] = 1;
    auto x = solve_rat(R, e);
    assert(x.has_value());
    for (int i = 0; i < U.nr; ++i) {
      assert(is_integral((*x)[i]));
      inv.at(i, j) = (*x)[i].get_num();
    }
  }
  return inv;
}

// Z^n / column-lattice(B inside the column span of K): homology of
// ker-basis K against boundary columns Bcols (each expressed over rows of K's
// ambient). Returns betti, torsion and free generators in K-coordinates.
struct QuotInfo {
  int betti = 0;
  IntVec torsion;
  std::vector<IntVec> free_gens;  // in kernel coordinates
};

QuotInfo quotient_by_image(const IntMat &K, const IntMat &B) {
  int z = K.nc;
  IntMat Q(z, B.nc);
  for (int j = 0; j < B.nc; ++j) {
    IntVec col(B.nr);
    for (int i = 0; i < B.nr; ++i) col[i] = B.at(i, j);
    auto s = solve_linear_integer(K, col);
    assert(s.over_z);  // boundaries are cycles; K is saturated
    for (int i = 0; i < z; ++i) Q.at(i, j) = s.x[i];
  }
  auto S = smith_normal_form(Q, true, false, false);
  QuotInfo out;
  out.betti = z - S.rank;
  for (const auto &d : S.divisors)
    if (d > 1) out.torsion.push_back(d);
  if (out.betti > 0) {
    IntMat Uinv = unimodular_inverse(S.U);
    for (int i = S.rank; i < z; ++i) {
      IntVec g(z);
      for (int r = 0; r < z; ++r) g[r] = Uinv.at(r, i);
      out.free_gens.push_back(std::move(g));
    }
  }
  return out;
}

}  // namespace

const HomologySlice &NerveComplex::homology(int k) {
  auto it = cache_.find(k);
  if (it != cache_.end()) return it->second;
  assert(k >= 0 && k < top);
  reduce();
  int nk = (int)alive[k].size();

  IntMat Dk = k >= 1 ? rbnd[k] : IntMat(0, nk);
  const IntMat &Dk1 = rbnd[k + 1];

  // chain side
  IntMat K = k >= 1 ? integer_kernel(Dk) : IntMat::identity(nk);
  auto hinfo = quotient_by_image(K, Dk1);

  // cochain side: delta^k = Dk1^T, image of delta^{k-1} = Dk^T
  IntMat Kc = integer_kernel(Dk1.transpose());
  auto cinfo = quotient_by_image(Kc, Dk.transpose());
  assert(hinfo.betti == cinfo.betti);

  HomologySlice slice;
  slice.betti = hinfo.betti;
  slice.torsion = hinfo.torsion;
  for (const auto &g : hinfo.free_gens) {
    Chain z;
    z.degree = k;
    for (int r = 0; r < nk; ++r) {
      Int v = 0;
      for (int j = 0; j < K.nc; ++j) v += K.at(r, j) * g[j];
      if (v != 0) z.c[alive[k][r]] = v;
    }
    slice.cycle_reps.push_back(apply_iota(std::move(z)));
  }
  for (const auto &g : cinfo.free_gens) {
    Cochain c;
    c.degree = k;
    for (int r = 0; r < nk; ++r) {
      Int v = 0;
      for (int j = 0; j < Kc.nc; ++j) v += Kc.at(r, j) * g[j];
      if (v != 0) c.c[alive[k][r]] = v;
    }
    slice.cocycle_reps.push_back(pull_cochain(std::move(c)));
  }
  // pairing matrix between chosen (co)cycle bases
  RatMat P(slice.betti, slice.betti);
  for (int i = 0; i < slice.betti; ++i)
    for (int j = 0; j < slice.betti; ++j)
      P.at(i, j) = Rat(pair(slice.cocycle_reps[i], slice.cycle_reps[j]));
  pairing_[k] = std::move(P);
  auto res = cache_.emplace(k, std::move(slice));
  return res.first->second;
}

RatVec NerveComplex::cocycle_class_coords(const Cochain &c, int k) {
  const auto &slice = homology(k);
  assert(slice.torsion.empty());
  RatMat Pt(slice.betti, slice.betti);
  for (int i = 0; i < slice.betti; ++i)
    for (int j = 0; j < slice.betti; ++j) Pt.at(i, j) = pairing_[k].at(j, i);
  RatVec b(slice.betti);
  for (int j = 0; j < slice.betti; ++j) b[j] = Rat(pair(c, slice.cycle_reps[j]));
  auto x = solve_rat(Pt, b);
  assert(x.has_value());
  return *x;
}

RatVec NerveComplex::cycle_class_coords(const Chain &z, int k) {
  const auto &slice = homology(k);
  assert(slice.torsion.empty());
  RatVec b(slice.betti);
  for (int i = 0; i < slice.betti; ++i) b[i] = Rat(pair(slice.cocycle_reps[i], z));
  auto x = solve_rat(pairing_[k], b);
  assert(x.has_value());
  return *x;
}

// ---------------------------------------------------------------- products

Int pair(const Cochain &c, const Chain &z) {
  assert(c.degree == z.degree);
  Int s = 0;
  for (const auto &[idx, v] : c.c) {
    auto it = z.c.find(idx);
    if (it != z.c.end()) s += v * it->second;
  }
  return s;
}

Rat pairq(const QCochain &c, const Chain &z) {
  assert(c.degree == z.degree);
  Rat s = 0;
  for (const auto &[idx, v] : c.c) {
    auto it = z.c.find(idx);
    if (it != z.c.end()) s += v * Rat(it->second);
  }
  return s;
}

Cochain unit_cochain(const NerveComplex &N) {
  Cochain c;
  c.degree = 0;
  for (int i = 0; i < N.cat.nobj; ++i) c.c[i] = 1;
  return c;
}

namespace {

template <typename Coef, typename CO>
CO cup_impl(const NerveComplex &N, const CO &a, const CO &b) {
  CO out;
  int p = a.degree, q = b.degree;
  out.degree = p + q;
  if (p + q > N.top) return out;
  for (int idx = 0; idx < N.size(p + q); ++idx) {
    const auto &s = N.simplices[p + q][idx];
    // front p-face and back q-face
    Coef va, vb;
    {
      std::vector<int> front(s.begin(), s.begin() + p);
      int fi = p == 0 ? (p + q == 0 ? idx : N.cat.src(s[0]))
                      : N.simplex_index[p].at(front);
      auto it = a.c.find(fi);
      if (it == a.c.end()) continue;
      va = it->second;
    }
    {
      std::vector<int> back(s.begin() + p, s.end());
      int bi = q == 0 ? (p + q == 0 ? idx : N.cat.dst(s.back()))
                      : N.simplex_index[q].at(back);
      auto it = b.c.find(bi);
      if (it == b.c.end()) continue;
      vb = it->second;
    }
    Coef v = va * vb;
    if (v != 0) out.c[idx] = v;
  }
  return out;
}

}  // namespace

Cochain cup(const NerveComplex &N, const Cochain &a, const Cochain &b) {
  return cup_impl<Int, Cochain>(N, a, b);
}
QCochain cupq(const NerveComplex &N, const QCochain &a, const QCochain &b) {
  return cup_impl<Rat, QCochain>(N, a, b);
}

// ---------------------------------------------------------------- functors

void validate_functor(const AcyclicCategory &src, const AcyclicCategory &dst,
                      const Functor &F) {
  if ((int)F.obj.size() != src.nobj || F.mor.size() != src.mor.size())
    throw std::runtime_error("functor map sizes");
  for (int m = 0; m < (int)src.mor.size(); ++m) {
    int fm = F.mor[m];
    if (fm < 0) {
      if (F.obj[src.src(m)] != F.obj[src.dst(m)])
        throw std::runtime_error("identity image endpoints differ");
    } else {
      if (dst.src(fm) != F.obj[src.src(m)] || dst.dst(fm) != F.obj[src.dst(m)])
        throw std::runtime_error("functor not endpoint-compatible");
    }
  }
  for (const auto &[fg, h] : src.comp) {
    auto [f, g] = fg;
    int ff = F.mor[f], fg2 = F.mor[g], fh = F.mor[h];
    if (ff < 0 && fg2 < 0) {
      if (fh >= 0) throw std::runtime_error("functor breaks composition");
    } else if (ff < 0) {
      if (fh != fg2) throw std::runtime_error("functor breaks composition");
    } else if (fg2 < 0) {
      if (fh != ff) throw std::runtime_error("functor breaks composition");
    } else {
      if (fh != dst.comp.at({ff, fg2}))
        throw std::runtime_error("functor breaks composition");
    }
  }
}

Functor compose_functors(const Functor &f, const Functor &g) {
  Functor h;
  h.obj.resize(f.obj.size());
  for (size_t i = 0; i < f.obj.size(); ++i) h.obj[i] = g.obj[f.obj[i]];
  h.mor.resize(f.mor.size());
  for (size_t m = 0; m < f.mor.size(); ++m)
    h.mor[m] = f.mor[m] < 0 ? -1 : g.mor[f.mor[m]];
  return h;
}

namespace {

// image simplex id in dstN, or -1 if degenerate
int image_simplex(const Functor &F, const NerveComplex &srcN, const NerveComplex &dstN,
                  int k, int idx) {
  if (k == 0) return F.obj[idx];
  std::vector<int> img;
  img.reserve(k);
  for (int m : srcN.simplices[k][idx]) {
    if (F.mor[m] < 0) return -1;
    img.push_back(F.mor[m]);
  }
  return dstN.simplex_index[k].at(img);
}

}  // namespace

Chain push_chain(const Functor &F, const NerveComplex &srcN, const NerveComplex &dstN,
                 const Chain &z) {
  Chain out;
  out.degree = z.degree;
  for (const auto &[idx, v] : z.c) {
    int im = image_simplex(F, srcN, dstN, z.degree, idx);
    if (im < 0) continue;
    Int &e = out.c[im];
    e += v;
    if (e == 0) out.c.erase(im);
  }
  return out;
}

IntMat functor_matrix(const Functor &F, const NerveComplex &srcN,
                      const NerveComplex &dstN, int k) {
  IntMat M(dstN.size(k), srcN.size(k));
  for (int j = 0; j < srcN.size(k); ++j) {
    int im = image_simplex(F, srcN, dstN, k, j);
    if (im >= 0) M.at(im, j) += 1;
  }
  return M;
}

// ---------------------------------------------------------------- dual bases

std::vector<QCochain> dual_cocycles(NerveComplex &N, int k,
                                    const std::vector<Chain> &cycles) {
  const auto &slice = N.homology(k);
  int n = (int)cycles.size();
  assert(n == slice.betti);
  RatMat Pt(n, n);  // Pt[l][i] = pair(c_i, cycles[l])
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) Pt.at(l, i) = Rat(pair(slice.cocycle_reps[i], cycles[l]));
  std::vector<QCochain> out;
  for (int j = 0; j < n; ++j) {
    RatVec e(n, Rat(0));
    e[j] = 1;
    auto x = solve_rat(Pt, e);
    if (!x) throw std::runtime_error("cycles not independent in homology");
    QCochain d;
    d.degree = k;
    for (int i = 0; i < n; ++i) {
      if ((*x)[i] == 0) continue;
      for (const auto &[idx, v] : slice.cocycle_reps[i].c) {
        Rat &e2 = d.c[idx];
        e2 += (*x)[i] * Rat(v);
        if (e2 == 0) d.c.erase(idx);
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

SubCategory full_subcategory(const AcyclicCategory &C, const std::vector<int> &objs) {
  SubCategory S;
  S.objs = objs;
  std::sort(S.objs.begin(), S.objs.end());
  S.objs.erase(std::unique(S.objs.begin(), S.objs.end()), S.objs.end());
  std::vector<int> to_sub(C.nobj, -1);
  for (int i = 0; i < (int)S.objs.size(); ++i) to_sub[S.objs[i]] = i;
  S.cat.nobj = (int)S.objs.size();
  std::vector<int> msub(C.mor.size(), -1);
  for (int m = 0; m < (int)C.mor.size(); ++m) {
    auto [a, b] = C.mor[m];
    if (to_sub[a] < 0 || to_sub[b] < 0) continue;
    msub[m] = (int)S.cat.mor.size();
    S.cat.mor.push_back({to_sub[a], to_sub[b]});
    S.mors.push_back(m);
  }
  for (const auto &[fg, h] : C.comp) {
    auto [f, g] = fg;
    if (msub[f] < 0 || msub[g] < 0) continue;
    assert(msub[h] >= 0);  // composite stays between kept objects
    S.cat.comp[{msub[f], msub[g]}] = msub[h];
  }
  S.incl.obj = S.objs;
  S.incl.mor = S.mors;
  return S;
}

std::optional<SparseQVec> solve_coboundary(const NerveComplex &N, const Cochain &c) {
  int k = c.degree;
  assert(k >= 1);
  RatMat M(N.size(k), N.size(k - 1));
  for (int idx = 0; idx < N.size(k); ++idx)
    for (const auto &[row, v] : N.bnd[k][idx]) M.at(idx, row) = Rat(v);
  RatVec b(N.size(k), Rat(0));
  for (const auto &[idx, v] : c.c) b[idx] = Rat(v);
  auto x = solve_rat(M, b);
  if (!x) return std::nullopt;
  SparseQVec out;
  for (int i = 0; i < N.size(k - 1); ++i)
    if ((*x)[i] != 0) out[i] = (*x)[i];
  return out;
}

}  // namespace torsal
