#pragma once
// Integer (co)homology of nerves of finite acyclic categories.
// The nerve's boundary matrices are kept sparse; the complex is shrunk by
// unit-pivot reductions (with tracked projection/inclusion chain maps) before
// exact Smith-normal-form homology on the small remainder. Representatives
// and pairings are transported back to the full nerve.

#include <functional>
#include <map>
#include <optional>

#include "torsal/exact.hpp"

namespace torsal {

struct AcyclicCategory {
  int nobj = 0;
  std::vector<std::pair<int, int>> mor;    // non-identity morphisms (src, dst)
  std::map<std::pair<int, int>, int> comp; // comp[{f,g}] = g.f for f: x->y, g: y->z

  int src(int m) const { return mor[m].first; }
  int dst(int m) const { return mor[m].second; }
  // throws on cycles, missing/ill-typed composites, broken associativity
  void validate(bool check_assoc = true) const;
};

// objects 0..n-1, one morphism x -> y per strict relation x < y
AcyclicCategory category_from_poset(int n, const std::function<bool(int, int)> &leq);

using SparseVec = std::map<int, Int>;
using SparseQVec = std::map<int, Rat>;

struct Chain {
  int degree = 0;
  SparseVec c;
};
struct Cochain {
  int degree = 0;
  SparseVec c;
};
struct QCochain {
  int degree = 0;
  SparseQVec c;
};

struct HomologySlice {
  int betti = 0;
  IntVec torsion;                   // invariant factors > 1
  std::vector<Chain> cycle_reps;    // integral generators of the free part
  std::vector<Cochain> cocycle_reps;
};

struct NerveComplex {
  AcyclicCategory cat;
  int top = 0;
  // simplices[k][i] = chain of k composable morphism ids; degree 0 = objects
  std::vector<std::vector<std::vector<int>>> simplices;
  std::vector<std::map<std::vector<int>, int>> simplex_index;
  std::vector<std::vector<SparseVec>> bnd;  // bnd[k][col], k = 1..top

  int size(int k) const {
    return k < 0 || k > top ? 0 : (int)simplices[k].size();
  }
  Chain boundary(const Chain &z) const;
  Cochain coboundary(const Cochain &c) const;
  bool is_cycle(const Chain &z) const;
  bool is_cocycle(const Cochain &c) const;

  // homology/cohomology of degree k, valid for 0 <= k < top
  const HomologySlice &homology(int k);
  // class coordinates in the slice's chosen bases; requires torsion-free slice
  RatVec cocycle_class_coords(const Cochain &c, int k);
  RatVec cycle_class_coords(const Chain &z, int k);

  // --- reduction internals (exposed for the test suite) ---
  struct RedStep {
    int k = 0, a = 0, b = 0, eps = 1;
    SparseVec row;   // c_a(y) over surviving columns y at step time
    SparseVec colr;  // d(b) minus the pivot entry, at step time
  };
  std::vector<RedStep> steps;
  std::vector<std::vector<int>> alive;     // surviving simplex ids per degree
  std::vector<std::map<int, int>> alive_pos;
  std::vector<IntMat> rbnd;                // reduced dense boundaries, index 1..top

  void reduce();                   // idempotent
  Chain apply_pi(Chain z) const;   // project to the reduced subcomplex basis
  Chain apply_iota(Chain z) const; // include a reduced chain into the nerve
  // pull a cochain on the reduced complex back to the nerve (pi^*)
  Cochain pull_cochain(Cochain c) const;

 private:
  bool reduced_ = false;
  std::map<int, HomologySlice> cache_;
  std::map<int, RatMat> pairing_;  // cocycle_reps x cycle_reps per degree
};

NerveComplex nerve_complex(const AcyclicCategory &cat, int top);

Int pair(const Cochain &c, const Chain &z);
Rat pairq(const QCochain &c, const Chain &z);

Cochain unit_cochain(const NerveComplex &N);
// Alexander-Whitney front-face/back-face product
Cochain cup(const NerveComplex &N, const Cochain &a, const Cochain &b);
QCochain cupq(const NerveComplex &N, const QCochain &a, const QCochain &b);

struct Functor {
  std::vector<int> obj;  // object map
  std::vector<int> mor;  // morphism map; -1 means "maps to an identity"
};
void validate_functor(const AcyclicCategory &src, const AcyclicCategory &dst,
                      const Functor &F);
Functor compose_functors(const Functor &f, const Functor &g);  // g after f
// nerve chain map (degenerate images -> 0)
Chain push_chain(const Functor &F, const NerveComplex &srcN, const NerveComplex &dstN,
                 const Chain &z);
IntMat functor_matrix(const Functor &F, const NerveComplex &srcN,
                      const NerveComplex &dstN, int k);

struct SubCategory {
  AcyclicCategory cat;
  std::vector<int> objs;  // original object ids
  std::vector<int> mors;  // original morphism ids
  Functor incl;           // inclusion into the original category
};
// full subcategory on the given objects (sorted, deduplicated internally)
SubCategory full_subcategory(const AcyclicCategory &C, const std::vector<int> &objs);

// cocycles pairing to the identity matrix against the given independent cycles
std::vector<QCochain> dual_cocycles(NerveComplex &N, int k,
                                    const std::vector<Chain> &cycles);
// x with delta x = c over Q, if c is a coboundary (dense solve; small nerves)
std::optional<SparseQVec> solve_coboundary(const NerveComplex &N, const Cochain &c);

}  // namespace torsal
