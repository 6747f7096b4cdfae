#pragma once
// Exact sign-vector calculus for finite real hyperplane arrangements:
// face enumeration, composition, galleries, the Salvetti poset, nbc sets.

#include <optional>
#include <map>
#include <utility>

#include "torsal/exact.hpp"

namespace torsal {

using Sign = int;  // -1, 0, +1
using SignVec = std::vector<Sign>;

struct Hyperplane {
  RatVec normal;  // nonzero
  Rat offset;     // the hyperplane is <normal, x> = offset; positive side is ">"
};

struct HyperplaneArrangement {
  int d = 0;
  std::vector<Hyperplane> hp;

  int n() const { return (int)hp.size(); }
  Sign eval(int h, const RatVec &x) const;
  SignVec signs(const RatVec &x) const;
};

// One linear constraint a.s + b (>|>=) 0 in k variables.
struct LinCon {
  RatVec a;
  Rat b;
  bool strict = true;
};

// Exact Fourier-Motzkin feasibility with witness extraction.
std::optional<RatVec> fm_feasible(int k, std::vector<LinCon> cons);

// Range of coordinate `var` over the solution set (empty optional = unbounded
// on that side). Precondition: the system is feasible.
std::pair<std::optional<Rat>, std::optional<Rat>> fm_bounds(int k, std::vector<LinCon> cons,
                                                            int var);

// Affine subspace given parametrically as p0 + V s.
struct AffineSubspace {
  RatVec p0;
  RatMat V;  // d x k, columns are a basis of the direction space
  int dim() const { return V.nc; }
};

// Solve the system {<n_h, x> = c_h : h in zeros}; nullopt if inconsistent.
std::optional<AffineSubspace> solve_equations(const HyperplaneArrangement &arr,
                                              const std::vector<int> &zeros);

// Interior witness of the face with the given sign vector, if the face is
// nonempty.
std::optional<RatVec> realize_sign_vector(const HyperplaneArrangement &arr,
                                          const SignVec &sv);

struct AffFace {
  SignVec sign;
  int dim = 0;
  RatVec witness;
};

struct FacePoset {
  HyperplaneArrangement arr;
  std::vector<AffFace> faces;      // sorted by (dim, sign vector)
  std::vector<int> chambers;       // indices of the top-dimensional faces
  std::map<SignVec, int> index;

  int find(const SignVec &sv) const;
  // closure order: f <= g iff sign_f(h) is 0 or sign_g(h) for every h
  bool leq(int f, int g) const;
  bool is_chamber(int f) const { return faces[f].dim == arr.d; }
};

// Flat-by-flat enumeration (intersect subsets of hyperplanes, then enumerate
// chambers of the induced arrangement within each flat by incremental
// insertion with exact feasibility tests).
FacePoset face_poset(const HyperplaneArrangement &arr);

// Oracle: test all 3^n sign vectors. For small n only.
FacePoset face_poset_bruteforce(const HyperplaneArrangement &arr);

// Per-coordinate bounds of the closure of a face (nullopt = unbounded).
std::vector<std::pair<std::optional<Rat>, std::optional<Rat>>> face_closure_bounds(
    const HyperplaneArrangement &arr, const SignVec &sv);

// Does the closure of the face meet the box [lo,hi]^d?
bool face_closure_meets_box(const HyperplaneArrangement &arr, const SignVec &sv,
                            const Rat &lo, const Rat &hi);

// F_G: sign of G where nonzero, else sign of F.
SignVec compose_faces(const SignVec &F, const SignVec &G);

// Restriction of a sign vector to the hyperplanes listed in `subset`.
SignVec restrict_signs(const SignVec &F, const std::vector<int> &subset);

std::vector<int> separators(const SignVec &C1, const SignVec &C2);

// Chamber opposite to C with respect to the flat cut out by `flat_hps`
// (indices of the hyperplanes containing the flat). Requires adjacency:
// the face of C lying on the flat must have the flat as affine hull.
std::optional<int> opposite_chamber(const FacePoset &fp, int chamber,
                                    const std::vector<int> &flat_hps);

// Minimal gallery from c1 to c2 (chamber indices); crosses each separating
// hyperplane exactly once; deterministic lexicographic tie-break.
std::vector<int> minimal_gallery(const FacePoset &fp, int c1, int c2);

struct SalvettiCell {
  int face = 0, chamber = 0;  // face <= chamber in the face poset
};

struct SalvettiPoset {
  const FacePoset *fp = nullptr;
  std::vector<SalvettiCell> cells;  // ordered by (face, chamber)
  std::map<std::pair<int, int>, int> index;

  int find(int face, int chamber) const;
  int dim(int cell) const;  // codim of the face
  // cell order: x <= y iff y's face is a subface of x's face and y's chamber
  // composes onto x's chamber at x's face; vertices [C,C] are minimal.
  bool leq(int x, int y) const;
};

SalvettiPoset salvetti_poset(const FacePoset &fp);

// S_C: cells [G,K] with K = C_G.
std::vector<int> subposet_S_C(const SalvettiPoset &sp, int chamber);
// S^G: union of S_C over chambers C >= G.
std::vector<int> subposet_S_upper(const SalvettiPoset &sp, int face);

// i_m fill-in: extends a sign vector over the sub-arrangement `target_pos`
// (positions within the bigger arrangement) to the bigger arrangement using
// the signs of F_m outside the sub-arrangement. F_m's zero set must be
// exactly target_pos.
SignVec i_m_fill(const SignVec &Fm, const std::vector<int> &target_pos,
                 const SignVec &target_face);

// All no-broken-circuit subsets of a central arrangement, grouped by
// cardinality, under the total order order[0] < order[1] < ...
std::vector<std::vector<std::vector<int>>> nbc_sets(const HyperplaneArrangement &arr,
                                                    const std::vector<int> &order);

int arrangement_rank(const HyperplaneArrangement &arr);

}  // namespace torsal
