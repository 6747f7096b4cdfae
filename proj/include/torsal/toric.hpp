#pragma once
// Toric arrangements in the compact torus (angle coordinates): layer poset,
// face category via a windowed periodic lift, local arrangements, the
// Grothendieck construction over the Salvetti diagram, its distinguished
// subcategories, quotient / subarrangement / translation functors, and
// stabilizer groups.

#include <string>
#include <tuple>

#include "torsal/arrangement.hpp"
#include "torsal/nerve.hpp"

namespace torsal {

struct Hypertorus {
  std::string name;  // may be empty; defaults to "H<i>"
  IntVec chi;        // primitive character
  Rat offset;        // angle in [0,1); the hypertorus is <chi, t> = offset (mod 1)
};

struct ToricArrangement {
  int d = 0;
  std::vector<Hypertorus> tori;

  int n() const { return (int)tori.size(); }
  IntMat char_matrix() const;  // n x d, rows are the characters
  Rat pairing(int h, const RatVec &x) const;
  std::string name(int h) const;
  // throws std::runtime_error on: non-primitive character, offset outside
  // [0,1), coinciding hypertori, character rank < d (non-essential)
  void validate() const;
};

// ---------------------------------------------------------------- layers ----

struct Layer {
  std::vector<int> tori;  // sorted: all hypertori containing the layer
  RatVec base;            // a point of the layer, in [0,1)^d
  IntMat dir;             // saturated direction lattice, columns, d x (d - rank)
  int rank = 0;
  std::string name;
};

struct LayerPoset {
  ToricArrangement A;
  std::vector<Layer> layers;  // sorted by (rank, tori, base)

  // reverse inclusion: i <= j iff the layer i contains the layer j
  bool leq(int i, int j) const;
  // is the point on the layer (right hypertori and right connected component)?
  bool on_layer(const Layer &L, const RatVec &point) const;
  // layer with exactly this hypertorus set containing the point; -1 if none
  int find(const std::vector<int> &tori, const RatVec &point) const;
};

LayerPoset layer_poset(const ToricArrangement &A);

// Connected components of the intersection of the hypertori in S: one base
// point per component plus the common direction lattice. nullopt if empty.
struct CosetComponents {
  std::vector<RatVec> bases;  // in [0,1)^d, sorted
  IntMat dir;                 // d x (d - rank), saturated
  int rank = 0;
};
std::optional<CosetComponents> solve_congruences(const ToricArrangement &A,
                                                 const std::vector<int> &S);

// ------------------------------------------------------- linearized A_0 ----

struct A0Data {
  HyperplaneArrangement A0;  // distinct linear hyperplanes through the origin
  std::vector<int> cls;      // hypertorus -> A0 hyperplane
  std::vector<int> sgn;      // hypertorus -> +-1; canonical normal = sgn * chi
};
A0Data build_A0(const ToricArrangement &A);

// ---------------------------------------------------------- face category ----

using FaceKey = std::pair<std::vector<int>, IntVec>;  // (on-pattern, k-values)

struct TorusFace {
  int rep = 0;               // representative face in the window poset
  int dim = 0;
  std::vector<int> loc;      // hypertori containing the face (sorted)
  std::vector<int> lift_idx; // window hyperplane of each loc entry at the rep
  IntVec kvec;               // raw key values of the representative
  std::vector<int> on;       // 0/1 per hypertorus (the key pattern)
  HyperplaneArrangement arr; // A[F]: central, canonically oriented, per loc
  FacePoset local;
  SalvettiPoset sal;
};

struct FaceCatMor {
  int src = 0, dst = 0;  // torus faces, dim(src) < dim(dst)
  int g = 0;             // the attached lift: a window coface of rep(src)
  SignVec Fm;            // induced face of A[src], canonically oriented
  IntVec t;              // key(g) = key(rep(dst)) + X t
};

struct TorusFaceCat {
  ToricArrangement A;
  A0Data a0;
  Rat lo, hi;                            // final window [lo,hi]^d
  HyperplaneArrangement W;               // the lifted hyperplanes
  std::vector<std::pair<int, Int>> lift; // W hyperplane -> (hypertorus, k)
  FacePoset WP;
  std::vector<TorusFace> faces;
  std::vector<FaceCatMor> mors;
  AcyclicCategory cat;  // same objects and morphisms, composition table

  // exact key of the periodic face whose interior contains x
  FaceKey point_key(const RatVec &x) const;
  FaceKey face_key(int wface) const;  // genuine window faces only
  // canonicalize: (face id, t) with key = key(rep) + X t; face -1 if unknown
  std::pair<int, IntVec> canonical(const FaceKey &key) const;
  // genuine window face with exactly this key; -1 if absent
  int window_face_by_key(const FaceKey &key) const;
  int locate_face(const RatVec &x) const;  // torus face whose interior has x

  // internal lookup state
  std::map<FaceKey, int> orbit_map;  // canonical key -> torus face
  std::map<FaceKey, int> wmap;       // raw key -> genuine window face
  IntMat X;                          // char matrix
  IntMat coset_basis;                // rows: basis of the column lattice of X
};

TorusFaceCat face_category(const ToricArrangement &A);

// hyperplane positions of A[F] lying on the flat X_L^F (smallest flat of A[F]
// containing X_L)
std::vector<int> flat_XLF(const TorusFaceCat &fc, const Layer &L, int F);

// ------------------------------------------------ Grothendieck category ----

struct GrothMor {
  int src = 0, dst = 0;  // object ids
  int fm = -1;           // face-category morphism; -1 = within one face
};

struct Groth {
  const TorusFaceCat *fc = nullptr;
  std::vector<std::pair<int, int>> objects;  // (torus face, Salvetti cell)
  std::map<std::pair<int, int>, int> obj_index;
  std::vector<GrothMor> gmor;
  std::map<std::tuple<int, int, int>, int> mor_index;  // (src,dst,fm) -> id
  AcyclicCategory cat;

  // D(m): cell of S(A[dst m]) -> cell of S(A[src m]) via i_m
  int D_cell(int m, int ycell) const;
};

Groth grothendieck(const TorusFaceCat &fc);

// Full subcategory on objects (F, x) with F in the face category of the
// arrangement induced on the layer Y and x in S^{F0}(A[F]). F0 is a face of
// A_0 (index into fp0 = face_poset(a0.A0)) whose linear hull must be X_Y.
SubCategory subcategory_S(const Groth &G, const LayerPoset &lp, int Y,
                          const FacePoset &fp0, int F0);

// ---------------------------------------------------------------- functors ----

struct QuotientSetup {
  int L = 0;              // the layer being quotiented by, upstairs
  ToricArrangement Abar;  // the quotient arrangement, dimension rank(L)
  std::vector<int> sub;   // quotient hypertorus i = upstairs hypertorus sub[i]
  RatMat proj;            // rank(L) x d angle-coordinate projection
  TorusFaceCat fcbar;
  LayerPoset lpbar;

  int pi_face(const TorusFaceCat &fc, int F) const;
  int pi_layer(const LayerPoset &lp, int Y) const;
  // image of a face of A_0 (sign vector over a0.A0) in the quotient's A_0
  SignVec pi_face0(const A0Data &a0, const SignVec &F0) const;
};

QuotientSetup quotient_setup(const TorusFaceCat &fc, const LayerPoset &lp, int L);

// Phi_L on the Grothendieck categories; Gbar must be grothendieck(Q.fcbar)
Functor quotient_functor(const Groth &G, const QuotientSetup &Q, const Groth &Gbar);

// Psi for the subarrangement on the hypertori `sub` (same rank; throws on rank
// drop); fcp/Gp must be built from the restricted arrangement
Functor subarrangement_map(const Groth &G, const std::vector<int> &sub,
                           const TorusFaceCat &fcp, const Groth &Gp);

// mu_g for a translation g with all <chi_h, g> integral (throws otherwise)
Functor translation_functor(const Groth &G, const RatVec &g);

// ------------------------------------------------------------- stabilizer ----

// torsion of Z^d / span{chi_i : i in S}, as translation elements of the torus
FiniteAbelianGroup stabilizer(const ToricArrangement &A, const std::vector<int> &S);
// indices into GS.elements of the elements fixing the layer Y
std::vector<int> stab_layer(const LayerPoset &lp, const FiniteAbelianGroup &GS, int Y);

}  // namespace torsal
