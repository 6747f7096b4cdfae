#pragma once
// Explicit generating (co)cycles on the toric Salvetti complex: lambda circle
// chains, xi and omega squares, the dual cohomology bases (global and per
// layer), restriction maps to the layer subcomplexes, the omega_{S,L} classes,
// and the verification suite for the structural identities (basis change,
// injectivity of the combined restriction, module generation, Brieskorn-style
// coherence, stabilizer averaging).

#include "torsal/toric.hpp"

namespace torsal {

// User-facing choice overrides; everything not given falls back to the
// deterministic lexicographic defaults. Chambers are given per hypertorus:
// signs[h] is the side of hypertorus h (w.r.t. its character chi_h).
struct ChoiceOverrides {
  std::optional<std::vector<std::string>> order;  // hypertorus names, total order
  std::map<std::string, std::vector<int>> B;      // layer name -> chamber signs
  std::map<std::string, std::vector<int>> R;      // hypertorus name -> chamber signs
  std::map<std::string, std::vector<int>> RM;     // 1-dim layer name -> chamber signs
  std::optional<std::vector<std::string>> base_layers;  // 1-dim layer names
};

// Fully resolved choices; chambers/faces are ids in fp0 = face_poset(a0.A0).
struct ChoiceSet {
  std::vector<int> order;                   // hypertorus priority order
  std::vector<int> B_L;                     // per layer: chamber B(L)
  std::vector<int> F_L;                     // per layer: face of A_0 under B(L) on X_L
  std::map<int, int> R_M;                   // 1-dim layer -> chamber adjacent to X_M
  std::map<int, std::vector<int>> gallery;  // 1-dim layer -> chambers C_0..C_k
  std::vector<int> R_H;                     // per hypertorus: chamber R_H
  std::vector<int> base_layers;             // layers M_1..M_d
  std::vector<std::vector<int>> N_L;        // per layer: dim(L) many 1-dim layers
};

struct Report {
  std::string title;
  bool ok = true;
  bool applicable = true;
  std::vector<std::string> lines;
  void note(const std::string &s) { lines.push_back(s); }
  void check(bool cond, const std::string &what);
  std::string str() const;
};

// One cached subcomplex S_{Y,F0} together with its nerve and reverse lookups.
struct SubComplex {
  int Y = 0, F0 = 0;
  SubCategory sub;
  NerveComplex N;
  std::map<int, int> objpos;  // Groth object id -> local object id
  std::map<int, int> morpos;  // Groth morphism id -> local morphism id
};

struct Generators {
  ToricArrangement A;
  TorusFaceCat fc;
  LayerPoset lp;
  FacePoset fp0;
  Groth G;
  NerveComplex N;
  ChoiceSet ch;

  std::vector<int> facelayer;  // torus face -> its support layer

  std::vector<QCochain> mu;  // integral H^1(T) coordinate classes, one per angle
  std::vector<Chain> hat;    // basis cycles: lambda(M_1..M_d) then omega(H_h)
  std::vector<QCochain> dual;  // the dual basis (lambda and omega classes)
  std::vector<std::string> hat_names;
  std::map<int, int> lam_sign;  // 1-dim layer -> orientation normalization

  struct LayerBasis {
    std::vector<Chain> hat;  // cycles in the nerve of S_{L,F(L)}
    std::vector<QCochain> dual;
    std::vector<std::string> names;  // lambda names first, then omega names
  };
  std::vector<LayerBasis> lbasis;  // per layer

  // G.fc points at our own face category; moves must re-point it
  Generators() = default;
  Generators(Generators &&o) noexcept { *this = std::move(o); }
  Generators &operator=(Generators &&o) noexcept;
  Generators(const Generators &) = delete;
  Generators &operator=(const Generators &) = delete;

  SubComplex &sub(int Y, int F0);  // cached S_{Y,F0}
  // class coords in H^k(S_{Y,F0}) of the restrictions of the H^k(Sal) basis
  const RatMat &restriction(int Y, int F0, int k);

  std::map<std::pair<int, int>, SubComplex> subcache;
  std::map<std::tuple<int, int, int>, RatMat> rmat_cache;
};

Generators build_generators(const ToricArrangement &A, const ChoiceOverrides &ov = {});

// ------------------------------------------------------------- raw chains ----

// Circle chain of the 1-dim layer M as seen from the chamber B; orientation is
// anchored on the gallery of M (B-independent), not normalized.
Chain lambda_chain(const Generators &g, int M, int B);
// Square supported at the wall of the gallery of M crossing hypertorus h,
// localized at the dim-0 torus face P, with edges on B's side / its opposite.
Chain xi_chain(const Generators &g, int M, int h, int B, int P);
// Square at the torus face F over the local codimension-one face K (local face
// id with a single zero); the vertex orientation comes from R_H of the
// hypertorus at that zero.
Chain omega_square(const Generators &g, int F, int K);
Chain omega_hat_chain(const Generators &g, int h);  // canonical representative
// +1 iff B lies on the same side of hypertorus h as R_H
int epsilon(const Generators &g, int h, int B);

// normalized lambda cycle (lex-positive image in H_1 of the compact torus)
Chain lambda_norm(Generators &g, int M, int B);

// image of a 1-cycle in H_1 of the compact torus, in angle coordinates
IntVec displacement(const Generators &g, const Chain &z);
// hypertori of loc(F) whose hypertorus separates the chambers B and B'
std::vector<int> separating_at(const Generators &g, int F, int B, int Bp);

// ------------------------------------------------- cochain plumbing ----------

// pullback of a cochain along a functor (degenerate images contribute zero)
QCochain pull_qcochain(const Functor &F, const NerveComplex &Nsrc,
                       const NerveComplex &Ndst, const QCochain &c);
QCochain to_q(const Cochain &c);
// restriction of a cochain on the full nerve to a cached subcomplex
QCochain restrict_qcochain(const SubComplex &sc, const NerveComplex &Nbig,
                           const QCochain &c);
// transport of a chain supported on the subcomplex into its nerve
Chain chain_to_sub(const SubComplex &sc, const NerveComplex &Nbig, const Chain &z);
std::optional<Chain> try_chain_to_sub(const SubComplex &sc, const NerveComplex &Nbig,
                                      const Chain &z);
// class coordinates of a rational cocycle (clears denominators internally)
RatVec qclass_coords(NerveComplex &N, const QCochain &c, int k);
// iterated cup product, unit cochain for the empty list
QCochain cup_list(const NerveComplex &N, const std::vector<QCochain> &fs);

// --------------------------------------------------------------- classes ----

// no-broken-circuit subsets of the local arrangement of layer L of length
// rank(L), as ordered lists of hypertorus indices
std::vector<std::vector<int>> nbc_slots(const Generators &g, int L);
// class coordinates (integral basis of H^{rank L}(Sal)) of omega_{S,L}; the
// defining restriction conditions are solved over all admissible (Y, F0) and
// existence, uniqueness and integrality are recorded in the report
RatVec omega_SL(Generators &g, int L, const std::vector<int> &S, Report *rep = nullptr);

struct TableRow {
  std::string name;
  int degree = 0;
  RatVec coords;  // class coords in H^degree(Sal)
  std::vector<std::string> cells;  // one rendered entry per layer column
};
struct GeneratorTable {
  std::vector<std::string> columns;  // layer names, in layer-poset order
  std::vector<TableRow> rows;
};
GeneratorTable build_table(Generators &g);

// ---------------------------------------------------------- verification ----

// exact chain identity lambda_B - lambda_B' = sum of xi squares, plus the
// homology identity against the epsilon-weighted omega sum (explicit witness)
Report verify_basis_change(Generators &g, int M, int B, int Bp);
// restriction to S_{L,F(L)} of the dual basis against the closed formulas,
// plus vanishing of high-degree torus classes and ideal containment
Report verify_restriction(Generators &g, int L);
// pullback along the quotient functor of L maps the quotient omega classes to
// the upstairs omega classes of hypertori containing L
Report verify_quotient_omega(Generators &g, int L);
// combined restriction to all chosen layer subcomplexes is injective over Z
Report verify_injectivity(Generators &g);
// the omega_{S,L} generate cohomology as a module over the torus classes
Report verify_generation(Generators &g);
// local cohomology of S_{L,F(L)} is spanned by restricted omega products over
// the torus classes of L; omega squares survive locally
Report verify_module_structure(Generators &g, int L);
// omega squares die in the compact torus and after deleting their hypertorus
Report verify_omega_hat_claims(Generators &g);
// coherence of the chosen-chamber restrictions through rank-q layers, for a
// chamber B whose closure meets every layer in full dimension
Report verify_brieskorn(Generators &g, int B, int q);
// averaging omega_{S,L} over the stabilizer of the layer Y splits as a
// quotient pullback times the residual omega product (requires S = all of A)
Report verify_stabilizer_averaging(Generators &g, int L, const std::vector<int> &S,
                                   int Y);

}  // namespace torsal
