#pragma once
// Exact integer / rational linear algebra: Smith and Hermite normal forms,
// integer linear solving, kernels, finite abelian quotient groups.
// All arithmetic is arbitrary precision (GMP); no floating point anywhere.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace torsal {

using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

struct IntMat {
  int nr = 0, nc = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(int r, int c) : nr(r), nc(c), a((size_t)r * c) {}
  Int &at(int i, int j) { return a[(size_t)i * nc + j]; }
  const Int &at(int i, int j) const { return a[(size_t)i * nc + j]; }

  static IntMat identity(int n);
  IntMat transpose() const;
  bool operator==(const IntMat &o) const { return nr == o.nr && nc == o.nc && a == o.a; }
  IntVec mul(const IntVec &x) const;  // this * x
  IntMat mul(const IntMat &B) const;  // this * B
  bool is_zero() const;
  std::string str() const;
};

struct RatMat {
  int nr = 0, nc = 0;
  std::vector<Rat> a;

  RatMat() = default;
  RatMat(int r, int c) : nr(r), nc(c), a((size_t)r * c) {}
  Rat &at(int i, int j) { return a[(size_t)i * nc + j]; }
  const Rat &at(int i, int j) const { return a[(size_t)i * nc + j]; }
  RatVec mul(const RatVec &x) const;
  static RatMat from_int(const IntMat &m);
};

// In-place row reduction to reduced row echelon form; returns pivot columns.
// Deterministic: pivots chosen as the topmost nonzero entry in the leftmost
// unfinished column.
std::vector<int> rref(RatMat &m);

int rank_rat(RatMat m);

// Solve M x = b over Q. Returns one solution if consistent.
std::optional<RatVec> solve_rat(const RatMat &M, const RatVec &b);

// Basis of the rational null space of M (columns of the result).
RatMat nullspace_rat(const RatMat &M);

struct SmithDecomposition {
  IntMat U, D, V;      // U * M * V = D, when requested
  bool have_U = false, have_V = false;
  int rank = 0;
  IntVec divisors;     // the nonzero diagonal, divisibility chain
};

// Deterministic Smith normal form. Pivot rule: smallest absolute value
// among nonzero entries of the active submatrix, ties broken by row then
// column index. `parallel` switches the OpenMP elimination kernel; both
// paths produce bit-identical results.
SmithDecomposition smith_normal_form(const IntMat &M, bool want_U = true,
                                     bool want_V = true, bool parallel = true);

struct HermiteDecomposition {
  IntMat H, U;  // U * M = H, U unimodular, H in row Hermite form
};

HermiteDecomposition hermite_normal_form(const IntMat &M);

// Basis of the integer (right) kernel of M, as columns. The lattice spanned
// is saturated (equals the full integer kernel).
IntMat integer_kernel(const IntMat &M);

struct IntSolve {
  bool over_z = false;      // solvable over Z
  IntVec x;                 // a particular integer solution, if over_z
  IntMat kernel;            // integer kernel basis (columns)
  bool over_q = false;      // solvable over Q
  RatVec xq;                // a particular rational solution, if over_q
};

IntSolve solve_linear_integer(const IntMat &M, const IntVec &b);

struct FiniteAbelianGroup {
  IntVec invariants;                    // torsion coefficients > 1, divisibility order
  int free_rank = 0;
  std::vector<RatVec> generators;       // torsion generators as rational vectors mod Z^d
  std::vector<RatVec> elements;         // all torsion elements, deterministic order
  Int order = 1;                        // torsion order
};

// Z^ambient modulo the lattice spanned by the rows of `gens`. Torsion
// representatives are returned in the dual "angle" picture: rational vectors
// t with <g, t> integral for every generator g, reduced into [0,1)^ambient.
FiniteAbelianGroup quotient_group(const IntMat &gens, int ambient);

// Utilities.
Int gcd_vec(const IntVec &v);
RatVec reduce_mod_Z(const RatVec &v);  // componentwise into [0,1)
bool is_integral(const Rat &q);
Int floor_rat(const Rat &q);

}  // namespace torsal
