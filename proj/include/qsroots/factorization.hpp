#pragma once

#include <utility>
#include <vector>

#include "qsroots/generators.hpp"

namespace qsroots {

// Block LU factors in generator form. `lower` has unit diagonal blocks and
// zero upper orders, `upper` has zero lower orders; a and b are shared with
// the factored matrix. `f_trace[k-1]` holds the auxiliary f_k (rl_k x ru_k)
// of the sweep that produced the factors, when the producer records one.
struct LUGenerators {
  QsGenerators lower;
  QsGenerators upper;
  std::vector<Matrix> f_trace;

  std::size_t count() const { return upper.count(); }
};

// Pivot test used by every sweep that inverts a diagonal block: a block is
// singular when |det| < 1e-13 * prod(row norms) or it is not finite.
bool is_singular_pivot(const Matrix& pivot);

// X * pivot^{-1} through a small dense solve.
Matrix solve_right(const Matrix& x, const Matrix& pivot);

// O(N) block LU without pivoting of a strongly regular quasiseparable
// matrix. Throws Error(SingularPivot, k) when the k-th pivot block is
// singular.
LUGenerators qs_lu(const QsGenerators& gens);

// Doolittle LU without pivoting, used as a reference. Throws
// Error(SingularPivot, k) when |u_kk| <= 1e-13 * max|A|.
std::pair<Matrix, Matrix> dense_lu_nopivot(const Matrix& a);

// Dense (L, U).
std::pair<Matrix, Matrix> assemble_factors(const LUGenerators& lu);

// Hessenberg factors <-> general LU generators. `to_hess_factors` requires
// scalar blocks and a bidiagonal lower factor (all a_k zero).
LUGenerators to_lu_generators(const HessLUFactors& f);
HessLUFactors to_hess_factors(const LUGenerators& lu);

}  // namespace qsroots
