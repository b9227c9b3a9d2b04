#pragma once

#include <vector>

#include "qsroots/factorization.hpp"
#include "qsroots/generators.hpp"

namespace qsroots {

// Relative cancellation threshold for dqds pivots: a pivot d^_k breaks down
// when |d^_k| < tol * max(|t_k|, |s_k g^_k h_{k+1}|, DBL_MIN).
inline constexpr double kDefaultBreakdownTol = 1e-14;

// Auxiliary quantities of one qd sweep, slot k-1 holding index k.
//   t      dqds differential variable t_k (n entries)
//   f_hat  stqd: t^_k, the difference of old and new f recurrences;
//          qds: f^_k of the new factors
//   f      qds: backward product recurrence f_k (ru_k x rl_k)
struct QdAuxState {
  std::vector<double> t;
  std::vector<Matrix> f_hat;
  std::vector<Matrix> f;
};

// Stationary qd: factors L^ U^ = L U - sigma I. a, p, b, h pass through.
// The last pivot may be singular; earlier singular pivots throw
// Error(SingularPivot, k).
LUGenerators stqd(const LUGenerators& lu, double sigma, QdAuxState* aux = nullptr);

// Progressive qd: factors L^ U^ = U L - sigma I. Same pivot rules as stqd.
LUGenerators qds(const LUGenerators& lu, double sigma, QdAuxState* aux = nullptr);

struct DqdsResult {
  HessLUFactors factors;
  QdAuxState aux;
};

// Differential qd with shift on Hessenberg factors: L^ U^ = U L - sigma I.
// b is copied through untouched. Throws Error(Breakdown, k) when pivot
// d^_k (k < n) cancels below the breakdown threshold or anything becomes
// non-finite; the input is never modified.
DqdsResult dqds_step(const HessLUFactors& f, double sigma,
                     double breakdown_tol = kDefaultBreakdownTol);

struct TridiagonalQdResult {
  std::vector<double> l;
  std::vector<double> u;
  std::vector<double> t;
};

// Classical dqds on a normalized tridiagonal L U (unit superdiagonal):
//   u^_k = t_k + l_k,  l^_k = l_k u_{k+1} / u^_k,  t_{k+1} = t_k u_{k+1} / u^_k - sigma.
TridiagonalQdResult dqds_step_tridiagonal(const std::vector<double>& l,
                                          const std::vector<double>& u, double sigma,
                                          double breakdown_tol = kDefaultBreakdownTol);

}  // namespace qsroots
