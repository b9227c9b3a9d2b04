#pragma once

#include <utility>
#include <vector>

#include "qsroots/eigensolver.hpp"
#include "qsroots/generators.hpp"

namespace qsroots {

enum class BasisKind { Monomial, Orthogonal };

// Monic polynomial of degree n = coeffs.size():
//   monomial:   x^n + m_{n-1} x^{n-1} + ... + m_0
//   orthogonal: r_n + m_{n-1} r_{n-1} + ... + m_0 r_0, with
//               r_0 = 1, r_1 = x - alpha_0,
//               r_{k+1} = (x - alpha_k) r_k - beta_k r_{k-1}.
// alpha holds alpha_0..alpha_{n-1}, beta holds beta_1..beta_{n-1}.
struct Polynomial {
  BasisKind basis = BasisKind::Monomial;
  std::vector<double> coeffs;
  std::vector<double> alpha;
  std::vector<double> beta;

  static Polynomial monomial(std::vector<double> coeffs);
  static Polynomial orthogonal(std::vector<double> alpha, std::vector<double> beta,
                               std::vector<double> coeffs);

  std::size_t degree() const { return coeffs.size(); }
  // Degree >= 1, finite entries, matching recurrence lengths, beta_k > 0.
  void check() const;
};

// H_0(sigma)..H_n(sigma); H_n = P(sigma).
struct HornerTrace {
  std::vector<double> values;
};

HornerTrace horner_trace(const Polynomial& p, double sigma);
// Generalized Horner (Clenshaw) recurrence for the orthogonal basis.
HornerTrace clenshaw_trace(const Polynomial& p, double sigma);
// Dispatches on the basis.
HornerTrace trace(const Polynomial& p, double sigma);
double evaluate(const Polynomial& p, double x);

// Zero-pivot-free LU of C - sigma I straight from the Horner values. Throws
// Error(HornerZero, k) when H_k(sigma) vanishes for some k < n.
HessLUFactors companion_lu(const Polynomial& p, double sigma);
HessLUFactors comrade_lu(const Polynomial& p, double sigma);

// Quasiseparable generators of the companion / comrade matrix itself
// (lower order 1; upper order 1 resp. 2).
QsGenerators companion_generators(const Polynomial& p);
QsGenerators comrade_generators(const Polynomial& p);
QsGenerators matrix_generators(const Polynomial& p);

// Dense companion / comrade matrices built entry by entry.
Matrix companion_matrix(const Polynomial& p);
Matrix comrade_matrix(const Polynomial& p);

// Parlett-Reinsch balancing with radix 2 on the off-diagonal 1-norms of a
// dense matrix. The result delta is applied as D A D^{-1}.
DiagonalScaling balance_vector(const Matrix& a);
DiagonalScaling balance_vector(const QsGenerators& gens);
DiagonalScaling balance_vector(const HessLUFactors& f);

// Zero-shift factorization (optionally after balancing) followed by the
// dqds eigensolver. Balanced problems are factored with qs_lu on the scaled
// generators instead of Horner ratios.
RootReport roots(const Polynomial& p, const SolveConfig& cfg = {});

// Change of basis; monomial_to_orthogonal does not require beta > 0.
Polynomial monomial_to_orthogonal(const Polynomial& p, const std::vector<double>& alpha,
                                  const std::vector<double>& beta);
Polynomial orthogonal_to_monomial(const Polynomial& p);

// m_0..m_{n-1} of prod (x - r_i), expanded one linear factor at a time.
std::vector<double> coefficients_from_roots(const std::vector<double>& roots);

// prod (x - r_i) expanded directly in the orthogonal basis.
Polynomial orthogonal_from_roots(const std::vector<double>& roots, const std::vector<double>& alpha,
                                 const std::vector<double>& beta);

// Recurrence of monic Chebyshev polynomials of the second kind mapped from
// [-1, 1] to [lo, hi]: alpha_k = (lo + hi) / 2, beta_k = ((hi - lo) / 4)^2.
std::pair<std::vector<double>, std::vector<double>> chebyshev2_recurrence(std::size_t n, double lo,
                                                                          double hi);

}  // namespace qsroots
