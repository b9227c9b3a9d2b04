#pragma once

// Generator representation of block quasiseparable matrices.
//
// Generators are written with 1-based indices k = 1..n in comments and error
// messages. Storage is 0-based: every generator sequence has exactly n slots
// and generator k lives in slot k-1, including the ones that the textbook
// ranges leave undefined. Those boundary slots hold empty matrices sized with
// the boundary orders r_0 = r_n = 0:
//
//   generator | defined for | size             | boundary slots
//   ----------+-------------+------------------+-----------------------------
//   d_k       | 1..n        | n_k x n_k        | -
//   q_k       | 1..n-1      | rl_k x n_k       | q_n   : 0 x n_n
//   a_k       | 2..n-1      | rl_k x rl_{k-1}  | a_1   : rl_1 x 0, a_n : 0 x rl_{n-1}
//   p_k       | 2..n        | n_k x rl_{k-1}   | p_1   : n_1 x 0
//   g_k       | 1..n-1      | n_k x ru_k       | g_n   : n_n x 0
//   b_k       | 2..n-1      | ru_{k-1} x ru_k  | b_1   : 0 x ru_1, b_n : ru_{n-1} x 0
//   h_k       | 2..n        | ru_{k-1} x n_k   | h_1   : 0 x n_1
//
// With this convention every product in the generator recurrences is conformable
// at the ends of the chain, and empty products g_i b_{i+1}...b_{j-1} h_j with
// j = i + 1 reduce to g_i h_j.

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qsroots {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using Index = Eigen::Index;

struct BlockSizes {
  std::vector<Index> sizes;

  static BlockSizes scalar(std::size_t n) { return {std::vector<Index>(n, 1)}; }

  std::size_t count() const { return sizes.size(); }
  Index total() const;
  // Row/column offset of block k (0-based slot).
  Index offset(std::size_t slot) const;
  bool is_scalar() const;
};

struct QsGenerators {
  BlockSizes block_sizes;
  std::vector<Matrix> d, q, a, p, g, b, h;

  // All-zero generators with the given per-index orders. `lower_orders` and
  // `upper_orders` hold rl_1..rl_{n-1} and ru_1..ru_{n-1}.
  static QsGenerators zeros(const BlockSizes& sizes,
                            const std::vector<Index>& lower_orders,
                            const std::vector<Index>& upper_orders);

  std::size_t count() const { return d.size(); }
  // rl_k / ru_k for k = 0..n; zero at both ends.
  Index lower_order(std::size_t k) const;
  Index upper_order(std::size_t k) const;
  Index max_lower_order() const;
  Index max_upper_order() const;
};

// Factors L (unit lower bidiagonal, subdiagonal s) and U (upper triangular
// with diagonal d and quasiseparable upper part g, b, h) of a Hessenberg
// quasiseparable matrix A = L U. Scalar blocks only.
struct HessLUFactors {
  std::vector<double> s;       // s_1..s_{n-1}
  std::vector<double> d;       // d_1..d_n
  std::vector<RowVector> g;    // slot k-1 holds g_k; g_n has width 0
  std::vector<Matrix> b;       // slot k-1 holds b_k; b_1, b_n empty-sided
  std::vector<Vector> h;       // slot k-1 holds h_k; h_1 has length 0

  std::size_t size() const { return d.size(); }
  Index upper_order(std::size_t k) const;

  // Normalized tridiagonal embedding: unit superdiagonal, g_k = h_k = [1],
  // b_k = [0].
  static HessLUFactors tridiagonal(const std::vector<double>& l,
                                   const std::vector<double>& u);

  // Generators of the leading m x m factor block.
  HessLUFactors leading(std::size_t m) const;
};

struct DiagonalScaling {
  std::vector<double> delta;

  static DiagonalScaling identity(std::size_t n) {
    return {std::vector<double>(n, 1.0)};
  }
  DiagonalScaling inverse() const;
};

// Throws Error(SizeMismatch) naming the first generator whose dimensions
// break the chaining rules.
void validate(const QsGenerators& gens);
void validate(const HessLUFactors& f);

// Dense N x N matrix represented by the generators, built column/row chain
// wise in O(N^2).
Matrix assemble_dense(const QsGenerators& gens);

// Dense (L, U).
std::pair<Matrix, Matrix> assemble_hess_dense(const HessLUFactors& f);

// Index reversal. The returned generators
//   {s_{n-k}, d_{n-k+1}, h_{n-k+1}^T, b_{n-k+1}^T, g_{n-k+1}^T}
// assemble to L' = J L^T J and U' = J U^T J, so L'U' = J (UL)^T J and the
// forward sweep on the result is the backward sweep on the input.
HessLUFactors reverse_juj(const HessLUFactors& f);

// Generators of D A D^{-1}, D = diag(delta). Scalar blocks only.
QsGenerators apply_scaling(const QsGenerators& gens, const DiagonalScaling& scaling);

}  // namespace qsroots
