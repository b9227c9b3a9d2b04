#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qsroots/factorization.hpp"
#include "qsroots/generators.hpp"

namespace qsroots::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Index uniform_int(std::mt19937_64& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

inline Matrix random_matrix(std::mt19937_64& rng, Index rows, Index cols, double scale = 1.0) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = scale * uniform(rng, -1.0, 1.0);
  return m;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Singular values above tol * sigma_max.
inline Index numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  Index r = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++r;
  return r;
}

inline Matrix flip(const Matrix& m) { return m.rowwise().reverse().colwise().reverse(); }

// Random generators with orders drawn from 1..max_order and block sizes from
// 1..max_block. Couplings are damped so long products stay O(1); the
// diagonal blocks are then shifted to make the dense matrix strictly
// diagonally dominant, hence strongly regular.
inline QsGenerators random_generators(std::mt19937_64& rng, std::size_t n, Index max_order,
                                      Index max_block = 1, bool dominant = true) {
  BlockSizes sizes;
  for (std::size_t k = 0; k < n; ++k) sizes.sizes.push_back(uniform_int(rng, 1, max_block));
  std::vector<Index> rl, ru;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    rl.push_back(uniform_int(rng, 1, max_order));
    ru.push_back(uniform_int(rng, 1, max_order));
  }
  QsGenerators g = QsGenerators::zeros(sizes, rl, ru);
  auto fill = [&](std::vector<Matrix>& v, double scale) {
    for (auto& m : v) m = random_matrix(rng, m.rows(), m.cols(), scale);
  };
  fill(g.d, 1.0);
  fill(g.q, 1.0);
  fill(g.p, 1.0);
  fill(g.g, 1.0);
  fill(g.h, 1.0);
  fill(g.a, 0.6 / static_cast<double>(max_order));
  fill(g.b, 0.6 / static_cast<double>(max_order));
  if (dominant) {
    const Matrix dense = assemble_dense(g);
    for (std::size_t k = 0; k < n; ++k) {
      const Index off = sizes.offset(k);
      for (Index i = 0; i < sizes.sizes[k]; ++i) {
        const double row = dense.row(off + i).cwiseAbs().sum();
        const double sign = uniform(rng, -1.0, 1.0) < 0 ? -1.0 : 1.0;
        g.d[k](i, i) += sign * (row + 0.5);
      }
    }
  }
  return g;
}

// Random Hessenberg factors with upper orders in 1..max_order. With
// `positive`, s, d and every g_i h_j coupling are positive.
inline HessLUFactors random_hess(std::mt19937_64& rng, std::size_t n, Index max_order,
                                 bool positive = false) {
  HessLUFactors f;
  std::vector<Index> ru(n + 1, 0);
  for (std::size_t k = 1; k < n; ++k) ru[k] = uniform_int(rng, 1, max_order);
  for (std::size_t k = 0; k < n; ++k) {
    f.d.push_back(positive ? uniform(rng, 1.0, 2.0)
                           : (uniform(rng, -1.0, 1.0) < 0 ? -1.0 : 1.0) * uniform(rng, 1.0, 2.0));
    if (k + 1 < n) f.s.push_back(positive ? uniform(rng, 0.2, 1.0) : uniform(rng, -1.0, 1.0));
    const Index in = ru[k], out = ru[k + 1];
    RowVector gk(out);
    Matrix bk(in, out);
    Vector hk(in);
    for (Index j = 0; j < out; ++j) gk(j) = positive ? uniform(rng, 0.1, 1.0) : uniform(rng, -1.0, 1.0);
    for (Index i = 0; i < in; ++i) {
      hk(i) = positive ? uniform(rng, 0.1, 1.0) : uniform(rng, -1.0, 1.0);
      for (Index j = 0; j < out; ++j)
        bk(i, j) = positive ? uniform(rng, 0.0, 0.5) / static_cast<double>(max_order)
                            : uniform(rng, -0.5, 0.5) / static_cast<double>(max_order);
    }
    f.g.push_back(gk);
    f.b.push_back(bk);
    f.h.push_back(hk);
  }
  return f;
}

inline Matrix product_lu(const HessLUFactors& f) {
  const auto [l, u] = assemble_hess_dense(f);
  return l * u;
}

inline Matrix product_ul(const HessLUFactors& f) {
  const auto [l, u] = assemble_hess_dense(f);
  return u * l;
}

inline std::vector<double> sorted_real_eigenvalues(const Matrix& a) {
  Eigen::EigenSolver<Matrix> es(a, false);
  std::vector<double> out;
  for (Index i = 0; i < a.rows(); ++i) out.push_back(es.eigenvalues()(i).real());
  std::sort(out.begin(), out.end());
  return out;
}

// Block Doolittle LU without pivoting on the given partition: L has
// identity diagonal blocks, U has full diagonal blocks.
inline std::pair<Matrix, Matrix> dense_block_lu(const Matrix& a, const BlockSizes& bs) {
  const std::size_t n = bs.count();
  const Index N = a.rows();
  Matrix l = Matrix::Identity(N, N), u = Matrix::Zero(N, N);
  for (std::size_t k = 0; k < n; ++k) {
    const Index ok = bs.offset(k), nk = bs.sizes[k];
    for (std::size_t j = k; j < n; ++j) {
      const Index oj = bs.offset(j), nj = bs.sizes[j];
      u.block(ok, oj, nk, nj) =
          a.block(ok, oj, nk, nj) - l.block(ok, 0, nk, ok) * u.block(0, oj, ok, nj);
    }
    const Matrix pivot = u.block(ok, ok, nk, nk);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Index oi = bs.offset(i), ni = bs.sizes[i];
      const Matrix rhs = a.block(oi, ok, ni, nk) - l.block(oi, 0, ni, ok) * u.block(0, ok, ok, nk);
      l.block(oi, ok, ni, nk) = pivot.transpose().partialPivLu().solve(rhs.transpose()).transpose();
    }
  }
  return {l, u};
}

// Largest entrywise discrepancy of two LU pairs, U's rows measured against
// their largest entry.
inline double lu_mismatch(const std::pair<Matrix, Matrix>& x, const std::pair<Matrix, Matrix>& y) {
  double worst = 0.0;
  const Index N = x.first.rows();
  for (Index i = 0; i < N; ++i) {
    const double row_scale = y.second.row(i).cwiseAbs().maxCoeff();
    for (Index j = 0; j < N; ++j) {
      worst = std::max(worst, std::abs(x.first(i, j) - y.first(i, j)) / std::max(1.0, std::abs(y.first(i, j))));
      worst = std::max(worst, std::abs(x.second(i, j) - y.second(i, j)) / row_scale);
    }
  }
  return worst;
}

// Smallest no-pivot LU pivot of m relative to max|m|; 0 when a leading
// minor vanishes.
inline double pivot_margin(const Matrix& m) {
  Matrix w = m;
  const Index n = w.rows();
  double smallest = 1e300;
  for (Index k = 0; k < n; ++k) {
    const double piv = w(k, k);
    smallest = std::min(smallest, std::abs(piv));
    if (piv == 0.0) return 0.0;
    for (Index i = k + 1; i < n; ++i) {
      const double factor = w(i, k) / piv;
      w.row(i).tail(n - k) -= factor * w.row(k).tail(n - k);
    }
  }
  return smallest / std::max(max_abs(m), 1e-300);
}

}  // namespace qsroots::testing
