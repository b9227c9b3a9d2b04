#include "qsroots/factorization.hpp"

#include <cmath>
#include <sstream>

#include "qsroots/error.hpp"

namespace qsroots {

namespace {

constexpr double kPivotCutoff = 1e-13;

void throw_singular(std::size_t k, const char* where) {
  std::ostringstream msg;
  msg << where << ": pivot block " << k << " is singular";
  throw Error(ErrorKind::SingularPivot, k, msg.str());
}

}  // namespace

bool is_singular_pivot(const Matrix& pivot) {
  if (!pivot.allFinite()) return true;
  if (pivot.size() == 1) return pivot(0, 0) == 0.0;
  Matrix scaled = pivot;
  for (Index i = 0; i < scaled.rows(); ++i) {
    const double norm = scaled.row(i).cwiseAbs().maxCoeff();
    if (norm == 0.0) return true;
    scaled.row(i) /= norm;
  }
  return std::abs(scaled.determinant()) < kPivotCutoff;
}

Matrix solve_right(const Matrix& x, const Matrix& pivot) {
  if (pivot.size() == 1) return x / pivot(0, 0);
  return pivot.transpose().partialPivLu().solve(x.transpose()).transpose();
}

LUGenerators qs_lu(const QsGenerators& gens) {
  validate(gens);
  const std::size_t n = gens.count();

  std::vector<Index> rl(n - 1), ru(n - 1);
  for (std::size_t k = 1; k < n; ++k) {
    rl[k - 1] = gens.lower_order(k);
    ru[k - 1] = gens.upper_order(k);
  }
  LUGenerators lu;
  lu.lower = QsGenerators::zeros(gens.block_sizes, rl, std::vector<Index>(n - 1, 0));
  lu.upper = QsGenerators::zeros(gens.block_sizes, std::vector<Index>(n - 1, 0), ru);
  lu.f_trace.reserve(n);

  // f_0 is the empty 0 x 0 matrix, so the k = 1 step reduces to
  // d~_1 = d_1, q~_1 = q_1 d~_1^{-1}, g~_1 = g_1.
  Matrix f_prev(0, 0);
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t i = k - 1;
    Matrix pivot = gens.d[i] - gens.p[i] * f_prev * gens.h[i];
    if (is_singular_pivot(pivot)) throw_singular(k, "qs_lu");
    Matrix q_t = solve_right(gens.q[i] - gens.a[i] * f_prev * gens.h[i], pivot);
    Matrix g_t = gens.g[i] - gens.p[i] * f_prev * gens.b[i];
    Matrix f = gens.a[i] * f_prev * gens.b[i] + q_t * g_t;

    lu.lower.d[i] = Matrix::Identity(pivot.rows(), pivot.cols());
    lu.lower.q[i] = std::move(q_t);
    lu.lower.a[i] = gens.a[i];
    lu.lower.p[i] = gens.p[i];
    lu.upper.d[i] = std::move(pivot);
    lu.upper.g[i] = std::move(g_t);
    lu.upper.b[i] = gens.b[i];
    lu.upper.h[i] = gens.h[i];
    lu.f_trace.push_back(f);
    f_prev = std::move(f);
  }
  return lu;
}

std::pair<Matrix, Matrix> dense_lu_nopivot(const Matrix& a) {
  const Index n = a.rows();
  if (a.cols() != n) throw Error(ErrorKind::InvalidArgument, 0, "matrix must be square");
  const double scale = a.cwiseAbs().maxCoeff();
  Matrix L = Matrix::Identity(n, n);
  Matrix U = a;
  for (Index k = 0; k < n; ++k) {
    const double pivot = U(k, k);
    if (!std::isfinite(pivot) || std::abs(pivot) <= kPivotCutoff * scale)
      throw_singular(static_cast<std::size_t>(k + 1), "dense_lu_nopivot");
    for (Index i = k + 1; i < n; ++i) {
      const double m = U(i, k) / pivot;
      L(i, k) = m;
      U.row(i).tail(n - k) -= m * U.row(k).tail(n - k);
      U(i, k) = 0.0;
    }
  }
  return {L, U};
}

std::pair<Matrix, Matrix> assemble_factors(const LUGenerators& lu) {
  return {assemble_dense(lu.lower), assemble_dense(lu.upper)};
}

LUGenerators to_lu_generators(const HessLUFactors& f) {
  validate(f);
  const std::size_t n = f.size();
  std::vector<Index> rl(n - 1, 1), ru(n - 1);
  for (std::size_t k = 1; k < n; ++k) ru[k - 1] = f.upper_order(k);
  const BlockSizes sizes = BlockSizes::scalar(n);

  LUGenerators lu;
  lu.lower = QsGenerators::zeros(sizes, rl, std::vector<Index>(n - 1, 0));
  lu.upper = QsGenerators::zeros(sizes, std::vector<Index>(n - 1, 0), ru);
  for (std::size_t i = 0; i < n; ++i) {
    lu.lower.d[i](0, 0) = 1.0;
    if (i + 1 < n) lu.lower.q[i](0, 0) = f.s[i];
    if (i > 0) lu.lower.p[i](0, 0) = 1.0;
    lu.upper.d[i](0, 0) = f.d[i];
    lu.upper.g[i] = f.g[i];
    lu.upper.b[i] = f.b[i];
    lu.upper.h[i] = f.h[i];
  }
  return lu;
}

HessLUFactors to_hess_factors(const LUGenerators& lu) {
  const QsGenerators& lo = lu.lower;
  const QsGenerators& up = lu.upper;
  validate(lo);
  validate(up);
  if (!up.block_sizes.is_scalar())
    throw Error(ErrorKind::InvalidArgument, 0, "Hessenberg factors need scalar blocks");
  const std::size_t n = up.count();
  for (std::size_t i = 0; i < n; ++i)
    if (lo.a[i].size() != 0 && !lo.a[i].isZero(0.0))
      throw Error(ErrorKind::InvalidArgument, i + 1, "lower factor is not bidiagonal");

  HessLUFactors f;
  f.d.resize(n);
  f.s.resize(n - 1);
  f.g.resize(n);
  f.b.resize(n);
  f.h.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    f.d[i] = up.d[i](0, 0);
    if (i + 1 < n) f.s[i] = (lo.p[i + 1] * lo.q[i])(0, 0);
    f.g[i] = up.g[i].row(0);
    f.b[i] = up.b[i];
    f.h[i] = up.h[i].col(0);
  }
  return f;
}

}  // namespace qsroots
