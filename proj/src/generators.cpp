#include "qsroots/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "qsroots/error.hpp"

namespace qsroots {

namespace {

void check_shape(const Matrix& m, Index rows, Index cols, const char* name,
                 std::size_t k) {
  if (m.rows() == rows && m.cols() == cols) return;
  std::ostringstream msg;
  msg << name << "_" << k << " expected " << rows << "x" << cols << ", got "
      << m.rows() << "x" << m.cols();
  throw Error(ErrorKind::SizeMismatch, k, msg.str());
}

void check_count(std::size_t got, std::size_t expected, const char* name) {
  if (got == expected) return;
  std::ostringstream msg;
  msg << name << " has " << got << " slots, expected " << expected;
  throw Error(ErrorKind::SizeMismatch, 0, msg.str());
}

}  // namespace

Index BlockSizes::total() const {
  return std::accumulate(sizes.begin(), sizes.end(), Index{0});
}

Index BlockSizes::offset(std::size_t slot) const {
  return std::accumulate(sizes.begin(), sizes.begin() + static_cast<std::ptrdiff_t>(slot),
                         Index{0});
}

bool BlockSizes::is_scalar() const {
  return std::all_of(sizes.begin(), sizes.end(), [](Index s) { return s == 1; });
}

QsGenerators QsGenerators::zeros(const BlockSizes& sizes,
                                 const std::vector<Index>& lower_orders,
                                 const std::vector<Index>& upper_orders) {
  const std::size_t n = sizes.count();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, 0, "empty block sizes");
  check_count(lower_orders.size(), n - 1, "lower_orders");
  check_count(upper_orders.size(), n - 1, "upper_orders");

  auto rl = [&](std::size_t k) { return (k == 0 || k == n) ? Index{0} : lower_orders[k - 1]; };
  auto ru = [&](std::size_t k) { return (k == 0 || k == n) ? Index{0} : upper_orders[k - 1]; };

  QsGenerators gens;
  gens.block_sizes = sizes;
  for (std::size_t k = 1; k <= n; ++k) {
    const Index nk = sizes.sizes[k - 1];
    gens.d.push_back(Matrix::Zero(nk, nk));
    gens.q.push_back(Matrix::Zero(rl(k), nk));
    gens.a.push_back(Matrix::Zero(rl(k), rl(k - 1)));
    gens.p.push_back(Matrix::Zero(nk, rl(k - 1)));
    gens.g.push_back(Matrix::Zero(nk, ru(k)));
    gens.b.push_back(Matrix::Zero(ru(k - 1), ru(k)));
    gens.h.push_back(Matrix::Zero(ru(k - 1), nk));
  }
  return gens;
}

Index QsGenerators::lower_order(std::size_t k) const {
  if (k == 0 || k >= count()) return 0;
  return q[k - 1].rows();
}

Index QsGenerators::upper_order(std::size_t k) const {
  if (k == 0 || k >= count()) return 0;
  return g[k - 1].cols();
}

Index QsGenerators::max_lower_order() const {
  Index r = 0;
  for (std::size_t k = 1; k < count(); ++k) r = std::max(r, lower_order(k));
  return r;
}

Index QsGenerators::max_upper_order() const {
  Index r = 0;
  for (std::size_t k = 1; k < count(); ++k) r = std::max(r, upper_order(k));
  return r;
}

Index HessLUFactors::upper_order(std::size_t k) const {
  if (k == 0 || k >= size()) return 0;
  return g[k - 1].size();
}

HessLUFactors HessLUFactors::tridiagonal(const std::vector<double>& l,
                                         const std::vector<double>& u) {
  const std::size_t n = u.size();
  if (n == 0 || l.size() + 1 != n)
    throw Error(ErrorKind::SizeMismatch, 0, "tridiagonal factors need |l| = |u| - 1 >= 0");
  HessLUFactors f;
  f.s = l;
  f.d = u;
  for (std::size_t k = 1; k <= n; ++k) {
    const Index prev = k == 1 ? 0 : 1;
    const Index next = k == n ? 0 : 1;
    f.g.push_back(RowVector::Ones(next));
    f.b.push_back(Matrix::Zero(prev, next));
    f.h.push_back(Vector::Ones(prev));
  }
  return f;
}

HessLUFactors HessLUFactors::leading(std::size_t m) const {
  if (m == 0 || m > size()) throw Error(ErrorKind::InvalidArgument, m, "leading block size out of range");
  HessLUFactors out;
  out.s.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(m - 1));
  out.d.assign(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(m));
  out.g.assign(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(m));
  out.b.assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(m));
  out.h.assign(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(m));
  out.g[m - 1].resize(0);
  out.b[m - 1].resize(out.b[m - 1].rows(), 0);
  return out;
}

DiagonalScaling DiagonalScaling::inverse() const {
  DiagonalScaling inv;
  inv.delta.reserve(delta.size());
  for (double v : delta) inv.delta.push_back(1.0 / v);
  return inv;
}

void validate(const QsGenerators& gens) {
  const std::size_t n = gens.block_sizes.count();
  if (n == 0) throw Error(ErrorKind::SizeMismatch, 0, "no blocks");
  for (Index s : gens.block_sizes.sizes)
    if (s < 1) throw Error(ErrorKind::SizeMismatch, 0, "block sizes must be positive");
  check_count(gens.d.size(), n, "d");
  check_count(gens.q.size(), n, "q");
  check_count(gens.a.size(), n, "a");
  check_count(gens.p.size(), n, "p");
  check_count(gens.g.size(), n, "g");
  check_count(gens.b.size(), n, "b");
  check_count(gens.h.size(), n, "h");

  // Orders are read off q and g; everything else must chain with them.
  if (gens.q[n - 1].rows() != 0) check_shape(gens.q[n - 1], 0, gens.block_sizes.sizes[n - 1], "q", n);
  if (gens.g[n - 1].cols() != 0) check_shape(gens.g[n - 1], gens.block_sizes.sizes[n - 1], 0, "g", n);
  for (std::size_t k = 1; k <= n; ++k) {
    const Index nk = gens.block_sizes.sizes[k - 1];
    const Index rl = gens.lower_order(k), rl_prev = gens.lower_order(k - 1);
    const Index ru = gens.upper_order(k), ru_prev = gens.upper_order(k - 1);
    check_shape(gens.d[k - 1], nk, nk, "d", k);
    check_shape(gens.q[k - 1], rl, nk, "q", k);
    check_shape(gens.a[k - 1], rl, rl_prev, "a", k);
    check_shape(gens.p[k - 1], nk, rl_prev, "p", k);
    check_shape(gens.g[k - 1], nk, ru, "g", k);
    check_shape(gens.b[k - 1], ru_prev, ru, "b", k);
    check_shape(gens.h[k - 1], ru_prev, nk, "h", k);
  }
}

void validate(const HessLUFactors& f) {
  const std::size_t n = f.size();
  if (n == 0) throw Error(ErrorKind::SizeMismatch, 0, "empty factors");
  check_count(f.s.size(), n - 1, "s");
  check_count(f.g.size(), n, "g");
  check_count(f.b.size(), n, "b");
  check_count(f.h.size(), n, "h");
  if (f.g[n - 1].size() != 0) throw Error(ErrorKind::SizeMismatch, n, "g_n must be empty");
  for (std::size_t k = 1; k <= n; ++k) {
    const Index ru = f.upper_order(k), ru_prev = f.upper_order(k - 1);
    check_shape(f.b[k - 1], ru_prev, ru, "b", k);
    if (f.h[k - 1].size() != ru_prev) {
      std::ostringstream msg;
      msg << "h_" << k << " expected length " << ru_prev << ", got " << f.h[k - 1].size();
      throw Error(ErrorKind::SizeMismatch, k, msg.str());
    }
  }
}

Matrix assemble_dense(const QsGenerators& gens) {
  validate(gens);
  const std::size_t n = gens.count();
  const auto& bs = gens.block_sizes;
  const Index N = bs.total();
  Matrix A = Matrix::Zero(N, N);

  std::vector<Index> off(n);
  for (std::size_t k = 0; k < n; ++k) off[k] = bs.offset(k);

  for (std::size_t j = 0; j < n; ++j) {
    const Index nj = bs.sizes[j];
    A.block(off[j], off[j], nj, nj) = gens.d[j];

    // Column chain below the diagonal: W = a_{i-1} ... a_{j+1} q_j.
    Matrix w = gens.q[j];
    for (std::size_t i = j + 1; i < n; ++i) {
      A.block(off[i], off[j], bs.sizes[i], nj) = gens.p[i] * w;
      if (i + 1 < n) w = gens.a[i] * w;
    }
    // Row chain right of the diagonal: V = g_j b_{j+1} ... b_{i-1}.
    Matrix v = gens.g[j];
    for (std::size_t i = j + 1; i < n; ++i) {
      A.block(off[j], off[i], nj, bs.sizes[i]) = v * gens.h[i];
      if (i + 1 < n) v = v * gens.b[i];
    }
  }
  return A;
}

std::pair<Matrix, Matrix> assemble_hess_dense(const HessLUFactors& f) {
  validate(f);
  const auto n = static_cast<Index>(f.size());
  Matrix L = Matrix::Identity(n, n);
  Matrix U = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    if (i + 1 < n) L(i + 1, i) = f.s[static_cast<std::size_t>(i)];
    U(i, i) = f.d[static_cast<std::size_t>(i)];
    RowVector v = f.g[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < n; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      U(i, j) = v.dot(f.h[sj]);
      if (j + 1 < n) v = v * f.b[sj];
    }
  }
  return {L, U};
}

HessLUFactors reverse_juj(const HessLUFactors& f) {
  validate(f);
  const std::size_t n = f.size();
  HessLUFactors r;
  r.s.assign(f.s.rbegin(), f.s.rend());
  r.d.assign(f.d.rbegin(), f.d.rend());
  r.g.resize(n);
  r.b.resize(n);
  r.h.resize(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t src = n - k;  // slot of index n-k+1
    r.g[k - 1] = f.h[src].transpose();
    r.b[k - 1] = f.b[src].transpose();
    r.h[k - 1] = f.g[src].transpose();
  }
  return r;
}

QsGenerators apply_scaling(const QsGenerators& gens, const DiagonalScaling& scaling) {
  validate(gens);
  if (!gens.block_sizes.is_scalar())
    throw Error(ErrorKind::InvalidArgument, 0, "diagonal scaling needs scalar blocks");
  const std::size_t n = gens.count();
  if (scaling.delta.size() != n)
    throw Error(ErrorKind::SizeMismatch, 0, "scaling length differs from matrix size");
  for (std::size_t k = 0; k < n; ++k) {
    const double dk = scaling.delta[k];
    if (!(dk > 0.0) || !std::isfinite(dk))
      throw Error(ErrorKind::NonPositiveScale, k + 1, "scale factors must be positive and finite");
  }

  QsGenerators out = gens;
  for (std::size_t k = 0; k < n; ++k) {
    const double dk = scaling.delta[k];
    out.q[k] /= dk;
    out.p[k] *= dk;
    out.g[k] *= dk;
    out.h[k] /= dk;
  }
  return out;
}

}  // namespace qsroots
