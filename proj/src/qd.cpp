#include "qsroots/qd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qsroots/error.hpp"

namespace qsroots {

namespace {

void throw_singular(std::size_t k, const char* where) {
  std::ostringstream msg;
  msg << where << ": pivot block " << k << " is singular";
  throw Error(ErrorKind::SingularPivot, k, msg.str());
}

void throw_breakdown(std::size_t k, double pivot) {
  std::ostringstream msg;
  msg << "dqds pivot " << k << " = " << pivot << " cancelled";
  throw Error(ErrorKind::Breakdown, k, msg.str());
}

bool cancelled(double pivot, double t, double coupling, double tol) {
  if (!std::isfinite(pivot)) return true;
  const double scale = std::max({std::abs(t), std::abs(coupling),
                                 std::numeric_limits<double>::min()});
  return std::abs(pivot) < tol * scale;
}

Matrix shifted(const Matrix& m, double sigma) {
  return m - sigma * Matrix::Identity(m.rows(), m.cols());
}

std::vector<Index> orders_of(const QsGenerators& g, bool lower) {
  std::vector<Index> r(g.count() - 1);
  for (std::size_t k = 1; k < g.count(); ++k) r[k - 1] = lower ? g.lower_order(k) : g.upper_order(k);
  return r;
}

void check_factor_pair(const LUGenerators& lu) {
  validate(lu.lower);
  validate(lu.upper);
  if (lu.lower.block_sizes.sizes != lu.upper.block_sizes.sizes)
    throw Error(ErrorKind::SizeMismatch, 0, "L and U block sizes differ");
}

LUGenerators empty_like(const LUGenerators& lu) {
  const auto& sizes = lu.upper.block_sizes;
  const std::size_t n = lu.count();
  LUGenerators out;
  out.lower = QsGenerators::zeros(sizes, orders_of(lu.lower, true), std::vector<Index>(n - 1, 0));
  out.upper = QsGenerators::zeros(sizes, std::vector<Index>(n - 1, 0), orders_of(lu.upper, false));
  for (std::size_t i = 0; i < n; ++i) {
    out.lower.d[i] = Matrix::Identity(sizes.sizes[i], sizes.sizes[i]);
    out.lower.a[i] = lu.lower.a[i];
    out.upper.b[i] = lu.upper.b[i];
  }
  return out;
}

}  // namespace

LUGenerators stqd(const LUGenerators& lu, double sigma, QdAuxState* aux) {
  check_factor_pair(lu);
  const std::size_t n = lu.count();
  const auto& q = lu.lower.q;
  const auto& a = lu.lower.a;
  const auto& p = lu.lower.p;
  const auto& d = lu.upper.d;
  const auto& g = lu.upper.g;
  const auto& b = lu.upper.b;
  const auto& h = lu.upper.h;

  LUGenerators out = empty_like(lu);
  if (aux) aux->f_hat.clear();

  // t^_1 is empty (rl_0 x ru_0), so t^_2 = q_1 g_1 - q^_1 g^_1.
  Matrix t_hat(0, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0)
      t_hat = a[i - 1] * t_hat * b[i - 1] + q[i - 1] * g[i - 1] -
              out.lower.q[i - 1] * out.upper.g[i - 1];
    if (aux) aux->f_hat.push_back(t_hat);

    Matrix pivot = p[i] * t_hat * h[i] + shifted(d[i], sigma);
    if (i + 1 < n) {
      if (is_singular_pivot(pivot)) throw_singular(i + 1, "stqd");
      out.lower.q[i] = solve_right(a[i] * t_hat * h[i] + q[i] * d[i], pivot);
    }
    out.upper.g[i] = p[i] * t_hat * b[i] + g[i];
    out.upper.d[i] = std::move(pivot);
    out.lower.p[i] = p[i];
    out.upper.h[i] = h[i];
  }
  return out;
}

LUGenerators qds(const LUGenerators& lu, double sigma, QdAuxState* aux) {
  check_factor_pair(lu);
  const std::size_t n = lu.count();
  const auto& q = lu.lower.q;
  const auto& a = lu.lower.a;
  const auto& p = lu.lower.p;
  const auto& d = lu.upper.d;
  const auto& g = lu.upper.g;
  const auto& b = lu.upper.b;
  const auto& h = lu.upper.h;

  LUGenerators out = empty_like(lu);

  // Backward sweep: generators of U L - sigma I. f_n is empty and
  // f_{k-1} = b_k f_k a_k + h_k p_k. Slot n-1 gives p'_n = d_n p_n.
  std::vector<Matrix> f(n);
  std::vector<Matrix> d_prod(n);
  f[n - 1] = Matrix(0, 0);
  for (std::size_t i = n; i-- > 0;) {
    const Matrix& fk = f[i];
    out.lower.p[i] = d[i] * p[i] + g[i] * fk * a[i];
    out.upper.h[i] = h[i] + b[i] * fk * q[i];
    d_prod[i] = shifted(d[i] + g[i] * fk * q[i], sigma);
    if (i > 0) f[i - 1] = b[i] * fk * a[i] + h[i] * p[i];
  }

  // Forward sweep: LU of the product generators.
  std::vector<Matrix> f_hat(n);
  f_hat[0] = Matrix(0, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0)
      f_hat[i] = a[i - 1] * f_hat[i - 1] * b[i - 1] + out.lower.q[i - 1] * out.upper.g[i - 1];
    const Matrix& fh = f_hat[i];
    Matrix pivot = d_prod[i] - out.lower.p[i] * fh * out.upper.h[i];
    if (i + 1 < n) {
      if (is_singular_pivot(pivot)) throw_singular(i + 1, "qds");
      out.lower.q[i] = solve_right(q[i] - a[i] * fh * out.upper.h[i], pivot);
    }
    out.upper.g[i] = g[i] - out.lower.p[i] * fh * b[i];
    out.upper.d[i] = std::move(pivot);
  }

  if (aux) {
    aux->f = std::move(f);
    aux->f_hat = std::move(f_hat);
  }
  return out;
}

DqdsResult dqds_step(const HessLUFactors& f, double sigma, double breakdown_tol) {
  validate(f);
  const std::size_t n = f.size();

  DqdsResult res;
  HessLUFactors& out = res.factors;
  out.s.resize(n - 1);
  out.d.resize(n);
  out.g.resize(n);
  out.b = f.b;
  out.h.resize(n);
  res.aux.t.resize(n);

  double t = f.d[0] - sigma;
  // s^_{k-1} g^_{k-1}; empty before the first step.
  RowVector carry(0);
  for (std::size_t i = 0; i < n; ++i) {
    res.aux.t[i] = t;
    out.g[i] = f.g[i] - carry * f.b[i];
    if (i + 1 == n) {
      out.h[i] = f.h[i];
      out.d[i] = t;
      break;
    }
    out.h[i] = f.h[i] + f.s[i] * (f.b[i] * f.h[i + 1]);

    const double coupling = f.s[i] * out.g[i].dot(f.h[i + 1]);
    const double pivot = t + coupling;
    if (cancelled(pivot, t, coupling, breakdown_tol)) throw_breakdown(i + 1, pivot);
    out.d[i] = pivot;

    const double d_next = f.d[i + 1];
    const double s_hat = f.s[i] * d_next / pivot;
    t = t * d_next / pivot - sigma;
    if (!std::isfinite(s_hat) || !std::isfinite(t)) throw_breakdown(i + 1, pivot);
    out.s[i] = s_hat;
    carry = s_hat * out.g[i];
  }
  return res;
}

TridiagonalQdResult dqds_step_tridiagonal(const std::vector<double>& l,
                                          const std::vector<double>& u, double sigma,
                                          double breakdown_tol) {
  const std::size_t n = u.size();
  if (n == 0 || l.size() + 1 != n)
    throw Error(ErrorKind::SizeMismatch, 0, "tridiagonal factors need |l| = |u| - 1 >= 0");
  TridiagonalQdResult res;
  res.l.resize(n - 1);
  res.u.resize(n);
  res.t.resize(n);

  double t = u[0] - sigma;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    res.t[i] = t;
    const double pivot = t + l[i];
    if (cancelled(pivot, t, l[i], breakdown_tol)) throw_breakdown(i + 1, pivot);
    res.u[i] = pivot;
    res.l[i] = l[i] * u[i + 1] / pivot;
    t = t * u[i + 1] / pivot - sigma;
  }
  res.t[n - 1] = t;
  res.u[n - 1] = t;
  return res;
}

}  // namespace qsroots
