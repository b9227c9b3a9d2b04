#include "qsroots/polyroots.hpp"

#include <cmath>
#include <sstream>

#include "log.hpp"
#include "qsroots/error.hpp"
#include "qsroots/factorization.hpp"

namespace qsroots {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, 0, what);
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

// H_k must be usable as a divisor for k < n.
void check_horner(const HornerTrace& h) {
  const std::size_t n = h.values.size() - 1;
  for (std::size_t k = 1; k < n; ++k) {
    const double v = h.values[k];
    if (v == 0.0 || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "H_" << k << "(sigma) = " << v << "; choose a different shift";
      throw Error(ErrorKind::HornerZero, k, msg.str());
    }
  }
  if (!std::isfinite(h.values[n])) throw Error(ErrorKind::HornerZero, n, "P(sigma) overflowed");
}

// Slots of a Hessenberg factor with upper order r on every interior index.
HessLUFactors hess_skeleton(std::size_t n, Index r) {
  HessLUFactors f;
  f.s.resize(n - 1);
  f.d.resize(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const Index prev = k == 1 ? 0 : r;
    const Index next = k == n ? 0 : r;
    f.g.push_back(RowVector::Zero(next));
    f.b.push_back(Matrix::Zero(prev, next));
    f.h.push_back(Vector::Zero(prev));
  }
  return f;
}

// m_k as a full ascending coefficient vector c_0..c_n with c_n = 1.
std::vector<double> monic_full(const std::vector<double>& m) {
  std::vector<double> c(m);
  c.push_back(1.0);
  return c;
}

// r_0..r_n in ascending monomial coefficients.
std::vector<std::vector<double>> recurrence_basis(std::size_t n, const std::vector<double>& alpha,
                                                  const std::vector<double>& beta) {
  std::vector<std::vector<double>> r(n + 1);
  r[0] = {1.0};
  if (n == 0) return r;
  r[1] = {-alpha[0], 1.0};
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(k + 2, 0.0);
    for (std::size_t j = 0; j <= k; ++j) {
      next[j + 1] += r[k][j];
      next[j] -= alpha[k] * r[k][j];
    }
    for (std::size_t j = 0; j < r[k - 1].size(); ++j) next[j] -= beta[k - 1] * r[k - 1][j];
    r[k + 1] = std::move(next);
  }
  return r;
}

}  // namespace

Polynomial Polynomial::monomial(std::vector<double> coeffs) {
  Polynomial p;
  p.basis = BasisKind::Monomial;
  p.coeffs = std::move(coeffs);
  return p;
}

Polynomial Polynomial::orthogonal(std::vector<double> alpha, std::vector<double> beta,
                                  std::vector<double> coeffs) {
  Polynomial p;
  p.basis = BasisKind::Orthogonal;
  p.alpha = std::move(alpha);
  p.beta = std::move(beta);
  p.coeffs = std::move(coeffs);
  return p;
}

void Polynomial::check() const {
  const std::size_t n = degree();
  require(n >= 1, "polynomial degree must be at least 1");
  require(all_finite(coeffs), "coefficients must be finite");
  if (basis == BasisKind::Orthogonal) {
    require(alpha.size() == n, "orthogonal basis needs alpha_0..alpha_{n-1}");
    require(beta.size() == n - 1, "orthogonal basis needs beta_1..beta_{n-1}");
    require(all_finite(alpha) && all_finite(beta), "recurrence coefficients must be finite");
    for (double b : beta) require(b > 0.0, "recurrence beta_k must be positive");
  }
}

HornerTrace horner_trace(const Polynomial& p, double sigma) {
  require(p.basis == BasisKind::Monomial, "horner_trace needs a monomial-basis polynomial");
  const std::size_t n = p.degree();
  HornerTrace h;
  h.values.resize(n + 1);
  h.values[0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) h.values[k] = sigma * h.values[k - 1] + p.coeffs[n - k];
  return h;
}

HornerTrace clenshaw_trace(const Polynomial& p, double sigma) {
  require(p.basis == BasisKind::Orthogonal, "clenshaw_trace needs an orthogonal-basis polynomial");
  p.check();
  const std::size_t n = p.degree();
  HornerTrace h;
  h.values.resize(n + 1);
  h.values[0] = 1.0;
  h.values[1] = sigma - p.alpha[n - 1] + p.coeffs[n - 1];
  // beta_{n-k+1} sits at beta[n-k].
  for (std::size_t k = 2; k <= n; ++k)
    h.values[k] = (sigma - p.alpha[n - k]) * h.values[k - 1] - p.beta[n - k] * h.values[k - 2] +
                  p.coeffs[n - k];
  return h;
}

HornerTrace trace(const Polynomial& p, double sigma) {
  return p.basis == BasisKind::Monomial ? horner_trace(p, sigma) : clenshaw_trace(p, sigma);
}

double evaluate(const Polynomial& p, double x) { return trace(p, x).values.back(); }

HessLUFactors companion_lu(const Polynomial& p, double sigma) {
  require(p.basis == BasisKind::Monomial, "companion_lu needs a monomial-basis polynomial");
  p.check();
  const HornerTrace tr = horner_trace(p, sigma);
  check_horner(tr);
  const auto& H = tr.values;
  const std::size_t n = p.degree();

  HessLUFactors f = hess_skeleton(n, 1);
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t i = k - 1;
    f.d[i] = -H[k] / H[k - 1];
    if (k < n) {
      f.s[i] = -H[k - 1] / H[k];
      f.g[i](0) = -1.0 / H[k - 1];
    }
    if (k > 1) f.h[i](0) = p.coeffs[n - k];
    if (k > 1 && k < n) f.b[i](0, 0) = 1.0;
  }
  return f;
}

HessLUFactors comrade_lu(const Polynomial& p, double sigma) {
  require(p.basis == BasisKind::Orthogonal, "comrade_lu needs an orthogonal-basis polynomial");
  const HornerTrace tr = clenshaw_trace(p, sigma);
  check_horner(tr);
  const auto& H = tr.values;
  const std::size_t n = p.degree();

  HessLUFactors f = hess_skeleton(n, 2);
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t i = k - 1;
    f.d[i] = -H[k] / H[k - 1];
    if (k < n) {
      f.s[i] = -H[k - 1] / H[k];
      f.g[i] << 1.0, -1.0 / H[k - 1];
    }
    if (k > 1) f.h[i] << p.beta[n - k], p.coeffs[n - k];
    if (k > 1 && k < n) f.b[i] << 0.0, 0.0, 0.0, 1.0;
  }
  return f;
}

QsGenerators companion_generators(const Polynomial& p) {
  require(p.basis == BasisKind::Monomial, "companion_generators needs a monomial-basis polynomial");
  p.check();
  const std::size_t n = p.degree();
  QsGenerators gens = QsGenerators::zeros(BlockSizes::scalar(n), std::vector<Index>(n - 1, 1),
                                          std::vector<Index>(n - 1, 1));
  gens.d[0](0, 0) = -p.coeffs[n - 1];
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t i = k - 1;
    if (k < n) gens.q[i](0, 0) = 1.0;
    if (k > 1) {
      gens.p[i](0, 0) = 1.0;
      gens.h[i](0, 0) = -p.coeffs[n - k];
    }
    if (k > 1 && k < n) gens.b[i](0, 0) = 1.0;
  }
  if (n > 1) gens.g[0](0, 0) = 1.0;
  return gens;
}

QsGenerators comrade_generators(const Polynomial& p) {
  require(p.basis == BasisKind::Orthogonal, "comrade_generators needs an orthogonal-basis polynomial");
  p.check();
  const std::size_t n = p.degree();
  QsGenerators gens = QsGenerators::zeros(BlockSizes::scalar(n), std::vector<Index>(n - 1, 1),
                                          std::vector<Index>(n - 1, 2));
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t i = k - 1;
    gens.d[i](0, 0) = p.alpha[n - k];
    if (k < n) {
      gens.q[i](0, 0) = 1.0;
      // Row 1 carries both the band entry and the coefficient row.
      gens.g[i] << 1.0, (k == 1 ? 1.0 : 0.0);
    }
    if (k > 1) {
      gens.p[i](0, 0) = 1.0;
      gens.h[i] << p.beta[n - k], -p.coeffs[n - k];
    }
    if (k > 1 && k < n) gens.b[i] << 0.0, 0.0, 0.0, 1.0;
  }
  gens.d[0](0, 0) -= p.coeffs[n - 1];
  return gens;
}

QsGenerators matrix_generators(const Polynomial& p) {
  return p.basis == BasisKind::Monomial ? companion_generators(p) : comrade_generators(p);
}

Matrix companion_matrix(const Polynomial& p) {
  p.check();
  const auto n = static_cast<Index>(p.degree());
  Matrix c = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) c(0, j) = -p.coeffs[static_cast<std::size_t>(n - 1 - j)];
  for (Index i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  return c;
}

Matrix comrade_matrix(const Polynomial& p) {
  p.check();
  require(p.basis == BasisKind::Orthogonal, "comrade_matrix needs an orthogonal-basis polynomial");
  const auto n = static_cast<Index>(p.degree());
  auto at = [](const std::vector<double>& v, Index i) { return v[static_cast<std::size_t>(i)]; };
  Matrix c = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    c(i, i) = at(p.alpha, n - 1 - i);
    if (i + 1 < n) c(i, i + 1) = at(p.beta, n - 2 - i);
    if (i > 0) c(i, i - 1) = 1.0;
  }
  for (Index j = 0; j < n; ++j) c(0, j) -= at(p.coeffs, n - 1 - j);
  return c;
}

DiagonalScaling balance_vector(const Matrix& a) {
  const Index n = a.rows();
  require(a.cols() == n, "balancing needs a square matrix");
  Matrix work = a;
  DiagonalScaling scaling = DiagonalScaling::identity(static_cast<std::size_t>(n));
  constexpr double kRadix = 2.0;
  constexpr double kRadix2 = kRadix * kRadix;

  bool changed = true;
  while (changed) {
    changed = false;
    for (Index i = 0; i < n; ++i) {
      double c = work.col(i).cwiseAbs().sum() - std::abs(work(i, i));
      double r = work.row(i).cwiseAbs().sum() - std::abs(work(i, i));
      if (c == 0.0 || r == 0.0) continue;
      const double total = c + r;
      double f = 1.0;
      double g = r / kRadix;
      while (c < g) {
        f *= kRadix;
        c *= kRadix2;
      }
      g = r * kRadix;
      while (c >= g) {
        f /= kRadix;
        c /= kRadix2;
      }
      // Column i grows by f, row i shrinks by f: delta_i = 1 / f.
      if ((c + r) / f < 0.95 * total) {
        changed = true;
        scaling.delta[static_cast<std::size_t>(i)] /= f;
        work.row(i) /= f;
        work.col(i) *= f;
      }
    }
  }
  return scaling;
}

DiagonalScaling balance_vector(const QsGenerators& gens) { return balance_vector(assemble_dense(gens)); }

DiagonalScaling balance_vector(const HessLUFactors& f) {
  const auto [L, U] = assemble_hess_dense(f);
  return balance_vector(Matrix(L * U));
}

RootReport roots(const Polynomial& p, const SolveConfig& cfg) {
  cfg.check();
  p.check();
  if (!cfg.balance) {
    const HessLUFactors f =
        p.basis == BasisKind::Monomial ? companion_lu(p, 0.0) : comrade_lu(p, 0.0);
    return solve(f, cfg);
  }
  const QsGenerators gens = matrix_generators(p);
  const DiagonalScaling scaling = balance_vector(gens);
  const QsGenerators scaled = apply_scaling(gens, scaling);
  detail::logger().info("balanced degree {} problem", p.degree());
  return solve(to_hess_factors(qs_lu(scaled)), cfg);
}

Polynomial monomial_to_orthogonal(const Polynomial& p, const std::vector<double>& alpha,
                                  const std::vector<double>& beta) {
  require(p.basis == BasisKind::Monomial, "monomial_to_orthogonal needs a monomial-basis polynomial");
  const std::size_t n = p.degree();
  require(n >= 1, "polynomial degree must be at least 1");
  require(alpha.size() == n && beta.size() == n - 1, "recurrence lengths do not match the degree");
  const auto basis = recurrence_basis(n, alpha, beta);

  // P - r_n has degree < n; peel off the leading term with each monic r_k.
  std::vector<double> rest = monic_full(p.coeffs);
  for (std::size_t j = 0; j <= n; ++j) rest[j] -= basis[n][j];
  std::vector<double> m(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    m[k] = rest[k];
    for (std::size_t j = 0; j <= k; ++j) rest[j] -= m[k] * basis[k][j];
  }
  return Polynomial::orthogonal(alpha, beta, std::move(m));
}

Polynomial orthogonal_to_monomial(const Polynomial& p) {
  require(p.basis == BasisKind::Orthogonal, "orthogonal_to_monomial needs an orthogonal-basis polynomial");
  const std::size_t n = p.degree();
  require(n >= 1 && p.alpha.size() == n && p.beta.size() == n - 1,
          "recurrence lengths do not match the degree");
  const auto basis = recurrence_basis(n, p.alpha, p.beta);
  std::vector<double> c = basis[n];
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j <= k; ++j) c[j] += p.coeffs[k] * basis[k][j];
  c.pop_back();
  return Polynomial::monomial(std::move(c));
}

std::vector<double> coefficients_from_roots(const std::vector<double>& roots) {
  // Descending coefficients, as in the usual poly() loop.
  std::vector<double> c{1.0};
  for (double r : roots) {
    c.push_back(0.0);
    for (std::size_t j = c.size() - 1; j > 0; --j) c[j] -= r * c[j - 1];
  }
  // c[0] = 1 is the leading term; m_k = c[n - k].
  const std::size_t n = roots.size();
  std::vector<double> m(n);
  for (std::size_t k = 0; k < n; ++k) m[k] = c[n - k];
  return m;
}

Polynomial orthogonal_from_roots(const std::vector<double>& roots, const std::vector<double>& alpha,
                                 const std::vector<double>& beta) {
  const std::size_t n = roots.size();
  require(n >= 1, "polynomial degree must be at least 1");
  require(alpha.size() == n && beta.size() == n - 1, "recurrence lengths do not match the degree");
  // c holds the coefficients on r_0..r_k of the partial product.
  std::vector<double> c{1.0};
  for (double root : roots) {
    const std::size_t k = c.size() - 1;
    std::vector<double> next(k + 2, 0.0);
    for (std::size_t j = 0; j <= k; ++j) {
      next[j + 1] += c[j];
      next[j] += (alpha[j] - root) * c[j];
      if (j > 0) next[j - 1] += beta[j - 1] * c[j];
    }
    c = std::move(next);
  }
  c.pop_back();
  return Polynomial::orthogonal(alpha, beta, std::move(c));
}

std::pair<std::vector<double>, std::vector<double>> chebyshev2_recurrence(std::size_t n, double lo,
                                                                          double hi) {
  require(n >= 1 && hi > lo, "chebyshev2_recurrence needs n >= 1 and lo < hi");
  const double center = 0.5 * (lo + hi);
  const double quarter = 0.25 * (hi - lo);
  return {std::vector<double>(n, center), std::vector<double>(n - 1, quarter * quarter)};
}

}  // namespace qsroots
