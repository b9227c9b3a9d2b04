#include <gtest/gtest.h>

#include "qsroots/error.hpp"
#include "qsroots/factorization.hpp"
#include "support.hpp"

using namespace qsroots;
using namespace qsroots::testing;

namespace {

QsGenerators companion_2x2() {
  QsGenerators g = QsGenerators::zeros(BlockSizes::scalar(2), {1}, {1});
  g.d[0](0, 0) = 3.0;
  g.q[0](0, 0) = 1.0;
  g.p[1](0, 0) = 1.0;
  g.g[0](0, 0) = -1.0;
  g.h[1](0, 0) = 2.0;
  return g;
}

}  // namespace

TEST(QsLu, TwoByTwo) {
  const LUGenerators lu = qs_lu(companion_2x2());
  const auto [l, u] = assemble_factors(lu);
  EXPECT_DOUBLE_EQ(l(1, 0), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(u(0, 0), 3.0);
  EXPECT_DOUBLE_EQ(u(1, 1), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(u(0, 1), -2.0);
  EXPECT_EQ(l(0, 1), 0.0);
  EXPECT_EQ(u(1, 0), 0.0);
}

TEST(QsLu, DiagonalMatrix) {
  QsGenerators g = QsGenerators::zeros(BlockSizes::scalar(4), {1, 2, 1}, {2, 1, 1});
  for (std::size_t k = 0; k < 4; ++k) g.d[k](0, 0) = 1.5 + static_cast<double>(k);
  const auto [l, u] = assemble_factors(qs_lu(g));
  EXPECT_EQ(l, Matrix::Identity(4, 4));
  EXPECT_EQ(u, assemble_dense(g));
}

TEST(QsLu, BlockInstanceReproducesMatrix) {
  std::mt19937_64 rng(2);
  QsGenerators g = QsGenerators::zeros(BlockSizes{{2, 2, 2}}, {2, 2}, {2, 2});
  for (auto* v : {&g.d, &g.q, &g.a, &g.p, &g.g, &g.b, &g.h})
    for (auto& m : *v) m = random_matrix(rng, m.rows(), m.cols());
  for (auto& d : g.d) d += 4.0 * Matrix::Identity(2, 2);
  const Matrix a = assemble_dense(g);
  const auto [l, u] = assemble_factors(qs_lu(g));
  EXPECT_LE(max_abs(l * u - a), 1e-10 * max_abs(a));
  EXPECT_LE(lu_mismatch({l, u}, dense_block_lu(a, g.block_sizes)), 1e-12);
}

TEST(QsLu, FactorOrdersFollowTheMatrix) {
  std::mt19937_64 rng(8);
  const QsGenerators g = random_generators(rng, 7, 3, 2);
  const LUGenerators lu = qs_lu(g);
  for (std::size_t k = 0; k <= 7; ++k) {
    EXPECT_EQ(lu.lower.lower_order(k), g.lower_order(k));
    EXPECT_EQ(lu.upper.upper_order(k), g.upper_order(k));
    EXPECT_EQ(lu.lower.upper_order(k), 0);
    EXPECT_EQ(lu.upper.lower_order(k), 0);
  }
  for (std::size_t k = 0; k < 7; ++k) {
    EXPECT_EQ(lu.lower.d[k], Matrix::Identity(g.block_sizes.sizes[k], g.block_sizes.sizes[k]));
    EXPECT_EQ(lu.lower.a[k], g.a[k]);
    EXPECT_EQ(lu.upper.b[k], g.b[k]);
    EXPECT_EQ(lu.upper.h[k], g.h[k]);
  }
  ASSERT_EQ(lu.f_trace.size(), 7u);
  EXPECT_EQ(lu.f_trace[6].size(), 0);
}

TEST(QsLu, SingularLeadingPivot) {
  QsGenerators g = companion_2x2();
  g.d[0](0, 0) = 0.0;
  try {
    qs_lu(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularPivot);
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(QsLu, SingularBlockPivotDetected) {
  QsGenerators g = QsGenerators::zeros(BlockSizes{{2, 1}}, {1}, {1});
  g.d[0] << 1.0, 2.0, 2.0, 4.0 * (1.0 + 1e-15);
  g.d[1](0, 0) = 1.0;
  EXPECT_THROW(qs_lu(g), Error);
  EXPECT_TRUE(is_singular_pivot(g.d[0]));
  EXPECT_FALSE(is_singular_pivot(Matrix::Identity(2, 2) * 1e-200));
  EXPECT_TRUE(is_singular_pivot(Matrix::Constant(1, 1, std::nan(""))));
}

TEST(QsLu, SolveRightMatchesInverse) {
  std::mt19937_64 rng(4);
  const Matrix pivot = random_matrix(rng, 3, 3) + 3.0 * Matrix::Identity(3, 3);
  const Matrix x = random_matrix(rng, 2, 3);
  EXPECT_LE(max_abs(solve_right(x, pivot) - x * pivot.inverse()), 1e-14);
}

TEST(DenseLu, HandElimination) {
  Matrix a(2, 2);
  a << 3, -2, 1, 0;
  const auto [l, u] = dense_lu_nopivot(a);
  Matrix el(2, 2), eu(2, 2);
  el << 1, 0, 1.0 / 3.0, 1;
  eu << 3, -2, 0, 2.0 / 3.0;
  EXPECT_LE(max_abs(l - el), 1e-16);
  EXPECT_LE(max_abs(u - eu), 1e-15);
}

TEST(DenseLu, Identity) {
  const auto [l, u] = dense_lu_nopivot(Matrix::Identity(5, 5));
  EXPECT_EQ(l, Matrix::Identity(5, 5));
  EXPECT_EQ(u, Matrix::Identity(5, 5));
}

TEST(DenseLu, ZeroLeadingMinor) {
  Matrix a(2, 2);
  a << 0, 1, 1, 0;
  try {
    dense_lu_nopivot(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularPivot);
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(DenseLu, AgreesWithBlockOracleOnScalarPartition) {
  std::mt19937_64 rng(12);
  const QsGenerators g = random_generators(rng, 9, 2);
  const Matrix a = assemble_dense(g);
  EXPECT_LE(lu_mismatch(dense_lu_nopivot(a), dense_block_lu(a, g.block_sizes)), 1e-13);
}

TEST(OracleEquivalence, ScalarInstances) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const QsGenerators g = random_generators(rng, n, 3);
    const Matrix a = assemble_dense(g);
    EXPECT_LE(lu_mismatch(assemble_factors(qs_lu(g)), dense_lu_nopivot(a)), 1e-9) << "trial " << trial;
  }
}

TEST(OracleEquivalence, BlockInstances) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const QsGenerators g = random_generators(rng, n, 3, 2);
    const Matrix a = assemble_dense(g);
    EXPECT_LE(lu_mismatch(assemble_factors(qs_lu(g)), dense_block_lu(a, g.block_sizes)), 1e-9)
        << "trial " << trial;
  }
}

TEST(StructurePreservation, UlKeepsOffDiagonalRanks) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + trial % 8;
    const QsGenerators g = random_generators(rng, n, 3);
    const auto [l, u] = assemble_factors(qs_lu(g));
    const Matrix next = u * l;
    for (std::size_t k = 1; k < n; ++k) {
      const Index split = static_cast<Index>(k), rest = next.rows() - split;
      EXPECT_LE(numerical_rank(next.bottomLeftCorner(rest, split), 1e-8), g.lower_order(k));
      EXPECT_LE(numerical_rank(next.topRightCorner(split, rest), 1e-8), g.upper_order(k));
    }
  }
}

TEST(HessConversion, RoundTrip) {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    const HessLUFactors f = random_hess(rng, 1 + trial % 8, 3);
    const LUGenerators lu = to_lu_generators(f);
    const auto [l, u] = assemble_factors(lu);
    const auto [lh, uh] = assemble_hess_dense(f);
    EXPECT_EQ(l, lh);
    EXPECT_LE(max_abs(u - uh), 1e-15 * max_abs(uh));
    const HessLUFactors back = to_hess_factors(lu);
    EXPECT_EQ(back.s, f.s);
    EXPECT_EQ(back.d, f.d);
  }
}

TEST(HessConversion, RejectsNonBidiagonalLower) {
  std::mt19937_64 rng(113);
  const QsGenerators g = random_generators(rng, 5, 2);
  QsGenerators withcoupling = g;
  for (auto& a : withcoupling.a)
    if (a.size() > 0) a.setConstant(0.1);
  EXPECT_THROW(to_hess_factors(qs_lu(withcoupling)), Error);
}
