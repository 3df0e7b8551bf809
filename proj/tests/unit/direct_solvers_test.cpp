#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "../support/dense.hpp"
#include "taperbench/formats/number.hpp"
#include "taperbench/orderings/plan.hpp"
#include "taperbench/solvers/direct.hpp"
#include "taperbench/solvers/lu.hpp"
#include "taperbench/solvers/mpir.hpp"
#include "taperbench/solvers/qr.hpp"

namespace tb = taperbench;

namespace {

tb::CscMatrix<double> dense2(double a, double b, double c, double d) {
  return dense::to_csc({{a, b}, {c, d}});
}

tb::StructuralPlan natural(tb::PlanKind kind, int n) {
  tb::StructuralPlan p;
  p.kind = kind;
  for (int i = 0; i < n; ++i) {
    p.row_perm.push_back(i);
    p.col_perm.push_back(i);
  }
  return p;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> b(n);
  for (auto& v : b) v = std::uniform_real_distribution<double>(-1, 1)(rng);
  return b;
}

// Q y from the stored reflectors
template <class T>
void apply_q(const tb::QrFactors<T>& f, std::vector<T>& y) {
  for (auto it = f.reflectors.rbegin(); it != f.reflectors.rend(); ++it) tb::apply_reflector(*it, y);
}

TEST(Lu, TwoByTwo) {
  const auto f = tb::lu_factor(dense2(4, 3, 6, 3));
  ASSERT_TRUE(f.ok);
  const auto L = tb::to_dense(f.factors.L);
  const auto U = tb::to_dense(f.factors.U);
  EXPECT_EQ(L[1][0], 1.5);
  EXPECT_EQ(L[0][0], 1.0);
  EXPECT_EQ(U[0][0], 4.0);
  EXPECT_EQ(U[0][1], 3.0);
  EXPECT_EQ(U[1][1], -1.5);
  EXPECT_EQ(tb::lu_solve(f.factors, {7.0, 9.0}), (std::vector<double>{1.0, 1.0}));
}

TEST(Lu, IdentityAndZeroPivot) {
  const auto f = tb::lu_factor(dense2(1, 0, 0, 1));
  ASSERT_TRUE(f.ok);
  EXPECT_EQ(f.factors.L.nnz(), 2);
  EXPECT_EQ(f.factors.U.nnz(), 2);
  const auto g = tb::lu_factor(dense2(0, 1, 1, 0));
  EXPECT_FALSE(g.ok);
  EXPECT_EQ(g.failed_column, 0);
  // planned LU swaps the rows and succeeds
  const auto a = dense2(0, 1, 1, 0);
  const auto r = tb::solve_with_lu(a, {2.0, 3.0}, tb::plan_lu(a));
  ASSERT_EQ(r.status, tb::SolveStatus::ok);
  EXPECT_EQ(r.x, (std::vector<double>{3.0, 2.0}));
  EXPECT_EQ(tb::solve_with_lu(a, {2.0, 3.0}, natural(tb::PlanKind::lu, 2)).status,
            tb::SolveStatus::singular_failure);
}

TEST(Lu, SolveExamples) {
  const auto a = dense2(2, 1, 1, 3);
  const auto r = tb::solve_with_lu(a, {3.0, 4.0}, tb::plan_lu(a));
  ASSERT_EQ(r.status, tb::SolveStatus::ok);
  EXPECT_NEAR(r.x[0], 1.0, 1e-15);
  EXPECT_NEAR(r.x[1], 1.0, 1e-15);
  using P16 = tb::Number<tb::posit16>;
  const auto rp = tb::solve_with_lu(tb::cast_matrix<P16>(a), tb::cast_vector<P16>(std::vector<double>{3.0, 4.0}),
                                    tb::plan_lu(a));
  ASSERT_EQ(rp.status, tb::SolveStatus::ok);
  EXPECT_NEAR(rp.x[0].to_double(), 1.0, 1e-3);
  EXPECT_NEAR(rp.x[1].to_double(), 1.0, 1e-3);
}

TEST(Lu, OverflowingEliminationFails) {
  using F16 = tb::Number<tb::float16>;
  // the multiplier 0.5 / 1e-7 overflows, leaving an infinite pivot
  const auto a = dense::to_csc({{1e-7, 1.0}, {1.0, 1.0}});
  const auto r = tb::solve_with_lu(tb::cast_matrix<F16>(a), tb::cast_vector<F16>(std::vector<double>{1.0, 2.0}),
                                   natural(tb::PlanKind::lu, 2));
  EXPECT_EQ(r.status, tb::SolveStatus::singular_failure);
}

TEST(Lu, OverflowingRowNormIsARangeFailure) {
  using F16 = tb::Number<tb::float16>;
  const auto a = dense::to_csc({{60000.0, 60000.0}, {0.0, 1.0}});
  const auto r = tb::solve_with_lu(tb::cast_matrix<F16>(a), tb::cast_vector<F16>(std::vector<double>{1.0, 2.0}),
                                   natural(tb::PlanKind::lu, 2));
  EXPECT_EQ(r.status, tb::SolveStatus::range_failure);
}

TEST(Qr, SingleColumnReflector) {
  const auto a = dense::to_csc({{3.0}, {4.0}});
  const auto f = tb::qr_factor(a);
  ASSERT_TRUE(f.ok);
  ASSERT_EQ(f.factors.reflectors.size(), 1u);
  EXPECT_EQ(f.factors.reflectors[0].idx, (std::vector<std::int32_t>{0, 1}));
  EXPECT_DOUBLE_EQ(tb::to_dense(f.factors.R)[0][0], -5.0);
}

TEST(Qr, IdentityNeedsNoReflectors) {
  const auto f = tb::qr_factor(dense2(1, 0, 0, 1));
  ASSERT_TRUE(f.ok);
  for (const auto& h : f.factors.reflectors) EXPECT_TRUE(h.idx.empty());
  EXPECT_EQ(tb::to_dense(f.factors.R), tb::to_dense(dense2(1, 0, 0, 1)));
}

TEST(Qr, UpperTriangularStaysPut) {
  const auto a = dense::to_csc({{2, 1, 5}, {0, 3, -1}, {0, 0, 4}});
  const auto f = tb::qr_factor(a);
  ASSERT_TRUE(f.ok);
  EXPECT_EQ(tb::to_dense(f.factors.R), tb::to_dense(a));
}

TEST(Qr, SolveExample) {
  const auto a = dense2(3, 0, 4, 1);
  const auto r = tb::solve_with_qr(a, {3.0, 4.0}, natural(tb::PlanKind::qr, 2));
  ASSERT_EQ(r.status, tb::SolveStatus::ok);
  EXPECT_NEAR(r.x[0], 1.0, 1e-15);
  EXPECT_NEAR(r.x[1], 0.0, 1e-15);
}

TEST(Qr, RankDeficientColumnFails) {
  // every step is exact, so the second diagonal entry is exactly zero
  const auto a = dense2(3, 6, 4, 8);
  EXPECT_EQ(tb::solve_with_qr(a, {1.0, 1.0}, natural(tb::PlanKind::qr, 2)).status, tb::SolveStatus::singular_failure);
}

TEST(Qr, ReflectorsAreOrthogonal) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = 3 + static_cast<std::size_t>(trial);
    const auto a = dense::to_csc(dense::random_matrix(rng, n, 0.3, 1.0));
    const auto f = tb::qr_factor(a);
    ASSERT_TRUE(f.ok);
    const auto y0 = random_vector(rng, n);
    auto y = y0;
    tb::apply_qt(f.factors, y);
    double n0 = 0, n1 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      n0 += y0[i] * y0[i];
      n1 += y[i] * y[i];
    }
    EXPECT_NEAR(std::sqrt(n1), std::sqrt(n0), 1e-12);
    apply_q(f.factors, y);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y[i], y0[i], 1e-12);
  }
}

TEST(Qr, FactorsReproduceTheMatrix) {
  std::mt19937_64 rng(6);
  const std::size_t n = 9;
  const auto a = dense::to_csc(dense::random_matrix(rng, n, 0.3, 1.0));
  const auto f = tb::qr_factor(a);
  ASSERT_TRUE(f.ok);
  const auto R = tb::to_dense(f.factors.R);
  const auto A = tb::to_dense(a);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = R[i][j];
    apply_q(f.factors, col);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(col[i], A[i][j], 1e-12);
  }
}

TEST(Direct, RandomSystemsMatchDenseElimination) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = 2 + rng() % 40;
    const auto a = dense::to_csc(dense::random_matrix(rng, n, 0.2, 0.5));
    const auto b = random_vector(rng, n);
    const auto truth = dense::solve(dense::from_csc(a), dense::Vec(b.begin(), b.end()));
    const auto lu = tb::solve_with_lu(a, b, tb::plan_lu(a));
    ASSERT_EQ(lu.status, tb::SolveStatus::ok) << trial;
    EXPECT_LT(dense::rel_err2(lu.x, truth), 1e-10) << trial;
    const auto qr = tb::solve_with_qr(a, b, tb::plan_qr(a));
    ASSERT_EQ(qr.status, tb::SolveStatus::ok) << trial;
    EXPECT_LT(dense::rel_err2(qr.x, truth), 1e-10) << trial;
  }
}

template <tb::FormatId F>
void expect_bit_determinism(const tb::CscMatrix<double>& a, const std::vector<double>& b) {
  using N = tb::Number<F>;
  const auto an = tb::cast_matrix<N>(a);
  const auto bn = tb::cast_vector<N>(b);
  const auto lu_plan = tb::plan_lu(a);
  const auto qr_plan = tb::plan_qr(a);
  const auto r1 = tb::solve_with_lu(an, bn, lu_plan), r2 = tb::solve_with_lu(an, bn, lu_plan);
  const auto q1 = tb::solve_with_qr(an, bn, qr_plan), q2 = tb::solve_with_qr(an, bn, qr_plan);
  EXPECT_EQ(r1.status, r2.status);
  EXPECT_EQ(q1.status, q2.status);
  ASSERT_EQ(r1.x.size(), r2.x.size());
  for (std::size_t i = 0; i < r1.x.size(); ++i) EXPECT_EQ(r1.x[i].code(), r2.x[i].code());
  for (std::size_t i = 0; i < q1.x.size(); ++i) EXPECT_EQ(q1.x[i].code(), q2.x[i].code());
}

TEST(Direct, BitDeterministicInEveryFamily) {
  std::mt19937_64 rng(31);
  const auto a = dense::to_csc(dense::random_matrix(rng, 15, 0.3, 1.0));
  const auto b = random_vector(rng, 15);
  expect_bit_determinism<tb::float8>(a, b);
  expect_bit_determinism<tb::float16>(a, b);
  expect_bit_determinism<tb::bfloat16>(a, b);
  expect_bit_determinism<tb::posit16>(a, b);
  expect_bit_determinism<tb::takum16>(a, b);
  expect_bit_determinism<tb::takum32>(a, b);
}

template <tb::FormatId F>
void expect_error_within_condition_bound(double eps) {
  using N = tb::Number<F>;
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const auto n = 4 + static_cast<std::size_t>(trial);
    const auto a = dense::to_csc(dense::random_matrix(rng, n, 0.3, 1.0));
    const auto b = random_vector(rng, n);
    const auto truth = dense::solve(dense::from_csc(a), dense::Vec(b.begin(), b.end()));
    const double kappa = static_cast<double>(dense::cond1(dense::from_csc(a)));
    for (const auto& r : {tb::solve_with_lu(tb::cast_matrix<N>(a), tb::cast_vector<N>(b), tb::plan_lu(a)),
                          tb::solve_with_qr(tb::cast_matrix<N>(a), tb::cast_vector<N>(b), tb::plan_qr(a))}) {
      ASSERT_EQ(r.status, tb::SolveStatus::ok);
      EXPECT_LE(dense::rel_err2(tb::cast_vector<double>(r.x), truth), 100 * kappa * eps) << trial;
    }
  }
}

TEST(Direct, ErrorWithinConditionBound) {
  expect_error_within_condition_bound<tb::float32>(std::ldexp(1.0, -24));
  expect_error_within_condition_bound<tb::posit32>(std::ldexp(1.0, -28));
  expect_error_within_condition_bound<tb::takum32>(std::ldexp(1.0, -26));
}

}  // namespace
