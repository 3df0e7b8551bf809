#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "../support/dense.hpp"
#include "taperbench/formats/number.hpp"
#include "taperbench/orderings/plan.hpp"
#include "taperbench/solvers/backward_error.hpp"
#include "taperbench/solvers/gmres.hpp"
#include "taperbench/solvers/ilu0.hpp"
#include "taperbench/solvers/mpir.hpp"

namespace tb = taperbench;

namespace {

tb::CscMatrix<double> identity(int n) {
  std::vector<tb::Triplet<double>> t;
  for (int i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return tb::from_triplets<double>(n, n, t);
}

tb::CscMatrix<double> tridiagonal(int n, double lower, double d, double upper) {
  std::vector<tb::Triplet<double>> t;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, d});
    if (i > 0) t.push_back({i, i - 1, lower});
    if (i + 1 < n) t.push_back({i, i + 1, upper});
  }
  return tb::from_triplets<double>(n, n, t);
}

tb::CscMatrix<double> laplacian2d(int m) {
  std::vector<tb::Triplet<double>> t;
  const auto id = [m](int i, int j) { return static_cast<std::int64_t>(i * m + j); };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      t.push_back({id(i, j), id(i, j), 4.0});
      if (i > 0) t.push_back({id(i, j), id(i - 1, j), -1.0});
      if (i + 1 < m) t.push_back({id(i, j), id(i + 1, j), -1.2});
      if (j > 0) t.push_back({id(i, j), id(i, j - 1), -0.8});
      if (j + 1 < m) t.push_back({id(i, j), id(i, j + 1), -1.0});
    }
  }
  return tb::from_triplets<double>(m * m, m * m, t);
}

tb::LuFactors<double> identity_preconditioner(int n) { return {identity(n), identity(n)}; }

dense::Mat product(const dense::Mat& l, const dense::Mat& u) {
  const auto n = l.size();
  dense::Mat p(n, dense::Vec(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) p[i][j] += l[i][k] * u[k][j];
    }
  }
  return p;
}

// Textbook restarted GMRES on M^{-1} A x = M^{-1} b in long double: Arnoldi
// with classical Gram-Schmidt applied twice, Givens least squares. Stops when
// the preconditioned residual drops below tol times its initial value.
struct DenseGmres {
  dense::Vec x;
  int iterations = 0;
  bool converged = false;
};

DenseGmres dense_gmres(const dense::Mat& a, const dense::Mat& m, const dense::Vec& b, int restart, int max_iter,
                       long double tol) {
  const auto n = b.size();
  const auto apply = [&](const dense::Vec& v) {
    dense::Vec w(n, 0.0L);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) w[i] += a[i][j] * v[j];
    }
    return dense::solve(m, w);
  };
  const auto nrm = [](const dense::Vec& v) {
    long double s = 0;
    for (auto e : v) s += e * e;
    return std::sqrt(s);
  };
  DenseGmres out;
  out.x.assign(n, 0.0L);
  const long double target = tol * nrm(dense::solve(m, b));
  while (out.iterations < max_iter) {
    auto r = apply(out.x);
    const auto mb = dense::solve(m, b);
    for (std::size_t i = 0; i < n; ++i) r[i] = mb[i] - r[i];
    const long double beta = nrm(r);
    if (beta <= target) {
      out.converged = true;
      return out;
    }
    std::vector<dense::Vec> V{r};
    for (auto& e : V[0]) e /= beta;
    std::vector<dense::Vec> H;
    std::vector<long double> cs, sn, g{beta};
    int k = 0;
    for (; k < restart && out.iterations < max_iter; ++k) {
      auto w = apply(V[static_cast<std::size_t>(k)]);
      dense::Vec h(static_cast<std::size_t>(k) + 2, 0.0L);
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= k; ++i) {
          long double d = 0;
          for (std::size_t t = 0; t < n; ++t) d += V[static_cast<std::size_t>(i)][t] * w[t];
          h[static_cast<std::size_t>(i)] += d;
          for (std::size_t t = 0; t < n; ++t) w[t] -= d * V[static_cast<std::size_t>(i)][t];
        }
      }
      h[static_cast<std::size_t>(k) + 1] = nrm(w);
      for (auto& e : w) e /= h[static_cast<std::size_t>(k) + 1];
      V.push_back(w);
      for (int i = 0; i < k; ++i) {
        const auto hi = h[static_cast<std::size_t>(i)], hj = h[static_cast<std::size_t>(i) + 1];
        h[static_cast<std::size_t>(i)] = cs[static_cast<std::size_t>(i)] * hi + sn[static_cast<std::size_t>(i)] * hj;
        h[static_cast<std::size_t>(i) + 1] = -sn[static_cast<std::size_t>(i)] * hi + cs[static_cast<std::size_t>(i)] * hj;
      }
      const auto f = h[static_cast<std::size_t>(k)], gg = h[static_cast<std::size_t>(k) + 1];
      const auto rr = std::hypot(f, gg);
      cs.push_back(f / rr);
      sn.push_back(gg / rr);
      h[static_cast<std::size_t>(k)] = rr;
      h[static_cast<std::size_t>(k) + 1] = 0;
      g.push_back(-sn.back() * g[static_cast<std::size_t>(k)]);
      g[static_cast<std::size_t>(k)] *= cs.back();
      H.push_back(h);
      ++out.iterations;
      if (std::abs(g.back()) <= target) {
        ++k;
        out.converged = true;
        break;
      }
    }
    dense::Vec y(static_cast<std::size_t>(k), 0.0L);
    for (int i = k - 1; i >= 0; --i) {
      long double s = g[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) s -= H[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
      y[static_cast<std::size_t>(i)] = s / H[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }
    for (int j = 0; j < k; ++j) {
      for (std::size_t t = 0; t < n; ++t) out.x[t] += V[static_cast<std::size_t>(j)][t] * y[static_cast<std::size_t>(j)];
    }
    if (out.converged) return out;
  }
  return out;
}

TEST(BackwardError, Examples) {
  const auto a = identity(2);
  EXPECT_EQ(tb::normwise_backward_error(a, std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 2.0}), 0.0);
  EXPECT_EQ(tb::normwise_backward_error(a, std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 2.0}), 1.0);
  EXPECT_DOUBLE_EQ(tb::normwise_backward_error(identity(1), std::vector<double>{0.6}, std::vector<double>{1.0}), 0.25);
  EXPECT_TRUE(std::isinf(tb::normwise_backward_error(a, std::vector<double>{NAN, 0.0}, std::vector<double>{1.0, 2.0})));
}

TEST(Mpir, ToleranceTable) {
  EXPECT_EQ(tb::mpir_tolerance(8, 16, 32), 1e-3);
  EXPECT_EQ(tb::mpir_tolerance(16, 16, 32), 1e-3);
  EXPECT_EQ(tb::mpir_tolerance(16, 32, 32), 1e-6);
  EXPECT_EQ(tb::mpir_tolerance(16, 32, 64), 1e-9);
  EXPECT_FALSE(tb::mpir_tolerance(32, 16, 64).has_value());
  EXPECT_EQ(tb::kMpirMaxIterations, 100);
}

TEST(Mpir, IdentityConvergesImmediately) {
  using F32 = tb::Number<tb::float32>;
  const auto a = identity(4);
  const std::vector<double> b{0.5, -0.25, 1.0, 0.125};
  const auto r = tb::mpir<tb::Number<tb::float16>, F32, tb::Number<tb::float64>>(
      tb::cast_matrix<F32>(a), tb::cast_vector<F32>(b), tb::plan_lu(a), 1e-6);
  EXPECT_EQ(r.solve.status, tb::SolveStatus::ok);
  EXPECT_LE(r.solve.iterations, 1);
  EXPECT_EQ(tb::cast_vector<double>(r.solve.x), b);
}

// Dense restatement of the refinement loop for a 2 x 2 upper triangular system,
// where the factorization is the scaled matrix itself.
TEST(Mpir, UpperTriangularMatchesDenseLoop) {
  using P16 = tb::Number<tb::posit16>;
  using P32 = tb::Number<tb::posit32>;
  const auto a = dense::to_csc({{1.0, 1e5}, {0.0, 1.0}});
  const std::vector<double> b{1e5 + 1.0, 1.0};
  const double tol = *tb::mpir_tolerance(16, 32, 32);

  const P32 a00(1.0), a01(1e5), a11(1.0), b0(b[0]), b1(b[1]);
  const auto lo = [](P32 v) { return P16(v.to_extended()); };
  const auto up = [](P16 v) { return P32(v.to_extended()); };
  const P16 n0 = abs(lo(a00)) + abs(lo(a01)), n1 = abs(lo(a11));
  const P16 u00 = lo(a00) / n0, u01 = lo(a01) / n0, u11 = lo(a11) / n1;
  const P16 y1 = (lo(b1) / n1) / u11;
  const P16 y0 = ((lo(b0) / n0) - u01 * y1) / u00;
  P32 x0 = up(y0), x1 = up(y1);
  std::vector<double> history;
  int corrections = 0;
  for (;;) {
    const P32 r0 = b0 - (P32(0.0) + a00 * x0 + a01 * x1);
    const P32 r1 = b1 - (P32(0.0) + a11 * x1);
    const P32 anorm = abs(a00) + abs(a01) > abs(a11) ? abs(a00) + abs(a01) : abs(a11);
    const P32 xn = abs(x0) > abs(x1) ? abs(x0) : abs(x1);
    const P32 bn = abs(b0) > abs(b1) ? abs(b0) : abs(b1);
    const P32 rn = abs(r0) > abs(r1) ? abs(r0) : abs(r1);
    const double eta = (rn / (anorm * xn + bn)).to_double();
    history.push_back(eta);
    if (eta <= tol || corrections == tb::kMpirMaxIterations) break;
    const P32 c1 = (r1 / up(n1)) / up(u11);
    const P32 c0 = ((r0 / up(n0)) - up(u01) * c1) / up(u00);
    x0 = x0 + c0;
    x1 = x1 + c1;
    ++corrections;
  }

  const auto r = tb::mpir<P16, P32, P32>(tb::cast_matrix<P32>(a), tb::cast_vector<P32>(b), tb::plan_lu(a), tol);
  EXPECT_EQ(r.solve.status, tb::SolveStatus::ok);
  EXPECT_GE(r.solve.iterations, 1);
  EXPECT_EQ(r.solve.iterations, corrections);
  EXPECT_EQ(r.history, history);
  ASSERT_EQ(r.solve.x.size(), 2u);
  EXPECT_EQ(r.solve.x[0].code(), x0.code());
  EXPECT_EQ(r.solve.x[1].code(), x1.code());
}

TEST(Mpir, BackwardErrorDecreasesOnWellConditionedSystems) {
  using F16 = tb::Number<tb::float16>;
  using F32 = tb::Number<tb::float32>;
  using F64 = tb::Number<tb::float64>;
  std::mt19937_64 rng(404);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 15; ++trial) {
    const auto n = 5 + static_cast<std::size_t>(rng() % 20);
    const auto a = dense::to_csc(dense::random_matrix(rng, n, 0.3, 1.0));
    if (dense::cond1(dense::from_csc(a)) > 1e3) continue;
    ++checked;
    std::vector<double> b(n);
    for (auto& v : b) v = std::uniform_real_distribution<double>(-1, 1)(rng);
    const auto r = tb::mpir<F16, F32, F64>(tb::cast_matrix<F32>(a), tb::cast_vector<F32>(b), tb::plan_lu(a), 1e-6);
    EXPECT_EQ(r.solve.status, tb::SolveStatus::ok) << trial;
    for (std::size_t i = 1; i < r.history.size(); ++i) EXPECT_LT(r.history[i], r.history[i - 1]) << trial;
  }
  EXPECT_GE(checked, 10);
}

TEST(Mpir, LowPrecisionOverflowIsReported) {
  using F8 = tb::Number<tb::float8>;
  using F16 = tb::Number<tb::float16>;
  using F32 = tb::Number<tb::float32>;
  // the row norm 300 + 300 exceeds the E4M3 range
  const auto a = dense::to_csc({{300.0, 300.0}, {0.0, 1.0}});
  const auto r = tb::mpir<F8, F16, F32>(tb::cast_matrix<F16>(a), tb::cast_vector<F16>(std::vector<double>{1.0, 1.0}),
                                        tb::plan_lu(a), 1e-3);
  EXPECT_EQ(r.solve.status, tb::SolveStatus::singular_failure);
}

TEST(Ilu0, TridiagonalIsExact) {
  const auto a = tridiagonal(12, -1.0, 4.0, -2.0);
  const auto ilu = tb::ilu0_factor(a);
  const auto lu = tb::lu_factor(a);
  ASSERT_TRUE(ilu.ok);
  ASSERT_TRUE(lu.ok);
  EXPECT_EQ(ilu.factors.L, lu.factors.L);
  EXPECT_EQ(ilu.factors.U, lu.factors.U);
}

TEST(Ilu0, IdentityAndMissingDiagonal) {
  const auto f = tb::ilu0_factor(identity(3));
  ASSERT_TRUE(f.ok);
  EXPECT_EQ(f.factors.L, identity(3));
  EXPECT_EQ(f.factors.U, identity(3));
  const auto g = tb::ilu0_factor(dense::to_csc({{1.0, 1.0}, {1.0, 0.0}}));
  EXPECT_FALSE(g.ok);
  EXPECT_EQ(g.failed_column, 1);
}

TEST(Ilu0, ArrowheadDropsFillButStaysOnPattern) {
  // dense last row and column: no fill, exact; dense first row and column: fill everywhere
  std::vector<std::vector<double>> m(5, std::vector<double>(5, 0.0));
  for (int i = 0; i < 5; ++i) {
    m[i][i] = 5.0;
    m[0][i] = m[i][0] = 1.0;
  }
  m[0][0] = 5.0;
  const auto a = dense::to_csc(m);
  const auto f = tb::ilu0_factor(a);
  ASSERT_TRUE(f.ok);
  const auto A = tb::to_dense(a), L = tb::to_dense(f.factors.L), U = tb::to_dense(f.factors.U);
  double diff = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      if (A[i][j] == 0.0) {
        EXPECT_EQ(L[i][j], 0.0);
        EXPECT_EQ(U[i][j], 0.0);
      }
      double s = 0;
      for (std::size_t k = 0; k < 5; ++k) s += L[i][k] * U[k][j];
      diff = std::max(diff, std::abs(s - A[i][j]));
    }
  }
  EXPECT_GT(diff, 0.0);
}

TEST(Gmres, ParameterTable) {
  EXPECT_DOUBLE_EQ(tb::gmres_tolerance(8), std::sqrt(0.125));
  EXPECT_DOUBLE_EQ(tb::gmres_tolerance(16), std::ldexp(1.0, -5));
  EXPECT_DOUBLE_EQ(tb::gmres_tolerance(32), std::sqrt(std::ldexp(1.0, -23)));
  EXPECT_DOUBLE_EQ(tb::gmres_tolerance(64), std::ldexp(1.0, -26));
  const auto p = tb::gmres_parameters(50, 16);
  EXPECT_EQ(p.restart, 20);
  EXPECT_EQ(p.max_iter, 50);
  EXPECT_EQ(tb::gmres_parameters(7, 32).restart, 7);
  // every format of one width gets the same tolerance
  EXPECT_EQ(tb::gmres_parameters(10, 16).tol, tb::gmres_parameters(10, 16).tol);
}

TEST(Gmres, IdentityTakesOneIteration) {
  const auto a = identity(6);
  const std::vector<double> b{1, -1, 0.5, 2, 3, -4};
  const auto r = tb::gmres(a, b, identity_preconditioner(6), 6, 6, 1e-8);
  EXPECT_EQ(r.status, tb::SolveStatus::ok);
  EXPECT_EQ(r.iterations, 1);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_NEAR(r.x[i], b[i], 1e-15);
}

TEST(Gmres, ExactPreconditionerConvergesInOneStep) {
  const auto a = tridiagonal(20, -1.0, 4.0, -1.5);
  const auto m = tb::ilu0_factor(a);
  ASSERT_TRUE(m.ok);
  std::vector<double> b(20, 1.0);
  const auto r = tb::gmres(a, b, m.factors, 20, 20, 1e-10);
  EXPECT_EQ(r.status, tb::SolveStatus::ok);
  EXPECT_EQ(r.iterations, 1);
}

void compare_with_dense(const tb::CscMatrix<double>& a, const tb::LuFactors<double>& m, int restart, double tol) {
  const auto n = static_cast<std::size_t>(a.n_cols);
  std::mt19937_64 rng(n);
  std::vector<double> b(n);
  for (auto& v : b) v = std::uniform_real_distribution<double>(-1, 1)(rng);
  const auto max_iter = static_cast<int>(n) * 4;
  const auto r = tb::gmres(a, b, m, restart, max_iter, tol);
  const auto o = dense_gmres(dense::from_csc(a), product(dense::from_csc(m.L), dense::from_csc(m.U)),
                             dense::Vec(b.begin(), b.end()), restart, max_iter, tol);
  ASSERT_TRUE(o.converged);
  EXPECT_EQ(r.status, tb::SolveStatus::ok);
  EXPECT_NEAR(r.iterations, o.iterations, 1);
  EXPECT_LT(dense::rel_err2(r.x, o.x), 1e-8);
}

TEST(Gmres, MatchesDenseReference) {
  const auto spd = tridiagonal(32, -1.0, 4.0, -1.0);
  compare_with_dense(spd, identity_preconditioner(32), 32, 1e-10);
  compare_with_dense(spd, identity_preconditioner(32), 5, 1e-10);
  const auto lap = laplacian2d(6);
  const auto m = tb::ilu0_factor(lap);
  ASSERT_TRUE(m.ok);
  compare_with_dense(lap, m.factors, 36, 1e-10);
  compare_with_dense(lap, m.factors, 4, 1e-10);
  compare_with_dense(lap, identity_preconditioner(36), 8, 1e-9);
}

TEST(Gmres, KrylovBasisIsOrthonormal) {
  const auto a = laplacian2d(5);
  std::vector<double> b(25);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = std::sin(static_cast<double>(i) + 1.0);
  int cycles = 0;
  const tb::GmresBasisObserver<double> observer = [&](const std::vector<std::vector<double>>& V, int k) {
    ++cycles;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j <= i; ++j) {
        double d = 0;
        for (std::size_t t = 0; t < V[0].size(); ++t) d += V[static_cast<std::size_t>(i)][t] * V[static_cast<std::size_t>(j)][t];
        EXPECT_NEAR(d, i == j ? 1.0 : 0.0, 1e-10) << i << "," << j;
      }
    }
  };
  const auto r = tb::gmres(a, b, identity_preconditioner(25), 6, 100, 1e-12, observer);
  EXPECT_EQ(r.status, tb::SolveStatus::ok);
  EXPECT_GE(cycles, 2);
}

TEST(Gmres, IterationLimitIsAFailure) {
  const auto a = laplacian2d(6);
  std::vector<double> b(36, 1.0);
  const auto r = tb::gmres(a, b, identity_preconditioner(36), 3, 4, 1e-14);
  EXPECT_EQ(r.status, tb::SolveStatus::max_iter_failure);
  EXPECT_EQ(r.iterations, 4);
}

TEST(Gmres, LowPrecisionRunsAreDeterministic) {
  using T8 = tb::Number<tb::takum8>;
  const auto a = tb::cast_matrix<T8>(tridiagonal(10, -1.0, 4.0, -1.0));
  const auto m = tb::ilu0_factor(a);
  ASSERT_TRUE(m.ok);
  const auto b = tb::cast_vector<T8>(std::vector<double>(10, 1.0));
  const auto p = tb::gmres_parameters(10, 8);
  const auto r1 = tb::gmres(a, b, m.factors, p.restart, p.max_iter, p.tol);
  const auto r2 = tb::gmres(a, b, m.factors, p.restart, p.max_iter, p.tol);
  EXPECT_EQ(r1.status, r2.status);
  EXPECT_EQ(r1.iterations, r2.iterations);
  for (std::size_t i = 0; i < r1.x.size(); ++i) EXPECT_EQ(r1.x[i].code(), r2.x[i].code());
}

}  // namespace
