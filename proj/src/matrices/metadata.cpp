#include "taperbench/matrices/metadata.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "taperbench/orderings/minimum_degree.hpp"
#include "taperbench/orderings/plan.hpp"
#include "taperbench/orderings/reference_lu.hpp"
#include "taperbench/solvers/lu.hpp"
#include "taperbench/solvers/qr.hpp"

namespace taperbench {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double vec_norm1(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

}  // namespace

double norm1(const CscMatrix<double>& a) {
  double best = 0.0;
  for (std::int64_t j = 0; j < a.n_cols; ++j) {
    double s = 0.0;
    for (auto p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) s += std::abs(a.values[p]);
    best = std::max(best, s);
  }
  return best;
}

double estimate_cond1(const CscMatrix<double>& a) {
  if (!a.is_square() || a.n_cols == 0) return kInf;
  const auto outcome = factorize_reference(a);
  if (!outcome.ok) return kInf;
  const auto& f = outcome.lu;
  const auto n = static_cast<std::size_t>(a.n_cols);

  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  double est = 0.0;
  std::size_t last_j = n;
  for (int iter = 0; iter < 5; ++iter) {
    const auto y = reference_solve(f, x);
    const double ny = vec_norm1(y);
    if (iter > 0 && ny <= est) break;
    est = ny;
    std::vector<double> xi(n);
    for (std::size_t i = 0; i < n; ++i) xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    const auto z = reference_transpose_solve(f, xi);
    std::size_t j = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(z[i]) > std::abs(z[j])) j = i;
    }
    double ztx = 0.0;
    for (std::size_t i = 0; i < n; ++i) ztx += z[i] * x[i];
    if (iter > 0 && (std::abs(z[j]) <= ztx || j == last_j)) break;
    last_j = j;
    std::fill(x.begin(), x.end(), 0.0);
    x[j] = 1.0;
  }
  // Higham's alternating test vector guards against the estimator stalling.
  std::vector<double> alt(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = n > 1 ? 1.0 + static_cast<double>(i) / static_cast<double>(n - 1) : 1.0;
    alt[i] = (i % 2 == 0) ? mag : -mag;
  }
  est = std::max(est, 2.0 * vec_norm1(reference_solve(f, alt)) / (3.0 * static_cast<double>(n)));

  const double k = norm1(a) * est;
  if (!std::isfinite(k)) return kInf;
  return std::max(1.0, k);
}

bool is_full_rank(const CscMatrix<double>& a) {
  if (!a.is_square() || a.n_cols == 0) return false;
  const auto plan = plan_qr(a);
  const auto qr = qr_factor(permute(a, plan.row_perm, plan.col_perm));
  if (!qr.ok) return false;
  const auto& R = qr.factors.R;
  double max_diag = 0.0;
  for (std::int64_t k = 0; k < R.n_cols; ++k) max_diag = std::max(max_diag, std::abs(R.values[R.col_ptr[k + 1] - 1]));
  if (!std::isfinite(max_diag)) return false;
  const double bar = static_cast<double>(a.n_cols) * std::numeric_limits<double>::epsilon() * max_diag;
  for (std::int64_t k = 0; k < R.n_cols; ++k) {
    if (!(std::abs(R.values[R.col_ptr[k + 1] - 1]) > bar)) return false;
  }
  return true;
}

bool is_symmetric(const CscMatrix<double>& a) { return a.is_square() && transpose(a) == a; }

bool is_positive_definite(const CscMatrix<double>& a) {
  if (!is_symmetric(a) || a.n_cols == 0) return false;
  const auto order = minimum_degree(symmetric_pattern(a));
  const auto lu = lu_factor(permute(a, order, order));
  if (!lu.ok) return false;
  const auto& U = lu.factors.U;
  for (std::int64_t k = 0; k < U.n_cols; ++k) {
    const double d = U.values[U.col_ptr[k + 1] - 1];
    if (!(d > 0.0) || !std::isfinite(d)) return false;
  }
  return true;
}

MatrixMetadata compute_metadata(const std::string& name, const CscMatrix<double>& a) {
  MatrixMetadata m;
  m.name = name;
  m.n_rows = a.n_rows;
  m.n_cols = a.n_cols;
  m.nnz = a.nnz();
  if (!a.values.empty()) {
    m.abs_min_nonzero = kInf;
    for (double v : a.values) {
      m.abs_min_nonzero = std::min(m.abs_min_nonzero, std::abs(v));
      m.abs_max = std::max(m.abs_max, std::abs(v));
    }
  }
  m.is_square = a.is_square();
  m.cond1_estimate = estimate_cond1(a);
  m.is_full_rank = is_full_rank(a);
  m.is_symmetric = is_symmetric(a);
  m.is_posdef = is_positive_definite(a);
  return m;
}

}  // namespace taperbench
