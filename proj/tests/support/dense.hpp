#ifndef TAPERBENCH_TESTS_SUPPORT_DENSE_HPP
#define TAPERBENCH_TESTS_SUPPORT_DENSE_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "taperbench/matrices/csc.hpp"

namespace dense {

using Mat = std::vector<std::vector<long double>>;
using Vec = std::vector<long double>;

inline Mat from_csc(const taperbench::CscMatrix<double>& a) {
  Mat m(static_cast<std::size_t>(a.n_rows), Vec(static_cast<std::size_t>(a.n_cols), 0.0L));
  for (std::int64_t j = 0; j < a.n_cols; ++j) {
    for (auto p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) m[static_cast<std::size_t>(a.row_idx[p])][j] = a.values[p];
  }
  return m;
}

inline taperbench::CscMatrix<double> to_csc(const std::vector<std::vector<double>>& m) {
  std::vector<taperbench::Triplet<double>> t;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (m[i][j] != 0.0) t.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), m[i][j]});
    }
  }
  const auto cols = m.empty() ? 0 : static_cast<std::int64_t>(m[0].size());
  return taperbench::from_triplets<double>(static_cast<std::int64_t>(m.size()), cols, std::move(t));
}

/// Gaussian elimination with partial pivoting in long double.
inline Vec solve(Mat a, Vec b) {
  const auto n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(a[i][k]) > std::fabs(a[p][k])) p = i;
    }
    if (a[p][k] == 0.0L) throw std::runtime_error("singular");
    std::swap(a[p], a[k]);
    std::swap(b[p], b[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const long double f = a[i][k] / a[k][k];
      if (f == 0.0L) continue;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  Vec x(n);
  for (std::size_t i = n; i-- > 0;) {
    long double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

inline Mat inverse(const Mat& a) {
  const auto n = a.size();
  Mat inv(n, Vec(n));
  for (std::size_t j = 0; j < n; ++j) {
    Vec e(n, 0.0L);
    e[j] = 1.0L;
    const auto col = solve(a, e);
    for (std::size_t i = 0; i < n; ++i) inv[i][j] = col[i];
  }
  return inv;
}

inline long double norm1(const Mat& a) {
  long double best = 0.0L;
  for (std::size_t j = 0; j < a[0].size(); ++j) {
    long double s = 0.0L;
    for (const auto& row : a) s += std::fabs(row[j]);
    best = std::max(best, s);
  }
  return best;
}

inline long double cond1(const Mat& a) { return norm1(a) * norm1(inverse(a)); }

/// Random sparse-ish square matrix with a strong enough diagonal to be
/// nonsingular; density in (0, 1].
inline std::vector<std::vector<double>> random_matrix(std::mt19937_64& rng, std::size_t n, double density,
                                                      double diag_boost) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || coin(rng) < density) m[i][j] = u(rng);
    }
    m[i][i] += (m[i][i] >= 0 ? diag_boost : -diag_boost);
  }
  return m;
}

inline long double rel_err2(const std::vector<double>& x, const Vec& ref) {
  long double d = 0.0L;
  long double r = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d += (x[i] - ref[i]) * (x[i] - ref[i]);
    r += ref[i] * ref[i];
  }
  return std::sqrt(d / r);
}

}  // namespace dense

#endif
