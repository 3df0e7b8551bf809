#ifndef TAPERBENCH_SOLVERS_TRIANGULAR_HPP
#define TAPERBENCH_SOLVERS_TRIANGULAR_HPP

#include <vector>

#include "taperbench/matrices/csc.hpp"

namespace taperbench {

/// Solves L y = b in place for unit lower triangular L (diagonal stored first
/// in each column and not divided by).
template <class T>
void unit_lower_solve(const CscMatrix<T>& l, std::vector<T>& x) {
  for (std::int64_t k = 0; k < l.n_cols; ++k) {
    const T xk = x[static_cast<std::size_t>(k)];
    for (auto p = l.col_ptr[k]; p < l.col_ptr[k + 1]; ++p) {
      const auto i = l.row_idx[p];
      if (i == k) continue;
      auto& xi = x[static_cast<std::size_t>(i)];
      xi = xi - l.values[p] * xk;
    }
  }
}

/// Solves U y = b in place for upper triangular U (diagonal stored last in
/// each column).
template <class T>
void upper_solve(const CscMatrix<T>& u, std::vector<T>& x) {
  for (std::int64_t k = u.n_cols - 1; k >= 0; --k) {
    const auto last = u.col_ptr[k + 1] - 1;
    auto& xk = x[static_cast<std::size_t>(k)];
    xk = xk / u.values[last];
    for (auto p = u.col_ptr[k]; p < last; ++p) {
      auto& xi = x[static_cast<std::size_t>(u.row_idx[p])];
      xi = xi - u.values[p] * xk;
    }
  }
}

/// Solves U^T y = b in place.
template <class T>
void upper_transpose_solve(const CscMatrix<T>& u, std::vector<T>& x) {
  for (std::int64_t k = 0; k < u.n_cols; ++k) {
    const auto last = u.col_ptr[k + 1] - 1;
    T s = x[static_cast<std::size_t>(k)];
    for (auto p = u.col_ptr[k]; p < last; ++p) s = s - u.values[p] * x[static_cast<std::size_t>(u.row_idx[p])];
    x[static_cast<std::size_t>(k)] = s / u.values[last];
  }
}

/// Solves L^T y = b in place for unit lower triangular L.
template <class T>
void unit_lower_transpose_solve(const CscMatrix<T>& l, std::vector<T>& x) {
  for (std::int64_t k = l.n_cols - 1; k >= 0; --k) {
    T s = x[static_cast<std::size_t>(k)];
    for (auto p = l.col_ptr[k]; p < l.col_ptr[k + 1]; ++p) {
      const auto i = l.row_idx[p];
      if (i == k) continue;
      s = s - l.values[p] * x[static_cast<std::size_t>(i)];
    }
    x[static_cast<std::size_t>(k)] = s;
  }
}

}  // namespace taperbench

#endif
