#ifndef TAPERBENCH_SOLVERS_BACKWARD_ERROR_HPP
#define TAPERBENCH_SOLVERS_BACKWARD_ERROR_HPP

#include <limits>
#include <vector>

#include "taperbench/formats/number.hpp"
#include "taperbench/matrices/csc.hpp"

namespace taperbench {

template <class T>
T norm_inf(const std::vector<T>& v) {
  T m(0.0);
  for (const auto& x : v) {
    if (is_invalid(x)) return x;
    const T ax = magnitude(x);
    if (m < ax) m = ax;
  }
  return m;
}

/// max_i sum_j |a_ij|, rows accumulated in storage order.
template <class T>
T norm_inf(const CscMatrix<T>& a) {
  std::vector<T> rows(static_cast<std::size_t>(a.n_rows), T(0.0));
  for (std::int64_t p = 0; p < a.nnz(); ++p) {
    auto& r = rows[static_cast<std::size_t>(a.row_idx[p])];
    r = r + magnitude(a.values[p]);
  }
  return norm_inf(rows);
}

/// b - A x in T.
template <class T>
std::vector<T> residual(const CscMatrix<T>& a, const std::vector<T>& x, const std::vector<T>& b) {
  std::vector<T> r = b;
  for (std::int64_t j = 0; j < a.n_cols; ++j) {
    const T xj = x[static_cast<std::size_t>(j)];
    for (auto p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) {
      auto& ri = r[static_cast<std::size_t>(a.row_idx[p])];
      ri = ri - a.values[p] * xj;
    }
  }
  return r;
}

/// ||b - A x||_inf / (||A||_inf ||x||_inf + ||b||_inf), evaluated in T and
/// returned as binary64; +inf when any intermediate is invalid.
template <class T>
double normwise_backward_error(const CscMatrix<T>& a, const std::vector<T>& x, const std::vector<T>& b,
                               const T& a_norm) {
  const T num = norm_inf(residual(a, x, b));
  const T den = a_norm * norm_inf(x) + norm_inf(b);
  const T eta = num / den;
  if (is_invalid(eta)) return std::numeric_limits<double>::infinity();
  return ScalarTraits<T>::to_extended(eta).hi();
}

template <class T>
double normwise_backward_error(const CscMatrix<T>& a, const std::vector<T>& x, const std::vector<T>& b) {
  return normwise_backward_error(a, x, b, norm_inf(a));
}

}  // namespace taperbench

#endif
