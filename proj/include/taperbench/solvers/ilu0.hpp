#ifndef TAPERBENCH_SOLVERS_ILU0_HPP
#define TAPERBENCH_SOLVERS_ILU0_HPP

#include <vector>

#include "taperbench/solvers/lu.hpp"

namespace taperbench {

/// Left-looking ILU(0): the LU recurrences evaluated only on the pattern of
/// A. Fails on a structurally missing, zero or invalid diagonal.
template <class T>
LuResult<T> ilu0_factor(const CscMatrix<T>& a) {
  const auto n = a.n_cols;
  LuResult<T> res;
  auto& L = res.factors.L;
  auto& U = res.factors.U;
  L.n_rows = L.n_cols = U.n_rows = U.n_cols = n;
  std::vector<T> x(static_cast<std::size_t>(n), T(0.0));
  std::vector<std::int64_t> mark(static_cast<std::size_t>(n), -1);
  for (std::int64_t k = 0; k < n; ++k) {
    const auto begin = a.col_ptr[k];
    const auto end = a.col_ptr[k + 1];
    for (auto p = begin; p < end; ++p) {
      mark[static_cast<std::size_t>(a.row_idx[p])] = k;
      x[static_cast<std::size_t>(a.row_idx[p])] = a.values[p];
    }
    for (auto p = begin; p < end && a.row_idx[p] < k; ++p) {
      const auto j = a.row_idx[p];
      const T xj = x[static_cast<std::size_t>(j)];
      for (auto q = L.col_ptr[j] + 1; q < L.col_ptr[j + 1]; ++q) {
        const auto i = L.row_idx[q];
        if (mark[static_cast<std::size_t>(i)] != k) continue;
        auto& xi = x[static_cast<std::size_t>(i)];
        xi = xi - L.values[q] * xj;
      }
    }
    const T pivot = mark[static_cast<std::size_t>(k)] == k ? x[static_cast<std::size_t>(k)] : T(0.0);
    if (is_zero_value(pivot) || is_invalid(pivot)) {
      res.failed_column = k;
      return res;
    }
    L.row_idx.push_back(static_cast<std::int32_t>(k));
    L.values.push_back(T(1.0));
    for (auto p = begin; p < end; ++p) {
      const auto i = a.row_idx[p];
      const T xi = x[static_cast<std::size_t>(i)];
      if (i < k) {
        U.row_idx.push_back(i);
        U.values.push_back(xi);
      } else if (i > k) {
        L.row_idx.push_back(i);
        L.values.push_back(xi / pivot);
      }
      x[static_cast<std::size_t>(i)] = T(0.0);
    }
    U.row_idx.push_back(static_cast<std::int32_t>(k));
    U.values.push_back(pivot);
    U.col_ptr.push_back(U.nnz());
    L.col_ptr.push_back(L.nnz());
  }
  res.ok = true;
  return res;
}

}  // namespace taperbench

#endif
