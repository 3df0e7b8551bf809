#ifndef TAPERBENCH_SOLVERS_LU_HPP
#define TAPERBENCH_SOLVERS_LU_HPP

#include <algorithm>
#include <vector>

#include "taperbench/formats/number.hpp"
#include "taperbench/matrices/csc.hpp"
#include "taperbench/solvers/triangular.hpp"

namespace taperbench {

/// L is unit lower triangular with the unit diagonal stored first in each
/// column; U is upper triangular with the diagonal stored last.
template <class T>
struct LuFactors {
  CscMatrix<T> L;
  CscMatrix<T> U;
};

template <class T>
struct LuResult {
  bool ok = false;
  std::int64_t failed_column = -1;
  LuFactors<T> factors;
};

namespace detail {

/// Topological order of the nodes reachable from the pattern of column k of
/// `a` in the graph of the first k columns of `l`.
template <class T, class U>
void sparse_reach(const CscMatrix<T>& a, std::int64_t k, const CscMatrix<U>& l, std::vector<std::int64_t>& mark,
                  std::vector<std::int32_t>& stack, std::vector<std::int64_t>& pos, std::vector<std::int32_t>& out) {
  out.clear();
  for (auto p0 = a.col_ptr[k]; p0 < a.col_ptr[k + 1]; ++p0) {
    const auto start = a.row_idx[p0];
    if (mark[static_cast<std::size_t>(start)] == k) continue;
    stack.clear();
    stack.push_back(start);
    mark[static_cast<std::size_t>(start)] = k;
    pos[static_cast<std::size_t>(start)] = start < k ? l.col_ptr[start] : 0;
    while (!stack.empty()) {
      const auto j = stack.back();
      bool descended = false;
      if (j < k) {
        const auto end = l.col_ptr[j + 1];
        for (auto p = pos[static_cast<std::size_t>(j)]; p < end; ++p) {
          const auto child = l.row_idx[p];
          if (mark[static_cast<std::size_t>(child)] == k) continue;
          pos[static_cast<std::size_t>(j)] = p + 1;
          mark[static_cast<std::size_t>(child)] = k;
          pos[static_cast<std::size_t>(child)] = child < k ? l.col_ptr[child] : 0;
          stack.push_back(child);
          descended = true;
          break;
        }
      }
      if (!descended) {
        stack.pop_back();
        out.push_back(j);
      }
    }
  }
  std::reverse(out.begin(), out.end());
}

}  // namespace detail

/// Left-looking LU without pivoting; the pivot of column k is entry (k, k)
/// after the updates. Fails on a zero, NaN, NaR or infinite pivot.
template <class T>
LuResult<T> lu_factor(const CscMatrix<T>& a) {
  const std::int64_t n = a.n_cols;
  LuResult<T> res;
  auto& L = res.factors.L;
  auto& U = res.factors.U;
  L.n_rows = L.n_cols = U.n_rows = U.n_cols = n;
  L.col_ptr.assign(1, 0);
  U.col_ptr.assign(1, 0);

  std::vector<T> x(static_cast<std::size_t>(n), T(0.0));
  std::vector<std::int64_t> mark(static_cast<std::size_t>(n), -1), pos(static_cast<std::size_t>(n), 0);
  std::vector<std::int32_t> stack, reach, lower, upper;
  for (std::int64_t k = 0; k < n; ++k) {
    detail::sparse_reach(a, k, L, mark, stack, pos, reach);
    for (auto p = a.col_ptr[k]; p < a.col_ptr[k + 1]; ++p) x[static_cast<std::size_t>(a.row_idx[p])] = a.values[p];
    for (auto j : reach) {
      if (j >= k) continue;
      const T xj = x[static_cast<std::size_t>(j)];
      for (auto p = L.col_ptr[j] + 1; p < L.col_ptr[j + 1]; ++p) {
        auto& xi = x[static_cast<std::size_t>(L.row_idx[p])];
        xi = xi - L.values[p] * xj;
      }
    }
    upper.clear();
    lower.clear();
    bool has_diag = false;
    for (auto i : reach) {
      if (i < k) upper.push_back(i);
      if (i > k) lower.push_back(i);
      if (i == k) has_diag = true;
    }
    std::sort(upper.begin(), upper.end());
    std::sort(lower.begin(), lower.end());
    const T pivot = has_diag ? x[static_cast<std::size_t>(k)] : T(0.0);
    if (is_zero_value(pivot) || is_invalid(pivot)) {
      res.failed_column = k;
      return res;
    }
    for (auto i : upper) {
      U.row_idx.push_back(i);
      U.values.push_back(x[static_cast<std::size_t>(i)]);
    }
    U.row_idx.push_back(static_cast<std::int32_t>(k));
    U.values.push_back(pivot);
    U.col_ptr.push_back(U.nnz());
    L.row_idx.push_back(static_cast<std::int32_t>(k));
    L.values.push_back(T(1.0));
    for (auto i : lower) {
      L.row_idx.push_back(i);
      L.values.push_back(x[static_cast<std::size_t>(i)] / pivot);
    }
    L.col_ptr.push_back(L.nnz());
    for (auto i : reach) x[static_cast<std::size_t>(i)] = T(0.0);
  }
  res.ok = true;
  return res;
}

template <class T>
std::vector<T> lu_solve(const LuFactors<T>& f, std::vector<T> b) {
  unit_lower_solve(f.L, b);
  upper_solve(f.U, b);
  return b;
}

}  // namespace taperbench

#endif
