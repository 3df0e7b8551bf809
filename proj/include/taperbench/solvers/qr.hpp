#ifndef TAPERBENCH_SOLVERS_QR_HPP
#define TAPERBENCH_SOLVERS_QR_HPP

#include <algorithm>
#include <functional>
#include <queue>
#include <vector>

#include "taperbench/formats/number.hpp"
#include "taperbench/matrices/csc.hpp"
#include "taperbench/solvers/triangular.hpp"

namespace taperbench {

/// H = I - tau v v^T acting on the rows listed in idx. An empty idx is the
/// identity.
template <class T>
struct HouseholderReflector {
  std::vector<std::int32_t> idx;
  std::vector<T> v;
  T tau{};
};

template <class T>
struct QrFactors {
  std::vector<HouseholderReflector<T>> reflectors;  // one per column
  CscMatrix<T> R;                                   // diagonal stored last
};

template <class T>
struct QrResult {
  bool ok = false;
  std::int64_t failed_column = -1;
  QrFactors<T> factors;
};

template <class T>
void apply_reflector(const HouseholderReflector<T>& h, std::vector<T>& y) {
  if (h.idx.empty()) return;
  T d(0.0);
  for (std::size_t t = 0; t < h.idx.size(); ++t) d = d + h.v[t] * y[static_cast<std::size_t>(h.idx[t])];
  const T w = h.tau * d;
  for (std::size_t t = 0; t < h.idx.size(); ++t) {
    auto& yi = y[static_cast<std::size_t>(h.idx[t])];
    yi = yi - h.v[t] * w;
  }
}

/// Left-looking sparse Householder QR of an m x n matrix (m >= n), one
/// reflector per column. Earlier reflectors are applied to a column exactly
/// when it has a structural nonzero among their rows. The column norm is a
/// plain sum of squares in T.
template <class T>
QrResult<T> qr_factor(const CscMatrix<T>& a) {
  const std::int64_t m = a.n_rows;
  const std::int64_t n = a.n_cols;
  QrResult<T> res;
  auto& R = res.factors.R;
  auto& refl = res.factors.reflectors;
  R.n_rows = n;
  R.n_cols = n;
  R.col_ptr.assign(1, 0);
  refl.reserve(static_cast<std::size_t>(n));

  std::vector<std::vector<std::int32_t>> row_reflectors(static_cast<std::size_t>(m));
  std::vector<T> x(static_cast<std::size_t>(m), T(0.0));
  std::vector<std::int64_t> in_pattern(static_cast<std::size_t>(m), -1);
  std::vector<std::int64_t> queued(static_cast<std::size_t>(n), -1);
  std::vector<std::int32_t> pattern, upper, below;
  std::priority_queue<std::int32_t, std::vector<std::int32_t>, std::greater<>> pending;

  for (std::int64_t k = 0; k < n; ++k) {
    pattern.clear();
    auto add_row = [&](std::int32_t r, std::int64_t after) {
      if (in_pattern[static_cast<std::size_t>(r)] == k) return;
      in_pattern[static_cast<std::size_t>(r)] = k;
      pattern.push_back(r);
      for (auto j : row_reflectors[static_cast<std::size_t>(r)]) {
        if (j > after && queued[static_cast<std::size_t>(j)] != k) {
          queued[static_cast<std::size_t>(j)] = k;
          pending.push(j);
        }
      }
    };
    for (auto p = a.col_ptr[k]; p < a.col_ptr[k + 1]; ++p) {
      add_row(a.row_idx[p], -1);
      x[static_cast<std::size_t>(a.row_idx[p])] = a.values[p];
    }
    while (!pending.empty()) {
      const auto j = pending.top();
      pending.pop();
      const auto& h = refl[static_cast<std::size_t>(j)];
      for (auto r : h.idx) add_row(r, j);
      apply_reflector(h, x);
    }

    upper.clear();
    below.clear();
    for (auto r : pattern) (r < k ? upper : below).push_back(r);
    std::sort(upper.begin(), upper.end());
    if (in_pattern[static_cast<std::size_t>(k)] != k) below.push_back(static_cast<std::int32_t>(k));
    std::sort(below.begin(), below.end());

    HouseholderReflector<T> h;
    T diag;
    const T x1 = x[static_cast<std::size_t>(k)];
    if (below.size() == 1) {
      diag = x1;
    } else {
      T sigma2(0.0);
      for (auto r : below) {
        const T v = x[static_cast<std::size_t>(r)];
        sigma2 = sigma2 + v * v;
      }
      const T sigma = square_root(sigma2);
      if (is_zero_value(sigma) || is_invalid(sigma)) {
        res.failed_column = k;
        return res;
      }
      const bool negative = x1 < T(0.0);
      h.idx = below;
      h.v.reserve(below.size());
      for (auto r : below) h.v.push_back(x[static_cast<std::size_t>(r)]);
      h.v[0] = negative ? x1 - sigma : x1 + sigma;
      diag = negative ? sigma : -sigma;
      h.tau = T(1.0) / (sigma * magnitude(h.v[0]));
      for (auto r : below) row_reflectors[static_cast<std::size_t>(r)].push_back(static_cast<std::int32_t>(k));
    }
    if (is_zero_value(diag) || is_invalid(diag)) {
      res.failed_column = k;
      return res;
    }
    for (auto r : upper) {
      R.row_idx.push_back(r);
      R.values.push_back(x[static_cast<std::size_t>(r)]);
    }
    R.row_idx.push_back(static_cast<std::int32_t>(k));
    R.values.push_back(diag);
    R.col_ptr.push_back(R.nnz());
    refl.push_back(std::move(h));
    for (auto r : pattern) x[static_cast<std::size_t>(r)] = T(0.0);
  }
  res.ok = true;
  return res;
}

/// Applies Q^T to b.
template <class T>
void apply_qt(const QrFactors<T>& f, std::vector<T>& b) {
  for (const auto& h : f.reflectors) apply_reflector(h, b);
}

/// Least-squares solution: apply Q^T, then back-substitute with R.
template <class T>
std::vector<T> qr_solve(const QrFactors<T>& f, std::vector<T> b) {
  apply_qt(f, b);
  b.resize(static_cast<std::size_t>(f.R.n_cols));
  upper_solve(f.R, b);
  return b;
}

}  // namespace taperbench

#endif
