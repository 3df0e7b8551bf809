#ifndef TAPERBENCH_MATRICES_CSC_HPP
#define TAPERBENCH_MATRICES_CSC_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace taperbench {

/// Compressed sparse column matrix. Row indices are strictly increasing
/// within each column.
template <class T>
struct CscMatrix {
  std::int64_t n_rows = 0;
  std::int64_t n_cols = 0;
  std::vector<std::int64_t> col_ptr{0};
  std::vector<std::int32_t> row_idx;
  std::vector<T> values;

  std::int64_t nnz() const { return static_cast<std::int64_t>(row_idx.size()); }
  bool is_square() const { return n_rows == n_cols; }

  friend bool operator==(const CscMatrix&, const CscMatrix&) = default;
};

template <class T>
struct Triplet {
  std::int64_t row;
  std::int64_t col;
  T value;
};

template <class T>
bool is_well_formed(const CscMatrix<T>& a) {
  if (a.n_rows < 0 || a.n_cols < 0) return false;
  if (static_cast<std::int64_t>(a.col_ptr.size()) != a.n_cols + 1) return false;
  if (a.col_ptr.front() != 0 || a.col_ptr.back() != a.nnz()) return false;
  if (a.values.size() != a.row_idx.size()) return false;
  for (std::int64_t j = 0; j < a.n_cols; ++j) {
    if (a.col_ptr[j] > a.col_ptr[j + 1]) return false;
    for (std::int64_t p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) {
      if (a.row_idx[p] < 0 || a.row_idx[p] >= a.n_rows) return false;
      if (p > a.col_ptr[j] && a.row_idx[p - 1] >= a.row_idx[p]) return false;
    }
  }
  return true;
}

/// Builds a CSC matrix, summing duplicates and dropping entries that are
/// (or sum to) zero.
template <class T>
CscMatrix<T> from_triplets(std::int64_t n_rows, std::int64_t n_cols, std::vector<Triplet<T>> entries) {
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= n_rows || e.col < 0 || e.col >= n_cols) {
      throw std::out_of_range("triplet index out of bounds");
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet<T>& x, const Triplet<T>& y) {
    return x.col != y.col ? x.col < y.col : x.row < y.row;
  });
  CscMatrix<T> a;
  a.n_rows = n_rows;
  a.n_cols = n_cols;
  a.col_ptr.assign(static_cast<std::size_t>(n_cols + 1), 0);
  std::size_t i = 0;
  while (i < entries.size()) {
    const auto row = entries[i].row;
    const auto col = entries[i].col;
    T sum = entries[i].value;
    std::size_t j = i + 1;
    while (j < entries.size() && entries[j].row == row && entries[j].col == col) sum += entries[j++].value;
    if (!(sum == T(0))) {
      a.row_idx.push_back(static_cast<std::int32_t>(row));
      a.values.push_back(sum);
      ++a.col_ptr[static_cast<std::size_t>(col + 1)];
    }
    i = j;
  }
  std::partial_sum(a.col_ptr.begin(), a.col_ptr.end(), a.col_ptr.begin());
  return a;
}

template <class T>
CscMatrix<T> transpose(const CscMatrix<T>& a) {
  CscMatrix<T> t;
  t.n_rows = a.n_cols;
  t.n_cols = a.n_rows;
  t.col_ptr.assign(static_cast<std::size_t>(a.n_rows + 1), 0);
  for (auto r : a.row_idx) ++t.col_ptr[static_cast<std::size_t>(r) + 1];
  std::partial_sum(t.col_ptr.begin(), t.col_ptr.end(), t.col_ptr.begin());
  t.row_idx.resize(a.row_idx.size());
  t.values.resize(a.values.size());
  std::vector<std::int64_t> next(t.col_ptr.begin(), t.col_ptr.end() - 1);
  for (std::int64_t j = 0; j < a.n_cols; ++j) {
    for (std::int64_t p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) {
      const auto q = next[static_cast<std::size_t>(a.row_idx[p])]++;
      t.row_idx[q] = static_cast<std::int32_t>(j);
      t.values[q] = a.values[p];
    }
  }
  return t;
}

/// Same pattern, values mapped through fn.
template <class U, class T, class Fn>
CscMatrix<U> map_values(const CscMatrix<T>& a, Fn fn) {
  CscMatrix<U> b;
  b.n_rows = a.n_rows;
  b.n_cols = a.n_cols;
  b.col_ptr = a.col_ptr;
  b.row_idx = a.row_idx;
  b.values.reserve(a.values.size());
  for (const auto& v : a.values) b.values.push_back(fn(v));
  return b;
}

/// Inverse of a permutation given as new-position -> old-index.
inline std::vector<std::int32_t> inverse_permutation(const std::vector<std::int32_t>& p) {
  std::vector<std::int32_t> inv(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) inv[static_cast<std::size_t>(p[k])] = static_cast<std::int32_t>(k);
  return inv;
}

inline bool is_permutation_of_range(const std::vector<std::int32_t>& p) {
  std::vector<char> seen(p.size(), 0);
  for (auto v : p) {
    if (v < 0 || static_cast<std::size_t>(v) >= p.size() || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

/// B(i, j) = A(row_perm[i], col_perm[j]).
template <class T>
CscMatrix<T> permute(const CscMatrix<T>& a, const std::vector<std::int32_t>& row_perm,
                     const std::vector<std::int32_t>& col_perm) {
  const auto rinv = inverse_permutation(row_perm);
  CscMatrix<T> b;
  b.n_rows = a.n_rows;
  b.n_cols = a.n_cols;
  b.col_ptr.assign(1, 0);
  b.row_idx.reserve(a.row_idx.size());
  b.values.reserve(a.values.size());
  std::vector<std::pair<std::int32_t, std::int64_t>> col;
  for (std::int64_t k = 0; k < a.n_cols; ++k) {
    const auto j = col_perm[static_cast<std::size_t>(k)];
    col.clear();
    for (auto p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) {
      col.emplace_back(rinv[static_cast<std::size_t>(a.row_idx[p])], p);
    }
    std::sort(col.begin(), col.end());
    for (const auto& [r, p] : col) {
      b.row_idx.push_back(r);
      b.values.push_back(a.values[p]);
    }
    b.col_ptr.push_back(b.nnz());
  }
  return b;
}

/// y = A x in T arithmetic, accumulating each row in column order.
template <class T>
std::vector<T> multiply(const CscMatrix<T>& a, const std::vector<T>& x) {
  std::vector<T> y(static_cast<std::size_t>(a.n_rows), T(0.0));
  for (std::int64_t j = 0; j < a.n_cols; ++j) {
    const T xj = x[static_cast<std::size_t>(j)];
    for (auto p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) {
      auto& yi = y[static_cast<std::size_t>(a.row_idx[p])];
      yi = yi + a.values[p] * xj;
    }
  }
  return y;
}

template <class T>
std::vector<std::vector<T>> to_dense(const CscMatrix<T>& a) {
  std::vector<std::vector<T>> d(static_cast<std::size_t>(a.n_rows),
                                std::vector<T>(static_cast<std::size_t>(a.n_cols), T(0.0)));
  for (std::int64_t j = 0; j < a.n_cols; ++j) {
    for (auto p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) {
      d[static_cast<std::size_t>(a.row_idx[p])][static_cast<std::size_t>(j)] = a.values[p];
    }
  }
  return d;
}

}  // namespace taperbench

#endif
