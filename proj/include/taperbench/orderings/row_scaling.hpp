#ifndef TAPERBENCH_ORDERINGS_ROW_SCALING_HPP
#define TAPERBENCH_ORDERINGS_ROW_SCALING_HPP

#include <vector>

#include "taperbench/formats/number.hpp"
#include "taperbench/matrices/csc.hpp"
#include "taperbench/solvers/status.hpp"

namespace taperbench {

template <class T>
struct RowScaling {
  SolveStatus status = SolveStatus::ok;
  std::vector<T> norms;  // divide row i by norms[i]
};

/// Row 1-norms accumulated in T, in CSC storage order. A row summing to zero
/// is singular; an invalid or non-finite norm is a range failure.
template <class T>
RowScaling<T> row_scaling(const CscMatrix<T>& a) {
  RowScaling<T> s;
  s.norms.assign(static_cast<std::size_t>(a.n_rows), T(0.0));
  for (std::int64_t p = 0; p < a.nnz(); ++p) {
    auto& acc = s.norms[static_cast<std::size_t>(a.row_idx[p])];
    acc = acc + magnitude(a.values[p]);
  }
  for (const auto& v : s.norms) {
    if (is_invalid(v)) {
      s.status = SolveStatus::range_failure;
      return s;
    }
  }
  for (const auto& v : s.norms) {
    if (is_zero_value(v)) {
      s.status = SolveStatus::singular_failure;
      return s;
    }
  }
  return s;
}

template <class T>
void apply_row_scaling(CscMatrix<T>& a, const std::vector<T>& norms) {
  for (std::int64_t p = 0; p < a.nnz(); ++p) a.values[p] = a.values[p] / norms[static_cast<std::size_t>(a.row_idx[p])];
}

template <class T>
void apply_row_scaling(std::vector<T>& b, const std::vector<T>& norms) {
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = b[i] / norms[i];
}

}  // namespace taperbench

#endif
