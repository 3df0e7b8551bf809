#ifndef TAPERBENCH_SOLVERS_DIRECT_HPP
#define TAPERBENCH_SOLVERS_DIRECT_HPP

#include <vector>

#include "taperbench/orderings/plan.hpp"
#include "taperbench/orderings/row_scaling.hpp"
#include "taperbench/solvers/lu.hpp"
#include "taperbench/solvers/qr.hpp"
#include "taperbench/solvers/status.hpp"

namespace taperbench {

template <class T>
std::vector<T> permute_vector(const std::vector<T>& b, const std::vector<std::int32_t>& perm) {
  std::vector<T> out(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) out[k] = b[static_cast<std::size_t>(perm[k])];
  return out;
}

template <class T>
std::vector<T> unpermute_vector(const std::vector<T>& y, const std::vector<std::int32_t>& perm) {
  std::vector<T> out(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) out[static_cast<std::size_t>(perm[k])] = y[k];
  return out;
}

template <class T>
bool all_valid(const std::vector<T>& x) {
  for (const auto& v : x) {
    if (is_invalid(v)) return false;
  }
  return true;
}

/// Row-scaled, plan-permuted non-pivoting LU solve in T.
template <class T>
SolveResult<T> solve_with_lu(const CscMatrix<T>& a, const std::vector<T>& b, const StructuralPlan& plan) {
  SolveResult<T> res;
  const auto scaling = row_scaling(a);
  if (scaling.status != SolveStatus::ok) {
    res.status = scaling.status;
    return res;
  }
  auto as = a;
  auto bs = b;
  apply_row_scaling(as, scaling.norms);
  apply_row_scaling(bs, scaling.norms);
  const auto f = lu_factor(permute(as, plan.row_perm, plan.col_perm));
  if (!f.ok) {
    res.status = SolveStatus::singular_failure;
    return res;
  }
  const auto y = lu_solve(f.factors, permute_vector(bs, plan.row_perm));
  if (!all_valid(y)) {
    res.status = SolveStatus::range_failure;
    return res;
  }
  res.x = unpermute_vector(y, plan.col_perm);
  return res;
}

/// Plan-permuted Householder QR solve in T.
template <class T>
SolveResult<T> solve_with_qr(const CscMatrix<T>& a, const std::vector<T>& b, const StructuralPlan& plan) {
  SolveResult<T> res;
  const auto f = qr_factor(permute(a, plan.row_perm, plan.col_perm));
  if (!f.ok) {
    res.status = SolveStatus::singular_failure;
    return res;
  }
  const auto y = qr_solve(f.factors, permute_vector(b, plan.row_perm));
  if (!all_valid(y)) {
    res.status = SolveStatus::range_failure;
    return res;
  }
  res.x = unpermute_vector(y, plan.col_perm);
  return res;
}

}  // namespace taperbench

#endif
