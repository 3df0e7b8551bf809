#ifndef TAPERBENCH_MATRICES_METADATA_HPP
#define TAPERBENCH_MATRICES_METADATA_HPP

#include <cstdint>
#include <string>

#include "taperbench/matrices/csc.hpp"

namespace taperbench {

struct MatrixMetadata {
  std::string name;
  std::int64_t n_rows = 0;
  std::int64_t n_cols = 0;
  std::int64_t nnz = 0;
  double abs_min_nonzero = 0.0;
  double abs_max = 0.0;
  double cond1_estimate = 0.0;  // +inf when the reference factorization fails
  bool is_square = false;
  bool is_full_rank = false;
  bool is_symmetric = false;
  bool is_posdef = false;

  bool operator==(const MatrixMetadata&) const = default;
};

double norm1(const CscMatrix<double>& a);

/// ||A||_1 times a Hager/Higham estimate of ||A^-1||_1 from reference LU
/// solves. Never below 1; infinite for a singular or non-square matrix.
double estimate_cond1(const CscMatrix<double>& a);

/// Numerical rank from the diagonal of a binary64 Householder QR:
/// |R_ii| > n * eps * max |R_ii|.
bool is_full_rank(const CscMatrix<double>& a);

/// Exact equality with the transpose.
bool is_symmetric(const CscMatrix<double>& a);

/// Symmetric, and a non-pivoting LU in a symmetric minimum-degree order has
/// only positive pivots.
bool is_positive_definite(const CscMatrix<double>& a);

MatrixMetadata compute_metadata(const std::string& name, const CscMatrix<double>& a);

}  // namespace taperbench

#endif
