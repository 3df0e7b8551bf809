#ifndef TAPERBENCH_ORDERINGS_REFERENCE_LU_HPP
#define TAPERBENCH_ORDERINGS_REFERENCE_LU_HPP

#include <cstdint>
#include <vector>

#include "taperbench/matrices/csc.hpp"

namespace taperbench {

enum class PivotRule {
  prefer_diagonal,  // take A(c, c) for column c whenever it passes the threshold
  sparsest_row,     // among rows passing the threshold, take the one with fewest entries in A
};

/// P A Q = L U in binary64, where (P A Q)(k, j) = A(row_perm[k], col_perm[j]).
/// L is unit lower with its diagonal stored first, U has its diagonal last.
struct ReferenceLu {
  std::vector<std::int32_t> row_perm;
  std::vector<std::int32_t> col_perm;
  CscMatrix<double> L;
  CscMatrix<double> U;
};

struct ReferenceLuOutcome {
  bool ok = false;
  std::int64_t failed_step = -1;
  ReferenceLu lu;
};

/// Left-looking sparse LU with threshold partial pivoting. Columns are taken
/// in col_order. Ties between admissible rows go to the larger magnitude,
/// then the smaller row index.
ReferenceLuOutcome reference_lu(const CscMatrix<double>& a, const std::vector<std::int32_t>& col_order,
                                PivotRule rule, double threshold = 0.1);

/// Chooses the ordering strategy from the pattern symmetry of A and runs
/// reference_lu: minimum degree on A + A^T with diagonal preference when at
/// least half the off-diagonal pattern is symmetric, otherwise minimum degree
/// on A^T A with sparsest-row pivoting.
ReferenceLuOutcome factorize_reference(const CscMatrix<double>& a, double threshold = 0.1);

/// Fraction of off-diagonal entries whose transpose position is also stored.
/// A matrix without off-diagonal entries counts as fully symmetric.
double pattern_symmetry(const CscMatrix<double>& a);

/// Solves A x = b.
std::vector<double> reference_solve(const ReferenceLu& f, const std::vector<double>& b);
/// Solves A^T x = b.
std::vector<double> reference_transpose_solve(const ReferenceLu& f, const std::vector<double>& b);

}  // namespace taperbench

#endif
