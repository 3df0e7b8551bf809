#ifndef TAPERBENCH_HARNESS_SYSTEM_HPP
#define TAPERBENCH_HARNESS_SYSTEM_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "taperbench/formats/double_double.hpp"
#include "taperbench/formats/number.hpp"
#include "taperbench/matrices/csc.hpp"
#include "taperbench/orderings/plan.hpp"
#include "taperbench/solvers/status.hpp"

namespace taperbench {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED'0000'7A4B'E2C1ULL;

struct TestSystem {
  std::string name;
  CscMatrix<double> a;
  std::vector<double> b;             // ||b||_inf == 1
  std::vector<ExtendedReal> x_ref;
};

class HarnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// b_i = 2u - 1 with u from xoshiro256** seeded by seed ^ fnv1a64(name),
/// then b /= ||b||_inf.
std::vector<double> random_rhs(const std::string& name, std::int64_t n, std::uint64_t seed);

/// Random right-hand side plus the reference solution from a double-double
/// Householder QR under plan_qr. Throws HarnessError when that QR breaks down.
TestSystem build_system(const std::string& name, const CscMatrix<double>& a, std::uint64_t seed,
                        const StructuralPlan& qr_plan);
TestSystem build_system(const std::string& name, const CscMatrix<double>& a, std::uint64_t seed);

/// Double-double QR solution of A x = b under the given plan.
std::vector<ExtendedReal> extended_reference_solution(const CscMatrix<double>& a, const std::vector<double>& b,
                                                      const StructuralPlan& qr_plan);

template <class T>
struct Converted {
  SolveStatus status = SolveStatus::ok;
  CscMatrix<T> a;
  std::vector<T> b;
};

/// Rounds one binary64 value into T; fails when a nonzero value becomes zero
/// or a finite value becomes non-finite.
template <class T>
bool convert_checked(double v, T& out) {
  out = ScalarTraits<T>::from_double(v);
  if (v != 0.0 && is_zero_value(out)) return false;
  if (is_invalid(out)) return false;
  return true;
}

template <class T>
Converted<T> convert_with_check(const CscMatrix<double>& a, const std::vector<double>& b) {
  Converted<T> c;
  c.a.n_rows = a.n_rows;
  c.a.n_cols = a.n_cols;
  c.a.col_ptr = a.col_ptr;
  c.a.row_idx = a.row_idx;
  c.a.values.resize(a.values.size());
  c.b.resize(b.size());
  for (std::size_t p = 0; p < a.values.size(); ++p) {
    if (!convert_checked(a.values[p], c.a.values[p])) {
      c.status = SolveStatus::range_failure;
      return c;
    }
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!convert_checked(b[i], c.b[i])) {
      c.status = SolveStatus::range_failure;
      return c;
    }
  }
  return c;
}

struct ErrorNorms {
  ExtendedReal abs_err;
  ExtendedReal rel_err;
};

/// ||x - x_ref||_2 and its ratio to ||x_ref||_2, in double-double.
ErrorNorms solution_errors(const std::vector<ExtendedReal>& x, const std::vector<ExtendedReal>& x_ref);

}  // namespace taperbench

#endif
