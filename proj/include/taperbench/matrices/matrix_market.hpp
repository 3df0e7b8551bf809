#ifndef TAPERBENCH_MATRICES_MATRIX_MARKET_HPP
#define TAPERBENCH_MATRICES_MATRIX_MARKET_HPP

#include <istream>
#include <stdexcept>
#include <string>

#include "taperbench/matrices/csc.hpp"

namespace taperbench {

enum class MmFormat { coordinate, array };
enum class MmField { real, integer, pattern, complex };
enum class MmSymmetry { general, symmetric, skew_symmetric, hermitian };

struct MatrixMarketHeader {
  MmFormat format = MmFormat::coordinate;
  MmField field = MmField::real;
  MmSymmetry symmetry = MmSymmetry::general;
};

/// How pattern-only files are treated: as matrices of ones (the
/// SuiteSparse convention for binary matrices) or as an error.
enum class PatternPolicy { ones, reject };

class MatrixMarketError : public std::runtime_error {
 public:
  enum class Kind { malformed, non_real, out_of_bounds, unsupported };

  MatrixMarketError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct MatrixMarketData {
  MatrixMarketHeader header;
  CscMatrix<double> matrix;
};

/// Reads a Matrix Market stream into a general CSC matrix: symmetric and
/// skew-symmetric storage is expanded, duplicates are summed and explicit
/// zeros dropped.
MatrixMarketData parse_matrix_market(std::istream& in, PatternPolicy pattern = PatternPolicy::ones);

MatrixMarketData read_matrix_market_file(const std::string& path, PatternPolicy pattern = PatternPolicy::ones);

}  // namespace taperbench

#endif
