#ifndef TAPERBENCH_ORDERINGS_PLAN_HPP
#define TAPERBENCH_ORDERINGS_PLAN_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "taperbench/matrices/csc.hpp"

namespace taperbench {

enum class PlanKind : std::uint8_t { lu = 1, qr = 2 };

std::string_view plan_kind_name(PlanKind kind);

/// Row and column permutations computed once from the binary64 matrix.
/// The permuted system is permute(A, row_perm, col_perm).
struct StructuralPlan {
  PlanKind kind = PlanKind::lu;
  std::vector<std::int32_t> row_perm;
  std::vector<std::int32_t> col_perm;

  std::int64_t size() const { return static_cast<std::int64_t>(col_perm.size()); }
  bool operator==(const StructuralPlan&) const = default;
};

class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rows are scaled by their 1-norms, then factorized with threshold partial
/// pivoting (see factorize_reference). The pivot sequence gives row_perm.
StructuralPlan plan_lu(const CscMatrix<double>& a);

/// Minimum degree on the A^T A pattern for the columns; rows are then stably
/// sorted by their leftmost permuted column, empty rows last.
StructuralPlan plan_qr(const CscMatrix<double>& a);

std::string plan_file_name(std::string_view matrix, PlanKind kind);

std::vector<std::uint8_t> encode_plan(const StructuralPlan& plan);
StructuralPlan decode_plan(const std::vector<std::uint8_t>& bytes);

void write_plan(const std::filesystem::path& path, const StructuralPlan& plan);
StructuralPlan read_plan(const std::filesystem::path& path);

}  // namespace taperbench

#endif
