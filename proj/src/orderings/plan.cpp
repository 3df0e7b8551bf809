#include "taperbench/orderings/plan.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <numeric>

#include "taperbench/orderings/minimum_degree.hpp"
#include "taperbench/orderings/reference_lu.hpp"
#include "taperbench/util/random.hpp"

namespace taperbench {

namespace {

constexpr char kMagic[4] = {'T', 'S', 'P', '1'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(const std::vector<std::uint8_t>& in, std::size_t at, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(in[at + static_cast<std::size_t>(i)]) << (8 * i);
  return v;
}

std::uint64_t checksum(const std::vector<std::uint8_t>& bytes, std::size_t len) {
  return fnv1a64(std::string_view(reinterpret_cast<const char*>(bytes.data()), len));
}

}  // namespace

std::string_view plan_kind_name(PlanKind kind) { return kind == PlanKind::lu ? "lu" : "qr"; }

StructuralPlan plan_lu(const CscMatrix<double>& a) {
  if (!a.is_square()) throw PlanError("plan_lu: matrix is not square");
  std::vector<double> norms(static_cast<std::size_t>(a.n_rows), 0.0);
  for (std::int64_t p = 0; p < a.nnz(); ++p) norms[static_cast<std::size_t>(a.row_idx[p])] += std::abs(a.values[p]);
  auto scaled = a;
  for (std::int64_t p = 0; p < scaled.nnz(); ++p) {
    const double s = norms[static_cast<std::size_t>(scaled.row_idx[p])];
    if (s > 0.0 && std::isfinite(s)) scaled.values[p] /= s;
  }
  auto outcome = factorize_reference(scaled);
  if (!outcome.ok) {
    throw PlanError("plan_lu: reference factorization broke down at step " + std::to_string(outcome.failed_step));
  }
  return {PlanKind::lu, std::move(outcome.lu.row_perm), std::move(outcome.lu.col_perm)};
}

StructuralPlan plan_qr(const CscMatrix<double>& a) {
  if (a.n_cols == 0) throw PlanError("plan_qr: empty matrix");
  StructuralPlan plan;
  plan.kind = PlanKind::qr;
  plan.col_perm = minimum_degree(gram_pattern(a));
  const auto qinv = inverse_permutation(plan.col_perm);
  std::vector<std::int64_t> leftmost(static_cast<std::size_t>(a.n_rows), std::numeric_limits<std::int64_t>::max());
  for (std::int64_t j = 0; j < a.n_cols; ++j) {
    for (auto p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) {
      auto& l = leftmost[static_cast<std::size_t>(a.row_idx[p])];
      l = std::min<std::int64_t>(l, qinv[static_cast<std::size_t>(j)]);
    }
  }
  plan.row_perm.resize(static_cast<std::size_t>(a.n_rows));
  std::iota(plan.row_perm.begin(), plan.row_perm.end(), 0);
  std::stable_sort(plan.row_perm.begin(), plan.row_perm.end(), [&](std::int32_t x, std::int32_t y) {
    return leftmost[static_cast<std::size_t>(x)] < leftmost[static_cast<std::size_t>(y)];
  });
  return plan;
}

std::string plan_file_name(std::string_view matrix, PlanKind kind) {
  return std::string(matrix) + "." + std::string(plan_kind_name(kind)) + ".plan";
}

std::vector<std::uint8_t> encode_plan(const StructuralPlan& plan) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.push_back(static_cast<std::uint8_t>(plan.kind));
  put_u32(out, static_cast<std::uint32_t>(plan.row_perm.size()));
  put_u32(out, static_cast<std::uint32_t>(plan.col_perm.size()));
  for (auto v : plan.row_perm) put_u32(out, static_cast<std::uint32_t>(v));
  for (auto v : plan.col_perm) put_u32(out, static_cast<std::uint32_t>(v));
  put_u64(out, checksum(out, out.size()));
  return out;
}

StructuralPlan decode_plan(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 21 || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw PlanError("plan file: bad magic or truncated header");
  }
  const auto n_rows = get_le(bytes, 5, 4);
  const auto n_cols = get_le(bytes, 9, 4);
  const auto body = 13 + 4 * (n_rows + n_cols);
  if (bytes.size() != body + 8) throw PlanError("plan file: truncated");
  if (get_le(bytes, body, 8) != checksum(bytes, body)) throw PlanError("plan file: checksum mismatch");
  StructuralPlan plan;
  const auto kind = bytes[4];
  if (kind != static_cast<std::uint8_t>(PlanKind::lu) && kind != static_cast<std::uint8_t>(PlanKind::qr)) {
    throw PlanError("plan file: unknown kind");
  }
  plan.kind = static_cast<PlanKind>(kind);
  std::size_t at = 13;
  for (std::uint64_t i = 0; i < n_rows; ++i, at += 4) plan.row_perm.push_back(static_cast<std::int32_t>(get_le(bytes, at, 4)));
  for (std::uint64_t i = 0; i < n_cols; ++i, at += 4) plan.col_perm.push_back(static_cast<std::int32_t>(get_le(bytes, at, 4)));
  if (!is_permutation_of_range(plan.row_perm) || !is_permutation_of_range(plan.col_perm)) {
    throw PlanError("plan file: not a permutation");
  }
  return plan;
}

void write_plan(const std::filesystem::path& path, const StructuralPlan& plan) {
  const auto bytes = encode_plan(plan);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw PlanError("cannot write " + tmp);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw PlanError("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

StructuralPlan read_plan(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PlanError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_plan(bytes);
}

}  // namespace taperbench
