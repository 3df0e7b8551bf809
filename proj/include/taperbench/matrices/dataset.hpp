#ifndef TAPERBENCH_MATRICES_DATASET_HPP
#define TAPERBENCH_MATRICES_DATASET_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "taperbench/matrices/bundle.hpp"
#include "taperbench/matrices/matrix_market.hpp"

namespace taperbench {

inline constexpr std::int64_t kMaxNonzeros = 10000;

struct Rejection {
  std::string name;
  std::string reason;
};

struct FilterResult {
  DatasetBundle bundle;
  std::vector<Rejection> rejections;
};

/// Keeps the real matrices with at most max_nnz entries that are
/// square and full rank. Entries come out sorted by name.
FilterResult filter_entries(std::vector<BundleEntry> candidates, std::int64_t files_seen,
                            std::int64_t max_nnz = kMaxNonzeros);

/// Ingests every *.mtx file under dir (non-recursive), computing metadata
/// on up to `jobs` threads. Per-file errors become rejections.
FilterResult filter_dataset(const std::filesystem::path& dir, int jobs = 1,
                            PatternPolicy pattern = PatternPolicy::ones, std::int64_t max_nnz = kMaxNonzeros);

/// Applies the filter again to an existing bundle.
FilterResult filter_bundle(const DatasetBundle& bundle, std::int64_t max_nnz = kMaxNonzeros);

}  // namespace taperbench

#endif
