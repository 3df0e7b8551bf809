#ifndef TAPERBENCH_MATRICES_BUNDLE_HPP
#define TAPERBENCH_MATRICES_BUNDLE_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "taperbench/matrices/csc.hpp"
#include "taperbench/matrices/metadata.hpp"

namespace taperbench {

struct BundleEntry {
  MatrixMetadata metadata;
  CscMatrix<double> matrix;

  bool operator==(const BundleEntry&) const = default;
};

/// Filter stage counts carried along in the manifest.
struct DatasetCounts {
  std::int64_t files = 0;
  std::int64_t real_and_small = 0;
  std::int64_t square_and_full_rank = 0;

  bool operator==(const DatasetCounts&) const = default;
};

struct DatasetBundle {
  DatasetCounts counts;
  std::vector<BundleEntry> entries;

  bool operator==(const DatasetBundle&) const = default;
  const BundleEntry* find(const std::string& name) const;
};

class BundleError : public std::runtime_error {
 public:
  enum class Kind { io, bad_magic, version, checksum, malformed };

  BundleError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr int kBundleVersion = 1;

/// Layout: "TSB1", u64 manifest length, JSON manifest with sorted keys,
/// payloads (u32 rows, u32 cols, u64 nnz, u64 col_ptr[], u32 row_idx[],
/// f64 values[]), then a FNV-1a 64 checksum of everything before it.
/// All integers little-endian.
std::vector<std::uint8_t> encode_bundle(const DatasetBundle& bundle);
DatasetBundle decode_bundle(const std::vector<std::uint8_t>& bytes);

void bundle_write(const std::filesystem::path& path, const DatasetBundle& bundle);
DatasetBundle bundle_load(const std::filesystem::path& path);

struct BundleManifest {
  int version = 0;
  DatasetCounts counts;
  std::vector<MatrixMetadata> matrices;
};

/// Reads only the header and manifest; payloads are neither decoded nor
/// checksummed.
BundleManifest bundle_read_manifest(const std::filesystem::path& path);

}  // namespace taperbench

#endif
