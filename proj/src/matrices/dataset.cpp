#include "taperbench/matrices/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>

namespace taperbench {

FilterResult filter_entries(std::vector<BundleEntry> candidates, std::int64_t files_seen, std::int64_t max_nnz) {
  std::sort(candidates.begin(), candidates.end(),
            [](const BundleEntry& a, const BundleEntry& b) { return a.metadata.name < b.metadata.name; });
  FilterResult out;
  out.bundle.counts.files = files_seen;
  for (auto& e : candidates) {
    const auto& m = e.metadata;
    if (m.nnz > max_nnz) {
      out.rejections.push_back({m.name, "more than " + std::to_string(max_nnz) + " nonzeros"});
      continue;
    }
    ++out.bundle.counts.real_and_small;
    if (!m.is_square) {
      out.rejections.push_back({m.name, "not square"});
      continue;
    }
    if (!m.is_full_rank) {
      out.rejections.push_back({m.name, "not full rank"});
      continue;
    }
    ++out.bundle.counts.square_and_full_rank;
    out.bundle.entries.push_back(std::move(e));
  }
  return out;
}

FilterResult filter_dataset(const std::filesystem::path& dir, int jobs, PatternPolicy pattern, std::int64_t max_nnz) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(dir)) {
    for (const auto& de : std::filesystem::directory_iterator(dir)) {
      if (de.is_regular_file() && de.path().extension() == ".mtx") files.push_back(de.path());
    }
  }
  std::sort(files.begin(), files.end());

  struct Slot {
    std::optional<BundleEntry> entry;
    std::optional<Rejection> rejection;
  };
  std::vector<Slot> slots(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (auto i = next++; i < files.size(); i = next++) {
      const auto name = files[i].stem().string();
      try {
        auto data = read_matrix_market_file(files[i].string(), pattern);
        // Skip the costly metadata for matrices the size filter drops anyway.
        BundleEntry e;
        if (data.matrix.nnz() > max_nnz) {
          e.metadata.name = name;
          e.metadata.nnz = data.matrix.nnz();
        } else {
          e.metadata = compute_metadata(name, data.matrix);
          e.matrix = std::move(data.matrix);
        }
        slots[i].entry = std::move(e);
      } catch (const std::exception& ex) {
        slots[i].rejection = Rejection{name, ex.what()};
      }
    }
  };
  const auto n_threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, std::max<std::size_t>(files.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<BundleEntry> candidates;
  std::vector<Rejection> early;
  for (auto& s : slots) {
    if (s.entry) candidates.push_back(std::move(*s.entry));
    if (s.rejection) early.push_back(std::move(*s.rejection));
  }
  auto out = filter_entries(std::move(candidates), static_cast<std::int64_t>(files.size()), max_nnz);
  out.rejections.insert(out.rejections.begin(), early.begin(), early.end());
  return out;
}

FilterResult filter_bundle(const DatasetBundle& bundle, std::int64_t max_nnz) {
  return filter_entries(bundle.entries, bundle.counts.files, max_nnz);
}

}  // namespace taperbench
