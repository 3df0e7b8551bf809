#include "taperbench/matrices/bundle.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "json.hpp"
#include "taperbench/util/random.hpp"

namespace taperbench {

namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'T', 'S', 'B', '1'};

void put(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  Reader(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}

  std::uint64_t get(int bytes) {
    need(static_cast<std::size_t>(bytes));
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(data_[pos_ + static_cast<std::size_t>(i)]) << (8 * i);
    pos_ += static_cast<std::size_t>(bytes);
    return v;
  }
  std::string get_string(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(data_ + pos_), n);
    pos_ += n;
    return s;
  }
  std::size_t pos() const { return pos_; }

 private:
  void need(std::size_t n) const {
    if (n > size_ - pos_) throw BundleError(BundleError::Kind::malformed, "bundle: payload runs past end of file");
  }
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

json number_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double read_number(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw BundleError(BundleError::Kind::malformed, "bundle: bad number " + s);
  }
  return j.get<double>();
}

json metadata_json(const MatrixMetadata& m) {
  return json{{"name", m.name},
              {"n_rows", m.n_rows},
              {"n_cols", m.n_cols},
              {"nnz", m.nnz},
              {"abs_min_nonzero", number_or_inf(m.abs_min_nonzero)},
              {"abs_max", number_or_inf(m.abs_max)},
              {"cond1_estimate", number_or_inf(m.cond1_estimate)},
              {"is_square", m.is_square},
              {"is_full_rank", m.is_full_rank},
              {"is_symmetric", m.is_symmetric},
              {"is_posdef", m.is_posdef}};
}

MatrixMetadata metadata_from_json(const json& j) {
  MatrixMetadata m;
  m.name = j.at("name").get<std::string>();
  m.n_rows = j.at("n_rows").get<std::int64_t>();
  m.n_cols = j.at("n_cols").get<std::int64_t>();
  m.nnz = j.at("nnz").get<std::int64_t>();
  m.abs_min_nonzero = read_number(j.at("abs_min_nonzero"));
  m.abs_max = read_number(j.at("abs_max"));
  m.cond1_estimate = read_number(j.at("cond1_estimate"));
  m.is_square = j.at("is_square").get<bool>();
  m.is_full_rank = j.at("is_full_rank").get<bool>();
  m.is_symmetric = j.at("is_symmetric").get<bool>();
  m.is_posdef = j.at("is_posdef").get<bool>();
  return m;
}

BundleManifest parse_manifest(Reader& r) {
  if (r.get_string(4) != std::string(kMagic, 4)) throw BundleError(BundleError::Kind::bad_magic, "bundle: bad magic");
  const auto len = r.get(8);
  json j;
  try {
    j = json::parse(r.get_string(static_cast<std::size_t>(len)));
  } catch (const json::exception& e) {
    throw BundleError(BundleError::Kind::malformed, std::string("bundle: manifest: ") + e.what());
  }
  BundleManifest m;
  try {
    m.version = j.at("version").get<int>();
    if (m.version != kBundleVersion) {
      throw BundleError(BundleError::Kind::version, "bundle: unsupported version " + std::to_string(m.version));
    }
    const auto& c = j.at("counts");
    m.counts = {c.at("files").get<std::int64_t>(), c.at("real_and_small").get<std::int64_t>(),
                c.at("square_and_full_rank").get<std::int64_t>()};
    for (const auto& e : j.at("matrices")) m.matrices.push_back(metadata_from_json(e));
  } catch (const json::exception& e) {
    throw BundleError(BundleError::Kind::malformed, std::string("bundle: manifest: ") + e.what());
  }
  return m;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BundleError(BundleError::Kind::io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

const BundleEntry* DatasetBundle::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.metadata.name == name) return &e;
  }
  return nullptr;
}

std::vector<std::uint8_t> encode_bundle(const DatasetBundle& bundle) {
  json manifest;
  manifest["version"] = kBundleVersion;
  manifest["counts"] = json{{"files", bundle.counts.files},
                            {"real_and_small", bundle.counts.real_and_small},
                            {"square_and_full_rank", bundle.counts.square_and_full_rank}};
  manifest["matrices"] = json::array();
  for (const auto& e : bundle.entries) manifest["matrices"].push_back(metadata_json(e.metadata));
  const auto text = manifest.dump();

  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put(out, text.size(), 8);
  out.insert(out.end(), text.begin(), text.end());
  for (const auto& e : bundle.entries) {
    const auto& a = e.matrix;
    put(out, static_cast<std::uint64_t>(a.n_rows), 4);
    put(out, static_cast<std::uint64_t>(a.n_cols), 4);
    put(out, static_cast<std::uint64_t>(a.nnz()), 8);
    for (auto p : a.col_ptr) put(out, static_cast<std::uint64_t>(p), 8);
    for (auto r : a.row_idx) put(out, static_cast<std::uint32_t>(r), 4);
    for (auto v : a.values) put(out, std::bit_cast<std::uint64_t>(v), 8);
  }
  put(out, fnv1a64(std::string_view(reinterpret_cast<const char*>(out.data()), out.size())), 8);
  return out;
}

DatasetBundle decode_bundle(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw BundleError(BundleError::Kind::bad_magic, "bundle: bad magic");
  }
  if (bytes.size() < 20) throw BundleError(BundleError::Kind::checksum, "bundle: truncated");
  const auto body = bytes.size() - 8;
  Reader tail(bytes.data() + body, 8);
  if (tail.get(8) != fnv1a64(std::string_view(reinterpret_cast<const char*>(bytes.data()), body))) {
    throw BundleError(BundleError::Kind::checksum, "bundle: checksum mismatch");
  }
  Reader r(bytes.data(), body);
  auto manifest = parse_manifest(r);
  DatasetBundle bundle;
  bundle.counts = manifest.counts;
  for (auto& m : manifest.matrices) {
    BundleEntry e;
    auto& a = e.matrix;
    a.n_rows = static_cast<std::int64_t>(r.get(4));
    a.n_cols = static_cast<std::int64_t>(r.get(4));
    const auto nnz = r.get(8);
    a.col_ptr.resize(static_cast<std::size_t>(a.n_cols) + 1);
    for (auto& p : a.col_ptr) p = static_cast<std::int64_t>(r.get(8));
    a.row_idx.resize(static_cast<std::size_t>(nnz));
    for (auto& i : a.row_idx) i = static_cast<std::int32_t>(r.get(4));
    a.values.resize(static_cast<std::size_t>(nnz));
    for (auto& v : a.values) v = std::bit_cast<double>(r.get(8));
    if (!is_well_formed(a)) throw BundleError(BundleError::Kind::malformed, "bundle: malformed payload for " + m.name);
    e.metadata = std::move(m);
    bundle.entries.push_back(std::move(e));
  }
  if (r.pos() != body) throw BundleError(BundleError::Kind::malformed, "bundle: trailing bytes after payloads");
  return bundle;
}

void bundle_write(const std::filesystem::path& path, const DatasetBundle& bundle) {
  const auto bytes = encode_bundle(bundle);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw BundleError(BundleError::Kind::io, "cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

DatasetBundle bundle_load(const std::filesystem::path& path) { return decode_bundle(read_file(path)); }

BundleManifest bundle_read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BundleError(BundleError::Kind::io, "cannot open " + path.string());
  std::vector<std::uint8_t> head(12);
  in.read(reinterpret_cast<char*>(head.data()), 12);
  if (in.gcount() != 12) throw BundleError(BundleError::Kind::bad_magic, "bundle: truncated header");
  Reader hr(head.data(), head.size());
  hr.get_string(4);
  const auto len = hr.get(8);
  if (len > (std::uint64_t{1} << 32)) throw BundleError(BundleError::Kind::malformed, "bundle: implausible manifest length");
  head.resize(12 + static_cast<std::size_t>(len));
  in.read(reinterpret_cast<char*>(head.data() + 12), static_cast<std::streamsize>(len));
  if (static_cast<std::uint64_t>(in.gcount()) != len) throw BundleError(BundleError::Kind::malformed, "bundle: truncated manifest");
  Reader r(head.data(), head.size());
  return parse_manifest(r);
}

}  // namespace taperbench
