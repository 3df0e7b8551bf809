#include "taperbench/matrices/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace taperbench {

namespace {

using Err = MatrixMarketError;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

MatrixMarketHeader parse_banner(const std::string& line) {
  std::istringstream ss(line);
  std::string banner, object, format, field, symmetry;
  ss >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") throw Err(Err::Kind::malformed, "missing %%MatrixMarket banner");
  if (lower(object) != "matrix") throw Err(Err::Kind::unsupported, "object is not a matrix: " + object);
  MatrixMarketHeader h;
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (format == "coordinate") {
    h.format = MmFormat::coordinate;
  } else if (format == "array") {
    h.format = MmFormat::array;
  } else {
    throw Err(Err::Kind::malformed, "unknown format: " + format);
  }
  if (field == "real" || field == "double") {
    h.field = MmField::real;
  } else if (field == "integer") {
    h.field = MmField::integer;
  } else if (field == "pattern") {
    h.field = MmField::pattern;
  } else if (field == "complex") {
    h.field = MmField::complex;
  } else {
    throw Err(Err::Kind::malformed, "unknown field: " + field);
  }
  if (symmetry == "general") {
    h.symmetry = MmSymmetry::general;
  } else if (symmetry == "symmetric") {
    h.symmetry = MmSymmetry::symmetric;
  } else if (symmetry == "skew-symmetric") {
    h.symmetry = MmSymmetry::skew_symmetric;
  } else if (symmetry == "hermitian") {
    h.symmetry = MmSymmetry::hermitian;
  } else {
    throw Err(Err::Kind::malformed, "unknown symmetry: " + symmetry);
  }
  if (h.format == MmFormat::array && h.field == MmField::pattern) {
    throw Err(Err::Kind::malformed, "array format cannot be pattern");
  }
  return h;
}

bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '%') continue;
    return true;
  }
  return false;
}

double parse_number(const std::string& tok) {
  double v = 0.0;
  const char* b = tok.data();
  const char* e = b + tok.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) {
    // Fortran-style exponents (1.0D+03) appear in older files.
    std::string t = tok;
    std::replace(t.begin(), t.end(), 'D', 'e');
    std::replace(t.begin(), t.end(), 'd', 'e');
    auto [p2, ec2] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec2 != std::errc() || p2 != t.data() + t.size()) throw Err(Err::Kind::malformed, "bad number: " + tok);
  }
  return v;
}

std::int64_t parse_index(const std::string& tok) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) throw Err(Err::Kind::malformed, "bad index: " + tok);
  return v;
}

}  // namespace

MatrixMarketData parse_matrix_market(std::istream& in, PatternPolicy pattern) {
  std::string line;
  if (!std::getline(in, line)) throw Err(Err::Kind::malformed, "empty stream");
  MatrixMarketData out;
  out.header = parse_banner(line);
  const auto& h = out.header;
  if (h.field == MmField::complex || h.symmetry == MmSymmetry::hermitian) {
    throw Err(Err::Kind::non_real, "complex matrices are not supported");
  }
  if (h.field == MmField::pattern && pattern == PatternPolicy::reject) {
    throw Err(Err::Kind::non_real, "pattern matrices are rejected");
  }

  if (!next_data_line(in, line)) throw Err(Err::Kind::malformed, "missing size line");
  std::istringstream size(line);
  std::string t1, t2, t3;
  size >> t1 >> t2;
  const std::int64_t m = parse_index(t1);
  const std::int64_t n = parse_index(t2);
  if (m < 0 || n < 0) throw Err(Err::Kind::malformed, "negative dimension");
  if (h.symmetry != MmSymmetry::general && m != n) throw Err(Err::Kind::malformed, "symmetric matrix must be square");

  std::vector<Triplet<double>> entries;
  auto add = [&](std::int64_t i, std::int64_t j, double v) {
    entries.push_back({i, j, v});
    if (i != j) {
      if (h.symmetry == MmSymmetry::symmetric) entries.push_back({j, i, v});
      if (h.symmetry == MmSymmetry::skew_symmetric) entries.push_back({j, i, -v});
    }
  };

  if (h.format == MmFormat::coordinate) {
    if (!(size >> t3)) throw Err(Err::Kind::malformed, "missing entry count");
    const std::int64_t count = parse_index(t3);
    if (count < 0) throw Err(Err::Kind::malformed, "negative entry count");
    entries.reserve(static_cast<std::size_t>(count) * (h.symmetry == MmSymmetry::general ? 1 : 2));
    for (std::int64_t k = 0; k < count; ++k) {
      if (!next_data_line(in, line)) throw Err(Err::Kind::malformed, "fewer entries than declared");
      std::istringstream es(line);
      std::string si, sj, sv;
      if (!(es >> si >> sj)) throw Err(Err::Kind::malformed, "bad entry line");
      const std::int64_t i = parse_index(si) - 1;
      const std::int64_t j = parse_index(sj) - 1;
      if (i < 0 || i >= m || j < 0 || j >= n) throw Err(Err::Kind::out_of_bounds, "entry index out of bounds");
      double v = 1.0;
      if (h.field != MmField::pattern) {
        if (!(es >> sv)) throw Err(Err::Kind::malformed, "missing value");
        v = parse_number(sv);
      }
      if (h.symmetry == MmSymmetry::skew_symmetric && i == j) {
        throw Err(Err::Kind::malformed, "skew-symmetric diagonal entry");
      }
      add(i, j, v);
    }
  } else {
    // Column-major; only the lower triangle is stored for symmetric kinds.
    for (std::int64_t j = 0; j < n; ++j) {
      const std::int64_t start = h.symmetry == MmSymmetry::general ? 0
                                 : h.symmetry == MmSymmetry::symmetric ? j
                                                                       : j + 1;
      for (std::int64_t i = start; i < m; ++i) {
        if (!next_data_line(in, line)) throw Err(Err::Kind::malformed, "fewer array values than declared");
        std::istringstream es(line);
        std::string sv;
        es >> sv;
        add(i, j, parse_number(sv));
      }
    }
  }
  out.matrix = from_triplets(m, n, std::move(entries));
  return out;
}

MatrixMarketData read_matrix_market_file(const std::string& path, PatternPolicy pattern) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_matrix_market(in, pattern);
}

}  // namespace taperbench
