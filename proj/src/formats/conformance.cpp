#include "taperbench/formats/conformance.hpp"

#include <cstdio>
#include <set>
#include <stdexcept>
#include <string>

#include "taperbench/formats/codec.hpp"
#include "taperbench/util/random.hpp"

namespace taperbench {

namespace {

std::string row(FormatId f, Code c) {
  char hex[32];
  std::snprintf(hex, sizeof hex, "0x%0*llx", f.width / 4, static_cast<unsigned long long>(c));
  const Decoded d = decode_exact(f, c);
  std::string value;
  switch (d.kind) {
    case ValueClass::nan:
      value = "nan";
      break;
    case ValueClass::nar:
      value = "nar";
      break;
    case ValueClass::inf:
      value = d.negative ? "-inf" : "inf";
      break;
    default:
      value = decode(f, c).to_decimal(36);
      break;
  }
  return std::string(hex) + "," + value + "," + std::string(class_name(d.kind)) + "\n";
}

}  // namespace

void write_code_table(std::ostream& out, FormatId f, std::optional<std::uint64_t> sample, std::uint64_t seed) {
  out << "code_hex,value_decimal,class\n";
  if (!sample) {
    if (f.width > 16) throw std::invalid_argument("exhaustive tables need width <= 16; use a sample");
    for (Code c = 0; c < (Code{1} << f.width); ++c) out << row(f, c);
    return;
  }
  Xoshiro256StarStar rng(seed);
  std::set<Code> codes;
  for (std::uint64_t i = 0; i < *sample; ++i) codes.insert(rng.next() & width_mask(f));
  for (Code c : codes) out << row(f, c);
}

}  // namespace taperbench
