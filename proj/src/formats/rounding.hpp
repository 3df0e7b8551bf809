#ifndef TAPERBENCH_SRC_FORMATS_ROUNDING_HPP
#define TAPERBENCH_SRC_FORMATS_ROUNDING_HPP

#include <cstdint>

#include "taperbench/formats/codec.hpp"

namespace taperbench::detail {

using u128 = unsigned __int128;

int bit_width128(u128 x);

/// A nonzero finite real (-1)^negative * significand * 2^exponent. The
/// lowest significand bit may be a sticky bit standing for discarded
/// nonzero lower-order bits; callers keep at least two bits of headroom
/// between that bit and any rounding position.
struct Unpacked {
  bool negative = false;
  int exponent = 0;
  u128 significand = 0;
};

/// Single rounding of a nonzero value into format f.
Code round_to(FormatId f, const Unpacked& v);

/// Exact sum; returns false when the result is exactly zero.
bool add_exact(const Unpacked& a, const Unpacked& b, Unpacked& out);
Unpacked mul_exact(const Unpacked& a, const Unpacked& b);
/// Quotient with at least 64 significant bits plus sticky.
Unpacked div_sticky(const Unpacked& a, const Unpacked& b);
/// Square root of a positive value with at least 63 significant bits plus sticky.
Unpacked sqrt_sticky(const Unpacked& a);

Unpacked from_decoded(const Decoded& d);

struct IeeeLayout {
  int exponent_bits;
  int fraction_bits;
  int bias;
  bool has_infinity;
};

IeeeLayout ieee_layout(FormatId f);

}  // namespace taperbench::detail

#endif
