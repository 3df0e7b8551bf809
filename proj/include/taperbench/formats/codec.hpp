#ifndef TAPERBENCH_FORMATS_CODEC_HPP
#define TAPERBENCH_FORMATS_CODEC_HPP

#include <cstdint>
#include <string_view>

#include "taperbench/formats/double_double.hpp"
#include "taperbench/formats/format_id.hpp"

namespace taperbench {

enum class ValueClass : std::uint8_t { zero, real, nar, nan, inf };

std::string_view class_name(ValueClass c);

/// Exact value of a code: (-1)^negative * significand * 2^exponent for
/// class real; only `negative` is meaningful for zero and inf.
struct Decoded {
  ValueClass kind = ValueClass::zero;
  bool negative = false;
  std::int32_t exponent = 0;
  std::uint64_t significand = 0;
};

Decoded decode_exact(FormatId f, Code c);

/// Decoded value as an ExtendedReal (exact for every finite code). NaR maps to NaN.
ExtendedReal decode(FormatId f, Code c);

/// Round-to-nearest-even. Posit and takum saturate to the extreme finite
/// codes; IEEE overflows to infinity; E4M3 overflows to NaN.
Code encode(FormatId f, const ExtendedReal& v);
Code encode(FormatId f, double v);

/// Encodes (-1)^negative * significand * 2^exponent with a single rounding.
Code encode_exact(FormatId f, bool negative, std::int32_t exponent, std::uint64_t significand);

struct FormatConstants {
  ExtendedReal max_finite;
  ExtendedReal min_positive;
  /// Smallest positive normal value; equals min_positive for formats
  /// without subnormals.
  ExtendedReal min_normal;
  /// 2^(1-p), p the significand precision at 1.0.
  ExtendedReal machine_eps;
  Code nar_or_nan_code = 0;
  Code zero_code = 0;
  Code max_finite_code = 0;
  Code min_positive_code = 0;
  Code one_code = 0;
};

const FormatConstants& constants(FormatId f);

enum class Ordering : std::uint8_t { less, equal, greater, unordered };

/// Order of decoded values. NaN and NaR compare unordered with everything,
/// themselves included.
Ordering total_order_compare(FormatId f, Code a, Code b);

bool is_nan_or_nar(FormatId f, Code c);
bool is_zero(FormatId f, Code c);
/// False for NaN, NaR and infinities.
bool is_finite(FormatId f, Code c);

Code negate(FormatId f, Code c);
Code absolute(FormatId f, Code c);

}  // namespace taperbench

#endif
