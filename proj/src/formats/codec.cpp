#include "taperbench/formats/codec.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "rounding.hpp"

namespace taperbench {

using detail::u128;
using detail::Unpacked;

std::string format_name(FormatId f) {
  const std::string w = std::to_string(f.width);
  switch (f.family) {
    case Family::ieee:
      return "float" + w;
    case Family::bfloat16:
      return "bfloat16";
    case Family::float8_e4m3:
      return "float8";
    case Family::posit:
      return "posit" + w;
    case Family::takum_linear:
      return "takum_linear" + w;
  }
  return "?";
}

std::string display_name(FormatId f) {
  const std::string w = std::to_string(f.width);
  switch (f.family) {
    case Family::ieee:
      return "Float" + w;
    case Family::bfloat16:
      return "BFloat16";
    case Family::float8_e4m3:
      return "Float8";
    case Family::posit:
      return "Posit" + w;
    case Family::takum_linear:
      return "LinearTakum" + w;
  }
  return "?";
}

int format_index(FormatId f) {
  for (std::size_t i = 0; i < all_formats.size(); ++i) {
    if (all_formats[i] == f) return static_cast<int>(i);
  }
  return -1;
}

std::optional<FormatId> parse_format(std::string_view name) {
  for (FormatId f : all_formats) {
    if (format_name(f) == name) return f;
  }
  return std::nullopt;
}

std::string_view class_name(ValueClass c) {
  switch (c) {
    case ValueClass::zero:
      return "zero";
    case ValueClass::real:
      return "real";
    case ValueClass::nar:
      return "nar";
    case ValueClass::nan:
      return "nan";
    case ValueClass::inf:
      return "inf";
  }
  return "?";
}

namespace {

Decoded decode_ieee(FormatId f, Code c) {
  const auto L = detail::ieee_layout(f);
  const int fb = L.fraction_bits;
  const Code emax_field = (Code{1} << L.exponent_bits) - 1;
  Decoded d;
  d.negative = ((c >> (f.width - 1)) & 1) != 0;
  const Code e = (c >> fb) & emax_field;
  const Code frac = c & ((Code{1} << fb) - 1);
  if (e == emax_field && L.has_infinity) {
    d.kind = frac == 0 ? ValueClass::inf : ValueClass::nan;
    return d;
  }
  if (e == emax_field && frac == (Code{1} << fb) - 1) {
    d.kind = ValueClass::nan;
    return d;
  }
  if (e == 0) {
    if (frac == 0) {
      d.kind = ValueClass::zero;
      return d;
    }
    d.kind = ValueClass::real;
    d.significand = frac;
    d.exponent = 1 - L.bias - fb;
    return d;
  }
  d.kind = ValueClass::real;
  d.significand = frac | (Code{1} << fb);
  d.exponent = static_cast<std::int32_t>(e) - L.bias - fb;
  return d;
}

/// Reads `count` bits of `body` below position `pos` (exclusive), MSB first,
/// zero-padding past the end. Advances pos.
Code take_bits(Code body, int& pos, int count) {
  Code v = 0;
  for (int i = 0; i < count; ++i) {
    v <<= 1;
    if (pos > 0) {
      --pos;
      v |= (body >> pos) & 1;
    }
  }
  return v;
}

Decoded decode_tapered(FormatId f, Code c) {
  const int n = f.width;
  const Code mask = width_mask(f);
  Decoded d;
  if (c == 0) {
    d.kind = ValueClass::zero;
    return d;
  }
  if (c == Code{1} << (n - 1)) {
    d.kind = ValueClass::nar;
    return d;
  }
  d.kind = ValueClass::real;
  d.negative = ((c >> (n - 1)) & 1) != 0;
  const Code body = d.negative ? (~c + 1) & mask : c;
  int pos = n - 1;  // bits remaining below the sign

  long long scale = 0;
  if (f.family == Family::posit) {
    const bool first = ((body >> (pos - 1)) & 1) != 0;
    int run = 0;
    while (pos > 0 && (((body >> (pos - 1)) & 1) != 0) == first) {
      ++run;
      --pos;
    }
    if (pos > 0) --pos;  // terminating bit
    const long long k = first ? run - 1 : -run;
    const Code e = take_bits(body, pos, 2);
    scale = 4 * k + static_cast<long long>(e);
  } else {
    const Code D = take_bits(body, pos, 1);
    const Code R = take_bits(body, pos, 3);
    const int r = D != 0 ? static_cast<int>(R) : 7 - static_cast<int>(R);
    const auto C = static_cast<long long>(take_bits(body, pos, r));
    scale = D != 0 ? (1LL << r) - 1 + C : -(1LL << (r + 1)) + 1 + C;
  }
  const int fb = pos;
  const Code frac = fb == 0 ? 0 : body & ((Code{1} << fb) - 1);
  d.significand = (Code{1} << fb) | frac;
  d.exponent = static_cast<std::int32_t>(scale - fb);
  return d;
}

Code canonical_nan(FormatId f) {
  switch (f.family) {
    case Family::float8_e4m3:
      return 0x7F;
    case Family::bfloat16:
      return 0x7FC0;
    case Family::ieee:
      if (f.width == 16) return 0x7E00;
      if (f.width == 32) return 0x7FC00000;
      return 0x7FF8000000000000ULL;
    default:
      return Code{1} << (f.width - 1);
  }
}

Code infinity_code(FormatId f, bool negative) {
  if (f.family == Family::float8_e4m3 || is_tapered(f)) return canonical_nan(f);
  const auto L = detail::ieee_layout(f);
  Code c = ((Code{1} << L.exponent_bits) - 1) << L.fraction_bits;
  if (negative) c |= Code{1} << (f.width - 1);
  return c;
}

Code zero_code(FormatId f, bool negative) {
  if (is_tapered(f) || !negative) return 0;
  return Code{1} << (f.width - 1);
}

Unpacked unpack_double(double x) {
  int ex = 0;
  double m = std::frexp(std::fabs(x), &ex);
  auto sig = static_cast<std::uint64_t>(std::ldexp(m, 53));
  return {std::signbit(x), ex - 53, sig};
}

}  // namespace

Decoded decode_exact(FormatId f, Code c) {
  if (is_tapered(f)) return decode_tapered(f, c);
  return decode_ieee(f, c);
}

ExtendedReal decode(FormatId f, Code c) {
  const Decoded d = decode_exact(f, c);
  switch (d.kind) {
    case ValueClass::zero:
      return ExtendedReal(d.negative ? -0.0 : 0.0);
    case ValueClass::inf:
      return ExtendedReal(d.negative ? -HUGE_VAL : HUGE_VAL);
    case ValueClass::nan:
    case ValueClass::nar:
      return ExtendedReal(std::nan(""));
    case ValueClass::real:
      break;
  }
  const int bw = std::bit_width(d.significand);
  const int extra = bw > 53 ? bw - 53 : 0;
  const std::uint64_t high = (d.significand >> extra) << extra;
  const std::uint64_t low = d.significand - high;
  double hi = std::ldexp(static_cast<double>(high), d.exponent);
  double lo = std::ldexp(static_cast<double>(low), d.exponent);
  if (d.negative) {
    hi = -hi;
    lo = -lo;
  }
  return ExtendedReal::from_pair(hi, lo);
}

Code encode_exact(FormatId f, bool negative, std::int32_t exponent, std::uint64_t significand) {
  if (significand == 0) return zero_code(f, negative);
  return detail::round_to(f, Unpacked{negative, exponent, significand});
}

Code encode(FormatId f, const ExtendedReal& v) {
  const double hi = v.hi();
  if (std::isnan(hi)) return canonical_nan(f);
  if (std::isinf(hi)) return infinity_code(f, hi < 0);
  if (hi == 0.0) return zero_code(f, std::signbit(hi));
  const Unpacked a = unpack_double(hi);
  if (v.lo() == 0.0) return detail::round_to(f, a);
  Unpacked sum;
  if (!detail::add_exact(a, unpack_double(v.lo()), sum)) return zero_code(f, false);
  return detail::round_to(f, sum);
}

Code encode(FormatId f, double v) { return encode(f, ExtendedReal(v)); }

namespace {

FormatConstants make_constants(FormatId f) {
  FormatConstants k;
  k.nar_or_nan_code = canonical_nan(f);
  k.zero_code = 0;
  k.min_positive_code = 1;
  if (is_tapered(f)) {
    k.max_finite_code = (Code{1} << (f.width - 1)) - 1;
    k.min_positive = decode(f, 1);
    k.min_normal = k.min_positive;
  } else {
    const auto L = detail::ieee_layout(f);
    const Code emax_field = (Code{1} << L.exponent_bits) - 1;
    const Code fmask = (Code{1} << L.fraction_bits) - 1;
    k.max_finite_code = L.has_infinity ? ((emax_field - 1) << L.fraction_bits) | fmask
                                       : (emax_field << L.fraction_bits) | (fmask - 1);
    k.min_positive = decode(f, 1);
    k.min_normal = decode(f, Code{1} << L.fraction_bits);
  }
  k.max_finite = decode(f, k.max_finite_code);
  k.one_code = encode(f, 1.0);
  k.machine_eps = decode(f, k.one_code + 1) - ExtendedReal(1.0);
  return k;
}

}  // namespace

const FormatConstants& constants(FormatId f) {
  static const std::array<FormatConstants, all_formats.size()> table = [] {
    std::array<FormatConstants, all_formats.size()> t{};
    for (std::size_t i = 0; i < all_formats.size(); ++i) t[i] = make_constants(all_formats[i]);
    return t;
  }();
  const int i = format_index(f);
  if (i < 0) throw std::invalid_argument("invalid format");
  return table[static_cast<std::size_t>(i)];
}

bool is_nan_or_nar(FormatId f, Code c) {
  const ValueClass k = decode_exact(f, c).kind;
  return k == ValueClass::nan || k == ValueClass::nar;
}

bool is_zero(FormatId f, Code c) { return decode_exact(f, c).kind == ValueClass::zero; }

bool is_finite(FormatId f, Code c) {
  const ValueClass k = decode_exact(f, c).kind;
  return k == ValueClass::zero || k == ValueClass::real;
}

Ordering total_order_compare(FormatId f, Code a, Code b) {
  if (is_nan_or_nar(f, a) || is_nan_or_nar(f, b)) return Ordering::unordered;
  if (is_tapered(f)) {
    const int s = 64 - f.width;
    const auto x = static_cast<std::int64_t>(a << s);
    const auto y = static_cast<std::int64_t>(b << s);
    return x < y ? Ordering::less : x > y ? Ordering::greater : Ordering::equal;
  }
  const ExtendedReal x = decode(f, a);
  const ExtendedReal y = decode(f, b);
  return x < y ? Ordering::less : x > y ? Ordering::greater : Ordering::equal;
}

Code negate(FormatId f, Code c) {
  if (is_tapered(f)) return (~c + 1) & width_mask(f);
  return c ^ (Code{1} << (f.width - 1));
}

Code absolute(FormatId f, Code c) {
  if (is_tapered(f)) {
    if (((c >> (f.width - 1)) & 1) != 0 && c != (Code{1} << (f.width - 1))) return negate(f, c);
    return c;
  }
  return c & ~(Code{1} << (f.width - 1));
}

}  // namespace taperbench
