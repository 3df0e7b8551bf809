#include "taperbench/formats/arith.hpp"

#include <bit>
#include <cmath>

#include "rounding.hpp"

namespace taperbench {

using detail::Unpacked;

namespace {

Code nan_code(FormatId f) { return constants(f).nar_or_nan_code; }

Code signed_zero(FormatId f, bool negative) {
  if (is_tapered(f) || !negative) return 0;
  return Code{1} << (f.width - 1);
}

Code signed_inf(FormatId f, bool negative) {
  if (is_tapered(f) || f.family == Family::float8_e4m3) return nan_code(f);
  const auto L = detail::ieee_layout(f);
  Code c = ((Code{1} << L.exponent_bits) - 1) << L.fraction_bits;
  return negative ? c | (Code{1} << (f.width - 1)) : c;
}

bool is_special(ValueClass k) { return k == ValueClass::nan || k == ValueClass::nar; }

Code add_codes(FormatId f, Code a, Decoded x, Code b, Decoded y) {
  if (x.kind == ValueClass::inf && y.kind == ValueClass::inf) {
    return x.negative == y.negative ? a : nan_code(f);
  }
  if (x.kind == ValueClass::inf) return a;
  if (y.kind == ValueClass::inf) return b;
  if (x.kind == ValueClass::zero && y.kind == ValueClass::zero) {
    return signed_zero(f, x.negative && y.negative);
  }
  if (x.kind == ValueClass::zero) return b;
  if (y.kind == ValueClass::zero) return a;
  Unpacked sum;
  if (!detail::add_exact(detail::from_decoded(x), detail::from_decoded(y), sum)) {
    return signed_zero(f, false);
  }
  return detail::round_to(f, sum);
}

Code soft(FormatId f, Op op, Code a, Code b) {
  Decoded x = decode_exact(f, a);
  Decoded y = op == Op::sqrt ? Decoded{} : decode_exact(f, b);
  if (is_special(x.kind) || (op != Op::sqrt && is_special(y.kind))) return nan_code(f);

  switch (op) {
    case Op::add:
      return add_codes(f, a, x, b, y);
    case Op::sub:
      y.negative = !y.negative;
      return add_codes(f, a, x, negate(f, b), y);
    case Op::mul: {
      const bool neg = x.negative != y.negative;
      const bool xz = x.kind == ValueClass::zero, yz = y.kind == ValueClass::zero;
      const bool xi = x.kind == ValueClass::inf, yi = y.kind == ValueClass::inf;
      if ((xi && yz) || (xz && yi)) return nan_code(f);
      if (xi || yi) return signed_inf(f, neg);
      if (xz || yz) return signed_zero(f, neg);
      return detail::round_to(f, detail::mul_exact(detail::from_decoded(x), detail::from_decoded(y)));
    }
    case Op::div: {
      const bool neg = x.negative != y.negative;
      const bool xz = x.kind == ValueClass::zero, yz = y.kind == ValueClass::zero;
      const bool xi = x.kind == ValueClass::inf, yi = y.kind == ValueClass::inf;
      if ((xi && yi) || (xz && yz)) return nan_code(f);
      if (xi) return signed_inf(f, neg);
      if (yi) return signed_zero(f, neg);
      if (yz) return signed_inf(f, neg);
      if (xz) return signed_zero(f, neg);
      return detail::round_to(f, detail::div_sticky(detail::from_decoded(x), detail::from_decoded(y)));
    }
    case Op::sqrt:
      if (x.kind == ValueClass::zero) return a;
      if (x.negative) return nan_code(f);
      if (x.kind == ValueClass::inf) return a;
      return detail::round_to(f, detail::sqrt_sticky(detail::from_decoded(x)));
  }
  return nan_code(f);
}

template <class T, class U>
Code native(FormatId f, Op op, Code a, Code b) {
  const T x = std::bit_cast<T>(static_cast<U>(a));
  const T y = std::bit_cast<T>(static_cast<U>(b));
  T r{};
  switch (op) {
    case Op::add:
      r = x + y;
      break;
    case Op::sub:
      r = x - y;
      break;
    case Op::mul:
      r = x * y;
      break;
    case Op::div:
      r = x / y;
      break;
    case Op::sqrt:
      r = std::sqrt(x);
      break;
  }
  if (std::isnan(r)) return nan_code(f);
  return static_cast<Code>(std::bit_cast<U>(r));
}

}  // namespace

Code arith_soft(FormatId f, Op op, Code a, Code b) { return soft(f, op, a, b); }

Code arith(FormatId f, Op op, Code a, Code b) {
  if (f == float64) return native<double, std::uint64_t>(f, op, a, b);
  if (f == float32) return native<float, std::uint32_t>(f, op, a, b);
  return soft(f, op, a, b);
}

Code convert(FormatId src, FormatId dst, Code c) {
  const Decoded d = decode_exact(src, c);
  switch (d.kind) {
    case ValueClass::nan:
    case ValueClass::nar:
      return nan_code(dst);
    case ValueClass::inf:
      return signed_inf(dst, d.negative);
    case ValueClass::zero:
      return signed_zero(dst, d.negative);
    case ValueClass::real:
      break;
  }
  return encode_exact(dst, d.negative, d.exponent, d.significand);
}

}  // namespace taperbench
