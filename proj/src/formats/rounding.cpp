#include "rounding.hpp"

#include <bit>
#include <cmath>
#include <utility>

namespace taperbench::detail {

int bit_width128(u128 x) {
  auto hi = static_cast<std::uint64_t>(x >> 64);
  if (hi != 0) return 64 + std::bit_width(hi);
  return std::bit_width(static_cast<std::uint64_t>(x));
}

IeeeLayout ieee_layout(FormatId f) {
  switch (f.family) {
    case Family::float8_e4m3:
      return {4, 3, 7, false};
    case Family::bfloat16:
      return {8, 7, 127, true};
    case Family::ieee:
      if (f.width == 16) return {5, 10, 15, true};
      if (f.width == 32) return {8, 23, 127, true};
      return {11, 52, 1023, true};
    default:
      return {0, 0, 0, false};
  }
}

namespace {

u128 low_mask(int bits) { return bits >= 128 ? ~u128{0} : (u128{1} << bits) - 1; }

/// sig >> shift with round-to-nearest-even; shift >= 1.
u128 shift_right_rne(u128 sig, int shift) {
  if (shift > 128) return 0;
  u128 kept = shift == 128 ? 0 : sig >> shift;
  bool guard = ((sig >> (shift - 1)) & 1) != 0;
  bool sticky = (sig & low_mask(shift - 1)) != 0;
  if (guard && (sticky || (kept & 1) != 0)) ++kept;
  return kept;
}

Code round_ieee(FormatId f, const Unpacked& v) {
  const IeeeLayout L = ieee_layout(f);
  const int fb = L.fraction_bits;
  const int emin = 1 - L.bias;
  const Code sign = v.negative ? Code{1} << (f.width - 1) : 0;
  const int msb = bit_width128(v.significand) - 1;
  const int top = v.exponent + msb;
  const int quantum = std::max(top, emin) - fb;
  const int shift = quantum - v.exponent;

  u128 m = 0;
  if (shift <= 0) {
    m = v.significand << (-shift);
  } else {
    m = shift_right_rne(v.significand, shift);
  }
  if (m == 0) return sign;

  Code efield = 0;
  Code frac = 0;
  const u128 hidden = u128{1} << fb;
  if (m >= hidden) {
    long long e = static_cast<long long>(quantum) + fb + L.bias;
    if (m == hidden << 1) {
      m >>= 1;
      ++e;
    }
    const long long emax_field = (1LL << L.exponent_bits) - 1;
    frac = static_cast<Code>(m - hidden);
    if (L.has_infinity) {
      if (e >= emax_field) return sign | (static_cast<Code>(emax_field) << fb);
    } else if (e > emax_field || (e == emax_field && frac == (Code{1} << fb) - 1)) {
      return (Code{1} << (f.width - 1)) - 1;  // E4M3 canonical NaN
    }
    efield = static_cast<Code>(e);
  } else {
    frac = static_cast<Code>(m);
  }
  return sign | (efield << fb) | frac;
}

/// MSB-first bit accumulator with overflow collapsed into a sticky flag.
class BitString {
 public:
  void push(u128 bits, int count) {
    if (count <= 0) return;
    int room = 128 - used_;
    if (count <= room) {
      if (count == 128) {
        buf_ = bits;
      } else {
        buf_ |= (bits & low_mask(count)) << (room - count);
      }
      used_ += count;
      return;
    }
    int drop = count - room;
    if (room > 0) buf_ |= (bits >> drop) & low_mask(room);
    if ((bits & low_mask(drop)) != 0) sticky_ = true;
    used_ = 128;
  }
  void push_ones(int count) {
    for (int i = 0; i < count; ++i) push(1, 1);
  }
  void push_zeros(int count) {
    for (int i = 0; i < count; ++i) push(0, 1);
  }
  /// Rounds to the leading `bits` bits (bits < 127), nearest-even.
  Code round(int bits) const {
    u128 kept = buf_ >> (128 - bits);
    bool guard = ((buf_ >> (127 - bits)) & 1) != 0;
    bool sticky = sticky_ || (buf_ & low_mask(127 - bits)) != 0;
    if (guard && (sticky || (kept & 1) != 0)) ++kept;
    return static_cast<Code>(kept);
  }

 private:
  u128 buf_ = 0;
  int used_ = 0;
  bool sticky_ = false;
};

Code round_tapered(FormatId f, const Unpacked& v) {
  const int n = f.width;
  const Code body_max = (Code{1} << (n - 1)) - 1;
  const int msb = bit_width128(v.significand) - 1;
  const long long top = static_cast<long long>(v.exponent) + msb;
  const u128 fraction = v.significand & low_mask(msb);

  Code body = 0;
  BitString bits;
  if (f.family == Family::posit) {
    const long long limit = 4LL * (n - 2);
    if (top >= limit) {
      body = body_max;
    } else if (top < -limit) {
      body = 1;
    } else {
      long long k = top >= 0 ? top / 4 : -((-top + 3) / 4);
      long long e = top - 4 * k;
      if (k >= 0) {
        bits.push_ones(static_cast<int>(k + 1));
        bits.push(0, 1);
      } else {
        bits.push_zeros(static_cast<int>(-k));
        bits.push(1, 1);
      }
      bits.push(static_cast<u128>(e), 2);
      bits.push(fraction, msb);
      body = bits.round(n - 1);
    }
  } else {
    if (top > 254) {
      body = body_max;
    } else if (top < -255) {
      body = 1;
    } else {
      const long long c = top;
      int r = 0;
      u128 C = 0;
      if (c >= 0) {
        r = std::bit_width(static_cast<std::uint64_t>(c + 1)) - 1;
        C = static_cast<u128>(c - ((1LL << r) - 1));
        bits.push(1, 1);
        bits.push(static_cast<u128>(r), 3);
      } else {
        r = std::bit_width(static_cast<std::uint64_t>(-c)) - 1;
        C = static_cast<u128>(c + (1LL << (r + 1)) - 1);
        bits.push(0, 1);
        bits.push(static_cast<u128>(7 - r), 3);
      }
      bits.push(C, r);
      bits.push(fraction, msb);
      body = bits.round(n - 1);
    }
  }
  if (body == 0) body = 1;
  if (body > body_max) body = body_max;
  Code mask = width_mask(f);
  return v.negative ? (~body + 1) & mask : body;
}

}  // namespace

Code round_to(FormatId f, const Unpacked& v) {
  if (is_tapered(f)) return round_tapered(f, v);
  return round_ieee(f, v);
}

Unpacked from_decoded(const Decoded& d) { return {d.negative, d.exponent, d.significand}; }

namespace {

Unpacked normalized(Unpacked v, int msb_target) {
  int msb = bit_width128(v.significand) - 1;
  int s = msb_target - msb;
  if (s > 0) {
    v.significand <<= s;
    v.exponent -= s;
  }
  return v;
}

}  // namespace

bool add_exact(const Unpacked& a0, const Unpacked& b0, Unpacked& out) {
  Unpacked a = normalized(a0, 125);
  Unpacked b = normalized(b0, 125);
  if (a.exponent < b.exponent || (a.exponent == b.exponent && a.significand < b.significand)) {
    std::swap(a, b);
  }
  const int d = a.exponent - b.exponent;
  u128 sb = b.significand;
  if (d >= 126) {
    sb = 1;
  } else if (d > 0) {
    bool lost = (sb & low_mask(d)) != 0;
    sb >>= d;
    if (lost) sb |= 1;
  }
  out.negative = a.negative;
  out.exponent = a.exponent;
  if (a.negative == b.negative) {
    out.significand = a.significand + sb;
  } else {
    out.significand = a.significand - sb;
    if (out.significand == 0) return false;
  }
  return true;
}

Unpacked mul_exact(const Unpacked& a, const Unpacked& b) {
  // Both operands carry at most 64 significant bits here.
  return {a.negative != b.negative, a.exponent + b.exponent, a.significand * b.significand};
}

Unpacked div_sticky(const Unpacked& a0, const Unpacked& b0) {
  Unpacked a = normalized(a0, 127);
  Unpacked b = b0;
  while ((b.significand & 1) == 0) {
    b.significand >>= 1;
    ++b.exponent;
  }
  u128 q = a.significand / b.significand;
  u128 r = a.significand % b.significand;
  if (r != 0) q |= 1;
  return {a.negative != b.negative, a.exponent - b.exponent, q};
}

Unpacked sqrt_sticky(const Unpacked& a) {
  int msb = bit_width128(a.significand) - 1;
  int shift = 126 - msb;
  if (((a.exponent - shift) & 1) != 0) ++shift;
  u128 s = a.significand << shift;
  int e = a.exponent - shift;

  auto r = static_cast<u128>(std::sqrt(static_cast<long double>(s)));
  const u128 r_limit = (u128{1} << 64) - 1;
  if (r > r_limit) r = r_limit;
  while (r * r > s) --r;
  while (r < r_limit && (r + 1) * (r + 1) <= s) ++r;
  if (r * r != s) r |= 1;
  return {false, e / 2, r};
}

}  // namespace taperbench::detail
