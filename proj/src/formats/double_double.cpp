#include "taperbench/formats/double_double.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <cstdio>
#include <cstdint>
#include <limits>

namespace taperbench {
namespace {

struct Pair {
  double s;
  double e;
};

Pair two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

Pair quick_two_sum(double a, double b) {
  double s = a + b;
  double e = b - (s - a);
  return {s, e};
}

Pair two_prod(double a, double b) {
  double p = a * b;
  double e = std::fma(a, b, -p);
  return {p, e};
}

}  // namespace

DoubleDouble DoubleDouble::from_pair(double a, double b) {
  Pair p = two_sum(a, b);
  if (!std::isfinite(p.s)) return raw(p.s, 0.0);
  return raw(p.s, p.e);
}

DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
  Pair s = two_sum(a.hi_, b.hi_);
  if (!std::isfinite(s.s)) return DoubleDouble::raw(s.s, 0.0);
  Pair t = two_sum(a.lo_, b.lo_);
  s.e += t.s;
  s = quick_two_sum(s.s, s.e);
  s.e += t.e;
  s = quick_two_sum(s.s, s.e);
  return DoubleDouble::raw(s.s, s.e);
}

DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }

DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
  Pair p = two_prod(a.hi_, b.hi_);
  if (!std::isfinite(p.s)) return DoubleDouble::raw(p.s, 0.0);
  Pair c1 = two_prod(a.hi_, b.lo_);
  Pair c2 = two_prod(a.lo_, b.hi_);
  Pair t1 = two_sum(p.e, c1.s);
  Pair t2 = two_sum(t1.s, c2.s);
  double tail = t1.e + t2.e + c1.e + c2.e + a.lo_ * b.lo_;
  Pair r = quick_two_sum(p.s, t2.s);
  r.e += tail;
  r = quick_two_sum(r.s, r.e);
  return DoubleDouble::raw(r.s, r.e);
}

DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
  double q1 = a.hi_ / b.hi_;
  if (!std::isfinite(q1) || q1 == 0.0) return DoubleDouble::raw(q1, 0.0);
  DoubleDouble r = a - b * DoubleDouble(q1);
  double q2 = r.hi_ / b.hi_;
  r = r - b * DoubleDouble(q2);
  double q3 = r.hi_ / b.hi_;
  Pair q = quick_two_sum(q1, q2);
  return DoubleDouble::raw(q.s, q.e) + DoubleDouble(q3);
}

DoubleDouble sqrt(const DoubleDouble& a) {
  if (a.hi_ == 0.0) return a;
  if (a.hi_ < 0.0) return DoubleDouble(std::numeric_limits<double>::quiet_NaN());
  if (!std::isfinite(a.hi_)) return a;
  double x = 1.0 / std::sqrt(a.hi_);
  double ax = a.hi_ * x;
  Pair sq = two_prod(ax, ax);
  DoubleDouble diff = a - DoubleDouble::raw(sq.s, sq.e);
  Pair r = two_sum(ax, diff.hi_ * x * 0.5);
  DoubleDouble s = DoubleDouble::raw(r.s, r.e);
  return s + (a - s * s) / (s + s);
}

std::string DoubleDouble::to_decimal(int digits) const {
  using boost::multiprecision::cpp_int;
  if (std::isnan(hi_)) return "nan";
  if (std::isinf(hi_)) return hi_ > 0 ? "inf" : "-inf";
  if (hi_ == 0.0) {
    std::string z = std::signbit(hi_) ? "-0." : "0.";
    z.append(static_cast<std::size_t>(digits - 1), '0');
    return z + "e+00";
  }

  // value = m * 2^e exactly, with m a (possibly negative) integer.
  auto split = [](double d, cpp_int& m, int& e) {
    int ex = 0;
    double f = std::frexp(d, &ex);
    auto mant = static_cast<std::int64_t>(std::ldexp(f, 53));
    m = mant;
    e = ex - 53;
  };
  cpp_int m1, m2;
  int e1 = 0, e2 = 0;
  split(hi_, m1, e1);
  if (lo_ != 0.0) {
    split(lo_, m2, e2);
  } else {
    e2 = e1;
  }
  int e = std::min(e1, e2);
  cpp_int m = (m1 << (e1 - e)) + (m2 << (e2 - e));
  bool negative = m < 0;
  if (negative) m = -m;

  // value = num / den exactly.
  cpp_int num = m, den = 1;
  if (e >= 0) {
    num <<= e;
  } else {
    den <<= -e;
  }

  // Find decimal exponent k with 10^k <= value < 10^(k+1).
  int k = static_cast<int>(std::floor(std::log10(std::fabs(hi_))));
  auto pow10 = [](int p) {
    cpp_int r = 1;
    for (int i = 0; i < p; ++i) r *= 10;
    return r;
  };
  auto scaled_ge = [&](int kk) {  // value >= 10^kk ?
    if (kk >= 0) return num >= den * pow10(kk);
    return num * pow10(-kk) >= den;
  };
  while (!scaled_ge(k)) --k;
  while (scaled_ge(k + 1)) ++k;

  // q = round(value * 10^(digits-1-k)), ties to even.
  int shift = digits - 1 - k;
  cpp_int n2 = num, d2 = den;
  if (shift >= 0) {
    n2 *= pow10(shift);
  } else {
    d2 *= pow10(-shift);
  }
  cpp_int q = n2 / d2;
  cpp_int rem = n2 - q * d2;
  cpp_int twice = rem * 2;
  if (twice > d2 || (twice == d2 && (q & 1) != 0)) ++q;
  if (q == pow10(digits)) {
    q /= 10;
    ++k;
  }

  std::string s = q.str();
  std::string out = negative ? "-" : "";
  out += s[0];
  out += '.';
  out += s.substr(1);
  char buf[16];
  std::snprintf(buf, sizeof buf, "e%c%02d", k < 0 ? '-' : '+', k < 0 ? -k : k);
  return out + buf;
}

}  // namespace taperbench
