#ifndef TAPERBENCH_FORMATS_DOUBLE_DOUBLE_HPP
#define TAPERBENCH_FORMATS_DOUBLE_DOUBLE_HPP

#include <cmath>
#include <compare>
#include <string>

namespace taperbench {

/// Unevaluated sum hi + lo of two binary64 values with |lo| <= ulp(hi)/2.
/// Carries 106 significand bits; used as the reference scalar.
class DoubleDouble {
 public:
  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double x) : hi_(x) {}  // NOLINT(google-explicit-constructor)

  /// Normalizes an arbitrary pair.
  static DoubleDouble from_pair(double a, double b);

  double hi() const { return hi_; }
  double lo() const { return lo_; }
  double to_double() const { return hi_; }

  friend DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b);
  friend DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b);
  friend DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b);
  friend DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b);
  friend DoubleDouble operator-(const DoubleDouble& a) { return raw(-a.hi_, -a.lo_); }

  DoubleDouble& operator+=(const DoubleDouble& o) { return *this = *this + o; }
  DoubleDouble& operator-=(const DoubleDouble& o) { return *this = *this - o; }
  DoubleDouble& operator*=(const DoubleDouble& o) { return *this = *this * o; }
  DoubleDouble& operator/=(const DoubleDouble& o) { return *this = *this / o; }

  friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_;
  }
  friend std::partial_ordering operator<=>(const DoubleDouble& a, const DoubleDouble& b) {
    if (a.hi_ != b.hi_) return a.hi_ <=> b.hi_;
    return a.lo_ <=> b.lo_;
  }

  friend DoubleDouble sqrt(const DoubleDouble& a);
  friend DoubleDouble abs(const DoubleDouble& a) { return a.hi_ < 0 ? -a : a; }
  friend DoubleDouble ldexp(const DoubleDouble& a, int e) {
    return raw(std::ldexp(a.hi_, e), std::ldexp(a.lo_, e));
  }

  bool is_finite() const { return std::isfinite(hi_); }
  bool is_nan() const { return std::isnan(hi_); }

  /// Exact decimal expansion rounded to `digits` significant digits
  /// (scientific notation), e.g. "1.00000000000000000000000000000000000e+00".
  std::string to_decimal(int digits = 36) const;

 private:
  static constexpr DoubleDouble raw(double h, double l) {
    DoubleDouble r;
    r.hi_ = h;
    r.lo_ = l;
    return r;
  }

  double hi_ = 0.0;
  double lo_ = 0.0;
};

using ExtendedReal = DoubleDouble;

}  // namespace taperbench

#endif
