#ifndef TAPERBENCH_FORMATS_NUMBER_HPP
#define TAPERBENCH_FORMATS_NUMBER_HPP

#include <cmath>
#include <string>
#include <type_traits>

#include "taperbench/formats/arith.hpp"
#include "taperbench/formats/codec.hpp"

namespace taperbench {

/// A value of format F held as its code; every operation is correctly rounded.
template <FormatId F>
class Number {
  static_assert(is_valid(F), "unknown format");

 public:
  static constexpr FormatId format = F;

  constexpr Number() = default;
  explicit Number(double v) : code_(encode(F, v)) {}
  explicit Number(const ExtendedReal& v) : code_(encode(F, v)) {}

  static constexpr Number from_code(Code c) {
    Number n;
    n.code_ = c & width_mask(F);
    return n;
  }

  constexpr Code code() const { return code_; }
  ExtendedReal to_extended() const { return decode(F, code_); }
  double to_double() const { return to_extended().hi(); }

  friend Number operator+(Number a, Number b) { return from_code(arith(F, Op::add, a.code_, b.code_)); }
  friend Number operator-(Number a, Number b) { return from_code(arith(F, Op::sub, a.code_, b.code_)); }
  friend Number operator*(Number a, Number b) { return from_code(arith(F, Op::mul, a.code_, b.code_)); }
  friend Number operator/(Number a, Number b) { return from_code(arith(F, Op::div, a.code_, b.code_)); }
  friend Number operator-(Number a) { return from_code(negate(F, a.code_)); }

  Number& operator+=(Number o) { return *this = *this + o; }
  Number& operator-=(Number o) { return *this = *this - o; }
  Number& operator*=(Number o) { return *this = *this * o; }
  Number& operator/=(Number o) { return *this = *this / o; }

  friend bool operator==(Number a, Number b) { return total_order_compare(F, a.code_, b.code_) == Ordering::equal; }
  friend bool operator<(Number a, Number b) { return total_order_compare(F, a.code_, b.code_) == Ordering::less; }
  friend bool operator>(Number a, Number b) { return b < a; }
  friend bool operator<=(Number a, Number b) {
    const Ordering o = total_order_compare(F, a.code_, b.code_);
    return o == Ordering::less || o == Ordering::equal;
  }
  friend bool operator>=(Number a, Number b) { return b <= a; }

  friend Number sqrt(Number a) { return from_code(arith(F, Op::sqrt, a.code_)); }
  friend Number abs(Number a) { return from_code(absolute(F, a.code_)); }

 private:
  Code code_ = 0;
};

/// Uniform access to the scalar types used by the solvers:
/// double, ExtendedReal and Number<F>.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr FormatId format = float64;
  static double from_double(double v) { return v; }
  static double from_extended(const ExtendedReal& v) { return v.hi(); }
  static ExtendedReal to_extended(double v) { return ExtendedReal(v); }
  static bool is_invalid(double v) { return !std::isfinite(v); }
  static bool is_zero(double v) { return v == 0.0; }
  static std::string name() { return "float64"; }
};

template <>
struct ScalarTraits<ExtendedReal> {
  static ExtendedReal from_double(double v) { return ExtendedReal(v); }
  static ExtendedReal from_extended(const ExtendedReal& v) { return v; }
  static ExtendedReal to_extended(const ExtendedReal& v) { return v; }
  static bool is_invalid(const ExtendedReal& v) { return !v.is_finite(); }
  static bool is_zero(const ExtendedReal& v) { return v.hi() == 0.0; }
  static std::string name() { return "extended"; }
};

template <FormatId F>
struct ScalarTraits<Number<F>> {
  static constexpr FormatId format = F;
  static Number<F> from_double(double v) { return Number<F>(v); }
  static Number<F> from_extended(const ExtendedReal& v) { return Number<F>(v); }
  static ExtendedReal to_extended(Number<F> v) { return v.to_extended(); }
  static bool is_invalid(Number<F> v) { return !taperbench::is_finite(F, v.code()); }
  static bool is_zero(Number<F> v) { return taperbench::is_zero(F, v.code()); }
  static std::string name() { return format_name(F); }
};

template <class T>
T magnitude(const T& x) {
  using std::abs;
  return abs(x);
}

template <class T>
T square_root(const T& x) {
  using std::sqrt;
  return sqrt(x);
}

template <class T>
bool is_invalid(const T& x) {
  return ScalarTraits<T>::is_invalid(x);
}

template <class T>
bool is_zero_value(const T& x) {
  return ScalarTraits<T>::is_zero(x);
}

/// Converts between scalar types with a single rounding.
template <class To, class From>
To scalar_cast(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else {
    return ScalarTraits<To>::from_extended(ScalarTraits<From>::to_extended(v));
  }
}

}  // namespace taperbench

#endif
