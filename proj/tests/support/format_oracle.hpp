#ifndef TAPERBENCH_TESTS_FORMAT_ORACLE_HPP
#define TAPERBENCH_TESTS_FORMAT_ORACLE_HPP

// Reference model of the number formats built on exact rationals. It shares
// no code with the library: bit fields are read from character strings and
// rounding is decided by comparing against enumerated neighbours.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "taperbench/formats/format_id.hpp"

namespace oracle {

enum class Kind { zero, real, nar, nan, inf };

struct Value {
  Kind kind = Kind::zero;
  bool negative = false;
  mpq_class q;  // exact value when kind == real
};

/// Decodes a code of the given family at any width (widths other than the
/// 14 evaluated formats are allowed for posit and takum).
Value decode(taperbench::Family family, int width, std::uint64_t code);

/// Value of the code one bit longer than `width` formed by appending a 1 to
/// the positive code `body`: the rounding midpoint between body and body+1.
mpq_class tapered_midpoint(taperbench::Family family, int width, std::uint64_t body);

/// Correctly rounded code of an exact rational (or a special) per the
/// format's rules, found by enumerating its finite values.
class Rounder {
 public:
  explicit Rounder(taperbench::FormatId f);

  std::uint64_t round(const Value& v) const;
  /// Code nearest to sqrt(q), q > 0.
  std::uint64_t round_sqrt(const mpq_class& q) const;

  std::uint64_t nan_code() const { return nan_; }
  const Value& value_of(std::uint64_t code) const { return table_[code]; }

 private:
  struct Entry {
    mpq_class value;
    std::uint64_t code;
    bool overflow;  // beyond the largest finite value
  };
  std::uint64_t round_positive(const mpq_class& q, bool negative) const;
  std::uint64_t finish(const Entry& e, bool negative) const;
  std::uint64_t pick(std::size_t lo_index, int cmp_to_mid, bool negative) const;
  mpq_class midpoint(std::size_t i) const;

  taperbench::FormatId f_;
  std::vector<Value> table_;
  std::vector<Entry> ladder_;  // ascending nonnegative candidates
  std::uint64_t nan_ = 0;
};

/// Exact result of a binary operation on decoded values, or NaN/NaR/inf.
Value exact_op(taperbench::FormatId f, char op, const Value& a, const Value& b);

std::uint64_t reference_arith(const Rounder& r, taperbench::FormatId f, char op, std::uint64_t a,
                              std::uint64_t b);

}  // namespace oracle

#endif
