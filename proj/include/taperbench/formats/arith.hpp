#ifndef TAPERBENCH_FORMATS_ARITH_HPP
#define TAPERBENCH_FORMATS_ARITH_HPP

#include "taperbench/formats/codec.hpp"

namespace taperbench {

enum class Op : std::uint8_t { add, sub, mul, div, sqrt };

/// Correctly rounded operation: encode(f, exact(decode(a) op decode(b))).
/// `b` is ignored for sqrt.
Code arith(FormatId f, Op op, Code a, Code b = 0);

/// Same contract as arith, never taking a native hardware shortcut.
Code arith_soft(FormatId f, Op op, Code a, Code b = 0);

Code convert(FormatId src, FormatId dst, Code c);

}  // namespace taperbench

#endif
