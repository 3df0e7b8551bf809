#ifndef TAPERBENCH_FORMATS_CONFORMANCE_HPP
#define TAPERBENCH_FORMATS_CONFORMANCE_HPP

#include <cstdint>
#include <optional>
#include <ostream>

#include "taperbench/formats/format_id.hpp"

namespace taperbench {

/// Writes `code_hex,value_decimal,class` rows for every code of f, or for
/// `sample` pseudo-randomly chosen codes (ascending, deduplicated).
/// Exhaustive mode requires width <= 16.
void write_code_table(std::ostream& out, FormatId f, std::optional<std::uint64_t> sample = std::nullopt,
                      std::uint64_t seed = 0);

}  // namespace taperbench

#endif
