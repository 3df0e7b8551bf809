#ifndef TAPERBENCH_FORMATS_FORMAT_ID_HPP
#define TAPERBENCH_FORMATS_FORMAT_ID_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace taperbench {

enum class Family : std::uint8_t { ieee, bfloat16, float8_e4m3, posit, takum_linear };

/// One of the 14 machine-number formats under evaluation.
struct FormatId {
  Family family = Family::ieee;
  int width = 64;

  constexpr bool operator==(const FormatId&) const = default;
};

using Code = std::uint64_t;

inline constexpr FormatId float8{Family::float8_e4m3, 8};
inline constexpr FormatId float16{Family::ieee, 16};
inline constexpr FormatId bfloat16{Family::bfloat16, 16};
inline constexpr FormatId float32{Family::ieee, 32};
inline constexpr FormatId float64{Family::ieee, 64};
inline constexpr FormatId posit8{Family::posit, 8};
inline constexpr FormatId posit16{Family::posit, 16};
inline constexpr FormatId posit32{Family::posit, 32};
inline constexpr FormatId posit64{Family::posit, 64};
inline constexpr FormatId takum8{Family::takum_linear, 8};
inline constexpr FormatId takum16{Family::takum_linear, 16};
inline constexpr FormatId takum32{Family::takum_linear, 32};
inline constexpr FormatId takum64{Family::takum_linear, 64};

inline constexpr std::array<FormatId, 14> all_formats = {
    float8, float16, bfloat16, float32, float64, posit8, posit16,
    posit32, posit64, takum8, takum16, takum32, takum64};

constexpr bool is_valid(FormatId f) {
  for (FormatId g : all_formats) {
    if (g == f) return true;
  }
  return false;
}

constexpr bool is_tapered(FormatId f) {
  return f.family == Family::posit || f.family == Family::takum_linear;
}

constexpr Code width_mask(FormatId f) {
  return f.width == 64 ? ~Code{0} : (Code{1} << f.width) - 1;
}

/// Command-line name, e.g. "posit16", "takum_linear8", "float8".
std::string format_name(FormatId f);

/// Report column name, e.g. "Posit16", "LinearTakum8", "BFloat16".
std::string display_name(FormatId f);

/// Position in all_formats; used for deterministic ordering.
int format_index(FormatId f);

std::optional<FormatId> parse_format(std::string_view name);

}  // namespace taperbench

#endif
