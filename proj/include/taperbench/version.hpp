#ifndef TAPERBENCH_VERSION_HPP
#define TAPERBENCH_VERSION_HPP

#include <string_view>

namespace taperbench {

inline constexpr std::string_view kVersion = "1.0.0";

}  // namespace taperbench

#endif
