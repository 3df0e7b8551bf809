#ifndef TAPERBENCH_SOLVERS_STATUS_HPP
#define TAPERBENCH_SOLVERS_STATUS_HPP

#include <cstdint>
#include <string_view>
#include <vector>

namespace taperbench {

enum class SolveStatus : std::uint8_t { ok, range_failure, singular_failure, max_iter_failure };

constexpr std::string_view status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::ok:
      return "ok";
    case SolveStatus::range_failure:
      return "range_failure";
    case SolveStatus::singular_failure:
      return "singular_failure";
    case SolveStatus::max_iter_failure:
      return "max_iter_failure";
  }
  return "?";
}

template <class T>
struct SolveResult {
  SolveStatus status = SolveStatus::ok;
  std::vector<T> x;
  int iterations = 0;
};

}  // namespace taperbench

#endif
