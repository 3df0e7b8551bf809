#ifndef TAPERBENCH_SRC_HARNESS_DISPATCH_HPP
#define TAPERBENCH_SRC_HARNESS_DISPATCH_HPP

#include <type_traits>

#include "taperbench/formats/number.hpp"
#include "taperbench/harness/experiment.hpp"
#include "taperbench/solvers/direct.hpp"
#include "taperbench/solvers/gmres.hpp"
#include "taperbench/solvers/ilu0.hpp"
#include "taperbench/solvers/mpir.hpp"

namespace taperbench::detail {

template <class Fn>
decltype(auto) visit_format(FormatId f, Fn&& fn) {
  using std::type_identity;
  if (f == float8) return fn(type_identity<Number<float8>>{});
  if (f == float16) return fn(type_identity<Number<float16>>{});
  if (f == bfloat16) return fn(type_identity<Number<bfloat16>>{});
  if (f == float32) return fn(type_identity<Number<float32>>{});
  if (f == float64) return fn(type_identity<Number<float64>>{});
  if (f == posit8) return fn(type_identity<Number<posit8>>{});
  if (f == posit16) return fn(type_identity<Number<posit16>>{});
  if (f == posit32) return fn(type_identity<Number<posit32>>{});
  if (f == posit64) return fn(type_identity<Number<posit64>>{});
  if (f == takum8) return fn(type_identity<Number<takum8>>{});
  if (f == takum16) return fn(type_identity<Number<takum16>>{});
  if (f == takum32) return fn(type_identity<Number<takum32>>{});
  return fn(type_identity<Number<takum64>>{});
}

template <class T>
void finish(ExperimentOutcome& out, const TestSystem& sys, const SolveResult<T>& res) {
  out.status = res.status;
  out.iterations = res.iterations;
  if (out.status != SolveStatus::ok) return;
  if (!all_valid(res.x)) {
    out.status = SolveStatus::range_failure;
    return;
  }
  std::vector<ExtendedReal> x;
  x.reserve(res.x.size());
  for (const auto& v : res.x) x.push_back(ScalarTraits<T>::to_extended(v));
  const auto e = solution_errors(x, sys.x_ref);
  out.abs_err = e.abs_err;
  out.rel_err = e.rel_err;
}

constexpr FormatId family_format_c(MpirFamily fam, int width) {
  if (width == 8) {
    return fam == MpirFamily::posit ? posit8 : fam == MpirFamily::takum ? takum8 : float8;
  }
  if (width == 16) {
    return fam == MpirFamily::posit   ? posit16
           : fam == MpirFamily::takum ? takum16
           : fam == MpirFamily::bfloat ? bfloat16
                                      : float16;
  }
  if (width == 32) return fam == MpirFamily::posit ? posit32 : fam == MpirFamily::takum ? takum32 : float32;
  return fam == MpirFamily::posit ? posit64 : fam == MpirFamily::takum ? takum64 : float64;
}

template <MpirFamily Fam, int Lw, int Ww, int Hw>
ExperimentOutcome run_mpir_typed(const TestSystem& sys, double tol, const PlanSet& plans, int max_iter) {
  using L = Number<family_format_c(Fam, Lw)>;
  using W = Number<family_format_c(Fam, Ww)>;
  using H = Number<family_format_c(Fam, Hw)>;
  ExperimentOutcome out;
  out.matrix = sys.name;
  const auto conv = convert_with_check<W>(sys.a, sys.b);
  if (conv.status != SolveStatus::ok) {
    out.status = conv.status;
    return out;
  }
  const auto res = mpir<L, W, H>(conv.a, conv.b, plans.lu, tol, max_iter);
  finish(out, sys, res.solve);
  return out;
}

template <MpirFamily Fam>
ExperimentOutcome run_mpir_family(const TestSystem& sys, const PrecisionTriple& t, double tol, const PlanSet& plans,
                                  int max_iter) {
  ExperimentOutcome out;
  bool found = false;
  auto try_one = [&]<int Lw, int Ww, int Hw>() {
    if constexpr (Lw <= Ww && Ww <= Hw) {
      if (!found && t.low == Lw && t.working == Ww && t.high == Hw) {
        out = run_mpir_typed<Fam, Lw, Ww, Hw>(sys, tol, plans, max_iter);
        found = true;
      }
    }
  };
  auto over_h = [&]<int Lw, int Ww>() {
    try_one.template operator()<Lw, Ww, 8>();
    try_one.template operator()<Lw, Ww, 16>();
    try_one.template operator()<Lw, Ww, 32>();
    try_one.template operator()<Lw, Ww, 64>();
  };
  auto over_w = [&]<int Lw>() {
    over_h.template operator()<Lw, 8>();
    over_h.template operator()<Lw, 16>();
    over_h.template operator()<Lw, 32>();
    over_h.template operator()<Lw, 64>();
  };
  over_w.template operator()<8>();
  over_w.template operator()<16>();
  over_w.template operator()<32>();
  over_w.template operator()<64>();
  if (!found) throw ConfigError("invalid precision triple " + triple_label(t));
  return out;
}

}  // namespace taperbench::detail

#endif
