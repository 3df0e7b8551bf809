#include "taperbench/harness/system.hpp"

#include <cmath>

#include "taperbench/solvers/direct.hpp"
#include "taperbench/util/random.hpp"

namespace taperbench {

std::vector<double> random_rhs(const std::string& name, std::int64_t n, std::uint64_t seed) {
  Xoshiro256StarStar rng(seed ^ fnv1a64(name));
  std::vector<double> b(static_cast<std::size_t>(n));
  double m = 0.0;
  for (auto& v : b) {
    v = 2.0 * rng.uniform() - 1.0;
    m = std::max(m, std::abs(v));
  }
  if (m > 0.0) {
    for (auto& v : b) v /= m;
  }
  return b;
}

TestSystem build_system(const std::string& name, const CscMatrix<double>& a, std::uint64_t seed,
                        const StructuralPlan& qr_plan) {
  TestSystem s;
  s.name = name;
  s.a = a;
  s.b = random_rhs(name, a.n_rows, seed);
  try {
    s.x_ref = extended_reference_solution(a, s.b, qr_plan);
  } catch (const HarnessError& e) {
    throw HarnessError(name + ": " + e.what());
  }
  return s;
}

std::vector<ExtendedReal> extended_reference_solution(const CscMatrix<double>& a, const std::vector<double>& b,
                                                      const StructuralPlan& qr_plan) {
  const auto ax = map_values<ExtendedReal>(a, [](double v) { return ExtendedReal(v); });
  std::vector<ExtendedReal> bx(b.begin(), b.end());
  auto res = solve_with_qr(ax, bx, qr_plan);
  if (res.status != SolveStatus::ok) {
    throw HarnessError("reference solve failed: " + std::string(status_name(res.status)));
  }
  return std::move(res.x);
}

TestSystem build_system(const std::string& name, const CscMatrix<double>& a, std::uint64_t seed) {
  return build_system(name, a, seed, plan_qr(a));
}

ErrorNorms solution_errors(const std::vector<ExtendedReal>& x, const std::vector<ExtendedReal>& x_ref) {
  ExtendedReal d2(0.0);
  ExtendedReal r2(0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const ExtendedReal d = x[i] - x_ref[i];
    d2 += d * d;
    r2 += x_ref[i] * x_ref[i];
  }
  const ExtendedReal abs_err = sqrt(d2);
  return {abs_err, abs_err / sqrt(r2)};
}

}  // namespace taperbench
