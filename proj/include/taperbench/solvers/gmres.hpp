#ifndef TAPERBENCH_SOLVERS_GMRES_HPP
#define TAPERBENCH_SOLVERS_GMRES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "taperbench/solvers/lu.hpp"
#include "taperbench/solvers/status.hpp"

namespace taperbench {

/// sqrt(eps) of the IEEE type of the same width: 8 bits use E4M3 (p = 4).
inline double gmres_tolerance(int width) {
  switch (width) {
    case 8:
      return std::sqrt(std::ldexp(1.0, -3));
    case 16:
      return std::sqrt(std::ldexp(1.0, -10));
    case 32:
      return std::sqrt(std::ldexp(1.0, -23));
    default:
      return std::sqrt(std::ldexp(1.0, -52));
  }
}

struct GmresParameters {
  int restart = 0;
  int max_iter = 0;
  double tol = 0.0;
};

inline GmresParameters gmres_parameters(std::int64_t n, int width) {
  return {static_cast<int>(std::min<std::int64_t>(20, n)), static_cast<int>(n), gmres_tolerance(width)};
}

namespace detail {

template <class T>
T dot(const std::vector<T>& x, const std::vector<T>& y) {
  T s(0.0);
  for (std::size_t i = 0; i < x.size(); ++i) s = s + x[i] * y[i];
  return s;
}

/// Plain sum of squares; rescales by the largest magnitude only when that
/// sum would leave the finite range or vanish.
template <class T>
T norm2(const std::vector<T>& x) {
  T maxabs(0.0);
  for (const auto& v : x) {
    if (is_invalid(v)) return v;
    const T a = magnitude(v);
    if (maxabs < a) maxabs = a;
  }
  if (is_zero_value(maxabs)) return maxabs;
  const T sq = maxabs * maxabs;
  const T guard = T(static_cast<double>(x.size())) * sq;
  if (!is_invalid(guard) && !is_zero_value(sq)) {
    T s(0.0);
    for (const auto& v : x) s = s + v * v;
    return square_root(s);
  }
  T s(0.0);
  for (const auto& v : x) {
    const T q = magnitude(v) / maxabs;
    s = s + q * q;
  }
  return maxabs * square_root(s);
}

template <class T>
void precondition(const LuFactors<T>& m, std::vector<T>& v) {
  unit_lower_solve(m.L, v);
  upper_solve(m.U, v);
}

}  // namespace detail

/// Called at the end of every restart cycle with the basis V[0..k].
template <class T>
using GmresBasisObserver = std::function<void(const std::vector<std::vector<T>>& basis, int k)>;

/// Restarted GMRES with left preconditioner M = LU, zero initial guess and
/// modified Gram-Schmidt. Stops once the preconditioned residual estimate
/// drops to tol * beta0 or after max_iter inner iterations in total.
template <class T>
SolveResult<T> gmres(const CscMatrix<T>& a, const std::vector<T>& b, const LuFactors<T>& m, int restart,
                     int max_iter, double tol, const GmresBasisObserver<T>& observer = {}) {
  const auto n = static_cast<std::size_t>(a.n_cols);
  const auto ur = static_cast<std::size_t>(restart);
  SolveResult<T> res;
  res.x.assign(n, T(0.0));
  auto& x = res.x;

  std::vector<std::vector<T>> V(ur + 1, std::vector<T>(n, T(0.0)));
  std::vector<std::vector<T>> H(ur + 1, std::vector<T>(ur, T(0.0)));  // H[row][col]
  std::vector<T> nullvec(ur + 1, T(0.0));
  T accumulator(1.0);

  auto init = [&]() {
    auto& v = V[0];
    const auto ax = multiply(a, x);
    for (std::size_t i = 0; i < n; ++i) v[i] = b[i] - ax[i];
    detail::precondition(m, v);
    const T beta = detail::norm2(v);
    const T inv = T(1.0) / beta;
    for (auto& e : v) e = e * inv;
    return beta;
  };
  auto init_residual = [&]() {
    accumulator = T(1.0);
    nullvec[0] = T(1.0);
  };

  T beta = init();
  init_residual();
  T current = beta;
  const T tolerance = T(tol) * beta;
  auto converged = [&] { return current <= tolerance; };
  auto done = [&](int it) { return it >= max_iter || converged(); };

  int iteration = 0;
  std::size_t k = 1;  // number of basis vectors in use
  while (!done(iteration)) {
    if (is_invalid(current)) break;
    // expand
    auto& w = V[k];
    w = multiply(a, V[k - 1]);
    detail::precondition(m, w);
    // modified Gram-Schmidt
    for (std::size_t i = 0; i < k; ++i) {
      const T h = detail::dot(V[i], w);
      H[i][k - 1] = h;
      for (std::size_t t = 0; t < n; ++t) w[t] = w[t] - h * V[i][t];
    }
    const T nrm = detail::norm2(w);
    for (auto& e : w) e = e / nrm;
    H[k][k - 1] = nrm;
    // residual estimate from the null vector of the Hessenberg matrix
    if (is_zero_value(nrm)) {
      current = T(0.0);
    } else {
      T s(0.0);
      for (std::size_t i = 0; i < k; ++i) s = s + nullvec[i] * H[i][k - 1];
      nullvec[k] = -(s / nrm);
      accumulator = accumulator + nullvec[k] * nullvec[k];
      current = beta / square_root(accumulator);
    }
    ++k;
    ++iteration;
    if (k == ur + 1 || done(iteration) || is_invalid(current)) {
      const std::size_t width = k - 1;
      if (observer) observer(V, static_cast<int>(width));
      // least squares via Givens rotations on the (width+1) x width Hessenberg matrix
      std::vector<T> rhs(width + 1, T(0.0));
      rhs[0] = beta;
      for (std::size_t i = 0; i < width; ++i) {
        const T f = H[i][i];
        const T g = H[i + 1][i];
        const T r = square_root(f * f + g * g);
        const T c = f / r;
        const T s = g / r;
        for (std::size_t j = i + 1; j < width; ++j) {
          const T hij = H[i][j];
          const T hi1j = H[i + 1][j];
          H[i][j] = c * hij + s * hi1j;
          H[i + 1][j] = -s * hij + c * hi1j;
        }
        H[i][i] = c * f + s * g;
        H[i + 1][i] = T(0.0);
        const T ri = rhs[i];
        const T ri1 = rhs[i + 1];
        rhs[i] = c * ri + s * ri1;
        rhs[i + 1] = -s * ri + c * ri1;
      }
      for (std::size_t ii = width; ii-- > 0;) {
        T s = rhs[ii];
        for (std::size_t j = ii + 1; j < width; ++j) s = s - H[ii][j] * rhs[j];
        rhs[ii] = s / H[ii][ii];
      }
      // x += V y, one column at a time
      for (std::size_t j = 0; j < width; ++j) {
        for (std::size_t t = 0; t < n; ++t) x[t] = x[t] + V[j][t] * rhs[j];
      }
      k = 1;
      if (!done(iteration) && !is_invalid(current)) {
        for (auto& row : H) std::fill(row.begin(), row.end(), T(0.0));
        beta = init();
        init_residual();
      }
    }
  }
  res.iterations = iteration;
  if (is_invalid(current) || !converged()) res.status = SolveStatus::max_iter_failure;
  return res;
}

}  // namespace taperbench

#endif
