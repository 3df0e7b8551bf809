#include "taperbench/orderings/reference_lu.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <utility>

#include "taperbench/orderings/minimum_degree.hpp"
#include "taperbench/solvers/triangular.hpp"

namespace taperbench {

namespace {

// Nodes reachable from the pattern of column c of A through the graph of L,
// in topological order.
void reach(const CscMatrix<double>& a, std::int64_t c, const std::vector<std::vector<std::pair<std::int32_t, double>>>& lcols,
           const std::vector<std::int32_t>& pinv, std::vector<std::int64_t>& mark, std::int64_t stamp,
           std::vector<std::int32_t>& out) {
  out.clear();
  std::vector<std::pair<std::int32_t, std::size_t>> stack;
  for (auto p = a.col_ptr[c]; p < a.col_ptr[c + 1]; ++p) {
    const auto start = a.row_idx[p];
    if (mark[static_cast<std::size_t>(start)] == stamp) continue;
    mark[static_cast<std::size_t>(start)] = stamp;
    stack.emplace_back(start, 0);
    while (!stack.empty()) {
      auto& [node, pos] = stack.back();
      const auto col = pinv[static_cast<std::size_t>(node)];
      bool descended = false;
      if (col >= 0) {
        const auto& lc = lcols[static_cast<std::size_t>(col)];
        while (pos < lc.size()) {
          const auto next = lc[pos++].first;
          if (mark[static_cast<std::size_t>(next)] != stamp) {
            mark[static_cast<std::size_t>(next)] = stamp;
            stack.emplace_back(next, 0);
            descended = true;
            break;
          }
        }
      }
      if (!descended) {
        out.push_back(node);
        stack.pop_back();
      }
    }
  }
  std::reverse(out.begin(), out.end());
}

}  // namespace

ReferenceLuOutcome reference_lu(const CscMatrix<double>& a, const std::vector<std::int32_t>& col_order,
                                PivotRule rule, double threshold) {
  const auto n = a.n_cols;
  const auto un = static_cast<std::size_t>(n);
  ReferenceLuOutcome out;
  std::vector<std::int64_t> row_count(un, 0);
  for (auto r : a.row_idx) ++row_count[static_cast<std::size_t>(r)];

  std::vector<std::int32_t> pinv(un, -1);
  std::vector<std::vector<std::pair<std::int32_t, double>>> lcols(un);  // original row indices, no diagonal
  std::vector<std::vector<std::pair<std::int32_t, double>>> ucols(un);  // step indices, diagonal last
  std::vector<double> x(un, 0.0);
  std::vector<std::int64_t> mark(un, -1);
  std::vector<std::int32_t> topo;
  out.lu.row_perm.assign(un, -1);
  out.lu.col_perm = col_order;

  for (std::int64_t k = 0; k < n; ++k) {
    const auto c = col_order[static_cast<std::size_t>(k)];
    reach(a, c, lcols, pinv, mark, k, topo);
    for (auto p = a.col_ptr[c]; p < a.col_ptr[c + 1]; ++p) x[static_cast<std::size_t>(a.row_idx[p])] = a.values[p];
    for (auto j : topo) {
      const auto col = pinv[static_cast<std::size_t>(j)];
      if (col < 0) continue;
      const double xj = x[static_cast<std::size_t>(j)];
      for (const auto& [i, l] : lcols[static_cast<std::size_t>(col)]) x[static_cast<std::size_t>(i)] -= l * xj;
    }
    double max_abs = 0.0;
    for (auto i : topo) {
      if (pinv[static_cast<std::size_t>(i)] < 0) max_abs = std::max(max_abs, std::abs(x[static_cast<std::size_t>(i)]));
    }
    if (!(max_abs > 0.0) || !std::isfinite(max_abs)) {
      out.failed_step = k;
      return out;
    }
    const double bar = threshold * max_abs;
    std::int32_t piv = -1;
    if (rule == PivotRule::prefer_diagonal && mark[static_cast<std::size_t>(c)] == k &&
        pinv[static_cast<std::size_t>(c)] < 0 && std::abs(x[static_cast<std::size_t>(c)]) >= bar) {
      piv = c;
    }
    if (piv < 0) {
      for (auto i : topo) {
        const auto ui = static_cast<std::size_t>(i);
        if (pinv[ui] >= 0 || std::abs(x[ui]) < bar) continue;
        if (piv < 0) {
          piv = i;
          continue;
        }
        const auto up = static_cast<std::size_t>(piv);
        const auto key_i = std::make_tuple(row_count[ui], -std::abs(x[ui]), i);
        const auto key_p = std::make_tuple(row_count[up], -std::abs(x[up]), piv);
        if (key_i < key_p) piv = i;
      }
    }
    const double pivot = x[static_cast<std::size_t>(piv)];
    auto& uc = ucols[static_cast<std::size_t>(k)];
    auto& lc = lcols[static_cast<std::size_t>(k)];
    for (auto i : topo) {
      const auto ui = static_cast<std::size_t>(i);
      if (pinv[ui] >= 0) {
        uc.emplace_back(pinv[ui], x[ui]);
      } else if (i != piv) {
        lc.emplace_back(i, x[ui] / pivot);
      }
      x[ui] = 0.0;
    }
    std::sort(uc.begin(), uc.end());
    uc.emplace_back(static_cast<std::int32_t>(k), pivot);
    pinv[static_cast<std::size_t>(piv)] = static_cast<std::int32_t>(k);
    out.lu.row_perm[static_cast<std::size_t>(k)] = piv;
  }

  auto& L = out.lu.L;
  auto& U = out.lu.U;
  L.n_rows = L.n_cols = U.n_rows = U.n_cols = n;
  for (std::size_t k = 0; k < un; ++k) {
    auto& lc = lcols[k];
    for (auto& e : lc) e.first = pinv[static_cast<std::size_t>(e.first)];
    std::sort(lc.begin(), lc.end());
    L.row_idx.push_back(static_cast<std::int32_t>(k));
    L.values.push_back(1.0);
    for (const auto& [i, v] : lc) {
      L.row_idx.push_back(i);
      L.values.push_back(v);
    }
    L.col_ptr.push_back(L.nnz());
    for (const auto& [i, v] : ucols[k]) {
      U.row_idx.push_back(i);
      U.values.push_back(v);
    }
    U.col_ptr.push_back(U.nnz());
  }
  out.ok = true;
  return out;
}

double pattern_symmetry(const CscMatrix<double>& a) {
  const auto at = transpose(a);
  std::int64_t off = 0;
  std::int64_t matched = 0;
  for (std::int64_t j = 0; j < a.n_cols; ++j) {
    auto q = at.col_ptr[j];
    for (auto p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) {
      const auto i = a.row_idx[p];
      if (i == j) continue;
      ++off;
      while (q < at.col_ptr[j + 1] && at.row_idx[q] < i) ++q;
      if (q < at.col_ptr[j + 1] && at.row_idx[q] == i) ++matched;
    }
  }
  return off == 0 ? 1.0 : static_cast<double>(matched) / static_cast<double>(off);
}

ReferenceLuOutcome factorize_reference(const CscMatrix<double>& a, double threshold) {
  if (pattern_symmetry(a) >= 0.5) {
    return reference_lu(a, minimum_degree(symmetric_pattern(a)), PivotRule::prefer_diagonal, threshold);
  }
  return reference_lu(a, minimum_degree(gram_pattern(a)), PivotRule::sparsest_row, threshold);
}

std::vector<double> reference_solve(const ReferenceLu& f, const std::vector<double>& b) {
  const auto n = f.row_perm.size();
  std::vector<double> y(n);
  for (std::size_t k = 0; k < n; ++k) y[k] = b[static_cast<std::size_t>(f.row_perm[k])];
  unit_lower_solve(f.L, y);
  upper_solve(f.U, y);
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) x[static_cast<std::size_t>(f.col_perm[j])] = y[j];
  return x;
}

std::vector<double> reference_transpose_solve(const ReferenceLu& f, const std::vector<double>& b) {
  const auto n = f.row_perm.size();
  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j) y[j] = b[static_cast<std::size_t>(f.col_perm[j])];
  upper_transpose_solve(f.U, y);
  unit_lower_transpose_solve(f.L, y);
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) x[static_cast<std::size_t>(f.row_perm[k])] = y[k];
  return x;
}

}  // namespace taperbench
