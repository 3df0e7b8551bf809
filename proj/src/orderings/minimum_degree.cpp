#include "taperbench/orderings/minimum_degree.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace taperbench {

namespace {

void sort_unique(AdjacencyGraph& g) {
  for (auto& nb : g) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
}

}  // namespace

AdjacencyGraph symmetric_pattern(const CscMatrix<double>& a) {
  AdjacencyGraph g(static_cast<std::size_t>(a.n_cols));
  for (std::int64_t j = 0; j < a.n_cols; ++j) {
    for (auto p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) {
      const auto i = a.row_idx[p];
      if (i == j) continue;
      g[static_cast<std::size_t>(j)].push_back(i);
      g[static_cast<std::size_t>(i)].push_back(static_cast<std::int32_t>(j));
    }
  }
  sort_unique(g);
  return g;
}

AdjacencyGraph gram_pattern(const CscMatrix<double>& a) {
  const auto n = a.n_cols;
  const auto at = transpose(a);
  const auto dense = std::max<std::int64_t>(16, static_cast<std::int64_t>(10.0 * std::sqrt(static_cast<double>(n))));
  AdjacencyGraph g(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < at.n_cols; ++r) {
    const auto begin = at.col_ptr[r];
    const auto end = at.col_ptr[r + 1];
    if (end - begin > dense) continue;
    for (auto p = begin; p < end; ++p) {
      for (auto q = begin; q < end; ++q) {
        if (p != q) g[static_cast<std::size_t>(at.row_idx[p])].push_back(at.row_idx[q]);
      }
    }
  }
  sort_unique(g);
  return g;
}

std::vector<std::int32_t> minimum_degree(const AdjacencyGraph& input) {
  const auto n = input.size();
  std::vector<std::set<std::int32_t>> adj(n);
  std::set<std::pair<std::size_t, std::int32_t>> queue;
  for (std::size_t v = 0; v < n; ++v) {
    adj[v].insert(input[v].begin(), input[v].end());
    queue.emplace(adj[v].size(), static_cast<std::int32_t>(v));
  }
  std::vector<std::int32_t> order;
  order.reserve(n);
  std::vector<std::int32_t> nb;
  while (!queue.empty()) {
    const auto p = queue.begin()->second;
    queue.erase(queue.begin());
    order.push_back(p);
    nb.assign(adj[static_cast<std::size_t>(p)].begin(), adj[static_cast<std::size_t>(p)].end());
    for (auto u : nb) {
      auto& au = adj[static_cast<std::size_t>(u)];
      queue.erase({au.size(), u});
      au.erase(p);
      for (auto w : nb) {
        if (w != u) au.insert(w);
      }
      queue.emplace(au.size(), u);
    }
    adj[static_cast<std::size_t>(p)].clear();
  }
  return order;
}

}  // namespace taperbench
