#ifndef TAPERBENCH_ORDERINGS_MINIMUM_DEGREE_HPP
#define TAPERBENCH_ORDERINGS_MINIMUM_DEGREE_HPP

#include <cstdint>
#include <vector>

#include "taperbench/matrices/csc.hpp"

namespace taperbench {

/// Undirected graph as sorted adjacency lists without self loops.
using AdjacencyGraph = std::vector<std::vector<std::int32_t>>;

/// Pattern of A + A^T (square A).
AdjacencyGraph symmetric_pattern(const CscMatrix<double>& a);

/// Pattern of A^T A. Rows with more than max(16, 10 sqrt(n)) entries are
/// left out so a single dense row does not make the graph complete.
AdjacencyGraph gram_pattern(const CscMatrix<double>& a);

/// Exact minimum degree on the elimination graph. Ties go to the smallest
/// node index. Returns the elimination order.
std::vector<std::int32_t> minimum_degree(const AdjacencyGraph& g);

}  // namespace taperbench

#endif
