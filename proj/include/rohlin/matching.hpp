#pragma once

#include <cstddef>
#include <vector>

namespace rohlin {

struct BottleneckAssignment {
  double value = 0.0;
  /// assignment[row] = column.
  std::vector<std::size_t> assignment;
};

/// Perfect matching of an n x n bipartite graph minimizing the largest edge
/// cost. `cost` is row-major. Binary search over the distinct costs, with a
/// Hopcroft-Karp feasibility test at each threshold.
BottleneckAssignment bottleneck_assignment(std::size_t n, const std::vector<double>& cost);

}  // namespace rohlin
