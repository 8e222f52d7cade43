#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mtsp/geometry.hpp"
#include "mtsp/timing.hpp"

namespace mtsp {

// Partition of cities 1..n-1 into clusters of prescribed sizes minimising
// the largest cluster diameter (greatest pairwise distance inside any
// cluster; singletons have diameter 0).  Cluster k is destined for
// salesman k.  Ties resolve to the lexicographically smallest membership
// vector (city 1's cluster index, then city 2's, ...).
struct Clustering {
  std::vector<std::vector<int>> clusters;  // per cluster, ascending ids
  double max_diameter = 0.0;
  bool optimal = true;
  double duration_ms = 0.0;
  std::uint64_t work = 0;
};

// Depth-first search over membership vectors in lexicographic order with
// diameter-based pruning; the first optimum found is therefore the
// canonical one.  On deadline the best incumbent found so far is returned
// with optimal=false.  sizes must be positive and sum to n-1.
Clustering solve_clustering(const DistanceMatrix& d, std::span<const int> sizes,
                            const Budget& budget = Budget::unlimited(),
                            const DurationModel& model = DurationModel{});

}  // namespace mtsp
