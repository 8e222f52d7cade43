#pragma once

#include <cstdint>
#include <vector>

#include "mtsp/geometry.hpp"
#include "mtsp/subset_table.hpp"
#include "mtsp/timing.hpp"
#include "mtsp/tour.hpp"

namespace mtsp {

// A complete assignment of cities 1..n-1 to salesmen plus the optimal tour
// of each group.  total is the sum of tour lengths accumulated in salesman
// order, so it reproduces the search's own arithmetic bit for bit.
struct AllocationSolution {
  std::vector<std::vector<int>> groups;  // per salesman, ascending ids
  std::vector<TourSolution> tours;
  double total = 0.0;
  bool optimal = true;
  double duration_ms = 0.0;
  std::uint64_t work = 0;
};

// Unconstrained social optimum: minimises the summed tour lengths over all
// partitions of cities 1..n-1 into m non-empty groups (group cardinalities
// are NOT tied to any endowment).  Branch and bound over the subset tour
// table; on deadline the best incumbent is returned with optimal=false.
AllocationSolution solve_full_centr(const DistanceMatrix& d, int m,
                                    const Budget& budget = Budget::unlimited(),
                                    const DurationModel& model = DurationModel{});

// Constrained social optimum: same objective, but salesman k's group must
// have exactly |endowment[k]| cities (each salesman keeps as many cities
// as he started with).  If the deadline fires before any incumbent, the
// endowment itself is returned, flagged non-optimal.
AllocationSolution solve_opt_decentr(const DistanceMatrix& d,
                                     const std::vector<std::vector<int>>& endowment,
                                     const Budget& budget = Budget::unlimited(),
                                     const DurationModel& model = DurationModel{});

}  // namespace mtsp
