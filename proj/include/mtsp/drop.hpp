#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mtsp/geometry.hpp"
#include "mtsp/timing.hpp"
#include "mtsp/tour.hpp"

namespace mtsp {

// Result of choosing which single city to give away: the one whose removal
// leaves the shortest remaining tour.  dropped = -1 when every owned city
// is excluded by must_keep.
struct DropSolution {
  int dropped = -1;
  TourSolution remaining_tour;  // over cities minus dropped, when dropped >= 0
  bool optimal = true;
  double duration_ms = 0.0;
  std::uint64_t work = 0;
};

// Evaluates tsp_exact over cities \ {c} for every candidate c not in
// must_keep, ascending, keeping the strictly best (ties fall to the lowest
// city id).  All candidate solves share one meter, so the whole scan
// respects a single deadline; if it fires mid-scan the best candidate seen
// so far is returned with optimal=false.
DropSolution best_drop(const DistanceMatrix& d, std::span<const int> cities,
                       std::span<const int> must_keep,
                       const Budget& budget = Budget::unlimited(),
                       const DurationModel& model = DurationModel{});
DropSolution best_drop_on(const DistanceMatrix& d, std::span<const int> cities,
                          std::span<const int> must_keep, WorkMeter& meter);

}  // namespace mtsp
