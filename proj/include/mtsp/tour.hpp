#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mtsp/geometry.hpp"
#include "mtsp/timing.hpp"

namespace mtsp {

struct TourSolution {
  std::vector<int> order;  // begins and ends at depot 0
  double length = 0.0;
  bool optimal = true;     // false when a deadline cut the search short
  double duration_ms = 0.0;
  std::uint64_t work = 0;  // elementary solver steps charged
};

// Exact shortest tour over {depot 0} plus the given cities, by dynamic
// programming over city subsets.  The DP layers (all subsets of one size)
// are data-parallel and run under OpenMP; results are bit-identical to the
// serial reference regardless of thread count because every cell scans its
// predecessors in the same order.  Ties break toward the lowest city index
// at every step, so the returned order is canonical.
//
// The deadline is checked between chunks of DP cells.  If it fires, the
// best incumbent found so far (a greedy nearest-neighbour tour) is
// returned with optimal=false; it always visits the full set.
//
// Set sizes above 22 are rejected (the DP table would not fit in memory).
TourSolution tsp_exact(const DistanceMatrix& d, std::span<const int> cities,
                       const Budget& budget = Budget::unlimited(),
                       const DurationModel& model = DurationModel{});

// Same computation on an existing meter, for composite scans that share
// one deadline across several solves.
TourSolution tsp_exact_on(const DistanceMatrix& d, std::span<const int> cities,
                          WorkMeter& meter);

namespace reference {
// Serial reference implementation, kept for testing and benchmarking.
TourSolution tsp_exact_serial(const DistanceMatrix& d, std::span<const int> cities,
                              const Budget& budget = Budget::unlimited(),
                              const DurationModel& model = DurationModel{});
TourSolution tsp_exact_serial_on(const DistanceMatrix& d, std::span<const int> cities,
                                 WorkMeter& meter);
}  // namespace reference

}  // namespace mtsp
