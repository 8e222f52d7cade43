#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mtsp/geometry.hpp"
#include "mtsp/timing.hpp"
#include "mtsp/tour.hpp"

namespace mtsp {

// Optimal tour length for every subset of a base city set, indexed by
// bitmask (bit i stands for cities[i], ascending).  Entries agree with
// tsp_exact on the same subset bit for bit.  When a deadline interrupts
// the build, complete=false and only subsets of size <= completed_size
// hold valid values; the rest are +inf.
struct SubsetTourTable {
  std::vector<int> cities;
  std::vector<double> length;
  bool complete = true;
  int completed_size = 0;
  double duration_ms = 0.0;
  std::uint64_t work = 0;

  double at(std::uint32_t mask) const { return length[mask]; }
};

// One subset-DP sweep; the per-layer cell loops and the closure over
// subsets run under OpenMP.  Sets larger than `cap` (default 22, the
// memory ceiling) are rejected.
SubsetTourTable subset_tour_table(const DistanceMatrix& d, std::span<const int> cities,
                                  const Budget& budget = Budget::unlimited(),
                                  const DurationModel& model = DurationModel{}, int cap = 22);
SubsetTourTable subset_tour_table_on(const DistanceMatrix& d, std::span<const int> cities,
                                     WorkMeter& meter, int cap = 22);

namespace reference {
SubsetTourTable subset_tour_table_serial(const DistanceMatrix& d, std::span<const int> cities,
                                         const Budget& budget = Budget::unlimited(),
                                         const DurationModel& model = DurationModel{},
                                         int cap = 22);
SubsetTourTable subset_tour_table_serial_on(const DistanceMatrix& d, std::span<const int> cities,
                                            WorkMeter& meter, int cap = 22);
}  // namespace reference

}  // namespace mtsp
