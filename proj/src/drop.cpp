#include "mtsp/drop.hpp"

#include <algorithm>

namespace mtsp {

DropSolution best_drop_on(const DistanceMatrix& d, std::span<const int> cities,
                          std::span<const int> must_keep, WorkMeter& meter) {
  std::vector<int> owned(cities.begin(), cities.end());
  std::sort(owned.begin(), owned.end());
  std::vector<int> keep(must_keep.begin(), must_keep.end());
  std::sort(keep.begin(), keep.end());

  DropSolution best;
  std::vector<int> rest;
  rest.reserve(owned.size());
  for (int c : owned) {
    if (std::binary_search(keep.begin(), keep.end(), c)) continue;
    if (meter.expired()) {
      best.optimal = false;
      break;
    }
    rest.clear();
    for (int o : owned)
      if (o != c) rest.push_back(o);
    TourSolution t = tsp_exact_on(d, rest, meter);
    if (!t.optimal) best.optimal = false;
    if (best.dropped < 0 || t.length < best.remaining_tour.length) {
      best.dropped = c;
      best.remaining_tour = std::move(t);
    }
  }
  return best;
}

DropSolution best_drop(const DistanceMatrix& d, std::span<const int> cities,
                       std::span<const int> must_keep, const Budget& budget,
                       const DurationModel& model) {
  WorkMeter meter(model, budget);
  DropSolution s = best_drop_on(d, cities, must_keep, meter);
  s.duration_ms = meter.duration_ms();
  s.work = meter.work();
  return s;
}

}  // namespace mtsp
