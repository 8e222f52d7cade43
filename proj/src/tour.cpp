#include "mtsp/tour.hpp"

#include <bit>
#include <limits>

#include "tour_detail.hpp"

namespace mtsp {

using namespace tour_detail;

// OpenMP kernel: within a layer every (mask, last) cell depends only on the
// previous layer, so cells are computed in parallel.  Chunks bound the work
// between deadline checks; chunk boundaries are fixed, so deterministic-mode
// truncation happens at the same point on every machine.
TourSolution tsp_exact_on(const DistanceMatrix& d, std::span<const int> cities,
                          WorkMeter& meter) {
  auto s = validated_sorted(d, cities);
  const int k = static_cast<int>(s.size());
  if (k == 0) return TourSolution{{0, 0}, 0.0, true, 0.0, 0};

  std::vector<double> dep(k);
  std::vector<double> dd(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i) {
    dep[i] = d(0, s[i]);
    for (int j = 0; j < k; ++j) dd[static_cast<std::size_t>(i) * k + j] = d(s[i], s[j]);
  }
  TourSolution incumbent = nearest_neighbour(d, s);
  meter.charge(2ull * k * k + k);
  if (meter.expired()) {
    incumbent.optimal = false;
    return incumbent;
  }

  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t cells = (std::size_t{1} << k) * k;
  std::vector<double> dp(cells, inf);
  std::vector<std::int8_t> parent(cells, -1);
  for (int i = 0; i < k; ++i) dp[(std::size_t{1} << i) * k + i] = dep[i];

  std::vector<std::uint32_t> layer;
  for (int p = 2; p <= k; ++p) {
    masks_of_popcount(k, p, layer);
    const std::uint64_t per_mask = static_cast<std::uint64_t>(p) * (p - 1);
    const std::size_t chunk =
        std::max<std::size_t>(1, static_cast<std::size_t>(kChunkRelaxations / per_mask));
    for (std::size_t base = 0; base < layer.size(); base += chunk) {
      const std::size_t end = std::min(layer.size(), base + chunk);
#pragma omp parallel for schedule(static)
      for (long long idx = static_cast<long long>(base); idx < static_cast<long long>(end);
           ++idx) {
        const std::uint32_t mask = layer[idx];
        for (std::uint32_t rem = mask; rem; rem &= rem - 1) {
          const int j = std::countr_zero(rem);
          const std::uint32_t prev = mask ^ (1u << j);
          double best = inf;
          std::int8_t arg = -1;
          for (std::uint32_t r2 = prev; r2; r2 &= r2 - 1) {
            const int last = std::countr_zero(r2);
            const double cand = dp[static_cast<std::size_t>(prev) * k + last] +
                                dd[static_cast<std::size_t>(last) * k + j];
            if (cand < best) {
              best = cand;
              arg = static_cast<std::int8_t>(last);
            }
          }
          dp[static_cast<std::size_t>(mask) * k + j] = best;
          parent[static_cast<std::size_t>(mask) * k + j] = arg;
        }
      }
      meter.charge((end - base) * per_mask);
      if (meter.expired()) {
        incumbent.optimal = false;
        return incumbent;
      }
    }
  }
  meter.charge(static_cast<std::uint64_t>(k));
  return finish_from_parents(s, dp, parent, dep);
}

TourSolution tsp_exact(const DistanceMatrix& d, std::span<const int> cities,
                       const Budget& budget, const DurationModel& model) {
  WorkMeter meter(model, budget);
  TourSolution t = tsp_exact_on(d, cities, meter);
  t.duration_ms = meter.duration_ms();
  t.work = meter.work();
  return t;
}

}  // namespace mtsp
