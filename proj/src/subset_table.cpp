#include "mtsp/subset_table.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

#include "tour_detail.hpp"

namespace mtsp {

using namespace tour_detail;

SubsetTourTable subset_tour_table_on(const DistanceMatrix& d, std::span<const int> cities,
                                     WorkMeter& meter, int cap) {
  auto s = validated_sorted(d, cities);
  const int k = static_cast<int>(s.size());
  if (k > cap) throw std::invalid_argument("subset table cap exceeded");

  const double inf = std::numeric_limits<double>::infinity();
  SubsetTourTable table;
  table.cities = s;
  table.length.assign(std::size_t{1} << k, inf);
  table.length[0] = 0.0;
  table.completed_size = 0;
  if (k == 0) return table;

  std::vector<double> dep(k);
  std::vector<double> dd(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i) {
    dep[i] = d(0, s[i]);
    for (int j = 0; j < k; ++j) dd[static_cast<std::size_t>(i) * k + j] = d(s[i], s[j]);
  }
  meter.charge(static_cast<std::uint64_t>(k) * k);

  std::vector<double> dp((std::size_t{1} << k) * k, inf);
  for (int i = 0; i < k; ++i) {
    dp[(std::size_t{1} << i) * k + i] = dep[i];
    table.length[std::size_t{1} << i] = dep[i] + dep[i];
  }
  meter.charge(static_cast<std::uint64_t>(k) * 2);
  table.completed_size = 1;
  if (meter.expired()) {
    table.complete = false;
    return table;
  }

  std::vector<std::uint32_t> layer;
  for (int p = 2; p <= k; ++p) {
    masks_of_popcount(k, p, layer);
    const std::uint64_t per_mask = static_cast<std::uint64_t>(p) * (p - 1) + p;
    const std::size_t chunk =
        std::max<std::size_t>(1, static_cast<std::size_t>(kChunkRelaxations / per_mask));
    bool cut = false;
    for (std::size_t base = 0; base < layer.size() && !cut; base += chunk) {
      const std::size_t end = std::min(layer.size(), base + chunk);
#pragma omp parallel for schedule(static)
      for (long long idx = static_cast<long long>(base); idx < static_cast<long long>(end);
           ++idx) {
        const std::uint32_t mask = layer[idx];
        double closed = inf;
        for (std::uint32_t rem = mask; rem; rem &= rem - 1) {
          const int j = std::countr_zero(rem);
          const std::uint32_t prev = mask ^ (1u << j);
          double best = inf;
          for (std::uint32_t r2 = prev; r2; r2 &= r2 - 1) {
            const int last = std::countr_zero(r2);
            const double cand = dp[static_cast<std::size_t>(prev) * k + last] +
                                dd[static_cast<std::size_t>(last) * k + j];
            if (cand < best) best = cand;
          }
          dp[static_cast<std::size_t>(mask) * k + j] = best;
          const double tour = best + dep[j];
          if (tour < closed) closed = tour;
        }
        table.length[mask] = closed;
      }
      meter.charge((end - base) * per_mask);
      if (meter.expired()) cut = true;
    }
    if (cut) {
      // Wipe the half-built layer so the "+inf above completed_size"
      // contract holds exactly.
      for (const std::uint32_t mask : layer) table.length[mask] = inf;
      table.complete = false;
      return table;
    }
    table.completed_size = p;
  }
  return table;
}

SubsetTourTable subset_tour_table(const DistanceMatrix& d, std::span<const int> cities,
                                  const Budget& budget, const DurationModel& model, int cap) {
  WorkMeter meter(model, budget);
  SubsetTourTable t = subset_tour_table_on(d, cities, meter, cap);
  t.duration_ms = meter.duration_ms();
  t.work = meter.work();
  return t;
}

namespace reference {

SubsetTourTable subset_tour_table_serial_on(const DistanceMatrix& d, std::span<const int> cities,
                                            WorkMeter& meter, int cap) {
  auto s = validated_sorted(d, cities);
  const int k = static_cast<int>(s.size());
  if (k > cap) throw std::invalid_argument("subset table cap exceeded");

  const double inf = std::numeric_limits<double>::infinity();
  SubsetTourTable table;
  table.cities = s;
  table.length.assign(std::size_t{1} << k, inf);
  table.length[0] = 0.0;
  table.completed_size = 0;
  if (k == 0) return table;

  std::vector<double> dep(k);
  std::vector<double> dd(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i) {
    dep[i] = d(0, s[i]);
    for (int j = 0; j < k; ++j) dd[static_cast<std::size_t>(i) * k + j] = d(s[i], s[j]);
  }
  meter.charge(static_cast<std::uint64_t>(k) * k);

  std::vector<double> dp((std::size_t{1} << k) * k, inf);
  for (int i = 0; i < k; ++i) {
    dp[(std::size_t{1} << i) * k + i] = dep[i];
    table.length[std::size_t{1} << i] = dep[i] + dep[i];
  }
  meter.charge(static_cast<std::uint64_t>(k) * 2);
  table.completed_size = 1;
  if (meter.expired()) {
    table.complete = false;
    return table;
  }

  std::vector<std::uint32_t> layer;
  for (int p = 2; p <= k; ++p) {
    masks_of_popcount(k, p, layer);
    const std::uint64_t per_mask = static_cast<std::uint64_t>(p) * (p - 1) + p;
    const std::size_t chunk =
        std::max<std::size_t>(1, static_cast<std::size_t>(kChunkRelaxations / per_mask));
    bool cut = false;
    for (std::size_t base = 0; base < layer.size() && !cut; base += chunk) {
      const std::size_t end = std::min(layer.size(), base + chunk);
      for (std::size_t idx = base; idx < end; ++idx) {
        const std::uint32_t mask = layer[idx];
        double closed = inf;
        for (std::uint32_t rem = mask; rem; rem &= rem - 1) {
          const int j = std::countr_zero(rem);
          const std::uint32_t prev = mask ^ (1u << j);
          double best = inf;
          for (std::uint32_t r2 = prev; r2; r2 &= r2 - 1) {
            const int last = std::countr_zero(r2);
            const double cand = dp[static_cast<std::size_t>(prev) * k + last] +
                                dd[static_cast<std::size_t>(last) * k + j];
            if (cand < best) best = cand;
          }
          dp[static_cast<std::size_t>(mask) * k + j] = best;
          const double tour = best + dep[j];
          if (tour < closed) closed = tour;
        }
        table.length[mask] = closed;
      }
      meter.charge((end - base) * per_mask);
      if (meter.expired()) cut = true;
    }
    if (cut) {
      // Wipe the half-built layer so the "+inf above completed_size"
      // contract holds exactly.
      for (const std::uint32_t mask : layer) table.length[mask] = inf;
      table.complete = false;
      return table;
    }
    table.completed_size = p;
  }
  return table;
}

SubsetTourTable subset_tour_table_serial(const DistanceMatrix& d, std::span<const int> cities,
                                         const Budget& budget, const DurationModel& model,
                                         int cap) {
  WorkMeter meter(model, budget);
  SubsetTourTable t = subset_tour_table_serial_on(d, cities, meter, cap);
  t.duration_ms = meter.duration_ms();
  t.work = meter.work();
  return t;
}

}  // namespace reference
}  // namespace mtsp
