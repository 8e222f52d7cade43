#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mtsp/geometry.hpp"
#include "mtsp/subset_table.hpp"
#include "mtsp/tour.hpp"

using namespace mtsp;

namespace {

CityList synthetic_cities(int n) {
  CityList cities;
  cities.reserve(n);
  std::uint64_t state = 0x2545f4914f6cdd1dULL;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state >> 11) / static_cast<double>(1ULL << 53);
  };
  for (int i = 0; i < n; ++i) cities.push_back({i, next() * 700.0, next() * 600.0});
  return cities;
}

template <typename F>
double best_ms(F&& f, int repeats = 3) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (ms < best) best = ms;
  }
  return best;
}

void report(const char* kernel, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-18s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   results %s\n",
              kernel, serial_ms, parallel_ms, serial_ms / parallel_ms,
              equal ? "identical" : "DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp not enabled; both columns run the serial code path\n");
#endif

  {
    const CityList cities = synthetic_cities(3000);
    DistanceMatrix par, ser;
    const double pms = best_ms([&] { par = distance_matrix(cities, DistanceRounding::Exact); });
    const double sms =
        best_ms([&] { ser = reference::distance_matrix_serial(cities, DistanceRounding::Exact); });
    bool equal = true;
    for (int i = 0; i < 3000 && equal; ++i)
      for (int j = 0; j < 3000; ++j)
        if (par(i, j) != ser(i, j)) {
          equal = false;
          break;
        }
    report("distance_matrix", sms, pms, equal);
  }

  {
    const CityList cities = synthetic_cities(18);
    const DistanceMatrix d = distance_matrix(cities, DistanceRounding::Exact);
    std::vector<int> set;
    for (int i = 1; i < 18; ++i) set.push_back(i);
    TourSolution par, ser;
    const double pms = best_ms([&] { par = tsp_exact(d, set); }, 1);
    const double sms = best_ms([&] { ser = reference::tsp_exact_serial(d, set); }, 1);
    report("tsp_exact", sms, pms, par.length == ser.length && par.order == ser.order);
  }

  {
    const CityList cities = synthetic_cities(17);
    const DistanceMatrix d = distance_matrix(cities, DistanceRounding::Exact);
    std::vector<int> set;
    for (int i = 1; i < 17; ++i) set.push_back(i);
    SubsetTourTable par, ser;
    const double pms = best_ms([&] { par = subset_tour_table(d, set); }, 1);
    const double sms = best_ms([&] { ser = reference::subset_tour_table_serial(d, set); }, 1);
    report("subset_tour_table", sms, pms, par.length == ser.length);
  }

  return 0;
}
