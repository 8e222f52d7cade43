#include "mtsp/geometry.hpp"

#include <cmath>

namespace mtsp {

static inline double dist(const City& a, const City& b, DistanceRounding rounding) {
  double d = std::hypot(a.x - b.x, a.y - b.y);
  if (rounding == DistanceRounding::NearestInt) d = std::nearbyint(d);
  return d;
}

DistanceMatrix distance_matrix(const CityList& cities, DistanceRounding rounding) {
  const int n = static_cast<int>(cities.size());
  std::vector<double> cells(static_cast<std::size_t>(n) * n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cells[static_cast<std::size_t>(i) * n + j] = i == j ? 0.0 : dist(cities[i], cities[j], rounding);
    }
  }
  return DistanceMatrix(n, std::move(cells));
}

namespace reference {

DistanceMatrix distance_matrix_serial(const CityList& cities, DistanceRounding rounding) {
  const int n = static_cast<int>(cities.size());
  std::vector<double> cells(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cells[static_cast<std::size_t>(i) * n + j] = i == j ? 0.0 : dist(cities[i], cities[j], rounding);
    }
  }
  return DistanceMatrix(n, std::move(cells));
}

}  // namespace reference
}  // namespace mtsp
