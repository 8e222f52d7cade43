#pragma once

#include <cstddef>
#include <vector>

namespace mtsp {

struct City {
  int id;  // consecutive from 0; 0 is the depot in generated instances
  double x;
  double y;
};

using CityList = std::vector<City>;

// Distances are real-valued Euclidean by default.  NearestInt reproduces
// the classic TSPLIB EUC_2D convention (round to nearest integer) for
// comparison against published tour lengths; it may break the triangle
// inequality by one unit and is off everywhere else.
enum class DistanceRounding { Exact, NearestInt };

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(int n, std::vector<double> cells) : n_(n), cells_(std::move(cells)) {}

  int size() const { return n_; }
  double operator()(int i, int j) const { return cells_[static_cast<std::size_t>(i) * n_ + j]; }

  const std::vector<double>& cells() const { return cells_; }

 private:
  int n_ = 0;
  std::vector<double> cells_;
};

// OpenMP-parallel build (rows are independent).
DistanceMatrix distance_matrix(const CityList& cities,
                               DistanceRounding rounding = DistanceRounding::Exact);

namespace reference {
// Serial reference kept for testing and benchmarking; must match the
// parallel build bit for bit.
DistanceMatrix distance_matrix_serial(const CityList& cities,
                                      DistanceRounding rounding = DistanceRounding::Exact);
}  // namespace reference

}  // namespace mtsp
