#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mtsp/geometry.hpp"

namespace mtsp {

// One experimental cell's problem: n cities (city 0 is the depot where all
// m salesmen start) and the initial endowment, a partition of cities
// 1..n-1 assigning city j to salesman (j-1) mod m.
struct Instance {
  int n = 0;
  int m = 0;
  int shift = 0;
  CityList cities;
  std::vector<std::vector<int>> endowment;  // per salesman, ascending ids
};

// Derives an instance from a source city list by circularly shifting the
// y-coordinates: city i keeps x_i and takes the y of source city
// (i+shift) mod source-size.  Shift 0 reproduces the source prefix; a full
// cycle of shifts yields source-size distinct instances from one file.
Instance generate_instance(const CityList& source, int n, int m, int shift);

DistanceMatrix distance_matrix(const Instance& inst,
                               DistanceRounding rounding = DistanceRounding::Exact);

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

}  // namespace mtsp
