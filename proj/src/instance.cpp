#include "mtsp/instance.hpp"

#include <stdexcept>

namespace mtsp {

Instance generate_instance(const CityList& source, int n, int m, int shift) {
  const int src = static_cast<int>(source.size());
  if (src == 0) throw std::invalid_argument("empty source city list");
  if (n < 2 || n > src)
    throw std::invalid_argument("n must be in [2, source size]");
  if (m < 1 || m > n - 1)
    throw std::invalid_argument("m must be in [1, n-1]");
  if (shift < 0) throw std::invalid_argument("shift must be non-negative");

  Instance inst;
  inst.n = n;
  inst.m = m;
  inst.shift = shift % src;
  inst.cities.reserve(n);
  for (int i = 0; i < n; ++i) {
    inst.cities.push_back(City{i, source[i].x, source[(i + inst.shift) % src].y});
  }
  inst.endowment.assign(m, {});
  for (int j = 1; j < n; ++j) inst.endowment[(j - 1) % m].push_back(j);
  return inst;
}

DistanceMatrix distance_matrix(const Instance& inst, DistanceRounding rounding) {
  return distance_matrix(inst.cities, rounding);
}

nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["n"] = inst.n;
  j["m"] = inst.m;
  j["shift"] = inst.shift;
  auto cities = nlohmann::json::array();
  for (const auto& c : inst.cities) cities.push_back({c.x, c.y});
  j["cities"] = std::move(cities);
  j["endowment"] = inst.endowment;
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  Instance inst;
  inst.n = j.at("n").get<int>();
  inst.m = j.at("m").get<int>();
  inst.shift = j.at("shift").get<int>();
  int id = 0;
  for (const auto& c : j.at("cities")) {
    inst.cities.push_back(City{id++, c.at(0).get<double>(), c.at(1).get<double>()});
  }
  inst.endowment = j.at("endowment").get<std::vector<std::vector<int>>>();
  return inst;
}

}  // namespace mtsp
