#include "mtsp/trace.hpp"

namespace mtsp {

nlohmann::json round_to_json(const TraceRound& r) {
  nlohmann::json calls = nlohmann::json::array();
  for (const auto& c : r.calls) calls.push_back({c.agent, c.stage, c.ms});
  return nlohmann::json{{"type", "round"},
                        {"index", r.index},
                        {"host", r.host},
                        {"participants", r.participants},
                        {"cities", r.cities},
                        {"decision", r.decision},
                        {"calls", std::move(calls)}};
}

TraceRound round_from_json(const nlohmann::json& j) {
  TraceRound r;
  r.index = j.at("index").get<int>();
  r.host = j.at("host").get<int>();
  r.participants = j.at("participants").get<std::vector<int>>();
  r.cities = j.at("cities").get<std::vector<int>>();
  r.decision = j.at("decision").get<std::string>();
  for (const auto& c : j.at("calls")) {
    r.calls.push_back(SolverCall{c.at(0).get<int>(), c.at(1).get<std::string>(),
                                 c.at(2).get<double>()});
  }
  return r;
}

}  // namespace mtsp
