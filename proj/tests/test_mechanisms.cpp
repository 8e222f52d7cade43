#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "mtsp/instance.hpp"
#include "mtsp/mechanisms.hpp"
#include "mtsp/timing.hpp"
#include "oracles.hpp"

using namespace mtsp;

namespace {

// Depot at the origin, two cities on each axis.  The only mutually
// profitable swap trades the far x city for the far y city, so every
// bilateral organisation must land on {2,4} / {1,3} at total 40, while the
// social planner can do better by ignoring who gains.
Instance axis_instance() {
  Instance inst;
  inst.n = 5;
  inst.m = 2;
  inst.shift = 0;
  inst.cities = {{0, 0.0, 0.0}, {1, 10.0, 0.0}, {2, 0.0, 1.0}, {3, 1.0, 0.0}, {4, 0.0, 10.0}};
  inst.endowment = {{1, 2}, {3, 4}};
  return inst;
}

Instance random_instance(oracle::Rng& rng, int n, int m) {
  const CityList source = rng.cities(n + 6);
  return generate_instance(source, n, m, static_cast<int>(rng.uniform_int(0, n + 5)));
}

bool conserves_cities(const MechanismOutcome& out, const Instance& inst) {
  std::vector<int> seen;
  for (const auto& g : out.allocation) seen.insert(seen.end(), g.begin(), g.end());
  std::sort(seen.begin(), seen.end());
  std::vector<int> want;
  for (int c = 1; c < inst.n; ++c) want.push_back(c);
  return seen == want;
}

bool keeps_cardinalities(const MechanismOutcome& out, const Instance& inst) {
  if (out.allocation.size() != inst.endowment.size()) return false;
  for (std::size_t k = 0; k < out.allocation.size(); ++k)
    if (out.allocation[k].size() != inst.endowment[k].size()) return false;
  return true;
}

}  // namespace

TEST_CASE("mechanism names round-trip and unknown names are refused") {
  const char* names[] = {"norealloc", "p2p",        "cnp",      "auction",
                         "cluster",   "optdecentr", "fullcentr"};
  for (std::size_t i = 0; i < kAllMechanisms.size(); ++i) {
    CHECK(to_string(kAllMechanisms[i]) == std::string(names[i]));
    REQUIRE(mechanism_from_string(names[i]).has_value());
    CHECK(*mechanism_from_string(names[i]) == kAllMechanisms[i]);
  }
  CHECK_FALSE(mechanism_from_string("central").has_value());
  CHECK_FALSE(mechanism_from_string("").has_value());
  CHECK_FALSE(mechanism_from_string("P2P").has_value());
}

TEST_CASE("bilateral trading finds the unique profitable swap") {
  const Instance inst = axis_instance();
  const DistanceMatrix d = distance_matrix(inst);

  const MechanismOutcome nr = run_no_realloc(inst, d);
  CHECK(nr.total == doctest::Approx(22.0 + 2.0 * std::sqrt(101.0)).epsilon(1e-12));
  CHECK(nr.allocation == inst.endowment);
  CHECK(nr.optimal);
  CHECK(nr.rounds == 1);

  const MechanismOutcome p2p = run_p2p(inst, d);
  CHECK(p2p.total == 40.0);
  CHECK(p2p.allocation == std::vector<std::vector<int>>{{2, 4}, {1, 3}});
  CHECK(p2p.optimal);
  bool accepted = false;
  for (const auto& r : p2p.trace.rounds) accepted |= r.decision == "accepted";
  CHECK(accepted);
  CHECK(p2p.trace.rounds.front().decision == "initialisation");

  const MechanismOutcome cnp = run_cnp(inst, d);
  CHECK(cnp.total == 40.0);
  CHECK(cnp.allocation == std::vector<std::vector<int>>{{2, 4}, {1, 3}});
  bool awarded = false;
  for (const auto& r : cnp.trace.rounds) awarded |= r.decision == "awarded";
  CHECK(awarded);

  const MechanismOutcome au = run_auction(inst, d);
  CHECK(au.total == 40.0);
  CHECK(au.allocation == std::vector<std::vector<int>>{{2, 4}, {1, 3}});
  REQUIRE(au.trace.rounds.size() >= 2);
  CHECK(au.trace.rounds[0].decision == "initialisation");
  CHECK(au.trace.rounds[1].decision == "exchanged");
  CHECK(au.trace.rounds.back().decision == "all_declined");
}

TEST_CASE("the planner organisations trade fairness away for distance") {
  const Instance inst = axis_instance();
  const DistanceMatrix d = distance_matrix(inst);

  const MechanismOutcome cl = run_cluster(inst, d);
  CHECK(cl.total == 40.0);
  CHECK(cl.allocation == std::vector<std::vector<int>>{{1, 3}, {2, 4}});

  const MechanismOutcome od = run_opt_decentr(inst, d);
  CHECK(od.total == doctest::Approx(22.0 + std::sqrt(200.0) + std::sqrt(2.0)).epsilon(1e-12));
  CHECK(od.allocation == std::vector<std::vector<int>>{{1, 4}, {2, 3}});

  const MechanismOutcome fc = run_full_centr(inst, d);
  CHECK(fc.total == doctest::Approx(22.0 + std::sqrt(200.0)).epsilon(1e-12));
  CHECK(fc.allocation == std::vector<std::vector<int>>{{1, 2, 4}, {3}});

  // the individually rational organisations cannot reach the planner's total
  CHECK(fc.total < od.total);
  CHECK(od.total < 40.0);
}

TEST_CASE("every organisation returns a partition of the cities") {
  oracle::Rng rng(0x3e01u);
  for (int rep = 0; rep < 6; ++rep) {
    const int n = 8 + static_cast<int>(rng.uniform_int(0, 2));
    const int m = 2 + static_cast<int>(rng.uniform_int(0, 1));
    const Instance inst = random_instance(rng, n, m);
    const DistanceMatrix d = distance_matrix(inst);
    for (Mechanism mech : kAllMechanisms) {
      const MechanismOutcome out = run_mechanism(mech, inst, d);
      CHECK(conserves_cities(out, inst));
      CHECK(out.rounds >= 1);
      CHECK(out.trace.rounds.size() >= 1);
      if (mech != Mechanism::FullCentr) CHECK(keeps_cardinalities(out, inst));
      REQUIRE(out.per_salesman_length.size() == out.allocation.size());
      double total = 0.0;
      for (double v : out.per_salesman_length) total += v;
      CHECK(total == out.total);
      for (std::size_t k = 0; k < out.tours.size(); ++k)
        CHECK(out.tours[k].length == out.per_salesman_length[k]);
    }
  }
}

TEST_CASE("trading never leaves a salesman worse than his endowment") {
  oracle::Rng rng(0x3e02u);
  for (int rep = 0; rep < 5; ++rep) {
    const Instance inst = random_instance(rng, 9, 3);
    const DistanceMatrix d = distance_matrix(inst);
    const MechanismOutcome nr = run_no_realloc(inst, d);
    for (Mechanism mech : {Mechanism::P2P, Mechanism::CNP, Mechanism::Auction}) {
      const MechanismOutcome out = run_mechanism(mech, inst, d);
      REQUIRE(out.per_salesman_length.size() == nr.per_salesman_length.size());
      for (std::size_t k = 0; k < nr.per_salesman_length.size(); ++k)
        CHECK(out.per_salesman_length[k] <= nr.per_salesman_length[k]);
      CHECK(out.total <= nr.total);
    }
  }
}

TEST_CASE("planner totals bound the trading totals") {
  oracle::Rng rng(0x3e03u);
  for (int rep = 0; rep < 4; ++rep) {
    const Instance inst = random_instance(rng, 9, 2);
    const DistanceMatrix d = distance_matrix(inst);
    std::map<Mechanism, double> total;
    for (Mechanism mech : kAllMechanisms) {
      const MechanismOutcome out = run_mechanism(mech, inst, d);
      REQUIRE(out.optimal);
      total[mech] = out.total;
    }
    const double slack = 1e-9 * total[Mechanism::NoRealloc];
    CHECK(total[Mechanism::FullCentr] <= total[Mechanism::OptDecentr] + slack);
    for (Mechanism mech : {Mechanism::NoRealloc, Mechanism::P2P, Mechanism::CNP,
                           Mechanism::Auction, Mechanism::Cluster}) {
      CHECK(total[Mechanism::OptDecentr] <= total[mech] + slack);
    }
  }
}

TEST_CASE("the recorded trace replays to the same inferred span") {
  oracle::Rng rng(0x3e04u);
  for (int rep = 0; rep < 3; ++rep) {
    const Instance inst = random_instance(rng, 9, 3);
    const DistanceMatrix d = distance_matrix(inst);
    for (Mechanism mech : kAllMechanisms) {
      const MechanismOutcome out = run_mechanism(mech, inst, d);
      CHECK(replay_span(mech, out.trace, inst.m) == out.inferred_span_ms);
    }
  }
}

TEST_CASE("the span breakdown is a consistent schedule") {
  oracle::Rng rng(0x3e05u);
  const Instance inst = random_instance(rng, 9, 3);
  const DistanceMatrix d = distance_matrix(inst);
  for (Mechanism mech : kAllMechanisms) {
    const MechanismOutcome out = run_mechanism(mech, inst, d);
    const std::string csv = span_breakdown_csv(mech, out.trace, inst.m);
    REQUIRE(csv.rfind("round,agent,stage,start,duration\n", 0) == 0);
    double makespan = 0.0;
    int rows = 0;
    std::size_t at = csv.find('\n') + 1;
    while (at < csv.size()) {
      const std::size_t end = csv.find('\n', at);
      const std::string line = csv.substr(at, end - at);
      at = end + 1;
      int round = -1, agent = -2;
      char stage[128];
      double start = -1.0, ms = -1.0;
      REQUIRE(std::sscanf(line.c_str(), "%d,%d,%127[^,],%lf,%lf", &round, &agent, stage, &start,
                          &ms) == 5);
      CHECK(round >= 0);
      CHECK(agent >= -1);
      CHECK(start >= 0.0);
      CHECK(ms >= 0.0);
      makespan = std::max(makespan, start + ms);
      ++rows;
    }
    int calls = 0;
    for (const auto& r : out.trace.rounds) calls += static_cast<int>(r.calls.size());
    CHECK(rows == calls);
    const double span = replay_span(mech, out.trace, inst.m);
    CHECK(makespan == doctest::Approx(span).epsilon(1e-9));
  }
}

TEST_CASE("trace rounds survive the JSON round trip") {
  TraceRound r;
  r.index = 3;
  r.host = 1;
  r.participants = {1, 2};
  r.cities = {7, 4};
  r.decision = "accepted";
  r.calls.push_back({2, stage::kP2PGuestProposes, 0.125});
  r.calls.push_back({1, stage::kP2PHostProposes, 0.5});
  r.calls.push_back({-1, stage::kAuctionAward, 0.0});
  const TraceRound back = round_from_json(round_to_json(r));
  CHECK(back.index == r.index);
  CHECK(back.host == r.host);
  CHECK(back.participants == r.participants);
  CHECK(back.cities == r.cities);
  CHECK(back.decision == r.decision);
  REQUIRE(back.calls.size() == r.calls.size());
  for (std::size_t i = 0; i < r.calls.size(); ++i) {
    CHECK(back.calls[i].agent == r.calls[i].agent);
    CHECK(back.calls[i].stage == r.calls[i].stage);
    CHECK(back.calls[i].ms == r.calls[i].ms);
  }
}

TEST_CASE("deterministic runs are bit-reproducible") {
  oracle::Rng rng(0x3e06u);
  const Instance inst = random_instance(rng, 10, 3);
  const DistanceMatrix d = distance_matrix(inst);
  DurationModel det;
  det.mode = DurationMode::Deterministic;
  for (Mechanism mech : kAllMechanisms) {
    const MechanismOutcome a = run_mechanism(mech, inst, d, Budget::limited(30000.0), det);
    const MechanismOutcome b = run_mechanism(mech, inst, d, Budget::limited(30000.0), det);
    CHECK(a.total == b.total);
    CHECK(a.inferred_span_ms == b.inferred_span_ms);
    CHECK(a.rounds == b.rounds);
    CHECK(a.allocation == b.allocation);
    REQUIRE(a.trace.rounds.size() == b.trace.rounds.size());
    for (std::size_t i = 0; i < a.trace.rounds.size(); ++i) {
      CHECK(round_to_json(a.trace.rounds[i]) == round_to_json(b.trace.rounds[i]));
    }
  }
}

TEST_CASE("tiny deterministic budgets still produce feasible outcomes") {
  oracle::Rng rng(0x3e07u);
  const Instance inst = random_instance(rng, 12, 3);
  const DistanceMatrix d = distance_matrix(inst);
  DurationModel det;
  det.mode = DurationMode::Deterministic;
  det.units_per_ms = 1000.0;  // slow machine so the limit genuinely binds
  for (Mechanism mech : kAllMechanisms) {
    const MechanismOutcome out = run_mechanism(mech, inst, d, Budget::limited(0.5), det);
    CHECK(conserves_cities(out, inst));
    if (mech != Mechanism::FullCentr) CHECK(keeps_cardinalities(out, inst));
    CHECK(out.total > 0.0);
    for (const auto& t : out.tours) {
      REQUIRE(t.order.size() >= 2);
      CHECK(t.order.front() == 0);
      CHECK(t.order.back() == 0);
    }
  }
}

TEST_CASE("negotiation rounds stay within the ledger-implied ceiling") {
  oracle::Rng rng(0x3e08u);
  const Instance inst = random_instance(rng, 10, 2);
  const DistanceMatrix d = distance_matrix(inst);
  for (Mechanism mech : {Mechanism::P2P, Mechanism::CNP, Mechanism::Auction}) {
    const MechanismOutcome out = run_mechanism(mech, inst, d);
    CHECK(out.rounds >= 1);
    CHECK(out.rounds <= 2 * inst.m * inst.n * inst.n);
  }
}
