#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "mtsp/geometry.hpp"
#include "mtsp/instance.hpp"
#include "mtsp/timing.hpp"
#include "mtsp/tour.hpp"
#include "mtsp/trace.hpp"

namespace mtsp {

// The seven allocation organisations, from no reallocation at all to the
// fully centralised optimum.
enum class Mechanism { NoRealloc, P2P, CNP, Auction, Cluster, OptDecentr, FullCentr };

inline constexpr std::array<Mechanism, 7> kAllMechanisms = {
    Mechanism::NoRealloc, Mechanism::P2P,        Mechanism::CNP,      Mechanism::Auction,
    Mechanism::Cluster,   Mechanism::OptDecentr, Mechanism::FullCentr};

const char* to_string(Mechanism mech);
std::optional<Mechanism> mechanism_from_string(std::string_view name);

struct MechanismOutcome {
  Mechanism mechanism{};
  std::vector<std::vector<int>> allocation;  // per salesman, ascending ids
  std::vector<TourSolution> tours;
  std::vector<double> per_salesman_length;
  double total = 0.0;  // summed in salesman order
  int rounds = 0;      // negotiation rounds (initialisation is round 0)
  Trace trace;
  double inferred_span_ms = 0.0;
  bool timed_out = false;
  bool optimal = true;  // every inner solve exact, no deadline hit
};

// budget.ms is the campaign time limit applied to the inferred parallel
// timeline: before each solver call the remaining time at the call's
// inferred start caps its deadline, and a run whose timeline reaches the
// limit stops with timed_out=true and a feasible allocation.
MechanismOutcome run_no_realloc(const Instance& inst, const DistanceMatrix& d,
                                const Budget& budget = Budget::unlimited(),
                                const DurationModel& model = DurationModel{});
MechanismOutcome run_p2p(const Instance& inst, const DistanceMatrix& d,
                         const Budget& budget = Budget::unlimited(),
                         const DurationModel& model = DurationModel{});
MechanismOutcome run_cnp(const Instance& inst, const DistanceMatrix& d,
                         const Budget& budget = Budget::unlimited(),
                         const DurationModel& model = DurationModel{});
MechanismOutcome run_auction(const Instance& inst, const DistanceMatrix& d,
                             const Budget& budget = Budget::unlimited(),
                             const DurationModel& model = DurationModel{});
MechanismOutcome run_cluster(const Instance& inst, const DistanceMatrix& d,
                             const Budget& budget = Budget::unlimited(),
                             const DurationModel& model = DurationModel{});
MechanismOutcome run_opt_decentr(const Instance& inst, const DistanceMatrix& d,
                                 const Budget& budget = Budget::unlimited(),
                                 const DurationModel& model = DurationModel{});
MechanismOutcome run_full_centr(const Instance& inst, const DistanceMatrix& d,
                                const Budget& budget = Budget::unlimited(),
                                const DurationModel& model = DurationModel{});

MechanismOutcome run_mechanism(Mechanism mech, const Instance& inst, const DistanceMatrix& d,
                               const Budget& budget = Budget::unlimited(),
                               const DurationModel& model = DurationModel{});

// Recomputes the inferred parallel span from a recorded trace alone, via
// the appropriate span rule for the mechanism.  Always equals the
// outcome's inferred_span_ms.
double replay_span(Mechanism mech, const Trace& trace, int m);

// Gantt-style breakdown of a trace on the inferred parallel timeline:
// CSV with header round,agent,stage,start,duration (agent -1 is the
// central authority).  The largest start+duration equals replay_span.
std::string span_breakdown_csv(Mechanism mech, const Trace& trace, int m);

}  // namespace mtsp
