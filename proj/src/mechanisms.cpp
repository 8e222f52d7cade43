#include "mtsp/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "mtsp/assignment.hpp"
#include "mtsp/clustering.hpp"
#include "mtsp/drop.hpp"
#include "mtsp/partition.hpp"
#include "mtsp/vclock.hpp"

namespace mtsp {

const char* to_string(Mechanism mech) {
  switch (mech) {
    case Mechanism::NoRealloc: return "norealloc";
    case Mechanism::P2P: return "p2p";
    case Mechanism::CNP: return "cnp";
    case Mechanism::Auction: return "auction";
    case Mechanism::Cluster: return "cluster";
    case Mechanism::OptDecentr: return "optdecentr";
    case Mechanism::FullCentr: return "fullcentr";
  }
  return "?";
}

std::optional<Mechanism> mechanism_from_string(std::string_view name) {
  for (Mechanism mech : kAllMechanisms)
    if (name == to_string(mech)) return mech;
  return std::nullopt;
}

namespace {

Budget cap_at(double limit, double start) {
  if (std::isinf(limit)) return Budget::unlimited();
  return Budget::limited(limit - start);
}

struct AgentState {
  std::vector<int> cities;  // ascending
  TourSolution tour;
};

std::vector<int> swap_city(const std::vector<int>& cities, int give, int take) {
  std::vector<int> out;
  out.reserve(cities.size());
  for (int c : cities)
    if (c != give) out.push_back(c);
  out.insert(std::upper_bound(out.begin(), out.end(), take), take);
  return out;
}

void finalize(MechanismOutcome& out, std::vector<AgentState>& agents) {
  out.allocation.clear();
  out.tours.clear();
  out.per_salesman_length.clear();
  out.total = 0.0;
  bool all_exact = true;
  for (auto& a : agents) {
    out.allocation.push_back(a.cities);
    out.per_salesman_length.push_back(a.tour.length);
    out.total += a.tour.length;
    if (!a.tour.optimal) all_exact = false;
    out.tours.push_back(std::move(a.tour));
  }
  out.optimal = all_exact && !out.timed_out;
}

// Shared initialisation round: every salesman solves his endowment so all
// current route lengths exist before negotiation starts.  Returns the
// slowest duration; all clocks align to it.
double init_round(MechanismOutcome& out, std::vector<AgentState>& agents, const Instance& inst,
                  const DistanceMatrix& d, double limit, const DurationModel& model,
                  const char* label) {
  TraceRound round;
  round.index = 0;
  round.decision = "initialisation";
  double mx = 0.0;
  for (int k = 0; k < inst.m; ++k) {
    round.participants.push_back(k);
    WorkMeter meter(model, cap_at(limit, 0.0));
    agents[k].cities = inst.endowment[k];
    agents[k].tour = tsp_exact_on(d, agents[k].cities, meter);
    const double ms = meter.duration_ms();
    round.calls.push_back({k, label, ms});
    if (ms > mx) mx = ms;
    if (!agents[k].tour.optimal) out.timed_out = true;
  }
  out.trace.rounds.push_back(std::move(round));
  return mx;
}

}  // namespace

MechanismOutcome run_no_realloc(const Instance& inst, const DistanceMatrix& d,
                                const Budget& budget, const DurationModel& model) {
  MechanismOutcome out;
  out.mechanism = Mechanism::NoRealloc;
  std::vector<AgentState> agents(inst.m);
  TraceRound round;
  round.index = 0;
  round.decision = "solved";
  double mx = 0.0;
  for (int k = 0; k < inst.m; ++k) {
    round.participants.push_back(k);
    WorkMeter meter(model, cap_at(budget.ms, 0.0));
    agents[k].cities = inst.endowment[k];
    agents[k].tour = tsp_exact_on(d, agents[k].cities, meter);
    const double ms = meter.duration_ms();
    round.calls.push_back({k, stage::kNoReallocSolve, ms});
    if (ms > mx) mx = ms;
    if (!agents[k].tour.optimal) out.timed_out = true;
  }
  out.trace.rounds.push_back(std::move(round));
  out.rounds = 1;
  out.inferred_span_ms = mx;
  finalize(out, agents);
  return out;
}

MechanismOutcome run_cluster(const Instance& inst, const DistanceMatrix& d, const Budget& budget,
                             const DurationModel& model) {
  MechanismOutcome out;
  out.mechanism = Mechanism::Cluster;
  const double limit = budget.ms;
  std::vector<int> sizes;
  for (const auto& g : inst.endowment) sizes.push_back(static_cast<int>(g.size()));

  TraceRound round;
  round.index = 0;
  round.decision = "solved";
  Clustering cl = solve_clustering(d, sizes, cap_at(limit, 0.0), model);
  round.calls.push_back({-1, stage::kClusterAllocate, cl.duration_ms});
  double span = cl.duration_ms;
  if (!cl.optimal) out.timed_out = true;

  std::vector<AgentState> agents(inst.m);
  double mx = 0.0;
  for (int k = 0; k < inst.m; ++k) {
    round.participants.push_back(k);
    WorkMeter meter(model, cap_at(limit, span));
    agents[k].cities = cl.clusters[k];
    agents[k].tour = tsp_exact_on(d, agents[k].cities, meter);
    const double ms = meter.duration_ms();
    round.calls.push_back({k, stage::kClusterSolve, ms});
    if (ms > mx) mx = ms;
    if (!agents[k].tour.optimal) out.timed_out = true;
  }
  span += mx;
  out.trace.rounds.push_back(std::move(round));
  out.rounds = 1;
  out.inferred_span_ms = span;
  finalize(out, agents);
  return out;
}

namespace {

MechanismOutcome run_central(Mechanism mech, const Instance& inst, const DistanceMatrix& d,
                             const Budget& budget, const DurationModel& model) {
  MechanismOutcome out;
  out.mechanism = mech;
  AllocationSolution sol =
      mech == Mechanism::OptDecentr
          ? solve_opt_decentr(d, inst.endowment, cap_at(budget.ms, 0.0), model)
          : solve_full_centr(d, inst.m, cap_at(budget.ms, 0.0), model);
  TraceRound round;
  round.index = 0;
  round.decision = "solved";
  round.calls.push_back({-1,
                         mech == Mechanism::OptDecentr ? stage::kOptDecentrSolve
                                                       : stage::kFullCentrSolve,
                         sol.duration_ms});
  out.trace.rounds.push_back(std::move(round));
  out.rounds = 1;
  out.inferred_span_ms = sol.duration_ms;
  out.timed_out = !sol.optimal;
  std::vector<AgentState> agents(inst.m);
  for (int k = 0; k < inst.m; ++k) {
    agents[k].cities = sol.groups[k];
    agents[k].tour = std::move(sol.tours[k]);
  }
  finalize(out, agents);
  return out;
}

}  // namespace

MechanismOutcome run_opt_decentr(const Instance& inst, const DistanceMatrix& d,
                                 const Budget& budget, const DurationModel& model) {
  return run_central(Mechanism::OptDecentr, inst, d, budget, model);
}

MechanismOutcome run_full_centr(const Instance& inst, const DistanceMatrix& d,
                                const Budget& budget, const DurationModel& model) {
  return run_central(Mechanism::FullCentr, inst, d, budget, model);
}

MechanismOutcome run_p2p(const Instance& inst, const DistanceMatrix& d, const Budget& budget,
                         const DurationModel& model) {
  MechanismOutcome out;
  out.mechanism = Mechanism::P2P;
  const int m = inst.m;
  const int n = inst.n;
  const double limit = budget.ms;

  std::vector<AgentState> agents(m);
  const double init_max = init_round(out, agents, inst, d, limit, model, stage::kP2PInit);
  VirtualClock clock(m, limit);
  clock.set_all(init_max);
  if (out.timed_out) {
    out.inferred_span_ms = clock.max();
    finalize(out, agents);
    return out;
  }

  // proposed[k][g][i]: salesman k has already proposed city i to g.
  std::vector<std::vector<std::vector<bool>>> proposed(
      m, std::vector<std::vector<bool>>(m, std::vector<bool>(n, false)));

  auto proposable = [&](int k, int g) {
    std::vector<int> keep;
    for (int c : agents[k].cities)
      if (proposed[k][g][c]) keep.push_back(c);
    return keep;  // must-keep list; all owned marked == nothing proposable
  };
  auto saturated = [&]() {
    for (int h = 0; h < m; ++h)
      for (int g = 0; g < m; ++g) {
        if (g == h) continue;
        for (int c : agents[h].cities)
          if (!proposed[h][g][c]) return false;
      }
    return true;
  };

  int host = 0;
  int idle_turns = 0;
  int round_idx = 0;
  while (m >= 2) {
    if (saturated() || idle_turns >= m) break;

    // Literal guest rule: fewest false entries in the host's ledger row,
    // ties to the lowest index.
    int guest = -1;
    int best_false = std::numeric_limits<int>::max();
    for (int g = 0; g < m; ++g) {
      if (g == host) continue;
      int cf = 0;
      for (int i = 1; i < n; ++i)
        if (!proposed[host][g][i]) ++cf;
      if (cf < best_false) {
        best_false = cf;
        guest = g;
      }
    }

    const double start = std::max(clock.at(host), clock.at(guest));
    if (start >= limit) {
      out.timed_out = true;
      break;
    }

    TraceRound round;
    round.index = ++round_idx;
    round.host = host;
    round.participants = {host, guest};
    double t4 = 0.0, t6 = 0.0, t7 = 0.0, t8 = 0.0;
    bool progressed = false;
    bool abort = false;

    do {
      // Guest proposes (t4).
      std::vector<int> keep_g = proposable(guest, host);
      if (keep_g.size() == agents[guest].cities.size()) {
        round.decision = "guest_declined";
        break;
      }
      WorkMeter m4(model, cap_at(limit, start));
      DropSolution give_g = best_drop_on(d, agents[guest].cities, keep_g, m4);
      t4 = m4.duration_ms();
      round.calls.push_back({guest, stage::kP2PGuestProposes, t4});
      if (!give_g.optimal || give_g.dropped < 0) {
        round.decision = "timeout";
        abort = true;
        break;
      }
      const int city_g = give_g.dropped;
      proposed[guest][host][city_g] = true;
      progressed = true;
      round.cities.push_back(city_g);

      // Host counters (t6).
      std::vector<int> keep_h = proposable(host, guest);
      if (keep_h.size() == agents[host].cities.size()) {
        round.decision = "host_declined";
        break;
      }
      WorkMeter m6(model, cap_at(limit, start + t4));
      DropSolution give_h = best_drop_on(d, agents[host].cities, keep_h, m6);
      t6 = m6.duration_ms();
      round.calls.push_back({host, stage::kP2PHostProposes, t6});
      if (!give_h.optimal || give_h.dropped < 0) {
        round.decision = "timeout";
        abort = true;
        break;
      }
      const int city_h = give_h.dropped;
      proposed[host][guest][city_h] = true;
      round.cities.push_back(city_h);

      // Guest evaluates the exchange (t7).
      const std::vector<int> guest_next = swap_city(agents[guest].cities, city_g, city_h);
      WorkMeter m7(model, cap_at(limit, start + t4 + t6));
      TourSolution guest_tour = tsp_exact_on(d, guest_next, m7);
      t7 = m7.duration_ms();
      round.calls.push_back({guest, stage::kP2PGuestEvaluates, t7});
      if (!guest_tour.optimal) {
        round.decision = "timeout";
        abort = true;
        break;
      }
      if (!strictly_improves(guest_tour.length, agents[guest].tour.length)) {
        round.decision = "rejected_by_guest";
        break;
      }

      // Host finalises (t8): the swap happens only if it also shortens the
      // host's own route, so every accepted exchange improves both parties.
      const std::vector<int> host_next = swap_city(agents[host].cities, city_h, city_g);
      WorkMeter m8(model, cap_at(limit, start + t4 + t6 + t7));
      TourSolution host_tour = tsp_exact_on(d, host_next, m8);
      t8 = m8.duration_ms();
      round.calls.push_back({host, stage::kP2PHostFinalises, t8});
      if (!host_tour.optimal) {
        round.decision = "timeout";
        abort = true;
        break;
      }
      if (!strictly_improves(host_tour.length, agents[host].tour.length)) {
        round.decision = "rejected_by_host";
        break;
      }

      agents[guest].cities = guest_next;
      agents[guest].tour = std::move(guest_tour);
      agents[host].cities = host_next;
      agents[host].tour = std::move(host_tour);
      // Acceptance re-opens the host's ledger toward this guest.
      proposed[host][guest].assign(n, false);
      round.decision = "accepted";
    } while (false);

    clock.set(guest, start + t4 + t6 + t7);
    clock.set(host, start + t4 + t6 + t7 + t8);
    out.trace.rounds.push_back(std::move(round));
    out.rounds = round_idx;
    if (abort) {
      out.timed_out = true;
      break;
    }
    idle_turns = progressed ? 0 : idle_turns + 1;
    host = (host + 1) % m;
  }

  out.inferred_span_ms = clock.max();
  finalize(out, agents);
  return out;
}

MechanismOutcome run_cnp(const Instance& inst, const DistanceMatrix& d, const Budget& budget,
                         const DurationModel& model) {
  MechanismOutcome out;
  out.mechanism = Mechanism::CNP;
  const int m = inst.m;
  const int n = inst.n;
  const double limit = budget.ms;

  std::vector<AgentState> agents(m);
  double span = init_round(out, agents, inst, d, limit, model, stage::kCnpInit);
  if (out.timed_out) {
    out.inferred_span_ms = span;
    finalize(out, agents);
    return out;
  }

  std::vector<std::vector<bool>> broadcast(m, std::vector<bool>(n, false));
  std::vector<std::vector<std::vector<bool>>> proposed(
      m, std::vector<std::vector<bool>>(m, std::vector<bool>(n, false)));

  int host = 0;
  int turns_since_award = 0;
  int round_idx = 0;
  while (m >= 2) {
    if (turns_since_award >= m) break;
    if (span >= limit) {
      out.timed_out = true;
      break;
    }

    TraceRound round;
    round.index = ++round_idx;
    round.host = host;
    round.participants.push_back(host);
    bool abort = false;

    do {
      std::vector<int> keep_h;
      for (int c : agents[host].cities)
        if (broadcast[host][c]) keep_h.push_back(c);
      if (keep_h.size() == agents[host].cities.size()) {
        round.decision = "host_declined";
        ++turns_since_award;
        break;
      }
      WorkMeter mh(model, cap_at(limit, span));
      DropSolution offer = best_drop_on(d, agents[host].cities, keep_h, mh);
      const double t_host = mh.duration_ms();
      round.calls.push_back({host, stage::kCnpHostRfp, t_host});
      span += t_host;
      if (!offer.optimal || offer.dropped < 0) {
        round.decision = "timeout";
        abort = true;
        break;
      }
      const int rfp = offer.dropped;
      broadcast[host][rfp] = true;
      round.cities.push_back(rfp);

      // Guests evaluate the RFP in parallel; each proposes the city whose
      // exchange against the RFP city shortens his own route the most, or
      // stays silent.
      struct Proposal {
        int guest;
        int give;
        TourSolution tour;
      };
      std::vector<Proposal> proposals;
      double stage_max = 0.0;
      for (int g = 0; g < m && !abort; ++g) {
        if (g == host) continue;
        std::vector<int> candidates;
        for (int c : agents[g].cities)
          if (!proposed[g][host][c]) candidates.push_back(c);
        if (candidates.empty()) continue;
        WorkMeter mg(model, cap_at(limit, span));
        int best_give = -1;
        TourSolution best_tour;
        for (int c : candidates) {
          TourSolution t = tsp_exact_on(d, swap_city(agents[g].cities, c, rfp), mg);
          if (!t.optimal) {
            abort = true;
            break;
          }
          if (best_give < 0 || t.length < best_tour.length) {
            best_give = c;
            best_tour = std::move(t);
          }
        }
        const double ms = mg.duration_ms();
        round.calls.push_back({g, stage::kCnpGuestProposal, ms});
        if (ms > stage_max) stage_max = ms;
        if (abort) break;
        if (best_give >= 0 && strictly_improves(best_tour.length, agents[g].tour.length)) {
          proposed[g][host][best_give] = true;
          round.participants.push_back(g);
          proposals.push_back(Proposal{g, best_give, std::move(best_tour)});
        }
      }
      span += stage_max;
      if (abort) {
        round.decision = "timeout";
        break;
      }

      if (proposals.empty()) {
        round.decision = "no_proposals";
        ++turns_since_award;
        break;
      }

      // Host takes the proposal that shortens his own route the most,
      // strictly; ties fall to the lowest guest index.
      WorkMeter me(model, cap_at(limit, span));
      int winner = -1;
      TourSolution winner_tour;
      int winner_give = -1;
      for (const auto& p : proposals) {
        TourSolution t = tsp_exact_on(d, swap_city(agents[host].cities, rfp, p.give), me);
        if (!t.optimal) {
          abort = true;
          break;
        }
        if (!strictly_improves(t.length, agents[host].tour.length)) continue;
        if (winner < 0 || t.length < winner_tour.length) {
          winner = p.guest;
          winner_give = p.give;
          winner_tour = std::move(t);
        }
      }
      const double t_eval = me.duration_ms();
      round.calls.push_back({host, stage::kCnpHostAward, t_eval});
      span += t_eval;
      if (abort) {
        round.decision = "timeout";
        break;
      }
      if (winner < 0) {
        round.decision = "no_award";
        ++turns_since_award;
        break;
      }

      for (auto& p : proposals) {
        if (p.guest != winner) continue;
        agents[winner].cities = swap_city(agents[winner].cities, winner_give, rfp);
        agents[winner].tour = std::move(p.tour);
      }
      agents[host].cities = swap_city(agents[host].cities, rfp, winner_give);
      agents[host].tour = std::move(winner_tour);
      round.cities.push_back(winner_give);
      round.decision = "awarded";
      turns_since_award = 0;
    } while (false);

    out.trace.rounds.push_back(std::move(round));
    out.rounds = round_idx;
    if (abort) {
      out.timed_out = true;
      break;
    }
    host = (host + 1) % m;
  }

  out.inferred_span_ms = span;
  finalize(out, agents);
  return out;
}

MechanismOutcome run_auction(const Instance& inst, const DistanceMatrix& d, const Budget& budget,
                             const DurationModel& model) {
  MechanismOutcome out;
  out.mechanism = Mechanism::Auction;
  const int m = inst.m;
  const int n = inst.n;
  const double limit = budget.ms;

  std::vector<AgentState> agents(m);
  double span = init_round(out, agents, inst, d, limit, model, stage::kAuctionInit);
  if (out.timed_out) {
    out.inferred_span_ms = span;
    finalize(out, agents);
    return out;
  }

  std::vector<std::vector<bool>> returned(m, std::vector<bool>(n, false));
  std::vector<bool> active(m, true);
  int round_idx = 0;

  while (true) {
    if (span >= limit) {
      out.timed_out = true;
      break;
    }
    bool any_active = false;
    for (int k = 0; k < m; ++k) any_active |= active[k];
    if (!any_active) break;

    TraceRound round;
    round.index = ++round_idx;
    bool abort = false;

    // Stage A4: every active salesman picks the city he least wants.
    struct Offer {
      int salesman;
      int city;
      TourSolution base;  // tour over his set minus the offered city
    };
    std::vector<Offer> offers;
    std::vector<int> drop_out;
    double stage_max = 0.0;
    for (int k = 0; k < m && !abort; ++k) {
      if (!active[k]) continue;
      std::vector<int> keep;
      for (int c : agents[k].cities)
        if (returned[k][c]) keep.push_back(c);
      if (keep.size() == agents[k].cities.size()) {
        drop_out.push_back(k);
        continue;
      }
      WorkMeter mk(model, cap_at(limit, span));
      DropSolution drop = best_drop_on(d, agents[k].cities, keep, mk);
      const double ms = mk.duration_ms();
      round.calls.push_back({k, stage::kAuctionPropose, ms});
      if (ms > stage_max) stage_max = ms;
      if (!drop.optimal || drop.dropped < 0) {
        abort = true;
        break;
      }
      returned[k][drop.dropped] = true;  // marked at proposal time
      offers.push_back(Offer{k, drop.dropped, std::move(drop.remaining_tour)});
    }
    span += stage_max;
    if (abort) {
      round.decision = "timeout";
      out.trace.rounds.push_back(std::move(round));
      out.rounds = round_idx;
      out.timed_out = true;
      break;
    }
    for (int k : drop_out) active[k] = false;
    if (offers.empty()) {
      round.decision = "all_declined";
      out.trace.rounds.push_back(std::move(round));
      out.rounds = round_idx;
      break;
    }
    const int p = static_cast<int>(offers.size());
    for (const auto& o : offers) {
      round.participants.push_back(o.salesman);
      round.cities.push_back(o.city);
    }

    // Stage A10: every offerer prices every offered city.
    SavingsMatrix bids;
    bids.participants.reserve(p);
    for (const auto& o : offers) bids.participants.push_back(o.salesman);
    bids.cost.assign(static_cast<std::size_t>(p) * p, 0.0);
    std::vector<std::vector<TourSolution>> bid_tours(p, std::vector<TourSolution>(p));
    stage_max = 0.0;
    for (int a = 0; a < p && !abort; ++a) {
      const Offer& o = offers[a];
      WorkMeter mk(model, cap_at(limit, span));
      for (int b = 0; b < p; ++b) {
        if (b == a) {
          bids.cost[static_cast<std::size_t>(a) * p + a] =
              agents[o.salesman].tour.length - o.base.length;
          continue;
        }
        TourSolution t =
            tsp_exact_on(d, swap_city(agents[o.salesman].cities, o.city, offers[b].city), mk);
        if (!t.optimal) {
          abort = true;
          break;
        }
        bids.cost[static_cast<std::size_t>(a) * p + b] = t.length - o.base.length;
        bid_tours[a][b] = std::move(t);
      }
      const double ms = mk.duration_ms();
      round.calls.push_back({o.salesman, stage::kAuctionBid, ms});
      if (ms > stage_max) stage_max = ms;
    }
    span += stage_max;
    if (abort) {
      round.decision = "timeout";
      out.trace.rounds.push_back(std::move(round));
      out.rounds = round_idx;
      out.timed_out = true;
      break;
    }

    // Stage A14: the auctioneer assigns every offered city.
    Assignment won = solve_auction_assignment(bids, cap_at(limit, span), model);
    round.calls.push_back({-1, stage::kAuctionAward, won.duration_ms});
    span += won.duration_ms;
    if (!won.optimal) {
      round.decision = "timeout";
      out.trace.rounds.push_back(std::move(round));
      out.rounds = round_idx;
      out.timed_out = true;
      break;
    }

    bool exchanged = false;
    for (int a = 0; a < p; ++a) {
      const int w = won.winner[a];
      if (w == a) continue;  // own city returned; already marked
      const Offer& o = offers[a];
      agents[o.salesman].cities = swap_city(agents[o.salesman].cities, o.city, offers[w].city);
      agents[o.salesman].tour = std::move(bid_tours[a][w]);
      exchanged = true;
    }
    round.decision = exchanged ? "exchanged" : "all_returned";
    out.trace.rounds.push_back(std::move(round));
    out.rounds = round_idx;
  }

  out.inferred_span_ms = span;
  finalize(out, agents);
  return out;
}

MechanismOutcome run_mechanism(Mechanism mech, const Instance& inst, const DistanceMatrix& d,
                               const Budget& budget, const DurationModel& model) {
  switch (mech) {
    case Mechanism::NoRealloc: return run_no_realloc(inst, d, budget, model);
    case Mechanism::P2P: return run_p2p(inst, d, budget, model);
    case Mechanism::CNP: return run_cnp(inst, d, budget, model);
    case Mechanism::Auction: return run_auction(inst, d, budget, model);
    case Mechanism::Cluster: return run_cluster(inst, d, budget, model);
    case Mechanism::OptDecentr: return run_opt_decentr(inst, d, budget, model);
    case Mechanism::FullCentr: return run_full_centr(inst, d, budget, model);
  }
  throw std::invalid_argument("unknown mechanism");
}

double replay_span(Mechanism mech, const Trace& trace, int m) {
  if (mech == Mechanism::P2P) {
    std::vector<double> init(m, 0.0);
    std::vector<P2pInteraction> xs;
    for (const auto& r : trace.rounds) {
      if (r.decision == "initialisation") {
        for (const auto& c : r.calls) init[c.agent] += c.ms;
        continue;
      }
      P2pInteraction x;
      x.host = r.host;
      for (int pbit : r.participants)
        if (pbit != r.host) x.guest = pbit;
      for (const auto& c : r.calls) {
        if (c.stage == stage::kP2PGuestProposes) x.t4 += c.ms;
        else if (c.stage == stage::kP2PHostProposes) x.t6 += c.ms;
        else if (c.stage == stage::kP2PGuestEvaluates) x.t7 += c.ms;
        else if (c.stage == stage::kP2PHostFinalises) x.t8 += c.ms;
      }
      xs.push_back(x);
    }
    return p2p_span(init, xs);
  }

  // Staged protocols: within a round, stages appear in first-use order;
  // agents inside a stage run concurrently, the central authority after
  // them.
  std::vector<StageDurations> stages;
  for (const auto& r : trace.rounds) {
    std::vector<std::string> order;
    std::map<std::string, std::map<int, double>> agent_ms;
    std::map<std::string, double> ca_ms;
    for (const auto& c : r.calls) {
      if (agent_ms.find(c.stage) == agent_ms.end() && ca_ms.find(c.stage) == ca_ms.end())
        order.push_back(c.stage);
      if (c.agent < 0) ca_ms[c.stage] += c.ms;
      else agent_ms[c.stage][c.agent] += c.ms;
    }
    for (const auto& label : order) {
      StageDurations st;
      for (const auto& [agent, ms] : agent_ms[label]) st.salesman_ms.push_back(ms);
      st.ca_ms = ca_ms.count(label) ? ca_ms[label] : 0.0;
      stages.push_back(std::move(st));
    }
  }
  return staged_span(stages);
}

std::string span_breakdown_csv(Mechanism mech, const Trace& trace, int m) {
  std::string out = "round,agent,stage,start,duration\n";
  auto row = [&out](int round, int agent, const std::string& stage, double start, double ms) {
    char buf[192];
    std::snprintf(buf, sizeof buf, "%d,%d,%s,%.12g,%.12g\n", round, agent, stage.c_str(), start,
                  ms);
    out += buf;
  };

  if (mech == Mechanism::P2P) {
    std::vector<double> clock(m, 0.0);
    double init_max = 0.0;
    for (const auto& r : trace.rounds) {
      if (r.decision == "initialisation") {
        for (const auto& c : r.calls) {
          row(r.index, c.agent, c.stage, 0.0, c.ms);
          if (c.ms > init_max) init_max = c.ms;
        }
        for (auto& v : clock) v = init_max;
        continue;
      }
      int guest = r.host;
      for (int pbit : r.participants)
        if (pbit != r.host) guest = pbit;
      const double start = std::max(clock[r.host], clock[guest]);
      double offset = start;
      double t8 = 0.0;
      for (const auto& c : r.calls) {
        row(r.index, c.agent, c.stage, offset, c.ms);
        offset += c.ms;
        if (c.stage == stage::kP2PHostFinalises) t8 += c.ms;
      }
      clock[guest] = offset - t8;
      clock[r.host] = offset;
    }
    return out;
  }

  double span = 0.0;
  for (const auto& r : trace.rounds) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<const SolverCall*>> grouped;
    for (const auto& c : r.calls) {
      if (grouped.find(c.stage) == grouped.end()) order.push_back(c.stage);
      grouped[c.stage].push_back(&c);
    }
    for (const auto& label : order) {
      double agents_max = 0.0;
      for (const SolverCall* c : grouped[label])
        if (c->agent >= 0) {
          row(r.index, c->agent, label, span, c->ms);
          if (c->ms > agents_max) agents_max = c->ms;
        }
      double ca_off = span + agents_max;
      for (const SolverCall* c : grouped[label])
        if (c->agent < 0) {
          row(r.index, c->agent, label, ca_off, c->ms);
          ca_off += c->ms;
        }
      span = ca_off;
    }
  }
  return out;
}

}  // namespace mtsp
