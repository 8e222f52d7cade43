#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace mtsp {

// Stage labels follow the salesman/auctioneer state-chart names so a trace
// reads like the protocol it came from.
namespace stage {
inline constexpr const char* kP2PInit = "P2P0_initialisation";
inline constexpr const char* kP2PGuestProposes = "P2P4_guest_proposes_a_city";
inline constexpr const char* kP2PHostProposes = "P2P6_host_proposes_city_to_guest";
inline constexpr const char* kP2PGuestEvaluates = "P2P7_guest_receives_proposition_and_sends_reply";
inline constexpr const char* kP2PHostFinalises = "P2P8_host_receives_acceptation_or_rejection";
inline constexpr const char* kCnpInit = "CNP0_initialisation";
inline constexpr const char* kCnpHostRfp = "CNP3_host_broadcasts_RFPs";
inline constexpr const char* kCnpGuestProposal = "CNP5_guest_sends_proposal";
inline constexpr const char* kCnpHostAward = "CNP9_host_sends_allocation_replies";
inline constexpr const char* kAuctionInit = "A0_initialisation";
inline constexpr const char* kAuctionPropose = "A4_propose_city_to_give";
inline constexpr const char* kAuctionBid = "A10_bid_on_every_proposed_city";
inline constexpr const char* kAuctionAward = "A14_send_allocation_of_cities";
inline constexpr const char* kNoReallocSolve = "NoRealloc_solve_TSP";
inline constexpr const char* kClusterAllocate = "Cluster_CA_allocates";
inline constexpr const char* kClusterSolve = "Cluster_solve_TSP";
inline constexpr const char* kOptDecentrSolve = "OptDecentr_CA_solves";
inline constexpr const char* kFullCentrSolve = "FullCentr_CA_solves";
}  // namespace stage

// One logical solver invocation attributed to an agent (salesman index, or
// -1 for the central authority) within a named protocol stage.
struct SolverCall {
  int agent;
  std::string stage;
  double ms;
};

struct TraceRound {
  int index = 0;
  int host = -1;  // -1 when no host role applies
  std::vector<int> participants;
  std::vector<int> cities;  // cities offered this round
  std::string decision;
  std::vector<SolverCall> calls;
};

struct Trace {
  std::vector<TraceRound> rounds;
};

nlohmann::json round_to_json(const TraceRound& r);
TraceRound round_from_json(const nlohmann::json& j);

}  // namespace mtsp
