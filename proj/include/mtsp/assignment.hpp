#pragma once

#include <cstdint>
#include <vector>

#include "mtsp/timing.hpp"

namespace mtsp {

// Bids collected by the auctioneer: cost(k, i) is the extra tour length
// participant k would incur by taking participant i's proposed city after
// giving up his own (the diagonal is the cost of taking his own city
// back).  Indices are positions in `participants`, which lists salesman
// ids ascending.
struct SavingsMatrix {
  std::vector<int> participants;
  std::vector<double> cost;  // row-major, size participants^2

  double at(int k, int i) const {
    return cost[static_cast<std::size_t>(k) * participants.size() + i];
  }
};

// winner[k] is the participant index whose proposed city k receives.  The
// assignment is a permutation: every proposed city goes to exactly one
// participant.
struct Assignment {
  std::vector<int> winner;
  double objective = 0.0;  // sum of at(k, winner[k]) in participant order
  bool optimal = true;
  double duration_ms = 0.0;
  std::uint64_t work = 0;
};

// Minimises the summed assignment cost subject to individual rationality:
// at(k, winner[k]) <= at(k, k) for every k, so nobody ends up worse than
// taking his own city back.  The identity assignment is always feasible.
// Exhaustive permutation search; candidates per position are tried
// self-first then ascending, and only strict improvements replace the
// incumbent, so ties resolve toward the identity and then lowest indices.
Assignment solve_auction_assignment(const SavingsMatrix& s,
                                    const Budget& budget = Budget::unlimited(),
                                    const DurationModel& model = DurationModel{});

}  // namespace mtsp
