#include "mtsp/assignment.hpp"

#include <stdexcept>

namespace mtsp {

namespace {

constexpr std::uint64_t kNodesPerCheck = 4096;

struct AssignSearch {
  const SavingsMatrix& s;
  int p;
  WorkMeter& meter;
  std::vector<int> cur;
  std::vector<bool> taken;
  std::vector<int> best;
  double best_obj;
  bool have_best = false;
  std::uint64_t nodes = 0;
  bool cut = false;

  void dfs(int k, double partial) {
    if (cut) return;
    if (k == p) {
      if (!have_best || partial < best_obj) {
        have_best = true;
        best_obj = partial;
        best = cur;
      }
      return;
    }
    const double own = s.at(k, k);
    for (int step = 0; step < p; ++step) {
      // Candidate order: own city first, then the others ascending.
      int i = step == 0 ? k : (step <= k ? step - 1 : step);
      if (taken[i]) continue;
      const double c = s.at(k, i);
      if (c > own) continue;  // individual rationality
      meter.charge(1);
      if (++nodes % kNodesPerCheck == 0 && meter.expired()) {
        cut = true;
        return;
      }
      taken[i] = true;
      cur[k] = i;
      dfs(k + 1, partial + c);
      taken[i] = false;
      if (cut) return;
    }
  }
};

}  // namespace

Assignment solve_auction_assignment(const SavingsMatrix& s, const Budget& budget,
                                    const DurationModel& model) {
  const int p = static_cast<int>(s.participants.size());
  if (p < 1) throw std::invalid_argument("assignment needs at least one participant");
  if (s.cost.size() != static_cast<std::size_t>(p) * p)
    throw std::invalid_argument("savings matrix size mismatch");

  WorkMeter meter(model, budget);
  AssignSearch search{s, p, meter, std::vector<int>(p), std::vector<bool>(p, false),
                      {},   0.0};
  search.dfs(0, 0.0);

  Assignment out;
  if (!search.have_best) {
    // Deadline fired before even the identity leaf: the identity is always
    // feasible, return it.
    out.winner.resize(p);
    for (int k = 0; k < p; ++k) out.winner[k] = k;
  } else {
    out.winner = search.best;
  }
  out.optimal = !search.cut;
  out.objective = 0.0;
  for (int k = 0; k < p; ++k) out.objective += s.at(k, out.winner[k]);
  out.duration_ms = meter.duration_ms();
  out.work = meter.work();
  return out;
}

}  // namespace mtsp
