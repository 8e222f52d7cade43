#pragma once

#include <span>
#include <vector>

namespace mtsp {

// One synchronised phase of a round: the listed agents compute in
// parallel, then a central-authority computation (if any) runs after the
// slowest of them.  The phase contributes max(salesman_ms) + ca_ms.
struct StageDurations {
  std::vector<double> salesman_ms;
  double ca_ms = 0.0;
};

// Inferred parallel makespan of a staged protocol: phases are sequential,
// agents within a phase concurrent.  Empty agent lists contribute only
// their ca_ms.
double staged_span(std::span<const StageDurations> stages);

// One pairwise interaction: the guest proposes (t4), the host counters
// (t6), the guest evaluates and replies (t7), the host finalises (t8).
// Durations are zero for steps that never ran.
struct P2pInteraction {
  int host = 0;
  int guest = 0;
  double t4 = 0.0;
  double t6 = 0.0;
  double t7 = 0.0;
  double t8 = 0.0;
};

// Inferred makespan of a sequence of pairwise interactions.  Every agent's
// clock starts at the slowest initial solve (all wait for the last to be
// ready).  An interaction starts when both parties are free; the guest is
// released after his reply (t4+t6+t7 past the start) and the host after
// the finalisation step (t8 more).  The span is the largest final clock.
// final_clocks, when given, receives each agent's clock for inspection.
double p2p_span(std::span<const double> init_ms, std::span<const P2pInteraction> interactions,
                std::vector<double>* final_clocks = nullptr);

// Per-agent inferred elapsed time during a run, used to cap each solver
// call's deadline against the campaign time limit.
class VirtualClock {
 public:
  VirtualClock(int agents, double limit_ms) : t_(agents, 0.0), limit_(limit_ms) {}

  double at(int agent) const { return t_[agent]; }
  void set(int agent, double t) { t_[agent] = t; }
  void set_all(double t) {
    for (auto& v : t_) v = t;
  }
  double max() const {
    double m = 0.0;
    for (double v : t_)
      if (v > m) m = v;
    return m;
  }
  double limit() const { return limit_; }

  // Budget left before this agent's next call would cross the limit,
  // floored at zero.
  double remaining(int agent) const {
    double r = limit_ - t_[agent];
    return r > 0.0 ? r : 0.0;
  }

 private:
  std::vector<double> t_;
  double limit_;
};

}  // namespace mtsp
