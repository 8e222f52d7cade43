#pragma once

#include <chrono>
#include <cstdint>
#include <limits>

namespace mtsp {

// How solver call durations are measured.
//
// WallClock reads the host's steady clock, so durations depend on the
// machine.  Deterministic derives the duration from the number of
// elementary solver steps (DP cell relaxations, search nodes) divided by a
// fixed rate, so identical inputs give identical durations everywhere.
// Deadlines are enforced against the same quantity in both modes.
enum class DurationMode { WallClock, Deterministic };

struct DurationModel {
  DurationMode mode = DurationMode::WallClock;
  double units_per_ms = 1e5;  // Deterministic only: solver steps per virtual ms
};

// Remaining computation time granted to one solver call, in milliseconds.
// Default is unbounded.
struct Budget {
  double ms = std::numeric_limits<double>::infinity();

  bool unbounded() const { return !(ms < std::numeric_limits<double>::infinity()); }
  static Budget limited(double v) { return Budget{v < 0.0 ? 0.0 : v}; }
  static Budget unlimited() { return Budget{}; }
};

// Tracks the elapsed cost of one logical solver call.  Composite scans
// (e.g. evaluating every drop candidate) share a single meter across their
// inner calls so the whole scan respects one deadline and reports one
// duration.  Deadline checks happen between DP layers / chunks of search
// nodes, never inside an inner loop.
class WorkMeter {
 public:
  WorkMeter(const DurationModel& model, const Budget& budget)
      : mode_(model.mode),
        rate_(model.units_per_ms),
        budget_ms_(budget.ms),
        t0_(std::chrono::steady_clock::now()) {}

  void charge(std::uint64_t units) { units_ += units; }
  std::uint64_t work() const { return units_; }

  double raw_elapsed_ms() const {
    if (mode_ == DurationMode::Deterministic) return static_cast<double>(units_) / rate_;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
        .count();
  }

  bool expired() const { return raw_elapsed_ms() >= budget_ms_; }

  // Recorded duration of the call: never exceeds the granted budget.
  double duration_ms() const {
    double e = raw_elapsed_ms();
    return e < budget_ms_ ? e : budget_ms_;
  }

 private:
  DurationMode mode_;
  double rate_;
  double budget_ms_;
  std::chrono::steady_clock::time_point t0_;
  std::uint64_t units_ = 0;
};

// Strict relative improvement test used by every exchange decision:
// accept only when the new value undercuts the current one by more than
// one part in 1e9.
inline bool strictly_improves(double new_value, double current) {
  return (current - new_value) > 1e-9 * current;
}

}  // namespace mtsp
