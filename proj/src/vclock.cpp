#include "mtsp/vclock.hpp"

#include <algorithm>

namespace mtsp {

double staged_span(std::span<const StageDurations> stages) {
  double span = 0.0;
  for (const auto& st : stages) {
    double mx = 0.0;
    for (double v : st.salesman_ms)
      if (v > mx) mx = v;
    span += mx + st.ca_ms;
  }
  return span;
}

double p2p_span(std::span<const double> init_ms, std::span<const P2pInteraction> interactions,
                std::vector<double>* final_clocks) {
  double start = 0.0;
  for (double v : init_ms)
    if (v > start) start = v;
  std::vector<double> clock(init_ms.size(), start);

  for (const auto& x : interactions) {
    const double s = std::max(clock[x.host], clock[x.guest]);
    clock[x.guest] = s + x.t4 + x.t6 + x.t7;
    clock[x.host] = clock[x.guest] + x.t8;
  }
  double span = 0.0;
  for (double v : clock)
    if (v > span) span = v;
  if (final_clocks) *final_clocks = clock;
  return span;
}

}  // namespace mtsp
