#include <vector>

#include "doctest.h"
#include "mtsp/vclock.hpp"

using namespace mtsp;

TEST_CASE("the staged span is the sum of slowest-agent times plus authority work") {
  // three agents solve (5, 7, 4), then (15, 13, 11), then the authority
  // alone takes 27: span = 7 + 15 + 27 = 49
  std::vector<StageDurations> stages(3);
  stages[0].salesman_ms = {5.0, 7.0, 4.0};
  stages[1].salesman_ms = {15.0, 13.0, 11.0};
  stages[2].salesman_ms = {};
  stages[2].ca_ms = 27.0;
  CHECK(staged_span(stages) == 49.0);
}

TEST_CASE("authority work can follow agent work inside one stage") {
  std::vector<StageDurations> stages(1);
  stages[0].salesman_ms = {3.0, 9.0};
  stages[0].ca_ms = 2.0;
  CHECK(staged_span(stages) == 11.0);
}

TEST_CASE("an empty stage list spans nothing") {
  CHECK(staged_span({}) == 0.0);
  std::vector<StageDurations> one(1);
  CHECK(staged_span(one) == 0.0);
}

TEST_CASE("a single interaction advances both clocks from a common start") {
  const std::vector<double> init{6.0, 2.0};
  std::vector<P2pInteraction> xs(1);
  xs[0] = {0, 1, 1.0, 2.0, 3.0, 4.0};
  std::vector<double> clocks;
  // both start at max(init) = 6; guest released at 6+1+2+3 = 12, host at 16
  CHECK(p2p_span(init, xs, &clocks) == 16.0);
  REQUIRE(clocks.size() == 2);
  CHECK(clocks[0] == 16.0);
  CHECK(clocks[1] == 12.0);
}

TEST_CASE("an interaction waits for the busier party") {
  const std::vector<double> init{0.0, 0.0, 0.0};
  std::vector<P2pInteraction> xs(2);
  xs[0] = {0, 1, 5.0, 5.0, 5.0, 5.0};  // host 0 busy until 20, guest 1 until 15
  xs[1] = {1, 2, 1.0, 1.0, 1.0, 1.0};  // starts at max(15, 0) = 15
  std::vector<double> clocks;
  const double span = p2p_span(init, xs, &clocks);
  CHECK(clocks[0] == 20.0);
  CHECK(clocks[1] == 15.0 + 4.0);  // host of the second interaction
  CHECK(clocks[2] == 15.0 + 3.0);
  CHECK(span == 20.0);
}

TEST_CASE("disjoint pairs overlap instead of queueing") {
  const std::vector<double> init{0.0, 0.0, 0.0, 0.0};
  std::vector<P2pInteraction> xs(2);
  xs[0] = {0, 1, 2.0, 2.0, 2.0, 2.0};
  xs[1] = {2, 3, 2.0, 2.0, 2.0, 2.0};
  // both run concurrently: span is one interaction's host time, not two
  CHECK(p2p_span(init, xs) == 8.0);
}

TEST_CASE("the span never exceeds the serial sum") {
  const std::vector<double> init{3.0, 1.0, 2.0};
  std::vector<P2pInteraction> xs(3);
  xs[0] = {0, 1, 1.5, 0.5, 2.0, 1.0};
  xs[1] = {1, 2, 0.25, 1.25, 0.75, 0.5};
  xs[2] = {2, 0, 2.0, 0.0, 1.0, 3.0};
  double serial = 3.0;  // slowest init
  for (const auto& x : xs) serial += x.t4 + x.t6 + x.t7 + x.t8;
  const double span = p2p_span(init, xs);
  CHECK(span <= serial);
  CHECK(span >= 3.0);
}

TEST_CASE("a guest is free again before his host") {
  const std::vector<double> init{0.0, 0.0, 0.0};
  std::vector<P2pInteraction> xs(2);
  xs[0] = {0, 1, 4.0, 0.0, 0.0, 10.0};  // guest 1 free at 4, host 0 at 14
  xs[1] = {1, 2, 1.0, 1.0, 1.0, 1.0};   // can start at 4, not 14
  std::vector<double> clocks;
  const double span = p2p_span(init, xs, &clocks);
  CHECK(clocks[1] == 4.0 + 1.0 + 1.0 + 1.0 + 1.0);
  CHECK(clocks[2] == 4.0 + 1.0 + 1.0 + 1.0);
  CHECK(span == 14.0);
}

TEST_CASE("no interactions means the span is the slowest initial solve") {
  const std::vector<double> init{4.0, 9.5, 1.0};
  CHECK(p2p_span(init, {}) == 9.5);
}

TEST_CASE("virtual clocks track per-agent time against the limit") {
  VirtualClock clock(3, 100.0);
  CHECK(clock.at(0) == 0.0);
  CHECK(clock.max() == 0.0);
  CHECK(clock.remaining(0) == 100.0);
  clock.set(1, 40.0);
  CHECK(clock.at(1) == 40.0);
  CHECK(clock.max() == 40.0);
  CHECK(clock.remaining(1) == 60.0);
  clock.set(1, 130.0);
  CHECK(clock.remaining(1) == 0.0);
  clock.set_all(7.0);
  CHECK(clock.at(0) == 7.0);
  CHECK(clock.at(2) == 7.0);
  CHECK(clock.max() == 7.0);
  CHECK(clock.limit() == 100.0);
}
