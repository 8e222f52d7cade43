#include "mtsp/partition.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mtsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Pruning slack: the bound is admissible in exact arithmetic; scaling it
// down keeps it admissible under floating-point rounding.
constexpr double kBoundSlack = 1.0 - 1e-9;
constexpr std::uint64_t kNodesPerCheck = 4096;

// Lower bound on the summed tour lengths still needed to cover the cities
// in `rest`: each city contributes half of its two cheapest edges towards
// {depot} + rest (its two tour neighbours lie in that set whatever the
// grouping).
double completion_bound(const DistanceMatrix& d, const std::vector<int>& cities,
                        std::uint32_t rest) {
  double sum = 0.0;
  for (std::uint32_t r = rest; r; r &= r - 1) {
    const int c = cities[std::countr_zero(r)];
    double d1 = d(0, c), d2 = kInf;
    for (std::uint32_t q = rest; q; q &= q - 1) {
      const int o = cities[std::countr_zero(q)];
      if (o == c) continue;
      const double v = d(c, o);
      if (v < d1) {
        d2 = d1;
        d1 = v;
      } else if (v < d2) {
        d2 = v;
      }
    }
    if (d2 == kInf) d2 = d1;  // singleton group: both neighbours are the depot
    sum += (d1 + d2) / 2.0;
  }
  return sum;
}

struct Search {
  const DistanceMatrix& d;
  const SubsetTourTable& table;
  WorkMeter& meter;
  int m;
  std::uint64_t nodes = 0;
  bool cut = false;
  double best_total = kInf;
  std::vector<std::uint32_t> best_masks{};
  std::vector<std::uint32_t> cur{};

  bool tick() {
    if (++nodes % kNodesPerCheck == 0 && meter.expired()) cut = true;
    meter.charge(1);
    return !cut;
  }

  void accept(double total) {
    if (total < best_total) {
      best_total = total;
      best_masks = cur;
    }
  }
};

// Fixed-cardinality partition search (every group size pinned by the
// endowment).  Candidate groups for each level are enumerated in
// lexicographic order of member indices, so the first optimum found is
// canonical.
void search_fixed(Search& s, const std::vector<int>& sizes, int level, std::uint32_t rest,
                  double partial) {
  if (s.cut) return;
  if (level == s.m - 1) {
    if (!s.tick()) return;
    s.cur[level] = rest;
    s.accept(partial + s.table.at(rest));
    return;
  }
  std::vector<int> pos;
  for (std::uint32_t r = rest; r; r &= r - 1) pos.push_back(std::countr_zero(r));
  const int r = static_cast<int>(pos.size());
  const int c = sizes[level];
  std::vector<int> idx(c);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!s.tick()) return;
    std::uint32_t sub = 0;
    for (int i : idx) sub |= 1u << pos[i];
    const double partial2 = partial + s.table.at(sub);
    const std::uint32_t rest2 = rest ^ sub;
    if (partial2 + completion_bound(s.d, s.table.cities, rest2) * kBoundSlack < s.best_total) {
      s.cur[level] = sub;
      search_fixed(s, sizes, level + 1, rest2, partial2);
      if (s.cut) return;
    }
    int i = c - 1;
    while (i >= 0 && idx[i] == r - c + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < c; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Free-cardinality partition search for the unconstrained optimum.  The
// lowest remaining city anchors each group, which kills the group-label
// symmetry without losing any partition.
void search_free(Search& s, int level, std::uint32_t rest, double partial) {
  if (s.cut) return;
  if (level == s.m - 1) {
    if (!s.tick()) return;
    s.cur[level] = rest;
    s.accept(partial + s.table.at(rest));
    return;
  }
  const std::uint32_t anchor = rest & (~rest + 1u);
  const std::uint32_t others = rest ^ anchor;
  const int groups_left = s.m - level - 1;
  std::uint32_t sub = 0;
  while (true) {
    if (!s.tick()) return;
    const std::uint32_t group = anchor | sub;
    const std::uint32_t rest2 = rest ^ group;
    if (std::popcount(rest2) >= groups_left) {
      const double partial2 = partial + s.table.at(group);
      if (partial2 + completion_bound(s.d, s.table.cities, rest2) * kBoundSlack < s.best_total) {
        s.cur[level] = group;
        search_free(s, level + 1, rest2, partial2);
        if (s.cut) return;
      }
    }
    sub = (sub - others) & others;  // next subset of `others`, ascending
    if (sub == 0) break;
  }
}

std::vector<int> mask_cities(const SubsetTourTable& table, std::uint32_t mask) {
  std::vector<int> out;
  for (std::uint32_t r = mask; r; r &= r - 1) out.push_back(table.cities[std::countr_zero(r)]);
  return out;
}

// Turns chosen group masks into the returned solution: per-group exact
// tours (sharing the call's meter) and the total accumulated in salesman
// order.
AllocationSolution finish(const DistanceMatrix& d, const SubsetTourTable& table,
                          const std::vector<std::uint32_t>& masks, WorkMeter& meter,
                          bool search_optimal) {
  AllocationSolution sol;
  sol.optimal = search_optimal;
  for (std::uint32_t mask : masks) {
    sol.groups.push_back(mask_cities(table, mask));
    TourSolution t = tsp_exact_on(d, sol.groups.back(), meter);
    if (!t.optimal) sol.optimal = false;
    sol.total += t.length;
    sol.tours.push_back(std::move(t));
  }
  return sol;
}

AllocationSolution from_groups(const DistanceMatrix& d,
                               const std::vector<std::vector<int>>& groups, WorkMeter& meter) {
  AllocationSolution sol;
  sol.optimal = false;
  for (const auto& g : groups) {
    sol.groups.push_back(g);
    std::sort(sol.groups.back().begin(), sol.groups.back().end());
    TourSolution t = tsp_exact_on(d, sol.groups.back(), meter);
    sol.total += t.length;
    sol.tours.push_back(std::move(t));
  }
  return sol;
}

std::vector<int> all_cities(int n) {
  std::vector<int> cities(n - 1);
  std::iota(cities.begin(), cities.end(), 1);
  return cities;
}

}  // namespace

AllocationSolution solve_full_centr(const DistanceMatrix& d, int m, const Budget& budget,
                                    const DurationModel& model) {
  const int n = d.size();
  if (m < 1 || m > n - 1) throw std::invalid_argument("m must be in [1, n-1]");
  WorkMeter meter(model, budget);
  const auto cities = all_cities(n);
  SubsetTourTable table = subset_tour_table_on(d, cities, meter);

  AllocationSolution sol;
  if (!table.complete) {
    // No usable table: fall back to a round-robin split.
    std::vector<std::vector<int>> groups(m);
    for (int j = 1; j < n; ++j) groups[(j - 1) % m].push_back(j);
    sol = from_groups(d, groups, meter);
  } else {
    Search s{d, table, meter, m};
    s.cur.assign(m, 0);
    search_free(s, 0, (1u << cities.size()) - 1u, 0.0);
    if (s.best_masks.empty()) {
      std::vector<std::vector<int>> groups(m);
      for (int j = 1; j < n; ++j) groups[(j - 1) % m].push_back(j);
      sol = from_groups(d, groups, meter);
    } else {
      sol = finish(d, table, s.best_masks, meter, !s.cut);
    }
  }
  sol.duration_ms = meter.duration_ms();
  sol.work = meter.work();
  return sol;
}

AllocationSolution solve_opt_decentr(const DistanceMatrix& d,
                                     const std::vector<std::vector<int>>& endowment,
                                     const Budget& budget, const DurationModel& model) {
  const int n = d.size();
  const int m = static_cast<int>(endowment.size());
  std::vector<int> unioned;
  for (const auto& g : endowment) {
    if (g.empty()) throw std::invalid_argument("empty endowment group");
    unioned.insert(unioned.end(), g.begin(), g.end());
  }
  std::sort(unioned.begin(), unioned.end());
  if (unioned != all_cities(n))
    throw std::invalid_argument("endowment is not a partition of cities 1..n-1");

  WorkMeter meter(model, budget);
  SubsetTourTable table = subset_tour_table_on(d, unioned, meter);

  AllocationSolution sol;
  if (!table.complete) {
    sol = from_groups(d, endowment, meter);  // keep the endowment, flagged
  } else {
    std::vector<int> sizes;
    for (const auto& g : endowment) sizes.push_back(static_cast<int>(g.size()));
    Search s{d, table, meter, m};
    s.cur.assign(m, 0);
    // The endowment itself seeds the incumbent, so a deadline mid-search
    // can never return anything worse than it.
    double seed = 0.0;
    for (const auto& g : endowment) {
      std::uint32_t mask = 0;
      for (int c : g)
        mask |= 1u << (std::lower_bound(table.cities.begin(), table.cities.end(), c) -
                       table.cities.begin());
      s.cur[&g - endowment.data()] = mask;
      seed += table.at(mask);
    }
    s.best_total = seed;
    s.best_masks = s.cur;
    search_fixed(s, sizes, 0, (1u << unioned.size()) - 1u, 0.0);
    sol = finish(d, table, s.best_masks, meter, !s.cut);
  }
  sol.duration_ms = meter.duration_ms();
  sol.work = meter.work();
  return sol;
}

}  // namespace mtsp
