#include "mtsp/clustering.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace mtsp {

namespace {

constexpr std::uint64_t kNodesPerCheck = 4096;

struct ClusterSearch {
  const DistanceMatrix& d;
  int n;  // cities 1..n-1 get assigned
  int m;
  std::vector<int> capacity;
  std::vector<int> membership;       // city j -> cluster, 1-based city index
  std::vector<std::vector<int>> members;
  WorkMeter& meter;
  std::uint64_t nodes = 0;
  bool cut = false;
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  std::vector<int> best_membership;

  void dfs(int city, double diam) {
    if (cut) return;
    if (city == n) {
      if (!found || diam < best) {
        found = true;
        best = diam;
        best_membership.assign(membership.begin() + 1, membership.end());
      }
      return;
    }
    for (int k = 0; k < m; ++k) {
      if (capacity[k] == 0) continue;
      meter.charge(1);
      if (++nodes % kNodesPerCheck == 0 && meter.expired()) {
        cut = true;
        return;
      }
      double extended = diam;
      for (int o : members[k]) {
        const double v = d(o, city);
        if (v > extended) extended = v;
      }
      if (found && extended >= best) continue;
      capacity[k]--;
      members[k].push_back(city);
      membership[city] = k;
      dfs(city + 1, extended);
      members[k].pop_back();
      capacity[k]++;
      if (cut) return;
    }
  }
};

}  // namespace

Clustering solve_clustering(const DistanceMatrix& d, std::span<const int> sizes,
                            const Budget& budget, const DurationModel& model) {
  const int n = d.size();
  int sum = 0;
  for (int s : sizes) {
    if (s <= 0) throw std::invalid_argument("cluster sizes must be positive");
    sum += s;
  }
  if (sum != n - 1) throw std::invalid_argument("cluster sizes inconsistent with city count");

  WorkMeter meter(model, budget);
  ClusterSearch s{d, n, static_cast<int>(sizes.size()),
                  std::vector<int>(sizes.begin(), sizes.end()),
                  std::vector<int>(n, -1),
                  std::vector<std::vector<int>>(sizes.size()),
                  meter};
  s.dfs(1, 0.0);

  Clustering out;
  out.optimal = !s.cut;
  if (!s.found) {
    // Deadline fired before the first full assignment: fill greedily in
    // index order so the result is still a valid clustering.
    std::vector<int> cap(sizes.begin(), sizes.end());
    out.clusters.assign(sizes.size(), {});
    for (int c = 1, k = 0; c < n; ++c) {
      while (cap[k] == 0) ++k;
      out.clusters[k].push_back(c);
      cap[k]--;
    }
    for (const auto& cl : out.clusters)
      for (std::size_t a = 0; a < cl.size(); ++a)
        for (std::size_t b = a + 1; b < cl.size(); ++b)
          out.max_diameter = std::max(out.max_diameter, d(cl[a], cl[b]));
    out.optimal = false;
  } else {
    out.clusters.assign(sizes.size(), {});
    for (int c = 1; c < n; ++c) out.clusters[s.best_membership[c - 1]].push_back(c);
    out.max_diameter = s.best;
  }
  out.duration_ms = meter.duration_ms();
  out.work = meter.work();
  return out;
}

}  // namespace mtsp
