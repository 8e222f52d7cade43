#pragma once

// Shared pieces of the exact-tour kernels: input validation, the
// nearest-neighbour incumbent, Gosper's subset enumeration and the parent
// walk.  The DP loops themselves live twice, in tour.cpp (OpenMP) and
// tour_serial.cpp (reference), and must stay structurally identical so the
// two truncate at the same chunk boundaries under a deadline.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "mtsp/geometry.hpp"
#include "mtsp/tour.hpp"

namespace mtsp::tour_detail {

constexpr int kMaxCities = 22;
// Upper bound on DP relaxations between deadline checks; stays under 10 ms
// of work at the default deterministic rate.
constexpr std::uint64_t kChunkRelaxations = 1u << 19;

inline std::vector<int> validated_sorted(const DistanceMatrix& d, std::span<const int> cities) {
  std::vector<int> s(cities.begin(), cities.end());
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 1 || s[i] >= d.size()) throw std::invalid_argument("city id out of range");
    if (i > 0 && s[i] == s[i - 1]) throw std::invalid_argument("duplicate city id");
  }
  if (s.size() > kMaxCities) throw std::invalid_argument("city set too large for subset DP");
  return s;
}

// Greedy tour from the depot, nearest unvisited next (ties to the lowest
// id).  Length accumulated edge by edge in walk order.
inline TourSolution nearest_neighbour(const DistanceMatrix& d, const std::vector<int>& s) {
  const int k = static_cast<int>(s.size());
  TourSolution t;
  t.order.reserve(k + 2);
  t.order.push_back(0);
  std::vector<bool> used(k, false);
  int cur = 0;
  for (int step = 0; step < k; ++step) {
    int best = -1;
    double bd = 0.0;
    for (int i = 0; i < k; ++i) {
      if (used[i]) continue;
      double cand = d(cur, s[i]);
      if (best < 0 || cand < bd) {
        best = i;
        bd = cand;
      }
    }
    used[best] = true;
    t.length += bd;
    cur = s[best];
    t.order.push_back(cur);
  }
  t.length += d(cur, 0);
  t.order.push_back(0);
  return t;
}

inline std::uint32_t gosper_next(std::uint32_t v) {
  std::uint32_t c = v & (~v + 1u);
  std::uint32_t r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

inline void masks_of_popcount(int k, int p, std::vector<std::uint32_t>& out) {
  out.clear();
  std::uint32_t limit = 1u << k;
  for (std::uint32_t v = (1u << p) - 1u; v < limit; v = gosper_next(v)) out.push_back(v);
}

inline TourSolution finish_from_parents(const std::vector<int>& s,
                                        const std::vector<double>& dp,
                                        const std::vector<std::int8_t>& parent,
                                        const std::vector<double>& dep) {
  const int k = static_cast<int>(s.size());
  const std::uint32_t full = (1u << k) - 1u;
  int best_last = 0;
  double best = dp[static_cast<std::size_t>(full) * k + 0] + dep[0];
  for (int j = 1; j < k; ++j) {
    double cand = dp[static_cast<std::size_t>(full) * k + j] + dep[j];
    if (cand < best) {
      best = cand;
      best_last = j;
    }
  }
  std::vector<int> rev;
  std::uint32_t mask = full;
  int cur = best_last;
  while (true) {
    rev.push_back(s[cur]);
    if (std::popcount(mask) == 1) break;
    int pr = parent[static_cast<std::size_t>(mask) * k + cur];
    mask ^= 1u << cur;
    cur = pr;
  }
  TourSolution t;
  t.order.reserve(k + 2);
  t.order.push_back(0);
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) t.order.push_back(*it);
  t.order.push_back(0);
  t.length = best;
  t.optimal = true;
  return t;
}

}  // namespace mtsp::tour_detail
