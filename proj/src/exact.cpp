#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

#include "insertnco/data.hpp"
#include "insertnco/geometry.hpp"

namespace insertnco {

HeldKarpResult held_karp(const Instance& instance) {
  if (instance.kind != ProblemKind::Tsp)
    throw Error(ErrorKind::UnsupportedProblem, "held_karp handles TSP only");
  const int n = instance.num_nodes();
  if (n > 20)
    throw Error(ErrorKind::TooLarge, "held_karp is guarded to n <= 20");
  instance.validate();

  // Node 0 is the fixed anchor; DP over subsets of the remaining m nodes.
  const int m = n - 1;
  std::vector<double> dist(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) dist[i * n + j] = node_distance(instance, i, j);

  const std::uint32_t full = (1u << m) - 1;
  const double inf = std::numeric_limits<double>::infinity();
  // dp[mask*m + j]: cheapest path 0 -> ... -> (j+1) visiting exactly the
  // nodes of mask (bit j stands for node j+1).
  std::vector<double> dp(static_cast<std::size_t>(full + 1) * m, inf);
  std::vector<std::int8_t> parent(dp.size(), -1);
  for (int j = 0; j < m; ++j) dp[(1u << j) * m + j] = dist[0 * n + (j + 1)];

  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const double* row = &dp[static_cast<std::size_t>(mask) * m];
    const std::uint32_t absent = full & ~mask;
    for (std::uint32_t bits = mask; bits; bits &= bits - 1) {
      const int j = std::countr_zero(bits);
      const double base = row[j];
      if (base == inf) continue;
      const double* dj = &dist[(j + 1) * n];
      for (std::uint32_t rest = absent; rest; rest &= rest - 1) {
        const int k = std::countr_zero(rest);
        const std::uint32_t next = mask | (1u << k);
        const double cand = base + dj[k + 1];
        double& slot = dp[static_cast<std::size_t>(next) * m + k];
        if (cand < slot) {
          slot = cand;
          parent[static_cast<std::size_t>(next) * m + k] = static_cast<std::int8_t>(j);
        }
      }
    }
  }

  int best_last = 0;
  double best = inf;
  for (int j = 0; j < m; ++j) {
    const double cand = dp[static_cast<std::size_t>(full) * m + j] + dist[(j + 1) * n + 0];
    if (cand < best) {
      best = cand;
      best_last = j;
    }
  }

  std::vector<int> tail;
  std::uint32_t mask = full;
  int j = best_last;
  while (j >= 0) {
    tail.push_back(j + 1);
    const int prev = parent[static_cast<std::size_t>(mask) * m + j];
    mask &= ~(1u << j);
    j = prev;
  }
  std::reverse(tail.begin(), tail.end());

  HeldKarpResult result;
  result.tour.order.push_back(0);
  result.tour.order.insert(result.tour.order.end(), tail.begin(), tail.end());
  result.length = best;
  return result;
}

}  // namespace insertnco
