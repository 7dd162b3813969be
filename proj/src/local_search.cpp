#include <algorithm>
#include <limits>
#include <numeric>

#include "insertnco/construct.hpp"
#include "insertnco/data.hpp"

namespace insertnco {

namespace {

constexpr double kGain = 1e-10;  // minimum improvement accepted by a move

double d(const Instance& instance, int a, int b) { return node_distance(instance, a, b); }

// Reversing order[i+1..j] replaces edges (v_i,v_{i+1}) and (v_j,v_{j+1}).
bool two_opt_pass(const Instance& instance, std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  bool improved = false;
  for (int i = 0; i < n - 1; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // same edge twice
      const int a = order[i], b = order[i + 1];
      const int c = order[j], e = order[(j + 1) % n];
      const double delta = d(instance, a, c) + d(instance, b, e) -
                           d(instance, a, b) - d(instance, c, e);
      if (delta < -kGain) {
        std::reverse(order.begin() + i + 1, order.begin() + j + 1);
        improved = true;
      }
    }
  }
  return improved;
}

// Relocates one segment of length 1..3 (orientation preserved) if that
// strictly shortens the tour. Returns false at a local optimum.
bool or_opt_move(const Instance& instance, std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  for (int len = 1; len <= 3 && len < n - 1; ++len) {
    for (int i = 0; i < n; ++i) {
      const int prev = order[(i + n - 1) % n];
      const int first = order[i];
      const int last = order[(i + len - 1) % n];
      const int next = order[(i + len) % n];
      const double removal = d(instance, prev, next) - d(instance, prev, first) -
                             d(instance, last, next);
      // Edges of the reduced cycle, excluding the freshly closed (prev,next).
      for (int off = len; off < n - 1; ++off) {
        const int jp = order[(i + off) % n];
        const int jn = order[(i + off + 1) % n];
        const double delta = removal + d(instance, jp, first) + d(instance, last, jn) -
                             d(instance, jp, jn);
        if (delta < -kGain) {
          std::vector<int> rest;
          rest.reserve(n - len);
          for (int s = len; s < n; ++s) rest.push_back(order[(i + s) % n]);
          std::vector<int> rebuilt;
          rebuilt.reserve(n);
          const int cut = off - len + 1;  // segment lands right after jp
          rebuilt.insert(rebuilt.end(), rest.begin(), rest.begin() + cut);
          for (int s = 0; s < len; ++s) rebuilt.push_back(order[(i + s) % n]);
          rebuilt.insert(rebuilt.end(), rest.begin() + cut, rest.end());
          order = std::move(rebuilt);
          return true;
        }
      }
    }
  }
  return false;
}

double route_demand_sum(const Instance& instance, const std::vector<int>& route) {
  double total = 0.0;
  for (int node : route) total += instance.demands[node];
  return total;
}

// Open-path 2-opt inside one route (depot fixed at both ends).
bool route_two_opt(const Instance& instance, std::vector<int>& route) {
  const int m = static_cast<int>(route.size());
  bool improved = false;
  for (int i = 0; i < m - 1; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const int a = i == 0 ? 0 : route[i - 1];
      const int b = route[i];
      const int c = route[j];
      const int e = j == m - 1 ? 0 : route[j + 1];
      const double delta =
          d(instance, a, c) + d(instance, b, e) - d(instance, a, b) - d(instance, c, e);
      if (delta < -kGain) {
        std::reverse(route.begin() + i, route.begin() + j + 1);
        improved = true;
      }
    }
  }
  return improved;
}

// Best feasible placement of `node` inside `route`; returns the delta and
// writes the slot.
double best_slot(const Instance& instance, const std::vector<int>& route, int node,
                 int* slot) {
  double best = std::numeric_limits<double>::infinity();
  const int m = static_cast<int>(route.size());
  for (int e = 0; e <= m; ++e) {
    const int pred = e == 0 ? 0 : route[e - 1];
    const int succ = e == m ? 0 : route[e];
    const double delta =
        d(instance, pred, node) + d(instance, node, succ) - d(instance, pred, succ);
    if (delta < best) {
      best = delta;
      *slot = e;
    }
  }
  return best;
}

bool cvrp_relocate_pass(const Instance& instance, std::vector<std::vector<int>>& routes,
                        std::vector<double>& demand) {
  bool improved = false;
  for (std::size_t a = 0; a < routes.size(); ++a) {
    for (std::size_t i = 0; i < routes[a].size();) {
      const int node = routes[a][i];
      const int pred = i == 0 ? 0 : routes[a][i - 1];
      const int succ = i + 1 == routes[a].size() ? 0 : routes[a][i + 1];
      const double removal = d(instance, pred, succ) - d(instance, pred, node) -
                             d(instance, node, succ);
      double best_delta = -kGain;
      int best_route = -1, best_pos = -1;
      for (std::size_t b = 0; b < routes.size(); ++b) {
        if (b == a) continue;
        if (demand[b] + instance.demands[node] > instance.capacity + 1e-9) continue;
        int slot = -1;
        const double delta = removal + best_slot(instance, routes[b], node, &slot);
        if (delta < best_delta) {
          best_delta = delta;
          best_route = static_cast<int>(b);
          best_pos = slot;
        }
      }
      if (best_route >= 0) {
        routes[a].erase(routes[a].begin() + i);
        demand[a] -= instance.demands[node];
        routes[best_route].insert(routes[best_route].begin() + best_pos, node);
        demand[best_route] += instance.demands[node];
        improved = true;
      } else {
        ++i;
      }
    }
  }
  return improved;
}

bool cvrp_swap_pass(const Instance& instance, std::vector<std::vector<int>>& routes,
                    std::vector<double>& demand) {
  bool improved = false;
  for (std::size_t a = 0; a < routes.size(); ++a) {
    for (std::size_t b = a + 1; b < routes.size(); ++b) {
      for (std::size_t i = 0; i < routes[a].size(); ++i) {
        for (std::size_t j = 0; j < routes[b].size(); ++j) {
          const int x = routes[a][i];
          const int y = routes[b][j];
          if (demand[a] - instance.demands[x] + instance.demands[y] >
                  instance.capacity + 1e-9 ||
              demand[b] - instance.demands[y] + instance.demands[x] >
                  instance.capacity + 1e-9)
            continue;
          const int xp = i == 0 ? 0 : routes[a][i - 1];
          const int xs = i + 1 == routes[a].size() ? 0 : routes[a][i + 1];
          const int yp = j == 0 ? 0 : routes[b][j - 1];
          const int ys = j + 1 == routes[b].size() ? 0 : routes[b][j + 1];
          const double delta = d(instance, xp, y) + d(instance, y, xs) +
                               d(instance, yp, x) + d(instance, x, ys) -
                               d(instance, xp, x) - d(instance, x, xs) -
                               d(instance, yp, y) - d(instance, y, ys);
          if (delta < -kGain) {
            std::swap(routes[a][i], routes[b][j]);
            demand[a] += instance.demands[y] - instance.demands[x];
            demand[b] += instance.demands[x] - instance.demands[y];
            improved = true;
          }
        }
      }
    }
  }
  return improved;
}

}  // namespace

CyclicSolution two_opt_descent(const Instance& instance, CyclicSolution solution) {
  while (two_opt_pass(instance, solution.order)) {
  }
  return solution;
}

CyclicSolution or_opt_descent(const Instance& instance, CyclicSolution solution) {
  while (or_opt_move(instance, solution.order)) {
  }
  return solution;
}

CyclicSolution tsp_local_search(const Instance& instance, CyclicSolution solution) {
  for (;;) {
    const bool a = two_opt_pass(instance, solution.order);
    const bool b = or_opt_move(instance, solution.order);
    if (!a && !b) break;
  }
  return solution;
}

CyclicSolution cvrp_local_search(const Instance& instance, CyclicSolution solution) {
  auto routes = solution.routes();
  std::vector<double> demand;
  demand.reserve(routes.size());
  for (const auto& route : routes) demand.push_back(route_demand_sum(instance, route));
  for (;;) {
    bool improved = false;
    for (auto& route : routes) improved |= route_two_opt(instance, route);
    improved |= cvrp_relocate_pass(instance, routes, demand);
    improved |= cvrp_swap_pass(instance, routes, demand);
    if (!improved) break;
  }
  std::vector<std::vector<int>> kept;
  for (auto& route : routes) {
    if (!route.empty()) kept.push_back(std::move(route));
  }
  return CyclicSolution::from_routes(kept);
}

CyclicSolution local_search_label(const Instance& instance, int restart_budget, Rng& rng) {
  CyclicSolution best;
  double best_length = std::numeric_limits<double>::infinity();
  auto consider = [&](CyclicSolution candidate) {
    const double length = tour_length(instance, candidate);
    if (length < best_length) {
      best_length = length;
      best = std::move(candidate);
    }
  };

  const auto descent = [&](CyclicSolution s) {
    return instance.kind == ProblemKind::Tsp ? tsp_local_search(instance, std::move(s))
                                             : cvrp_local_search(instance, std::move(s));
  };

  Rng init_rng(0);  // cheapest-insertion start is deterministic; rng unused there
  consider(descent(construct(instance, cheapest_insertion_policy,
                             SelectorKind::NearestEuclid, init_rng)));

  for (int r = 0; r < restart_budget; ++r) {
    if (instance.kind == ProblemKind::Tsp) {
      CyclicSolution start;
      start.order.resize(instance.num_nodes());
      std::iota(start.order.begin(), start.order.end(), 0);
      rng.shuffle(start.order);
      consider(descent(std::move(start)));
    } else {
      auto policy = [&rng](const InsertionState& s) {
        return random_position_policy(s, rng);
      };
      consider(descent(construct(instance, policy, SelectorKind::Random, rng)));
    }
  }
  return best;
}

}  // namespace insertnco
