#include "insertnco/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace insertnco {

double polar_angle_distance(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                            const Eigen::Vector2d& depot) {
  if (a == depot || b == depot)
    throw Error(ErrorKind::CoincidesWithDepot,
                "polar angle undefined for a node on the depot");
  const double theta_a = std::atan2(a.y() - depot.y(), a.x() - depot.x());
  const double theta_b = std::atan2(b.y() - depot.y(), b.x() - depot.x());
  double diff = std::abs(theta_a - theta_b);
  if (diff > std::numbers::pi) diff = 2.0 * std::numbers::pi - diff;
  return diff;
}

double tour_length(const Instance& instance, const CyclicSolution& solution) {
  double total = 0.0;
  if (instance.kind == ProblemKind::Tsp) {
    const auto& order = solution.order;
    const std::size_t n = order.size();
    for (std::size_t i = 0; i < n; ++i) {
      total += node_distance(instance, order[i], order[(i + 1) % n]);
    }
  } else {
    // Implied leading/trailing depot: walk the flat order with depot 0 at
    // both ends; delimiters inside contribute the two legs of each boundary.
    int prev = 0;
    for (int node : solution.order) {
      total += node_distance(instance, prev, node);
      prev = node;
    }
    total += node_distance(instance, prev, 0);
  }
  return total;
}

double solution_length(const Instance& instance, const CyclicSolution& solution) {
  validate_solution(instance, solution);
  return tour_length(instance, solution);
}

Instance minmax_scale(const Instance& instance) {
  Instance out = instance;
  if (instance.coords.empty()) return out;
  Eigen::Vector2d lo = instance.coords.front();
  Eigen::Vector2d hi = instance.coords.front();
  for (const auto& c : instance.coords) {
    lo = lo.cwiseMin(c);
    hi = hi.cwiseMax(c);
  }
  const Eigen::Vector2d range = hi - lo;
  for (auto& c : out.coords) {
    for (int axis = 0; axis < 2; ++axis) {
      c[axis] = range[axis] > 0.0 ? (c[axis] - lo[axis]) / range[axis] : 0.5;
    }
  }
  return out;
}

std::vector<int> k_nearest(int query, std::span<const int> candidates, int k,
                           const std::function<double(int, int)>& metric) {
  std::vector<std::pair<double, int>> ranked;
  ranked.reserve(candidates.size());
  for (int c : candidates) {
    if (c == query) continue;
    ranked.emplace_back(metric(query, c), c);
  }
  std::sort(ranked.begin(), ranked.end());
  if (k < 0) k = 0;
  const std::size_t take = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(k));
  std::vector<int> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(ranked[i].second);
  return out;
}

double remaining_capacity(const Instance& instance, const CyclicSolution& solution,
                          int route_index) {
  const auto routes = solution.routes();
  if (route_index < 0 || route_index >= static_cast<int>(routes.size()))
    throw Error(ErrorKind::RouteIndexOutOfRange,
                "route index " + std::to_string(route_index) + " out of range");
  double demand = 0.0;
  for (int node : routes[route_index]) demand += instance.demands[node];
  return instance.capacity - demand;
}

}  // namespace insertnco
