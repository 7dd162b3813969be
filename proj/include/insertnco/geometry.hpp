#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "insertnco/instance.hpp"

namespace insertnco {

inline double euclid_distance(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a - b).norm();
}

inline double node_distance(const Instance& instance, int a, int b) {
  return euclid_distance(instance.coords[a], instance.coords[b]);
}

// Absolute polar-angle difference seen from the depot, folded to the shorter
// arc in [0, pi]. Throws Error{CoincidesWithDepot} when a or b sits exactly
// on the depot (the angle is undefined there).
double polar_angle_distance(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                            const Eigen::Vector2d& depot);

// Total Euclidean length including the closing edge(s); CVRP counts the
// depot legs of every route. Validates the solution first.
double solution_length(const Instance& instance, const CyclicSolution& solution);

// Same sum without validation, for hot loops that already hold a valid
// solution.
double tour_length(const Instance& instance, const CyclicSolution& solution);

// Per-axis affine map of the coordinates onto [0,1]. A degenerate axis
// (max == min) maps to 0.5. Demands and capacity are untouched.
Instance minmax_scale(const Instance& instance);

// The k candidates nearest to `query` under `metric`, ascending, ties broken
// by smaller node index; `query` itself is excluded. Returns fewer than k
// when the candidate set is smaller.
std::vector<int> k_nearest(int query, std::span<const int> candidates, int k,
                           const std::function<double(int, int)>& metric);

// capacity - total demand of the route's customers.
double remaining_capacity(const Instance& instance, const CyclicSolution& solution,
                          int route_index);

}  // namespace insertnco
