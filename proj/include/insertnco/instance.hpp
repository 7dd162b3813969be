#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "insertnco/error.hpp"

namespace insertnco {

enum class ProblemKind { Tsp, Cvrp };

// A routing problem instance. For CVRP, node 0 is the depot and nodes
// 1..n are customers; demands[0] is always 0.
struct Instance {
  ProblemKind kind = ProblemKind::Tsp;
  std::string name;
  std::vector<Eigen::Vector2d> coords;
  std::vector<double> demands;  // CVRP only, aligned with coords
  double capacity = 0.0;        // CVRP only

  int num_nodes() const { return static_cast<int>(coords.size()); }
  int num_customers() const {
    return kind == ProblemKind::Cvrp ? num_nodes() - 1 : num_nodes();
  }
  bool is_cvrp() const { return kind == ProblemKind::Cvrp; }
  const Eigen::Vector2d& depot() const { return coords.front(); }

  // Throws Error on any violated invariant (size, depot demand, demand
  // exceeding capacity, non-finite coordinates).
  void validate() const;
};

// Customer node ids: all nodes for TSP, 1..n for CVRP.
std::vector<int> customer_ids(const Instance& instance);

// One closed tour (TSP: permutation of all nodes, cycle closed implicitly)
// or a depot-delimited route set (CVRP: customers with 0 as separator
// between routes; leading and trailing depot visits are implied).
struct CyclicSolution {
  std::vector<int> order;

  // CVRP: empty routes are dropped. TSP callers use `order` directly.
  static CyclicSolution from_routes(const std::vector<std::vector<int>>& routes);
  std::vector<std::vector<int>> routes() const;
};

// Throws Error{InvalidSolution} when the solution breaks the invariants for
// this instance (not a permutation / duplicated customer / capacity excess /
// empty or dangling route delimiters).
void validate_solution(const Instance& instance, const CyclicSolution& solution);
bool solution_is_valid(const Instance& instance, const CyclicSolution& solution);

// JSON Lines interchange, one instance per line:
//   {"kind":"tsp"|"cvrp","name":str,"coords":[[x,y],...],"demands":[...]?,"capacity":num?}
std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);

}  // namespace insertnco
