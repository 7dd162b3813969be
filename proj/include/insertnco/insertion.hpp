#pragma once

#include <vector>

#include "insertnco/geometry.hpp"
#include "insertnco/instance.hpp"
#include "insertnco/rng.hpp"

namespace insertnco {

// A directed edge of the partial cyclic solution, identified by route and by
// the predecessor occurrence within it (depots repeat in CVRP, so node pairs
// would be ambiguous). `new_route` marks the CVRP depot-depot loop.
//
// TSP (route 0 holds the cycle order v[0..m-1]): edge e = (v[e], v[(e+1)%m]).
// CVRP (route r holds customers c[0..m-1]):      edge 0 = (depot, c[0]),
//   edge e = (c[e-1], c[e]) for 0 < e < m, edge m = (c[m-1], depot).
struct Position {
  int route = 0;
  int edge = 0;
  bool new_route = false;

  friend bool operator==(const Position& a, const Position& b) {
    if (a.new_route || b.new_route) return a.new_route == b.new_route;
    return a.route == b.route && a.edge == b.edge;
  }
};

enum class SelectorKind { NearestEuclid, NearestPolar, Random };

// Working state of one construction run. Visited nodes live in `routes`
// (TSP: single route = the partial cycle), the rest in `unvisited`, with
// `current_node` in neither set while awaiting insertion.
struct InsertionState {
  const Instance* instance = nullptr;
  std::vector<std::vector<int>> routes;
  std::vector<double> route_demand;  // CVRP, aligned with routes
  std::vector<char> is_unvisited;    // indexed by node id
  std::vector<int> unvisited;        // ascending node ids
  int last_node = -1;
  int current_node = -1;

  bool tsp() const { return instance->kind == ProblemKind::Tsp; }
  int visited_count() const;
  double route_remaining(int route) const {
    return instance->capacity - route_demand[route];
  }
};

InsertionState make_tsp_state(const Instance& instance, int start_node);
// Partial solution of Appendix-style CVRP construction: the depot plus its
// nearest customer, which also becomes the last node.
InsertionState make_cvrp_state(const Instance& instance);
// All nodes visited; used as the base for destruction.
InsertionState state_from_solution(const Instance& instance, const CyclicSolution& solution);
CyclicSolution to_solution(const InsertionState& state);

// Endpoints (pred, succ) of a position; depot index 0 for CVRP boundaries
// and the NewRoute loop.
std::pair<int, int> position_endpoints(const InsertionState& state, const Position& position);

// Every edge of the partial solution, route-ascending then edge-ascending,
// with NewRoute last (CVRP). No feasibility filter.
std::vector<Position> all_positions(const InsertionState& state);

// The feasible subset: TSP keeps every edge; CVRP keeps edges of routes with
// remaining capacity >= the current node's demand, plus NewRoute always.
std::vector<Position> valid_positions(const InsertionState& state);

// d(pred,node) + d(node,succ) - d(pred,succ); NewRoute costs 2*d(depot,node).
double insertion_delta(const InsertionState& state, const Position& position, int node);

// Picks per strategy, removes the node from `unvisited` and makes it the
// current node. NearestPolar ranks by polar angle to the last node around
// the depot and falls back to Euclidean distance for nodes sitting exactly
// on the depot.
int select_next_node(InsertionState& state, SelectorKind strategy, Rng& rng);

// Splices the current node into `position`; NewRoute opens a fresh route.
// Afterwards last_node = old current_node and current_node is cleared.
void insert_current(InsertionState& state, const Position& position);

// argmin of insertion_delta over valid_positions; ties go to the earlier
// position in enumeration order.
Position cheapest_insertion_policy(const InsertionState& state);
Position random_position_policy(const InsertionState& state, Rng& rng);

// Index of `target` within an enumerated position list, -1 if absent.
int position_index(const std::vector<Position>& positions, const Position& target);

}  // namespace insertnco
