#include "insertnco/insertion.hpp"

#include <algorithm>
#include <limits>

namespace insertnco {

int InsertionState::visited_count() const {
  int count = 0;
  for (const auto& route : routes) count += static_cast<int>(route.size());
  return count;
}

namespace {

InsertionState blank_state(const Instance& instance) {
  InsertionState state;
  state.instance = &instance;
  state.is_unvisited.assign(instance.num_nodes(), 0);
  return state;
}

void mark_unvisited(InsertionState& state, const std::vector<int>& nodes) {
  state.unvisited = nodes;
  std::sort(state.unvisited.begin(), state.unvisited.end());
  for (int node : state.unvisited) state.is_unvisited[node] = 1;
}

void remove_unvisited(InsertionState& state, int node) {
  auto it = std::lower_bound(state.unvisited.begin(), state.unvisited.end(), node);
  state.unvisited.erase(it);
  state.is_unvisited[node] = 0;
}

}  // namespace

InsertionState make_tsp_state(const Instance& instance, int start_node) {
  InsertionState state = blank_state(instance);
  std::vector<int> rest;
  for (int i = 0; i < instance.num_nodes(); ++i) {
    if (i != start_node) rest.push_back(i);
  }
  mark_unvisited(state, rest);
  state.routes.push_back({start_node});
  state.last_node = start_node;
  return state;
}

InsertionState make_cvrp_state(const Instance& instance) {
  InsertionState state = blank_state(instance);
  int nearest = -1;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i < instance.num_nodes(); ++i) {
    const double d = node_distance(instance, 0, i);
    if (d < best) {
      best = d;
      nearest = i;
    }
  }
  std::vector<int> rest;
  for (int i = 1; i < instance.num_nodes(); ++i) {
    if (i != nearest) rest.push_back(i);
  }
  mark_unvisited(state, rest);
  state.routes.push_back({nearest});
  state.route_demand.push_back(instance.demands[nearest]);
  state.last_node = nearest;
  return state;
}

InsertionState state_from_solution(const Instance& instance, const CyclicSolution& solution) {
  InsertionState state = blank_state(instance);
  if (instance.kind == ProblemKind::Tsp) {
    state.routes.push_back(solution.order);
  } else {
    state.routes = solution.routes();
    for (const auto& route : state.routes) {
      double demand = 0.0;
      for (int node : route) demand += instance.demands[node];
      state.route_demand.push_back(demand);
    }
  }
  return state;
}

CyclicSolution to_solution(const InsertionState& state) {
  if (state.tsp()) return CyclicSolution{state.routes.front()};
  return CyclicSolution::from_routes(state.routes);
}

std::pair<int, int> position_endpoints(const InsertionState& state, const Position& position) {
  if (position.new_route) return {0, 0};
  const auto& route = state.routes[position.route];
  if (state.tsp()) {
    const int m = static_cast<int>(route.size());
    return {route[position.edge], route[(position.edge + 1) % m]};
  }
  const int m = static_cast<int>(route.size());
  const int pred = position.edge == 0 ? 0 : route[position.edge - 1];
  const int succ = position.edge == m ? 0 : route[position.edge];
  return {pred, succ};
}

std::vector<Position> all_positions(const InsertionState& state) {
  std::vector<Position> out;
  if (state.tsp()) {
    const int m = static_cast<int>(state.routes.front().size());
    out.reserve(m);
    for (int e = 0; e < m; ++e) out.push_back({0, e, false});
    return out;
  }
  for (int r = 0; r < static_cast<int>(state.routes.size()); ++r) {
    const int m = static_cast<int>(state.routes[r].size());
    for (int e = 0; e <= m; ++e) out.push_back({r, e, false});
  }
  out.push_back({0, 0, true});
  return out;
}

std::vector<Position> valid_positions(const InsertionState& state) {
  if (state.current_node < 0)
    throw Error(ErrorKind::NoCurrentNode, "no current node selected");
  if (state.tsp()) return all_positions(state);
  const double demand = state.instance->demands[state.current_node];
  std::vector<Position> out;
  for (int r = 0; r < static_cast<int>(state.routes.size()); ++r) {
    if (state.route_remaining(r) + 1e-12 < demand) continue;
    const int m = static_cast<int>(state.routes[r].size());
    for (int e = 0; e <= m; ++e) out.push_back({r, e, false});
  }
  out.push_back({0, 0, true});
  return out;
}

double insertion_delta(const InsertionState& state, const Position& position, int node) {
  const Instance& instance = *state.instance;
  if (position.new_route) {
    if (state.tsp())
      throw Error(ErrorKind::InvalidPosition, "NewRoute position on a TSP state");
    return 2.0 * node_distance(instance, 0, node);
  }
  if (position.route < 0 || position.route >= static_cast<int>(state.routes.size()))
    throw Error(ErrorKind::InvalidPosition, "position route out of range");
  const int m = static_cast<int>(state.routes[position.route].size());
  const int max_edge = state.tsp() ? m - 1 : m;
  if (position.edge < 0 || position.edge > max_edge)
    throw Error(ErrorKind::InvalidPosition, "position edge out of range");
  const auto [pred, succ] = position_endpoints(state, position);
  return node_distance(instance, pred, node) + node_distance(instance, node, succ) -
         node_distance(instance, pred, succ);
}

int select_next_node(InsertionState& state, SelectorKind strategy, Rng& rng) {
  if (state.unvisited.empty())
    throw Error(ErrorKind::EmptyUnvisited, "no unvisited node left to select");
  const Instance& instance = *state.instance;
  int chosen = -1;
  switch (strategy) {
    case SelectorKind::Random:
      chosen = state.unvisited[rng.pick_index(state.unvisited.size())];
      break;
    case SelectorKind::NearestEuclid: {
      double best = std::numeric_limits<double>::infinity();
      for (int u : state.unvisited) {
        const double d = node_distance(instance, state.last_node, u);
        if (d < best) {
          best = d;
          chosen = u;
        }
      }
      break;
    }
    case SelectorKind::NearestPolar: {
      if (state.tsp())
        throw Error(ErrorKind::PolarOnTsp, "polar selection needs a depot (CVRP only)");
      const Eigen::Vector2d& depot = instance.depot();
      const Eigen::Vector2d& last = instance.coords[state.last_node];
      double best = std::numeric_limits<double>::infinity();
      for (int u : state.unvisited) {
        double key;
        const Eigen::Vector2d& cand = instance.coords[u];
        if (cand == depot || last == depot) {
          key = euclid_distance(cand, last);  // angle undefined, fall back
        } else {
          key = polar_angle_distance(cand, last, depot);
        }
        if (key < best) {
          best = key;
          chosen = u;
        }
      }
      break;
    }
  }
  remove_unvisited(state, chosen);
  state.current_node = chosen;
  return chosen;
}

void insert_current(InsertionState& state, const Position& position) {
  if (state.current_node < 0)
    throw Error(ErrorKind::NoCurrentNode, "insert requires a current node");
  const int node = state.current_node;
  const Instance& instance = *state.instance;
  if (position.new_route) {
    if (state.tsp())
      throw Error(ErrorKind::InvalidPosition, "NewRoute position on a TSP state");
    state.routes.push_back({node});
    state.route_demand.push_back(instance.demands[node]);
  } else {
    if (position.route < 0 || position.route >= static_cast<int>(state.routes.size()))
      throw Error(ErrorKind::InvalidPosition, "position route out of range");
    auto& route = state.routes[position.route];
    const int m = static_cast<int>(route.size());
    if (state.tsp()) {
      if (position.edge < 0 || position.edge >= m)
        throw Error(ErrorKind::InvalidPosition, "position edge out of range");
      route.insert(route.begin() + position.edge + 1, node);
    } else {
      if (position.edge < 0 || position.edge > m)
        throw Error(ErrorKind::InvalidPosition, "position edge out of range");
      const double demand = instance.demands[node];
      if (state.route_demand[position.route] + demand > instance.capacity + 1e-9)
        throw Error(ErrorKind::CapacityViolation,
                    "insertion would exceed capacity; feasibility mask is broken");
      route.insert(route.begin() + position.edge, node);
      state.route_demand[position.route] += demand;
    }
  }
  state.last_node = node;
  state.current_node = -1;
}

Position cheapest_insertion_policy(const InsertionState& state) {
  const auto positions = valid_positions(state);
  if (positions.empty())
    throw Error(ErrorKind::NoValidPosition, "no valid insertion position");
  Position best = positions.front();
  double best_delta = insertion_delta(state, best, state.current_node);
  for (std::size_t i = 1; i < positions.size(); ++i) {
    const double delta = insertion_delta(state, positions[i], state.current_node);
    if (delta < best_delta) {
      best_delta = delta;
      best = positions[i];
    }
  }
  return best;
}

Position random_position_policy(const InsertionState& state, Rng& rng) {
  const auto positions = valid_positions(state);
  if (positions.empty())
    throw Error(ErrorKind::NoValidPosition, "no valid insertion position");
  return positions[rng.pick_index(positions.size())];
}

int position_index(const std::vector<Position>& positions, const Position& target) {
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] == target) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace insertnco
