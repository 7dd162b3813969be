#include "insertnco/construct.hpp"

namespace insertnco {

CyclicSolution construct(const Instance& instance, const PositionPolicy& policy,
                         SelectorKind selector, Rng& rng, const ConstructOptions& options) {
  instance.validate();
  InsertionState state;
  if (instance.kind == ProblemKind::Tsp) {
    const int start = options.random_start ? rng.pick_index(instance.num_nodes())
                                           : options.start_node.value_or(0);
    state = make_tsp_state(instance, start);
  } else {
    state = make_cvrp_state(instance);
  }
  while (!state.unvisited.empty()) {
    select_next_node(state, selector, rng);
    insert_current(state, policy(state));
  }
  return to_solution(state);
}

CyclicSolution append_construct(const Instance& instance, SelectorKind selector, Rng& rng) {
  instance.validate();
  InsertionState state = instance.kind == ProblemKind::Tsp
                             ? make_tsp_state(instance, 0)
                             : make_cvrp_state(instance);
  while (!state.unvisited.empty()) {
    select_next_node(state, selector, rng);
    const int tail_route = static_cast<int>(state.routes.size()) - 1;
    if (state.tsp()) {
      // The wraparound edge (tail, head) is the appending slot of a cycle.
      insert_current(state, {0, static_cast<int>(state.routes[0].size()) - 1, false});
    } else {
      const double demand = instance.demands[state.current_node];
      if (state.route_remaining(tail_route) >= demand) {
        insert_current(state,
                       {tail_route, static_cast<int>(state.routes[tail_route].size()), false});
      } else {
        insert_current(state, {0, 0, true});
      }
    }
  }
  return to_solution(state);
}

}  // namespace insertnco
