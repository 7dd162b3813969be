#include "insertnco/reconstruct.hpp"

#include <algorithm>

namespace insertnco {

namespace {

int clamped_alpha(const Instance& instance, int alpha) {
  // Keep at least one customer in the partial solution: removed = alpha + 1.
  const int n = instance.num_customers();
  return std::clamp(alpha, 0, n - 2);
}

DestroyResult build_partial(const Instance& instance, const CyclicSolution& solution,
                            std::vector<int> removed) {
  std::vector<char> gone(instance.num_nodes(), 0);
  for (int node : removed) gone[node] = 1;

  DestroyResult out;
  out.removed = std::move(removed);
  InsertionState& state = out.partial;
  state.instance = &instance;
  state.is_unvisited.assign(instance.num_nodes(), 0);
  if (instance.kind == ProblemKind::Tsp) {
    std::vector<int> kept;
    for (int node : solution.order) {
      if (!gone[node]) kept.push_back(node);
    }
    state.routes.push_back(std::move(kept));
  } else {
    for (const auto& route : solution.routes()) {
      std::vector<int> kept;
      double demand = 0.0;
      for (int node : route) {
        if (gone[node]) continue;
        kept.push_back(node);
        demand += instance.demands[node];
      }
      if (kept.empty()) continue;  // empty routes vanish; NewRoute can reopen them
      state.routes.push_back(std::move(kept));
      state.route_demand.push_back(demand);
    }
  }
  state.unvisited = out.removed;
  std::sort(state.unvisited.begin(), state.unvisited.end());
  for (int node : state.unvisited) state.is_unvisited[node] = 1;
  return out;
}

}  // namespace

DestroyResult distance_destroy(const Instance& instance, const CyclicSolution& solution,
                               int alpha, Rng& rng) {
  const int alpha_eff = clamped_alpha(instance, alpha);
  const std::vector<int> customers = customer_ids(instance);
  const int center = customers[rng.pick_index(customers.size())];
  auto metric = [&](int a, int b) { return node_distance(instance, a, b); };
  std::vector<int> removed = {center};
  for (int node : k_nearest(center, customers, alpha_eff, metric)) removed.push_back(node);
  return build_partial(instance, solution, std::move(removed));
}

DestroyResult sequence_destroy(const Instance& instance, const CyclicSolution& solution,
                               int alpha, Rng& rng) {
  const int alpha_eff = clamped_alpha(instance, alpha);
  std::vector<int> sequence;  // customers in tour order, depots skipped
  for (int node : solution.order) {
    if (instance.kind == ProblemKind::Tsp || node != 0) sequence.push_back(node);
  }
  const int n = static_cast<int>(sequence.size());
  const int start = rng.pick_index(sequence.size());
  std::vector<int> removed;
  removed.reserve(alpha_eff + 1);
  for (int i = 0; i <= alpha_eff; ++i) removed.push_back(sequence[(start + i) % n]);
  return build_partial(instance, solution, std::move(removed));
}

CyclicSolution repair(InsertionState state, const PositionPolicy& policy,
                      SelectorKind selector, Rng& rng) {
  if (state.unvisited.empty()) return to_solution(state);
  std::vector<int> present;
  for (const auto& route : state.routes)
    present.insert(present.end(), route.begin(), route.end());
  std::sort(present.begin(), present.end());
  state.last_node = present[rng.pick_index(present.size())];
  while (!state.unvisited.empty()) {
    select_next_node(state, selector, rng);
    insert_current(state, policy(state));
  }
  return to_solution(state);
}

CyclicSolution improve(const Instance& instance, CyclicSolution init,
                       const PositionPolicy& policy, SelectorKind selector,
                       const ImproveOptions& options, Rng& rng) {
  CyclicSolution incumbent = std::move(init);
  double incumbent_length = tour_length(instance, incumbent);
  for (int i = 0; i < options.iterations; ++i) {
    DestroyResult destroyed =
        options.destroy == DestroyKind::Distance
            ? distance_destroy(instance, incumbent, options.alpha, rng)
            : sequence_destroy(instance, incumbent, options.alpha, rng);
    CyclicSolution candidate = repair(std::move(destroyed.partial), policy, selector, rng);
    const double candidate_length = tour_length(instance, candidate);
    if (candidate_length < incumbent_length - 1e-9) {
      incumbent = std::move(candidate);
      incumbent_length = candidate_length;
    }
  }
  return incumbent;
}

}  // namespace insertnco
