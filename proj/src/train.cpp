#include "insertnco/train.hpp"

namespace insertnco {

namespace {

// (route, slot) of a customer in the partial solution, or (-1,-1).
std::pair<int, int> locate(const InsertionState& state, int node) {
  for (int r = 0; r < static_cast<int>(state.routes.size()); ++r) {
    const auto& route = state.routes[r];
    for (int s = 0; s < static_cast<int>(route.size()); ++s) {
      if (route[s] == node) return {r, s};
    }
  }
  return {-1, -1};
}

[[noreturn]] void inconsistent(int pred, int succ) {
  throw Error(ErrorKind::InconsistentPartial,
              "label neighbors (" + std::to_string(pred) + ", " + std::to_string(succ) +
                  ") are not adjacent in the partial solution");
}

Position tsp_target(const CyclicSolution& label, const InsertionState& state) {
  const auto& seq = label.order;
  const int n = static_cast<int>(seq.size());
  int at = -1;
  for (int i = 0; i < n; ++i) {
    if (seq[i] == state.current_node) at = i;
  }
  if (at < 0)
    throw Error(ErrorKind::InconsistentPartial, "current node missing from the label");
  auto visited = [&](int node) {
    return !state.is_unvisited[node] && node != state.current_node;
  };
  int left = at, right = at;
  for (int guard = 0; guard <= n; ++guard) {
    left = (left + n - 1) % n;
    if (visited(seq[left])) break;
  }
  for (int guard = 0; guard <= n; ++guard) {
    right = (right + 1) % n;
    if (visited(seq[right])) break;
  }
  const int pred = seq[left];
  const int succ = seq[right];

  // The partial cycle's orientation may be the mirror of the label's (a
  // 2-node partial fixes it arbitrarily), so probe both directions.
  const auto& order = state.routes.front();
  const int m = static_cast<int>(order.size());
  if (m == 1) {
    if (pred != order[0] || succ != order[0]) inconsistent(pred, succ);
    return {0, 0, false};
  }
  const int slot_pred = locate(state, pred).second;
  const int slot_succ = locate(state, succ).second;
  if (slot_pred < 0 || slot_succ < 0) inconsistent(pred, succ);
  if (order[(slot_pred + 1) % m] == succ) return {0, slot_pred, false};
  if (order[(slot_succ + 1) % m] == pred) return {0, slot_succ, false};
  inconsistent(pred, succ);
}

Position cvrp_target(const CyclicSolution& label, const InsertionState& state) {
  // Explicit leading depot so route boundaries stop the walk; the cyclic
  // wrap from the last customer lands on it.
  std::vector<int> seq;
  seq.reserve(label.order.size() + 1);
  seq.push_back(0);
  seq.insert(seq.end(), label.order.begin(), label.order.end());
  const int n = static_cast<int>(seq.size());
  int at = -1;
  for (int i = 0; i < n; ++i) {
    if (seq[i] == state.current_node) at = i;
  }
  if (at < 0)
    throw Error(ErrorKind::InconsistentPartial, "current node missing from the label");
  auto visited = [&](int node) {
    return node == 0 || (!state.is_unvisited[node] && node != state.current_node);
  };
  int left = at, right = at;
  for (int guard = 0; guard <= n; ++guard) {
    left = (left + n - 1) % n;
    if (visited(seq[left])) break;
  }
  for (int guard = 0; guard <= n; ++guard) {
    right = (right + 1) % n;
    if (visited(seq[right])) break;
  }
  const int pred = seq[left];
  const int succ = seq[right];

  if (pred == 0 && succ == 0) return {0, 0, true};
  if (pred != 0 && succ != 0) {
    const auto [rp, sp] = locate(state, pred);
    const auto [rs, ss] = locate(state, succ);
    if (rp < 0 || rs < 0) inconsistent(pred, succ);
    if (rp == rs && ss == sp + 1) return {rp, sp + 1, false};
    if (rp == rs && sp == ss + 1) return {rp, ss + 1, false};
    inconsistent(pred, succ);
  }
  if (pred != 0) {  // (customer, depot): the closing edge of pred's route
    const auto [r, s] = locate(state, pred);
    if (r < 0) inconsistent(pred, succ);
    if (s == static_cast<int>(state.routes[r].size()) - 1)
      return {r, s + 1, false};
    if (s == 0) return {r, 0, false};  // mirrored route
    inconsistent(pred, succ);
  }
  // (depot, customer): the opening edge of succ's route.
  const auto [r, s] = locate(state, succ);
  if (r < 0) inconsistent(pred, succ);
  if (s == 0) return {r, 0, false};
  if (s == static_cast<int>(state.routes[r].size()) - 1)
    return {r, s + 1, false};  // mirrored route
  inconsistent(pred, succ);
}

}  // namespace

Position target_position(const CyclicSolution& label, const InsertionState& state) {
  if (state.current_node < 0)
    throw Error(ErrorKind::NoCurrentNode, "target_position needs a current node");
  return state.tsp() ? tsp_target(label, state) : cvrp_target(label, state);
}

}  // namespace insertnco
