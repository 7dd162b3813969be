#pragma once

#include <algorithm>
#include <vector>

#include "insertnco/construct.hpp"
#include "insertnco/data.hpp"
#include "insertnco/instance.hpp"
#include "insertnco/rng.hpp"

namespace testutil {

inline insertnco::Instance square_tsp() {
  insertnco::Instance instance;
  instance.kind = insertnco::ProblemKind::Tsp;
  instance.name = "square";
  instance.coords = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  return instance;
}

inline insertnco::Instance random_tsp(int n, insertnco::Rng& rng) {
  return insertnco::gen_uniform_tsp(n, 1, rng)[0];
}

inline insertnco::Instance random_cvrp(int n, double capacity, insertnco::Rng& rng) {
  return insertnco::gen_uniform_cvrp(n, 1, capacity, rng)[0];
}

// Mid-construction state: `visited` nodes inserted by cheapest insertion,
// then one more node selected as current (awaiting insertion).
inline insertnco::InsertionState make_partial_state(const insertnco::Instance& instance,
                                                    int visited, insertnco::Rng& rng) {
  using namespace insertnco;
  InsertionState state = instance.kind == ProblemKind::Tsp
                             ? make_tsp_state(instance, 0)
                             : make_cvrp_state(instance);
  while (state.visited_count() < visited && !state.unvisited.empty()) {
    select_next_node(state, SelectorKind::NearestEuclid, rng);
    insert_current(state, cheapest_insertion_policy(state));
  }
  select_next_node(state, SelectorKind::NearestEuclid, rng);
  return state;
}

// True when the two node sequences describe the same cycle up to rotation
// and reflection.
inline bool same_cycle(std::vector<int> a, std::vector<int> b) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  if (n == 0) return true;
  for (int flip = 0; flip < 2; ++flip) {
    for (std::size_t shift = 0; shift < n; ++shift) {
      bool match = true;
      for (std::size_t i = 0; i < n && match; ++i) {
        if (a[i] != b[(shift + i) % n]) match = false;
      }
      if (match) return true;
    }
    std::reverse(b.begin(), b.end());
  }
  return false;
}

}  // namespace testutil
