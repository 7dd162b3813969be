#pragma once

#include <functional>
#include <optional>

#include "insertnco/insertion.hpp"

namespace insertnco {

using PositionPolicy = std::function<Position(const InsertionState&)>;

struct ConstructOptions {
  // TSP start node; inference default is node 0 for reproducible benchmarks.
  std::optional<int> start_node;
  // Draw the TSP start node from the rng instead (training-style episodes).
  bool random_start = false;
};

// Insertion construction: init the partial solution (TSP: one node; CVRP:
// depot plus its nearest customer), then select -> policy -> insert until no
// unvisited node remains.
CyclicSolution construct(const Instance& instance, const PositionPolicy& policy,
                         SelectorKind selector, Rng& rng,
                         const ConstructOptions& options = {});

// Appending baseline: always extend the tail of the current route; CVRP
// opens a new route when the selected node does not fit.
CyclicSolution append_construct(const Instance& instance, SelectorKind selector, Rng& rng);

}  // namespace insertnco
