#pragma once

#include "insertnco/construct.hpp"

namespace insertnco {

enum class DestroyKind { Distance, Sequence };

struct DestroyResult {
  InsertionState partial;    // removed nodes are the unvisited set
  std::vector<int> removed;  // removal order: center first, then by distance
};

// Removes a random customer plus its alpha nearest customers (Euclidean);
// the remaining segments re-close into a reduced cycle / reduced routes with
// empty routes dropped. alpha is clamped so at least one customer stays.
DestroyResult distance_destroy(const Instance& instance, const CyclicSolution& solution,
                               int alpha, Rng& rng);

// Removes a contiguous run of alpha+1 customers (modular over the customer
// sequence in tour order) starting at a random index.
DestroyResult sequence_destroy(const Instance& instance, const CyclicSolution& solution,
                               int alpha, Rng& rng);

// Re-inserts the unvisited nodes: the last node starts rng-uniform over the
// partial solution's customers, then select -> policy -> insert as usual.
CyclicSolution repair(InsertionState state, const PositionPolicy& policy,
                      SelectorKind selector, Rng& rng);

struct ImproveOptions {
  int iterations = 0;
  int alpha = 300;
  DestroyKind destroy = DestroyKind::Distance;
};

// destroy -> repair -> accept-if-better loop; the incumbent never gets
// longer. Candidate acceptance uses strict < with 1e-9 slack to avoid
// cycling on float noise.
CyclicSolution improve(const Instance& instance, CyclicSolution init,
                       const PositionPolicy& policy, SelectorKind selector,
                       const ImproveOptions& options, Rng& rng);

}  // namespace insertnco
