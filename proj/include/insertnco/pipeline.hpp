#pragma once

#include "insertnco/model.hpp"
#include "insertnco/reconstruct.hpp"

namespace insertnco {

// The node-selection rule the models are trained with: nearest Euclidean
// neighbor for TSP, nearest polar angle for CVRP.
inline SelectorKind default_selector(const Instance& instance) {
  return instance.is_cvrp() ? SelectorKind::NearestPolar : SelectorKind::NearestEuclid;
}

// Greedy/sampled neural construction. The instance is min-max scaled and the
// entire run (selector distances, neighbor filtering, insertion deltas)
// happens in scaled space; the returned node order is valid for the
// original coordinates.
template <typename S>
CyclicSolution neural_construct(const Instance& instance, const ModelParams<S>& params,
                                const ModelConfig& config, DecodeMode mode,
                                SelectorKind selector, Rng& rng,
                                const ConstructOptions& options = {}) {
  const Instance scaled = minmax_scale(instance);
  const Matrix<S> h = encode(scaled, params);
  const PositionPolicy policy = [&](const InsertionState& state) {
    return neural_policy(state, h, params, config, mode, rng);
  };
  return construct(scaled, policy, selector, rng, options);
}

// Local reconstruction with the neural repair policy, in scaled space: the
// incumbent comparison uses scaled lengths (report lengths against the
// original instance).
template <typename S>
CyclicSolution neural_improve(const Instance& instance, CyclicSolution init,
                              const ModelParams<S>& params, const ModelConfig& config,
                              DecodeMode mode, SelectorKind selector,
                              const ImproveOptions& options, Rng& rng) {
  const Instance scaled = minmax_scale(instance);
  const Matrix<S> h = encode(scaled, params);
  const PositionPolicy policy = [&](const InsertionState& state) {
    return neural_policy(state, h, params, config, mode, rng);
  };
  return improve(scaled, std::move(init), policy, selector, options, rng);
}

}  // namespace insertnco
