#pragma once

#include <chrono>
#include <ostream>

#include "insertnco/construct.hpp"
#include "insertnco/model_grad.hpp"
#include "insertnco/parallel.hpp"

namespace insertnco {

struct LabeledExample {
  Instance instance;
  CyclicSolution label;
};

// The position whose endpoints are the current node's nearest visited
// neighbors along the label: walk both ways from the current node in the
// label cycle, skipping unvisited nodes; depots count as visited, and a
// depot on both sides means NewRoute. Throws Error{InconsistentPartial} when
// the two endpoints are not adjacent in the partial solution.
Position target_position(const CyclicSolution& label, const InsertionState& state);

// Runs one teacher-forced episode over the given (already scaled) instance:
// init the partial solution (TSP: rng start node; CVRP: depot + nearest
// customer), then select -> step(state, target) -> insert at the target, so
// the partial stays consistent with the label throughout.
template <typename StepFn>
void teacher_forced_episode(const Instance& instance, const CyclicSolution& label,
                            SelectorKind selector, Rng& rng, StepFn&& step) {
  InsertionState state =
      instance.kind == ProblemKind::Tsp
          ? make_tsp_state(instance, rng.pick_index(instance.num_nodes()))
          : make_cvrp_state(instance);
  while (!state.unvisited.empty()) {
    select_next_node(state, selector, rng);
    const Position target = target_position(label, state);
    step(const_cast<const InsertionState&>(state), target);
    insert_current(state, target);
  }
}

// -log p[target], with a 1e-12 floor inside the log.
template <typename S>
double loss(const ColVec<S>& p, int target_index) {
  return -std::log(std::max(static_cast<double>(p(target_index)), 1e-12));
}

template <typename S>
struct EpisodeRecord {
  CyclicSolution partial;  // snapshot before this insertion
  int current_node = -1;
  Position target;
  std::vector<Position> positions;
  ColVec<S> p;
};

// One record per insertion step of a teacher-forced episode. The instance is
// min-max scaled for the model (the neural pipeline computes everything in
// scaled space).
template <typename S>
std::vector<EpisodeRecord<S>> rollout_training_episode(const LabeledExample& example,
                                                       const ModelParams<S>& params,
                                                       const ModelConfig& config,
                                                       SelectorKind selector, Rng& rng) {
  const Instance scaled = minmax_scale(example.instance);
  const Matrix<S> h = encode(scaled, params);
  std::vector<EpisodeRecord<S>> records;
  teacher_forced_episode(scaled, example.label, selector, rng,
                         [&](const InsertionState& state, const Position& target) {
                           DecodeResult<S> out = decode_step(h, state, params, config);
                           EpisodeRecord<S> record;
                           record.partial = to_solution(state);
                           record.current_node = state.current_node;
                           record.target = target;
                           record.positions = std::move(out.positions);
                           record.p = std::move(out.p);
                           records.push_back(std::move(record));
                         });
  return records;
}

struct EpisodeStats {
  double loss_sum = 0.0;
  long steps = 0;
  long skipped = 0;  // target filtered out or masked (possible under small k)
};

// Forward + backward over one teacher-forced episode; gradients are
// accumulated unscaled into `grads` (the caller divides by the batch step
// count). When step_sample > 0, only that many randomly chosen steps
// contribute loss and gradient; every step still inserts at the target so
// the partial stays label-consistent.
template <typename S>
EpisodeStats episode_gradients(const LabeledExample& scaled_example,
                               const ModelParams<S>& params, const ModelConfig& config,
                               SelectorKind selector, Rng& rng, int step_sample,
                               ModelParams<S>& grads, Matrix<S>& d_embeddings_buffer) {
  const Instance& instance = scaled_example.instance;
  EncodeCache<S> encode_cache;
  const Matrix<S> h = encode(instance, params, &encode_cache);
  d_embeddings_buffer.setZero(h.rows(), h.cols());

  const int total_steps = instance.num_customers() - 1;
  std::vector<char> sampled(total_steps, 1);
  if (step_sample > 0 && step_sample < total_steps) {
    std::vector<int> indices(total_steps);
    std::iota(indices.begin(), indices.end(), 0);
    rng.shuffle(indices);
    sampled.assign(total_steps, 0);
    for (int i = 0; i < step_sample; ++i) sampled[indices[i]] = 1;
  }

  EpisodeStats stats;
  int step_index = 0;
  teacher_forced_episode(
      instance, scaled_example.label, selector, rng,
      [&](const InsertionState& state, const Position& target) {
        const bool wanted = sampled[step_index++];
        if (!wanted) return;
        DecodeCache<S> cache;
        const DecodeResult<S> out = decode_step(h, state, params, config, &cache);
        const int pi = position_index(out.positions, target);
        const int token = pi >= 0 ? out.token_of_position[pi] : -1;
        if (token < 0 || out.p(pi) <= S(0)) {
          ++stats.skipped;
          return;
        }
        stats.loss_sum += loss(out.p, pi);
        ++stats.steps;
        decode_step_backward(cache, h, token, params, grads, d_embeddings_buffer);
      });
  encode_backward(encode_cache, d_embeddings_buffer, params, grads);
  return stats;
}

struct TrainHyper {
  double lr0 = 1e-4;
  double lr_decay = 0.97;  // applied after each epoch
  int epochs = 1;
  int batch_episodes = 64;
  int step_sample = 0;  // 0 = every step of every episode
  SelectorKind selector = SelectorKind::NearestEuclid;
  int jobs = 1;
  std::uint64_t seed = 123;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
};

template <typename S>
struct TrainState {
  ModelParams<S> params;
  ModelParams<S> moment1, moment2;
  long step = 0;
  double lr = 0.0;
};

template <typename S>
void adam_step(TrainState<S>& state, ModelParams<S>& grads, double lr,
               const TrainHyper& hyper) {
  ++state.step;
  const double bc1 = 1.0 - std::pow(hyper.adam_beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(hyper.adam_beta2, static_cast<double>(state.step));
  const auto params = tensor_list(state.params);
  const auto m1 = tensor_list(state.moment1);
  const auto m2 = tensor_list(state.moment2);
  const auto g = tensor_list(grads);
  const S beta1 = static_cast<S>(hyper.adam_beta1);
  const S beta2 = static_cast<S>(hyper.adam_beta2);
  for (std::size_t i = 0; i < params.size(); ++i) {
    Matrix<S>& p = *params[i];
    Matrix<S>& m = *m1[i];
    Matrix<S>& v = *m2[i];
    const Matrix<S>& grad = *g[i];
    m = beta1 * m + (S(1) - beta1) * grad;
    v = beta2 * v + (S(1) - beta2) * grad.cwiseProduct(grad);
    p.array() -= static_cast<S>(lr) * (m.array() / static_cast<S>(bc1)) /
                 ((v.array() / static_cast<S>(bc2)).sqrt() + static_cast<S>(hyper.adam_eps));
  }
}

struct EpochLog {
  int epoch = 0;
  double mean_loss = 0.0;
  double lr = 0.0;
  double wall_seconds = 0.0;
};

// Adam over shuffled batches of teacher-forced episodes; the loss is
// averaged over the steps within each batch. Deterministic for a fixed seed
// and job count: episodes keep per-(epoch, example) rng streams and worker
// gradients are reduced in worker order.
template <typename S>
TrainState<S> train(const std::vector<LabeledExample>& dataset, const ModelConfig& config,
                    const TrainHyper& hyper, ModelParams<S> initial,
                    std::vector<EpochLog>* log = nullptr, std::ostream* csv = nullptr) {
  std::vector<const LabeledExample*> labeled;
  for (const auto& example : dataset) {
    if (!example.label.order.empty()) labeled.push_back(&example);
  }
  if (labeled.empty())
    throw Error(ErrorKind::EmptyDataset, "no labeled examples to train on");

  // Scale once; the model always works in min-max scaled space.
  std::vector<LabeledExample> scaled;
  scaled.reserve(labeled.size());
  for (const auto* example : labeled)
    scaled.push_back({minmax_scale(example->instance), example->label});

  TrainState<S> state;
  state.params = std::move(initial);
  state.moment1 = state.params;
  state.moment2 = state.params;
  set_zero(state.moment1);
  set_zero(state.moment2);
  state.lr = hyper.lr0;

  const int jobs = std::max(1, hyper.jobs);
  std::vector<ModelParams<S>> worker_grads(jobs, state.params);
  std::vector<Matrix<S>> worker_dh(jobs);
  ModelParams<S> batch_grads = state.params;

  if (csv) *csv << "epoch,mean_loss,lr,wall_seconds\n";
  const long n = static_cast<long>(scaled.size());
  for (int epoch = 1; epoch <= hyper.epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<long> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle_rng = derive_rng(hyper.seed, 0x5u * epoch);
    shuffle_rng.shuffle(order);

    double epoch_loss = 0.0;
    long epoch_steps = 0;
    for (long begin = 0; begin < n; begin += hyper.batch_episodes) {
      const long end = std::min(n, begin + hyper.batch_episodes);
      for (int w = 0; w < jobs; ++w) set_zero(worker_grads[w]);
      std::vector<EpisodeStats> stats(end - begin);
      parallel_for_workers(jobs, end - begin, [&](int worker, long i) {
        const long example_index = order[begin + i];
        Rng episode_rng = derive_rng(
            hyper.seed, static_cast<std::uint64_t>(epoch) * n + example_index);
        stats[i] = episode_gradients(scaled[example_index], state.params, config,
                                     hyper.selector, episode_rng, hyper.step_sample,
                                     worker_grads[worker], worker_dh[worker]);
      });
      long batch_steps = 0;
      for (const auto& s : stats) {
        batch_steps += s.steps;
        epoch_loss += s.loss_sum;
      }
      epoch_steps += batch_steps;
      if (batch_steps == 0) continue;
      set_zero(batch_grads);
      const auto into = tensor_list(batch_grads);
      for (int w = 0; w < jobs; ++w) {
        const auto from = tensor_list(worker_grads[w]);
        for (std::size_t t = 0; t < into.size(); ++t) *into[t] += *from[t];
      }
      const S inv = static_cast<S>(1.0 / static_cast<double>(batch_steps));
      for (auto* t : into) *t *= inv;
      adam_step(state, batch_grads, state.lr, hyper);
    }

    state.lr *= hyper.lr_decay;
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const EpochLog entry{epoch, epoch_steps > 0 ? epoch_loss / epoch_steps : 0.0,
                         state.lr / hyper.lr_decay, wall};
    if (log) log->push_back(entry);
    if (csv)
      *csv << entry.epoch << ',' << entry.mean_loss << ',' << entry.lr << ','
           << entry.wall_seconds << '\n'
           << std::flush;
  }
  return state;
}

template <typename S>
TrainState<S> train(const std::vector<LabeledExample>& dataset, const ModelConfig& config,
                    const TrainHyper& hyper, Rng& rng,
                    std::vector<EpochLog>* log = nullptr, std::ostream* csv = nullptr) {
  return train(dataset, config, hyper, init_params<S>(config, rng), log, csv);
}

// Mean teacher-forced loss over a fixed validation set; per-example rng
// streams derive from `seed`, so repeated evaluations see identical episode
// states.
template <typename S>
double mean_validation_loss(const std::vector<LabeledExample>& examples,
                            const ModelParams<S>& params, const ModelConfig& config,
                            SelectorKind selector, std::uint64_t seed, int jobs) {
  if (examples.empty()) throw Error(ErrorKind::EmptyDataset, "empty validation set");
  const int workers = std::max(1, jobs);
  std::vector<double> loss_sum(workers, 0.0);
  std::vector<long> steps(workers, 0);
  parallel_for_workers(workers, static_cast<long>(examples.size()), [&](int w, long i) {
    const Instance scaled = minmax_scale(examples[i].instance);
    const Matrix<S> h = encode(scaled, params);
    Rng episode_rng = derive_rng(seed, static_cast<std::uint64_t>(i));
    teacher_forced_episode(scaled, examples[i].label, selector, episode_rng,
                           [&](const InsertionState& state, const Position& target) {
                             const DecodeResult<S> out =
                                 decode_step(h, state, params, config);
                             const int pi = position_index(out.positions, target);
                             if (pi < 0 || out.token_of_position[pi] < 0) return;
                             loss_sum[w] += loss(out.p, pi);
                             ++steps[w];
                           });
  });
  double total = 0.0;
  long count = 0;
  for (int w = 0; w < workers; ++w) {
    total += loss_sum[w];
    count += steps[w];
  }
  return count > 0 ? total / count : 0.0;
}

}  // namespace insertnco
