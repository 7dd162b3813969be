#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "insertnco/insertion.hpp"

namespace insertnco {

template <typename S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using RowVec = Eigen::Matrix<S, 1, Eigen::Dynamic>;
template <typename S>
using ColVec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

struct ModelConfig {
  int embed_dim = 128;
  int decoder_layers = 9;
  int num_heads = 8;
  int ff_dim = 512;
  int input_dim = 2;  // 2 for TSP, 3 for CVRP (x, y, demand/capacity)
  bool include_unvisited = true;
  std::optional<int> k_filter;  // token neighborhood size; nullopt = keep all

  int head_dim() const { return embed_dim / num_heads; }

  void validate() const {
    if (embed_dim <= 0 || num_heads <= 0 || embed_dim % num_heads != 0)
      throw Error(ErrorKind::ShapeMismatch, "embed_dim must be divisible by num_heads");
    if (decoder_layers < 1)
      throw Error(ErrorKind::ShapeMismatch, "at least one decoder layer required");
    if (input_dim != 2 && input_dim != 3)
      throw Error(ErrorKind::ShapeMismatch, "input_dim must be 2 or 3");
  }
};

// Residual attention block without normalization. W_Q/W_K/W_V hold all heads
// side by side: head h owns columns [h*head_dim, (h+1)*head_dim).
template <typename S>
struct AttentionLayerParams {
  Matrix<S> wq, wk, wv, wo;          // embed_dim x embed_dim
  Matrix<S> w_ff1, b_ff1;            // embed_dim x ff_dim, 1 x ff_dim
  Matrix<S> w_ff2, b_ff2;            // ff_dim x embed_dim, 1 x embed_dim
};

template <typename S>
struct ModelParams {
  ModelConfig config;
  Matrix<S> w_in, b_in;              // input_dim x d, 1 x d
  AttentionLayerParams<S> encoder;
  Matrix<S> w_current, w_unvisited;  // d x d
  Matrix<S> w_position;              // 2d x d (TSP) or (2d+1) x d (CVRP)
  std::vector<AttentionLayerParams<S>> decoder;
  Matrix<S> w_out, b_out;            // d x 1, 1 x 1
};

// Visits every tensor in a fixed order (serialization and optimizer order).
template <typename S, typename F>
void visit_params(ModelParams<S>& p, F&& f) {
  f("w_in", p.w_in);
  f("b_in", p.b_in);
  auto layer = [&](const std::string& prefix, AttentionLayerParams<S>& l) {
    f(prefix + ".wq", l.wq);
    f(prefix + ".wk", l.wk);
    f(prefix + ".wv", l.wv);
    f(prefix + ".wo", l.wo);
    f(prefix + ".w_ff1", l.w_ff1);
    f(prefix + ".b_ff1", l.b_ff1);
    f(prefix + ".w_ff2", l.w_ff2);
    f(prefix + ".b_ff2", l.b_ff2);
  };
  layer("enc", p.encoder);
  f("w_current", p.w_current);
  f("w_unvisited", p.w_unvisited);
  f("w_position", p.w_position);
  for (std::size_t i = 0; i < p.decoder.size(); ++i)
    layer("dec." + std::to_string(i), p.decoder[i]);
  f("w_out", p.w_out);
  f("b_out", p.b_out);
}

template <typename S, typename F>
void visit_params(const ModelParams<S>& p, F&& f) {
  visit_params(const_cast<ModelParams<S>&>(p),
               [&](const std::string& name, Matrix<S>& t) {
                 f(name, static_cast<const Matrix<S>&>(t));
               });
}

template <typename S>
std::vector<Matrix<S>*> tensor_list(ModelParams<S>& p) {
  std::vector<Matrix<S>*> out;
  visit_params(p, [&](const std::string&, Matrix<S>& t) { out.push_back(&t); });
  return out;
}

template <typename S>
void set_zero(ModelParams<S>& p) {
  visit_params(p, [](const std::string&, Matrix<S>& t) { t.setZero(); });
}

template <typename S>
long param_count(const ModelParams<S>& p) {
  long count = 0;
  visit_params(p, [&](const std::string&, const Matrix<S>& t) { count += t.size(); });
  return count;
}

// Weights uniform in (-1/sqrt(d), 1/sqrt(d)), biases zero. Entries are
// drawn row by row so the stream is layout-independent.
template <typename S>
ModelParams<S> init_params(const ModelConfig& config, Rng& rng) {
  config.validate();
  const int d = config.embed_dim;
  ModelParams<S> p;
  p.config = config;
  auto shape = [&](Matrix<S>& t, int rows, int cols) { t.setZero(rows, cols); };
  shape(p.w_in, config.input_dim, d);
  shape(p.b_in, 1, d);
  auto shape_layer = [&](AttentionLayerParams<S>& l) {
    shape(l.wq, d, d);
    shape(l.wk, d, d);
    shape(l.wv, d, d);
    shape(l.wo, d, d);
    shape(l.w_ff1, d, config.ff_dim);
    shape(l.b_ff1, 1, config.ff_dim);
    shape(l.w_ff2, config.ff_dim, d);
    shape(l.b_ff2, 1, d);
  };
  shape_layer(p.encoder);
  shape(p.w_current, d, d);
  shape(p.w_unvisited, d, d);
  shape(p.w_position, 2 * d + (config.input_dim == 3 ? 1 : 0), d);
  p.decoder.resize(config.decoder_layers);
  for (auto& l : p.decoder) shape_layer(l);
  shape(p.w_out, d, 1);
  shape(p.b_out, 1, 1);

  const double bound = 1.0 / std::sqrt(static_cast<double>(d));
  visit_params(p, [&](const std::string& name, Matrix<S>& t) {
    if (name.size() >= 2 && (name[0] == 'b' || name.find(".b_") != std::string::npos))
      return;  // biases stay zero
    for (Eigen::Index r = 0; r < t.rows(); ++r)
      for (Eigen::Index c = 0; c < t.cols(); ++c)
        t(r, c) = static_cast<S>((2.0 * rng.uniform01() - 1.0) * bound);
  });
  return p;
}

// Row softmax with the exp/sum evaluated in double regardless of S.
template <typename S>
void softmax_rows(Matrix<S>& scores) {
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    Eigen::RowVectorXd row = scores.row(r).template cast<double>();
    const double mx = row.maxCoeff();
    row = (row.array() - mx).exp();
    row /= row.sum();
    scores.row(r) = row.template cast<S>();
  }
}

template <typename S>
struct AttentionLayerCache {
  Matrix<S> input;
  Matrix<S> q, k, v;                // m x d, heads side by side
  std::vector<Matrix<S>> attn;      // per head, m x m after softmax
  Matrix<S> heads_concat;           // m x d
  Matrix<S> after_mha;              // residual sum MHA(x) + x
  Matrix<S> ff_pre;                 // m x ff_dim before the ReLU
};

// x_hat = MHA(x) + x; out = FF(x_hat) + x_hat. No normalization.
template <typename S>
Matrix<S> attention_layer(const Matrix<S>& x, const AttentionLayerParams<S>& w,
                          int num_heads, AttentionLayerCache<S>* cache = nullptr) {
  const Eigen::Index m = x.rows();
  const Eigen::Index d = x.cols();
  if (w.wq.rows() != d)
    throw Error(ErrorKind::ShapeMismatch, "attention input width mismatch");
  const Eigen::Index dk = d / num_heads;
  const S scale = static_cast<S>(1.0 / std::sqrt(static_cast<double>(dk)));

  Matrix<S> q = x * w.wq;
  Matrix<S> k = x * w.wk;
  Matrix<S> v = x * w.wv;
  Matrix<S> concat(m, d);
  std::vector<Matrix<S>> attn(cache ? num_heads : 0);
  for (int h = 0; h < num_heads; ++h) {
    Matrix<S> scores = q.middleCols(h * dk, dk) * k.middleCols(h * dk, dk).transpose();
    scores *= scale;
    softmax_rows(scores);
    concat.middleCols(h * dk, dk).noalias() = scores * v.middleCols(h * dk, dk);
    if (cache) attn[h] = std::move(scores);
  }
  Matrix<S> after_mha = concat * w.wo + x;
  Matrix<S> ff_pre = (after_mha * w.w_ff1).rowwise() + w.b_ff1.row(0);
  Matrix<S> out =
      (ff_pre.cwiseMax(S(0)) * w.w_ff2 + after_mha).rowwise() + w.b_ff2.row(0);
  if (cache) {
    cache->input = x;
    cache->q = std::move(q);
    cache->k = std::move(k);
    cache->v = std::move(v);
    cache->attn = std::move(attn);
    cache->heads_concat = std::move(concat);
    cache->after_mha = std::move(after_mha);
    cache->ff_pre = std::move(ff_pre);
  }
  return out;
}

// Node features of a (scaled) instance: coordinates, plus demand/capacity
// for CVRP.
template <typename S>
Matrix<S> node_features(const Instance& instance, const ModelConfig& config) {
  const int n = instance.num_nodes();
  const bool cvrp = instance.is_cvrp();
  if ((cvrp && config.input_dim != 3) || (!cvrp && config.input_dim != 2))
    throw Error(ErrorKind::ShapeMismatch, "input_dim does not match the problem kind");
  Matrix<S> f(n, config.input_dim);
  for (int i = 0; i < n; ++i) {
    f(i, 0) = static_cast<S>(instance.coords[i].x());
    f(i, 1) = static_cast<S>(instance.coords[i].y());
    if (cvrp) f(i, 2) = static_cast<S>(instance.demands[i] / instance.capacity);
  }
  return f;
}

template <typename S>
struct EncodeCache {
  Matrix<S> features;
  Matrix<S> h0;
  AttentionLayerCache<S> layer;
};

// Linear projection followed by one attention layer.
template <typename S>
Matrix<S> encode(const Instance& instance, const ModelParams<S>& params,
                 EncodeCache<S>* cache = nullptr) {
  Matrix<S> features = node_features<S>(instance, params.config);
  Matrix<S> h0 = (features * params.w_in).rowwise() + params.b_in.row(0);
  Matrix<S> h = attention_layer(h0, params.encoder, params.config.num_heads,
                                cache ? &cache->layer : nullptr);
  if (cache) {
    cache->features = std::move(features);
    cache->h0 = std::move(h0);
  }
  return h;
}

// Raw (pre-projection) position embedding: concat of the endpoint
// embeddings, plus the route's remaining capacity / capacity for CVRP
// (NewRoute carries 1).
template <typename S>
RowVec<S> position_raw(const Matrix<S>& embeddings, const InsertionState& state,
                       const Position& position) {
  const Eigen::Index d = embeddings.cols();
  const bool cvrp = !state.tsp();
  RowVec<S> raw(2 * d + (cvrp ? 1 : 0));
  const auto [pred, succ] = position_endpoints(state, position);
  raw.segment(0, d) = embeddings.row(pred);
  raw.segment(d, d) = embeddings.row(succ);
  if (cvrp) {
    const double remaining = position.new_route
                                 ? state.instance->capacity
                                 : state.route_remaining(position.route);
    raw(2 * d) = static_cast<S>(remaining / state.instance->capacity);
  }
  return raw;
}

template <typename S>
struct DecodeCache {
  int current = -1;
  std::vector<Position> positions;       // full enumeration, NewRoute last
  std::vector<int> token_of_position;    // -1 when filtered out
  std::vector<int> unvisited_tokens;     // node id per unvisited token
  // Per kept-position token, in token order: endpoint node ids and the
  // normalized remaining capacity (CVRP); enough to rebuild the raw inputs
  // in the backward pass after the state has moved on.
  std::vector<std::pair<int, int>> pos_endpoints;
  std::vector<S> pos_capacity;
  Matrix<S> x0;
  std::vector<AttentionLayerCache<S>> layers;
  Matrix<S> x_final;
  std::vector<char> masked;              // per token
  Eigen::VectorXd p_tokens;              // probabilities per token
};

template <typename S>
struct DecodeResult {
  std::vector<Position> positions;       // full enumeration, NewRoute last
  std::vector<int> token_of_position;    // -1 when filtered out
  ColVec<S> p;                           // per position; 0 when masked/filtered
};

// One decoder evaluation: token set [current, positions..., unvisited...],
// L attention layers, scalar head, masked softmax over position tokens.
// Capacity-infeasible positions get probability 0; with k-filtering only the
// k nearest unvisited nodes and k nearest positions become tokens (the CVRP
// NewRoute token is always kept as the feasibility escape).
template <typename S>
DecodeResult<S> decode_step(const Matrix<S>& embeddings, const InsertionState& state,
                            const ModelParams<S>& params, const ModelConfig& config,
                            DecodeCache<S>* cache = nullptr) {
  if (state.current_node < 0)
    throw Error(ErrorKind::NoCurrentNode, "decode_step needs a current node");
  const Instance& instance = *state.instance;
  const int current = state.current_node;
  const std::vector<Position> positions = all_positions(state);
  if (positions.empty())
    throw Error(ErrorKind::NoValidPosition, "empty partial solution");

  // Position-to-node distance: nearest of the two adjacent visited nodes.
  auto position_distance = [&](const Position& pos) {
    const auto [pred, succ] = position_endpoints(state, pos);
    return std::min(node_distance(instance, current, pred),
                    node_distance(instance, current, succ));
  };

  std::vector<int> kept_positions(positions.size());
  std::iota(kept_positions.begin(), kept_positions.end(), 0);
  std::vector<int> kept_unvisited =
      config.include_unvisited ? state.unvisited : std::vector<int>{};
  if (config.k_filter) {
    const int k = *config.k_filter;
    if (static_cast<int>(positions.size()) > k) {
      std::vector<std::pair<double, int>> ranked;
      ranked.reserve(positions.size());
      for (std::size_t i = 0; i < positions.size(); ++i)
        ranked.emplace_back(position_distance(positions[i]), static_cast<int>(i));
      std::sort(ranked.begin(), ranked.end(),
                [](const auto& a, const auto& b) {
                  return a.first < b.first || (a.first == b.first && a.second < b.second);
                });
      kept_positions.clear();
      for (int i = 0; i < k; ++i) kept_positions.push_back(ranked[i].second);
      const int new_route_index = static_cast<int>(positions.size()) - 1;
      if (!state.tsp() &&
          std::find(kept_positions.begin(), kept_positions.end(), new_route_index) ==
              kept_positions.end())
        kept_positions.push_back(new_route_index);
      std::sort(kept_positions.begin(), kept_positions.end());
    }
    if (static_cast<int>(kept_unvisited.size()) > k) {
      auto metric = [&](int a, int b) { return node_distance(instance, a, b); };
      kept_unvisited = k_nearest(current, kept_unvisited, k, metric);
      std::sort(kept_unvisited.begin(), kept_unvisited.end());
    }
  }

  const Eigen::Index d = params.config.embed_dim;
  const Eigen::Index m = 1 + kept_positions.size() + kept_unvisited.size();
  Matrix<S> x0(m, d);
  x0.row(0) = embeddings.row(current) * params.w_current;
  std::vector<int> token_of_position(positions.size(), -1);
  std::vector<std::pair<int, int>> pos_endpoints;
  std::vector<S> pos_capacity;
  pos_endpoints.reserve(kept_positions.size());
  Eigen::Index token = 1;
  for (int pi : kept_positions) {
    token_of_position[pi] = static_cast<int>(token);
    const RowVec<S> raw = position_raw(embeddings, state, positions[pi]);
    x0.row(token) = raw * params.w_position;
    pos_endpoints.push_back(position_endpoints(state, positions[pi]));
    if (!state.tsp()) pos_capacity.push_back(raw(2 * d));
    ++token;
  }
  for (int u : kept_unvisited) {
    x0.row(token) = embeddings.row(u) * params.w_unvisited;
    ++token;
  }

  std::vector<AttentionLayerCache<S>> layer_caches(cache ? params.decoder.size() : 0);
  Matrix<S> x = x0;
  for (std::size_t l = 0; l < params.decoder.size(); ++l) {
    x = attention_layer(x, params.decoder[l], params.config.num_heads,
                        cache ? &layer_caches[l] : nullptr);
  }

  // Masked softmax over the scalar head outputs (double accumulation).
  Eigen::VectorXd logits = (x * params.w_out).template cast<double>();
  logits.array() += static_cast<double>(params.b_out(0, 0));
  std::vector<char> masked(m, 1);
  const double current_demand = instance.is_cvrp() ? instance.demands[current] : 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const int t = token_of_position[i];
    if (t < 0) continue;
    const bool feasible =
        state.tsp() || positions[i].new_route ||
        state.route_remaining(positions[i].route) + 1e-12 >= current_demand;
    if (feasible) masked[t] = 0;
  }
  double mx = -std::numeric_limits<double>::infinity();
  for (Eigen::Index t = 0; t < m; ++t) {
    if (!masked[t]) mx = std::max(mx, logits(t));
  }
  if (!std::isfinite(mx))
    throw Error(ErrorKind::NoValidPosition, "every position is masked");
  Eigen::VectorXd p_tokens = Eigen::VectorXd::Zero(m);
  double total = 0.0;
  for (Eigen::Index t = 0; t < m; ++t) {
    if (masked[t]) continue;
    p_tokens(t) = std::exp(logits(t) - mx);
    total += p_tokens(t);
  }
  p_tokens /= total;

  DecodeResult<S> result;
  result.positions = positions;
  result.token_of_position = token_of_position;
  result.p.setZero(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const int t = token_of_position[i];
    if (t >= 0 && !masked[t]) result.p(i) = static_cast<S>(p_tokens(t));
  }
  if (cache) {
    cache->current = current;
    cache->positions = result.positions;
    cache->token_of_position = token_of_position;
    cache->unvisited_tokens = kept_unvisited;
    cache->pos_endpoints = std::move(pos_endpoints);
    cache->pos_capacity = std::move(pos_capacity);
    cache->x0 = std::move(x0);
    cache->layers = std::move(layer_caches);
    cache->x_final = std::move(x);
    cache->masked = std::move(masked);
    cache->p_tokens = std::move(p_tokens);
  }
  return result;
}

enum class DecodeMode { Argmax, Sample };

// Wraps decode_step: argmax takes the first maximal entry (lowest position
// index on ties); sample draws from the categorical distribution.
template <typename S>
Position neural_policy(const InsertionState& state, const Matrix<S>& embeddings,
                       const ModelParams<S>& params, const ModelConfig& config,
                       DecodeMode mode, Rng& rng) {
  const DecodeResult<S> result = decode_step(embeddings, state, params, config);
  const auto& p = result.p;
  if (mode == DecodeMode::Argmax) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < p.size(); ++i) {
      if (p(i) > p(best)) best = i;
    }
    return result.positions[best];
  }
  const double u = rng.uniform01();
  double total = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) total += static_cast<double>(p(i));
  double cum = 0.0;
  Eigen::Index last_valid = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) <= S(0)) continue;
    cum += static_cast<double>(p(i));
    last_valid = i;
    if (cum > u * total) return result.positions[i];
  }
  return result.positions[last_valid];
}

}  // namespace insertnco
