#pragma once

// Loop-based double-precision reference of the model math. Kept deliberately
// independent of the Eigen implementation: plain nested loops, its own token
// bookkeeping, its own masked softmax. Only the weight values are shared.

#include <cmath>
#include <limits>
#include <vector>

#include "insertnco/model.hpp"
#include "insertnco/train.hpp"

namespace oracle {

using Mat = std::vector<std::vector<double>>;

inline Mat from_eigen(const insertnco::Matrix<double>& m) {
  Mat out(m.rows(), std::vector<double>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  return out;
}

inline Mat matmul(const Mat& a, const Mat& b) {
  Mat out(a.size(), std::vector<double>(b[0].size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline std::vector<double> softmax(const std::vector<double>& x) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : x) mx = std::max(mx, v);
  std::vector<double> e(x.size());
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    e[i] = std::exp(x[i] - mx);
    total += e[i];
  }
  for (double& v : e) v /= total;
  return e;
}

inline Mat attention_layer(const Mat& x, const insertnco::AttentionLayerParams<double>& w,
                           int num_heads) {
  const std::size_t m = x.size();
  const std::size_t d = x[0].size();
  const std::size_t dk = d / num_heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dk));

  const Mat q = matmul(x, from_eigen(w.wq));
  const Mat k = matmul(x, from_eigen(w.wk));
  const Mat v = matmul(x, from_eigen(w.wv));

  Mat concat(m, std::vector<double>(d, 0.0));
  for (int h = 0; h < num_heads; ++h) {
    const std::size_t base = h * dk;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<double> scores(m, 0.0);
      for (std::size_t j = 0; j < m; ++j) {
        double dot = 0.0;
        for (std::size_t c = 0; c < dk; ++c) dot += q[i][base + c] * k[j][base + c];
        scores[j] = dot * scale;
      }
      const std::vector<double> attn = softmax(scores);
      for (std::size_t c = 0; c < dk; ++c) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) acc += attn[j] * v[j][base + c];
        concat[i][base + c] = acc;
      }
    }
  }

  const Mat wo = from_eigen(w.wo);
  Mat after(m, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      double acc = x[i][j];
      for (std::size_t c = 0; c < d; ++c) acc += concat[i][c] * wo[c][j];
      after[i][j] = acc;
    }

  const Mat wf1 = from_eigen(w.w_ff1);
  const Mat wf2 = from_eigen(w.w_ff2);
  const std::size_t ff = wf1[0].size();
  Mat out(m, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> hidden(ff, 0.0);
    for (std::size_t j = 0; j < ff; ++j) {
      double acc = w.b_ff1(0, j);
      for (std::size_t c = 0; c < d; ++c) acc += after[i][c] * wf1[c][j];
      hidden[j] = std::max(0.0, acc);
    }
    for (std::size_t j = 0; j < d; ++j) {
      double acc = after[i][j] + w.b_ff2(0, j);
      for (std::size_t c = 0; c < ff; ++c) acc += hidden[c] * wf2[c][j];
      out[i][j] = acc;
    }
  }
  return out;
}

inline Mat encode(const insertnco::Instance& instance,
                  const insertnco::ModelParams<double>& params) {
  const std::size_t n = instance.coords.size();
  const std::size_t input_dim = params.config.input_dim;
  Mat features(n, std::vector<double>(input_dim));
  for (std::size_t i = 0; i < n; ++i) {
    features[i][0] = instance.coords[i].x();
    features[i][1] = instance.coords[i].y();
    if (input_dim == 3) features[i][2] = instance.demands[i] / instance.capacity;
  }
  Mat h0 = matmul(features, from_eigen(params.w_in));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < h0[i].size(); ++j) h0[i][j] += params.b_in(0, j);
  return attention_layer(h0, params.encoder, params.config.num_heads);
}

// Token order: current node, then every edge of the partial solution (route
// by route, NewRoute last for CVRP), then the remaining unvisited nodes.
// Returns one probability per edge (NewRoute last); capacity-infeasible
// route edges are masked to zero.
inline std::vector<double> decode_probabilities(const Mat& embeddings,
                                                const insertnco::InsertionState& state,
                                                const insertnco::ModelParams<double>& params) {
  const insertnco::Instance& instance = *state.instance;
  const bool cvrp = instance.is_cvrp();
  const std::size_t d = params.config.embed_dim;

  struct Edge {
    int pred, succ;
    double remaining;  // route's remaining capacity, capacity for NewRoute
    bool feasible;
  };
  std::vector<Edge> edges;
  const double current_demand = cvrp ? instance.demands[state.current_node] : 0.0;
  if (!cvrp) {
    const auto& order = state.routes.front();
    const int m = static_cast<int>(order.size());
    for (int e = 0; e < m; ++e) edges.push_back({order[e], order[(e + 1) % m], 0.0, true});
  } else {
    for (std::size_t r = 0; r < state.routes.size(); ++r) {
      const auto& route = state.routes[r];
      double used = 0.0;
      for (int node : route) used += instance.demands[node];
      const double remaining = instance.capacity - used;
      const bool feasible = remaining + 1e-12 >= current_demand;
      const int m = static_cast<int>(route.size());
      for (int e = 0; e <= m; ++e) {
        const int pred = e == 0 ? 0 : route[e - 1];
        const int succ = e == m ? 0 : route[e];
        edges.push_back({pred, succ, remaining, feasible});
      }
    }
    edges.push_back({0, 0, instance.capacity, true});
  }

  std::vector<std::vector<double>> x0;
  {
    // current-node token
    std::vector<double> row(d, 0.0);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t c = 0; c < d; ++c)
        row[j] += embeddings[state.current_node][c] * params.w_current(c, j);
    x0.push_back(row);
  }
  for (const Edge& edge : edges) {
    std::vector<double> raw;
    raw.reserve(2 * d + 1);
    for (std::size_t c = 0; c < d; ++c) raw.push_back(embeddings[edge.pred][c]);
    for (std::size_t c = 0; c < d; ++c) raw.push_back(embeddings[edge.succ][c]);
    if (cvrp) raw.push_back(edge.remaining / instance.capacity);
    std::vector<double> row(d, 0.0);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t c = 0; c < raw.size(); ++c) row[j] += raw[c] * params.w_position(c, j);
    x0.push_back(row);
  }
  std::size_t unvisited_count = 0;
  if (params.config.include_unvisited) {
    for (int u : state.unvisited) {
      std::vector<double> row(d, 0.0);
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t c = 0; c < d; ++c) row[j] += embeddings[u][c] * params.w_unvisited(c, j);
      x0.push_back(row);
      ++unvisited_count;
    }
  }
  (void)unvisited_count;

  Mat x = x0;
  for (const auto& layer : params.decoder)
    x = attention_layer(x, layer, params.config.num_heads);

  std::vector<double> logits(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    double acc = params.b_out(0, 0);
    for (std::size_t c = 0; c < d; ++c) acc += x[1 + i][c] * params.w_out(c, 0);
    logits[i] = acc;
  }
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].feasible) mx = std::max(mx, logits[i]);
  }
  std::vector<double> p(edges.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!edges[i].feasible) continue;
    p[i] = std::exp(logits[i] - mx);
    total += p[i];
  }
  for (double& v : p) v /= total;
  return p;
}

}  // namespace oracle
