#pragma once

#include "insertnco/model.hpp"

namespace insertnco {

// Reverse pass of attention_layer. Accumulates (+=) parameter gradients into
// `grad` and returns the gradient w.r.t. the layer input.
template <typename S>
Matrix<S> attention_layer_backward(const Matrix<S>& d_out,
                                   const AttentionLayerParams<S>& w,
                                   const AttentionLayerCache<S>& cache, int num_heads,
                                   AttentionLayerParams<S>& grad) {
  const Eigen::Index m = d_out.rows();
  const Eigen::Index d = d_out.cols();
  const Eigen::Index dk = d / num_heads;
  const S scale = static_cast<S>(1.0 / std::sqrt(static_cast<double>(dk)));

  // out = relu(ff_pre) * w_ff2 + after_mha + b_ff2
  grad.b_ff2.row(0) += d_out.colwise().sum();
  const Matrix<S> relu = cache.ff_pre.cwiseMax(S(0));
  grad.w_ff2.noalias() += relu.transpose() * d_out;
  Matrix<S> d_ff_pre = d_out * w.w_ff2.transpose();
  d_ff_pre.array() *= (cache.ff_pre.array() > S(0)).template cast<S>();
  grad.b_ff1.row(0) += d_ff_pre.colwise().sum();
  grad.w_ff1.noalias() += cache.after_mha.transpose() * d_ff_pre;

  // after_mha = heads_concat * wo + input
  Matrix<S> d_after = d_out + d_ff_pre * w.w_ff1.transpose();
  grad.wo.noalias() += cache.heads_concat.transpose() * d_after;
  const Matrix<S> d_concat = d_after * w.wo.transpose();
  Matrix<S> d_x = d_after;  // residual branch

  Matrix<S> d_q = Matrix<S>::Zero(m, d);
  Matrix<S> d_k = Matrix<S>::Zero(m, d);
  Matrix<S> d_v = Matrix<S>::Zero(m, d);
  for (int h = 0; h < num_heads; ++h) {
    const auto q_h = cache.q.middleCols(h * dk, dk);
    const auto k_h = cache.k.middleCols(h * dk, dk);
    const auto v_h = cache.v.middleCols(h * dk, dk);
    const Matrix<S>& attn = cache.attn[h];
    const auto d_head = d_concat.middleCols(h * dk, dk);

    Matrix<S> d_attn = d_head * v_h.transpose();
    d_v.middleCols(h * dk, dk).noalias() = attn.transpose() * d_head;

    // Softmax backward, rowwise: dS = A .* (dA - rowsum(dA .* A)).
    const ColVec<S> row_dot = (d_attn.array() * attn.array()).rowwise().sum();
    d_attn.colwise() -= row_dot;
    Matrix<S> d_scores = (attn.array() * d_attn.array()).matrix();
    d_scores *= scale;

    d_q.middleCols(h * dk, dk).noalias() = d_scores * k_h;
    d_k.middleCols(h * dk, dk).noalias() = d_scores.transpose() * q_h;
  }
  grad.wq.noalias() += cache.input.transpose() * d_q;
  grad.wk.noalias() += cache.input.transpose() * d_k;
  grad.wv.noalias() += cache.input.transpose() * d_v;
  d_x.noalias() += d_q * w.wq.transpose();
  d_x.noalias() += d_k * w.wk.transpose();
  d_x.noalias() += d_v * w.wv.transpose();
  return d_x;
}

// Cross-entropy backward for one decode step, given the target token. Adds
// parameter gradients into `grads` and the gradient w.r.t. the encoder
// output into `d_embeddings`.
template <typename S>
void decode_step_backward(const DecodeCache<S>& cache, const Matrix<S>& embeddings,
                          int target_token, const ModelParams<S>& params,
                          ModelParams<S>& grads, Matrix<S>& d_embeddings) {
  if (cache.x_final.size() == 0)
    throw Error(ErrorKind::NoForwardRecorded, "decode cache holds no forward pass");
  const Eigen::Index m = cache.x_final.rows();
  const Eigen::Index d = cache.x_final.cols();

  // d loss / d logits = softmax - onehot(target) on unmasked tokens.
  ColVec<S> d_logits = ColVec<S>::Zero(m);
  for (Eigen::Index t = 0; t < m; ++t) {
    if (!cache.masked[t]) d_logits(t) = static_cast<S>(cache.p_tokens(t));
  }
  d_logits(target_token) -= S(1);

  grads.w_out.noalias() += cache.x_final.transpose() * d_logits;
  grads.b_out(0, 0) += d_logits.sum();
  Matrix<S> d_x = d_logits * params.w_out.transpose();

  for (int l = static_cast<int>(params.decoder.size()) - 1; l >= 0; --l) {
    d_x = attention_layer_backward(d_x, params.decoder[l], cache.layers[l],
                                   params.config.num_heads, grads.decoder[l]);
  }

  // Route token gradients back to their sources.
  const RowVec<S> d_cur = d_x.row(0);
  grads.w_current.noalias() += embeddings.row(cache.current).transpose() * d_cur;
  d_embeddings.row(cache.current) += d_cur * params.w_current.transpose();

  const bool cvrp = !cache.pos_capacity.empty();
  const Eigen::Index raw_width = params.w_position.rows();
  RowVec<S> raw(raw_width);
  for (std::size_t i = 0; i < cache.pos_endpoints.size(); ++i) {
    const Eigen::Index token = 1 + static_cast<Eigen::Index>(i);
    const auto [pred, succ] = cache.pos_endpoints[i];
    raw.segment(0, d) = embeddings.row(pred);
    raw.segment(d, d) = embeddings.row(succ);
    if (cvrp) raw(2 * d) = cache.pos_capacity[i];
    grads.w_position.noalias() += raw.transpose() * d_x.row(token);
    const RowVec<S> d_raw = d_x.row(token) * params.w_position.transpose();
    d_embeddings.row(pred) += d_raw.segment(0, d);
    d_embeddings.row(succ) += d_raw.segment(d, d);
  }

  const Eigen::Index unvisited_base = 1 + static_cast<Eigen::Index>(cache.pos_endpoints.size());
  for (std::size_t i = 0; i < cache.unvisited_tokens.size(); ++i) {
    const Eigen::Index token = unvisited_base + static_cast<Eigen::Index>(i);
    const int u = cache.unvisited_tokens[i];
    grads.w_unvisited.noalias() += embeddings.row(u).transpose() * d_x.row(token);
    d_embeddings.row(u) += d_x.row(token) * params.w_unvisited.transpose();
  }
}

// Backward of the encoder given the accumulated gradient on its output.
template <typename S>
void encode_backward(const EncodeCache<S>& cache, const Matrix<S>& d_embeddings,
                     const ModelParams<S>& params, ModelParams<S>& grads) {
  const Matrix<S> d_h0 =
      attention_layer_backward(d_embeddings, params.encoder, cache.layer,
                               params.config.num_heads, grads.encoder);
  grads.w_in.noalias() += cache.features.transpose() * d_h0;
  grads.b_in.row(0) += d_h0.colwise().sum();
}

}  // namespace insertnco
