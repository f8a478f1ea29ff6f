#include "tlgcn/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "tlgcn/errors.hpp"
#include "tlgcn/metrics.hpp"
#include "tlgcn/tensor_ops.hpp"

namespace tlgcn {

void TrainConfig::validate() const {
  if (!(lr > 0.0)) throw std::invalid_argument("train config: learning rate must be > 0");
  if (l2 < 0.0) throw std::invalid_argument("train config: l2 coefficient must be >= 0");
  if (!(beta > 0.0)) throw std::invalid_argument("train config: beta must be > 0");
  if (max_epochs == 0) throw std::invalid_argument("train config: max_epochs must be >= 1");
  if (patience == 0 || patience > max_epochs) {
    throw std::invalid_argument("train config: patience must be in [1, max_epochs]");
  }
}

double smooth_l1(double pred, double target, double beta) {
  const double d = std::fabs(target - pred);
  return d < beta ? d * d / (2.0 * beta) : d - beta / 2.0;
}

double smooth_l1_grad(double pred, double target, double beta) {
  const double r = (pred - target) / beta;
  return std::clamp(r, -1.0, 1.0);
}

AdamState AdamState::like(const ModelParams& params) {
  AdamState s;
  s.m_x = Tensor3(params.x.d1(), params.x.d2(), params.x.d3());
  s.v_x = s.m_x;
  s.m_head_w.assign(params.head_w.size(), 0.0);
  s.v_head_w.assign(params.head_w.size(), 0.0);
  for (const auto& w : params.layer_weights) {
    s.m_w.emplace_back(w.d1(), w.d2(), w.d3());
    s.v_w.emplace_back(w.d1(), w.d2(), w.d3());
  }
  return s;
}

namespace {

// out slot t = X_t^T Y_t, dims (x.d2, y.d2, T)
Tensor3 facewise_xt_y(const Tensor3& x, const Tensor3& y) {
  const std::size_t rows = x.d1(), a = x.d2(), b = y.d2();
  Tensor3 out(a, b, x.d3());
  for (std::size_t t = 0; t < x.d3(); ++t) {
    const double* xs = x.slice(t);
    const double* ys = y.slice(t);
    double* os = out.slice(t);
    for (std::size_t i = 0; i < rows; ++i) {
      const double* xrow = xs + i * a;
      const double* yrow = ys + i * b;
      for (std::size_t k = 0; k < a; ++k) {
        const double v = xrow[k];
        if (v == 0.0) continue;
        double* orow = os + k * b;
        for (std::size_t j = 0; j < b; ++j) orow[j] += v * yrow[j];
      }
    }
  }
  return out;
}

// out slot t = X_t Y_t^T, dims (x.d1, y.d1, T); inner dims must agree
Tensor3 facewise_x_yt(const Tensor3& x, const Tensor3& y) {
  const std::size_t n = x.d1(), inner = x.d2(), m = y.d1();
  Tensor3 out(n, m, x.d3());
  for (std::size_t t = 0; t < x.d3(); ++t) {
    const double* xs = x.slice(t);
    const double* ys = y.slice(t);
    double* os = out.slice(t);
    for (std::size_t i = 0; i < n; ++i) {
      const double* xrow = xs + i * inner;
      double* orow = os + i * m;
      for (std::size_t k = 0; k < m; ++k) {
        const double* yrow = ys + k * inner;
        double dot = 0.0;
        for (std::size_t j = 0; j < inner; ++j) dot += xrow[j] * yrow[j];
        orow[k] += dot;
      }
    }
  }
  return out;
}

double batch_loss(const Tensor3& h, const ModelParams& params, std::span<const Observation> obs,
                  double beta) {
  double loss = 0.0;
  for (const auto& o : obs) {
    loss += smooth_l1(predict_edge(h, o.i, o.j, o.t, params), o.y, beta);
  }
  return loss;
}

double l2_term(const ModelParams& params, double l2) {
  if (l2 == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : params.x.values()) sum += v * v;
  return l2 * sum;
}

struct HeadBackward {
  Tensor3 g_h;  // dL/dH^(L)
  std::vector<double> d_head_w;
  double d_head_b = 0.0;
};

HeadBackward head_backward(const Tensor3& h, const ModelParams& params,
                           std::span<const Observation> obs, double beta) {
  const std::size_t f = h.d2();
  HeadBackward hb;
  hb.g_h = Tensor3(h.d1(), f, h.d3());
  hb.d_head_w.assign(2 * f, 0.0);
  for (const auto& o : obs) {
    const double g = smooth_l1_grad(predict_edge(h, o.i, o.j, o.t, params), o.y, beta);
    hb.d_head_b += g;
    const double* hs = h.slice(o.t);
    double* gs = hb.g_h.slice(o.t);
    const double* hi = hs + o.i * f;
    const double* hj = hs + o.j * f;
    double* gi = gs + o.i * f;
    double* gj = gs + o.j * f;
    for (std::size_t k = 0; k < f; ++k) {
      hb.d_head_w[k] += g * hi[k];
      hb.d_head_w[f + k] += g * hj[k];
      gi[k] += g * params.head_w[k];
      gj[k] += g * params.head_w[f + k];
    }
  }
  return hb;
}

void relu_mask(Tensor3& g, const Tensor3& pre_act) {
  double* gv = g.values().data();
  const double* zv = pre_act.values().data();
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (zv[k] <= 0.0) gv[k] = 0.0;
  }
}

// Reverse pass given an already-computed forward state. `trace` is required
// (and consumed) only for weight-carrying variants.
GradientSet backward_from_forward(const ModelParams& params, const EncoderOperator& op,
                                  const EncoderConfig& cfg, std::span<const Observation> obs,
                                  const TrainConfig& tc, const Tensor3& h, EncoderTrace* trace) {
  const bool with_w = variant_has_weights(params.variant);
  const bool stip = variant_has_stip(params.variant);

  HeadBackward hb = head_backward(h, params, obs, tc.beta);

  GradientSet grads;
  grads.d_head_w = std::move(hb.d_head_w);
  grads.d_head_b = hb.d_head_b;
  if (with_w) grads.d_layer_weights.resize(cfg.layers);

  // Walk the layers backwards, turning dL/dH^(l+1) into dL/dH^(l).
  Tensor3 g = std::move(hb.g_h);
  for (std::size_t l = cfg.layers; l-- > 0;) {
    if (!with_w) {
      if (stip) {
        g = m_transform_transpose(facewise_product_sparse_transpose(op.b, g), cfg.m);
      } else {
        g = facewise_product_sparse_transpose(op.a_norm, g);
      }
      continue;
    }
    if (cfg.activation == Activation::ReLU) relu_mask(g, trace->pre_act[l]);
    const Tensor3& p = trace->pre_w[l];
    if (stip) {
      Tensor3 w_hat = m_transform(params.layer_weights[l], cfg.m);
      grads.d_layer_weights[l] = m_transform_transpose(facewise_xt_y(p, g), cfg.m);
      Tensor3 g_p = facewise_x_yt(g, w_hat);
      g = m_transform_transpose(facewise_product_sparse_transpose(op.b, g_p), cfg.m);
    } else {
      grads.d_layer_weights[l] = facewise_xt_y(p, g);
      Tensor3 g_p = facewise_x_yt(g, params.layer_weights[l]);
      g = facewise_product_sparse_transpose(op.a_norm, g_p);
    }
  }

  if (tc.l2 != 0.0) {
    const double* xv = params.x.values().data();
    double* gv = g.values().data();
    for (std::size_t k = 0; k < g.size(); ++k) gv[k] += 2.0 * tc.l2 * xv[k];
  }
  grads.d_x = std::move(g);
  return grads;
}

}  // namespace

double loss_total(const ModelParams& params, const EncoderOperator& op, const EncoderConfig& cfg,
                  std::span<const Observation> obs, const TrainConfig& tc) {
  if (obs.empty()) throw std::invalid_argument("loss_total: empty observation set");
  Tensor3 h = run_encoder(params, op, cfg);
  return batch_loss(h, params, obs, tc.beta) + l2_term(params, tc.l2);
}

double loss_total(const ModelParams& params, const SparseSnapshots& a_norm,
                  const EncoderConfig& cfg, std::span<const Observation> obs,
                  const TrainConfig& tc) {
  return loss_total(params, EncoderOperator::build(a_norm, cfg), cfg, obs, tc);
}

GradientSet backward(const ModelParams& params, const EncoderOperator& op,
                     const EncoderConfig& cfg, std::span<const Observation> obs,
                     const TrainConfig& tc) {
  if (obs.empty()) throw std::invalid_argument("backward: empty observation set");
  EncoderTrace trace;
  const bool with_w = variant_has_weights(params.variant);
  Tensor3 h = run_encoder(params, op, cfg, with_w ? &trace : nullptr);
  return backward_from_forward(params, op, cfg, obs, tc, h, with_w ? &trace : nullptr);
}

GradientSet backward(const ModelParams& params, const SparseSnapshots& a_norm,
                     const EncoderConfig& cfg, std::span<const Observation> obs,
                     const TrainConfig& tc) {
  return backward(params, EncoderOperator::build(a_norm, cfg), cfg, obs, tc);
}

namespace {

std::size_t coord_count(const ModelParams& p) {
  return p.param_count();
}

void add_coord(ModelParams& p, std::size_t idx, double delta) {
  if (idx < p.x.size()) {
    p.x.values()[idx] += delta;
    return;
  }
  idx -= p.x.size();
  if (idx < p.head_w.size()) {
    p.head_w[idx] += delta;
    return;
  }
  idx -= p.head_w.size();
  if (idx == 0) {
    p.head_b += delta;
    return;
  }
  idx -= 1;
  for (auto& w : p.layer_weights) {
    if (idx < w.size()) {
      w.values()[idx] += delta;
      return;
    }
    idx -= w.size();
  }
  throw std::out_of_range("parameter coordinate out of range");
}

double grad_coord(const GradientSet& g, const ModelParams& p, std::size_t idx) {
  if (idx < p.x.size()) return g.d_x.values()[idx];
  idx -= p.x.size();
  if (idx < p.head_w.size()) return g.d_head_w[idx];
  idx -= p.head_w.size();
  if (idx == 0) return g.d_head_b;
  idx -= 1;
  for (const auto& w : g.d_layer_weights) {
    if (idx < w.size()) return w.values()[idx];
    idx -= w.size();
  }
  throw std::out_of_range("parameter coordinate out of range");
}

}  // namespace

double grad_check(const ModelParams& params, const SparseSnapshots& a_norm,
                  const EncoderConfig& cfg, std::span<const Observation> obs,
                  const TrainConfig& tc, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("grad_check: step must be > 0");
  EncoderOperator op = EncoderOperator::build(a_norm, cfg);
  GradientSet analytic = backward(params, op, cfg, obs, tc);

  const std::size_t total = coord_count(params);
  std::vector<std::size_t> coords(total);
  for (std::size_t k = 0; k < total; ++k) coords[k] = k;
  constexpr std::size_t kMaxCoords = 10000;
  if (total > kMaxCoords) {
    std::mt19937_64 rng(tc.seed);
    for (std::size_t k = 0; k < kMaxCoords; ++k) {
      std::size_t j = k + static_cast<std::size_t>(rng() % (total - k));
      std::swap(coords[k], coords[j]);
    }
    coords.resize(kMaxCoords);
  }

  ModelParams probe = params;
  double max_rel = 0.0;
  for (std::size_t idx : coords) {
    add_coord(probe, idx, step);
    const double lp = loss_total(probe, op, cfg, obs, tc);
    add_coord(probe, idx, -2.0 * step);
    const double lm = loss_total(probe, op, cfg, obs, tc);
    add_coord(probe, idx, step);  // restore

    const double fd = (lp - lm) / (2.0 * step);
    const double an = grad_coord(analytic, params, idx);
    const double rel = std::fabs(fd - an) / std::max({std::fabs(fd), std::fabs(an), 1e-8});
    max_rel = std::max(max_rel, rel);
  }
  return max_rel;
}

namespace {

void adam_update(std::span<double> p, std::span<const double> g, std::span<double> m,
                 std::span<double> v, const TrainConfig& tc, double bc1, double bc2) {
  for (std::size_t k = 0; k < p.size(); ++k) {
    m[k] = tc.adam_beta1 * m[k] + (1.0 - tc.adam_beta1) * g[k];
    v[k] = tc.adam_beta2 * v[k] + (1.0 - tc.adam_beta2) * g[k] * g[k];
    const double m_hat = m[k] / bc1;
    const double v_hat = v[k] / bc2;
    p[k] -= tc.lr * m_hat / (std::sqrt(v_hat) + tc.adam_eps);
  }
}

}  // namespace

void adam_step(ModelParams& params, const GradientSet& grads, AdamState& state,
               const TrainConfig& tc) {
  if (!grads.d_x.same_shape(params.x) || grads.d_head_w.size() != params.head_w.size() ||
      grads.d_layer_weights.size() != params.layer_weights.size()) {
    throw std::invalid_argument("adam_step: gradient shapes do not match parameters");
  }
  for (std::size_t l = 0; l < params.layer_weights.size(); ++l) {
    if (!grads.d_layer_weights[l].same_shape(params.layer_weights[l])) {
      throw std::invalid_argument("adam_step: layer weight gradient shape mismatch");
    }
  }

  state.step += 1;
  const double bc1 = 1.0 - std::pow(tc.adam_beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(tc.adam_beta2, static_cast<double>(state.step));

  adam_update(params.x.values(), grads.d_x.values(), state.m_x.values(), state.v_x.values(), tc,
              bc1, bc2);
  adam_update(params.head_w, grads.d_head_w, state.m_head_w, state.v_head_w, tc, bc1, bc2);
  {
    double p[1] = {params.head_b};
    const double g[1] = {grads.d_head_b};
    double m[1] = {state.m_head_b};
    double v[1] = {state.v_head_b};
    adam_update(p, g, m, v, tc, bc1, bc2);
    params.head_b = p[0];
    state.m_head_b = m[0];
    state.v_head_b = v[0];
  }
  for (std::size_t l = 0; l < params.layer_weights.size(); ++l) {
    adam_update(params.layer_weights[l].values(), grads.d_layer_weights[l].values(),
                state.m_w[l].values(), state.v_w[l].values(), tc, bc1, bc2);
  }

  if (!params.all_finite()) {
    throw std::runtime_error("adam_step: parameters became non-finite");
  }
}

TrainResult train(const DynamicGraph& g, const SplitSet& split, const EncoderConfig& cfg,
                  const TrainConfig& tc) {
  tc.validate();
  if (split.train.empty() || split.validation.empty()) {
    throw std::invalid_argument("train: empty train or validation split");
  }

  DynamicGraph masked = mask_adjacency_to_train(g, split);
  EncoderOperator op = EncoderOperator::build(symmetrize_and_normalize(masked), cfg);

  std::vector<Observation> train_obs, val_obs;
  train_obs.reserve(split.train.size());
  val_obs.reserve(split.validation.size());
  for (std::uint32_t k : split.train) train_obs.push_back(g.observations.at(k));
  for (std::uint32_t k : split.validation) val_obs.push_back(g.observations.at(k));

  ModelParams params = init_params(g.n, cfg, tc.seed);
  AdamState state = AdamState::like(params);
  const bool with_w = variant_has_weights(cfg.variant);

  TrainResult result;
  result.best_val_mae = std::numeric_limits<double>::infinity();

  EncoderTrace trace;
  Tensor3 h = run_encoder(params, op, cfg, with_w ? &trace : nullptr);
  {
    std::vector<double> preds = predict_batch(h, params, val_obs);
    std::vector<double> targets(val_obs.size());
    for (std::size_t k = 0; k < val_obs.size(); ++k) targets[k] = val_obs[k].y;
    result.initial_val_mae = mae(preds, targets);
    result.initial_val_rmse = rmse(preds, targets);
  }

  std::size_t epochs_since_best = 0;
  for (std::size_t epoch = 1; epoch <= tc.max_epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();

    const double train_loss = batch_loss(h, params, train_obs, tc.beta) + l2_term(params, tc.l2);

    GradientSet grads = backward_from_forward(params, op, cfg, train_obs, tc, h,
                                              with_w ? &trace : nullptr);
    adam_step(params, grads, state, tc);

    h = run_encoder(params, op, cfg, with_w ? &trace : nullptr);
    std::vector<double> preds = predict_batch(h, params, val_obs);
    std::vector<double> targets(val_obs.size());
    for (std::size_t k = 0; k < val_obs.size(); ++k) targets[k] = val_obs[k].y;
    const double val_mae = mae(preds, targets);
    const double val_rmse = rmse(preds, targets);

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.history.push_back({epoch, train_loss, val_mae, val_rmse, wall});

    if (val_mae < result.best_val_mae) {
      result.best_val_mae = val_mae;
      result.best_epoch = epoch;
      result.best_params = params;
      epochs_since_best = 0;
    } else {
      ++epochs_since_best;
      if (epochs_since_best >= tc.patience) break;
    }
  }

  if (result.best_epoch == 0) {
    // unreachable unless validation MAE was NaN on every epoch
    result.best_params = params;
  }
  return result;
}

}  // namespace tlgcn
