#ifndef TLGCN_TRAINING_HPP
#define TLGCN_TRAINING_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "tlgcn/dynamic_graph.hpp"
#include "tlgcn/model.hpp"

namespace tlgcn {

struct TrainConfig {
  double lr = 0.005;           // eta
  double l2 = 0.0001;          // lambda, applied to X only
  double beta = 1.0;           // smooth-L1 threshold
  std::size_t max_epochs = 300;
  std::size_t patience = 20;   // epochs without validation-MAE improvement
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t seed = 1;      // parameter initialization seed

  void validate() const;
};

/// Gradients mirroring ModelParams shapes exactly.
struct GradientSet {
  Tensor3 d_x;
  std::vector<double> d_head_w;
  double d_head_b = 0.0;
  std::vector<Tensor3> d_layer_weights;
};

/// Adam first/second-moment accumulators per parameter tensor.
struct AdamState {
  Tensor3 m_x, v_x;
  std::vector<double> m_head_w, v_head_w;
  double m_head_b = 0.0, v_head_b = 0.0;
  std::vector<Tensor3> m_w, v_w;
  std::size_t step = 0;

  static AdamState like(const ModelParams& params);
};

/// Piecewise loss: d = |target - pred|, d^2/(2*beta) below the threshold,
/// d - beta/2 above it. C1 at the boundary.
double smooth_l1(double pred, double target, double beta);

/// Derivative of smooth_l1 with respect to pred: (pred-target)/beta clamped
/// to +-1 in magnitude.
double smooth_l1_grad(double pred, double target, double beta);

/// Sum of smooth_l1 over the observations plus l2 * sum of squared X entries.
/// Throws std::invalid_argument on an empty observation set.
double loss_total(const ModelParams& params, const EncoderOperator& op, const EncoderConfig& cfg,
                  std::span<const Observation> obs, const TrainConfig& tc);
double loss_total(const ModelParams& params, const SparseSnapshots& a_norm,
                  const EncoderConfig& cfg, std::span<const Observation> obs,
                  const TrainConfig& tc);

/// Exact reverse-mode gradients of loss_total for every parameter family.
GradientSet backward(const ModelParams& params, const EncoderOperator& op,
                     const EncoderConfig& cfg, std::span<const Observation> obs,
                     const TrainConfig& tc);
GradientSet backward(const ModelParams& params, const SparseSnapshots& a_norm,
                     const EncoderConfig& cfg, std::span<const Observation> obs,
                     const TrainConfig& tc);

/// Central-difference verification of backward. Checks every coordinate, or
/// a seeded 10k subsample when the parameter count exceeds that. Returns the
/// maximum relative error max(|analytic - fd|) / max(|analytic|, |fd|, 1e-8).
double grad_check(const ModelParams& params, const SparseSnapshots& a_norm,
                  const EncoderConfig& cfg, std::span<const Observation> obs,
                  const TrainConfig& tc, double step);

/// Bias-corrected Adam update in place; advances state.step.
/// Throws std::invalid_argument when gradient shapes do not match.
void adam_step(ModelParams& params, const GradientSet& grads, AdamState& state,
               const TrainConfig& tc);

struct EpochRecord {
  std::size_t epoch = 0;     // 1-based
  double train_loss = 0.0;   // loss under the parameters the epoch started with
  double val_mae = 0.0;      // after this epoch's update
  double val_rmse = 0.0;
  double wall_seconds = 0.0;
};

struct TrainResult {
  ModelParams best_params;   // parameters of the best validation epoch
  std::vector<EpochRecord> history;
  std::size_t best_epoch = 0;
  double best_val_mae = 0.0;
  double initial_val_mae = 0.0;  // under the freshly initialized parameters
  double initial_val_rmse = 0.0;
};

/// Full-batch training with early stopping. The adjacency is masked to
/// training-set edges, normalized once, and reused; validation MAE after
/// each epoch drives patience and best-epoch selection.
TrainResult train(const DynamicGraph& g, const SplitSet& split, const EncoderConfig& cfg,
                  const TrainConfig& tc);

}  // namespace tlgcn

#endif  // TLGCN_TRAINING_HPP
