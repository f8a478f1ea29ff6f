#ifndef TLGCN_MODEL_HPP
#define TLGCN_MODEL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tlgcn/dynamic_graph.hpp"
#include "tlgcn/sparse_snapshots.hpp"
#include "tlgcn/tensor3.hpp"
#include "tlgcn/transform_matrix.hpp"

namespace tlgcn {

/// TLGCN is the full model; the other three are its ablations. `WoStip`
/// drops the temporal transform, `WoL` restores per-layer feature
/// transformation and activation, `WoStipL` does both (a per-slot GCN).
enum class Variant { TLGCN, WoStip, WoL, WoStipL };

enum class Activation { ReLU, Identity };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);
std::string to_string(Activation a);
Activation activation_from_string(const std::string& s);

/// True when the variant carries per-layer weight tensors W^(l).
bool variant_has_weights(Variant v);
/// True when the variant applies the temporal M-transform.
bool variant_has_stip(Variant v);
/// True when the encoder is linear in X (no activation anywhere).
bool variant_is_linear(Variant v);

struct EncoderConfig {
  std::size_t layers = 2;  // L
  std::size_t fdim = 16;   // F
  TransformMatrix m;
  std::size_t bandwidth = 5;  // b, recorded for reporting
  Variant variant = Variant::TLGCN;
  Activation activation = Activation::ReLU;  // sigma used by ablation variants
};

/// Learnable state: the node-feature tensor X (N x F x T), the estimation
/// head over concatenated embeddings, and per-layer weights for variants
/// that keep feature transformation.
struct ModelParams {
  Tensor3 x;
  std::vector<double> head_w;  // length 2F
  double head_b = 0.0;
  Variant variant = Variant::TLGCN;
  std::vector<Tensor3> layer_weights;  // L tensors of shape F x F x T

  std::size_t param_count() const;
  bool all_finite() const;
};

/// Xavier-Glorot uniform initialization, deterministic under `seed`.
/// X uses fan_in = N, fan_out = F per feature slice; the head uses
/// (2F, 1); layer weights (when present) use (F, F). head_b starts at 0.
ModelParams init_params(std::size_t n, const EncoderConfig& cfg, std::uint64_t seed);

/// Propagation operator cached for a training run: the normalized adjacency
/// and, for STIP variants, B = A_norm x3 M computed once and reused.
struct EncoderOperator {
  SparseSnapshots a_norm;
  SparseSnapshots b;

  static EncoderOperator build(SparseSnapshots a_norm, const EncoderConfig& cfg);
};

/// Per-layer intermediates retained for reverse mode. Lightweight variants
/// need none of this beyond the output; weight-carrying variants keep the
/// pre-W product and the pre-activation of every layer.
struct EncoderTrace {
  std::vector<Tensor3> pre_w;    // P^(l): (B or A_norm) facewise-applied to the layer input
  std::vector<Tensor3> pre_act;  // Z^(l): P^(l) times the transformed layer weights
};

/// Unified encoder covering all variants; records a trace when given one.
Tensor3 run_encoder(const ModelParams& params, const EncoderOperator& op,
                    const EncoderConfig& cfg, EncoderTrace* trace = nullptr);

/// H^(L) of the TLGCN pipeline: L repetitions of
/// H <- (A_norm x3 M) facewise (H x3 M), starting from H^(0) = X.
Tensor3 encode(const ModelParams& params, const SparseSnapshots& a_norm,
               const EncoderConfig& cfg);
Tensor3 encode(const ModelParams& params, const EncoderOperator& op, const EncoderConfig& cfg);

/// Ablation encoders (params.variant must not be TLGCN; layer weights must
/// be present for the variants that use them, else InvalidStateError).
Tensor3 encode_ablation(const ModelParams& params, const SparseSnapshots& a_norm,
                        const EncoderConfig& cfg);
Tensor3 encode_ablation(const ModelParams& params, const EncoderOperator& op,
                        const EncoderConfig& cfg);

/// y_hat = head_w . (h_i,t || h_j,t) + head_b. Throws std::invalid_argument
/// on an out-of-range index.
double predict_edge(const Tensor3& h, std::size_t i, std::size_t j, std::size_t t,
                    const ModelParams& params);

/// Predictions for a batch of (i,j,t) triples from a precomputed embedding.
std::vector<double> predict_batch(const Tensor3& h, const ModelParams& params,
                                  std::span<const Observation> obs);

/// One encode (dispatched on params.variant) followed by per-observation
/// prediction; order-preserving.
std::vector<double> forward_batch(const ModelParams& params, const SparseSnapshots& a_norm,
                                  const EncoderConfig& cfg, std::span<const Observation> obs);
std::vector<double> forward_batch(const ModelParams& params, const EncoderOperator& op,
                                  const EncoderConfig& cfg, std::span<const Observation> obs);

}  // namespace tlgcn

#endif  // TLGCN_MODEL_HPP
