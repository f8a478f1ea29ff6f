#include "tlgcn/model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "tlgcn/errors.hpp"
#include "tlgcn/tensor_ops.hpp"

namespace tlgcn {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::TLGCN: return "tlgcn";
    case Variant::WoStip: return "wo-stip";
    case Variant::WoL: return "wo-l";
    default: return "wo-stip-l";
  }
}

Variant variant_from_string(const std::string& s) {
  if (s == "tlgcn") return Variant::TLGCN;
  if (s == "wo-stip" || s == "wo_stip") return Variant::WoStip;
  if (s == "wo-l" || s == "wo_l") return Variant::WoL;
  if (s == "wo-stip-l" || s == "wo_stip_l") return Variant::WoStipL;
  throw std::invalid_argument("unknown variant '" + s +
                              "' (expected tlgcn, wo-stip, wo-l or wo-stip-l)");
}

std::string to_string(Activation a) {
  return a == Activation::ReLU ? "relu" : "identity";
}

Activation activation_from_string(const std::string& s) {
  if (s == "relu") return Activation::ReLU;
  if (s == "identity") return Activation::Identity;
  throw std::invalid_argument("unknown activation '" + s + "'");
}

bool variant_has_weights(Variant v) { return v == Variant::WoL || v == Variant::WoStipL; }
bool variant_has_stip(Variant v) { return v == Variant::TLGCN || v == Variant::WoL; }
bool variant_is_linear(Variant v) { return !variant_has_weights(v); }

std::size_t ModelParams::param_count() const {
  std::size_t count = x.size() + head_w.size() + 1;
  for (const auto& w : layer_weights) count += w.size();
  return count;
}

bool ModelParams::all_finite() const {
  if (!x.all_finite() || !std::isfinite(head_b)) return false;
  for (double v : head_w) {
    if (!std::isfinite(v)) return false;
  }
  for (const auto& w : layer_weights) {
    if (!w.all_finite()) return false;
  }
  return true;
}

namespace {

// 53-bit uniform in [0, 1); keeps initialization reproducible across
// standard libraries, unlike std::uniform_real_distribution.
inline double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void fill_xavier(std::mt19937_64& rng, double fan_in, double fan_out, std::vector<double>& out) {
  const double bound = std::sqrt(6.0 / (fan_in + fan_out));
  for (auto& v : out) v = (2.0 * next_unit(rng) - 1.0) * bound;
}

}  // namespace

ModelParams init_params(std::size_t n, const EncoderConfig& cfg, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("init_params: node count must be >= 1");
  if (cfg.layers == 0 || cfg.fdim == 0) {
    throw std::invalid_argument("init_params: layers and fdim must be >= 1");
  }
  std::mt19937_64 rng(seed);

  ModelParams p;
  p.variant = cfg.variant;
  p.x = Tensor3(n, cfg.fdim, cfg.m.t_slots());
  fill_xavier(rng, static_cast<double>(n), static_cast<double>(cfg.fdim), p.x.values());

  p.head_w.resize(2 * cfg.fdim);
  fill_xavier(rng, static_cast<double>(2 * cfg.fdim), 1.0, p.head_w);
  p.head_b = 0.0;

  if (variant_has_weights(cfg.variant)) {
    p.layer_weights.reserve(cfg.layers);
    for (std::size_t l = 0; l < cfg.layers; ++l) {
      Tensor3 w(cfg.fdim, cfg.fdim, cfg.m.t_slots());
      fill_xavier(rng, static_cast<double>(cfg.fdim), static_cast<double>(cfg.fdim), w.values());
      p.layer_weights.push_back(std::move(w));
    }
  }
  return p;
}

EncoderOperator EncoderOperator::build(SparseSnapshots a_norm, const EncoderConfig& cfg) {
  EncoderOperator op;
  if (variant_has_stip(cfg.variant)) {
    op.b = m_transform_sparse(a_norm, cfg.m);
  }
  op.a_norm = std::move(a_norm);
  return op;
}

namespace {

void check_encoder_dims(const ModelParams& params, const SparseSnapshots& a_norm,
                        const EncoderConfig& cfg) {
  if (params.x.d1() != a_norm.n()) {
    throw DimensionError("encode: feature tensor has " + std::to_string(params.x.d1()) +
                         " nodes, adjacency has " + std::to_string(a_norm.n()));
  }
  if (params.x.d3() != a_norm.t_slots() || params.x.d3() != cfg.m.t_slots()) {
    throw DimensionError("encode: time-slot counts disagree");
  }
  if (params.x.d2() != cfg.fdim) {
    throw DimensionError("encode: feature dimension mismatch");
  }
}

void apply_activation(Tensor3& z, Activation act) {
  if (act == Activation::Identity) return;
  for (auto& v : z.values()) v = v > 0.0 ? v : 0.0;
}

}  // namespace

Tensor3 run_encoder(const ModelParams& params, const EncoderOperator& op,
                    const EncoderConfig& cfg, EncoderTrace* trace) {
  check_encoder_dims(params, op.a_norm, cfg);
  const bool with_w = variant_has_weights(params.variant);
  if (with_w && params.layer_weights.size() != cfg.layers) {
    throw InvalidStateError("encoder variant '" + to_string(params.variant) + "' expects " +
                            std::to_string(cfg.layers) + " layer weight tensors, found " +
                            std::to_string(params.layer_weights.size()));
  }
  const bool stip = variant_has_stip(params.variant);
  if (trace) {
    trace->pre_w.clear();
    trace->pre_act.clear();
  }

  Tensor3 h = params.x;
  for (std::size_t l = 0; l < cfg.layers; ++l) {
    Tensor3 propagated;
    if (stip) {
      Tensor3 h_hat = m_transform(h, cfg.m);
      propagated = facewise_product_sparse(op.b, h_hat);
    } else {
      propagated = facewise_product_sparse(op.a_norm, h);
    }
    if (!with_w) {
      h = std::move(propagated);
      continue;
    }
    Tensor3 w_hat = stip ? m_transform(params.layer_weights[l], cfg.m) : params.layer_weights[l];
    Tensor3 z = facewise_product(propagated, w_hat);
    if (trace) {
      trace->pre_w.push_back(std::move(propagated));
      trace->pre_act.push_back(z);  // kept before the activation overwrite below
    }
    apply_activation(z, cfg.activation);
    h = std::move(z);
  }
  return h;
}

Tensor3 encode(const ModelParams& params, const EncoderOperator& op, const EncoderConfig& cfg) {
  return run_encoder(params, op, cfg);
}

Tensor3 encode(const ModelParams& params, const SparseSnapshots& a_norm,
               const EncoderConfig& cfg) {
  return run_encoder(params, EncoderOperator::build(a_norm, cfg), cfg);
}

Tensor3 encode_ablation(const ModelParams& params, const EncoderOperator& op,
                        const EncoderConfig& cfg) {
  if (params.variant == Variant::TLGCN) {
    throw InvalidStateError("encode_ablation: params hold the full TLGCN variant");
  }
  return run_encoder(params, op, cfg);
}

Tensor3 encode_ablation(const ModelParams& params, const SparseSnapshots& a_norm,
                        const EncoderConfig& cfg) {
  return encode_ablation(params, EncoderOperator::build(a_norm, cfg), cfg);
}

double predict_edge(const Tensor3& h, std::size_t i, std::size_t j, std::size_t t,
                    const ModelParams& params) {
  if (i >= h.d1() || j >= h.d1() || t >= h.d3()) {
    throw std::invalid_argument("predict_edge: index out of range");
  }
  const std::size_t f = h.d2();
  if (params.head_w.size() != 2 * f) {
    throw DimensionError("predict_edge: head width does not match embedding dimension");
  }
  const double* hs = h.slice(t);
  const double* hi = hs + i * f;
  const double* hj = hs + j * f;
  double y = params.head_b;
  for (std::size_t k = 0; k < f; ++k) y += params.head_w[k] * hi[k];
  for (std::size_t k = 0; k < f; ++k) y += params.head_w[f + k] * hj[k];
  return y;
}

std::vector<double> predict_batch(const Tensor3& h, const ModelParams& params,
                                  std::span<const Observation> obs) {
  std::vector<double> out;
  out.reserve(obs.size());
  for (const auto& o : obs) out.push_back(predict_edge(h, o.i, o.j, o.t, params));
  return out;
}

std::vector<double> forward_batch(const ModelParams& params, const EncoderOperator& op,
                                  const EncoderConfig& cfg, std::span<const Observation> obs) {
  if (obs.empty()) return {};
  Tensor3 h = run_encoder(params, op, cfg);
  return predict_batch(h, params, obs);
}

std::vector<double> forward_batch(const ModelParams& params, const SparseSnapshots& a_norm,
                                  const EncoderConfig& cfg, std::span<const Observation> obs) {
  return forward_batch(params, EncoderOperator::build(a_norm, cfg), cfg, obs);
}

}  // namespace tlgcn
