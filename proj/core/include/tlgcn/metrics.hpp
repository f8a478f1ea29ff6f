#ifndef TLGCN_METRICS_HPP
#define TLGCN_METRICS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tlgcn/dynamic_graph.hpp"
#include "tlgcn/model.hpp"

namespace tlgcn {

/// Mean absolute residual. Throws std::invalid_argument on empty or
/// mismatched inputs.
double mae(std::span<const double> preds, std::span<const double> targets);

/// Root mean squared residual; always >= mae on the same inputs.
double rmse(std::span<const double> preds, std::span<const double> targets);

struct SlotMetrics {
  std::size_t t = 0;
  double mae = 0.0;
  double rmse = 0.0;
  std::size_t count = 0;
};

struct EvalReport {
  std::string split_name;
  double mae = 0.0;
  double rmse = 0.0;
  std::size_t count = 0;
  std::vector<SlotMetrics> per_slot;  // optional breakdown

  /// key:value lines, one field per line.
  std::string to_text() const;
  /// Machine-readable JSON summary.
  std::string to_json() const;
};

/// Forward pass over the indexed observations of g followed by both metrics.
/// The adjacency of g is normalized as given; callers mask it beforehand
/// when leakage control is wanted. Throws std::invalid_argument on an empty
/// index set.
EvalReport evaluate(const ModelParams& params, const DynamicGraph& g,
                    std::span<const std::uint32_t> indices, const EncoderConfig& cfg,
                    const std::string& split_name, bool per_slot = false);

/// Same evaluation from a prebuilt propagation operator.
EvalReport evaluate(const ModelParams& params, const EncoderOperator& op,
                    std::span<const Observation> all_obs, std::span<const std::uint32_t> indices,
                    const EncoderConfig& cfg, const std::string& split_name,
                    bool per_slot = false);

}  // namespace tlgcn

#endif  // TLGCN_METRICS_HPP
