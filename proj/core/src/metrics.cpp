#include "tlgcn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace tlgcn {

namespace {

void check_lengths(std::span<const double> preds, std::span<const double> targets) {
  if (preds.size() != targets.size()) {
    throw std::invalid_argument("metrics: prediction and target counts differ");
  }
  if (preds.empty()) {
    throw std::invalid_argument("metrics: empty input");
  }
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

double mae(std::span<const double> preds, std::span<const double> targets) {
  check_lengths(preds, targets);
  double sum = 0.0;
  for (std::size_t k = 0; k < preds.size(); ++k) {
    sum += std::fabs(targets[k] - preds[k]);
  }
  return sum / static_cast<double>(preds.size());
}

double rmse(std::span<const double> preds, std::span<const double> targets) {
  check_lengths(preds, targets);
  double sum = 0.0;
  for (std::size_t k = 0; k < preds.size(); ++k) {
    const double d = targets[k] - preds[k];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(preds.size()));
}

std::string EvalReport::to_text() const {
  std::string out;
  out += "split: " + split_name + "\n";
  out += "count: " + std::to_string(count) + "\n";
  out += "mae: " + fmt_double(mae) + "\n";
  out += "rmse: " + fmt_double(rmse) + "\n";
  for (const auto& s : per_slot) {
    out += "slot " + std::to_string(s.t) + ": count " + std::to_string(s.count) + ", mae " +
           fmt_double(s.mae) + ", rmse " + fmt_double(s.rmse) + "\n";
  }
  return out;
}

std::string EvalReport::to_json() const {
  std::string out = "{";
  out += "\"split\":\"" + split_name + "\",";
  out += "\"count\":" + std::to_string(count) + ",";
  out += "\"mae\":" + fmt_double(mae) + ",";
  out += "\"rmse\":" + fmt_double(rmse);
  if (!per_slot.empty()) {
    out += ",\"per_slot\":[";
    for (std::size_t k = 0; k < per_slot.size(); ++k) {
      const auto& s = per_slot[k];
      if (k) out += ",";
      out += "{\"t\":" + std::to_string(s.t) + ",\"count\":" + std::to_string(s.count) +
             ",\"mae\":" + fmt_double(s.mae) + ",\"rmse\":" + fmt_double(s.rmse) + "}";
    }
    out += "]";
  }
  out += "}\n";
  return out;
}

EvalReport evaluate(const ModelParams& params, const EncoderOperator& op,
                    std::span<const Observation> all_obs, std::span<const std::uint32_t> indices,
                    const EncoderConfig& cfg, const std::string& split_name, bool per_slot) {
  if (indices.empty()) {
    throw std::invalid_argument("evaluate: empty index set");
  }
  std::vector<Observation> obs;
  obs.reserve(indices.size());
  for (std::uint32_t k : indices) obs.push_back(all_obs[k]);

  std::vector<double> preds = forward_batch(params, op, cfg, obs);
  std::vector<double> targets(obs.size());
  for (std::size_t k = 0; k < obs.size(); ++k) targets[k] = obs[k].y;

  EvalReport r;
  r.split_name = split_name;
  r.count = obs.size();
  r.mae = mae(preds, targets);
  r.rmse = rmse(preds, targets);

  if (per_slot) {
    std::map<std::uint32_t, std::vector<std::size_t>> by_slot;
    for (std::size_t k = 0; k < obs.size(); ++k) by_slot[obs[k].t].push_back(k);
    for (const auto& [t, ks] : by_slot) {
      std::vector<double> p, y;
      p.reserve(ks.size());
      y.reserve(ks.size());
      for (std::size_t k : ks) {
        p.push_back(preds[k]);
        y.push_back(targets[k]);
      }
      r.per_slot.push_back({t, mae(p, y), rmse(p, y), ks.size()});
    }
  }
  return r;
}

EvalReport evaluate(const ModelParams& params, const DynamicGraph& g,
                    std::span<const std::uint32_t> indices, const EncoderConfig& cfg,
                    const std::string& split_name, bool per_slot) {
  EncoderOperator op = EncoderOperator::build(symmetrize_and_normalize(g), cfg);
  return evaluate(params, op, g.observations, indices, cfg, split_name, per_slot);
}

}  // namespace tlgcn
