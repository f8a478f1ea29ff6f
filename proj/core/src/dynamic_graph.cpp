#include "tlgcn/dynamic_graph.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "tlgcn/errors.hpp"

namespace tlgcn {

std::string to_string(Aggregator a) {
  switch (a) {
    case Aggregator::Last: return "last";
    case Aggregator::Mean: return "mean";
    default: return "sum";
  }
}

Aggregator aggregator_from_string(const std::string& s) {
  if (s == "last") return Aggregator::Last;
  if (s == "mean") return Aggregator::Mean;
  if (s == "sum") return Aggregator::Sum;
  throw std::invalid_argument("unknown aggregator '" + s + "' (expected last, mean or sum)");
}

std::size_t bin_slot(std::int64_t ts, std::int64_t min_ts, std::int64_t max_ts,
                     std::size_t t_slots) {
  if (max_ts == min_ts) return 0;
  // equal-width bins over [min_ts, max_ts]; the +1 keeps max_ts inside slot T-1
  const auto span = static_cast<__int128>(max_ts) - min_ts + 1;
  const auto off = static_cast<__int128>(ts) - min_ts;
  return static_cast<std::size_t>((off * static_cast<__int128>(t_slots)) / span);
}

DynamicGraph bin_snapshots(const EdgeList& edges, std::size_t t_slots, Aggregator aggregator) {
  if (t_slots == 0) {
    throw std::invalid_argument("bin_snapshots: t_slots must be >= 1");
  }
  if (edges.edges.empty()) {
    throw std::invalid_argument("bin_snapshots: no edges");
  }

  std::int64_t min_ts = edges.edges.front().timestamp;
  std::int64_t max_ts = min_ts;
  for (const auto& e : edges.edges) {
    min_ts = std::min(min_ts, e.timestamp);
    max_ts = std::max(max_ts, e.timestamp);
  }

  struct Rec {
    std::uint32_t t, i, j;
    double w;
    std::size_t order;  // file order, breaks ties for the Last aggregator
  };
  std::vector<Rec> recs;
  recs.reserve(edges.edges.size());
  for (std::size_t k = 0; k < edges.edges.size(); ++k) {
    const auto& e = edges.edges[k];
    recs.push_back({static_cast<std::uint32_t>(bin_slot(e.timestamp, min_ts, max_ts, t_slots)),
                    e.src, e.dst, e.weight, k});
  }
  std::sort(recs.begin(), recs.end(), [](const Rec& a, const Rec& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    return a.order < b.order;
  });

  DynamicGraph g;
  g.n = edges.node_count();
  g.t_slots = t_slots;

  std::vector<std::vector<SparseSnapshots::Entry>> adj(t_slots);
  std::size_t k = 0;
  while (k < recs.size()) {
    std::size_t end = k + 1;
    while (end < recs.size() && recs[end].t == recs[k].t && recs[end].i == recs[k].i &&
           recs[end].j == recs[k].j) {
      ++end;
    }
    double y;
    switch (aggregator) {
      case Aggregator::Last:
        y = recs[end - 1].w;
        break;
      case Aggregator::Mean: {
        double sum = 0.0;
        for (std::size_t p = k; p < end; ++p) sum += recs[p].w;
        y = sum / static_cast<double>(end - k);
        break;
      }
      default: {
        double sum = 0.0;
        for (std::size_t p = k; p < end; ++p) sum += recs[p].w;
        y = sum;
        break;
      }
    }
    g.observations.push_back({recs[k].i, recs[k].j, recs[k].t, y});
    adj[recs[k].t].push_back({recs[k].i, recs[k].j, 1.0});
    k = end;
  }

  g.adjacency = SparseSnapshots::from_entries(g.n, t_slots, adj);
  return g;
}

SparseSnapshots symmetrize_and_normalize(const DynamicGraph& g) {
  const std::size_t n = g.n;
  std::vector<std::vector<SparseSnapshots::Entry>> entries(g.t_slots);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;

  for (std::size_t t = 0; t < g.t_slots; ++t) {
    const auto& s = g.adjacency.slice(t);
    pairs.clear();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t p = s.row_offsets[i]; p < s.row_offsets[i + 1]; ++p) {
        const std::uint32_t j = s.cols[p];
        pairs.emplace_back(static_cast<std::uint32_t>(i), j);
        pairs.emplace_back(j, static_cast<std::uint32_t>(i));
      }
    }
    // max(a_ij, a_ji) on a binary pattern is the deduplicated union
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    auto& dst = entries[t];
    dst.reserve(pairs.size() + n);
    for (const auto& [i, j] : pairs) dst.push_back({i, j, 1.0});
    for (std::uint32_t i = 0; i < n; ++i) dst.push_back({i, i, 1.0});  // self-loops
  }

  SparseSnapshots norm = SparseSnapshots::from_entries(n, g.t_slots, entries);

  std::vector<double> inv_sqrt_deg(n);
  for (std::size_t t = 0; t < g.t_slots; ++t) {
    auto& s = norm.slice(t);
    for (std::size_t i = 0; i < n; ++i) {
      double d = 0.0;
      for (std::size_t p = s.row_offsets[i]; p < s.row_offsets[i + 1]; ++p) d += s.vals[p];
      inv_sqrt_deg[i] = 1.0 / std::sqrt(d);  // d >= 1: every row has its self-loop
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t p = s.row_offsets[i]; p < s.row_offsets[i + 1]; ++p) {
        s.vals[p] *= inv_sqrt_deg[i] * inv_sqrt_deg[s.cols[p]];
      }
    }
  }
  return norm;
}

SplitSet split_observations(const DynamicGraph& g, std::uint64_t seed) {
  const std::size_t n = g.observations.size();
  if (n < 10) {
    throw std::invalid_argument("split_observations: need at least 10 observations, have " +
                                std::to_string(n));
  }
  std::vector<std::uint32_t> idx(n);
  for (std::size_t k = 0; k < n; ++k) idx[k] = static_cast<std::uint32_t>(k);

  // Hand-rolled Fisher-Yates: std::shuffle's draw sequence is
  // implementation-defined, which would break cross-toolchain determinism.
  std::mt19937_64 rng(seed);
  for (std::size_t k = n - 1; k > 0; --k) {
    std::size_t j = static_cast<std::size_t>(rng() % (k + 1));
    std::swap(idx[k], idx[j]);
  }

  const std::size_t n_train = (n * 8) / 10;
  const std::size_t n_train_val = (n * 9) / 10;

  SplitSet s;
  s.seed = seed;
  s.train.assign(idx.begin(), idx.begin() + static_cast<long>(n_train));
  s.validation.assign(idx.begin() + static_cast<long>(n_train),
                      idx.begin() + static_cast<long>(n_train_val));
  s.test.assign(idx.begin() + static_cast<long>(n_train_val), idx.end());
  return s;
}

DynamicGraph mask_adjacency_to_train(const DynamicGraph& g, const SplitSet& s) {
  DynamicGraph out;
  out.n = g.n;
  out.t_slots = g.t_slots;
  out.observations = g.observations;

  std::vector<std::vector<SparseSnapshots::Entry>> adj(g.t_slots);
  for (std::uint32_t k : s.train) {
    const Observation& o = g.observations.at(k);
    adj[o.t].push_back({o.i, o.j, 1.0});
  }
  out.adjacency = SparseSnapshots::from_entries(g.n, g.t_slots, adj);
  return out;
}

}  // namespace tlgcn
