#ifndef TLGCN_DYNAMIC_GRAPH_HPP
#define TLGCN_DYNAMIC_GRAPH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tlgcn/edge_list.hpp"
#include "tlgcn/sparse_snapshots.hpp"

namespace tlgcn {

/// One weighted-edge regression record (i, j, t, y_ijt).
struct Observation {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::uint32_t t = 0;
  double y = 0.0;
};

/// How duplicate (i,j) pairs within one time slot collapse into a single
/// observation. `Last` keeps the latest record in edge-list order (ratings
/// overwrite), `Sum` totals interaction volumes, `Mean` averages.
enum class Aggregator { Last, Mean, Sum };

std::string to_string(Aggregator a);
Aggregator aggregator_from_string(const std::string& s);

/// A binned dynamic graph: binary presence adjacency per slot plus the
/// weighted observations. Adjacency has a_ijt = 1 exactly for observed
/// (i,j,t) triples; weights live only in `observations`.
struct DynamicGraph {
  std::size_t n = 0;
  std::size_t t_slots = 0;
  SparseSnapshots adjacency;
  std::vector<Observation> observations;
};

/// Train/validation/test partition of observation indices (the paper's
/// Lambda / Omega / test sets) under a recorded shuffle seed.
struct SplitSet {
  std::vector<std::uint32_t> train;
  std::vector<std::uint32_t> validation;
  std::vector<std::uint32_t> test;
  std::uint64_t seed = 0;

  std::size_t total() const { return train.size() + validation.size() + test.size(); }
};

/// Bins edges into t_slots equal-width windows over [min_ts, max_ts] (the
/// maximum timestamp lands in slot t_slots-1), collapses duplicate (i,j)
/// pairs per slot with the aggregator, and sets adjacency presence for every
/// observation. Observations come out sorted by (t, i, j).
DynamicGraph bin_snapshots(const EdgeList& edges, std::size_t t_slots, Aggregator aggregator);

/// Slot index for one timestamp under the same binning.
std::size_t bin_slot(std::int64_t ts, std::int64_t min_ts, std::int64_t max_ts,
                     std::size_t t_slots);

/// Per slot: symmetrize with max(a_ij, a_ji), add self-loops, and apply
/// D^{-1/2} (A + I) D^{-1/2} where D is the degree matrix of (A + I).
SparseSnapshots symmetrize_and_normalize(const DynamicGraph& g);

/// Seeded Fisher-Yates shuffle then a contiguous 80/10/10 partition.
/// Throws std::invalid_argument with fewer than 10 observations.
SplitSet split_observations(const DynamicGraph& g, std::uint64_t seed);

/// Copy of g whose adjacency keeps only edges whose observations are in the
/// train set; observations are unchanged.
DynamicGraph mask_adjacency_to_train(const DynamicGraph& g, const SplitSet& s);

}  // namespace tlgcn

#endif  // TLGCN_DYNAMIC_GRAPH_HPP
