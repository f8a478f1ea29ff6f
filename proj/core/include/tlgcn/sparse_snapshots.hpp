#ifndef TLGCN_SPARSE_SNAPSHOTS_HPP
#define TLGCN_SPARSE_SNAPSHOTS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tlgcn/tensor3.hpp"

namespace tlgcn {

/// Per-time-slot n x n sparse matrices in compressed row form. Houses the
/// adjacency tensor and its normalized form; slice count equals t_slots.
class SparseSnapshots {
 public:
  struct Slice {
    std::vector<std::size_t> row_offsets;  // size n+1, nondecreasing
    std::vector<std::uint32_t> cols;       // column indices, sorted within a row
    std::vector<double> vals;

    std::size_t nnz() const { return cols.size(); }
  };

  /// One (row, col, value) entry of a slice under construction.
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    double val;
  };

  SparseSnapshots() = default;

  /// All-empty slices.
  SparseSnapshots(std::size_t n, std::size_t t_slots);

  /// Builds from per-slot coordinate lists. Entries may arrive in any order;
  /// duplicates are summed. Throws DimensionError if slot count differs from
  /// t_slots and std::invalid_argument on out-of-range indices.
  static SparseSnapshots from_entries(std::size_t n, std::size_t t_slots,
                                      const std::vector<std::vector<Entry>>& per_slot);

  std::size_t n() const { return n_; }
  std::size_t t_slots() const { return slices_.size(); }
  std::size_t nnz() const;

  const Slice& slice(std::size_t t) const { return slices_[t]; }
  Slice& slice(std::size_t t) { return slices_[t]; }

  /// Densifies to an n x n x T tensor. Intended for oracles and small instances.
  Tensor3 to_dense() const;

  /// Checks row-offset monotonicity and column bounds; throws on violation.
  void validate() const;

 private:
  std::size_t n_ = 0;
  std::vector<Slice> slices_;
};

}  // namespace tlgcn

#endif  // TLGCN_SPARSE_SNAPSHOTS_HPP
