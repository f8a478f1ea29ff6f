#include "tlgcn/sparse_snapshots.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "tlgcn/errors.hpp"

namespace tlgcn {

SparseSnapshots::SparseSnapshots(std::size_t n, std::size_t t_slots) : n_(n) {
  slices_.resize(t_slots);
  for (auto& s : slices_) s.row_offsets.assign(n + 1, 0);
}

SparseSnapshots SparseSnapshots::from_entries(std::size_t n, std::size_t t_slots,
                                              const std::vector<std::vector<Entry>>& per_slot) {
  if (per_slot.size() != t_slots) {
    throw DimensionError("SparseSnapshots::from_entries: slot count mismatch");
  }
  SparseSnapshots out(n, t_slots);
  std::vector<Entry> sorted;
  for (std::size_t t = 0; t < t_slots; ++t) {
    sorted = per_slot[t];
    for (const auto& e : sorted) {
      if (e.row >= n || e.col >= n) {
        throw std::invalid_argument("SparseSnapshots::from_entries: index out of range at slot " +
                                    std::to_string(t));
      }
    }
    std::sort(sorted.begin(), sorted.end(), [](const Entry& a, const Entry& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    Slice& s = out.slices_[t];
    s.cols.reserve(sorted.size());
    s.vals.reserve(sorted.size());
    std::size_t idx = 0;
    for (std::size_t r = 0; r < n; ++r) {
      s.row_offsets[r] = s.cols.size();
      while (idx < sorted.size() && sorted[idx].row == r) {
        // duplicates within a row are summed
        if (s.cols.size() > s.row_offsets[r] && s.cols.back() == sorted[idx].col) {
          s.vals.back() += sorted[idx].val;
        } else {
          s.cols.push_back(sorted[idx].col);
          s.vals.push_back(sorted[idx].val);
        }
        ++idx;
      }
    }
    s.row_offsets[n] = s.cols.size();
  }
  return out;
}

std::size_t SparseSnapshots::nnz() const {
  std::size_t total = 0;
  for (const auto& s : slices_) total += s.nnz();
  return total;
}

Tensor3 SparseSnapshots::to_dense() const {
  Tensor3 out(n_, n_, t_slots());
  for (std::size_t t = 0; t < t_slots(); ++t) {
    const Slice& s = slices_[t];
    double* block = out.slice(t);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t p = s.row_offsets[i]; p < s.row_offsets[i + 1]; ++p) {
        block[i * n_ + s.cols[p]] += s.vals[p];
      }
    }
  }
  return out;
}

void SparseSnapshots::validate() const {
  for (std::size_t t = 0; t < t_slots(); ++t) {
    const Slice& s = slices_[t];
    if (s.row_offsets.size() != n_ + 1) {
      throw std::invalid_argument("SparseSnapshots: bad row_offsets length at slot " +
                                  std::to_string(t));
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (s.row_offsets[i] > s.row_offsets[i + 1]) {
        throw std::invalid_argument("SparseSnapshots: decreasing row offsets at slot " +
                                    std::to_string(t));
      }
    }
    if (s.row_offsets[n_] != s.cols.size() || s.cols.size() != s.vals.size()) {
      throw std::invalid_argument("SparseSnapshots: offset/value count mismatch at slot " +
                                  std::to_string(t));
    }
    for (std::uint32_t c : s.cols) {
      if (c >= n_) {
        throw std::invalid_argument("SparseSnapshots: column index out of range at slot " +
                                    std::to_string(t));
      }
    }
  }
}

}  // namespace tlgcn
