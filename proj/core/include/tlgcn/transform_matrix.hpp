#ifndef TLGCN_TRANSFORM_MATRIX_HPP
#define TLGCN_TRANSFORM_MATRIX_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace tlgcn {

enum class MVariant { M1, M2, Custom };

std::string to_string(MVariant v);
MVariant m_variant_from_string(const std::string& s);

/// Banded lower-triangular T x T transform matrix applied along the time
/// mode. Row t (1-based, as in the construction formulas below) has nonzero
/// entries only for max(1, t-b+1) <= k <= t; storage is 0-based row-major.
class TransformMatrix {
 public:
  TransformMatrix() = default;

  std::size_t t_slots() const { return t_slots_; }
  std::size_t bandwidth() const { return bandwidth_; }
  MVariant variant() const { return variant_; }

  double entry(std::size_t t, std::size_t k) const { return entries_[t * t_slots_ + k]; }
  const std::vector<double>& entries() const { return entries_; }

  /// First column with a (structurally) nonzero entry in row t: max(0, t-b+1)
  /// in 0-based indexing. Entries left of this and right of the diagonal are zero.
  std::size_t band_lo(std::size_t t) const {
    return (t + 1 > bandwidth_) ? t + 1 - bandwidth_ : 0;
  }

  bool is_identity() const;

  /// Row sum computed with compensated (Neumaier) summation.
  double row_sum(std::size_t t) const;

  /// Full-precision printout, one row per line; M1 rows annotated with sums.
  void print(std::ostream& os) const;

  friend TransformMatrix make_m1(std::size_t t_slots, std::size_t b);
  friend TransformMatrix make_m2(std::size_t t_slots, std::size_t b);
  friend TransformMatrix make_identity(std::size_t t_slots);
  friend TransformMatrix make_custom(std::size_t t_slots, std::vector<double> entries);

 private:
  std::size_t t_slots_ = 0;
  std::size_t bandwidth_ = 0;
  MVariant variant_ = MVariant::Custom;
  std::vector<double> entries_;  // row-major T x T
};

/// Equal-weight band: m_tk = 1/min(b,t) for max(1,t-b+1) <= k <= t (1-based),
/// zero elsewhere. Every row sums to 1. Throws std::invalid_argument when
/// t_slots or b is zero.
TransformMatrix make_m1(std::size_t t_slots, std::size_t b);

/// Recency-weighted band: m_tk = 1/(t-k+1) inside the band, zero elsewhere.
/// The diagonal of every row is 1.
TransformMatrix make_m2(std::size_t t_slots, std::size_t b);

/// Identity transform (a width-1 band of ones).
TransformMatrix make_identity(std::size_t t_slots);

/// Wraps arbitrary row-major entries; throws DimensionError on a size
/// mismatch and std::invalid_argument if any entry above the diagonal is
/// nonzero. The bandwidth is inferred from the widest row.
TransformMatrix make_custom(std::size_t t_slots, std::vector<double> entries);

}  // namespace tlgcn

#endif  // TLGCN_TRANSFORM_MATRIX_HPP
