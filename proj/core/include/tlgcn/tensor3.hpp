#ifndef TLGCN_TENSOR3_HPP
#define TLGCN_TENSOR3_HPP

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace tlgcn {

/// Dense order-3 tensor of doubles with dimensions d1 x d2 x d3, where the
/// third mode indexes time slots. Storage is slice-major: slice t is a
/// d1 x d2 row-major matrix and slices are laid out contiguously, so
/// offset(i,j,t) = (t*d1 + i)*d2 + j.
class Tensor3 {
 public:
  Tensor3() = default;

  /// Zero-filled tensor.
  Tensor3(std::size_t d1, std::size_t d2, std::size_t d3);

  /// Wraps an existing value vector; throws DimensionError if the count
  /// is not d1*d2*d3.
  static Tensor3 from_values(std::size_t d1, std::size_t d2, std::size_t d3,
                             std::vector<double> values);

  std::size_t d1() const { return d1_; }
  std::size_t d2() const { return d2_; }
  std::size_t d3() const { return d3_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double& at(std::size_t i, std::size_t j, std::size_t t) {
    return values_[(t * d1_ + i) * d2_ + j];
  }
  double at(std::size_t i, std::size_t j, std::size_t t) const {
    return values_[(t * d1_ + i) * d2_ + j];
  }

  /// Pointer to the d1*d2 row-major block of slice t.
  double* slice(std::size_t t) { return values_.data() + t * d1_ * d2_; }
  const double* slice(std::size_t t) const { return values_.data() + t * d1_ * d2_; }
  std::size_t slice_size() const { return d1_ * d2_; }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  bool same_shape(const Tensor3& other) const {
    return d1_ == other.d1_ && d2_ == other.d2_ && d3_ == other.d3_;
  }

  void fill(double v);

  bool all_finite() const;

  /// Throws std::runtime_error naming `op` if any entry is NaN or Inf.
  void require_finite(const char* op) const;

  /// Debug dump, one "i j t value" line per entry with round-trip precision.
  void dump(std::ostream& os) const;

 private:
  std::size_t d1_ = 0, d2_ = 0, d3_ = 0;
  std::vector<double> values_;
};

/// Largest absolute elementwise difference; throws DimensionError on shape mismatch.
double max_abs_diff(const Tensor3& a, const Tensor3& b);

}  // namespace tlgcn

#endif  // TLGCN_TENSOR3_HPP
