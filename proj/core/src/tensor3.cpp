#include "tlgcn/tensor3.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "tlgcn/errors.hpp"

namespace tlgcn {

Tensor3::Tensor3(std::size_t d1, std::size_t d2, std::size_t d3)
    : d1_(d1), d2_(d2), d3_(d3), values_(d1 * d2 * d3, 0.0) {}

Tensor3 Tensor3::from_values(std::size_t d1, std::size_t d2, std::size_t d3,
                             std::vector<double> values) {
  if (values.size() != d1 * d2 * d3) {
    throw DimensionError("Tensor3::from_values: got " + std::to_string(values.size()) +
                         " values for shape " + std::to_string(d1) + "x" + std::to_string(d2) +
                         "x" + std::to_string(d3));
  }
  Tensor3 t;
  t.d1_ = d1;
  t.d2_ = d2;
  t.d3_ = d3;
  t.values_ = std::move(values);
  return t;
}

void Tensor3::fill(double v) {
  for (auto& x : values_) x = v;
}

bool Tensor3::all_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void Tensor3::require_finite(const char* op) const {
  if (!all_finite()) {
    throw std::runtime_error(std::string(op) + ": produced a non-finite entry");
  }
}

void Tensor3::dump(std::ostream& os) const {
  char buf[64];
  for (std::size_t t = 0; t < d3_; ++t) {
    for (std::size_t i = 0; i < d1_; ++i) {
      for (std::size_t j = 0; j < d2_; ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", at(i, j, t));
        os << i << ' ' << j << ' ' << t << ' ' << buf << '\n';
      }
    }
  }
}

double max_abs_diff(const Tensor3& a, const Tensor3& b) {
  if (!a.same_shape(b)) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double d = std::fabs(a.values()[k] - b.values()[k]);
    if (d > m) m = d;
  }
  return m;
}

}  // namespace tlgcn
