#include "tlgcn/transform_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "tlgcn/errors.hpp"

namespace tlgcn {

std::string to_string(MVariant v) {
  switch (v) {
    case MVariant::M1: return "M1";
    case MVariant::M2: return "M2";
    default: return "custom";
  }
}

MVariant m_variant_from_string(const std::string& s) {
  if (s == "M1" || s == "m1") return MVariant::M1;
  if (s == "M2" || s == "m2") return MVariant::M2;
  if (s == "custom") return MVariant::Custom;
  throw std::invalid_argument("unknown M variant '" + s + "' (expected M1 or M2)");
}

namespace {

void check_sizes(std::size_t t_slots, std::size_t b) {
  if (t_slots == 0) throw std::invalid_argument("transform matrix: t_slots must be >= 1");
  if (b == 0) throw std::invalid_argument("transform matrix: bandwidth must be >= 1");
}

}  // namespace

TransformMatrix make_m1(std::size_t t_slots, std::size_t b) {
  check_sizes(t_slots, b);
  TransformMatrix m;
  m.t_slots_ = t_slots;
  m.bandwidth_ = b;
  m.variant_ = MVariant::M1;
  m.entries_.assign(t_slots * t_slots, 0.0);
  for (std::size_t t = 0; t < t_slots; ++t) {
    // 1-based row index t+1: weight 1/min(b, t+1) over the band.
    double w = 1.0 / static_cast<double>(std::min(b, t + 1));
    for (std::size_t k = m.band_lo(t); k <= t; ++k) {
      m.entries_[t * t_slots + k] = w;
    }
  }
  return m;
}

TransformMatrix make_m2(std::size_t t_slots, std::size_t b) {
  check_sizes(t_slots, b);
  TransformMatrix m;
  m.t_slots_ = t_slots;
  m.bandwidth_ = b;
  m.variant_ = MVariant::M2;
  m.entries_.assign(t_slots * t_slots, 0.0);
  for (std::size_t t = 0; t < t_slots; ++t) {
    for (std::size_t k = m.band_lo(t); k <= t; ++k) {
      m.entries_[t * t_slots + k] = 1.0 / static_cast<double>(t - k + 1);
    }
  }
  return m;
}

TransformMatrix make_identity(std::size_t t_slots) {
  check_sizes(t_slots, 1);
  TransformMatrix m;
  m.t_slots_ = t_slots;
  m.bandwidth_ = 1;
  m.variant_ = MVariant::Custom;
  m.entries_.assign(t_slots * t_slots, 0.0);
  for (std::size_t t = 0; t < t_slots; ++t) m.entries_[t * t_slots + t] = 1.0;
  return m;
}

TransformMatrix make_custom(std::size_t t_slots, std::vector<double> entries) {
  check_sizes(t_slots, 1);
  if (entries.size() != t_slots * t_slots) {
    throw DimensionError("make_custom: entry count does not match t_slots^2");
  }
  for (std::size_t t = 0; t < t_slots; ++t) {
    for (std::size_t k = t + 1; k < t_slots; ++k) {
      if (entries[t * t_slots + k] != 0.0) {
        throw std::invalid_argument("make_custom: entry above the diagonal is nonzero");
      }
    }
  }
  std::size_t bw = 1;
  for (std::size_t t = 0; t < t_slots; ++t) {
    for (std::size_t k = 0; k <= t; ++k) {
      if (entries[t * t_slots + k] != 0.0) {
        bw = std::max(bw, t - k + 1);
        break;
      }
    }
  }
  TransformMatrix m;
  m.t_slots_ = t_slots;
  m.bandwidth_ = bw;
  m.variant_ = MVariant::Custom;
  m.entries_ = std::move(entries);
  return m;
}

bool TransformMatrix::is_identity() const {
  for (std::size_t t = 0; t < t_slots_; ++t) {
    for (std::size_t k = 0; k < t_slots_; ++k) {
      if (entries_[t * t_slots_ + k] != (t == k ? 1.0 : 0.0)) return false;
    }
  }
  return true;
}

double TransformMatrix::row_sum(std::size_t t) const {
  // Neumaier summation; band entries are few but the 1e-15 row-sum contract
  // on M1 leaves no room for naive accumulation error.
  double sum = 0.0, comp = 0.0;
  for (std::size_t k = band_lo(t); k <= t && k < t_slots_; ++k) {
    double v = entries_[t * t_slots_ + k];
    double s = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - s) + v;
    } else {
      comp += (v - s) + sum;
    }
    sum = s;
  }
  return sum + comp;
}

void TransformMatrix::print(std::ostream& os) const {
  char buf[64];
  for (std::size_t t = 0; t < t_slots_; ++t) {
    for (std::size_t k = 0; k < t_slots_; ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", entry(t, k));
      os << (k ? " " : "") << buf;
    }
    if (variant_ == MVariant::M1) {
      std::snprintf(buf, sizeof(buf), "%.17g", row_sum(t));
      os << "   # row sum " << buf;
    }
    os << '\n';
  }
}

}  // namespace tlgcn
