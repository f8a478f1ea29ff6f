#include "tlgcn/tensor_ops.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "tlgcn/errors.hpp"

namespace tlgcn {

namespace {

void check_slots(std::size_t have, std::size_t want, const char* op) {
  if (have != want) {
    throw DimensionError(std::string(op) + ": time-slot count " + std::to_string(have) +
                         " does not match transform size " + std::to_string(want));
  }
}

}  // namespace

Tensor3 m_transform(const Tensor3& x, const TransformMatrix& m) {
  check_slots(x.d3(), m.t_slots(), "m_transform");
  const std::size_t ss = x.slice_size();
  Tensor3 out(x.d1(), x.d2(), x.d3());
  for (std::size_t t = 0; t < m.t_slots(); ++t) {
    double* dst = out.slice(t);
    for (std::size_t k = m.band_lo(t); k <= t; ++k) {
      const double w = m.entry(t, k);
      if (w == 0.0) continue;
      const double* src = x.slice(k);
      for (std::size_t p = 0; p < ss; ++p) dst[p] += w * src[p];
    }
  }
  out.require_finite("m_transform");
  return out;
}

Tensor3 m_transform_transpose(const Tensor3& g, const TransformMatrix& m) {
  check_slots(g.d3(), m.t_slots(), "m_transform_transpose");
  const std::size_t ss = g.slice_size();
  Tensor3 out(g.d1(), g.d2(), g.d3());
  // out slice k accumulates rows t >= k whose band covers k.
  for (std::size_t t = 0; t < m.t_slots(); ++t) {
    const double* src = g.slice(t);
    for (std::size_t k = m.band_lo(t); k <= t; ++k) {
      const double w = m.entry(t, k);
      if (w == 0.0) continue;
      double* dst = out.slice(k);
      for (std::size_t p = 0; p < ss; ++p) dst[p] += w * src[p];
    }
  }
  out.require_finite("m_transform_transpose");
  return out;
}

Tensor3 m_transform_inverse(const Tensor3& z, const TransformMatrix& m) {
  check_slots(z.d3(), m.t_slots(), "m_transform_inverse");
  const std::size_t ss = z.slice_size();
  Tensor3 out(z.d1(), z.d2(), z.d3());
  // Forward substitution on the lower-triangular band, slice by slice:
  // W_t = (Z_t - sum_{k<t in band} m_tk W_k) / m_tt.
  for (std::size_t t = 0; t < m.t_slots(); ++t) {
    const double diag = m.entry(t, t);
    if (diag == 0.0) {
      throw SingularMatrixError("m_transform_inverse: zero diagonal at slot " + std::to_string(t));
    }
    double* dst = out.slice(t);
    std::memcpy(dst, z.slice(t), ss * sizeof(double));
    for (std::size_t k = m.band_lo(t); k < t; ++k) {
      const double w = m.entry(t, k);
      if (w == 0.0) continue;
      const double* prev = out.slice(k);
      for (std::size_t p = 0; p < ss; ++p) dst[p] -= w * prev[p];
    }
    if (diag != 1.0) {
      const double inv = 1.0 / diag;
      for (std::size_t p = 0; p < ss; ++p) dst[p] *= inv;
    }
  }
  out.require_finite("m_transform_inverse");
  return out;
}

SparseSnapshots m_transform_sparse(const SparseSnapshots& a, const TransformMatrix& m) {
  check_slots(a.t_slots(), m.t_slots(), "m_transform_sparse");
  const std::size_t n = a.n();
  SparseSnapshots out(n, a.t_slots());

  // Row-wise sparse accumulator shared across slots.
  std::vector<double> acc(n, 0.0);
  std::vector<std::uint32_t> touched;
  touched.reserve(64);

  for (std::size_t t = 0; t < m.t_slots(); ++t) {
    auto& dst = out.slice(t);
    std::size_t cap = 0;
    for (std::size_t k = m.band_lo(t); k <= t; ++k) {
      if (m.entry(t, k) != 0.0) cap += a.slice(k).nnz();
    }
    dst.cols.reserve(cap);
    dst.vals.reserve(cap);
    for (std::size_t i = 0; i < n; ++i) {
      dst.row_offsets[i] = dst.cols.size();
      touched.clear();
      for (std::size_t k = m.band_lo(t); k <= t; ++k) {
        const double w = m.entry(t, k);
        if (w == 0.0) continue;
        const auto& src = a.slice(k);
        for (std::size_t p = src.row_offsets[i]; p < src.row_offsets[i + 1]; ++p) {
          const std::uint32_t c = src.cols[p];
          if (acc[c] == 0.0) touched.push_back(c);
          acc[c] += w * src.vals[p];
        }
      }
      std::sort(touched.begin(), touched.end());
      for (std::uint32_t c : touched) {
        dst.cols.push_back(c);
        dst.vals.push_back(acc[c]);
        acc[c] = 0.0;
      }
    }
    dst.row_offsets[n] = dst.cols.size();
  }
  return out;
}

Tensor3 facewise_product(const Tensor3& x, const Tensor3& y) {
  if (x.d2() != y.d1()) {
    throw DimensionError("facewise_product: inner dimensions " + std::to_string(x.d2()) +
                         " and " + std::to_string(y.d1()) + " differ");
  }
  if (x.d3() != y.d3()) {
    throw DimensionError("facewise_product: slot counts differ");
  }
  const std::size_t n = x.d1(), inner = x.d2(), f = y.d2();
  Tensor3 out(n, f, x.d3());
  for (std::size_t t = 0; t < x.d3(); ++t) {
    const double* xs = x.slice(t);
    const double* ys = y.slice(t);
    double* os = out.slice(t);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < inner; ++k) {
        const double v = xs[i * inner + k];
        if (v == 0.0) continue;
        const double* yrow = ys + k * f;
        double* orow = os + i * f;
        for (std::size_t j = 0; j < f; ++j) orow[j] += v * yrow[j];
      }
    }
  }
  out.require_finite("facewise_product");
  return out;
}

Tensor3 facewise_product_sparse(const SparseSnapshots& a, const Tensor3& h) {
  if (a.n() != h.d1()) {
    throw DimensionError("facewise_product_sparse: node counts differ");
  }
  if (a.t_slots() != h.d3()) {
    throw DimensionError("facewise_product_sparse: slot counts differ");
  }
  const std::size_t n = a.n(), f = h.d2();
  Tensor3 out(n, f, h.d3());
  for (std::size_t t = 0; t < h.d3(); ++t) {
    const auto& s = a.slice(t);
    const double* hs = h.slice(t);
    double* os = out.slice(t);
    for (std::size_t i = 0; i < n; ++i) {
      double* orow = os + i * f;
      for (std::size_t p = s.row_offsets[i]; p < s.row_offsets[i + 1]; ++p) {
        const double v = s.vals[p];
        const double* hrow = hs + static_cast<std::size_t>(s.cols[p]) * f;
        for (std::size_t j = 0; j < f; ++j) orow[j] += v * hrow[j];
      }
    }
  }
  out.require_finite("facewise_product_sparse");
  return out;
}

Tensor3 facewise_product_sparse_transpose(const SparseSnapshots& a, const Tensor3& g) {
  if (a.n() != g.d1()) {
    throw DimensionError("facewise_product_sparse_transpose: node counts differ");
  }
  if (a.t_slots() != g.d3()) {
    throw DimensionError("facewise_product_sparse_transpose: slot counts differ");
  }
  const std::size_t n = a.n(), f = g.d2();
  Tensor3 out(n, f, g.d3());
  for (std::size_t t = 0; t < g.d3(); ++t) {
    const auto& s = a.slice(t);
    const double* gs = g.slice(t);
    double* os = out.slice(t);
    for (std::size_t i = 0; i < n; ++i) {
      const double* grow = gs + i * f;
      for (std::size_t p = s.row_offsets[i]; p < s.row_offsets[i + 1]; ++p) {
        const double v = s.vals[p];
        double* orow = os + static_cast<std::size_t>(s.cols[p]) * f;
        for (std::size_t j = 0; j < f; ++j) orow[j] += v * grow[j];
      }
    }
  }
  out.require_finite("facewise_product_sparse_transpose");
  return out;
}

Tensor3 m_product(const Tensor3& x, const Tensor3& y, const TransformMatrix& m) {
  Tensor3 xf = m_transform(x, m);
  Tensor3 yf = m_transform(y, m);
  Tensor3 prod = facewise_product(xf, yf);
  return m_transform_inverse(prod, m);
}

}  // namespace tlgcn
