#ifndef TLGCN_TESTS_ORACLES_HPP
#define TLGCN_TESTS_ORACLES_HPP

// Independent reference implementations used to check the library. These
// deliberately use plain element-wise loops and full (non-banded) sums so
// they share no shortcuts with the production code paths.

#include <cstdint>
#include <vector>

#include "tlgcn/model.hpp"
#include "tlgcn/sparse_snapshots.hpp"
#include "tlgcn/tensor3.hpp"
#include "tlgcn/transform_matrix.hpp"

namespace tlgcn::testing {

/// Element-wise mode-3 transform: out(i,j,t) = sum over all k of m_tk * x(i,j,k).
Tensor3 oracle_m_transform(const Tensor3& x, const TransformMatrix& m);

/// Per-slot naive triple-loop matrix product.
Tensor3 oracle_facewise(const Tensor3& x, const Tensor3& y);

/// Scalar-loop TLGCN encoder: per layer, temporal propagation of the
/// adjacency vectors and embeddings one element at a time, then per-node
/// neighbor aggregation. Dense adjacency input.
Tensor3 oracle_encode(const Tensor3& x, const Tensor3& a_norm_dense, const TransformMatrix& m,
                      std::size_t layers);

/// Eigenvalues of a dense symmetric matrix via cyclic Jacobi rotations,
/// ascending order. `a` is row-major n x n.
std::vector<double> oracle_symmetric_eigenvalues(std::vector<double> a, std::size_t n);

/// Central finite difference of a scalar function at x along one coordinate.
template <typename F>
double central_difference(F&& f, double& coord, double step) {
  const double saved = coord;
  coord = saved + step;
  const double lp = f();
  coord = saved - step;
  const double lm = f();
  coord = saved;
  return (lp - lm) / (2.0 * step);
}

/// Deterministic uniform double in [lo, hi).
double uniform(std::uint64_t& state, double lo, double hi);

/// xorshift-based generator kept separate from the library's mt19937 use.
std::uint64_t next_u64(std::uint64_t& state);

/// Random dense tensor with entries in [-1, 1].
Tensor3 random_tensor(std::uint64_t& state, std::size_t d1, std::size_t d2, std::size_t d3);

/// Random sparse snapshots with the given density, values in [-1, 1].
SparseSnapshots random_snapshots(std::uint64_t& state, std::size_t n, std::size_t t_slots,
                                 double density);

}  // namespace tlgcn::testing

#endif  // TLGCN_TESTS_ORACLES_HPP
