#ifndef TLGCN_TENSOR_OPS_HPP
#define TLGCN_TENSOR_OPS_HPP

#include "tlgcn/sparse_snapshots.hpp"
#include "tlgcn/tensor3.hpp"
#include "tlgcn/transform_matrix.hpp"

namespace tlgcn {

/// Mode-3 transform: out(i,j,t) = sum_k m_tk * x(i,j,k). Dims unchanged.
/// Throws DimensionError when x.d3() != m.t_slots().
Tensor3 m_transform(const Tensor3& x, const TransformMatrix& m);

/// Mode-3 transform by M^T: out(i,j,k) = sum_t m_tk * g(i,j,t).
/// This is the adjoint of m_transform, used by reverse-mode gradients.
Tensor3 m_transform_transpose(const Tensor3& g, const TransformMatrix& m);

/// Applies M^{-1} along mode 3 by forward substitution over slices.
/// Throws SingularMatrixError when a diagonal entry is zero.
Tensor3 m_transform_inverse(const Tensor3& z, const TransformMatrix& m);

/// Sparse mode-3 transform: output slot t is the linear combination
/// sum_k m_tk * A_k of input slices, kept in compressed row form.
SparseSnapshots m_transform_sparse(const SparseSnapshots& a, const TransformMatrix& m);

/// Face-wise product: output slot t = X_t * Y_t, dims (x.d1, y.d2, T).
/// Throws DimensionError on inner-dimension or slot mismatch.
Tensor3 facewise_product(const Tensor3& x, const Tensor3& y);

/// Face-wise product with a sparse left factor: out slot t = A_t * H_t.
Tensor3 facewise_product_sparse(const SparseSnapshots& a, const Tensor3& h);

/// Adjoint of facewise_product_sparse in its dense argument:
/// out slot t = A_t^T * G_t.
Tensor3 facewise_product_sparse_transpose(const SparseSnapshots& a, const Tensor3& g);

/// M-product ((X x3 M) facewise (Y x3 M)) x3 M^{-1}, the textbook operator.
/// The model layer deliberately omits the final inverse; this operator keeps it.
Tensor3 m_product(const Tensor3& x, const Tensor3& y, const TransformMatrix& m);

}  // namespace tlgcn

#endif  // TLGCN_TENSOR_OPS_HPP
