#pragma once

#include <vector>

#include "balfilt/linalg.hpp"

namespace balfilt {

/// Rational inner product on the dual (filtration) space, given by a
/// symmetric positive-definite Gram matrix. Definiteness is certified at
/// construction by exact leading principal minors.
class InnerProduct {
  public:
    explicit InnerProduct(QMat gram);

    static InnerProduct standard(std::size_t dim) { return InnerProduct(QMat::identity(dim)); }

    std::size_t dim() const { return gram_.rows(); }
    const QMat& gram() const { return gram_; }

    Rational inner(const QVec& u, const QVec& v) const;
    Rational norm_sq(const QVec& v) const { return inner(v, v); }

    /// The metric image of a character: the unique u with (u, v) = ⟨v, χ⟩
    /// for all v, i.e. u = gram⁻¹·χ.
    QVec sharp(const QVec& chi) const;

    /// Inverse of sharp: λ ↦ gram·λ, the pairing functional of λ.
    QVec flat(const QVec& lambda) const;

    /// Component of v orthogonal to span(basis). The basis must be linearly
    /// independent (input_error otherwise). Idempotent; the result pairs to
    /// zero with every basis vector under this inner product.
    QVec project_orthogonal(const std::vector<QVec>& basis, const QVec& v) const;

    bool operator==(const InnerProduct& other) const { return gram_ == other.gram_; }

  private:
    QMat gram_;
};

}  // namespace balfilt
