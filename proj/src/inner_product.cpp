#include "balfilt/inner_product.hpp"

namespace balfilt {

InnerProduct::InnerProduct(QMat gram) : gram_(std::move(gram)) {
    if (gram_.rows() != gram_.cols()) throw input_error("gram matrix must be square");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
        for (std::size_t j = i + 1; j < gram_.cols(); ++j)
            if (gram_.at(i, j) != gram_.at(j, i)) throw input_error("gram matrix not symmetric");
    // Sylvester: positive-definite iff every leading principal minor is > 0.
    for (std::size_t k = 1; k <= gram_.rows(); ++k) {
        QMat minor(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor.at(i, j) = gram_.at(i, j);
        if (determinant(minor) <= 0) throw input_error("gram matrix not positive-definite");
    }
}

Rational InnerProduct::inner(const QVec& u, const QVec& v) const {
    if (u.size() != dim() || v.size() != dim())
        throw input_error("inner: vector length does not match gram dimension");
    return dot(u, mul(gram_, v));
}

QVec InnerProduct::sharp(const QVec& chi) const {
    if (chi.size() != dim()) throw input_error("sharp: length mismatch");
    auto u = solve_linear(gram_, chi);
    // gram is invertible, so the solve cannot fail.
    return *u;
}

QVec InnerProduct::flat(const QVec& lambda) const {
    if (lambda.size() != dim()) throw input_error("flat: length mismatch");
    return mul(gram_, lambda);
}

QVec InnerProduct::project_orthogonal(const std::vector<QVec>& basis, const QVec& v) const {
    if (v.size() != dim()) throw input_error("project_orthogonal: length mismatch");
    if (basis.empty()) return v;
    QMat b = QMat::from_rows(basis);
    if (b.cols() != dim()) throw input_error("project_orthogonal: basis length mismatch");
    // Coefficients of the projection onto span(basis) solve S c = B·gram·v
    // with S the Gram matrix of the basis; S is singular exactly when the
    // basis is dependent.
    QMat s = mul(b, mul(gram_, transpose(b)));
    if (determinant(s) == 0) throw input_error("project_orthogonal: dependent basis");
    QVec rhs = mul(b, mul(gram_, v));
    QVec c = *solve_linear(s, rhs);
    return sub(v, mul(transpose(b), c));
}

}  // namespace balfilt
