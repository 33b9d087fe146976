#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "balfilt/rational.hpp"

namespace balfilt {

using QVec = std::vector<Rational>;

/// Dense matrix of exact rationals, row-major.
class QMat {
  public:
    QMat() = default;
    QMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    static QMat identity(std::size_t n);
    static QMat from_rows(const std::vector<QVec>& rows);
    static QMat from_columns(const std::vector<QVec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    QVec row(std::size_t i) const;
    QVec column(std::size_t j) const;

    bool operator==(const QMat& other) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

// Vector arithmetic. Lengths must agree; mismatches throw input_error.
QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const Rational& c, const QVec& v);
Rational dot(const QVec& a, const QVec& b);
bool is_zero(const QVec& v);
QVec zero_vector(std::size_t n);

QMat transpose(const QMat& m);
QMat mul(const QMat& a, const QMat& b);
QVec mul(const QMat& a, const QVec& v);
QMat scale(const Rational& c, const QMat& m);

Rational determinant(const QMat& m);
std::size_t rank(const QMat& m);

/// One exact solution of A x = b, or nullopt when the system is
/// inconsistent. A may be rectangular; among solutions the one with zero
/// free variables is returned.
std::optional<QVec> solve_linear(const QMat& a, const QVec& b);

/// Basis of the rational right kernel {x : A x = 0}.
std::vector<QVec> nullspace(const QMat& a);

/// Basis (as rows) of the row space of `a`.
std::vector<QVec> row_space_basis(const QMat& a);

// Integer lattice utilities. Inputs must have integer entries (denominator
// 1); input_error otherwise.

/// Rows form a Z-basis of {x ∈ Z^rows : xᵀ·column = 0 for every column of w}.
/// The lattice is saturated, so the rows also define a surjection of Z^rows
/// onto Z^(rows-rank w) whose rational kernel is the column span of w.
QMat integer_left_kernel(const QMat& w);

/// Whether the integer matrix, read as a map Z^cols → Z^rows, is surjective.
bool is_surjective_lattice_map(const QMat& m);

}  // namespace balfilt
