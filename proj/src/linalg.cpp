#include "balfilt/linalg.hpp"

#include <algorithm>
#include <utility>

namespace balfilt {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw input_error(msg);
}

// Row echelon form by exact Gaussian elimination. Returns pivot columns;
// `rhs`, when given, is carried along as extra columns of the same system.
struct Echelon {
    QMat m;
    std::vector<std::size_t> pivot_cols;
};

Echelon echelon_form(QMat m) {
    Echelon e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(row, j));
        Rational inv = Rational(1) / m.at(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) = Rational(m.at(row, j) * inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            Rational f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) = Rational(m.at(i, j) - f * m.at(row, j));
        }
        e.pivot_cols.push_back(col);
        ++row;
    }
    e.m = std::move(m);
    return e;
}

Int integer_entry(const Rational& r, const char* msg) {
    if (denominator(r) != 1) throw input_error(msg);
    return numerator(r);
}

// g = gcd(a,b) > 0 with s·a + t·b = g (a, b not both zero).
void xgcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    Int old_r = a, r = b;
    Int old_s = 1, s1 = 0;
    Int old_t = 0, t1 = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s1; old_s = s1; s1 = tmp;
        tmp = old_t - q * t1; old_t = t1; t1 = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    g = old_r;
    s = old_s;
    t = old_t;
}

}  // namespace

QMat QMat::identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMat QMat::from_rows(const std::vector<QVec>& rows) {
    if (rows.empty()) return QMat();
    QMat m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require(rows[i].size() == m.cols(), "ragged rows");
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

QMat QMat::from_columns(const std::vector<QVec>& cols) { return transpose(from_rows(cols)); }

QVec QMat::row(std::size_t i) const {
    QVec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

QVec QMat::column(std::size_t j) const {
    QVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

QVec add(const QVec& a, const QVec& b) {
    require(a.size() == b.size(), "vector length mismatch");
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rational(a[i] + b[i]);
    return r;
}

QVec sub(const QVec& a, const QVec& b) {
    require(a.size() == b.size(), "vector length mismatch");
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rational(a[i] - b[i]);
    return r;
}

QVec scale(const Rational& c, const QVec& v) {
    QVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(c * v[i]);
    return r;
}

Rational dot(const QVec& a, const QVec& b) {
    require(a.size() == b.size(), "vector length mismatch");
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

QVec zero_vector(std::size_t n) { return QVec(n, Rational(0)); }

QMat transpose(const QMat& m) {
    QMat t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
    return t;
}

QMat mul(const QMat& a, const QMat& b) {
    require(a.cols() == b.rows(), "matrix shape mismatch");
    QMat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

QVec mul(const QMat& a, const QVec& v) {
    require(a.cols() == v.size(), "matrix/vector shape mismatch");
    QVec r(a.rows(), Rational(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a.at(i, j) * v[j];
    return r;
}

QMat scale(const Rational& c, const QMat& m) {
    QMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = Rational(c * m.at(i, j));
    return r;
}

Rational determinant(const QMat& m) {
    require(m.rows() == m.cols(), "determinant of non-square matrix");
    QMat a = m;
    Rational det(1);
    for (std::size_t col = 0; col < a.cols(); ++col) {
        std::size_t pivot = col;
        while (pivot < a.rows() && a.at(pivot, col) == 0) ++pivot;
        if (pivot == a.rows()) return Rational(0);
        if (pivot != col) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(pivot, j), a.at(col, j));
            det = -det;
        }
        det *= a.at(col, col);
        Rational inv = Rational(1) / a.at(col, col);
        for (std::size_t i = col + 1; i < a.rows(); ++i) {
            if (a.at(i, col) == 0) continue;
            Rational f = Rational(a.at(i, col) * inv);
            for (std::size_t j = col; j < a.cols(); ++j)
                a.at(i, j) = Rational(a.at(i, j) - f * a.at(col, j));
        }
    }
    return det;
}

std::size_t rank(const QMat& m) { return echelon_form(m).pivot_cols.size(); }

std::optional<QVec> solve_linear(const QMat& a, const QVec& b) {
    require(a.rows() == b.size(), "right-hand side length mismatch");
    QMat aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    Echelon e = echelon_form(std::move(aug));
    // A pivot in the augmented column means the system is inconsistent.
    for (std::size_t c : e.pivot_cols)
        if (c == a.cols()) return std::nullopt;
    QVec x(a.cols(), Rational(0));
    for (std::size_t k = 0; k < e.pivot_cols.size(); ++k)
        x[e.pivot_cols[k]] = e.m.at(k, a.cols());
    return x;
}

std::vector<QVec> nullspace(const QMat& a) {
    Echelon e = echelon_form(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        QVec v(a.cols(), Rational(0));
        v[free] = 1;
        for (std::size_t k = 0; k < e.pivot_cols.size(); ++k)
            v[e.pivot_cols[k]] = Rational(-e.m.at(k, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<QVec> row_space_basis(const QMat& a) {
    Echelon e = echelon_form(a);
    std::vector<QVec> basis;
    for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) basis.push_back(e.m.row(k));
    return basis;
}

QMat integer_left_kernel(const QMat& w) {
    const std::size_t r = w.rows();
    const std::size_t m = w.cols();
    // Work on [H | U] with H starting as w and U as the identity; unimodular
    // row operations keep the invariant U·w = H, so rows of U at zero rows of
    // H span the saturated left kernel lattice.
    std::vector<std::vector<Int>> h(r, std::vector<Int>(m, 0));
    std::vector<std::vector<Int>> u(r, std::vector<Int>(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        u[i][i] = 1;
        for (std::size_t j = 0; j < m; ++j)
            h[i][j] = integer_entry(w.at(i, j), "integer_left_kernel: non-integer entry");
    }
    auto row_combine = [&](std::size_t i, std::size_t k, const Int& a, const Int& b,
                           const Int& c, const Int& d) {
        // (row_i, row_k) <- (a·row_i + b·row_k, c·row_i + d·row_k), ad-bc = ±1
        for (std::size_t j = 0; j < m; ++j) {
            Int x = a * h[i][j] + b * h[k][j];
            Int y = c * h[i][j] + d * h[k][j];
            h[i][j] = x;
            h[k][j] = y;
        }
        for (std::size_t j = 0; j < r; ++j) {
            Int x = a * u[i][j] + b * u[k][j];
            Int y = c * u[i][j] + d * u[k][j];
            u[i][j] = x;
            u[k][j] = y;
        }
    };
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < r; ++col) {
        std::size_t pivot = row;
        while (pivot < r && h[pivot][col] == 0) ++pivot;
        if (pivot == r) continue;
        if (pivot != row) {
            std::swap(h[pivot], h[row]);
            std::swap(u[pivot], u[row]);
        }
        for (std::size_t i = row + 1; i < r; ++i) {
            while (h[i][col] != 0) {
                Int g, s, t;
                xgcd(h[row][col], h[i][col], g, s, t);
                Int p = h[row][col] / g;
                Int q = h[i][col] / g;
                row_combine(row, i, s, t, -q, p);
            }
        }
        if (h[row][col] < 0) {
            for (auto& x : h[row]) x = -x;
            for (auto& x : u[row]) x = -x;
        }
        ++row;
    }
    QMat kernel(r - row, r);
    for (std::size_t i = row; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) kernel.at(i - row, j) = Rational(u[i][j]);
    return kernel;
}

bool is_surjective_lattice_map(const QMat& m) {
    // Image lattice = row lattice of mᵀ; reduce it by unimodular row
    // operations and demand a unit pivot in every column.
    const QMat t = transpose(m);
    const std::size_t r = t.rows();
    const std::size_t c = t.cols();
    std::vector<std::vector<Int>> h(r, std::vector<Int>(c, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            h[i][j] = integer_entry(t.at(i, j), "is_surjective_lattice_map: non-integer entry");
    std::size_t row = 0;
    std::vector<Int> pivots;
    for (std::size_t col = 0; col < c && row < r; ++col) {
        std::size_t pivot = row;
        while (pivot < r && h[pivot][col] == 0) ++pivot;
        if (pivot == r) return false;  // rank-deficient column: not onto
        if (pivot != row) std::swap(h[pivot], h[row]);
        for (std::size_t i = row + 1; i < r; ++i) {
            while (h[i][col] != 0) {
                Int g, s, t2;
                xgcd(h[row][col], h[i][col], g, s, t2);
                Int p = h[row][col] / g;
                Int q = h[i][col] / g;
                for (std::size_t j = 0; j < c; ++j) {
                    Int x = s * h[row][j] + t2 * h[i][j];
                    Int y = -q * h[row][j] + p * h[i][j];
                    h[row][j] = x;
                    h[i][j] = y;
                }
            }
        }
        pivots.push_back(abs(h[row][col]));
        ++row;
    }
    if (pivots.size() < c) return false;
    for (const Int& p : pivots)
        if (p != 1) return false;
    return true;
}

}  // namespace balfilt
