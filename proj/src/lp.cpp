#include "balfilt/lp.hpp"

#include <limits>

namespace balfilt {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Dense simplex tableau over exact rationals. Rows are kept fully reduced:
// each basic column is a unit column. The reduced-cost row `r` and objective
// value `v` are updated on every pivot.
struct Tableau {
    std::size_t m = 0;  // rows
    std::size_t n = 0;  // columns (all variables)
    std::vector<QVec> a;
    QVec b;
    std::vector<std::size_t> basis;  // variable index per row
    QVec r;
    Rational v;

    void pivot(std::size_t row, std::size_t col) {
        Rational inv = Rational(1) / a[row][col];
        for (std::size_t j = 0; j < n; ++j) a[row][j] = Rational(a[row][j] * inv);
        b[row] = Rational(b[row] * inv);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rational f = a[i][col];
            for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(a[i][j] - f * a[row][j]);
            b[i] = Rational(b[i] - f * b[row]);
        }
        if (r[col] != 0) {
            Rational f = r[col];
            for (std::size_t j = 0; j < n; ++j) r[j] = Rational(r[j] - f * a[row][j]);
            v = Rational(v + f * b[row]);
        }
        basis[row] = col;
    }

    // Prices the objective `c` out against the current basis.
    void load_objective(const QVec& c) {
        r = c;
        v = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (c[basis[i]] == 0) continue;
            Rational f = c[basis[i]];
            for (std::size_t j = 0; j < n; ++j) r[j] = Rational(r[j] - f * a[i][j]);
            v = Rational(v + f * b[i]);
        }
    }

    // Bland's rule simplex loop; `allowed(j)` gates entering columns.
    // Returns false when unbounded.
    template <class Allowed>
    bool maximize(Allowed&& allowed) {
        for (;;) {
            std::size_t enter = kNone;
            for (std::size_t j = 0; j < n; ++j)
                if (r[j] > 0 && allowed(j)) {
                    enter = j;
                    break;
                }
            if (enter == kNone) return true;
            std::size_t leave = kNone;
            Rational best;
            for (std::size_t i = 0; i < m; ++i) {
                if (a[i][enter] <= 0) continue;
                Rational ratio = Rational(b[i] / a[i][enter]);
                if (leave == kNone || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == kNone) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpOutcome lp_solve(const LpProblem& p) {
    const std::size_t nvars = p.objective.size();
    const std::size_t nrows = p.constraints.rows();
    if (p.constraints.rows() != p.rhs.size() || p.senses.size() != nrows ||
        p.signs.size() != nvars || (nrows > 0 && p.constraints.cols() != nvars))
        throw input_error("lp_solve: inconsistent problem dimensions");

    // Standard form: free variables split into difference of nonnegatives,
    // inequality rows get a slack, every row gets an artificial.
    std::vector<std::size_t> pos_col(nvars), neg_col(nvars, kNone);
    std::size_t ncols = 0;
    for (std::size_t j = 0; j < nvars; ++j) {
        pos_col[j] = ncols++;
        if (p.signs[j] == VarSign::Free) neg_col[j] = ncols++;
    }
    const std::size_t slack_base = ncols;
    for (std::size_t i = 0; i < nrows; ++i)
        if (p.senses[i] != Sense::Equal) ++ncols;
    const std::size_t art_base = ncols;
    ncols += nrows;

    Tableau t;
    t.m = nrows;
    t.n = ncols;
    t.a.assign(nrows, QVec(ncols, Rational(0)));
    t.b.assign(nrows, Rational(0));
    t.basis.assign(nrows, kNone);

    std::size_t slack = slack_base;
    for (std::size_t i = 0; i < nrows; ++i) {
        bool flip = p.rhs[i] < 0;
        Rational sgn = flip ? Rational(-1) : Rational(1);
        for (std::size_t j = 0; j < nvars; ++j) {
            Rational coef = Rational(sgn * p.constraints.at(i, j));
            t.a[i][pos_col[j]] = coef;
            if (neg_col[j] != kNone) t.a[i][neg_col[j]] = Rational(-coef);
        }
        t.b[i] = Rational(sgn * p.rhs[i]);
        if (p.senses[i] != Sense::Equal) {
            Rational s = p.senses[i] == Sense::LessEq ? Rational(1) : Rational(-1);
            t.a[i][slack++] = Rational(sgn * s);
        }
        t.a[i][art_base + i] = 1;
        t.basis[i] = art_base + i;
    }

    // Phase 1: maximize minus the sum of artificials.
    QVec phase1(ncols, Rational(0));
    for (std::size_t i = 0; i < nrows; ++i) phase1[art_base + i] = -1;
    t.load_objective(phase1);
    t.maximize([](std::size_t) { return true; });
    if (t.v != 0) return {LpStatus::Infeasible, Rational(0), {}};

    // Drive leftover artificials out of the basis; rows that cannot be
    // pivoted are redundant and stay parked on their artificial at level 0.
    for (std::size_t i = 0; i < nrows; ++i) {
        if (t.basis[i] < art_base) continue;
        for (std::size_t j = 0; j < art_base; ++j)
            if (t.a[i][j] != 0) {
                t.pivot(i, j);
                break;
            }
    }

    // Phase 2 on the real objective; artificial columns are barred.
    QVec phase2(ncols, Rational(0));
    for (std::size_t j = 0; j < nvars; ++j) {
        phase2[pos_col[j]] = p.objective[j];
        if (neg_col[j] != kNone) phase2[neg_col[j]] = Rational(-p.objective[j]);
    }
    t.load_objective(phase2);
    bool bounded = t.maximize([&](std::size_t j) { return j < art_base; });

    QVec x(nvars, Rational(0));
    QVec full(ncols, Rational(0));
    for (std::size_t i = 0; i < nrows; ++i) full[t.basis[i]] = t.b[i];
    for (std::size_t j = 0; j < nvars; ++j) {
        x[j] = full[pos_col[j]];
        if (neg_col[j] != kNone) x[j] = Rational(x[j] - full[neg_col[j]]);
    }
    if (!bounded) return {LpStatus::Unbounded, Rational(0), std::move(x)};
    return {LpStatus::Optimal, t.v, std::move(x)};
}

}  // namespace balfilt
