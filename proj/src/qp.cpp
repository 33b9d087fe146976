#include "balfilt/qp.hpp"

#include <algorithm>

#include "balfilt/lp.hpp"

namespace balfilt {

namespace {

// Equality-constrained subproblem for a working set W with independent rows:
// minimize xᵀGx subject to rowᵢ·x = 1 (i ∈ W). Solves the stationarity
// system G·x = Σ cᵢ·rowᵢ together with the constraints; unique because G is
// definite and the rows are independent.
struct EqpSolution {
    QVec x;
    QVec c;
};

EqpSolution solve_eqp(const QMat& gram, const std::vector<QVec>& rows,
                      const std::vector<std::size_t>& working) {
    const std::size_t d = gram.rows();
    const std::size_t w = working.size();
    QMat kkt(d + w, d + w);
    QVec rhs(d + w, Rational(0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) kkt.at(i, j) = gram.at(i, j);
    for (std::size_t k = 0; k < w; ++k) {
        const QVec& row = rows[working[k]];
        for (std::size_t j = 0; j < d; ++j) {
            kkt.at(j, d + k) = Rational(-row[j]);
            kkt.at(d + k, j) = row[j];
        }
        rhs[d + k] = 1;
    }
    auto sol = solve_linear(kkt, rhs);
    if (!sol) throw certification_error("min_norm_point: singular working-set system");
    EqpSolution out;
    out.x.assign(sol->begin(), sol->begin() + d);
    out.c.assign(sol->begin() + d, sol->end());
    return out;
}

QVec initial_feasible_point(const QMat& gram, const std::vector<QVec>& rows) {
    const std::size_t d = gram.rows();
    LpProblem lp;
    lp.objective = zero_vector(d);
    lp.constraints = QMat::from_rows(rows);
    lp.senses.assign(rows.size(), Sense::GreaterEq);
    lp.rhs.assign(rows.size(), Rational(1));
    lp.signs.assign(d, VarSign::Free);
    LpOutcome out = lp_solve(lp);
    if (out.status == LpStatus::Infeasible)
        throw input_error("min_norm_point: constraints are infeasible");
    return out.witness;
}

}  // namespace

MinNormResult min_norm_point(const QMat& gram, const std::vector<QVec>& rows) {
    const std::size_t d = gram.rows();
    for (const QVec& row : rows)
        if (row.size() != d) throw input_error("min_norm_point: row length mismatch");
    if (rows.empty()) return {zero_vector(d), {}, {}, Rational(0)};

    QVec x = initial_feasible_point(gram, rows);
    std::vector<std::size_t> working;

    // Safety net; the smallest-index rules make cycling impossible in
    // practice, so hitting this indicates a bug.
    const std::size_t max_iter = 1000 + 40 * (d + rows.size()) * (d + rows.size());
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        EqpSolution eqp = solve_eqp(gram, rows, working);
        if (eqp.x == x) {
            std::size_t drop = rows.size();
            for (std::size_t k = 0; k < working.size(); ++k)
                if (eqp.c[k] < 0 && (drop == rows.size() || working[k] < drop)) drop = working[k];
            if (drop == rows.size()) {
                MinNormResult result;
                result.point = x;
                result.working_set = working;
                result.multipliers = std::vector<Rational>(eqp.c.begin(), eqp.c.end());
                result.norm_sq = dot(x, mul(gram, x));
                return result;
            }
            working.erase(std::find(working.begin(), working.end(), drop));
            continue;
        }
        // Move toward the subproblem minimizer, stopping at the first
        // constraint that would be violated.
        QVec dir = sub(eqp.x, x);
        Rational step(1);
        std::size_t blocking = rows.size();
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (std::find(working.begin(), working.end(), j) != working.end()) continue;
            Rational along = dot(rows[j], dir);
            if (along >= 0) continue;
            Rational limit = Rational((Rational(1) - dot(rows[j], x)) / along);
            if (limit < step) {
                step = limit;
                blocking = j;
            }
        }
        if (step > 0) x = add(x, scale(step, dir));
        if (blocking < rows.size()) working.push_back(blocking);
    }
    throw certification_error("min_norm_point: iteration limit exceeded");
}

}  // namespace balfilt
