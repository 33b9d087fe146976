#pragma once

#include <vector>

#include "balfilt/linalg.hpp"

namespace balfilt {

enum class Sense { LessEq, Equal, GreaterEq };
enum class VarSign { Free, NonNegative };

/// maximize objective·x subject to constraints·x (sense) rhs, with
/// per-variable sign restrictions.
struct LpProblem {
    QVec objective;
    QMat constraints;
    std::vector<Sense> senses;
    QVec rhs;
    std::vector<VarSign> signs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    Rational value;  // meaningful when Optimal
    QVec witness;    // optimal point, or a feasible point when Unbounded
};

/// Exact primal simplex, two phases, Bland's smallest-index anti-cycling
/// rule throughout. Deterministic for fixed input.
LpOutcome lp_solve(const LpProblem& p);

}  // namespace balfilt
