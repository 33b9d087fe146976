#pragma once

#include <vector>

#include "balfilt/linalg.hpp"

namespace balfilt {

struct MinNormResult {
    QVec point;  // the unique minimizer
    /// Final working set (constraint indices) and multipliers c ≥ 0 with
    /// gram·point = Σ cᵢ·rowᵢ over the working set.
    std::vector<std::size_t> working_set;
    std::vector<Rational> multipliers;
    Rational norm_sq;  // pointᵀ·gram·point
};

/// Exact minimizer of xᵀ·gram·x over {x : rowᵢ·x ≥ 1 for all i}. gram must
/// be positive-definite and the feasible set nonempty (it is whenever the
/// rows generate a pointed cone; infeasibility throws input_error). Primal
/// active-set method with smallest-index tie-breaking; fully deterministic.
MinNormResult min_norm_point(const QMat& gram, const std::vector<QVec>& rows);

}  // namespace balfilt
