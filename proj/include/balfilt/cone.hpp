#pragma once

#include <optional>
#include <vector>

#include "balfilt/lp.hpp"

namespace balfilt {

struct ConeMembership {
    bool member = false;
    /// Nonnegative coefficients reconstructing the target from the
    /// generators, present exactly when member.
    std::optional<QVec> coefficients;
};

/// Whether target = Σ cᵢ·generatorsᵢ with all cᵢ ≥ 0. The empty generator
/// list defines the cone {0}.
ConeMembership in_cone(const std::vector<QVec>& generators, const QVec& target);

/// Indices of the generators lying in the smallest face of the cone that
/// contains `alpha`. A generator χ is in the face exactly when
/// sup{μ ≥ 0 : α − μ·χ ∈ cone} is positive or unbounded. Requires
/// α ∈ cone(generators); input_error otherwise.
std::vector<std::size_t> smallest_face(const std::vector<QVec>& generators, const QVec& alpha);

/// α ∈ cone and the smallest face containing it is the whole cone.
bool in_relative_interior(const std::vector<QVec>& generators, const QVec& alpha);

/// Whether target = Σ cᵢ·pointsᵢ with cᵢ ≥ 0 and Σ cᵢ = 1. Points must be
/// nonempty.
bool in_convex_hull(const std::vector<QVec>& points, const QVec& target);

}  // namespace balfilt
