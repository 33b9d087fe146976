#pragma once

#include "balfilt/qp.hpp"
#include "balfilt/states.hpp"

namespace balfilt {

/// The balanced filtration of a semistable state together with its
/// optimality certificate: the unique minimum-norm covector pairing ≥ 1
/// with every sliced character. `kkt_coefficients[i]` pairs with
/// `active_set[i]` (indices into the sliced characters); their conic
/// combination reconstructs the metric image of the filtration.
struct BalancedResult {
    SliceResult slice;
    QVec lambda_intrinsic;  // in the sliced dual coordinates
    QVec lambda_ambient;    // embedded back into the original dual space
    std::vector<std::size_t> active_set;  // sliced characters pairing to exactly 1
    std::vector<Rational> kkt_coefficients;  // ≥ 0, zero off the working set
    Rational norm_sq;
};

/// Exact active-set quadratic programming in the sliced coordinates.
/// Requires s semistable. Returns λ = 0 for a polystable state.
BalancedResult balanced_filtration(const PolarisedState& s);

/// The recognition certificate: λ is the balanced filtration iff it is a
/// filtration with complementedness ≥ 1 whose metric image lies in the cone
/// of the sliced characters pairing to exactly 1. Exact; requires s
/// semistable and λ a filtration of s (in ambient coordinates).
bool verify_balanced(const PolarisedState& s, const Filtration& lambda);

/// Independent brute-force route: enumerates every subset of the sliced
/// characters as a candidate tight set, solves each equality-constrained
/// minimisation exactly, and keeps the feasible candidate of least norm.
/// Exact but exponential; refuses more than `max_characters` sliced
/// characters. Subsets are solved through the parallel loop.
BalancedResult oracle_balanced(const PolarisedState& s, std::size_t max_characters = 12);

}  // namespace balfilt
