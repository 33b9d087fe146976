#pragma once

// Shared helpers for the test binaries: literal constructors, the
// Fourier-Motzkin cone oracle, and random filtration sampling.

#include <vector>

#include "balfilt/chain.hpp"
#include "balfilt/random_states.hpp"

namespace balfilt::testing {

inline Rational q(long n, long d = 1) { return Rational(Int(n), Int(d)); }

inline QVec vec(std::initializer_list<long> entries) {
    QVec v;
    for (long e : entries) v.push_back(q(e));
    return v;
}

inline QVec qvec(std::initializer_list<Rational> entries) { return QVec(entries); }

inline QMat mat(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<QVec> rs;
    for (auto& r : rows) rs.push_back(vec(r));
    return QMat::from_rows(rs);
}

inline PolarisedState example_state() {
    return PolarisedState(2, {vec({1, 0}), vec({1, 1})}, vec({0, 0}), InnerProduct::standard(2));
}

/// Membership in cone(generators) by Fourier-Motzkin elimination of the
/// coefficient variables from {x = Σ cᵢ gᵢ, c ≥ 0}: an H-description of the
/// cone is produced and the target is tested against every inequality.
/// Exponential, test-only, and fully independent of the simplex route.
bool fm_in_cone(const std::vector<QVec>& generators, const QVec& target);

/// A pseudo-random element of Q-Filt(state): an optimal vertex of the
/// filtration cone boxed to [-1, 1] under a random objective, occasionally
/// combined with a previous draw.
Filtration random_filtration(RandomStates& gen, const PolarisedState& state);

}  // namespace balfilt::testing
