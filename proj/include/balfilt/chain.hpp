#pragma once

#include <optional>

#include "balfilt/solver.hpp"

namespace balfilt {

/// One step of the balancing chain: the current state (intrinsic), its
/// balanced filtration with certificate, the slice producing the next state,
/// the link morphism into the associated graded state, and the cumulative
/// embedding of the current dual space into the original one.
struct ChainStep {
    std::size_t index = 0;
    PolarisedState state;
    BalancedResult balanced;
    QMat cumulative_embedding;  // original rank × rank of `state`
    QVec lambda_original;       // cumulative_embedding · λ
    /// Present on nonterminal steps (λ ≠ 0):
    std::optional<PolarisedState> iterated;   // Λ_λ of the state
    std::optional<SliceResult> next_slice;    // slice of `iterated`
    std::optional<StateMorphism> link;        // into grad(state, λ), validated
};

struct ChainTrace {
    SliceResult initial_slice;
    std::vector<ChainStep> steps;  // last step is terminal: λ = 0, no characters
    bool terminated = false;
    SequentialFiltration sequence;  // nonzero λs in original dual coordinates
};

/// Runs the balancing recursion: slice, balanced filtration, Λ-state, slice
/// again, until the balanced filtration vanishes. Every step is certified
/// with verify_balanced and every link morphism validated; a failure is a
/// certification_error. Terminates within #characters + 1 steps.
ChainTrace balancing_chain(const PolarisedState& s);

/// The embedded filtration sequence of the balancing chain.
SequentialFiltration iterated_balanced(const PolarisedState& s);

/// The same sequence computed entirely inside one inner-product space:
/// characters are moved to the dual side through the metric, faces are
/// quotiented away by orthogonal projection instead of lattice quotients,
/// and each term is the minimum-norm point in the orthogonal complement of
/// the previous face. Checks at every round that the previous term lies in
/// the cone of the surviving projected characters.
SequentialFiltration iterate_projected(const PolarisedState& s);

/// Checks each term against the successively graded states.
bool is_sequential_filtration(const PolarisedState& s, const SequentialFiltration& seq);

}  // namespace balfilt
