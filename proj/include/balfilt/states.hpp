#pragma once

#include <string>
#include <vector>

#include "balfilt/cone.hpp"
#include "balfilt/inner_product.hpp"

namespace balfilt {

/// A finite set of nonzero integer characters in Z^rank together with a
/// rational polarisation and an inner product on the dual space. Characters
/// are deduplicated, keep their first-occurrence order, and a zero character
/// is rejected at construction.
class PolarisedState {
  public:
    PolarisedState(std::size_t rank, std::vector<QVec> characters, QVec polarisation,
                   InnerProduct metric);

    std::size_t rank() const { return rank_; }
    const std::vector<QVec>& characters() const { return characters_; }
    const QVec& polarisation() const { return polarisation_; }
    const InnerProduct& metric() const { return metric_; }

    bool operator==(const PolarisedState& other) const;

  private:
    std::size_t rank_;
    std::vector<QVec> characters_;
    QVec polarisation_;
    InnerProduct metric_;
};

/// A covector on the character lattice. Whether it actually is a filtration
/// of a given state is checked by q_filt_contains, not assumed.
struct Filtration {
    QVec covector;
    bool operator==(const Filtration&) const = default;
};

/// Eventually-zero sequence of filtrations of iterated graded states,
/// represented by its nonzero prefix.
struct SequentialFiltration {
    std::vector<Filtration> terms;
    bool operator==(const SequentialFiltration&) const = default;
};

/// The quotient of a state by the smallest face of its cone containing the
/// polarisation. `quotient` is an integer matrix M → M' with saturated
/// kernel equal to the span of the face characters; `embedding` = quotientᵀ
/// realises the sliced dual space inside the original one, its columns
/// spanning the annihilator of that span.
struct SliceResult {
    std::vector<std::size_t> face;       // indices into the source characters
    std::vector<QVec> kernel_basis;      // basis of span(face characters)
    PolarisedState sliced;               // rank r - dim span, polarisation 0
    QMat quotient;                       // (r' × r), integer entries
    QMat embedding;                      // (r × r') = transpose(quotient)
    std::vector<std::size_t> origin;     // source index of each sliced character
};

/// A morphism of semistable polarised states source → target, carried by a
/// lattice map matrix: target lattice → source lattice (dimensions
/// source.rank × target.rank).
struct StateMorphism {
    QMat matrix;
    PolarisedState source;
    PolarisedState target;
};

struct MorphismReport {
    bool valid = false;
    std::vector<std::string> violations;
};

/// A nonnegative rational or +∞, the codomain of complementedness.
struct ExtendedRational {
    bool infinite = false;
    Rational value;

    static ExtendedRational infinity() { return {true, Rational(0)}; }
    static ExtendedRational finite(Rational v) { return {false, std::move(v)}; }

    bool operator==(const ExtendedRational& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
    bool at_least(const Rational& bound) const { return infinite || value >= bound; }
};

/// The state of a concrete point of an affine torus representation: the
/// distinct nonzero weight rows whose coordinate is nonzero.
PolarisedState state_of_point(const QMat& weights, const QVec& coordinates, QVec polarisation,
                              InnerProduct metric);

/// Polarisation lies in the cone of the characters.
bool is_semistable(const PolarisedState& s);

/// Polarisation lies in the relative interior of the cone.
bool is_polystable(const PolarisedState& s);

/// ⟨λ, χ⟩ ≥ 0 for every character and ⟨λ, α⟩ = 0. Meaningful for
/// semistable states; this function only evaluates the two conditions.
bool q_filt_contains(const PolarisedState& s, const Filtration& lambda);

/// Restriction of the state to the hyperplane where λ pairs to zero. Same
/// rank, polarisation and metric; requires λ to be a filtration of s.
PolarisedState grad(const PolarisedState& s, const Filtration& lambda);

/// Slice of a semistable state (see SliceResult).
SliceResult slice(const PolarisedState& s);

/// Minimum pairing of λ against the sliced characters; +∞ when the slice is
/// empty. Requires λ to be a filtration of s.
ExtendedRational complementedness(const PolarisedState& s, const Filtration& lambda);

/// The state (M', tight sliced characters, λ∨) where the tight characters
/// pair to exactly 1 with λ and λ∨ is the metric image of λ in the sliced
/// coordinates. Requires complementedness(s, λ) ≥ 1; the intrinsic
/// representative of λ is resolved through the slice embedding.
PolarisedState lambda_state(const PolarisedState& s, const Filtration& lambda);

/// Same as lambda_state but reusing a precomputed slice of s.
PolarisedState lambda_state(const PolarisedState& s, const SliceResult& sl,
                            const Filtration& lambda);

/// Checks the definition of a state morphism exactly: lattice surjectivity
/// on the free quotient, characters mapping into characters-or-zero, the
/// target polarisation lying in the cone of kernel characters, and the
/// metric on the source dual being the restriction of the target one.
MorphismReport validate_morphism(const StateMorphism& m);

/// Image of a filtration of the source under the dual injection. Requires λ
/// to be a filtration of the source.
Filtration push_filtration(const StateMorphism& m, const Filtration& lambda);

/// The induced morphism between associated graded states.
StateMorphism grad_morphism(const StateMorphism& m, const Filtration& lambda);

}  // namespace balfilt
