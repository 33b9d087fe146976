#include "balfilt/chain.hpp"

#include <set>

namespace balfilt {

ChainTrace balancing_chain(const PolarisedState& s) {
    if (!is_semistable(s)) throw input_error("balancing_chain: state is not semistable");
    ChainTrace trace{slice(s), {}, false, {}};
    PolarisedState current = trace.initial_slice.sliced;
    QMat cumulative = trace.initial_slice.embedding;
    // One terminal step plus at most one step per character of the slice.
    const std::size_t bound = trace.initial_slice.sliced.characters().size() + 1;

    while (trace.steps.size() < bound) {
        ChainStep step{trace.steps.size(), current, balanced_filtration(current), cumulative,
                       {}, std::nullopt, std::nullopt, std::nullopt};
        if (!verify_balanced(current, Filtration{step.balanced.lambda_ambient}))
            throw certification_error("balancing_chain: step failed its certificate");
        step.lambda_original = mul(cumulative, step.balanced.lambda_ambient);

        if (is_zero(step.balanced.lambda_ambient)) {
            if (!step.balanced.slice.sliced.characters().empty())
                throw certification_error("balancing_chain: zero filtration on non-polystable state");
            trace.steps.push_back(std::move(step));
            trace.terminated = true;
            break;
        }

        PolarisedState iterated =
            lambda_state(current, step.balanced.slice, Filtration{step.balanced.lambda_ambient});
        SliceResult next = slice(iterated);

        // Link morphism into the graded state; the underlying lattice map is
        // the slice quotient (the Λ-state shares the lattice of the grade).
        StateMorphism link{next.quotient, next.sliced,
                           grad(current, Filtration{step.balanced.lambda_ambient})};
        MorphismReport link_report = validate_morphism(link);
        if (!link_report.valid)
            throw certification_error("balancing_chain: link morphism failed validation: " +
                                      (link_report.violations.empty()
                                           ? std::string("unknown")
                                           : link_report.violations.front()));

        if (next.sliced.characters().size() >= current.characters().size())
            throw certification_error("balancing_chain: character count failed to decrease");

        step.iterated = std::move(iterated);
        step.link = std::move(link);
        cumulative = mul(cumulative, next.embedding);
        PolarisedState following = next.sliced;
        step.next_slice = std::move(next);
        trace.steps.push_back(std::move(step));
        trace.sequence.terms.push_back(Filtration{trace.steps.back().lambda_original});
        current = std::move(following);
    }
    if (!trace.terminated)
        throw certification_error("balancing_chain: failed to terminate within the bound");
    return trace;
}

SequentialFiltration iterated_balanced(const PolarisedState& s) {
    return balancing_chain(s).sequence;
}

SequentialFiltration iterate_projected(const PolarisedState& s) {
    if (!is_semistable(s)) throw input_error("iterate_projected: state is not semistable");
    const QMat& g = s.metric().gram();
    const std::size_t r = s.rank();

    // Everything below lives in the dual space with its inner product; the
    // characters enter once through sharp and all later pairings are inner
    // products.
    std::vector<QVec> current;
    {
        std::set<QVec> seen;
        for (const QVec& chi : s.characters()) {
            QVec sharped = s.metric().sharp(chi);
            if (seen.insert(sharped).second) current.push_back(std::move(sharped));
        }
    }
    QVec anchor = s.metric().sharp(s.polarisation());
    QMat basis = QMat::identity(r);  // columns span the working subspace

    SequentialFiltration out;
    for (std::size_t round = 0; round <= r + 1; ++round) {
        if (current.empty()) return out;
        // The anchor must sit in the cone: for the first round this is
        // semistability, afterwards it is the guarantee that the previous
        // term lies in the cone of the surviving tight characters.
        if (!in_cone(current, anchor).member) {
            if (round == 0) throw input_error("iterate_projected: state is not semistable");
            throw certification_error(
                "iterate_projected: previous term left the cone of tight characters");
        }
        std::vector<std::size_t> face = smallest_face(current, anchor);
        std::vector<char> in_face(current.size(), 0);
        for (std::size_t i : face) in_face[i] = 1;
        std::vector<QVec> residual;
        for (std::size_t i = 0; i < current.size(); ++i)
            if (!in_face[i]) residual.push_back(current[i]);
        if (residual.empty()) return out;

        // Restrict the subspace to the orthogonal complement of the face.
        if (!face.empty()) {
            QMat rows(face.size(), basis.cols());
            for (std::size_t k = 0; k < face.size(); ++k) {
                QVec paired = mul(transpose(basis), mul(g, current[face[k]]));
                for (std::size_t j = 0; j < basis.cols(); ++j) rows.at(k, j) = paired[j];
            }
            std::vector<QVec> kernel = nullspace(rows);
            basis = mul(basis, QMat::from_columns(kernel));
        }

        // Minimum-norm point of {(λ, χ) ≥ 1} inside the subspace, solved in
        // basis coordinates.
        QMat gram_sub = mul(transpose(basis), mul(g, basis));
        std::vector<QVec> constraint_rows;
        for (const QVec& chi : residual) constraint_rows.push_back(mul(transpose(basis), mul(g, chi)));
        MinNormResult qp = min_norm_point(gram_sub, constraint_rows);
        QVec lambda = mul(basis, qp.point);
        out.terms.push_back(Filtration{lambda});

        // Tight surviving characters, orthogonally projected into the
        // subspace. The projection of a non-face character cannot vanish.
        QVec lambda_paired = mul(g, lambda);
        std::vector<QVec> next;
        std::set<QVec> seen;
        for (const QVec& chi : residual) {
            if (dot(lambda_paired, chi) != 1) continue;
            QVec coords = *solve_linear(gram_sub, mul(transpose(basis), mul(g, chi)));
            QVec projected = mul(basis, coords);
            if (is_zero(projected))
                throw certification_error("iterate_projected: tight character projected to zero");
            if (seen.insert(projected).second) next.push_back(std::move(projected));
        }
        current = std::move(next);
        anchor = lambda;
    }
    throw certification_error("iterate_projected: failed to terminate within the rank bound");
}

bool is_sequential_filtration(const PolarisedState& s, const SequentialFiltration& seq) {
    if (!is_semistable(s)) throw input_error("is_sequential_filtration: state not semistable");
    PolarisedState current = s;
    for (const Filtration& term : seq.terms) {
        if (term.covector.size() != s.rank()) return false;
        if (!q_filt_contains(current, term)) return false;
        current = grad(current, term);
    }
    return true;
}

}  // namespace balfilt
