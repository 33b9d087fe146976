#include "balfilt/states.hpp"

#include <algorithm>
#include <set>

namespace balfilt {

namespace {

void require_integer_vector(const QVec& v, const char* what) {
    for (const Rational& x : v)
        if (!is_integer(x)) throw input_error(std::string(what) + ": entries must be integers");
}

Rational pairing(const QVec& lambda, const QVec& chi) { return dot(lambda, chi); }

}  // namespace

PolarisedState::PolarisedState(std::size_t rank, std::vector<QVec> characters, QVec polarisation,
                               InnerProduct metric)
    : rank_(rank), polarisation_(std::move(polarisation)), metric_(std::move(metric)) {
    if (metric_.dim() != rank_) throw input_error("state: metric dimension != rank");
    if (polarisation_.size() != rank_) throw input_error("state: polarisation length != rank");
    std::set<QVec> seen;
    for (auto& chi : characters) {
        if (chi.size() != rank_) throw input_error("state: character length != rank");
        require_integer_vector(chi, "state character");
        if (is_zero(chi)) throw input_error("state: zero character");
        if (seen.insert(chi).second) characters_.push_back(std::move(chi));
    }
}

bool PolarisedState::operator==(const PolarisedState& other) const {
    return rank_ == other.rank_ && characters_ == other.characters_ &&
           polarisation_ == other.polarisation_ && metric_ == other.metric_;
}

PolarisedState state_of_point(const QMat& weights, const QVec& coordinates, QVec polarisation,
                              InnerProduct metric) {
    if (weights.rows() != coordinates.size())
        throw input_error("state_of_point: one coordinate per weight row required");
    std::vector<QVec> characters;
    for (std::size_t i = 0; i < weights.rows(); ++i) {
        if (coordinates[i] == 0) continue;
        QVec row = weights.row(i);
        if (is_zero(row)) continue;  // the zero weight contributes nothing
        characters.push_back(std::move(row));
    }
    return PolarisedState(weights.cols(), std::move(characters), std::move(polarisation),
                          std::move(metric));
}

bool is_semistable(const PolarisedState& s) {
    return in_cone(s.characters(), s.polarisation()).member;
}

bool is_polystable(const PolarisedState& s) {
    return in_relative_interior(s.characters(), s.polarisation());
}

bool q_filt_contains(const PolarisedState& s, const Filtration& lambda) {
    if (lambda.covector.size() != s.rank())
        throw input_error("filtration length does not match state rank");
    for (const QVec& chi : s.characters())
        if (pairing(lambda.covector, chi) < 0) return false;
    return pairing(lambda.covector, s.polarisation()) == 0;
}

PolarisedState grad(const PolarisedState& s, const Filtration& lambda) {
    if (!q_filt_contains(s, lambda)) throw input_error("grad: not a filtration of the state");
    std::vector<QVec> kept;
    for (const QVec& chi : s.characters())
        if (pairing(lambda.covector, chi) == 0) kept.push_back(chi);
    return PolarisedState(s.rank(), std::move(kept), s.polarisation(), s.metric());
}

SliceResult slice(const PolarisedState& s) {
    if (!is_semistable(s)) throw input_error("slice: state is not semistable");
    std::vector<std::size_t> face = smallest_face(s.characters(), s.polarisation());

    std::vector<QVec> face_chars;
    for (std::size_t i : face) face_chars.push_back(s.characters()[i]);
    std::vector<QVec> kernel_basis = row_space_basis(QMat::from_rows(face_chars));

    // Quotient by the saturation of the face span: an integer basis of the
    // annihilator lattice gives a surjection onto the free quotient.
    QMat quotient = face.empty() ? QMat::identity(s.rank())
                                 : integer_left_kernel(QMat::from_columns(face_chars));
    QMat embedding = transpose(quotient);

    std::vector<char> in_face(s.characters().size(), 0);
    for (std::size_t i : face) in_face[i] = 1;
    std::vector<QVec> sliced_chars;
    std::vector<std::size_t> origin;
    std::set<QVec> seen;
    for (std::size_t i = 0; i < s.characters().size(); ++i) {
        if (in_face[i]) continue;
        QVec image = mul(quotient, s.characters()[i]);
        if (seen.insert(image).second) {
            sliced_chars.push_back(std::move(image));
            origin.push_back(i);
        }
    }

    QMat restricted = mul(quotient, mul(s.metric().gram(), embedding));
    PolarisedState sliced(quotient.rows(), std::move(sliced_chars),
                          zero_vector(quotient.rows()), InnerProduct(std::move(restricted)));
    return SliceResult{std::move(face), std::move(kernel_basis), std::move(sliced),
                       std::move(quotient), std::move(embedding), std::move(origin)};
}

ExtendedRational complementedness(const PolarisedState& s, const Filtration& lambda) {
    if (!q_filt_contains(s, lambda))
        throw input_error("complementedness: not a filtration of the state");
    // Pairings against sliced characters agree with pairings against their
    // lifts, so the minimum can be taken over the non-face characters.
    SliceResult sl = slice(s);
    std::vector<char> in_face(s.characters().size(), 0);
    for (std::size_t i : sl.face) in_face[i] = 1;
    bool found = false;
    Rational best(0);
    for (std::size_t i = 0; i < s.characters().size(); ++i) {
        if (in_face[i]) continue;
        Rational p = pairing(lambda.covector, s.characters()[i]);
        if (!found || p < best) {
            best = p;
            found = true;
        }
    }
    if (!found) return ExtendedRational::infinity();
    return ExtendedRational::finite(best);
}

PolarisedState lambda_state(const PolarisedState& s, const SliceResult& sl,
                            const Filtration& lambda) {
    auto intrinsic = solve_linear(sl.embedding, lambda.covector);
    if (!intrinsic || !q_filt_contains(s, lambda))
        throw input_error("lambda_state: not a filtration of the state");
    std::vector<QVec> tight;
    Rational one(1);
    for (const QVec& chi : sl.sliced.characters()) {
        Rational p = pairing(*intrinsic, chi);
        if (p < one) throw input_error("lambda_state: complementedness below 1");
        if (p == one) tight.push_back(chi);
    }
    QVec dual = sl.sliced.metric().flat(*intrinsic);
    return PolarisedState(sl.sliced.rank(), std::move(tight), std::move(dual),
                          sl.sliced.metric());
}

PolarisedState lambda_state(const PolarisedState& s, const Filtration& lambda) {
    return lambda_state(s, slice(s), lambda);
}

MorphismReport validate_morphism(const StateMorphism& m) {
    MorphismReport report;
    auto violate = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

    if (m.matrix.rows() != m.source.rank() || m.matrix.cols() != m.target.rank()) {
        violate("matrix shape does not match source/target ranks");
        return report;
    }
    for (std::size_t i = 0; i < m.matrix.rows(); ++i)
        for (std::size_t j = 0; j < m.matrix.cols(); ++j)
            if (!is_integer(m.matrix.at(i, j))) {
                violate("matrix has non-integer entries");
                return report;
            }
    if (!is_semistable(m.source)) violate("source state is not semistable");
    if (!is_semistable(m.target)) violate("target state is not semistable");
    if (!is_surjective_lattice_map(m.matrix))
        violate("lattice map is not surjective onto the free quotient");

    std::set<QVec> source_chars(m.source.characters().begin(), m.source.characters().end());
    std::vector<QVec> kernel_chars;
    for (const QVec& chi : m.target.characters()) {
        QVec image = mul(m.matrix, chi);
        if (is_zero(image)) {
            kernel_chars.push_back(chi);
            continue;
        }
        if (!source_chars.count(image))
            violate("character maps outside the source characters and is nonzero");
    }
    if (!in_cone(kernel_chars, m.target.polarisation()).member)
        violate("target polarisation is not in the cone of kernel characters");

    QMat restricted = mul(m.matrix, mul(m.target.metric().gram(), transpose(m.matrix)));
    if (!(restricted == m.source.metric().gram()))
        violate("source metric is not the restriction of the target metric");

    report.valid = report.violations.empty();
    return report;
}

Filtration push_filtration(const StateMorphism& m, const Filtration& lambda) {
    if (!q_filt_contains(m.source, lambda))
        throw input_error("push_filtration: not a filtration of the source");
    return Filtration{mul(transpose(m.matrix), lambda.covector)};
}

StateMorphism grad_morphism(const StateMorphism& m, const Filtration& lambda) {
    Filtration pushed = push_filtration(m, lambda);
    return StateMorphism{m.matrix, grad(m.source, lambda), grad(m.target, pushed)};
}

}  // namespace balfilt
