#include "balfilt/solver.hpp"

#include <algorithm>
#include <optional>

#include "balfilt/parallel.hpp"

namespace balfilt {

namespace {

BalancedResult assemble(SliceResult sl, QVec intrinsic, std::vector<std::size_t> working,
                        std::vector<Rational> multipliers) {
    BalancedResult out{std::move(sl), std::move(intrinsic), {}, {}, {}, Rational(0)};
    out.lambda_ambient = mul(out.slice.embedding, out.lambda_intrinsic);
    out.norm_sq = out.slice.sliced.metric().norm_sq(out.lambda_intrinsic);
    const auto& chars = out.slice.sliced.characters();
    std::vector<Rational> coeff_by_char(chars.size(), Rational(0));
    for (std::size_t k = 0; k < working.size(); ++k)
        coeff_by_char[working[k]] = multipliers[k];
    for (std::size_t i = 0; i < chars.size(); ++i)
        if (dot(out.lambda_intrinsic, chars[i]) == 1) {
            out.active_set.push_back(i);
            out.kkt_coefficients.push_back(coeff_by_char[i]);
        }
    return out;
}

}  // namespace

BalancedResult balanced_filtration(const PolarisedState& s) {
    SliceResult sl = slice(s);
    if (sl.sliced.characters().empty())
        return assemble(std::move(sl), zero_vector(sl.sliced.rank()), {}, {});
    MinNormResult qp = min_norm_point(sl.sliced.metric().gram(), sl.sliced.characters());
    return assemble(std::move(sl), std::move(qp.point), std::move(qp.working_set),
                    std::move(qp.multipliers));
}

bool verify_balanced(const PolarisedState& s, const Filtration& lambda) {
    if (!is_semistable(s)) throw input_error("verify_balanced: state is not semistable");
    if (!q_filt_contains(s, lambda))
        throw input_error("verify_balanced: not a filtration of the state");
    SliceResult sl = slice(s);
    auto intrinsic = solve_linear(sl.embedding, lambda.covector);
    if (!intrinsic)
        throw input_error("verify_balanced: not a filtration of the state");
    std::vector<QVec> tight;
    for (const QVec& chi : sl.sliced.characters()) {
        Rational p = dot(*intrinsic, chi);
        if (p < 1) return false;  // complementedness below 1
        if (p == 1) tight.push_back(chi);
    }
    QVec dual = sl.sliced.metric().flat(*intrinsic);
    return in_cone(tight, dual).member;
}

BalancedResult oracle_balanced(const PolarisedState& s, std::size_t max_characters) {
    SliceResult sl = slice(s);
    const std::vector<QVec>& chars = sl.sliced.characters();
    const std::size_t n = chars.size();
    if (n > max_characters) throw input_error("oracle_balanced: subset budget exceeded");
    if (n == 0) return assemble(std::move(sl), zero_vector(sl.sliced.rank()), {}, {});

    const QMat& gram = sl.sliced.metric().gram();
    const std::size_t d = sl.sliced.rank();
    const std::size_t count = std::size_t(1) << n;

    struct Candidate {
        QVec lambda;
        Rational norm_sq;
    };
    std::vector<std::optional<Candidate>> found(count);
    parallel::for_each_index(count, [&](std::size_t mask) {
        // minimize λᵀGλ subject to ⟨λ, χ⟩ = 1 on the chosen subset; the
        // stationarity system G·λ = Σ cᵢ·χᵢ may be inconsistent or the
        // constraints contradictory, in which case the subset is skipped.
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t(1) << i)) subset.push_back(i);
        QMat kkt(d + subset.size(), d + subset.size());
        QVec rhs(d + subset.size(), Rational(0));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) kkt.at(i, j) = gram.at(i, j);
        for (std::size_t k = 0; k < subset.size(); ++k) {
            for (std::size_t j = 0; j < d; ++j) {
                kkt.at(j, d + k) = Rational(-chars[subset[k]][j]);
                kkt.at(d + k, j) = chars[subset[k]][j];
            }
            rhs[d + k] = 1;
        }
        auto sol = solve_linear(kkt, rhs);
        if (!sol) return;
        QVec lambda(sol->begin(), sol->begin() + d);
        for (std::size_t k = 0; k < subset.size(); ++k)
            if (dot(lambda, chars[subset[k]]) != 1) return;  // inconsistent equalities
        for (const QVec& chi : chars)
            if (dot(lambda, chi) < 1) return;  // infeasible for the full set
        Rational norm_sq = dot(lambda, mul(gram, lambda));
        found[mask] = Candidate{std::move(lambda), std::move(norm_sq)};
    });

    // The optimum's tight set appears among the subsets, so the least norm
    // over feasible candidates is attained by the true minimizer (which is
    // unique; all minimal candidates coincide).
    std::optional<Candidate> best;
    for (std::size_t mask = 0; mask < count; ++mask) {
        if (!found[mask]) continue;
        if (!best || found[mask]->norm_sq < best->norm_sq) best = found[mask];
    }
    if (!best) throw certification_error("oracle_balanced: no feasible candidate found");

    // Reconstruct certificate coefficients through the cone membership LP.
    std::vector<QVec> tight;
    std::vector<std::size_t> tight_idx;
    for (std::size_t i = 0; i < n; ++i)
        if (dot(best->lambda, chars[i]) == 1) {
            tight.push_back(chars[i]);
            tight_idx.push_back(i);
        }
    QVec dual = mul(gram, best->lambda);
    ConeMembership cm = in_cone(tight, dual);
    if (!cm.member)
        throw certification_error("oracle_balanced: optimum fails its own certificate");
    std::vector<Rational> mult(cm.coefficients->begin(), cm.coefficients->end());
    return assemble(std::move(sl), std::move(best->lambda), std::move(tight_idx),
                    std::move(mult));
}

}  // namespace balfilt
