#include "balfilt/cone.hpp"

#include <algorithm>
#include <map>

#include "balfilt/parallel.hpp"

namespace balfilt {

namespace {

std::size_t check_common_length(const std::vector<QVec>& vecs, const QVec& target) {
    for (const QVec& v : vecs)
        if (v.size() != target.size()) throw input_error("cone: vector length mismatch");
    return target.size();
}

// maximize μ ≥ 0 such that α − μ·χ stays in the cone. Positive or unbounded
// optimum means χ generates into the smallest face containing α.
bool generator_in_face(const std::vector<QVec>& generators, const QVec& alpha, const QVec& chi) {
    const std::size_t dim = alpha.size();
    const std::size_t n = generators.size();
    LpProblem lp;
    lp.objective = zero_vector(n + 1);
    lp.objective[n] = 1;
    lp.constraints = QMat(dim, n + 1);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < n; ++j) lp.constraints.at(i, j) = generators[j][i];
        lp.constraints.at(i, n) = chi[i];
    }
    lp.senses.assign(dim, Sense::Equal);
    lp.rhs = alpha;
    lp.signs.assign(n + 1, VarSign::NonNegative);
    LpOutcome out = lp_solve(lp);
    if (out.status == LpStatus::Unbounded) return true;
    return out.status == LpStatus::Optimal && out.value > 0;
}

}  // namespace

ConeMembership in_cone(const std::vector<QVec>& generators, const QVec& target) {
    check_common_length(generators, target);
    if (generators.empty()) {
        if (is_zero(target)) return {true, QVec{}};
        return {false, std::nullopt};
    }
    const std::size_t dim = target.size();
    const std::size_t n = generators.size();
    LpProblem lp;
    lp.objective = zero_vector(n);
    lp.constraints = QMat(dim, n);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < n; ++j) lp.constraints.at(i, j) = generators[j][i];
    lp.senses.assign(dim, Sense::Equal);
    lp.rhs = target;
    lp.signs.assign(n, VarSign::NonNegative);
    LpOutcome out = lp_solve(lp);
    if (out.status != LpStatus::Optimal) return {false, std::nullopt};
    return {true, out.witness};
}

std::vector<std::size_t> smallest_face(const std::vector<QVec>& generators, const QVec& alpha) {
    check_common_length(generators, alpha);
    if (!in_cone(generators, alpha).member)
        throw input_error("smallest_face: point not in the cone");
    // One LP per distinct generator; duplicates share the verdict. The LPs
    // are independent, so they run through the parallel loop.
    std::vector<QVec> distinct;
    std::map<QVec, std::size_t> seen;
    std::vector<std::size_t> which(generators.size());
    for (std::size_t j = 0; j < generators.size(); ++j) {
        auto [it, fresh] = seen.try_emplace(generators[j], distinct.size());
        if (fresh) distinct.push_back(generators[j]);
        which[j] = it->second;
    }
    std::vector<char> in_face(distinct.size(), 0);
    parallel::for_each_index(distinct.size(), [&](std::size_t k) {
        in_face[k] = generator_in_face(generators, alpha, distinct[k]) ? 1 : 0;
    });
    std::vector<std::size_t> face;
    for (std::size_t j = 0; j < generators.size(); ++j)
        if (in_face[which[j]]) face.push_back(j);
    return face;
}

bool in_relative_interior(const std::vector<QVec>& generators, const QVec& alpha) {
    check_common_length(generators, alpha);
    if (generators.empty()) return is_zero(alpha);
    if (!in_cone(generators, alpha).member) return false;
    return smallest_face(generators, alpha).size() == generators.size();
}

bool in_convex_hull(const std::vector<QVec>& points, const QVec& target) {
    if (points.empty()) throw input_error("in_convex_hull: empty point set");
    check_common_length(points, target);
    const std::size_t dim = target.size();
    const std::size_t n = points.size();
    LpProblem lp;
    lp.objective = zero_vector(n);
    lp.constraints = QMat(dim + 1, n);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < n; ++j) lp.constraints.at(i, j) = points[j][i];
    for (std::size_t j = 0; j < n; ++j) lp.constraints.at(dim, j) = 1;
    lp.senses.assign(dim + 1, Sense::Equal);
    lp.rhs = target;
    lp.rhs.push_back(Rational(1));
    lp.signs.assign(n, VarSign::NonNegative);
    return lp_solve(lp).status == LpStatus::Optimal;
}

}  // namespace balfilt
