#include <doctest.h>

#include "support.hpp"

using namespace balfilt;
using namespace balfilt::testing;

namespace {

// Re-derives the certificate from scratch: feasibility against the sliced
// characters, tight minimum, and the conic reconstruction of flat(lambda).
void check_certificate(const PolarisedState& s, const BalancedResult& b) {
    const auto& chars = b.slice.sliced.characters();
    REQUIRE(b.active_set.size() == b.kkt_coefficients.size());
    bool tight = chars.empty();
    for (std::size_t i = 0; i < chars.size(); ++i) {
        Rational p = dot(b.lambda_intrinsic, chars[i]);
        CHECK(p >= 1);
        if (p == 1) tight = true;
    }
    CHECK(tight);  // the minimum pairing is exactly one unless the slice is empty
    QVec flat = b.slice.sliced.metric().flat(b.lambda_intrinsic);
    QVec rebuilt = zero_vector(b.slice.sliced.rank());
    for (std::size_t k = 0; k < b.active_set.size(); ++k) {
        CHECK(b.kkt_coefficients[k] >= 0);
        CHECK(dot(b.lambda_intrinsic, chars[b.active_set[k]]) == 1);
        rebuilt = add(rebuilt, scale(b.kkt_coefficients[k], chars[b.active_set[k]]));
    }
    CHECK(rebuilt == flat);
    CHECK(b.norm_sq == b.slice.sliced.metric().norm_sq(b.lambda_intrinsic));
    CHECK(b.lambda_ambient == mul(b.slice.embedding, b.lambda_intrinsic));
    CHECK(verify_balanced(s, Filtration{b.lambda_ambient}));
}

}  // namespace

TEST_CASE("balanced filtration of the worked example") {
    PolarisedState s = example_state();
    BalancedResult b = balanced_filtration(s);
    CHECK(b.lambda_intrinsic == vec({1, 0}));
    CHECK(b.lambda_ambient == vec({1, 0}));
    CHECK(b.active_set == std::vector<std::size_t>{0, 1});
    CHECK(b.norm_sq == q(1));
    check_certificate(s, b);

    // the sliced rank-1 stage: single character (1), minimum-norm point 1
    PolarisedState stage(1, {vec({1})}, vec({0}), InnerProduct::standard(1));
    BalancedResult b1 = balanced_filtration(stage);
    CHECK(b1.lambda_intrinsic == vec({1}));
    check_certificate(stage, b1);

    // single constraint in rank 2: closed form chi/|chi|^2
    PolarisedState two(2, {vec({2, 0})}, vec({0, 0}), InnerProduct::standard(2));
    BalancedResult b2 = balanced_filtration(two);
    CHECK(b2.lambda_intrinsic == qvec({q(1, 2), q(0)}));
    check_certificate(two, b2);
}

TEST_CASE("verify_balanced on the documented cases") {
    PolarisedState s = example_state();
    CHECK(verify_balanced(s, Filtration{vec({1, 0})}));
    CHECK(!verify_balanced(s, Filtration{vec({1, 1})}));  // feasible but not minimal
    PolarisedState poly(2, {vec({1, 0}), vec({-1, 0})}, vec({0, 0}), InnerProduct::standard(2));
    CHECK(verify_balanced(poly, Filtration{vec({0, 0})}));
    CHECK_THROWS_AS(verify_balanced(s, Filtration{vec({0, -1})}), input_error);
}

TEST_CASE("oracle on the documented cases") {
    CHECK(oracle_balanced(example_state()).lambda_intrinsic == vec({1, 0}));
    PolarisedState poly(2, {vec({1, 0}), vec({-1, 0})}, vec({0, 0}), InnerProduct::standard(2));
    CHECK(is_zero(oracle_balanced(poly).lambda_intrinsic));
    PolarisedState axes(2, {vec({1, 0}), vec({0, 1})}, vec({0, 0}), InnerProduct::standard(2));
    CHECK(oracle_balanced(axes).lambda_intrinsic == vec({1, 1}));
    PolarisedState big(1, {vec({1})}, vec({0}), InnerProduct::standard(1));
    CHECK_THROWS_AS(oracle_balanced(big, 0), input_error);  // budget exceeded
}

TEST_CASE("solver equals oracle on the random suite") {
    RandomStates gen(67);
    for (int trial = 0; trial < 250; ++trial) {
        PolarisedState s = gen.next();
        BalancedResult fast = balanced_filtration(s);
        BalancedResult slow = oracle_balanced(s);
        CHECK(fast.lambda_intrinsic == slow.lambda_intrinsic);
        CHECK(fast.lambda_ambient == slow.lambda_ambient);
        check_certificate(s, fast);
    }
}

TEST_CASE("certificate rejects feasible perturbations") {
    RandomStates gen(71);
    int checked = 0;
    while (checked < 60) {
        PolarisedState s = gen.next();
        BalancedResult b = balanced_filtration(s);
        const auto& chars = b.slice.sliced.characters();
        if (chars.empty()) continue;
        QVec v(b.slice.sliced.rank());
        for (auto& x : v) x = gen.rational(2);
        QVec perturbed = add(b.lambda_intrinsic, scale(q(1, gen.pick(2, 7)), v));
        Rational min_pairing(0);
        bool first = true;
        for (const QVec& chi : chars) {
            Rational p = dot(perturbed, chi);
            if (first || p < min_pairing) min_pairing = p;
            first = false;
        }
        if (min_pairing <= 0) continue;
        // re-feasibilise: scale so the minimum pairing is exactly one
        QVec candidate = scale(Rational(1) / min_pairing, perturbed);
        if (candidate == b.lambda_intrinsic) continue;
        CHECK(!verify_balanced(s, Filtration{mul(b.slice.embedding, candidate)}));
        ++checked;
    }
}

TEST_CASE("balanced filtration is zero exactly on polystable states") {
    RandomStates gen(73);
    for (int trial = 0; trial < 80; ++trial) {
        PolarisedState s = gen.next();
        BalancedResult b = balanced_filtration(s);
        CHECK(is_zero(b.lambda_ambient) == is_polystable(s));
    }
}

TEST_CASE("uniform metric scaling leaves the minimizer unchanged") {
    RandomStates gen(79);
    for (int trial = 0; trial < 40; ++trial) {
        PolarisedState s = gen.next();
        Rational c(Int(gen.pick(1, 6)), Int(gen.pick(1, 4)));
        PolarisedState scaled(s.rank(), s.characters(), s.polarisation(),
                              InnerProduct(scale(c, s.metric().gram())));
        CHECK(balanced_filtration(s).lambda_ambient ==
              balanced_filtration(scaled).lambda_ambient);
    }
}

TEST_CASE("non-semistable states are rejected") {
    PolarisedState bad(2, {vec({1, 0})}, vec({0, 1}), InnerProduct::standard(2));
    CHECK_THROWS_AS(balanced_filtration(bad), input_error);
    CHECK_THROWS_AS(oracle_balanced(bad), input_error);
    CHECK_THROWS_AS(verify_balanced(bad, Filtration{vec({0, 0})}), input_error);
}

TEST_CASE("degenerate instances: many characters tight on one hyperplane") {
    // Characters with first coordinate 1 make every constraint tight at a
    // candidate minimizer, the worst case for active-set bookkeeping.
    RandomStates gen(113);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = std::size_t(gen.pick(2, 4));
        std::size_t n = std::size_t(gen.pick(4, 9));
        std::vector<QVec> chars;
        for (std::size_t k = 0; k < n; ++k) {
            QVec chi(r);
            chi[0] = 1;
            for (std::size_t i = 1; i < r; ++i) chi[i] = q(gen.pick(-3, 3));
            chars.push_back(std::move(chi));
        }
        PolarisedState s(r, chars, zero_vector(r), InnerProduct(gen.gram(r)));
        BalancedResult fast = balanced_filtration(s);
        BalancedResult slow = oracle_balanced(s, 12);
        CHECK(fast.lambda_intrinsic == slow.lambda_intrinsic);
        CHECK(verify_balanced(s, Filtration{fast.lambda_ambient}));
        CHECK(iterate_projected(s) == iterated_balanced(s));
    }
}

TEST_CASE("larger instances against the oracle") {
    RandomStates gen(127);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = std::size_t(gen.pick(2, 4));
        std::size_t n = std::size_t(gen.pick(7, 10));
        std::vector<QVec> chars;
        for (std::size_t k = 0; k < n; ++k) {
            QVec chi(r);
            bool zero = true;
            for (auto& x : chi) {
                x = q(gen.pick(-3, 3));
                if (x != 0) zero = false;
            }
            if (!zero) chars.push_back(std::move(chi));
        }
        if (chars.empty()) continue;
        QVec alpha = zero_vector(r);
        if (gen.pick(0, 1)) alpha = chars[0];
        PolarisedState s(r, chars, alpha, InnerProduct(gen.gram(r)));
        BalancedResult fast = balanced_filtration(s);
        BalancedResult slow = oracle_balanced(s, 12);
        CHECK(fast.lambda_intrinsic == slow.lambda_intrinsic);
    }
}
