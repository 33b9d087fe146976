#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace balfilt;
using namespace balfilt::testing;

TEST_CASE("in_cone documented cases and witness reconstruction") {
    auto gens = std::vector<QVec>{vec({1, 0}), vec({1, 1})};
    ConeMembership m = in_cone(gens, vec({2, 1}));
    CHECK(m.member);
    REQUIRE(m.coefficients.has_value());
    QVec rebuilt = zero_vector(2);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        CHECK((*m.coefficients)[i] >= 0);
        rebuilt = add(rebuilt, scale((*m.coefficients)[i], gens[i]));
    }
    CHECK(rebuilt == vec({2, 1}));

    CHECK(!in_cone(gens, vec({0, 1})).member);
    CHECK(in_cone({}, vec({0, 0})).member);
    CHECK(!in_cone({}, vec({1, 0})).member);
    CHECK_THROWS_AS(in_cone({vec({1})}, vec({1, 0})), input_error);
}

TEST_CASE("smallest_face documented cases") {
    auto gens = std::vector<QVec>{vec({1, 0}), vec({1, 1})};
    CHECK(smallest_face(gens, vec({1, 0})) == std::vector<std::size_t>{0});
    CHECK(smallest_face({vec({1, 0}), vec({-1, 0})}, vec({0, 0})) ==
          std::vector<std::size_t>{0, 1});
    CHECK(smallest_face(gens, vec({0, 0})).empty());
    CHECK_THROWS_AS(smallest_face(gens, vec({-1, 0})), input_error);
}

TEST_CASE("smallest_face properties on random cones") {
    RandomStates gen(5);
    for (int trial = 0; trial < 80; ++trial) {
        PolarisedState s = gen.next();
        const auto& gens = s.characters();
        const QVec& alpha = s.polarisation();
        auto face = smallest_face(gens, alpha);
        std::vector<QVec> face_gens;
        for (std::size_t i : face) face_gens.push_back(gens[i]);
        // alpha is a conic combination of the face generators alone, and it
        // lies in the relative interior of the face they span.
        CHECK(in_cone(face_gens, alpha).member);
        CHECK(in_relative_interior(face_gens, alpha));
        // generators off the face have face-LP optimum exactly zero: alpha
        // minus any positive multiple leaves the cone.
        for (std::size_t j = 0; j < gens.size(); ++j) {
            bool in_face = std::find(face.begin(), face.end(), j) != face.end();
            QVec probe = sub(alpha, scale(q(1, 1000), gens[j]));
            if (!in_face) CHECK(!in_cone(gens, probe).member);
        }
    }
}

TEST_CASE("in_relative_interior documented cases") {
    auto gens = std::vector<QVec>{vec({1, 0}), vec({1, 1})};
    CHECK(in_relative_interior(gens, vec({2, 1})));
    CHECK(!in_relative_interior(gens, vec({1, 0})));
    CHECK(in_relative_interior({}, vec({0, 0})));
    CHECK(!in_relative_interior({}, vec({1, 0})));
    CHECK(!in_relative_interior(gens, vec({-1, 0})));
}

TEST_CASE("in_convex_hull documented cases") {
    CHECK(in_convex_hull({vec({1, 0}), vec({0, 1})}, qvec({q(1, 2), q(1, 2)})));
    CHECK(!in_convex_hull({vec({1, 0}), vec({0, 1})}, vec({0, 0})));
    CHECK(in_convex_hull({vec({-1}), vec({1})}, vec({0})));
    CHECK_THROWS_AS(in_convex_hull({}, vec({0})), input_error);
}

TEST_CASE("in_cone agrees with the Fourier-Motzkin oracle") {
    RandomStates gen(13);
    int positives = 0, negatives = 0;
    for (int trial = 0; trial < 120; ++trial) {
        std::size_t dim = std::size_t(gen.pick(1, 3));
        std::size_t n = std::size_t(gen.pick(1, 5));
        std::vector<QVec> gens;
        for (std::size_t k = 0; k < n; ++k) {
            QVec g(dim);
            for (auto& x : g) x = q(gen.pick(-2, 2));
            gens.push_back(std::move(g));
        }
        QVec target(dim);
        for (auto& x : target) x = q(gen.pick(-3, 3));
        bool lp_says = in_cone(gens, target).member;
        bool fm_says = fm_in_cone(gens, target);
        CHECK(lp_says == fm_says);
        (lp_says ? positives : negatives)++;
    }
    CHECK(positives > 5);
    CHECK(negatives > 5);
}

TEST_CASE("shifted-hull membership matches cone membership") {
    // For gamma with <gamma, chi> = 1 on all characters, membership of the
    // origin in the shifted convex hull of the sharped characters is
    // equivalent to flat(gamma) lying in the character cone.
    RandomStates gen(37);
    int agree_true = 0, agree_false = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = std::size_t(gen.pick(2, 4));
        InnerProduct metric{gen.gram(r)};
        QVec gamma(r);
        for (auto& x : gamma) x = gen.rational(3);
        if (is_zero(gamma)) continue;
        Rational gg = dot(gamma, gamma);
        std::size_t n = std::size_t(gen.pick(1, 5));
        std::vector<QVec> chars;
        for (std::size_t k = 0; k < n; ++k) {
            QVec w(r);
            for (auto& x : w) x = gen.rational(2);
            // chi = gamma/(gamma.gamma) + (w - gamma*(gamma.w)/(gamma.gamma))
            QVec chi = add(scale(Rational(1) / gg, gamma),
                           sub(w, scale(Rational(dot(gamma, w) / gg), gamma)));
            CHECK(dot(gamma, chi) == 1);
            chars.push_back(std::move(chi));
        }
        Rational norm_sq = metric.inner(gamma, gamma);
        std::vector<QVec> shifted;
        for (const QVec& chi : chars)
            shifted.push_back(sub(metric.sharp(chi), scale(Rational(1) / norm_sq, gamma)));
        bool hull = in_convex_hull(shifted, zero_vector(r));
        bool cone = in_cone(chars, metric.flat(gamma)).member;
        CHECK(hull == cone);
        (hull ? agree_true : agree_false)++;
    }
    CHECK(agree_true > 10);
    CHECK(agree_false > 10);
}
