#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace balfilt;
using namespace balfilt::testing;

TEST_CASE("state construction invariants") {
    CHECK_THROWS_AS(PolarisedState(2, {vec({0, 0})}, vec({0, 0}), InnerProduct::standard(2)),
                    input_error);
    CHECK_THROWS_AS(PolarisedState(2, {qvec({q(1, 2), q(0)})}, vec({0, 0}),
                                   InnerProduct::standard(2)),
                    input_error);
    PolarisedState dedup(2, {vec({1, 0}), vec({1, 0}), vec({1, 1})}, vec({0, 0}),
                         InnerProduct::standard(2));
    CHECK(dedup.characters().size() == 2);
}

TEST_CASE("state_of_point") {
    QMat weights = mat({{1, 0}, {1, 1}, {0, 0}, {1, 0}});
    PolarisedState s =
        state_of_point(weights, vec({1, 1, 5, 0}), vec({0, 0}), InnerProduct::standard(2));
    CHECK(s.characters() == std::vector<QVec>{vec({1, 0}), vec({1, 1})});

    PolarisedState empty =
        state_of_point(weights, vec({0, 0, 0, 0}), vec({0, 0}), InnerProduct::standard(2));
    CHECK(empty.characters().empty());

    PolarisedState single =
        state_of_point(mat({{2, 1}}), vec({7}), vec({0, 0}), InnerProduct::standard(2));
    CHECK(single.characters() == std::vector<QVec>{vec({2, 1})});
}

TEST_CASE("semistability and polystability") {
    CHECK(is_semistable(example_state()));
    CHECK(!is_semistable(PolarisedState(2, {vec({1, 0}), vec({0, 1})}, vec({1, -1}),
                                        InnerProduct::standard(2))));
    CHECK(is_semistable(PolarisedState(1, {vec({1})}, vec({0}), InnerProduct::standard(1))));

    CHECK(is_polystable(PolarisedState(2, {vec({1, 0}), vec({-1, 0})}, vec({0, 0}),
                                       InnerProduct::standard(2))));
    CHECK(!is_polystable(example_state()));
    CHECK(is_polystable(PolarisedState(2, {vec({1, 0}), vec({1, 1})}, vec({2, 1}),
                                       InnerProduct::standard(2))));
}

TEST_CASE("q_filt_contains") {
    PolarisedState s = example_state();
    CHECK(q_filt_contains(s, Filtration{vec({1, 0})}));
    CHECK(!q_filt_contains(s, Filtration{vec({0, -1})}));
    CHECK(q_filt_contains(s, Filtration{vec({0, 0})}));
}

TEST_CASE("grad") {
    PolarisedState s = example_state();
    CHECK(grad(s, Filtration{vec({0, 0})}) == s);
    PolarisedState g = grad(s, Filtration{vec({0, 1})});
    CHECK(g.characters() == std::vector<QVec>{vec({1, 0})});
    CHECK(grad(s, Filtration{vec({1, 0})}).characters().empty());
    CHECK_THROWS_AS(grad(s, Filtration{vec({0, -1})}), input_error);
}

TEST_CASE("grad preserves semistability") {
    RandomStates gen(41);
    for (int trial = 0; trial < 60; ++trial) {
        PolarisedState s = gen.next();
        Filtration f = random_filtration(gen, s);
        REQUIRE(q_filt_contains(s, f));
        CHECK(is_semistable(grad(s, f)));
    }
}

TEST_CASE("slice of the worked example") {
    PolarisedState s = example_state();
    SliceResult sl = slice(s);
    CHECK(sl.face.empty());
    CHECK(sl.sliced == s);
    CHECK(sl.quotient == QMat::identity(2));

    PolarisedState iterated(2, {vec({1, 0}), vec({1, 1})}, vec({1, 0}),
                            InnerProduct::standard(2));
    SliceResult sl2 = slice(iterated);
    CHECK(sl2.face == std::vector<std::size_t>{0});
    CHECK(sl2.sliced.rank() == 1);
    CHECK(sl2.sliced.characters() == std::vector<QVec>{vec({1})});
    CHECK(is_zero(sl2.sliced.polarisation()));
    // embedding column spans the annihilator of (1,0): +-(0,1)
    CHECK(sl2.embedding.rows() == 2);
    CHECK(sl2.embedding.at(0, 0) == 0);
    CHECK(abs(numerator(sl2.embedding.at(1, 0))) == 1);

    PolarisedState poly(2, {vec({1, 0}), vec({-1, 0})}, vec({0, 0}), InnerProduct::standard(2));
    SliceResult sl3 = slice(poly);
    CHECK(sl3.face.size() == 2);
    CHECK(sl3.sliced.characters().empty());
    CHECK_THROWS_AS(slice(PolarisedState(2, {vec({1, 0})}, vec({-1, 0}),
                                         InnerProduct::standard(2))),
                    input_error);
}

TEST_CASE("slice invariants on the random suite") {
    RandomStates gen(43);
    for (int trial = 0; trial < 60; ++trial) {
        PolarisedState s = gen.next();
        SliceResult sl = slice(s);
        CHECK(is_semistable(sl.sliced));
        CHECK(is_zero(sl.sliced.polarisation()));
        CHECK(sl.sliced.characters().empty() == is_polystable(s));
        // embedding columns annihilate the kernel basis
        for (const QVec& k : sl.kernel_basis)
            for (std::size_t j = 0; j < sl.embedding.cols(); ++j)
                CHECK(dot(sl.embedding.column(j), k) == 0);
        // the sliced metric is the restriction along the embedding
        QMat expected = mul(transpose(sl.embedding), mul(s.metric().gram(), sl.embedding));
        CHECK(sl.sliced.metric().gram() == expected);
        // a slice is its own slice
        SliceResult again = slice(sl.sliced);
        CHECK(again.face.empty());
        CHECK(again.sliced == sl.sliced);
    }
}

TEST_CASE("filtrations round-trip through the slice bijection") {
    RandomStates gen(47);
    for (int trial = 0; trial < 50; ++trial) {
        PolarisedState s = gen.next();
        SliceResult sl = slice(s);
        StateMorphism q_mor{sl.quotient, sl.sliced, s};
        REQUIRE(validate_morphism(q_mor).valid);

        // down: a filtration of s has a unique intrinsic representative
        Filtration lf = random_filtration(gen, s);
        auto down = solve_linear(sl.embedding, lf.covector);
        REQUIRE(down.has_value());
        CHECK(q_filt_contains(sl.sliced, Filtration{*down}));
        // up: pushing it back along the slice morphism returns the original
        CHECK(push_filtration(q_mor, Filtration{*down}).covector == lf.covector);

        // up from a random sliced filtration, then down again
        Filtration lg = random_filtration(gen, sl.sliced);
        Filtration up = push_filtration(q_mor, lg);
        CHECK(q_filt_contains(s, up));
        auto back = solve_linear(sl.embedding, up.covector);
        REQUIRE(back.has_value());
        CHECK(*back == lg.covector);
    }
}

TEST_CASE("complementedness") {
    PolarisedState s = example_state();
    CHECK(complementedness(s, Filtration{vec({1, 0})}) == ExtendedRational::finite(q(1)));
    CHECK(complementedness(s, Filtration{vec({2, 0})}) == ExtendedRational::finite(q(2)));
    PolarisedState poly(2, {vec({1, 0}), vec({-1, 0})}, vec({0, 0}), InnerProduct::standard(2));
    CHECK(complementedness(poly, Filtration{vec({0, 0})}).infinite);
    CHECK_THROWS_AS(complementedness(s, Filtration{vec({0, -1})}), input_error);
}

TEST_CASE("complementedness is positively linear in the filtration") {
    RandomStates gen(53);
    for (int trial = 0; trial < 40; ++trial) {
        PolarisedState s = gen.next();
        Filtration f = random_filtration(gen, s);
        Rational c = Rational(Int(gen.pick(1, 5)), Int(gen.pick(1, 3)));
        ExtendedRational a = complementedness(s, f);
        ExtendedRational b = complementedness(s, Filtration{scale(c, f.covector)});
        if (a.infinite)
            CHECK(b.infinite);
        else
            CHECK(b.value == Rational(c * a.value));
    }
}

TEST_CASE("lambda_state") {
    PolarisedState s = example_state();
    PolarisedState ls = lambda_state(s, Filtration{vec({1, 0})});
    CHECK(ls.rank() == 2);
    CHECK(ls.characters() == std::vector<QVec>{vec({1, 0}), vec({1, 1})});
    CHECK(ls.polarisation() == vec({1, 0}));

    PolarisedState two(2, {vec({2, 0})}, vec({0, 0}), InnerProduct::standard(2));
    PolarisedState ls2 = lambda_state(two, Filtration{qvec({q(1, 2), q(0)})});
    CHECK(ls2.characters() == std::vector<QVec>{vec({2, 0})});
    CHECK(ls2.polarisation() == qvec({q(1, 2), q(0)}));

    PolarisedState poly(2, {vec({1, 0}), vec({-1, 0})}, vec({0, 0}), InnerProduct::standard(2));
    PolarisedState ls3 = lambda_state(poly, Filtration{vec({0, 0})});
    CHECK(ls3.characters().empty());
    CHECK(is_zero(ls3.polarisation()));

    CHECK_THROWS_AS(lambda_state(two, Filtration{qvec({q(1, 4), q(0)})}), input_error);
}

TEST_CASE("lambda_state characters sit inside the slice and pair to one") {
    RandomStates gen(59);
    int nontrivial = 0;
    for (int trial = 0; trial < 600 && nontrivial < 12; ++trial) {
        PolarisedState s = gen.next();
        SliceResult sl = slice(s);
        if (sl.sliced.characters().empty()) continue;
        Filtration intrinsic = random_filtration(gen, sl.sliced);
        ExtendedRational c = complementedness(sl.sliced, intrinsic);
        if (c.infinite || c.value <= 0) continue;
        // rescale to make the minimum pairing exactly 1
        Filtration scaled{scale(Rational(1) / c.value, intrinsic.covector)};
        PolarisedState ls = lambda_state(sl.sliced, scaled);
        ++nontrivial;
        for (const QVec& chi : ls.characters()) {
            CHECK(std::find(sl.sliced.characters().begin(), sl.sliced.characters().end(), chi) !=
                  sl.sliced.characters().end());
            CHECK(dot(scaled.covector, chi) == 1);
        }
        CHECK(!ls.characters().empty());  // the minimum is attained
        CHECK(ls.polarisation() == sl.sliced.metric().flat(scaled.covector));
    }
    CHECK(nontrivial > 10);
}

TEST_CASE("morphism validation") {
    PolarisedState s = example_state();
    // identity on a state with zero polarisation is a morphism
    StateMorphism ident{QMat::identity(2), s, s};
    CHECK(validate_morphism(ident).valid);

    // identity on a state with nonzero polarisation fails the kernel-cone
    // condition: no characters die, so the cone is {0}
    PolarisedState pol(2, {vec({1, 0}), vec({1, 1})}, vec({1, 0}), InnerProduct::standard(2));
    StateMorphism bad{QMat::identity(2), pol, pol};
    MorphismReport rep = validate_morphism(bad);
    CHECK(!rep.valid);
    CHECK(!rep.violations.empty());

    // non-surjective lattice map
    StateMorphism doubled{scale(q(2), QMat::identity(2)), s, s};
    CHECK(!validate_morphism(doubled).valid);

    // metric mismatch
    PolarisedState scaled(2, {vec({1, 0}), vec({1, 1})}, vec({0, 0}),
                          InnerProduct{mat({{2, 0}, {0, 2}})});
    CHECK(!validate_morphism(StateMorphism{QMat::identity(2), scaled, s}).valid);
}

TEST_CASE("push_filtration along the slice embedding") {
    PolarisedState iterated(2, {vec({1, 0}), vec({1, 1})}, vec({1, 0}),
                            InnerProduct::standard(2));
    SliceResult sl = slice(iterated);
    StateMorphism q_mor{sl.quotient, sl.sliced, iterated};
    REQUIRE(validate_morphism(q_mor).valid);
    Filtration pushed = push_filtration(q_mor, Filtration{vec({1})});
    // the rank-1 filtration (1) lands on the annihilator line of (1,0)
    CHECK(pushed.covector[0] == 0);
    CHECK(abs(numerator(pushed.covector[1])) == 1);

    StateMorphism ident{QMat::identity(2), example_state(), example_state()};
    Filtration f{vec({1, 0})};
    CHECK(push_filtration(ident, f).covector == f.covector);
    CHECK(push_filtration(ident, Filtration{vec({0, 0})}).covector == vec({0, 0}));
    CHECK_THROWS_AS(push_filtration(ident, Filtration{vec({0, -1})}), input_error);
}

TEST_CASE("grad_morphism") {
    PolarisedState s = example_state();
    StateMorphism ident{QMat::identity(2), s, s};
    StateMorphism g0 = grad_morphism(ident, Filtration{vec({0, 0})});
    CHECK(g0.source == s);
    CHECK(g0.target == s);
    CHECK(validate_morphism(g0).valid);

    StateMorphism g1 = grad_morphism(ident, Filtration{vec({0, 1})});
    CHECK(g1.source.characters() == std::vector<QVec>{vec({1, 0})});
    CHECK(g1.target.characters() == std::vector<QVec>{vec({1, 0})});
    CHECK(validate_morphism(g1).valid);
}

TEST_CASE("grad_morphism along a slice keeps exactly the face characters") {
    PolarisedState iterated(2, {vec({1, 0}), vec({1, 1})}, vec({1, 0}),
                            InnerProduct::standard(2));
    SliceResult sl = slice(iterated);
    StateMorphism q_mor{sl.quotient, sl.sliced, iterated};
    // a filtration pairing strictly positively with every sliced character
    // grades the source down to nothing and the target down to the face
    Filtration lam{vec({1})};
    StateMorphism g = grad_morphism(q_mor, lam);
    CHECK(g.source.characters().empty());
    CHECK(g.target.characters() == std::vector<QVec>{vec({1, 0})});
    CHECK(validate_morphism(g).valid);
}

TEST_CASE("unimodular change of coordinates transports every output") {
    RandomStates gen(61);
    for (int trial = 0; trial < 25; ++trial) {
        PolarisedState s = gen.next();
        const std::size_t r = s.rank();
        QMat u = gen.unimodular(r);
        QMat u_inv_t = [&] {
            // contragredient: covectors move by the inverse transpose
            QMat inv(r, r);
            for (std::size_t j = 0; j < r; ++j) {
                QVec e = zero_vector(r);
                e[j] = 1;
                QVec col = *solve_linear(u, e);
                for (std::size_t i = 0; i < r; ++i) inv.at(i, j) = col[i];
            }
            return transpose(inv);
        }();

        std::vector<QVec> moved_chars;
        for (const QVec& chi : s.characters()) moved_chars.push_back(mul(u, chi));
        QMat moved_gram = mul(u, mul(s.metric().gram(), transpose(u)));
        PolarisedState moved(r, moved_chars, mul(u, s.polarisation()),
                             InnerProduct(moved_gram));

        CHECK(is_semistable(moved) == is_semistable(s));
        CHECK(is_polystable(moved) == is_polystable(s));

        SequentialFiltration seq = iterated_balanced(s);
        SequentialFiltration moved_seq = iterated_balanced(moved);
        REQUIRE(seq.terms.size() == moved_seq.terms.size());
        for (std::size_t k = 0; k < seq.terms.size(); ++k)
            CHECK(moved_seq.terms[k].covector == mul(u_inv_t, seq.terms[k].covector));
    }
}
