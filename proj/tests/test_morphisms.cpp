#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finabel/morphisms.hpp"

using namespace finabel;

TEST_CASE("construction, reduction, and well-definedness") {
    Group z4 = make_group({4});
    Homomorphism dbl = make_homomorphism(z4, {{2}});
    CHECK(apply_hom(dbl, Element{{3}}) == Element{{2}});
    CHECK(make_homomorphism(z4, {{6}}).matrix() == std::vector<std::vector<std::int64_t>>{{2}});
    CHECK(make_homomorphism(z4, {{-1}}).matrix() == std::vector<std::vector<std::int64_t>>{{3}});

    Group g = make_group({2, 4});
    // Entry [1][0] sends the order-2 coordinate into Z(4) with coefficient 1,
    // which does not kill the relation 2*x = 0.
    try {
        make_homomorphism(g, {{1, 0}, {1, 1}});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::invalid_homomorphism);
        CHECK(std::string(e.what()).find("[1][0]") != std::string::npos);
    }
    // Coefficient 2 does kill it.
    CHECK_NOTHROW(make_homomorphism(g, {{1, 0}, {2, 1}}));

    CHECK_THROWS_AS(make_homomorphism(g, {{1, 0}}), Error);
    CHECK_THROWS_AS(make_homomorphism(g, {{1}, {2}}), Error);

    CHECK(identity_endomorphism(g).is_identity());
    CHECK(zero_endomorphism(g).is_zero());
    CHECK(identity_endomorphism(g)(Element{{1, 3}}) == Element{{1, 3}});
}

TEST_CASE("scalar endomorphisms") {
    Group x = make_group({5, 5, 5});
    Homomorphism two = scalar_endomorphism(x, 2);
    CHECK(apply_hom(two, Element{{1, 2, 3}}) == Element{{2, 4, 1}});
    CHECK(is_automorphism(two));
    CHECK(scalar_endomorphism(x, 7) == two);
    CHECK(scalar_endomorphism(x, 0).is_zero());
    CHECK(scalar_endomorphism(x, 1).is_identity());
}

TEST_CASE("automorphism detection and kernels") {
    Group z4 = make_group({4});
    CHECK(is_automorphism(make_homomorphism(z4, {{3}})));
    CHECK(is_automorphism(identity_endomorphism(z4)));
    Homomorphism dbl = make_homomorphism(z4, {{2}});
    CHECK(!is_automorphism(dbl));
    CHECK(kernel_of(dbl).members() == std::vector<Element>{{{0}}, {{2}}});
    CHECK(image_of(dbl).members() == std::vector<Element>{{{0}}, {{2}}});
    CHECK(kernel_of(identity_endomorphism(z4)).order() == 1);

    // Rank-nullity at group scale: |ker| * |im| = |X| for every endomorphism.
    Group g = make_group({2, 4});
    for (const Homomorphism& h :
         {make_homomorphism(g, {{1, 0}, {2, 1}}), make_homomorphism(g, {{0, 1}, {0, 2}}),
          zero_endomorphism(g), scalar_endomorphism(g, 2)})
        CHECK(kernel_of(h).order() * image_of(h).order() == g.order());
}

TEST_CASE("composition, sums, inverse") {
    Group g = make_group({2, 4});
    Homomorphism a = make_homomorphism(g, {{1, 0}, {2, 1}});
    Homomorphism b = make_homomorphism(g, {{1, 1}, {0, 3}});
    Homomorphism ab = compose(a, b);
    for (std::int64_t i = 0; i < g.order(); ++i) {
        Element x = g.element_at(i);
        CHECK(ab(x) == a(b(x)));
        CHECK(hom_add(a, b)(x) == g.add(a(x), b(x)));
        CHECK(hom_sub(a, b)(x) == g.sub(a(x), b(x)));
    }
    CHECK(is_automorphism(a));
    Homomorphism ai = inverse(a);
    CHECK(compose(a, ai).is_identity());
    CHECK(compose(ai, a).is_identity());
    CHECK_THROWS_AS(inverse(make_homomorphism(g, {{0, 0}, {0, 2}})), Error);
}

TEST_CASE("adjoint: frozen example and defining identity") {
    Group g = make_group({2, 4});
    Homomorphism h = make_homomorphism(g, {{1, 0}, {2, 1}});
    Homomorphism a = adjoint(h);
    CHECK(a.matrix() == std::vector<std::vector<std::int64_t>>{{1, 1}, {0, 1}});
    for (std::int64_t xi = 0; xi < g.order(); ++xi)
        for (std::int64_t yi = 0; yi < g.order(); ++yi) {
            Element x = g.element_at(xi), y = g.element_at(yi);
            CHECK(pairing(g, h(x), y) == pairing(g, x, a(y)));
        }

    // Scalar maps are self-adjoint.
    Group z6 = make_group({6});
    for (std::int64_t c = 0; c < 6; ++c)
        CHECK(adjoint(scalar_endomorphism(z6, c)) == scalar_endomorphism(z6, c));
    CHECK(adjoint(identity_endomorphism(g)).is_identity());
}

TEST_CASE("adjoint algebra over enumerated endomorphism samples") {
    for (const Group& g : {make_group({4}), make_group({2, 4}), make_group({6}),
                           make_group({3, 3}), make_group({2, 2, 2})}) {
        std::vector<Homomorphism> sample = enumerate_automorphisms(g);
        sample.push_back(zero_endomorphism(g));
        sample.push_back(scalar_endomorphism(g, 2));
        for (const Homomorphism& h : sample) {
            CHECK(adjoint(adjoint(h)) == h);
            if (is_automorphism(h)) CHECK(is_automorphism(adjoint(h)));
        }
        // Contravariance: adjoint(f o g) == adjoint(g) o adjoint(f).
        for (std::size_t s = 0; s + 1 < sample.size(); ++s)
            CHECK(adjoint(compose(sample[s], sample[s + 1])) ==
                  compose(adjoint(sample[s + 1]), adjoint(sample[s])));
    }
}

TEST_CASE("automorphism enumeration: frozen counts and group axioms") {
    CHECK(enumerate_automorphisms(make_group({4})).size() == 2);
    CHECK(enumerate_automorphisms(make_group({2, 2})).size() == 6);
    CHECK(enumerate_automorphisms(make_group({3})).size() == 2);
    CHECK(enumerate_automorphisms(make_group({2, 4})).size() == 8);
    CHECK(enumerate_automorphisms(make_group({5})).size() == 4);

    Group z4 = make_group({4});
    auto aut4 = enumerate_automorphisms(z4);
    CHECK(aut4[0] == identity_endomorphism(z4));
    CHECK(aut4[1] == make_homomorphism(z4, {{3}}));

    // Closure under composition and inverses.
    for (const Group& g : {make_group({2, 2}), make_group({2, 4}), make_group({6})}) {
        auto auts = enumerate_automorphisms(g);
        auto member = [&](const Homomorphism& h) {
            for (const Homomorphism& a : auts)
                if (a == h) return true;
            return false;
        };
        for (const Homomorphism& a : auts) {
            CHECK(member(inverse(a)));
            for (const Homomorphism& b : auts) CHECK(member(compose(a, b)));
        }
    }

    CHECK_THROWS_AS(enumerate_automorphisms(make_group({128})), Error);
    try {
        enumerate_automorphisms(make_group({128}));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::too_large);
    }
}

TEST_CASE("induced map on a quotient") {
    Group z4 = make_group({4});
    Subgroup h2 = subgroup_generate(z4, {Element{{2}}});
    QuotientGroup q = quotient(z4, h2);

    Homomorphism ind = induced_on_quotient(make_homomorphism(z4, {{3}}), q);
    CHECK(ind.is_identity());  // 3 == 1 (mod 2)
    CHECK(induced_on_quotient(identity_endomorphism(z4), q).is_identity());

    // mult-by-2 collapses {0,2} to {0}: the kernel is not mapped onto itself.
    try {
        induced_on_quotient(make_homomorphism(z4, {{2}}), q);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_invariant);
    }

    // A non-scalar case: swap on Z(2)xZ(2) with kernel the diagonal.
    Group v = make_group({2, 2});
    Homomorphism swap = make_homomorphism(v, {{0, 1}, {1, 0}});
    QuotientGroup qd = quotient(v, subgroup_generate(v, {Element{{1, 1}}}));
    Homomorphism inds = induced_on_quotient(swap, qd);
    for (std::int64_t i = 0; i < v.order(); ++i) {
        Element x = v.element_at(i);
        CHECK(inds(qd.project(x)) == qd.project(swap(x)));
    }
}

TEST_CASE("form systems and the stacked map") {
    Group z4 = make_group({4});
    Homomorphism one = identity_endomorphism(z4);

    // All-identity square system: pi(u,v) = (u+v, u+v), kernel {(u,-u)}.
    FormSystem all_one = make_form_system(z4, {{one, one}, {one, one}});
    StackedFormMap s1 = stacked_form_map(all_one, true);
    CHECK(s1.kernel.order() == 4);
    CHECK(!s1.automorphism);
    for (std::int64_t t = 0; t < 4; ++t)
        CHECK(s1.kernel.contains(pack_tuple(z4, {Element{{t}}, Element{{(4 - t) % 4}}})));

    // pi(u,v) = (2u+v, u+2v) is bijective on Z(4)^2.
    Homomorphism two = make_homomorphism(z4, {{2}});
    FormSystem prop = make_form_system(z4, {{two, one}, {one, two}});
    StackedFormMap s2 = stacked_form_map(prop, true);
    CHECK(s2.automorphism);
    CHECK(s2.kernel.order() == 1);
    CHECK(s2.map(pack_tuple(z4, {Element{{1}}, Element{{1}}})) ==
          pack_tuple(z4, {Element{{3}}, Element{{3}}}));

    // Three forms over Z(5) whose third form repeats the first: the stacked
    // map acquires the one-dimensional kernel {(t, 0, -t)}.
    Group z5 = make_group({5});
    Homomorphism i5 = identity_endomorphism(z5);
    Homomorphism d5 = make_homomorphism(z5, {{2}});
    FormSystem padded =
        make_form_system(z5, {{i5, d5, i5}, {i5, i5, d5}, {i5, d5, i5}});
    StackedFormMap s3 = stacked_form_map(padded, true);
    CHECK(s3.kernel.order() == 5);
    CHECK(!s3.automorphism);
    for (std::int64_t t = 0; t < 5; ++t)
        CHECK(s3.kernel.contains(
            pack_tuple(z5, {Element{{t}}, Element{{0}}, Element{{(5 - t) % 5}}})));

    // Rejections: non-square stacking, ragged grids, foreign coefficients.
    FormSystem rect = make_form_system(z5, {{i5, d5, i5}, {i5, i5, d5}});
    CHECK_THROWS_AS(stacked_form_map(rect, true), Error);
    CHECK_THROWS_AS(make_form_system(z5, {{i5, d5}, {i5}}), Error);
    CHECK_THROWS_AS(make_form_system(z4, {{i5}}), Error);
}

TEST_CASE("power group packing") {
    Group g = make_group({2, 4});
    Group big = power_group(g, 2);
    CHECK(big.moduli() == std::vector<std::int64_t>{2, 4, 2, 4});
    Element t = pack_tuple(g, {Element{{1, 3}}, Element{{0, 2}}});
    CHECK(t == Element{{1, 3, 0, 2}});
    auto parts = unpack_tuple(g, 2, t);
    CHECK(parts[0] == Element{{1, 3}});
    CHECK(parts[1] == Element{{0, 2}});
    CHECK_THROWS_AS(unpack_tuple(g, 3, t), Error);

    // Tuple index order: the last block varies fastest.
    CHECK(big.index_of(pack_tuple(g, {g.element_at(0), g.element_at(1)})) == 1);
    CHECK(big.index_of(pack_tuple(g, {g.element_at(1), g.element_at(0)})) == g.order());
}
