#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "finabel/group.hpp"

using namespace finabel;

static std::vector<Group> battery() {
    return {make_group({2}),    make_group({3}),    make_group({4}),
            make_group({2, 2}), make_group({2, 4}), make_group({6}),
            make_group({8}),    make_group({3, 3}), make_group({2, 2, 2}),
            make_group({12})};
}

TEST_CASE("make_group basics") {
    Group g = make_group({4});
    CHECK(g.order() == 4);
    CHECK(g.exponent() == 4);
    Group h = make_group({2, 4});
    CHECK(h.order() == 8);
    CHECK(h.exponent() == 4);
    Group k = make_group({5, 5, 5});
    CHECK(k.order() == 125);
    CHECK(k.exponent() == 5);
    CHECK(k.str() == "Z(5) x Z(5) x Z(5)");

    CHECK_THROWS_AS(make_group({}), Error);
    CHECK_THROWS_AS(make_group({0}), Error);
    CHECK_THROWS_AS(make_group({1}), Error);
    CHECK_THROWS_AS(make_group({4, -2}), Error);
    try {
        make_group({4, 1});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::invalid_group);
    }
}

TEST_CASE("element arithmetic") {
    Group g = make_group({2, 4});
    Element a{{1, 3}}, b{{1, 2}};
    CHECK(g.add(a, b) == Element{{0, 1}});
    CHECK(g.negate(a) == Element{{1, 1}});
    CHECK(g.zero() == Element{{0, 0}});
    CHECK(g.sub(a, a) == g.zero());
    CHECK(g.scale(3, a) == Element{{1, 1}});
    CHECK(g.element_order(Element{{1, 2}}) == 2);
    CHECK(g.element_order(Element{{0, 1}}) == 4);
    CHECK(g.element_order(g.zero()) == 1);

    CHECK_THROWS_AS(g.add(a, Element{{1}}), Error);
    CHECK_THROWS_AS(g.add(a, Element{{1, 4}}), Error);
    CHECK_THROWS_AS(g.add(a, Element{{-1, 0}}), Error);
}

TEST_CASE("element indexing is mixed-radix, last coordinate fastest") {
    Group g = make_group({2, 4});
    CHECK(g.index_of(Element{{0, 0}}) == 0);
    CHECK(g.index_of(Element{{0, 3}}) == 3);
    CHECK(g.index_of(Element{{1, 0}}) == 4);
    CHECK(g.index_of(Element{{1, 3}}) == 7);
    for (std::int64_t i = 0; i < g.order(); ++i) CHECK(g.index_of(g.element_at(i)) == i);
    // Index order == lexicographic order on coordinate vectors.
    for (std::int64_t i = 0; i + 1 < g.order(); ++i)
        CHECK(g.element_at(i) < g.element_at(i + 1));
}

// Oracle: evaluate the defining character sum in floating point.
static std::complex<double> pairing_float(const Group& g, const Element& x, const Element& y) {
    double m = static_cast<double>(g.exponent());
    double e = 0;
    for (std::size_t i = 0; i < x.c.size(); ++i)
        e += (m / static_cast<double>(g.moduli()[i])) * static_cast<double>(x.c[i]) *
             static_cast<double>(y.c[i]);
    double ang = 2.0 * std::numbers::pi * e / m;
    return {std::cos(ang), std::sin(ang)};
}

TEST_CASE("pairing: frozen examples and float oracle") {
    Group z4 = make_group({4});
    CHECK(pairing(z4, Element{{1}}, Element{{3}}) == RootOfUnity(3, 4));
    Group g = make_group({2, 4});
    // (1,1) with (1,2): exponent (4/2)*1*1 + (4/4)*1*2 = 4 == 0 (mod 4).
    CHECK(pairing(g, Element{{1, 1}}, Element{{1, 2}}) == RootOfUnity(0, 4));
    CHECK(pairing(g, Element{{1, 1}}, Element{{1, 2}}).is_one());

    for (const Group& gr : battery())
        for (std::int64_t i = 0; i < gr.order(); ++i)
            for (std::int64_t j = 0; j < gr.order(); ++j) {
                Element x = gr.element_at(i), y = gr.element_at(j);
                auto exact = pairing(gr, x, y).to_cyclo().to_complex();
                CHECK(std::abs(exact - pairing_float(gr, x, y)) < 1e-9);
            }
}

TEST_CASE("pairing is bilinear, symmetric in roles, and non-degenerate") {
    for (const Group& g : battery()) {
        for (std::int64_t i = 0; i < g.order(); ++i) {
            Element x = g.element_at(i);
            bool annihilates_all = true;
            for (std::int64_t j = 0; j < g.order(); ++j) {
                Element y = g.element_at(j);
                if (pairing_exponent(g, x, y) != 0) annihilates_all = false;
                for (std::int64_t k = 0; k < g.order(); ++k) {
                    Element z = g.element_at(k);
                    // (x+z, y) == (x,y)(z,y) and (x, y+z) == (x,y)(x,z)
                    CHECK(pairing(g, g.add(x, z), y) == pairing(g, x, y) * pairing(g, z, y));
                    CHECK(pairing(g, x, g.add(y, z)) == pairing(g, x, y) * pairing(g, x, z));
                }
            }
            CHECK(annihilates_all == (x == g.zero()));
        }
    }
}

TEST_CASE("subgroup_generate") {
    Group g = make_group({2, 4});
    Subgroup s = subgroup_generate(g, {Element{{1, 0}}, Element{{0, 2}}});
    CHECK(s.order() == 4);
    CHECK(s.members() ==
          std::vector<Element>{{{0, 0}}, {{0, 2}}, {{1, 0}}, {{1, 2}}});
    CHECK(subgroup_generate(g, {}).order() == 1);
    CHECK(subgroup_generate(g, {Element{{0, 1}}}).order() == 4);
    CHECK(subgroup_generate(g, {Element{{1, 1}}}).order() == 4);
    CHECK_THROWS_AS(subgroup_generate(g, {Element{{2, 0}}}), Error);

    // Generators round-trip: generating from generators() reproduces the set.
    for (const Group& gr : battery())
        for (const Subgroup& h : enumerate_subgroups(gr))
            CHECK(subgroup_generate(gr, h.generators()) == h);
}

// Oracle: count closed subsets by brute force over all subsets (tiny groups).
static std::set<std::vector<std::int64_t>> subgroup_oracle(const Group& g) {
    std::set<std::vector<std::int64_t>> found;
    std::int64_t n = g.order();
    REQUIRE(n <= 16);
    for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
        if (!(bits & 1u)) continue;  // must contain zero (index 0)
        std::vector<Element> mem;
        for (std::int64_t i = 0; i < n; ++i)
            if (bits & (1u << i)) mem.push_back(g.element_at(i));
        bool closed = true;
        for (const Element& a : mem) {
            if (!(bits & (1u << g.index_of(g.negate(a))))) closed = false;
            for (const Element& b : mem)
                if (!(bits & (1u << g.index_of(g.add(a, b))))) closed = false;
        }
        if (closed) {
            std::vector<std::int64_t> key;
            for (const Element& e : mem) key.push_back(g.index_of(e));
            found.insert(key);
        }
    }
    return found;
}

TEST_CASE("enumerate_subgroups matches the brute-force oracle") {
    // Frozen counts established by the subset-closure oracle.
    CHECK(enumerate_subgroups(make_group({2, 2})).size() == 5);
    CHECK(enumerate_subgroups(make_group({4})).size() == 3);
    CHECK(enumerate_subgroups(make_group({3})).size() == 2);
    CHECK(enumerate_subgroups(make_group({2, 4})).size() == 8);
    CHECK(enumerate_subgroups(make_group({6})).size() == 4);

    for (const Group& g : {make_group({2, 2}), make_group({4}), make_group({3}),
                           make_group({2, 4}), make_group({6}), make_group({12}),
                           make_group({2, 2, 2})}) {
        auto oracle = subgroup_oracle(g);
        auto got = enumerate_subgroups(g);
        CHECK(got.size() == oracle.size());
        for (const Subgroup& s : got) {
            std::vector<std::int64_t> key;
            for (const Element& e : s.members()) key.push_back(g.index_of(e));
            CHECK(oracle.count(key) == 1);
            CHECK(g.order() % s.order() == 0);  // Lagrange
        }
    }

    CHECK_THROWS_AS(enumerate_subgroups(make_group({257}), 256), Error);
}

TEST_CASE("annihilator duality") {
    Group z4 = make_group({4});
    Subgroup b = subgroup_generate(z4, {Element{{2}}});
    Subgroup ann = annihilator(z4, b);
    CHECK(ann.members() == std::vector<Element>{{{0}}, {{2}}});

    for (const Group& g : battery()) {
        for (const Subgroup& h : enumerate_subgroups(g)) {
            Subgroup a = annihilator(g, h);
            CHECK(a.order() * h.order() == g.order());     // |A(Y,B)| * |B| = |X|
            CHECK(annihilator(g, a) == h);                 // A(A(B)) == B
            for (const Element& y : a.members())           // definition holds on members
                for (const Element& x : h.members())
                    CHECK(pairing_exponent(g, x, y) == 0);
        }
        CHECK(annihilator(g, trivial_subgroup(g)).order() == g.order());
        CHECK(annihilator(g, full_subgroup(g)).order() == 1);
    }
}

TEST_CASE("intersection") {
    Group g = make_group({2, 4});
    Subgroup a = subgroup_generate(g, {Element{{0, 1}}});
    Subgroup b = subgroup_generate(g, {Element{{1, 1}}});
    Subgroup i = intersect(a, b);
    CHECK(i.members() == std::vector<Element>{{{0, 0}}, {{0, 2}}});
    CHECK(intersect(a, subgroup_generate(g, {Element{{1, 2}}})).order() == 1);
}

TEST_CASE("p-component") {
    Group g = make_group({2, 4});
    Subgroup t = p_component(g, 2);
    CHECK(t.members() ==
          std::vector<Element>{{{0, 0}}, {{0, 2}}, {{1, 0}}, {{1, 2}}});
    CHECK(p_component(g, 3).order() == 1);
    Group z12 = make_group({12});
    CHECK(p_component(z12, 2).members() == std::vector<Element>{{{0}}, {{6}}});
    CHECK(p_component(z12, 3).members() == std::vector<Element>{{{0}}, {{4}}, {{8}}});
    CHECK_THROWS_AS(p_component(g, 4), Error);
    CHECK_THROWS_AS(p_component(g, 1), Error);

    // Elementary p-group property: every member has order 1 or p.
    for (const Group& gr : battery())
        for (std::int64_t p : {2, 3, 5}) {
            Subgroup comp = p_component(gr, p);
            for (const Element& x : comp.members())
                CHECK((gr.element_order(x) == 1 || gr.element_order(x) == p));
        }
}

TEST_CASE("quotient structure and projection") {
    Group g = make_group({2, 4});
    Subgroup h = subgroup_generate(g, {Element{{0, 2}}});
    QuotientGroup q = quotient(g, h);
    CHECK(q.structure().moduli() == std::vector<std::int64_t>{2, 2});
    CHECK(q.cosets().size() == 4);

    // Projection is a surjective homomorphism with kernel exactly h.
    for (std::int64_t i = 0; i < g.order(); ++i) {
        Element x = g.element_at(i);
        CHECK((q.coset_index(x) == q.coset_index(g.zero())) == h.contains(x));
        for (std::int64_t j = 0; j < g.order(); ++j) {
            Element y = g.element_at(j);
            CHECK(q.project(g.add(x, y)) ==
                  q.structure().add(q.project(x), q.project(y)));
        }
    }
    // Canonical representatives: first element index in each coset.
    for (const Element& rep : q.cosets()) {
        for (std::int64_t i = 0; i < g.index_of(rep); ++i)
            CHECK(q.coset_index(g.element_at(i)) != q.coset_index(rep));
    }

    // X / {0} keeps the presentation (already in divisor-chain order).
    QuotientGroup q0 = quotient(g, trivial_subgroup(g));
    CHECK(q0.structure().moduli() == g.moduli());
    // X / X is the trivial group.
    QuotientGroup qf = quotient(g, full_subgroup(g));
    CHECK(qf.structure().order() == 1);
    CHECK(qf.cosets().size() == 1);

    Group z6 = make_group({6});
    QuotientGroup q6 = quotient(z6, subgroup_generate(z6, {Element{{3}}}));
    CHECK(q6.structure().moduli() == std::vector<std::int64_t>{3});

    // Quotient order identity across the battery.
    for (const Group& gr : battery())
        for (const Subgroup& s : enumerate_subgroups(gr)) {
            QuotientGroup qq = quotient(gr, s);
            CHECK(qq.structure().order() * s.order() == gr.order());
        }
}

TEST_CASE("root of unity semantics") {
    RootOfUnity a(3, 4), b(2, 4);
    CHECK((a * b) == RootOfUnity(1, 4));
    CHECK(a.conj() == RootOfUnity(1, 4));
    CHECK(RootOfUnity(-1, 4) == RootOfUnity(3, 4));
    CHECK(RootOfUnity(8, 4).is_one());
    CHECK_THROWS_AS(RootOfUnity(1, 4) * RootOfUnity(1, 3), Error);
}

TEST_CASE("is_prime") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(251));
    CHECK(!is_prime(1));
    CHECK(!is_prime(0));
    CHECK(!is_prime(91));
    CHECK(!is_prime(121));
}
