#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "finabel/distribution.hpp"

using namespace finabel;

static Rat rat(const char* s) { return Rat::parse(s); }

static std::vector<Rat> rats(std::initializer_list<const char*> xs) {
    std::vector<Rat> out;
    for (const char* s : xs) out.push_back(rat(s));
    return out;
}

// Uniform distribution reweighted by the density 1 + Re (x, e) for a fixed
// direction e: the masses are real cyclotomic numbers outside Q whenever the
// group exponent exceeds 4.
static Distribution cosine_marginal(const Group& g, std::size_t coord) {
    Element e = g.zero();
    e.c[coord] = 1;
    Cyclo w(Rat(1, g.order()));
    std::vector<Cyclo> pmf;
    for (std::int64_t i = 0; i < g.order(); ++i) {
        Cyclo density = Cyclo(1) + pairing(g, g.element_at(i), e).to_cyclo().real_part();
        pmf.push_back(density * w);
    }
    return make_distribution(g, std::move(pmf));
}

// Fixed stock of distributions used by the property tests.
static std::vector<Distribution> stock(const Group& g) {
    std::vector<Distribution> out;
    out.push_back(degenerate(g, g.zero()));
    out.push_back(degenerate(g, g.element_at(g.order() - 1)));
    out.push_back(haar(g));
    for (const Subgroup& k : enumerate_subgroups(g)) {
        out.push_back(haar(g, k));
        out.push_back(convolve(haar(g, k), degenerate(g, g.element_at(1))));
    }
    // A lopsided two-point distribution.
    std::vector<Rat> two(static_cast<std::size_t>(g.order()), Rat(0));
    two[0] = Rat(1, 3);
    two[1] = Rat(2, 3);
    out.push_back(make_distribution(g, two));
    return out;
}

TEST_CASE("construction and validation") {
    Group z4 = make_group({4});
    CHECK(make_distribution(z4, rats({"1", "0", "0", "0"})) == degenerate(z4, z4.zero()));
    CHECK(make_distribution(z4, rats({"1/4", "1/4", "1/4", "1/4"})) == haar(z4));
    CHECK_NOTHROW(make_distribution(z4, rats({"3/8", "1/8", "3/8", "1/8"})));

    try {
        make_distribution(z4, rats({"1/2", "-1/8", "1/2", "1/8"}));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::invalid_distribution);
        CHECK(std::string(e.what()).find("index 1") != std::string::npos);
        CHECK(std::string(e.what()).find("-1/8") != std::string::npos);
    }
    try {
        make_distribution(z4, rats({"1/2", "1/4", "1/4", "1/8"}));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("9/8") != std::string::npos);
    }
    CHECK_THROWS_AS(make_distribution(z4, rats({"1", "0"})), Error);

    // Masses must be real, and irrational masses must live in the exponent field.
    std::vector<Cyclo> imag = {Cyclo::root_power(4, 1), Cyclo(1) - Cyclo::root_power(4, 1),
                               Cyclo(0), Cyclo(0)};
    CHECK_THROWS_AS(make_distribution(z4, std::move(imag)), Error);
    std::vector<Cyclo> wrong_field(4, Cyclo(0));
    wrong_field[0] = Cyclo::root_power(5, 1).real_part();
    CHECK_THROWS_AS(make_distribution(z4, std::move(wrong_field)), Error);

    CHECK(make_distribution(z4, rats({"1/4", "1/4", "1/4", "1/4"})).is_rational());
}

TEST_CASE("haar distributions") {
    Group z4 = make_group({4});
    Subgroup k = subgroup_generate(z4, {Element{{2}}});
    Distribution mk = haar(z4, k);
    CHECK(mk == make_distribution(z4, rats({"1/2", "0", "1/2", "0"})));
    CHECK(haar(z4, trivial_subgroup(z4)) == degenerate(z4, z4.zero()));
    CHECK(haar(z4, full_subgroup(z4)) == haar(z4));

    Group v = make_group({2, 2});
    CHECK_THROWS_AS(haar(z4, trivial_subgroup(v)), Error);
}

TEST_CASE("convolution: frozen values") {
    Group z4 = make_group({4});
    CHECK(convolve(degenerate(z4, Element{{1}}), degenerate(z4, Element{{2}})) ==
          degenerate(z4, Element{{3}}));

    Subgroup k = subgroup_generate(z4, {Element{{2}}});
    CHECK(convolve(haar(z4, k), haar(z4, k)) == haar(z4, k));

    Distribution mu = make_distribution(z4, rats({"1/2", "1/2", "0", "0"}));
    CHECK(convolve(mu, reflect(mu)) ==
          make_distribution(z4, rats({"1/2", "1/4", "0", "1/4"})));

    // m_K * E_1 shifts the uniform mass off the subgroup.
    CHECK(convolve(haar(z4, k), degenerate(z4, Element{{1}})) ==
          make_distribution(z4, rats({"0", "1/2", "0", "1/2"})));

    Group v = make_group({2, 2});
    CHECK_THROWS_AS(convolve(haar(z4), haar(v)), Error);
}

TEST_CASE("mixtures") {
    Group z4 = make_group({4});
    Subgroup k = subgroup_generate(z4, {Element{{2}}});
    Distribution m = mix({{rat("1/2"), haar(z4)}, {rat("1/2"), haar(z4, k)}});
    CHECK(m == make_distribution(z4, rats({"3/8", "1/8", "3/8", "1/8"})));
    CHECK_THROWS_AS(mix({{rat("1/2"), haar(z4)}, {rat("1/4"), haar(z4, k)}}), Error);
    CHECK_THROWS_AS(mix({{rat("1/2"), haar(z4)}, {rat("1/2"), haar(make_group({2, 2}))}}),
                    Error);
}

TEST_CASE("reflection") {
    Group z4 = make_group({4});
    CHECK(reflect(degenerate(z4, Element{{1}})) == degenerate(z4, Element{{3}}));
    Distribution sym = make_distribution(z4, rats({"1/2", "1/4", "0", "1/4"}));
    CHECK(reflect(sym) == sym);
    for (const Distribution& mu : stock(make_group({2, 4})))
        CHECK(reflect(reflect(mu)) == mu);
}

TEST_CASE("characteristic function: frozen tables") {
    Group z4 = make_group({4});
    Subgroup k = subgroup_generate(z4, {Element{{2}}});
    CharFnTable t = char_fn(haar(z4, k));
    // 1 exactly on the annihilator {0,2}, 0 elsewhere.
    CHECK(t.value(Element{{0}}).is_one());
    CHECK(t.value(Element{{2}}).is_one());
    CHECK(t.value(Element{{1}}).is_zero());
    CHECK(t.value(Element{{3}}).is_zero());

    // Degenerate distributions give the character itself.
    for (std::int64_t xi = 0; xi < z4.order(); ++xi) {
        CharFnTable e = char_fn(degenerate(z4, z4.element_at(xi)));
        for (std::int64_t yi = 0; yi < z4.order(); ++yi) {
            Element y = z4.element_at(yi);
            CHECK(e.value(y) == pairing(z4, z4.element_at(xi), y).to_cyclo());
            CHECK(e.value(y).norm_squared().is_one());
        }
    }
}

TEST_CASE("characteristic function of the cosine-reweighted marginal") {
    Group x = make_group({5, 5, 5});
    Distribution mu = cosine_marginal(x, 0);
    CHECK(!mu.is_rational());
    CharFnTable t = char_fn(mu);
    Element plus = Element{{1, 0, 0}}, minus = Element{{4, 0, 0}};
    for (std::int64_t yi = 0; yi < x.order(); ++yi) {
        Element y = x.element_at(yi);
        if (y == x.zero())
            CHECK(t.value(y).is_one());
        else if (y == plus || y == minus)
            CHECK(t.value(y) == Cyclo(Rat(1, 2)));
        else
            CHECK(t.value(y).is_zero());
    }
    CHECK(!classify_idempotent(mu).is_idempotent);
}

TEST_CASE("support and f_subgroup") {
    Group z4 = make_group({4});
    CHECK(support(degenerate(z4, Element{{2}})) == std::vector<Element>{{{2}}});
    CHECK(support(haar(z4)).size() == 4);
    CHECK(support(make_distribution(z4, rats({"3/8", "1/8", "3/8", "1/8"}))).size() == 4);

    Subgroup k = subgroup_generate(z4, {Element{{2}}});
    CHECK(f_subgroup(haar(z4, k)).members() == std::vector<Element>{{{0}}, {{2}}});
    CHECK(f_subgroup(haar(z4)).order() == 1);
    CHECK(f_subgroup(degenerate(z4, z4.zero())).order() == 4);

    // f_subgroup is exactly the unit level set of the characteristic function.
    for (const Group& g : {make_group({4}), make_group({2, 4}), make_group({6})})
        for (const Distribution& mu : stock(g)) {
            CharFnTable t = char_fn(mu);
            Subgroup f = f_subgroup(mu);
            for (std::int64_t yi = 0; yi < g.order(); ++yi)
                CHECK(f.contains(g.element_at(yi)) == t.value_at(yi).is_one());
            // Support lies in the annihilator of F.
            Subgroup ann = annihilator(g, f);
            for (const Element& s : support(mu)) CHECK(ann.contains(s));
            // Translation invariance along F.
            for (const Element& h : f.members())
                for (std::int64_t yi = 0; yi < g.order(); ++yi)
                    CHECK(t.value(g.add(g.element_at(yi), h)) == t.value_at(yi));
        }
}

TEST_CASE("convolution theorem and symmetrization") {
    for (const Group& g : {make_group({4}), make_group({2, 2}), make_group({6})}) {
        std::vector<Distribution> dists = stock(g);
        for (const Distribution& a : dists)
            for (const Distribution& b : dists) {
                CharFnTable ta = char_fn(a), tb = char_fn(b);
                CharFnTable tc = char_fn(convolve(a, b));
                for (std::int64_t yi = 0; yi < g.order(); ++yi)
                    CHECK(tc.value_at(yi) == ta.value_at(yi) * tb.value_at(yi));
            }
        for (const Distribution& mu : dists) {
            CharFnTable t = char_fn(mu);
            CharFnTable tr = char_fn(reflect(mu));
            CharFnTable ts = char_fn(convolve(mu, reflect(mu)));
            for (std::int64_t yi = 0; yi < g.order(); ++yi) {
                CHECK(tr.value_at(yi) == t.value_at(yi).conj());
                CHECK(ts.value_at(yi) == t.value_at(yi).norm_squared());
                CHECK(ts.value_at(yi).is_real());
                double v = ts.value_at(yi).to_double_real();
                CHECK(v >= -1e-12);
                CHECK(v <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("inverse transform reproduces the pmf") {
    for (const Group& g : {make_group({4}), make_group({2, 4}), make_group({5})}) {
        for (const Distribution& mu : stock(g)) {
            CharFnTable t = char_fn(mu);
            Cyclo inv_order{Rat(1, g.order())};
            for (std::int64_t xi = 0; xi < g.order(); ++xi) {
                Element mx = g.negate(g.element_at(xi));
                Cyclo acc(Rat(0));
                for (std::int64_t yi = 0; yi < g.order(); ++yi)
                    acc += t.value_at(yi) *
                           pairing(g, mx, g.element_at(yi)).to_cyclo();
                CHECK(acc * inv_order == mu.mass_at(xi));
            }
        }
    }
}

TEST_CASE("idempotent classification") {
    Group z4 = make_group({4});
    Subgroup k = subgroup_generate(z4, {Element{{2}}});

    IdempotentClassification shifted =
        classify_idempotent(make_distribution(z4, rats({"0", "1/2", "0", "1/2"})));
    CHECK(shifted.is_idempotent);
    CHECK(*shifted.subgroup == k);
    CHECK(*shifted.shift == Element{{1}});

    IdempotentClassification whole = classify_idempotent(haar(z4));
    CHECK(whole.is_idempotent);
    CHECK(whole.subgroup->order() == 4);
    CHECK(*whole.shift == z4.zero());

    IdempotentClassification point = classify_idempotent(degenerate(z4, Element{{2}}));
    CHECK(point.is_idempotent);
    CHECK(point.subgroup->order() == 1);
    CHECK(*point.shift == Element{{2}});

    CHECK(!classify_idempotent(make_distribution(z4, rats({"3/8", "1/8", "3/8", "1/8"})))
               .is_idempotent);
    // Uniform mass whose support is not a coset.
    CHECK(!classify_idempotent(make_distribution(z4, rats({"1/2", "1/2", "0", "0"})))
               .is_idempotent);

    // Cross-check against the spectral criterion: the nonzero set of the
    // characteristic function is a subgroup carrying unit modulus iff the
    // distribution is idempotent.
    for (const Group& g : {make_group({4}), make_group({2, 4}), make_group({6})})
        for (const Distribution& mu : stock(g)) {
            CharFnTable t = char_fn(mu);
            std::vector<bool> nonzero(static_cast<std::size_t>(g.order()));
            bool spectral = true;
            for (std::int64_t yi = 0; yi < g.order(); ++yi) {
                nonzero[static_cast<std::size_t>(yi)] = !t.value_at(yi).is_zero();
                if (nonzero[static_cast<std::size_t>(yi)] &&
                    !t.value_at(yi).norm_squared().is_one())
                    spectral = false;
            }
            if (spectral)
                for (std::int64_t ai = 0; ai < g.order() && spectral; ++ai)
                    for (std::int64_t bi = 0; bi < g.order() && spectral; ++bi)
                        if (nonzero[static_cast<std::size_t>(ai)] &&
                            nonzero[static_cast<std::size_t>(bi)]) {
                            std::int64_t ci = g.index_of(
                                g.add(g.element_at(ai), g.element_at(bi)));
                            if (!nonzero[static_cast<std::size_t>(ci)]) spectral = false;
                        }
            CHECK(classify_idempotent(mu).is_idempotent == spectral);
        }
}

TEST_CASE("idempotents convolve to themselves") {
    Group g = make_group({2, 4});
    for (const Subgroup& k : enumerate_subgroups(g)) {
        Distribution mk = haar(g, k);
        CHECK(convolve(mk, mk) == mk);
        CHECK(classify_idempotent(mk).is_idempotent);
        Distribution shifted = convolve(mk, degenerate(g, g.element_at(3)));
        IdempotentClassification c = classify_idempotent(shifted);
        CHECK(c.is_idempotent);
        CHECK(*c.subgroup == k);
    }
}
