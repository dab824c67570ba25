#include "finabel/theorems.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "finabel/error.hpp"
#include "finabel/sampler.hpp"

namespace finabel {

namespace {

std::int64_t pow_clamped(std::int64_t base, std::int64_t exp) {
    std::int64_t v = 1;
    for (std::int64_t t = 0; t < exp; ++t) {
        if (v > std::numeric_limits<std::int64_t>::max() / base)
            return std::numeric_limits<std::int64_t>::max();
        v *= base;
    }
    return v;
}

/// Index-level addition table: add[a * order + b] = index of a + b.
std::vector<std::int64_t> add_table(const Group& g) {
    const std::int64_t order = g.order();
    std::vector<std::int64_t> add(static_cast<std::size_t>(order * order));
    for (std::int64_t a = 0; a < order; ++a) {
        Element ea = g.element_at(a);
        for (std::int64_t b = 0; b < order; ++b)
            add[static_cast<std::size_t>(a * order + b)] =
                g.index_of(g.add(ea, g.element_at(b)));
    }
    return add;
}

/// Index-level application table of an endomorphism.
std::vector<std::int64_t> perm_table(const Group& g, const Homomorphism& h) {
    std::vector<std::int64_t> t(static_cast<std::size_t>(g.order()));
    for (std::int64_t i = 0; i < g.order(); ++i)
        t[static_cast<std::size_t>(i)] = g.index_of(h(g.element_at(i)));
    return t;
}

/// Relocates masses along an endomorphism of the carrier group.
Distribution pushforward_by(const Distribution& mu, const Homomorphism& phi) {
    const Group& g = mu.group();
    std::vector<Cyclo> pmf(static_cast<std::size_t>(g.order()), Cyclo(Rat(0)));
    for (std::int64_t i = 0; i < g.order(); ++i)
        pmf[static_cast<std::size_t>(g.index_of(phi(g.element_at(i))))] +=
            mu.pmf()[static_cast<std::size_t>(i)];
    return make_distribution(g, std::move(pmf));
}

Subgroup image_subgroup(const Homomorphism& phi, const Subgroup& sub) {
    std::vector<Element> members;
    members.reserve(sub.members().size());
    for (const Element& x : sub.members()) members.push_back(phi(x));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return Subgroup(phi.codomain(), std::move(members));
}

std::int64_t smallest_prime_factor(std::int64_t n) {
    for (std::int64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return f;
    return n;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = ((a % m) + m) % m, r = m;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1)
        throw std::logic_error("no modular inverse of " + std::to_string(a) +
                               " modulo " + std::to_string(m));
    return ((old_s % m) + m) % m;
}

/// x with x = a1 (mod m1) and x = a2 (mod m2), for coprime m1, m2.
std::int64_t crt(std::int64_t a1, std::int64_t m1, std::int64_t a2,
                 std::int64_t m2) {
    std::int64_t t = ((a2 - a1) % m2 + m2) % m2;
    t = static_cast<std::int64_t>(
        static_cast<__int128>(t) * mod_inverse(m1 % m2, m2) % m2);
    return static_cast<std::int64_t>(
        (static_cast<__int128>(m1) * t + a1) % (static_cast<__int128>(m1) * m2));
}

}  // namespace

VerificationReport verify_theorem1(const Group& g, std::int64_t n,
                                   const Thm1Config& config) {
    if (n < 2)
        fail(Errc::invalid_parameters,
             "need at least two linear forms, got n = " + std::to_string(n));
    if (config.trials < 1)
        fail(Errc::invalid_parameters,
             "trials must be positive, got " + std::to_string(config.trials));
    const std::int64_t scan_steps = pow_clamped(g.order(), n);
    if (scan_steps > config.step_cap)
        fail(Errc::too_large, "each independence scan needs " +
                                  std::to_string(g.order()) + "^" +
                                  std::to_string(n) + " steps, over the cap of " +
                                  std::to_string(config.step_cap));

    const std::vector<Homomorphism> autos = enumerate_automorphisms(g);
    const std::int64_t auto_count = static_cast<std::int64_t>(autos.size());
    const std::int64_t cells = n * n;
    const std::int64_t tuple_count = pow_clamped(auto_count, cells);
    if (config.mode == Thm1Mode::exhaustive && tuple_count > config.tuple_cap)
        fail(Errc::too_large,
             "exhaustive mode would enumerate " + std::to_string(auto_count) + "^" +
                 std::to_string(cells) + " coefficient tuples (cap " +
                 std::to_string(config.tuple_cap) + "); rerun in sampled mode");

    // Distribution pool: diagonal battery tuples, then staggered battery
    // tuples, then seeded random tuples. Entries live in one registry so
    // characteristic tables and classifications are computed once each.
    DetRng dist_rng(config.seed);
    const std::vector<Distribution> battery = distribution_battery(g);
    const std::int64_t bsize = static_cast<std::int64_t>(battery.size());
    std::vector<Distribution> registry = battery;
    std::vector<std::vector<std::size_t>> pool;
    pool.reserve(static_cast<std::size_t>(config.trials));
    for (std::int64_t t = 0; t < config.trials; ++t) {
        std::vector<std::size_t> tuple(static_cast<std::size_t>(n));
        if (t < bsize) {
            for (std::int64_t i = 0; i < n; ++i)
                tuple[static_cast<std::size_t>(i)] = static_cast<std::size_t>(t);
        } else if (t < 2 * bsize) {
            for (std::int64_t i = 0; i < n; ++i)
                tuple[static_cast<std::size_t>(i)] =
                    static_cast<std::size_t>((t - bsize + i) % bsize);
        } else {
            for (std::int64_t i = 0; i < n; ++i) {
                registry.push_back(
                    random_distribution(dist_rng, g, config.max_denominator));
                tuple[static_cast<std::size_t>(i)] = registry.size() - 1;
            }
        }
        pool.push_back(std::move(tuple));
    }

    std::vector<CharFnTable> tables;
    tables.reserve(registry.size());
    for (const Distribution& d : registry) tables.push_back(char_fn(d));
    std::vector<std::optional<IdempotentClassification>> classified(registry.size());
    auto classify_cached = [&](std::size_t r) -> const IdempotentClassification& {
        if (!classified[r]) classified[r] = classify_idempotent(registry[r]);
        return *classified[r];
    };

    const std::int64_t order = g.order();
    const std::vector<std::int64_t> add = add_table(g);
    std::vector<Homomorphism> inverses;
    std::vector<std::vector<std::int64_t>> adj_perm;
    inverses.reserve(autos.size());
    adj_perm.reserve(autos.size());
    for (const Homomorphism& a : autos) {
        inverses.push_back(inverse(a));
        adj_perm.push_back(perm_table(g, adjoint(a)));
    }

    VerificationReport rep{g};
    rep.n = n;
    rep.mode = config.mode;
    rep.trials = config.trials;
    rep.seed = config.seed;

    // The scan works purely on element indices: coefficient tuples are index
    // vectors into `autos`, laid out as coeff[j*n + i] = coefficient of
    // variable i in form j.
    std::vector<std::int64_t> u(static_cast<std::size_t>(n));
    auto forms_independent_fast = [&](const std::vector<std::int64_t>& coeff,
                                      const std::vector<std::size_t>& dtuple) {
        std::fill(u.begin(), u.end(), 0);
        while (true) {
            Cyclo lhs(Rat(1));
            bool lhs_zero = false;
            for (std::int64_t i = 0; i < n && !lhs_zero; ++i) {
                std::int64_t arg = 0;
                for (std::int64_t j = 0; j < n; ++j)
                    arg = add[static_cast<std::size_t>(
                        arg * order +
                        adj_perm[static_cast<std::size_t>(coeff[static_cast<std::size_t>(
                            j * n + i)])][static_cast<std::size_t>(
                            u[static_cast<std::size_t>(j)])])];
                const Cyclo& v = tables[dtuple[static_cast<std::size_t>(i)]].value_at(arg);
                if (v.is_zero())
                    lhs_zero = true;
                else
                    lhs *= v;
            }
            Cyclo rhs(Rat(1));
            bool rhs_zero = false;
            for (std::int64_t i = 0; i < n && !rhs_zero; ++i)
                for (std::int64_t j = 0; j < n && !rhs_zero; ++j) {
                    const Cyclo& v = tables[dtuple[static_cast<std::size_t>(i)]].value_at(
                        adj_perm[static_cast<std::size_t>(
                            coeff[static_cast<std::size_t>(j * n + i)])]
                                [static_cast<std::size_t>(u[static_cast<std::size_t>(j)])]);
                    if (v.is_zero())
                        rhs_zero = true;
                    else
                        rhs *= v;
                }
            if (lhs_zero != rhs_zero) return false;
            if (!lhs_zero && !(lhs == rhs)) return false;
            std::int64_t pos = n - 1;
            while (pos >= 0 && ++u[static_cast<std::size_t>(pos)] == order) {
                u[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) return true;
        }
    };

    auto build_system = [&](const std::vector<std::int64_t>& coeff) {
        std::vector<std::vector<Homomorphism>> grid(static_cast<std::size_t>(n));
        for (std::int64_t j = 0; j < n; ++j)
            for (std::int64_t i = 0; i < n; ++i)
                grid[static_cast<std::size_t>(j)].push_back(
                    autos[static_cast<std::size_t>(coeff[static_cast<std::size_t>(j * n + i)])]);
        return make_form_system(g, std::move(grid));
    };

    auto handle_instance = [&](const std::vector<std::int64_t>& coeff,
                               const std::vector<std::size_t>& dtuple) {
        rep.instances_checked += 1;
        if (!forms_independent_fast(coeff, dtuple)) return;
        rep.independent_instances += 1;

        bool all_idempotent = true;
        for (std::int64_t i = 0; i < n; ++i)
            all_idempotent =
                classify_cached(dtuple[static_cast<std::size_t>(i)]).is_idempotent &&
                all_idempotent;
        if (!all_idempotent) {
            std::vector<Distribution> dists;
            std::vector<IdempotentClassification> cls;
            for (std::int64_t i = 0; i < n; ++i) {
                dists.push_back(registry[dtuple[static_cast<std::size_t>(i)]]);
                cls.push_back(classify_cached(dtuple[static_cast<std::size_t>(i)]));
            }
            FormSystem fs = build_system(coeff);
            const bool pmf_verdict =
                are_independent_pmf(dists, fs, config.step_cap).independent;
            const bool charfn_verdict =
                are_independent_charfn(dists, fs, config.step_cap).independent;
            rep.violations.push_back(Thm1Violation{std::move(dists), std::move(fs),
                                                   pmf_verdict, charfn_verdict,
                                                   std::move(cls)});
            return;
        }
        rep.idempotent_confirmations += 1;

        // Remark check: renormalize to gamma_ij = inv(a_1j) a_ij inv(phi_i)
        // with phi_i = inv(a_11) a_i1, push each input forward by phi_i, and
        // require one common subgroup across the classified inputs.
        std::vector<Homomorphism> phi;
        phi.reserve(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i)
            phi.push_back(compose(inverses[static_cast<std::size_t>(coeff[0])],
                                  autos[static_cast<std::size_t>(coeff[static_cast<std::size_t>(i)])]));
        std::vector<std::vector<Homomorphism>> grid(static_cast<std::size_t>(n));
        for (std::int64_t j = 0; j < n; ++j)
            for (std::int64_t i = 0; i < n; ++i)
                grid[static_cast<std::size_t>(j)].push_back(compose(
                    compose(inverses[static_cast<std::size_t>(
                                coeff[static_cast<std::size_t>(j * n)])],
                            autos[static_cast<std::size_t>(
                                coeff[static_cast<std::size_t>(j * n + i)])]),
                    inverse(phi[static_cast<std::size_t>(i)])));
        std::vector<Distribution> normalized;
        normalized.reserve(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i)
            normalized.push_back(pushforward_by(registry[dtuple[static_cast<std::size_t>(i)]],
                                                phi[static_cast<std::size_t>(i)]));
        rep.remark1_checked += 1;
        if (!check_remark1(normalized, make_form_system(g, std::move(grid)),
                           config.step_cap))
            rep.remark1_failures += 1;
    };

    if (config.mode == Thm1Mode::exhaustive) {
        rep.coefficient_tuples = tuple_count;
        std::vector<std::int64_t> coeff(static_cast<std::size_t>(cells), 0);
        while (true) {
            for (const auto& dtuple : pool) handle_instance(coeff, dtuple);
            std::int64_t pos = cells - 1;
            while (pos >= 0 && ++coeff[static_cast<std::size_t>(pos)] == auto_count) {
                coeff[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    } else {
        rep.coefficient_tuples = config.trials;
        DetRng coeff_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
        std::vector<std::int64_t> coeff(static_cast<std::size_t>(cells));
        for (std::int64_t t = 0; t < config.trials; ++t) {
            for (std::int64_t& c : coeff) c = coeff_rng.below(auto_count);
            handle_instance(coeff, pool[static_cast<std::size_t>(t)]);
        }
    }
    return rep;
}

bool check_remark1(const std::vector<Distribution>& dists, const FormSystem& fs,
                   std::int64_t step_cap) {
    if (fs.k != fs.n || fs.n < 2)
        fail(Errc::invalid_instance,
             "the common-subgroup check needs a square system of at least two "
             "forms, got " +
                 std::to_string(fs.k) + " forms in " + std::to_string(fs.n) +
                 " variables");
    if (static_cast<std::int64_t>(dists.size()) != fs.n)
        fail(Errc::invalid_instance,
             "expected " + std::to_string(fs.n) + " distributions, got " +
                 std::to_string(dists.size()));
    for (const Distribution& d : dists)
        if (!(d.group() == fs.group))
            fail(Errc::invalid_instance, "distribution on " + d.group().str() +
                                             " does not match the system on " +
                                             fs.group.str());
    const Homomorphism id = identity_endomorphism(fs.group);
    for (std::int64_t j = 0; j < fs.k; ++j)
        if (!(fs.coeffs[static_cast<std::size_t>(j)][0] == id))
            fail(Errc::invalid_instance, "coefficient of variable 1 in form " +
                                             std::to_string(j + 1) +
                                             " must be the identity");
    for (std::int64_t i = 0; i < fs.n; ++i)
        if (!(fs.coeffs[0][static_cast<std::size_t>(i)] == id))
            fail(Errc::invalid_instance, "coefficient of variable " +
                                             std::to_string(i + 1) +
                                             " in form 1 must be the identity");
    for (std::int64_t j = 0; j < fs.k; ++j)
        for (std::int64_t i = 0; i < fs.n; ++i)
            if (!is_automorphism(fs.coeffs[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]))
                fail(Errc::invalid_instance,
                     "coefficient of variable " + std::to_string(i + 1) + " in form " +
                         std::to_string(j + 1) + " is not an automorphism");
    if (!are_independent_charfn(dists, fs, step_cap).independent)
        fail(Errc::invalid_instance, "the forms are not independent");

    std::optional<Subgroup> common;
    for (const Distribution& d : dists) {
        IdempotentClassification c = classify_idempotent(d);
        if (!c.is_idempotent) return false;
        if (!common)
            common = *c.subgroup;
        else if (!(*common == *c.subgroup))
            return false;
    }
    return true;
}

Corollary1Report check_corollary1(const std::vector<CharFnTable>& tables,
                                  const FormSystem& fs, std::int64_t step_cap) {
    const Group& g = fs.group;
    const std::int64_t n = fs.n;
    if (fs.k != n || n < 2)
        fail(Errc::invalid_instance,
             "the dichotomy needs a square system of at least two forms, got " +
                 std::to_string(fs.k) + " forms in " + std::to_string(n) +
                 " variables");
    if (static_cast<std::int64_t>(tables.size()) != n)
        fail(Errc::invalid_instance,
             "expected " + std::to_string(n) + " characteristic tables, got " +
                 std::to_string(tables.size()));
    for (const CharFnTable& t : tables)
        if (!(t.group() == g))
            fail(Errc::invalid_instance, "table on " + t.group().str() +
                                             " does not match the system on " +
                                             g.str());
    const Homomorphism id = identity_endomorphism(g);
    for (std::int64_t j = 0; j < n; ++j)
        if (!(fs.coeffs[static_cast<std::size_t>(j)][0] == id))
            fail(Errc::invalid_instance, "coefficient of variable 1 in form " +
                                             std::to_string(j + 1) +
                                             " must be the identity");
    for (std::int64_t i = 0; i < n; ++i)
        if (!(fs.coeffs[0][static_cast<std::size_t>(i)] == id))
            fail(Errc::invalid_instance, "coefficient of variable " +
                                             std::to_string(i + 1) +
                                             " in form 1 must be the identity");
    for (std::int64_t j = 0; j < n; ++j)
        for (std::int64_t i = 0; i < n; ++i)
            if (!is_automorphism(fs.coeffs[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]))
                fail(Errc::invalid_instance,
                     "coefficient of variable " + std::to_string(i + 1) + " in form " +
                         std::to_string(j + 1) + " is not an automorphism");
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t y = 0; y < g.order(); ++y) {
            const Cyclo& v = tables[static_cast<std::size_t>(i)].value_at(y);
            if (!v.is_real())
                fail(Errc::invalid_instance, "table " + std::to_string(i + 1) +
                                                 " is not real at index " +
                                                 std::to_string(y));
            if (!v.is_zero() && v.to_double_real() < 1e-9)
                fail(Errc::invalid_instance,
                     "table " + std::to_string(i + 1) +
                         " has a negative or ambiguously small value at index " +
                         std::to_string(y));
        }

    const std::int64_t order = g.order();
    if (pow_clamped(order, n) > step_cap)
        fail(Errc::too_large, "the identity scan needs " + std::to_string(order) +
                                  "^" + std::to_string(n) +
                                  " steps, over the cap of " +
                                  std::to_string(step_cap));

    // The identity with the coefficients applied as given (no adjoints: these
    // systems already live on the character side).
    const std::vector<std::int64_t> add = add_table(g);
    std::vector<std::vector<std::vector<std::int64_t>>> perm(
        static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < n; ++j)
        for (std::int64_t i = 0; i < n; ++i)
            perm[static_cast<std::size_t>(j)].push_back(
                perm_table(g, fs.coeffs[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]));

    std::vector<std::int64_t> u(static_cast<std::size_t>(n), 0);
    while (true) {
        Cyclo lhs(Rat(1));
        bool lhs_zero = false;
        for (std::int64_t i = 0; i < n && !lhs_zero; ++i) {
            std::int64_t arg = 0;
            for (std::int64_t j = 0; j < n; ++j)
                arg = add[static_cast<std::size_t>(
                    arg * order + perm[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]
                                      [static_cast<std::size_t>(u[static_cast<std::size_t>(j)])])];
            const Cyclo& v = tables[static_cast<std::size_t>(i)].value_at(arg);
            if (v.is_zero())
                lhs_zero = true;
            else
                lhs *= v;
        }
        Cyclo rhs(Rat(1));
        bool rhs_zero = false;
        for (std::int64_t i = 0; i < n && !rhs_zero; ++i)
            for (std::int64_t j = 0; j < n && !rhs_zero; ++j) {
                const Cyclo& v = tables[static_cast<std::size_t>(i)].value_at(
                    perm[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]
                        [static_cast<std::size_t>(u[static_cast<std::size_t>(j)])]);
                if (v.is_zero())
                    rhs_zero = true;
                else
                    rhs *= v;
            }
        if (lhs_zero != rhs_zero || (!lhs_zero && !(lhs == rhs))) {
            std::string tuple;
            for (std::int64_t j = 0; j < n; ++j) {
                if (j) tuple += ", ";
                tuple += g.element_at(u[static_cast<std::size_t>(j)]).str();
            }
            fail(Errc::not_applicable,
                 "the product identity fails at u = (" + tuple + ")");
        }
        std::int64_t pos = n - 1;
        while (pos >= 0 && ++u[static_cast<std::size_t>(pos)] == order) {
            u[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }

    Corollary1Report rep;
    const Cyclo one(Rat(1));
    for (std::int64_t i = 0; i < n; ++i) {
        std::vector<Element> members;
        for (std::int64_t y = 0; y < order; ++y)
            if (tables[static_cast<std::size_t>(i)].value_at(y) == one)
                members.push_back(g.element_at(y));
        rep.f_subgroups.push_back(Subgroup(g, std::move(members)));
    }

    bool all_trivial = true, any_trivial = false;
    for (const Subgroup& f : rep.f_subgroups) {
        all_trivial = all_trivial && f.is_trivial();
        any_trivial = any_trivial || f.is_trivial();
    }
    if (all_trivial) {
        rep.all_trivial = true;
        return rep;
    }
    if (any_trivial)
        throw std::logic_error(
            "mixed trivial and nontrivial fixed-point subgroups despite the "
            "product identity");

    for (std::int64_t p = 2; p <= order; ++p) {
        if (!is_prime(p) || order % p != 0) continue;
        Subgroup torsion = p_component(g, p);
        Subgroup h = intersect(torsion, rep.f_subgroups[0]);
        if (h.is_trivial()) continue;
        for (std::int64_t i = 1; i < n; ++i)
            if (!(intersect(torsion, rep.f_subgroups[static_cast<std::size_t>(i)]) == h))
                throw std::logic_error(
                    "torsion intersections of the fixed-point subgroups differ "
                    "despite the product identity");
        for (std::int64_t j = 0; j < n; ++j)
            for (std::int64_t i = 0; i < n; ++i)
                if (!(image_subgroup(fs.coeffs[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)], h) == h))
                    throw std::logic_error(
                        "the exhibited subgroup is not coefficient-invariant");
        rep.common_invariant = std::move(h);
        return rep;
    }
    throw std::logic_error(
        "no prime torsion intersection found despite a nontrivial fixed-point "
        "subgroup");
}

CounterexampleBundle thm2_counterexample(std::int64_t p, std::int64_t n,
                                         std::int64_t k) {
    if (p <= 2 || !is_prime(p))
        fail(Errc::invalid_parameters,
             "p must be an odd prime, got " + std::to_string(p));
    if (n % p == 0)
        fail(Errc::invalid_parameters, "p = " + std::to_string(p) +
                                           " must not divide n = " +
                                           std::to_string(n));
    if (!(n > k && k > 1))
        fail(Errc::invalid_parameters, "need n > k > 1, got n = " +
                                           std::to_string(n) + ", k = " +
                                           std::to_string(k));
    const std::int64_t order = pow_clamped(p, n);
    if (pow_clamped(order, k) > default_step_cap)
        fail(Errc::too_large,
             "the verification scans |X|^k = " + std::to_string(p) + "^" +
                 std::to_string(n * k) + " tuples, over the cap of " +
                 std::to_string(default_step_cap));

    Group g = make_group(std::vector<std::int64_t>(static_cast<std::size_t>(n), p));
    const Homomorphism id = identity_endomorphism(g);
    const Homomorphism twice = scalar_endomorphism(g, 2);
    std::vector<std::vector<Homomorphism>> grid(static_cast<std::size_t>(k));
    for (std::int64_t j = 0; j < k; ++j)
        for (std::int64_t i = 0; i < n; ++i)
            grid[static_cast<std::size_t>(j)].push_back(i == j + 1 ? twice : id);
    FormSystem fs = make_form_system(g, std::move(grid));

    // Input i reweights the uniform distribution by 1 + Re (x, e_i).
    const Cyclo unit_mass(Rat(1, g.order()));
    std::vector<Distribution> dists;
    dists.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        Element e = g.zero();
        e.c[static_cast<std::size_t>(i)] = 1;
        std::vector<Cyclo> pmf;
        pmf.reserve(static_cast<std::size_t>(g.order()));
        for (std::int64_t x = 0; x < g.order(); ++x)
            pmf.push_back(
                (Cyclo(1) + pairing(g, g.element_at(x), e).to_cyclo().real_part()) *
                unit_mass);
        dists.push_back(make_distribution(g, std::move(pmf)));
    }

    CounterexampleBundle bundle{g, std::move(dists), std::move(fs)};
    bundle.forms_independent =
        are_independent_charfn(bundle.dists, bundle.forms).independent;
    if (pow_clamped(g.order(), n) <= default_step_cap) {
        bundle.pmf_checked = true;
        bundle.pmf_independent =
            are_independent_pmf(bundle.dists, bundle.forms).independent;
    }
    bundle.all_nonidempotent = true;
    bundle.full_support = true;
    for (const Distribution& d : bundle.dists) {
        bundle.all_nonidempotent =
            bundle.all_nonidempotent && !classify_idempotent(d).is_idempotent;
        bundle.full_support =
            bundle.full_support &&
            static_cast<std::int64_t>(support(d).size()) == g.order();
    }
    return bundle;
}

CounterexampleBundle prop1_counterexample(const Group& g, const Rat& weight) {
    if (!(Rat(0) < weight && weight < Rat(1)))
        fail(Errc::invalid_parameters,
             "the mixture weight must lie strictly between 0 and 1, got " +
                 weight.str());
    if (is_prime(g.order()))
        fail(Errc::not_applicable,
             "no such example exists on " + g.str() +
                 ": the construction needs a group that is not cyclic of prime "
                 "order");

    const Homomorphism id = identity_endomorphism(g);
    std::optional<Homomorphism> alpha_built, beta_built;
    if (g.exponent() == g.order()) {
        // Cyclic: scalars c = p, d = p-1 on the p-power part, extended by
        // 1 and -1 on the coprime part. The kernel of c is then the unique
        // subgroup of order p, d is invertible, and c^2 - d is a unit.
        const std::int64_t big_n = g.order();
        const std::int64_t p = smallest_prime_factor(big_n);
        std::int64_t ppart = 1, rest = big_n;
        while (rest % p == 0) {
            ppart *= p;
            rest /= p;
        }
        std::int64_t c, d;
        if (rest == 1) {
            c = p;
            d = p - 1;
        } else {
            c = crt(p % ppart, ppart, 1, rest);
            d = crt((p - 1) % ppart, ppart, rest - 1, rest);
        }
        alpha_built = scalar_endomorphism(g, c);
        beta_built = scalar_endomorphism(g, d);
    } else {
        // Two coordinates share a prime: route the first into the second
        // with a single matrix entry. That map squares to zero, so the
        // separation condition below is immediate.
        std::int64_t src = -1, dst = -1;
        for (std::int64_t a = 0; a < g.rank() && src < 0; ++a)
            for (std::int64_t b = a + 1; b < g.rank(); ++b)
                if (std::gcd(g.moduli()[static_cast<std::size_t>(a)],
                             g.moduli()[static_cast<std::size_t>(b)]) > 1) {
                    src = a;
                    dst = b;
                    break;
                }
        std::vector<std::vector<std::int64_t>> m(
            static_cast<std::size_t>(g.rank()),
            std::vector<std::int64_t>(static_cast<std::size_t>(g.rank()), 0));
        const std::int64_t shared =
            std::gcd(g.moduli()[static_cast<std::size_t>(src)],
                     g.moduli()[static_cast<std::size_t>(dst)]);
        m[static_cast<std::size_t>(dst)][static_cast<std::size_t>(src)] =
            g.moduli()[static_cast<std::size_t>(dst)] / shared;
        alpha_built = make_homomorphism(g, std::move(m));
        beta_built = id;
    }
    const Homomorphism& alpha = *alpha_built;
    const Homomorphism& beta = *beta_built;

    // The three defining conditions, each rechecked from scratch.
    if (is_automorphism(alpha))
        throw std::logic_error("constructed alpha is invertible on " + g.str());
    if (!is_automorphism(beta))
        throw std::logic_error("constructed beta is not invertible on " + g.str());
    const Subgroup ker_alpha = kernel_of(alpha);
    if (!(image_subgroup(beta, ker_alpha) == ker_alpha))
        throw std::logic_error("constructed beta does not preserve Ker alpha on " +
                               g.str());
    for (std::int64_t x = 1; x < g.order(); ++x) {
        Element e = g.element_at(x);
        if (alpha(alpha(e)) == beta(e))
            throw std::logic_error("alpha^2 meets beta at " + e.str() + " on " +
                                   g.str());
    }

    const Subgroup h = kernel_of(adjoint(alpha));
    const Subgroup annih = annihilator(g, h);
    Distribution mu =
        mix({{Rat(1) - weight, haar(g)}, {weight, haar(g, annih)}});
    FormSystem fs = make_form_system(g, {{alpha, beta}, {id, alpha}});

    // The stacked adjoint map must be invertible on the squared group and fix
    // H x H pointwise as a set.
    StackedFormMap stacked = stacked_form_map(fs, true);
    if (!stacked.automorphism)
        throw std::logic_error("the stacked adjoint map is not invertible on " +
                               g.str());
    for (const Element& a : h.members())
        for (const Element& b : h.members()) {
            std::vector<Element> parts =
                unpack_tuple(g, 2, stacked.map(pack_tuple(g, {a, b})));
            if (!h.contains(parts[0]) || !h.contains(parts[1]))
                throw std::logic_error(
                    "the stacked adjoint map does not preserve H^2 on " + g.str());
        }

    std::vector<Distribution> dists{mu, mu};
    CounterexampleBundle bundle{g, std::move(dists), std::move(fs)};
    bundle.forms_independent =
        are_independent_charfn(bundle.dists, bundle.forms).independent;
    if (pow_clamped(g.order(), 2) <= default_step_cap) {
        bundle.pmf_checked = true;
        bundle.pmf_independent =
            are_independent_pmf(bundle.dists, bundle.forms).independent;
    }
    bundle.all_nonidempotent = true;
    bundle.full_support = true;
    for (const Distribution& d : bundle.dists) {
        bundle.all_nonidempotent =
            bundle.all_nonidempotent && !classify_idempotent(d).is_idempotent;
        bundle.full_support =
            bundle.full_support &&
            static_cast<std::int64_t>(support(d).size()) == g.order();
    }
    return bundle;
}

}  // namespace finabel
