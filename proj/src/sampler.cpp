#include "finabel/sampler.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

#include "finabel/error.hpp"

namespace finabel {

std::int64_t DetRng::below(std::int64_t bound) {
    if (bound <= 0)
        fail(Errc::invalid_parameters,
             "draw bound must be positive, got " + std::to_string(bound));
    const std::uint64_t b = static_cast<std::uint64_t>(bound);
    // Largest multiple of b that fits; rejecting words at or above it keeps
    // the residue exactly uniform.
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % b;
    std::uint64_t r;
    do {
        r = engine_();
    } while (r >= limit);
    return static_cast<std::int64_t>(r % b);
}

namespace {

void push_if_new(std::vector<Distribution>& out, Distribution d) {
    for (const Distribution& have : out)
        if (have == d) return;
    out.push_back(std::move(d));
}

Distribution two_point(const Group& g, std::int64_t idx, const Rat& at_zero) {
    std::vector<Rat> pmf(static_cast<std::size_t>(g.order()), Rat(0));
    pmf[0] = at_zero;
    pmf[static_cast<std::size_t>(idx)] = Rat(1) - at_zero;
    return make_distribution(g, pmf);
}

}  // namespace

std::vector<Distribution> distribution_battery(const Group& g) {
    if (g.order() < 2)
        fail(Errc::invalid_parameters,
             "distribution battery needs a nontrivial group, got " + g.str());
    std::vector<Distribution> out;

    for (std::int64_t i = 0; i < g.order(); ++i)
        push_if_new(out, degenerate(g, g.element_at(i)));

    for (const Subgroup& k : enumerate_subgroups(g)) {
        Distribution mk = haar(g, k);
        push_if_new(out, mk);
        if (k.is_full()) continue;
        for (std::int64_t i = 0; i < g.order(); ++i) {
            Element x = g.element_at(i);
            if (!k.contains(x)) {
                push_if_new(out, convolve(mk, degenerate(g, x)));
                break;
            }
        }
        for (const Rat& b : {Rat(1, 2), Rat(1, 3)})
            push_if_new(out, mix({{Rat(1) - b, haar(g)}, {b, mk}}));
    }

    for (std::int64_t i = 1; i < g.order(); ++i) {
        push_if_new(out, two_point(g, i, Rat(1, 2)));
        push_if_new(out, two_point(g, i, Rat(1, 3)));
    }

    // Triangular weights 1, 2, ..., |g|: full support and never idempotent.
    const std::int64_t total = g.order() * (g.order() + 1) / 2;
    std::vector<Rat> tri;
    for (std::int64_t i = 0; i < g.order(); ++i) tri.emplace_back(i + 1, total);
    push_if_new(out, make_distribution(g, tri));

    DetRng pad(0x5eed0baddecafULL);
    for (int attempts = 0; out.size() < 20 && attempts < 20000; ++attempts)
        push_if_new(out, random_distribution(pad, g));
    if (out.size() < 20)
        throw std::logic_error("distribution battery under-filled for " + g.str());
    return out;
}

Distribution random_distribution(DetRng& rng, const Group& g,
                                 std::int64_t max_den) {
    if (max_den < 1)
        fail(Errc::invalid_parameters,
             "max_den must be at least 1, got " + std::to_string(max_den));
    const std::int64_t d = 1 + rng.below(max_den);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(g.order()), 0);
    for (std::int64_t t = 0; t < d; ++t)
        counts[static_cast<std::size_t>(rng.below(g.order()))] += 1;
    std::vector<Rat> pmf;
    for (std::int64_t c : counts) pmf.emplace_back(c, d);
    return make_distribution(g, pmf);
}

}  // namespace finabel
