#include "finabel/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace finabel {

namespace {

// Exact sign gate for a mass that is already known to be real: exact zero
// passes, otherwise the float view must be decisively positive. The guard
// threshold is far below any value expressible at the scales this library
// accepts, so an "ambiguous" rejection signals corrupt input rather than a
// borderline case.
bool decisively_nonnegative(const Cyclo& v) {
    if (v.is_zero()) return true;
    double r = v.to_double_real();
    if (std::abs(r) < 1e-9)
        fail(Errc::invalid_distribution,
             "mass " + v.str() + " is too close to zero to sign-check");
    return r > 0;
}

// mass * zeta_m^e where m is the pairing order; promotes rational masses
// into Q(zeta_m) first so the table-driven root multiply applies.
Cyclo times_pairing(const Cyclo& mass, const RootOfUnity& r) {
    if (r.m == 1 || mass.is_zero()) return mass;
    if (mass.modulus() == r.m) return mass.times_root(r.e);
    return Cyclo(mass.rational_value(), r.m).times_root(r.e);
}

}  // namespace

const Cyclo& Distribution::mass(const Element& x) const {
    return pmf_[static_cast<std::size_t>(group_.index_of(x))];
}

const Cyclo& Distribution::mass_at(std::int64_t index) const {
    if (index < 0 || index >= group_.order())
        fail(Errc::invalid_element, "element index " + std::to_string(index) +
                                        " out of range for " + group_.str());
    return pmf_[static_cast<std::size_t>(index)];
}

bool Distribution::is_rational() const {
    return std::all_of(pmf_.begin(), pmf_.end(),
                       [](const Cyclo& v) { return v.is_rational(); });
}

bool Distribution::operator==(const Distribution& o) const {
    if (!(group_ == o.group_)) return false;
    for (std::size_t i = 0; i < pmf_.size(); ++i)
        if (pmf_[i] != o.pmf_[i]) return false;
    return true;
}

Distribution make_distribution(const Group& g, std::vector<Cyclo> pmf) {
    if (pmf.size() != static_cast<std::size_t>(g.order()))
        fail(Errc::invalid_distribution,
             "pmf has " + std::to_string(pmf.size()) + " masses, expected " +
                 std::to_string(g.order()) + " for " + g.str());
    Cyclo total(Rat(0));
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        const Cyclo& v = pmf[i];
        if (!v.is_rational() && v.modulus() != g.exponent())
            fail(Errc::invalid_distribution,
                 "mass at index " + std::to_string(i) +
                     " lives in Q(zeta_" + std::to_string(v.modulus()) +
                     "), expected Q(zeta_" + std::to_string(g.exponent()) + ")");
        if (!v.is_real())
            fail(Errc::invalid_distribution,
                 "mass at index " + std::to_string(i) + " is not real: " + v.str());
        if (!decisively_nonnegative(v))
            fail(Errc::invalid_distribution,
                 "mass at index " + std::to_string(i) + " is negative: " + v.str());
        total += v;
    }
    if (!total.is_one())
        fail(Errc::invalid_distribution, "masses sum to " + total.str() + ", expected 1");
    return Distribution(g, std::move(pmf));
}

Distribution make_distribution(const Group& g, const std::vector<Rat>& pmf) {
    std::vector<Cyclo> masses;
    masses.reserve(pmf.size());
    for (const Rat& r : pmf) masses.emplace_back(r);
    return make_distribution(g, std::move(masses));
}

Distribution degenerate(const Group& g, const Element& x) {
    std::vector<Cyclo> pmf(static_cast<std::size_t>(g.order()), Cyclo(Rat(0)));
    pmf[static_cast<std::size_t>(g.index_of(x))] = Cyclo(Rat(1));
    return make_distribution(g, std::move(pmf));
}

Distribution haar(const Group& g, const Subgroup& k) {
    if (!(k.parent() == g))
        fail(Errc::invalid_subgroup, "subgroup of " + k.parent().str() +
                                         " used with " + g.str());
    std::vector<Cyclo> pmf(static_cast<std::size_t>(g.order()), Cyclo(Rat(0)));
    Cyclo w(Rat(1, k.order()));
    for (const Element& x : k.members())
        pmf[static_cast<std::size_t>(g.index_of(x))] = w;
    return make_distribution(g, std::move(pmf));
}

Distribution haar(const Group& g) { return haar(g, full_subgroup(g)); }

Distribution convolve(const Distribution& a, const Distribution& b) {
    if (!(a.group() == b.group()))
        fail(Errc::invalid_distribution, "convolution of distributions on " +
                                             a.group().str() + " and " + b.group().str());
    const Group& g = a.group();
    std::vector<Cyclo> pmf(static_cast<std::size_t>(g.order()), Cyclo(Rat(0)));
    for (std::int64_t xi = 0; xi < g.order(); ++xi) {
        const Cyclo& ax = a.pmf()[static_cast<std::size_t>(xi)];
        if (ax.is_zero()) continue;
        Element x = g.element_at(xi);
        for (std::int64_t yi = 0; yi < g.order(); ++yi) {
            const Cyclo& by = b.pmf()[static_cast<std::size_t>(yi)];
            if (by.is_zero()) continue;
            std::size_t zi =
                static_cast<std::size_t>(g.index_of(g.add(x, g.element_at(yi))));
            pmf[zi] += ax * by;
        }
    }
    return make_distribution(g, std::move(pmf));
}

Distribution reflect(const Distribution& mu) {
    const Group& g = mu.group();
    std::vector<Cyclo> pmf(static_cast<std::size_t>(g.order()), Cyclo(Rat(0)));
    for (std::int64_t i = 0; i < g.order(); ++i)
        pmf[static_cast<std::size_t>(g.index_of(g.negate(g.element_at(i))))] =
            mu.pmf()[static_cast<std::size_t>(i)];
    return make_distribution(g, std::move(pmf));
}

Distribution mix(const std::vector<std::pair<Rat, Distribution>>& parts) {
    if (parts.empty()) fail(Errc::invalid_distribution, "mixture of zero parts");
    const Group& g = parts[0].second.group();
    std::vector<Cyclo> pmf(static_cast<std::size_t>(g.order()), Cyclo(Rat(0)));
    for (const auto& [w, mu] : parts) {
        if (!(mu.group() == g))
            fail(Errc::invalid_distribution, "mixture parts on different groups");
        Cyclo cw{w};
        for (std::size_t i = 0; i < pmf.size(); ++i) pmf[i] += cw * mu.pmf()[i];
    }
    return make_distribution(g, std::move(pmf));
}

CharFnTable::CharFnTable(Group g, std::vector<Cyclo> values)
    : group_(std::move(g)), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(group_.order()))
        throw std::logic_error("characteristic table size mismatch");
    if (!values_[0].is_one())
        throw std::logic_error("characteristic function is " + values_[0].str() +
                               " at 0, expected 1");
    for (const Cyclo& v : values_)
        if (std::abs(v.to_complex()) > 1.0 + 1e-12)
            throw std::logic_error("characteristic value " + v.str() +
                                   " exceeds unit modulus");
}

const Cyclo& CharFnTable::value(const Element& y) const {
    return values_[static_cast<std::size_t>(group_.index_of(y))];
}

const Cyclo& CharFnTable::value_at(std::int64_t index) const {
    if (index < 0 || index >= group_.order())
        fail(Errc::invalid_element, "element index " + std::to_string(index) +
                                        " out of range for " + group_.str());
    return values_[static_cast<std::size_t>(index)];
}

CharFnTable char_fn(const Distribution& mu) {
    const Group& g = mu.group();
    std::vector<Cyclo> values;
    values.reserve(static_cast<std::size_t>(g.order()));
    for (std::int64_t yi = 0; yi < g.order(); ++yi) {
        Element y = g.element_at(yi);
        Cyclo acc(Rat(0));
        for (std::int64_t xi = 0; xi < g.order(); ++xi) {
            const Cyclo& m = mu.pmf()[static_cast<std::size_t>(xi)];
            if (m.is_zero()) continue;
            acc += times_pairing(m, pairing(g, g.element_at(xi), y));
        }
        values.push_back(std::move(acc));
    }
    return CharFnTable(g, std::move(values));
}

Subgroup f_subgroup(const Distribution& mu) {
    const Group& g = mu.group();
    std::vector<Element> supp = support(mu);
    std::vector<Element> members;
    for (std::int64_t yi = 0; yi < g.order(); ++yi) {
        Element y = g.element_at(yi);
        bool all_one = true;
        for (const Element& x : supp)
            if (pairing_exponent(g, x, y) != 0) {
                all_one = false;
                break;
            }
        if (all_one) members.push_back(y);
    }
    return Subgroup(g, std::move(members));
}

std::vector<Element> support(const Distribution& mu) {
    std::vector<Element> out;
    for (std::int64_t i = 0; i < mu.group().order(); ++i)
        if (!mu.pmf()[static_cast<std::size_t>(i)].is_zero())
            out.push_back(mu.group().element_at(i));
    return out;
}

IdempotentClassification classify_idempotent(const Distribution& mu) {
    const Group& g = mu.group();
    std::vector<Element> supp = support(mu);
    // Uniform mass on the support?
    const Cyclo& first = mu.mass(supp[0]);
    for (const Element& x : supp)
        if (mu.mass(x) != first) return {};
    // Support a coset of a subgroup? Shift by the lexicographically smallest
    // support element (the first in index order) and test closure.
    Element x0 = supp[0];
    std::vector<bool> in_shifted(static_cast<std::size_t>(g.order()), false);
    std::vector<Element> shifted;
    shifted.reserve(supp.size());
    for (const Element& s : supp) {
        Element d = g.sub(s, x0);
        in_shifted[static_cast<std::size_t>(g.index_of(d))] = true;
        shifted.push_back(d);
    }
    for (const Element& a : shifted) {
        if (!in_shifted[static_cast<std::size_t>(g.index_of(g.negate(a)))]) return {};
        for (const Element& b : shifted)
            if (!in_shifted[static_cast<std::size_t>(g.index_of(g.add(a, b)))]) return {};
    }
    std::sort(shifted.begin(), shifted.end());
    IdempotentClassification out;
    out.is_idempotent = true;
    out.subgroup = Subgroup(g, std::move(shifted));
    out.shift = x0;
    return out;
}

}  // namespace finabel
