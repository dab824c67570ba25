#include "finabel/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace finabel {

// ---------------------------------------------------------------------------
// Element / Group basics

std::string Element::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(c[i]);
    }
    return s + ")";
}

Group::Group(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) fail(Errc::invalid_group, "moduli list is empty");
    order_ = 1;
    exponent_ = 1;
    for (std::int64_t n : moduli_) {
        if (n < 1) fail(Errc::invalid_group, "modulus " + std::to_string(n) + " is not positive");
        if (order_ > (std::int64_t{1} << 62) / n)
            fail(Errc::too_large, "group order exceeds 2^62");
        order_ *= n;
        exponent_ = std::lcm(exponent_, n);
    }
}

Group make_group(const std::vector<std::int64_t>& moduli) {
    if (moduli.empty()) fail(Errc::invalid_group, "moduli list is empty");
    for (std::int64_t n : moduli)
        if (n < 2)
            fail(Errc::invalid_group,
                 "modulus " + std::to_string(n) + " is invalid (each factor must be >= 2)");
    return Group(moduli);
}

Element Group::zero() const { return Element{std::vector<std::int64_t>(moduli_.size(), 0)}; }

Element Group::add(const Element& a, const Element& b) const {
    require_valid(a);
    require_valid(b);
    Element r = a;
    for (std::size_t i = 0; i < moduli_.size(); ++i) r.c[i] = (r.c[i] + b.c[i]) % moduli_[i];
    return r;
}

Element Group::negate(const Element& a) const {
    require_valid(a);
    Element r = a;
    for (std::size_t i = 0; i < moduli_.size(); ++i) r.c[i] = (moduli_[i] - r.c[i]) % moduli_[i];
    return r;
}

Element Group::scale(std::int64_t k, const Element& a) const {
    require_valid(a);
    Element r = a;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        std::int64_t v = (k % moduli_[i]) * r.c[i] % moduli_[i];
        r.c[i] = (v + moduli_[i]) % moduli_[i];
    }
    return r;
}

bool Group::valid(const Element& a) const {
    if (a.c.size() != moduli_.size()) return false;
    for (std::size_t i = 0; i < moduli_.size(); ++i)
        if (a.c[i] < 0 || a.c[i] >= moduli_[i]) return false;
    return true;
}

void Group::require_valid(const Element& a) const {
    if (!valid(a))
        fail(Errc::invalid_element,
             "element " + a.str() + " is not a member of " + str());
}

std::int64_t Group::index_of(const Element& a) const {
    require_valid(a);
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) idx = idx * moduli_[i] + a.c[i];
    return idx;
}

Element Group::element_at(std::int64_t idx) const {
    if (idx < 0 || idx >= order_)
        fail(Errc::invalid_element, "element index " + std::to_string(idx) + " out of range");
    Element r{std::vector<std::int64_t>(moduli_.size(), 0)};
    for (std::size_t i = moduli_.size(); i-- > 0;) {
        r.c[i] = idx % moduli_[i];
        idx /= moduli_[i];
    }
    return r;
}

std::int64_t Group::element_order(const Element& a) const {
    require_valid(a);
    std::int64_t ord = 1;
    for (std::size_t i = 0; i < moduli_.size(); ++i)
        ord = std::lcm(ord, moduli_[i] / std::gcd(moduli_[i], a.c[i]));
    return ord;
}

std::string Group::str() const {
    std::string s;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        if (i) s += " x ";
        s += "Z(" + std::to_string(moduli_[i]) + ")";
    }
    return s;
}

// ---------------------------------------------------------------------------
// Pairing

std::int64_t pairing_exponent(const Group& g, const Element& x, const Element& y) {
    g.require_valid(x);
    g.require_valid(y);
    std::int64_t m = g.exponent();
    std::int64_t e = 0;
    const auto& n = g.moduli();
    for (std::size_t i = 0; i < n.size(); ++i)
        e = (e + (m / n[i]) % m * (x.c[i] % m) % m * (y.c[i] % m)) % m;
    return e;
}

RootOfUnity pairing(const Group& g, const Element& x, const Element& y) {
    return RootOfUnity(pairing_exponent(g, x, y), g.exponent());
}

// ---------------------------------------------------------------------------
// Subgroups

Subgroup::Subgroup(Group parent, std::vector<Element> members_sorted)
    : parent_(std::move(parent)), members_(std::move(members_sorted)) {
    if (members_.empty()) fail(Errc::invalid_subgroup, "subgroup has no members");
    mask_.assign(static_cast<std::size_t>(parent_.order()), false);
    std::int64_t prev = -1;
    for (const Element& x : members_) {
        std::int64_t idx = parent_.index_of(x);  // validates membership in parent
        if (idx <= prev) fail(Errc::invalid_subgroup, "member list not sorted/unique");
        prev = idx;
        mask_[static_cast<std::size_t>(idx)] = true;
    }
    if (!mask_[0]) fail(Errc::invalid_subgroup, "subgroup does not contain zero");
    if (parent_.order() % order() != 0)
        fail(Errc::invalid_subgroup, "member count does not divide group order");
}

std::vector<Element> Subgroup::generators() const {
    std::vector<Element> gens;
    Subgroup have = trivial_subgroup(parent_);
    for (const Element& x : members_) {
        if (have.contains(x)) continue;
        gens.push_back(x);
        std::vector<Element> g2 = gens;
        have = subgroup_generate(parent_, g2);
        if (have.order() == order()) break;
    }
    return gens;
}

Subgroup trivial_subgroup(const Group& g) { return Subgroup(g, {g.zero()}); }

Subgroup full_subgroup(const Group& g) {
    std::vector<Element> all;
    all.reserve(static_cast<std::size_t>(g.order()));
    for (std::int64_t i = 0; i < g.order(); ++i) all.push_back(g.element_at(i));
    return Subgroup(g, std::move(all));
}

Subgroup subgroup_generate(const Group& g, const std::vector<Element>& gens) {
    std::vector<bool> in(static_cast<std::size_t>(g.order()), false);
    std::vector<Element> members{g.zero()};
    in[0] = true;
    for (const Element& gen : gens) {
        g.require_valid(gen);
        if (in[static_cast<std::size_t>(g.index_of(gen))]) continue;
        // <S, gen> = union of cosets S + t*gen (abelian closure).
        std::vector<Element> base = members;
        std::int64_t ord = g.element_order(gen);
        Element step = g.zero();
        for (std::int64_t t = 1; t < ord; ++t) {
            step = g.add(step, gen);
            for (const Element& s : base) {
                Element v = g.add(s, step);
                std::size_t idx = static_cast<std::size_t>(g.index_of(v));
                if (!in[idx]) {
                    in[idx] = true;
                    members.push_back(v);
                }
            }
        }
    }
    std::sort(members.begin(), members.end());
    return Subgroup(g, std::move(members));
}

std::vector<Subgroup> enumerate_subgroups(const Group& g, std::int64_t order_cap) {
    if (g.order() > order_cap)
        fail(Errc::too_large, "group order " + std::to_string(g.order()) +
                                  " exceeds enumeration cap " + std::to_string(order_cap));
    std::set<std::vector<std::int64_t>> seen;
    std::vector<Subgroup> out;
    std::vector<Subgroup> queue{trivial_subgroup(g)};
    auto key_of = [&](const Subgroup& s) {
        std::vector<std::int64_t> key;
        key.reserve(static_cast<std::size_t>(s.order()));
        for (const Element& x : s.members()) key.push_back(g.index_of(x));
        return key;
    };
    seen.insert(key_of(queue[0]));
    out.push_back(queue[0]);
    while (!queue.empty()) {
        Subgroup s = queue.back();
        queue.pop_back();
        for (std::int64_t i = 1; i < g.order(); ++i) {
            Element x = g.element_at(i);
            if (s.contains(x)) continue;
            std::vector<Element> gens = s.generators();
            gens.push_back(x);
            Subgroup t = subgroup_generate(g, gens);
            auto key = key_of(t);
            if (seen.insert(key).second) {
                out.push_back(t);
                queue.push_back(t);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.members() < b.members();
    });
    return out;
}

Subgroup annihilator(const Group& g, const Subgroup& b) {
    if (b.parent() != g) fail(Errc::invalid_subgroup, "subgroup belongs to a different group");
    std::vector<Element> gens = b.generators();
    std::vector<Element> members;
    for (std::int64_t i = 0; i < g.order(); ++i) {
        Element y = g.element_at(i);
        bool ok = true;
        for (const Element& x : gens)
            if (pairing_exponent(g, x, y) != 0) {
                ok = false;
                break;
            }
        if (ok) members.push_back(y);
    }
    return Subgroup(g, std::move(members));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
    if (a.parent() != b.parent())
        fail(Errc::invalid_subgroup, "subgroup intersection across different groups");
    std::vector<Element> members;
    for (const Element& x : a.members())
        if (b.contains(x)) members.push_back(x);
    return Subgroup(a.parent(), std::move(members));
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Subgroup p_component(const Group& g, std::int64_t p) {
    if (!is_prime(p)) fail(Errc::invalid_parameters, std::to_string(p) + " is not prime");
    std::vector<Element> members;
    for (std::int64_t i = 0; i < g.order(); ++i) {
        Element x = g.element_at(i);
        bool killed = true;
        for (std::size_t t = 0; t < x.c.size(); ++t)
            if ((p * x.c[t]) % g.moduli()[t] != 0) {
                killed = false;
                break;
            }
        if (killed) members.push_back(x);
    }
    return Subgroup(g, std::move(members));
}

// ---------------------------------------------------------------------------
// Quotients via Smith normal form of the relation lattice.

namespace {

struct SnfResult {
    std::vector<std::vector<std::int64_t>> u;  // r x r unimodular row transform
    std::vector<std::int64_t> d;               // diagonal, d[0] | d[1] | ...
};

// Smith normal form of an r x c integer matrix a (full row rank in our use).
// Only the row transform U with (U a V) = diag(d) is tracked; the column
// transform is not needed to express Z^r / col-lattice(a).
SnfResult smith_normal_form(std::vector<std::vector<std::int64_t>> a) {
    std::size_t r = a.size(), c = a.empty() ? 0 : a[0].size();
    std::vector<std::vector<std::int64_t>> u(r, std::vector<std::int64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i) u[i][i] = 1;

    auto row_addmul = [&](std::size_t dst, std::size_t src, std::int64_t q) {
        for (std::size_t j = 0; j < c; ++j) a[dst][j] -= q * a[src][j];
        for (std::size_t j = 0; j < r; ++j) u[dst][j] -= q * u[src][j];
    };
    auto col_addmul = [&](std::size_t dst, std::size_t src, std::int64_t q) {
        for (std::size_t i = 0; i < r; ++i) a[i][dst] -= q * a[i][src];
    };

    std::size_t lim = std::min(r, c);
    for (std::size_t t = 0; t < lim; ++t) {
    restart:
        // Locate the nonzero entry of least magnitude in the trailing block.
        std::size_t pi = t, pj = t;
        std::int64_t best = 0;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j) {
                std::int64_t v = a[i][j] < 0 ? -a[i][j] : a[i][j];
                if (v != 0 && (best == 0 || v < best)) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;  // trailing block vanished
        std::swap(a[t], a[pi]);
        std::swap(u[t], u[pi]);
        for (std::size_t i = 0; i < r; ++i) std::swap(a[i][t], a[i][pj]);

        bool again = false;
        for (std::size_t i = t + 1; i < r; ++i)
            if (a[i][t] != 0) {
                std::int64_t q = a[i][t] / a[t][t];
                row_addmul(i, t, q);
                if (a[i][t] != 0) again = true;
            }
        for (std::size_t j = t + 1; j < c; ++j)
            if (a[t][j] != 0) {
                std::int64_t q = a[t][j] / a[t][t];
                col_addmul(j, t, q);
                if (a[t][j] != 0) again = true;
            }
        if (again) goto restart;

        // Divisibility sweep: the pivot must divide the trailing block.
        for (std::size_t i = t + 1; i < r; ++i)
            for (std::size_t j = t + 1; j < c; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    row_addmul(t, i, -1);  // row_t += row_i
                    goto restart;
                }
        if (a[t][t] < 0) {
            for (std::size_t j = 0; j < c; ++j) a[t][j] = -a[t][j];
            for (std::size_t j = 0; j < r; ++j) u[t][j] = -u[t][j];
        }
    }
    SnfResult res;
    res.u = std::move(u);
    res.d.resize(r, 0);
    for (std::size_t t = 0; t < lim; ++t) res.d[t] = a[t][t];
    return res;
}

}  // namespace

QuotientGroup::QuotientGroup(Group parent, Subgroup kernel, Group structure,
                             std::vector<std::vector<std::int64_t>> proj_rows,
                             std::vector<std::int64_t> proj_mods)
    : parent_(std::move(parent)),
      kernel_(std::move(kernel)),
      structure_(std::move(structure)),
      proj_rows_(std::move(proj_rows)) {
    if (proj_mods != structure_.moduli())
        fail(Errc::invalid_parameters, "projection moduli mismatch");
    if (structure_.order() * kernel_.order() != parent_.order())
        fail(Errc::invalid_subgroup, "quotient order mismatch");
    // First representative (by element index) of each coset.
    cosets_.assign(static_cast<std::size_t>(structure_.order()), Element{});
    std::vector<bool> seen(static_cast<std::size_t>(structure_.order()), false);
    std::int64_t found = 0;
    for (std::int64_t i = 0; i < parent_.order() && found < structure_.order(); ++i) {
        Element x = parent_.element_at(i);
        std::size_t qi = static_cast<std::size_t>(structure_.index_of(project(x)));
        if (!seen[qi]) {
            seen[qi] = true;
            cosets_[qi] = x;
            ++found;
        }
    }
    if (found != structure_.order())
        fail(Errc::invalid_subgroup, "projection is not surjective");
}

Element QuotientGroup::project(const Element& x) const {
    parent_.require_valid(x);
    Element q{std::vector<std::int64_t>(proj_rows_.size(), 0)};
    const auto& mods = structure_.moduli();
    for (std::size_t t = 0; t < proj_rows_.size(); ++t) {
        __int128 acc = 0;
        for (std::size_t s = 0; s < x.c.size(); ++s)
            acc += static_cast<__int128>(proj_rows_[t][s]) * x.c[s];
        std::int64_t v = static_cast<std::int64_t>(acc % mods[t]);
        q.c[t] = (v + mods[t]) % mods[t];
    }
    return q;
}

std::int64_t QuotientGroup::coset_index(const Element& x) const {
    return structure_.index_of(project(x));
}

const Element& QuotientGroup::representative(const Element& q) const {
    return cosets_[static_cast<std::size_t>(structure_.index_of(q))];
}

QuotientGroup quotient(const Group& g, const Subgroup& h) {
    if (h.parent() != g) fail(Errc::invalid_subgroup, "subgroup belongs to a different group");
    std::size_t r = static_cast<std::size_t>(g.rank());
    std::vector<Element> gens = h.generators();
    std::vector<std::vector<std::int64_t>> a(r, std::vector<std::int64_t>(r + gens.size(), 0));
    for (std::size_t i = 0; i < r; ++i) a[i][i] = g.moduli()[i];
    for (std::size_t k = 0; k < gens.size(); ++k)
        for (std::size_t i = 0; i < r; ++i) a[i][r + k] = gens[k].c[i];

    SnfResult snf = smith_normal_form(std::move(a));
    std::vector<std::int64_t> mods;
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t t = 0; t < r; ++t) {
        if (snf.d[t] <= 0)
            fail(Errc::invalid_subgroup, "relation lattice is not full rank");
        if (snf.d[t] > 1) {
            mods.push_back(snf.d[t]);
            rows.push_back(snf.u[t]);
        }
    }
    if (mods.empty()) {
        // Trivial quotient X / X: representable internally as Z(1).
        mods.push_back(1);
        rows.push_back(std::vector<std::int64_t>(r, 0));
    }
    Group structure{mods};
    QuotientGroup q(g, h, structure, rows, mods);
    // The projection kernel must be exactly h.
    for (const Element& x : h.members())
        if (q.coset_index(x) != q.coset_index(g.zero()))
            fail(Errc::invalid_subgroup, "quotient projection does not kill the subgroup");
    return q;
}

}  // namespace finabel
