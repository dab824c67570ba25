#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finabel/cyclotomic.hpp"
#include "finabel/error.hpp"

namespace finabel {

/// Element of a finite abelian group, as a coordinate vector against the
/// group's factor moduli. Also used for dual-group elements (the groups here
/// are self-dual under the fixed pairing).
struct Element {
    std::vector<std::int64_t> c;

    friend bool operator==(const Element& a, const Element& b) { return a.c == b.c; }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
    friend bool operator<(const Element& a, const Element& b) { return a.c < b.c; }
    std::string str() const;
};

/// Finite abelian group presented as Z(n_1) x ... x Z(n_r) with the moduli
/// list taken as given (no structure-theorem canonicalization). The dual
/// group is represented by the same object.
///
/// Elements are indexed in mixed radix with the LAST coordinate fastest;
/// index order coincides with lexicographic order on coordinates and is the
/// canonical iteration order everywhere.
class Group {
public:
    /// Internal constructor: accepts moduli >= 1 so a trivial quotient is
    /// representable. The public factory make_group() enforces moduli >= 2.
    explicit Group(std::vector<std::int64_t> moduli);

    const std::vector<std::int64_t>& moduli() const { return moduli_; }
    std::int64_t rank() const { return static_cast<std::int64_t>(moduli_.size()); }
    std::int64_t order() const { return order_; }
    std::int64_t exponent() const { return exponent_; }

    Element zero() const;
    Element add(const Element& a, const Element& b) const;
    Element negate(const Element& a) const;
    Element sub(const Element& a, const Element& b) const { return add(a, negate(b)); }
    Element scale(std::int64_t k, const Element& a) const;

    bool valid(const Element& a) const;
    void require_valid(const Element& a) const;  // throws Errc::invalid_element

    std::int64_t index_of(const Element& a) const;
    Element element_at(std::int64_t idx) const;

    /// Additive order of an element.
    std::int64_t element_order(const Element& a) const;

    friend bool operator==(const Group& a, const Group& b) { return a.moduli_ == b.moduli_; }
    friend bool operator!=(const Group& a, const Group& b) { return !(a == b); }

    std::string str() const;  // "Z(2) x Z(4)"

private:
    std::vector<std::int64_t> moduli_;
    std::int64_t order_;
    std::int64_t exponent_;
};

/// Public factory matching the wire contract: every modulus must be >= 2.
Group make_group(const std::vector<std::int64_t>& moduli);

/// Value of a character: exactly a root of unity zeta_m^e, stored by integer
/// exponent. Never a floating complex number.
struct RootOfUnity {
    std::int64_t e;  // 0 <= e < m
    std::int64_t m;

    RootOfUnity(std::int64_t e_, std::int64_t m_) : e(((e_ % m_) + m_) % m_), m(m_) {}
    bool is_one() const { return e == 0; }
    friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b) {
        if (a.m != b.m) fail(Errc::invalid_parameters, "root-of-unity moduli differ");
        return RootOfUnity(a.e + b.e, a.m);
    }
    RootOfUnity conj() const { return RootOfUnity(m - e, m); }
    friend bool operator==(const RootOfUnity& a, const RootOfUnity& b) {
        return a.e == b.e && a.m == b.m;
    }
    Cyclo to_cyclo() const { return Cyclo::root_power(m, e); }
};

/// The fixed duality pairing (x, y) = zeta_m^e with
/// e = sum_i (m/n_i) * x_i * y_i  (mod m), m = exponent of the group.
/// Bilinear and non-degenerate; identifies the group with its dual.
RootOfUnity pairing(const Group& g, const Element& x, const Element& y);

/// Exponent of the pairing only (cheaper when the root itself is not needed).
std::int64_t pairing_exponent(const Group& g, const Element& x, const Element& y);

/// Subgroup stored canonically: sorted member list (element-index order,
/// which is lexicographic on coordinates) plus a membership bitmap.
class Subgroup {
public:
    Subgroup(Group parent, std::vector<Element> members_sorted);

    const Group& parent() const { return parent_; }
    const std::vector<Element>& members() const { return members_; }
    std::int64_t order() const { return static_cast<std::int64_t>(members_.size()); }
    bool contains(const Element& x) const { return mask_[static_cast<std::size_t>(parent_.index_of(x))]; }
    bool is_trivial() const { return order() == 1; }
    bool is_full() const { return order() == parent_.order(); }

    /// Greedy minimal generating list (deterministic, smallest indices first).
    std::vector<Element> generators() const;

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.parent_ == b.parent_ && a.members_ == b.members_;
    }
    friend bool operator!=(const Subgroup& a, const Subgroup& b) { return !(a == b); }

private:
    Group parent_;
    std::vector<Element> members_;
    std::vector<bool> mask_;
};

/// Closure of a generator list. Always contains zero.
Subgroup subgroup_generate(const Group& g, const std::vector<Element>& gens);

Subgroup trivial_subgroup(const Group& g);
Subgroup full_subgroup(const Group& g);

/// All subgroups, deduplicated, in a deterministic order (sorted by order,
/// then by member list). Requires g.order() <= order_cap.
std::vector<Subgroup> enumerate_subgroups(const Group& g, std::int64_t order_cap = 256);

/// Annihilator A(Y, B) = {y : (x, y) = 1 for all x in B} of a subgroup (or
/// of an arbitrary subset given as a Subgroup of X), inside the dual copy.
Subgroup annihilator(const Group& g, const Subgroup& b);

/// Intersection of two subgroups of the same parent.
Subgroup intersect(const Subgroup& a, const Subgroup& b);

/// p-component X_(p) = {x : p*x = 0}; p must be prime.
Subgroup p_component(const Group& g, std::int64_t p);

bool is_prime(std::int64_t n);

/// Quotient X / H with an explicit isomorphism onto a product-of-cyclic
/// structure group (computed via Smith normal form of the relation lattice).
/// cosets[t] is the canonical representative (smallest element index) of the
/// coset that maps to structure.element_at(t).
class QuotientGroup {
public:
    QuotientGroup(Group parent, Subgroup kernel, Group structure,
                  std::vector<std::vector<std::int64_t>> proj_rows,
                  std::vector<std::int64_t> proj_mods);

    const Group& parent() const { return parent_; }
    const Subgroup& kernel() const { return kernel_; }
    const Group& structure() const { return structure_; }
    const std::vector<Element>& cosets() const { return cosets_; }

    Element project(const Element& x) const;            // parent -> structure
    std::int64_t coset_index(const Element& x) const;   // index into cosets()
    const Element& representative(const Element& q) const;  // structure -> parent

private:
    Group parent_;
    Subgroup kernel_;
    Group structure_;
    std::vector<std::vector<std::int64_t>> proj_rows_;  // structure.rank() x parent.rank()
    std::vector<Element> cosets_;
};

QuotientGroup quotient(const Group& g, const Subgroup& h);

}  // namespace finabel
