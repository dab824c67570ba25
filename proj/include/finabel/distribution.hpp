#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "finabel/cyclotomic.hpp"
#include "finabel/error.hpp"
#include "finabel/group.hpp"
#include "finabel/rational.hpp"

namespace finabel {

/// An exact probability distribution on a finite abelian group. Masses are
/// exact real numbers: rationals, or real elements of the cyclotomic field
/// Q(zeta_m) for the group exponent m (uniform densities weighted by
/// character values land outside the rationals, e.g. (1 + cos(2*pi/5))/125).
/// Indexed by element index. Invariants: every mass is real and >= 0, masses
/// sum to exactly 1.
class Distribution {
  public:
    const Group& group() const { return group_; }
    const std::vector<Cyclo>& pmf() const { return pmf_; }
    const Cyclo& mass(const Element& x) const;
    const Cyclo& mass_at(std::int64_t index) const;

    /// True when every mass is a rational number.
    bool is_rational() const;

    bool operator==(const Distribution& o) const;

  private:
    friend Distribution make_distribution(const Group&, std::vector<Cyclo>);
    Distribution(Group g, std::vector<Cyclo> pmf)
        : group_(std::move(g)), pmf_(std::move(pmf)) {}

    Group group_;
    std::vector<Cyclo> pmf_;
};

/// Validated constructors. Rejection messages carry the exact discrepancy
/// (offending index and value, or the exact total when it is not 1).
Distribution make_distribution(const Group& g, const std::vector<Rat>& pmf);
Distribution make_distribution(const Group& g, std::vector<Cyclo> pmf);

/// The degenerate distribution E_x concentrated at one point.
Distribution degenerate(const Group& g, const Element& x);

/// The Haar (uniform) distribution on a subgroup; haar(g) is uniform on all
/// of g.
Distribution haar(const Group& g, const Subgroup& k);
Distribution haar(const Group& g);

/// Exact convolution: (a * b)(z) = sum_x a(x) b(z - x).
Distribution convolve(const Distribution& a, const Distribution& b);

/// The reflected distribution: mass of x moves to -x.
Distribution reflect(const Distribution& mu);

/// Convex mixture sum_t w_t * mu_t; weights must be nonnegative rationals
/// summing to 1 and all parts must share one group.
Distribution mix(const std::vector<std::pair<Rat, Distribution>>& parts);

/// The full table of an exact characteristic function over the (self-dual)
/// group: value(y) = sum_x pairing(x, y) * mass(x). Values live in
/// Q(zeta_m). Construction enforces value(0) == 1 exactly and checks
/// |value| <= 1 + 1e-12 in the derived float view.
class CharFnTable {
  public:
    CharFnTable(Group g, std::vector<Cyclo> values);

    const Group& group() const { return group_; }
    const std::vector<Cyclo>& values() const { return values_; }
    const Cyclo& value(const Element& y) const;
    const Cyclo& value_at(std::int64_t index) const;

  private:
    Group group_;
    std::vector<Cyclo> values_;
};

CharFnTable char_fn(const Distribution& mu);

/// F_mu = {y : mu^(y) = 1}. Computed exactly as the set of y pairing to 1
/// with every support element, which coincides with the level set because
/// mu^(y) is a convex combination of unit-modulus values.
Subgroup f_subgroup(const Distribution& mu);

/// Elements carrying strictly positive mass, in element-index order.
std::vector<Element> support(const Distribution& mu);

/// mu is idempotent iff its support is a coset x + K of a subgroup K and the
/// mass is constant on it. The shift is canonicalized to the
/// lexicographically smallest support element.
struct IdempotentClassification {
    bool is_idempotent = false;
    std::optional<Subgroup> subgroup;
    std::optional<Element> shift;
};

IdempotentClassification classify_idempotent(const Distribution& mu);

}  // namespace finabel
