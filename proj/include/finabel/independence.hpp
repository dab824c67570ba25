#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "finabel/distribution.hpp"
#include "finabel/morphisms.hpp"

namespace finabel {

/// Default budget for exhaustive enumerations (tuples scanned in a
/// pushforward, cells of a joint table, points of a character scan).
inline constexpr std::int64_t default_step_cap = 10'000'000;

enum class IndepMethod { pmf, charfn };

/// A concrete refutation of independence. For the pmf method the tuple is a
/// value (l_1,...,l_k) of the forms where the joint mass (lhs) differs from
/// the product of the marginals (rhs); for the charfn method it is a dual
/// tuple (u_1,...,u_k) where the two sides of the product identity
///
///     prod_i mu_i^(sum_j adj(a_ij) u_j) = prod_i prod_j mu_i^(adj(a_ij) u_j)
///
/// disagree. Either way the tuple is the lexicographically first violation.
struct IndependenceWitness {
    std::vector<Element> tuple;
    Cyclo lhs;
    Cyclo rhs;
};

struct IndependenceReport {
    bool independent = true;
    IndepMethod method = IndepMethod::pmf;
    std::optional<IndependenceWitness> witness;
};

/// The exact joint distribution of (L_1, ..., L_k) on the k-fold power group,
/// computed by enumerating all |X|^n input tuples of independent xi_i. Fails
/// with too_large when |X|^n or |X|^k exceeds step_cap.
Distribution pushforward_joint(const std::vector<Distribution>& dists,
                               const FormSystem& fs,
                               std::int64_t step_cap = default_step_cap);

/// Independence by definition: the joint law equals the product of its own
/// marginals, cell by cell, exactly.
IndependenceReport are_independent_pmf(const std::vector<Distribution>& dists,
                                       const FormSystem& fs,
                                       std::int64_t step_cap = default_step_cap);

/// Independence through characteristic functions: the product identity above
/// holds for every dual tuple (u_1,...,u_k), evaluated in exact cyclotomic
/// arithmetic with adjoint coefficients.
IndependenceReport are_independent_charfn(const std::vector<Distribution>& dists,
                                          const FormSystem& fs,
                                          std::int64_t step_cap = default_step_cap);

}  // namespace finabel
