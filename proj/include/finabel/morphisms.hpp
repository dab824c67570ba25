#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "finabel/error.hpp"
#include "finabel/group.hpp"

namespace finabel {

/// A homomorphism between finite abelian groups in coordinates:
///
///     (h x)_j = sum_i M[j][i] * x_i   (mod n_j)
///
/// where n_j is the j-th codomain modulus. Row index = codomain coordinate,
/// column index = domain coordinate. Well-definedness requires every entry to
/// kill the domain relations: M[j][i] * d_i == 0 (mod n_j) for the i-th domain
/// modulus d_i. Entries are stored reduced mod n_j, which makes the matrix a
/// canonical representative of the map.
class Homomorphism {
  public:
    /// Validates dimensions and the well-definedness of every entry.
    Homomorphism(Group domain, Group codomain,
                 std::vector<std::vector<std::int64_t>> matrix);

    const Group& domain() const { return domain_; }
    const Group& codomain() const { return codomain_; }
    const std::vector<std::vector<std::int64_t>>& matrix() const { return mat_; }

    Element operator()(const Element& x) const;

    bool is_endomorphism() const { return domain_ == codomain_; }
    bool is_identity() const;
    bool is_zero() const;

    /// Matrix-level equality (canonical since entries are stored reduced).
    bool operator==(const Homomorphism& o) const;

    /// Renders like "[[1,0],[2,1]] on Z(2) x Z(4)".
    std::string str() const;

  private:
    Group domain_;
    Group codomain_;
    std::vector<std::vector<std::int64_t>> mat_;
};

/// Endomorphism factory: square matrix over a single group.
Homomorphism make_homomorphism(const Group& g,
                               std::vector<std::vector<std::int64_t>> matrix);

Element apply_hom(const Homomorphism& h, const Element& x);

/// True iff the action is a bijection (image size equals group order).
/// Requires an endomorphism.
bool is_automorphism(const Homomorphism& h);

Homomorphism identity_endomorphism(const Group& g);
Homomorphism zero_endomorphism(const Group& g);

/// Multiplication by the scalar c on every coordinate.
Homomorphism scalar_endomorphism(const Group& g, std::int64_t c);

/// Composition f after g: x -> f(g(x)).
Homomorphism compose(const Homomorphism& f, const Homomorphism& g);

/// Pointwise sum/difference of parallel homomorphisms.
Homomorphism hom_add(const Homomorphism& f, const Homomorphism& g);
Homomorphism hom_sub(const Homomorphism& f, const Homomorphism& g);

/// The adjoint of an endomorphism under the fixed character pairing: the
/// unique endomorphism h~ with pairing(h(x), y) == pairing(x, h~(y)) for all
/// x, y. Computed in coordinates as M~[i][j] = M[j][i] * n_i / n_j (an exact
/// integer by well-definedness), then verified exhaustively against the
/// defining identity whenever the group order is at most 64.
Homomorphism adjoint(const Homomorphism& h);

/// Inverse of an automorphism; rejects non-bijective maps.
Homomorphism inverse(const Homomorphism& h);

Subgroup kernel_of(const Homomorphism& h);
Subgroup image_of(const Homomorphism& h);

/// All automorphisms of g, by brute force over well-defined matrices with a
/// bijectivity filter. Deterministic canonical order: matrices enumerated
/// row-major with the last entry varying fastest, entry values ascending.
/// Fails with too_large when the group order exceeds order_cap or the space
/// of well-defined matrices is too big to scan.
std::vector<Homomorphism> enumerate_automorphisms(const Group& g,
                                                  std::int64_t order_cap = 64);

/// The endomorphism induced on q.structure by an endomorphism h of q's parent
/// that maps the kernel subgroup onto itself: [x] -> [h(x)]. Fails with
/// not_invariant when h(kernel) != kernel; the induced action is verified
/// against the projection on every parent element post-construction.
Homomorphism induced_on_quotient(const Homomorphism& h, const QuotientGroup& q);

/// A system of k linear forms in n independent variables, each variable
/// ranging over the same group:
///
///     L_j = sum_i coeffs[j][i](xi_i),   j = 1..k
///
/// coeffs[j][i] (0-based) is the coefficient of variable i+1 in form j+1.
struct FormSystem {
    Group group;
    std::int64_t n = 0;
    std::int64_t k = 0;
    std::vector<std::vector<Homomorphism>> coeffs;
};

/// Validates shape (rectangular, nonempty) and that every coefficient is an
/// endomorphism of g.
FormSystem make_form_system(const Group& g,
                            std::vector<std::vector<Homomorphism>> coeffs);

/// The n-fold direct power of a group; coordinates are the n blocks of the
/// base group's coordinates in order, so tuple index order matches the
/// mixed-radix order with the last block varying fastest.
Group power_group(const Group& g, std::int64_t n);
Element pack_tuple(const Group& g, const std::vector<Element>& parts);
std::vector<Element> unpack_tuple(const Group& g, std::int64_t n,
                                  const Element& tuple);

struct StackedFormMap {
    Homomorphism map;  ///< endomorphism of power_group(fs.group, fs.n)
    Subgroup kernel;
    bool automorphism = false;
};

/// For a square system (k == n), the block-matrix map on the n-fold power
///
///     pi(u_1, ..., u_n)_i = sum_j A_ij(u_j)
///
/// where A_ij is adjoint(coeffs[j][i]) when use_adjoints is true and
/// coeffs[j][i] itself otherwise. The kernel is computed by brute force and
/// the automorphism flag reports whether pi is bijective.
StackedFormMap stacked_form_map(const FormSystem& fs, bool use_adjoints);

}  // namespace finabel
