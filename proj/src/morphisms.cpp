#include "finabel/morphisms.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace finabel {

namespace {

std::int64_t mod_reduce(std::int64_t v, std::int64_t n) {
    std::int64_t r = v % n;
    return r < 0 ? r + n : r;
}

}  // namespace

Homomorphism::Homomorphism(Group domain, Group codomain,
                           std::vector<std::vector<std::int64_t>> matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), mat_(std::move(matrix)) {
    std::size_t rows = static_cast<std::size_t>(codomain_.rank());
    std::size_t cols = static_cast<std::size_t>(domain_.rank());
    if (mat_.size() != rows)
        fail(Errc::invalid_homomorphism,
             "matrix has " + std::to_string(mat_.size()) + " rows, expected " +
                 std::to_string(rows));
    for (std::size_t j = 0; j < rows; ++j) {
        if (mat_[j].size() != cols)
            fail(Errc::invalid_homomorphism,
                 "matrix row " + std::to_string(j) + " has " +
                     std::to_string(mat_[j].size()) + " entries, expected " +
                     std::to_string(cols));
        std::int64_t nj = codomain_.moduli()[j];
        for (std::size_t i = 0; i < cols; ++i) {
            std::int64_t di = domain_.moduli()[i];
            std::int64_t v = mod_reduce(mat_[j][i], nj);
            if ((static_cast<__int128>(v) * di) % nj != 0)
                fail(Errc::invalid_homomorphism,
                     "matrix entry [" + std::to_string(j) + "][" + std::to_string(i) +
                         "] = " + std::to_string(v) + " breaks well-definedness: " +
                         std::to_string(v) + "*" + std::to_string(di) +
                         " != 0 (mod " + std::to_string(nj) + ")");
            mat_[j][i] = v;
        }
    }
}

Element Homomorphism::operator()(const Element& x) const {
    domain_.require_valid(x);
    Element y = codomain_.zero();
    for (std::size_t j = 0; j < mat_.size(); ++j) {
        __int128 acc = 0;
        for (std::size_t i = 0; i < mat_[j].size(); ++i)
            acc += static_cast<__int128>(mat_[j][i]) * x.c[i];
        y.c[j] = static_cast<std::int64_t>(acc % codomain_.moduli()[j]);
    }
    return y;
}

bool Homomorphism::is_identity() const {
    if (!(domain_ == codomain_)) return false;
    for (std::size_t j = 0; j < mat_.size(); ++j)
        for (std::size_t i = 0; i < mat_[j].size(); ++i) {
            std::int64_t want = (i == j) ? mod_reduce(1, codomain_.moduli()[j]) : 0;
            if (mat_[j][i] != want) return false;
        }
    return true;
}

bool Homomorphism::is_zero() const {
    for (const auto& row : mat_)
        for (std::int64_t v : row)
            if (v != 0) return false;
    return true;
}

bool Homomorphism::operator==(const Homomorphism& o) const {
    return domain_ == o.domain_ && codomain_ == o.codomain_ && mat_ == o.mat_;
}

std::string Homomorphism::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t j = 0; j < mat_.size(); ++j) {
        if (j) os << ",";
        os << "[";
        for (std::size_t i = 0; i < mat_[j].size(); ++i) {
            if (i) os << ",";
            os << mat_[j][i];
        }
        os << "]";
    }
    os << "] on " << domain_.str();
    if (!(domain_ == codomain_)) os << " -> " << codomain_.str();
    return os.str();
}

Homomorphism make_homomorphism(const Group& g,
                               std::vector<std::vector<std::int64_t>> matrix) {
    return Homomorphism(g, g, std::move(matrix));
}

Element apply_hom(const Homomorphism& h, const Element& x) { return h(x); }

bool is_automorphism(const Homomorphism& h) {
    if (!h.is_endomorphism()) return false;
    const Group& g = h.domain();
    std::vector<bool> hit(static_cast<std::size_t>(g.order()), false);
    for (std::int64_t i = 0; i < g.order(); ++i) {
        std::size_t idx = static_cast<std::size_t>(g.index_of(h(g.element_at(i))));
        if (hit[idx]) return false;
        hit[idx] = true;
    }
    return true;
}

Homomorphism identity_endomorphism(const Group& g) {
    std::size_t r = static_cast<std::size_t>(g.rank());
    std::vector<std::vector<std::int64_t>> m(r, std::vector<std::int64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i) m[i][i] = 1;
    return make_homomorphism(g, std::move(m));
}

Homomorphism zero_endomorphism(const Group& g) {
    std::size_t r = static_cast<std::size_t>(g.rank());
    return make_homomorphism(g, std::vector<std::vector<std::int64_t>>(
                                    r, std::vector<std::int64_t>(r, 0)));
}

Homomorphism scalar_endomorphism(const Group& g, std::int64_t c) {
    std::size_t r = static_cast<std::size_t>(g.rank());
    std::vector<std::vector<std::int64_t>> m(r, std::vector<std::int64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i) m[i][i] = mod_reduce(c, g.moduli()[i]);
    return make_homomorphism(g, std::move(m));
}

Homomorphism compose(const Homomorphism& f, const Homomorphism& g) {
    if (!(g.codomain() == f.domain()))
        fail(Errc::invalid_homomorphism, "composition domain mismatch: " + f.str() +
                                             " after " + g.str());
    std::size_t rows = f.matrix().size();
    std::size_t mid = g.matrix().size();
    std::size_t cols = mid ? g.matrix()[0].size() : 0;
    std::vector<std::vector<std::int64_t>> m(rows, std::vector<std::int64_t>(cols, 0));
    for (std::size_t j = 0; j < rows; ++j)
        for (std::size_t i = 0; i < cols; ++i) {
            __int128 acc = 0;
            for (std::size_t t = 0; t < mid; ++t)
                acc += static_cast<__int128>(f.matrix()[j][t]) * g.matrix()[t][i];
            m[j][i] = static_cast<std::int64_t>(acc % f.codomain().moduli()[j]);
        }
    return Homomorphism(g.domain(), f.codomain(), std::move(m));
}

Homomorphism hom_add(const Homomorphism& f, const Homomorphism& g) {
    if (!(f.domain() == g.domain() && f.codomain() == g.codomain()))
        fail(Errc::invalid_homomorphism, "sum of non-parallel homomorphisms");
    auto m = f.matrix();
    for (std::size_t j = 0; j < m.size(); ++j)
        for (std::size_t i = 0; i < m[j].size(); ++i)
            m[j][i] = mod_reduce(m[j][i] + g.matrix()[j][i], f.codomain().moduli()[j]);
    return Homomorphism(f.domain(), f.codomain(), std::move(m));
}

Homomorphism hom_sub(const Homomorphism& f, const Homomorphism& g) {
    if (!(f.domain() == g.domain() && f.codomain() == g.codomain()))
        fail(Errc::invalid_homomorphism, "difference of non-parallel homomorphisms");
    auto m = f.matrix();
    for (std::size_t j = 0; j < m.size(); ++j)
        for (std::size_t i = 0; i < m[j].size(); ++i)
            m[j][i] = mod_reduce(m[j][i] - g.matrix()[j][i], f.codomain().moduli()[j]);
    return Homomorphism(f.domain(), f.codomain(), std::move(m));
}

Homomorphism adjoint(const Homomorphism& h) {
    if (!h.is_endomorphism())
        fail(Errc::invalid_homomorphism, "adjoint requires an endomorphism");
    const Group& g = h.domain();
    std::size_t r = static_cast<std::size_t>(g.rank());
    std::vector<std::vector<std::int64_t>> m(r, std::vector<std::int64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        std::int64_t ni = g.moduli()[i];
        for (std::size_t j = 0; j < r; ++j) {
            std::int64_t nj = g.moduli()[j];
            // Exact by well-definedness of h: nj divides M[j][i]*ni.
            __int128 v = static_cast<__int128>(h.matrix()[j][i]) * ni / nj;
            m[i][j] = mod_reduce(static_cast<std::int64_t>(v % ni), ni);
        }
    }
    Homomorphism a(g, g, std::move(m));
    if (g.order() <= 64) {
        for (std::int64_t xi = 0; xi < g.order(); ++xi)
            for (std::int64_t yi = 0; yi < g.order(); ++yi) {
                Element x = g.element_at(xi), y = g.element_at(yi);
                if (pairing_exponent(g, h(x), y) != pairing_exponent(g, x, a(y)))
                    throw std::logic_error("adjoint construction failed the pairing identity for " +
                                           h.str());
            }
    }
    return a;
}

Homomorphism inverse(const Homomorphism& h) {
    if (!is_automorphism(h))
        fail(Errc::invalid_homomorphism, "inverse requires an automorphism, got " + h.str());
    const Group& g = h.domain();
    // Invert the induced permutation, then read off images of the standard
    // generators to recover the matrix columns.
    std::vector<std::int64_t> inv(static_cast<std::size_t>(g.order()));
    for (std::int64_t i = 0; i < g.order(); ++i)
        inv[static_cast<std::size_t>(g.index_of(h(g.element_at(i))))] = i;
    std::size_t r = static_cast<std::size_t>(g.rank());
    std::vector<std::vector<std::int64_t>> m(r, std::vector<std::int64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        Element e = g.zero();
        e.c[i] = g.moduli()[i] > 1 ? 1 : 0;
        Element pre = g.element_at(inv[static_cast<std::size_t>(g.index_of(e))]);
        for (std::size_t j = 0; j < r; ++j) m[j][i] = pre.c[j];
    }
    return Homomorphism(g, g, std::move(m));
}

Subgroup kernel_of(const Homomorphism& h) {
    const Group& g = h.domain();
    std::vector<Element> members;
    for (std::int64_t i = 0; i < g.order(); ++i) {
        Element x = g.element_at(i);
        if (h(x) == h.codomain().zero()) members.push_back(x);
    }
    return Subgroup(g, std::move(members));
}

Subgroup image_of(const Homomorphism& h) {
    const Group& c = h.codomain();
    std::vector<bool> hit(static_cast<std::size_t>(c.order()), false);
    for (std::int64_t i = 0; i < h.domain().order(); ++i)
        hit[static_cast<std::size_t>(c.index_of(h(h.domain().element_at(i))))] = true;
    std::vector<Element> members;
    for (std::int64_t i = 0; i < c.order(); ++i)
        if (hit[static_cast<std::size_t>(i)]) members.push_back(c.element_at(i));
    return Subgroup(c, std::move(members));
}

std::vector<Homomorphism> enumerate_automorphisms(const Group& g, std::int64_t order_cap) {
    if (g.order() > order_cap)
        fail(Errc::too_large, "group order " + std::to_string(g.order()) +
                                  " exceeds the automorphism enumeration cap " +
                                  std::to_string(order_cap));
    std::size_t r = static_cast<std::size_t>(g.rank());
    // Valid values of entry (j,i) are the multiples of n_j/gcd(n_j,n_i); there
    // are gcd(n_j,n_i) of them, so the scan space is the product of the gcds.
    std::vector<std::int64_t> step(r * r), count(r * r);
    __int128 space = 1;
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < r; ++i) {
            std::int64_t gd = std::gcd(g.moduli()[j], g.moduli()[i]);
            step[j * r + i] = g.moduli()[j] / gd;
            count[j * r + i] = gd;
            space *= gd;
            if (space > 10'000'000)
                fail(Errc::too_large, "automorphism matrix space of " + g.str() +
                                          " exceeds the scan budget");
        }

    std::vector<Element> elems;
    elems.reserve(static_cast<std::size_t>(g.order()));
    for (std::int64_t i = 0; i < g.order(); ++i) elems.push_back(g.element_at(i));

    std::vector<Homomorphism> out;
    std::vector<std::int64_t> digit(r * r, 0);
    std::vector<bool> hit(static_cast<std::size_t>(g.order()));
    Element y = g.zero();
    for (;;) {
        // Bijectivity check with the matrix applied inline.
        std::fill(hit.begin(), hit.end(), false);
        bool bijective = true;
        for (const Element& x : elems) {
            for (std::size_t j = 0; j < r; ++j) {
                __int128 acc = 0;
                for (std::size_t i = 0; i < r; ++i)
                    acc += static_cast<__int128>(digit[j * r + i] * step[j * r + i]) * x.c[i];
                y.c[j] = static_cast<std::int64_t>(acc % g.moduli()[j]);
            }
            std::size_t idx = static_cast<std::size_t>(g.index_of(y));
            if (hit[idx]) {
                bijective = false;
                break;
            }
            hit[idx] = true;
        }
        if (bijective) {
            std::vector<std::vector<std::int64_t>> m(r, std::vector<std::int64_t>(r));
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t i = 0; i < r; ++i)
                    m[j][i] = digit[j * r + i] * step[j * r + i];
            out.emplace_back(g, g, std::move(m));
        }
        // Row-major odometer, last entry fastest.
        std::size_t pos = r * r;
        while (pos > 0) {
            --pos;
            if (++digit[pos] < count[pos]) break;
            digit[pos] = 0;
            if (pos == 0) return out;
        }
    }
}

Homomorphism induced_on_quotient(const Homomorphism& h, const QuotientGroup& q) {
    if (!h.is_endomorphism() || !(h.domain() == q.parent()))
        fail(Errc::invalid_homomorphism,
             "induced map requires an endomorphism of the quotient's parent group");
    const Subgroup& ker = q.kernel();
    std::vector<bool> hit(ker.members().size(), false);
    for (const Element& x : ker.members()) {
        Element hx = h(x);
        bool found = false;
        for (std::size_t t = 0; t < ker.members().size(); ++t)
            if (ker.members()[t] == hx) {
                hit[t] = true;
                found = true;
                break;
            }
        if (!found)
            fail(Errc::not_invariant, "image of the quotient kernel under " + h.str() +
                                          " leaves the kernel");
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
        fail(Errc::not_invariant,
             "quotient kernel is not mapped onto itself by " + h.str());

    const Group& s = q.structure();
    std::size_t r = static_cast<std::size_t>(s.rank());
    std::vector<std::vector<std::int64_t>> m(r, std::vector<std::int64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        Element basis = s.zero();
        basis.c[i] = s.moduli()[i] > 1 ? 1 : 0;
        // Any representative works because h(kernel) stays in the kernel.
        Element img = q.project(h(q.representative(basis)));
        for (std::size_t j = 0; j < r; ++j) m[j][i] = img.c[j];
    }
    Homomorphism ind(s, s, std::move(m));
    for (std::int64_t i = 0; i < q.parent().order(); ++i) {
        Element x = q.parent().element_at(i);
        if (!(ind(q.project(x)) == q.project(h(x))))
            throw std::logic_error("induced map disagrees with the projection for " + h.str());
    }
    return ind;
}

FormSystem make_form_system(const Group& g,
                            std::vector<std::vector<Homomorphism>> coeffs) {
    if (coeffs.empty() || coeffs[0].empty())
        fail(Errc::invalid_parameters, "form system needs at least one form and one variable");
    std::size_t n = coeffs[0].size();
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j].size() != n)
            fail(Errc::invalid_parameters, "form " + std::to_string(j) + " has " +
                                               std::to_string(coeffs[j].size()) +
                                               " coefficients, expected " + std::to_string(n));
        for (const Homomorphism& c : coeffs[j])
            if (!c.is_endomorphism() || !(c.domain() == g))
                fail(Errc::invalid_parameters,
                     "form coefficients must be endomorphisms of " + g.str());
    }
    std::int64_t k = static_cast<std::int64_t>(coeffs.size());
    return FormSystem{g, static_cast<std::int64_t>(n), k, std::move(coeffs)};
}

Group power_group(const Group& g, std::int64_t n) {
    if (n < 1) fail(Errc::invalid_parameters, "power group needs n >= 1");
    std::vector<std::int64_t> moduli;
    moduli.reserve(static_cast<std::size_t>(n) * g.moduli().size());
    for (std::int64_t t = 0; t < n; ++t)
        moduli.insert(moduli.end(), g.moduli().begin(), g.moduli().end());
    return Group(std::move(moduli));
}

Element pack_tuple(const Group& g, const std::vector<Element>& parts) {
    Element out{{}};
    for (const Element& p : parts) {
        g.require_valid(p);
        out.c.insert(out.c.end(), p.c.begin(), p.c.end());
    }
    return out;
}

std::vector<Element> unpack_tuple(const Group& g, std::int64_t n, const Element& tuple) {
    std::size_t r = g.moduli().size();
    if (tuple.c.size() != r * static_cast<std::size_t>(n))
        fail(Errc::invalid_element, "tuple length does not match the power group");
    std::vector<Element> parts;
    parts.reserve(static_cast<std::size_t>(n));
    for (std::int64_t t = 0; t < n; ++t) {
        Element p{{tuple.c.begin() + static_cast<std::ptrdiff_t>(t * static_cast<std::int64_t>(r)),
                   tuple.c.begin() + static_cast<std::ptrdiff_t>((t + 1) * static_cast<std::int64_t>(r))}};
        g.require_valid(p);
        parts.push_back(std::move(p));
    }
    return parts;
}

StackedFormMap stacked_form_map(const FormSystem& fs, bool use_adjoints) {
    if (fs.k != fs.n)
        fail(Errc::invalid_parameters, "stacked form map needs a square system, got " +
                                           std::to_string(fs.k) + " forms in " +
                                           std::to_string(fs.n) + " variables");
    const Group& g = fs.group;
    std::size_t r = static_cast<std::size_t>(g.rank());
    std::size_t n = static_cast<std::size_t>(fs.n);
    Group big = power_group(g, fs.n);
    if (big.order() > 10'000'000)
        fail(Errc::too_large, "power group " + big.str() + " exceeds the kernel scan budget");

    std::vector<std::vector<std::int64_t>> m(n * r, std::vector<std::int64_t>(n * r, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Homomorphism block =
                use_adjoints ? adjoint(fs.coeffs[j][i]) : fs.coeffs[j][i];
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b)
                    m[i * r + a][j * r + b] = block.matrix()[a][b];
        }
    Homomorphism pi(big, big, std::move(m));
    Subgroup ker = kernel_of(pi);
    bool automorphism = ker.order() == 1;
    return {std::move(pi), std::move(ker), automorphism};
}

}  // namespace finabel
