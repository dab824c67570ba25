#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "finabel/rational.hpp"

namespace finabel {

/// Shared per-modulus tables for exact arithmetic in the cyclotomic field
/// Q(zeta_m). Values are stored in the canonical Q-basis
/// {1, z, ..., z^(phi(m)-1)} where z = zeta_m, obtained by reducing
/// polynomials modulo the m-th cyclotomic polynomial. The basis makes
/// equality (and in particular ==0, ==1) a coefficient-wise comparison.
class CycloContext {
public:
    static std::shared_ptr<const CycloContext> get(std::int64_t m);

    std::int64_t modulus() const { return m_; }
    std::int64_t degree() const { return phi_; }

    /// Canonical coordinates of z^j (integer coefficients), for 0 <= j < table size.
    const std::vector<std::int64_t>& power(std::int64_t j) const { return pow_[static_cast<std::size_t>(j)]; }
    std::int64_t power_table_size() const { return static_cast<std::int64_t>(pow_.size()); }

private:
    explicit CycloContext(std::int64_t m);

    std::int64_t m_;
    std::int64_t phi_;
    std::vector<std::int64_t> poly_;               // cyclotomic polynomial, monic, degree phi_
    std::vector<std::vector<std::int64_t>> pow_;   // z^j reduced, j in [0, m + 2*phi_)
};

/// Exact element of Q(zeta_m). Rational numbers embed as the constant
/// coefficient; values from different moduli may be combined only when one
/// side is rational (it is promoted to the other side's field).
class Cyclo {
public:
    Cyclo() : Cyclo(Rat(0), 1) {}
    explicit Cyclo(const Rat& r, std::int64_t m = 1);
    Cyclo(long long n) : Cyclo(Rat(n), 1) {}

    /// zeta_m^e, e taken mod m.
    static Cyclo root_power(std::int64_t m, std::int64_t e);

    std::int64_t modulus() const { return ctx_->modulus(); }
    const std::vector<Rat>& coords() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rat rational_value() const;  // throws std::domain_error if not rational

    Cyclo conj() const;
    Cyclo real_part() const { return (*this + conj()) * Cyclo(Rat(1, 2), modulus()); }
    /// z * conj(z); exact, and rational-valued iff |z| is.
    Cyclo norm_squared() const { return *this * conj(); }
    bool is_real() const { return *this == conj(); }

    /// Multiply by zeta_m^e without building a temporary Cyclo.
    Cyclo times_root(std::int64_t e) const;

    std::complex<double> to_complex() const;
    double to_double_real() const { return to_complex().real(); }

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
    Cyclo operator-() const;
    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

    friend bool operator==(const Cyclo& a, const Cyclo& b);
    friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

    /// Human-readable form: plain rational string when rational, otherwise
    /// a polynomial in z{m}, e.g. "1/2*z4 - 1/2".
    std::string str() const;

private:
    Cyclo(std::shared_ptr<const CycloContext> ctx, std::vector<Rat> c)
        : ctx_(std::move(ctx)), c_(std::move(c)) {}

    static void align(Cyclo& a, Cyclo& b);  // promote rationals across moduli

    std::shared_ptr<const CycloContext> ctx_;
    std::vector<Rat> c_;  // size == ctx_->degree()
};

/// Euler's totient (used for basis sizes; m is desk-scale).
std::int64_t euler_phi(std::int64_t m);

}  // namespace finabel
