#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace finabel {

/// Exact rational number on int64 numerator/denominator.
///
/// Canonical form: den > 0 and gcd(|num|, den) == 1. All intermediate
/// products are taken in __int128 and narrowed with an overflow check, so
/// arithmetic either returns the exact reduced value or throws
/// std::overflow_error -- it never wraps silently. Magnitudes in this
/// project stay tiny (desk-scale probability masses), the check is insurance.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) { assign(n, d); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return Rat(n, d, reduce_tag{});
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        __int128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return Rat(n, d, reduce_tag{});
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        // Cross-reduce first so the 128-bit products stay small.
        long long g1 = std::gcd(a.num_ < 0 ? -a.num_ : a.num_, b.den_);
        long long g2 = std::gcd(b.num_ < 0 ? -b.num_ : b.num_, a.den_);
        __int128 n = i128(a.num_ / g1) * (b.num_ / g2);
        __int128 d = i128(a.den_ / g2) * (b.den_ / g1);
        return Rat(n, d, reduce_tag{});
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return a * Rat(b.den_, b.num_);
    }
    Rat operator-() const {
        Rat r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "num/den", or just "num" for integers (matches the wire format).
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "a/b" or "a" (optional leading '-'); throws std::invalid_argument.
    static Rat parse(std::string_view s) {
        auto bad = [&] { throw std::invalid_argument("bad rational literal '" + std::string(s) + "'"); };
        if (s.empty()) bad();
        std::size_t slash = s.find('/');
        long long n = 0, d = 1;
        try {
            if (slash == std::string_view::npos) {
                std::size_t pos = 0;
                n = std::stoll(std::string(s), &pos);
                if (pos != s.size()) bad();
            } else {
                std::size_t pos = 0;
                std::string ns(s.substr(0, slash)), ds(s.substr(slash + 1));
                if (ns.empty() || ds.empty()) bad();
                n = std::stoll(ns, &pos);
                if (pos != ns.size()) bad();
                d = std::stoll(ds, &pos);
                if (pos != ds.size()) bad();
            }
        } catch (const std::invalid_argument&) {
            bad();
        } catch (const std::out_of_range&) {
            bad();
        }
        return Rat(n, d);
    }

private:
    struct reduce_tag {};
    static __int128 i128(long long v) { return static_cast<__int128>(v); }

    static long long narrow(__int128 v) {
        if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
            throw std::overflow_error("rational arithmetic overflow");
        return static_cast<long long>(v);
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    Rat(__int128 n, __int128 d, reduce_tag) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 g = gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        num_ = narrow(n);
        den_ = narrow(d);
    }

    void assign(long long n, long long d) {
        Rat r(static_cast<__int128>(n), static_cast<__int128>(d), reduce_tag{});
        *this = r;
    }

    long long num_;
    long long den_;
};

}  // namespace finabel
