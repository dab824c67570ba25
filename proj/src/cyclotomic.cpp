#include "finabel/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace finabel {

namespace {

// Monic integer polynomials, coefficient vectors with c[deg] == leading 1.

std::vector<std::int64_t> poly_mul(const std::vector<std::int64_t>& a,
                                   const std::vector<std::int64_t>& b) {
    std::vector<std::int64_t> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Exact division a / b of integer polynomials with monic b; throws if the
// remainder is nonzero (never happens for cyclotomic factor towers).
std::vector<std::int64_t> poly_div_exact(std::vector<std::int64_t> a,
                                         const std::vector<std::int64_t>& b) {
    if (a.size() < b.size()) throw std::logic_error("cyclotomic: bad division");
    std::vector<std::int64_t> q(a.size() - b.size() + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        std::int64_t coef = a[k + b.size() - 1];
        q[k] = coef;
        if (coef == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= coef * b[j];
    }
    for (std::int64_t v : a)
        if (v != 0) throw std::logic_error("cyclotomic: division not exact");
    return q;
}

// Cyclotomic polynomial Phi_m via Phi_m = (x^m - 1) / prod_{d|m, d<m} Phi_d.
std::vector<std::int64_t> cyclotomic_poly(std::int64_t m) {
    static std::map<std::int64_t, std::vector<std::int64_t>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);

    std::vector<std::int64_t> todo{m};
    // Resolve dependencies iteratively (divisors first).
    while (!todo.empty()) {
        std::int64_t k = todo.back();
        if (cache.count(k)) {
            todo.pop_back();
            continue;
        }
        bool ready = true;
        for (std::int64_t d = 1; d < k; ++d)
            if (k % d == 0 && !cache.count(d)) {
                todo.push_back(d);
                ready = false;
            }
        if (!ready) continue;
        todo.pop_back();
        std::vector<std::int64_t> num(static_cast<std::size_t>(k) + 1, 0);
        num[0] = -1;
        num[static_cast<std::size_t>(k)] = 1;  // x^k - 1
        std::vector<std::int64_t> den{1};
        for (std::int64_t d = 1; d < k; ++d)
            if (k % d == 0) den = poly_mul(den, cache[d]);
        cache[k] = poly_div_exact(num, den);
    }
    return cache[m];
}

}  // namespace

std::int64_t euler_phi(std::int64_t m) {
    std::int64_t r = m;
    for (std::int64_t p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            r -= r / p;
            while (m % p == 0) m /= p;
        }
    if (m > 1) r -= r / m;
    return r;
}

CycloContext::CycloContext(std::int64_t m) : m_(m) {
    if (m < 1) throw std::invalid_argument("cyclotomic modulus must be >= 1");
    poly_ = cyclotomic_poly(m);
    phi_ = static_cast<std::int64_t>(poly_.size()) - 1;
    // Canonical coordinates of z^j for every exponent reachable by one
    // product of basis elements or one root-power shift.
    std::int64_t limit = m_ + 2 * phi_ + 2;
    pow_.reserve(static_cast<std::size_t>(limit));
    std::vector<std::int64_t> cur(static_cast<std::size_t>(phi_), 0);
    cur[0] = 1;  // z^0
    for (std::int64_t j = 0; j < limit; ++j) {
        pow_.push_back(cur);
        // cur <- cur * x mod Phi_m
        std::int64_t lead = cur[static_cast<std::size_t>(phi_ - 1)];
        for (std::size_t t = static_cast<std::size_t>(phi_) - 1; t > 0; --t) cur[t] = cur[t - 1];
        cur[0] = 0;
        if (lead != 0)
            for (std::int64_t t = 0; t < phi_; ++t)
                cur[static_cast<std::size_t>(t)] -= lead * poly_[static_cast<std::size_t>(t)];
    }
}

std::shared_ptr<const CycloContext> CycloContext::get(std::int64_t m) {
    static std::map<std::int64_t, std::shared_ptr<const CycloContext>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    auto ctx = std::shared_ptr<const CycloContext>(new CycloContext(m));
    cache[m] = ctx;
    return ctx;
}

Cyclo::Cyclo(const Rat& r, std::int64_t m) : ctx_(CycloContext::get(m)) {
    c_.assign(static_cast<std::size_t>(ctx_->degree()), Rat(0));
    c_[0] = r;
}

Cyclo Cyclo::root_power(std::int64_t m, std::int64_t e) {
    auto ctx = CycloContext::get(m);
    e %= m;
    if (e < 0) e += m;
    const auto& pw = ctx->power(e);
    std::vector<Rat> c(pw.size());
    for (std::size_t t = 0; t < pw.size(); ++t) c[t] = Rat(pw[t]);
    return Cyclo(std::move(ctx), std::move(c));
}

bool Cyclo::is_zero() const {
    for (const Rat& v : c_)
        if (!v.is_zero()) return false;
    return true;
}

bool Cyclo::is_one() const {
    if (!c_[0].is_one()) return false;
    for (std::size_t t = 1; t < c_.size(); ++t)
        if (!c_[t].is_zero()) return false;
    return true;
}

bool Cyclo::is_rational() const {
    for (std::size_t t = 1; t < c_.size(); ++t)
        if (!c_[t].is_zero()) return false;
    return true;
}

Rat Cyclo::rational_value() const {
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational: " + str());
    return c_[0];
}

void Cyclo::align(Cyclo& a, Cyclo& b) {
    if (a.ctx_ == b.ctx_) return;
    if (a.is_rational()) {
        a = Cyclo(a.c_[0], b.modulus());
        return;
    }
    if (b.is_rational()) {
        b = Cyclo(b.c_[0], a.modulus());
        return;
    }
    throw std::domain_error("cyclotomic arithmetic across different moduli");
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    Cyclo x = a, y = b;
    Cyclo::align(x, y);
    for (std::size_t t = 0; t < x.c_.size(); ++t) x.c_[t] += y.c_[t];
    return x;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) {
    Cyclo x = a, y = b;
    Cyclo::align(x, y);
    for (std::size_t t = 0; t < x.c_.size(); ++t) x.c_[t] -= y.c_[t];
    return x;
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (Rat& v : r.c_) v = -v;
    return r;
}

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    Cyclo x = a, y = b;
    Cyclo::align(x, y);
    const auto& ctx = *x.ctx_;
    std::size_t phi = static_cast<std::size_t>(ctx.degree());
    // Schoolbook product, then fold exponents >= phi through the power table.
    std::vector<Rat> prod(2 * phi - 1, Rat(0));
    for (std::size_t i = 0; i < phi; ++i) {
        if (x.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < phi; ++j) {
            if (y.c_[j].is_zero()) continue;
            prod[i + j] += x.c_[i] * y.c_[j];
        }
    }
    std::vector<Rat> out(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(phi));
    for (std::size_t e = phi; e < prod.size(); ++e) {
        if (prod[e].is_zero()) continue;
        const auto& pw = ctx.power(static_cast<std::int64_t>(e));
        for (std::size_t t = 0; t < phi; ++t)
            if (pw[t] != 0) out[t] += prod[e] * Rat(pw[t]);
    }
    return Cyclo(x.ctx_, std::move(out));
}

Cyclo Cyclo::times_root(std::int64_t e) const {
    const auto& ctx = *ctx_;
    std::int64_t m = ctx.modulus();
    e %= m;
    if (e < 0) e += m;
    if (e == 0) return *this;
    std::size_t phi = static_cast<std::size_t>(ctx.degree());
    std::vector<Rat> out(phi, Rat(0));
    for (std::size_t j = 0; j < phi; ++j) {
        if (c_[j].is_zero()) continue;
        const auto& pw = ctx.power(static_cast<std::int64_t>(j) + e);
        for (std::size_t t = 0; t < phi; ++t)
            if (pw[t] != 0) out[t] += c_[j] * Rat(pw[t]);
    }
    return Cyclo(ctx_, std::move(out));
}

Cyclo Cyclo::conj() const {
    const auto& ctx = *ctx_;
    std::int64_t m = ctx.modulus();
    std::size_t phi = static_cast<std::size_t>(ctx.degree());
    std::vector<Rat> out(phi, Rat(0));
    for (std::size_t j = 0; j < phi; ++j) {
        if (c_[j].is_zero()) continue;
        const auto& pw = ctx.power((m - static_cast<std::int64_t>(j)) % m);
        for (std::size_t t = 0; t < phi; ++t)
            if (pw[t] != 0) out[t] += c_[j] * Rat(pw[t]);
    }
    return Cyclo(ctx_, std::move(out));
}

bool operator==(const Cyclo& a, const Cyclo& b) {
    Cyclo x = a, y = b;
    try {
        Cyclo::align(x, y);
    } catch (const std::domain_error&) {
        return false;
    }
    return x.c_ == y.c_;
}

std::complex<double> Cyclo::to_complex() const {
    std::int64_t m = ctx_->modulus();
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
        acc += c_[j].to_double() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return acc;
}

std::string Cyclo::str() const {
    if (is_rational()) return c_[0].str();
    std::string z = "z" + std::to_string(ctx_->modulus());
    std::string out;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        std::string term = c_[j].str();
        if (j > 0) {
            term += "*" + z;
            if (j > 1) term += "^" + std::to_string(j);
        }
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out.empty() ? "0" : out;
}

}  // namespace finabel
