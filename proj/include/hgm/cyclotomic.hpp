#pragma once

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "hgm/finite_field.hpp"
#include "hgm/integers.hpp"

namespace hgm {

namespace detail {

// Phi_m as an integer polynomial, computed by exact division of X^m - 1 by
// the cyclotomic polynomials of the proper divisors. Cached per conductor.
struct CycloTable {
    u64 m = 0;
    u64 phi = 0;
    std::vector<mpz_class> Phi;  // monic, length phi + 1, low-to-high
};

inline const CycloTable& cyclo_table(u64 m) {
    static std::map<u64, CycloTable> cache;
    static std::mutex mtx;
    if (m == 0 || m > 10000) throw std::invalid_argument("conductor out of range");
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    // compute divisors bottom-up without recursive locking
    for (u64 d = 1; d <= m; ++d) {
        if (m % d != 0 || cache.count(d)) continue;
        CycloTable t;
        t.m = d;
        std::vector<mpz_class> num(d + 1, 0);
        num[0] = -1;
        num[d] = 1;
        for (u64 e = 1; e < d; ++e) {
            if (d % e != 0) continue;
            const CycloTable& te = cache.at(e);
            std::vector<mpz_class> quo(num.size() - te.phi, 0);
            for (size_t i = num.size(); i-- > te.phi;) {
                mpz_class c = num[i];
                if (c == 0) continue;
                size_t shift = i - te.phi;
                quo[shift] = c;
                for (size_t j = 0; j <= te.phi; ++j) num[shift + j] -= c * te.Phi[j];
            }
            num = std::move(quo);
        }
        t.Phi = std::move(num);
        t.phi = t.Phi.size() - 1;
        cache.emplace(d, std::move(t));
    }
    return cache.at(m);
}

}  // namespace detail

// Exact element of Z[zeta_m], stored as the canonical residue modulo the
// m-th cyclotomic polynomial: phi(m) unbounded integer coefficients.
class CyclotomicInt {
  public:
    explicit CyclotomicInt(u64 conductor)
        : m_(conductor), c_(detail::cyclo_table(conductor).phi, 0) {}

    static CyclotomicInt from_int(u64 conductor, const mpz_class& n) {
        CyclotomicInt x(conductor);
        x.c_[0] = n;
        return x;
    }
    // zeta_m^e
    static CyclotomicInt zeta_pow(u64 conductor, u64 e) {
        CyclotomicInt x(conductor);
        std::vector<mpz_class> raw(conductor, 0);
        raw[e % conductor] = 1;
        x.assign_reduced(std::move(raw));
        return x;
    }

    u64 conductor() const { return m_; }
    u64 phi() const { return c_.size(); }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool operator==(const CyclotomicInt& o) const {
        if (m_ != o.m_) throw std::invalid_argument("conductor mismatch");
        return c_ == o.c_;
    }
    bool operator!=(const CyclotomicInt& o) const { return !(*this == o); }

    CyclotomicInt operator+(const CyclotomicInt& o) const {
        check(o);
        CyclotomicInt r(m_);
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
        return r;
    }
    CyclotomicInt operator-(const CyclotomicInt& o) const {
        check(o);
        CyclotomicInt r(m_);
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
        return r;
    }
    CyclotomicInt operator-() const {
        CyclotomicInt r(m_);
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
        return r;
    }
    CyclotomicInt operator*(const CyclotomicInt& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return CyclotomicInt(m_);
        std::vector<mpz_class> prod(2 * c_.size() - 1, 0);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) {
                if (o.c_[j] == 0) continue;
                prod[i + j] += c_[i] * o.c_[j];
            }
        }
        CyclotomicInt r(m_);
        r.assign_reduced(std::move(prod));
        return r;
    }
    CyclotomicInt operator*(const mpz_class& s) const {
        CyclotomicInt r(m_);
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * s;
        return r;
    }

    CyclotomicInt pow(unsigned e) const {
        CyclotomicInt r = from_int(m_, 1);
        CyclotomicInt base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    // The ring automorphism zeta_m -> zeta_m^a, gcd(a, m) = 1.
    CyclotomicInt galois(u64 a) const {
        a %= m_;
        if (std::gcd(a, m_) != 1) throw std::invalid_argument("galois exponent not a unit");
        std::vector<mpz_class> raw(m_, 0);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            raw[(i * a) % m_] += c_[i];
        }
        CyclotomicInt r(m_);
        r.assign_reduced(std::move(raw));
        return r;
    }

    bool divisible_by(const mpz_class& d) const {
        for (const auto& x : c_)
            if (x % d != 0) return false;
        return true;
    }
    CyclotomicInt div_exact(const mpz_class& d) const {
        CyclotomicInt r(m_);
        for (size_t i = 0; i < c_.size(); ++i) {
            mpz_class q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c_[i].get_mpz_t(), d.get_mpz_t());
            if (rem != 0) throw std::invalid_argument("inexact cyclotomic division");
            r.c_[i] = q;
        }
        return r;
    }

    // Rewrites an element of Z[zeta_m] in Z[zeta_d] when m = d * e with e a
    // prime not dividing d. Throws when the element does not lie in the
    // subring.
    CyclotomicInt descend(u64 d) const {
        u64 e = m_ / d;
        if (d * e != m_ || std::gcd(d, e) != 1 || !is_prime_u64(e))
            throw std::invalid_argument("unsupported conductor descent");
        // tensor coordinates: zeta_m^k = zeta_d^alpha * zeta_e^beta by CRT
        std::vector<std::vector<mpz_class>> t(d, std::vector<mpz_class>(e, 0));
        for (size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            // solve e*x = k mod d and d*y = k mod e (zeta_d = zeta_m^e etc.)
            u64 alpha = mulmod(k % d, invmod(e % d, d), d);
            u64 beta = mulmod(k % e, invmod(d % e, e), e);
            t[alpha][beta] += c_[k];
        }
        // reduce the zeta_e direction modulo Phi_e = 1 + x + ... + x^(e-1)
        for (u64 a = 0; a < d; ++a) {
            mpz_class top = t[a][e - 1];
            if (top == 0) continue;
            for (u64 b = 0; b < e - 1; ++b) t[a][b] -= top;
            t[a][e - 1] = 0;
        }
        // reduce the zeta_d direction modulo Phi_d, per beta-slice
        const auto& td = detail::cyclo_table(d);
        CyclotomicInt out(d);
        for (u64 b = 0; b + 1 < e; ++b) {
            std::vector<mpz_class> slice(d, 0);
            for (u64 a = 0; a < d; ++a) slice[a] = t[a][b];
            for (size_t i = slice.size(); i-- > td.phi;) {
                mpz_class c = slice[i];
                if (c == 0) continue;
                slice[i] = 0;
                for (size_t j = 0; j < td.phi; ++j) slice[i - td.phi + j] -= c * td.Phi[j];
            }
            if (b == 0) {
                for (size_t i = 0; i < td.phi; ++i) out.c_[i] = slice[i];
            } else {
                for (size_t i = 0; i < td.phi; ++i)
                    if (slice[i] != 0) throw std::invalid_argument("element not in subring");
            }
        }
        return out;
    }

    // Ring homomorphism image under zeta_m -> root (an element of exact
    // multiplicative order m in the target field).
    FiniteField::elt reduce(const FiniteField& field, FiniteField::elt root) const {
        if (m_ % field.characteristic() == 0)
            throw std::invalid_argument("ramified reduction unsupported");
        FiniteField::elt acc = 0, power = 1;
        mpz_class p(static_cast<unsigned long>(field.characteristic()));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] != 0) {
                mpz_class r = c_[i] % p;
                if (r < 0) r += p;
                acc = field.add(acc, field.mul(field.from_int(r.get_si()), power));
            }
            power = field.mul(power, root);
        }
        return acc;
    }

  private:
    void check(const CyclotomicInt& o) const {
        if (m_ != o.m_) throw std::invalid_argument("conductor mismatch");
    }
    // reduce a raw coefficient vector (any length) modulo Phi_m
    void assign_reduced(std::vector<mpz_class> raw) {
        const auto& t = detail::cyclo_table(m_);
        for (size_t i = raw.size(); i-- > t.phi;) {
            mpz_class c = raw[i];
            if (c == 0) continue;
            raw[i] = 0;
            for (size_t j = 0; j < t.phi; ++j) raw[i - t.phi + j] -= c * t.Phi[j];
        }
        raw.resize(t.phi);
        for (size_t i = 0; i < t.phi; ++i) c_[i] = raw[i];
    }

    u64 m_;
    std::vector<mpz_class> c_;
};

// Deterministic assignment of zeta_m to a field element of exact order m:
// the root of the lexicographically smallest linear factor of Phi_m over the
// field (the factor X - r minimizing the canonical code of -r).
inline FiniteField::elt canonical_root_assignment(const FiniteField& field, u64 m) {
    if (m % field.characteristic() == 0)
        throw std::invalid_argument("ramified reduction unsupported");
    if ((field.order() - 1) % m != 0)
        throw std::invalid_argument("field has no elements of order m");
    FiniteField::elt h = field.pow(field.generator(), (field.order() - 1) / m);
    bool found = false;
    FiniteField::elt best = 0, best_key = 0;
    for (u64 t = 1; t < m; ++t) {
        if (std::gcd(t, m) != 1) continue;
        FiniteField::elt r = field.pow(h, t);
        FiniteField::elt key = field.neg(r);
        if (!found || key < best_key) {
            found = true;
            best = r;
            best_key = key;
        }
    }
    if (!found) throw std::logic_error("no primitive m-th root found");
    return best;
}

inline FiniteField::elt cyclo_reduce_mod_prime(const CyclotomicInt& x, const FiniteField& field) {
    return x.reduce(field, canonical_root_assignment(field, x.conductor()));
}

}  // namespace hgm
