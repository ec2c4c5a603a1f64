#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

// Exact integer utilities shared by every layer: modular arithmetic on
// 64-bit operands, deterministic Miller-Rabin, and small-scale
// factorization (trial division plus Pollard rho).

namespace hgm {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic below 3.3e24 with this base set; our inputs are < 2^64.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

inline u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    u64 c = 1;
    while (true) {
        u64 x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (mulmod(x, x, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            u64 diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
        ++c;
    }
}

}  // namespace detail

// Prime factorization n = prod p^e as a sorted map.
inline std::map<u64, int> factorize(u64 n) {
    std::map<u64, int> out;
    if (n == 0) throw std::invalid_argument("factorize: zero");
    for (u64 p = 2; p <= 97 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) { ++out[p]; n /= p; }
    }
    std::vector<u64> stack;
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        u64 m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_prime_u64(m)) {
            ++out[m];
            continue;
        }
        u64 d = detail::pollard_rho(m);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    return out;
}

inline u64 euler_phi(u64 n) {
    u64 r = n;
    for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

// Multiplicative order of x modulo m, via descent from phi(m).
inline u64 mult_order(u64 x, u64 m) {
    if (m == 0) throw std::invalid_argument("mult_order: zero modulus");
    x %= m;
    if (std::gcd(x, m) != 1) throw std::invalid_argument("not invertible");
    if (m == 1) return 1;
    u64 order = euler_phi(m);
    for (auto& [p, e] : factorize(order)) {
        for (int i = 0; i < e; ++i) {
            if (powmod(x, order / p, m) == 1)
                order /= p;
            else
                break;
        }
    }
    return order;
}

// Extended gcd based modular inverse.
inline u64 invmod(u64 a, u64 m) {
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), newr = static_cast<std::int64_t>(a % m);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw std::invalid_argument("not invertible");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<u64>(t);
}

// x = r1 mod m1, x = r2 mod m2 for coprime m1, m2.
inline u64 crt(u64 r1, u64 m1, u64 r2, u64 m2) {
    u64 m = m1 * m2;
    u64 inv = invmod(m1 % m2, m2);
    u64 diff = (r2 + m2 - r1 % m2) % m2;
    return (r1 + m1 * mulmod(diff, inv, m2)) % m;
}

inline u64 ipow(u64 base, unsigned exp) {
    u64 r = 1;
    while (exp--) {
        if (base != 0 && r > UINT64_MAX / base) throw std::overflow_error("ipow overflow");
        r *= base;
    }
    return r;
}

inline mpz_class mpz_pow(const mpz_class& base, unsigned long exp) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

}  // namespace hgm
