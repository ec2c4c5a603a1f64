#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hgm/residue.hpp"

namespace hgm {

// One constructed factor M_i of N, with its exponent data and certificate.
struct NSearchFactor {
    u64 base = 0;      // 2 for the first step, else the odd prime p_i
    unsigned s_exponent = 0;  // a_i, the exponent of base in s
    unsigned t = 0;    // chosen t_i
    u64 M = 0;         // the factor contributed to N
    u64 A = 0, B = 0;  // only for the base-2 step: M_0 = A * B
};

struct NSearchReport {
    u64 l = 0;
    u64 s = 0;
    u64 N = 0;
    u64 r = 0;  // independently recomputed order of l mod N
    std::vector<NSearchFactor> factors;
    std::vector<std::string> transcript;
};

namespace detail {

inline bool fits_u64(const mpz_class& x) { return x >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 63; }

// Smallest prime divisor of x subject to a qualifier, or nullopt when the
// factoring budget (trial division to 1e6, then exact factorization below
// 2^63) cannot decide.
template <typename Pred>
std::optional<u64> smallest_prime_divisor(const mpz_class& x, Pred qualifies, bool* budget_hit) {
    *budget_hit = false;
    mpz_class rest = x;
    for (u64 d = 2; d <= 1000000 && rest > 1; d = (d == 2 ? 3 : d + 2)) {
        if (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
            if (qualifies(d)) return d;
            while (mpz_divisible_ui_p(rest.get_mpz_t(), d))
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
        }
    }
    if (rest == 1) return std::nullopt;
    if (!fits_u64(rest)) {
        *budget_hit = true;
        return std::nullopt;
    }
    u64 best = 0;
    for (auto& [p, e] : factorize(rest.get_ui())) {
        if (qualifies(p) && (best == 0 || p < best)) best = p;
    }
    if (best) return best;
    return std::nullopt;
}

// true when the order of l mod q is NOT a power of `base` (so q never
// divides l^(base^k) - 1 for k > 0)
inline bool order_avoids_base_powers(u64 l, u64 q, u64 base) {
    if (l % q == 0) return true;
    u64 ord = mult_order(l % q, q);
    while (ord % base == 0) ord /= base;
    return ord != 1;
}

inline bool order_divides_base_power(u64 l, u64 q, u64 base, unsigned exp) {
    if (l % q == 0) return false;
    u64 ord = mult_order(l % q, q);
    u64 target = 1;
    for (unsigned i = 0; i < exp; ++i) target *= base;
    return target % ord == 0;
}

}  // namespace detail

// Constructs an integer N coprime to l and the avoid set such that the
// multiplicative order r of l mod N is a multiple of s, and N does not
// divide l^(r/2) + 1 when r is even. Smallest-first tie-breaking throughout
// so the output is reproducible. Postconditions are re-verified from scratch.
inline NSearchReport find_N(u64 l, u64 s, const std::set<u64>& avoid) {
    if (!is_prime_u64(l)) throw std::invalid_argument("l must be prime");
    if (s == 0) throw std::invalid_argument("s must be positive");
    if (avoid.count(l)) throw std::invalid_argument("avoid set must not contain l");

    NSearchReport rep;
    rep.l = l;
    rep.s = s;

    auto sfac = factorize(s);
    unsigned a0 = sfac.count(2) ? static_cast<unsigned>(sfac.at(2)) : 0;

    std::set<u64> used_primes;  // prime divisors of the M_j built so far

    // base-2 step: M_0 = A * B with A | l^(2^(t0-2)) + 1, B | l^(2^(t0-1)) + 1
    {
        std::set<u64> qset(avoid.begin(), avoid.end());
        qset.insert(2);
        constexpr unsigned t_cap = 16;
        NSearchFactor f;
        f.base = 2;
        f.s_exponent = a0;
        bool done = false;
        for (unsigned t0 = std::max(a0, 2u) + 1; t0 <= t_cap && !done; ++t0) {
            bool ok = true;
            for (u64 q : qset) {
                if (!detail::order_avoids_base_powers(l, q, 2) &&
                    !detail::order_divides_base_power(l, q, 2, t0 - 3)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            mpz_class lA = mpz_pow(mpz_class(static_cast<unsigned long>(l)), 1u << (t0 - 2)) + 1;
            mpz_class lB = mpz_pow(mpz_class(static_cast<unsigned long>(l)), 1u << (t0 - 1)) + 1;
            bool budget = false;
            auto qualifies = [&](u64 p) { return p != 2 && p != l && !avoid.count(p); };
            auto A = detail::smallest_prime_divisor(lA, qualifies, &budget);
            if (!A) continue;
            auto B = detail::smallest_prime_divisor(lB, qualifies, &budget);
            if (!B || *A == *B) continue;
            if (static_cast<u128>(*A) * *B > (u64(1) << 62)) continue;
            // deduced properties of the construction, re-checked
            u64 ordA = mult_order(l % *A, *A);
            u64 ordB = mult_order(l % *B, *B);
            u64 M0 = *A * *B;
            if (ordA != (u64(1) << (t0 - 1)) || ordB != (u64(1) << t0)) continue;
            f.t = t0;
            f.A = *A;
            f.B = *B;
            f.M = M0;
            rep.transcript.push_back("t0=" + std::to_string(t0) + ": A=" + std::to_string(*A) +
                                     " | l^(2^" + std::to_string(t0 - 2) + ")+1, B=" +
                                     std::to_string(*B) + " | l^(2^" + std::to_string(t0 - 1) +
                                     ")+1, M0=" + std::to_string(M0) + ", ord(l)=" +
                                     std::to_string(mult_order(l % M0, M0)) + ", ordA=" +
                                     std::to_string(ordA) + ", ordB=" + std::to_string(ordB));
            done = true;
        }
        if (!done) throw std::runtime_error("search budget exceeded");
        used_primes.insert(f.A);
        used_primes.insert(f.B);
        rep.factors.push_back(f);
    }

    // odd prime-power parts of s
    for (auto& [p, a] : sfac) {
        if (p == 2) continue;
        std::set<u64> Si(avoid.begin(), avoid.end());
        Si.insert(p);
        Si.insert(l);
        Si.insert(2);
        Si.insert(used_primes.begin(), used_primes.end());

        constexpr unsigned t_cap = 12;
        NSearchFactor f;
        f.base = p;
        f.s_exponent = static_cast<unsigned>(a);
        bool done = false;
        for (unsigned ti = static_cast<unsigned>(a) + 1; ti <= t_cap && !done; ++ti) {
            if (ti < 2) continue;
            // l^(p^(ti-2)) > p
            mpz_class low = mpz_pow(mpz_class(static_cast<unsigned long>(l)),
                                    static_cast<unsigned long>(ipow(p, ti - 2)));
            if (low <= static_cast<long>(p)) continue;
            bool ok = true;
            for (u64 q : Si) {
                if (!detail::order_avoids_base_powers(l, q, p) &&
                    !detail::order_divides_base_power(l, q, p, ti - 2)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            mpz_class big = mpz_pow(mpz_class(static_cast<unsigned long>(l)),
                                    static_cast<unsigned long>(ipow(p, ti)));
            mpz_class small = mpz_pow(mpz_class(static_cast<unsigned long>(l)),
                                      static_cast<unsigned long>(ipow(p, ti - 1)));
            mpz_class C = (big - 1) / (small - 1);
            bool budget = false;
            auto qualifies = [&](u64 d) { return d % 2 == 1 && !Si.count(d); };
            auto Mi = detail::smallest_prime_divisor(C, qualifies, &budget);
            if (!Mi) continue;
            if (mult_order(l % *Mi, *Mi) != ipow(p, ti)) continue;
            f.t = ti;
            f.M = *Mi;
            rep.transcript.push_back("p=" + std::to_string(p) + ", t=" + std::to_string(ti) +
                                     ": M=" + std::to_string(*Mi) + " | (l^(p^t)-1)/(l^(p^(t-1))-1)" +
                                     ", ord(l)=" + std::to_string(ipow(p, ti)));
            done = true;
        }
        if (!done) throw std::runtime_error("search budget exceeded");
        used_primes.insert(f.M);
        rep.factors.push_back(f);
    }

    mpz_class Nz = 1;
    for (auto& f : rep.factors) Nz *= mpz_class(static_cast<unsigned long>(f.M));
    if (!detail::fits_u64(Nz)) throw std::runtime_error("search budget exceeded");
    rep.N = Nz.get_ui();

    // independent re-verification, never trusted from the transcript
    rep.r = residue_order(Residue(l % rep.N, rep.N));
    if (rep.r % s != 0) throw std::logic_error("postcondition failed: s does not divide r");
    if (rep.r % 2 == 0 && powmod(l, rep.r / 2, rep.N) == rep.N - 1)
        throw std::logic_error("postcondition failed: N divides l^(r/2)+1");
    if (std::gcd(rep.N, l) != 1) throw std::logic_error("postcondition failed: gcd(N, l) != 1");
    for (u64 q : avoid)
        if (rep.N % q == 0) throw std::logic_error("postcondition failed: avoided prime divides N");
    rep.transcript.push_back("N=" + std::to_string(rep.N) + ", ord_N(l)=" + std::to_string(rep.r) +
                             " (re-verified)");
    return rep;
}

}  // namespace hgm
