#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hgm/integers.hpp"

namespace hgm {

// Integral Weierstrass curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct EllipticCurveQ {
    long a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

    mpz_class discriminant() const {
        mpz_class A1 = a1, A2 = a2, A3 = a3, A4 = a4, A6 = a6;
        mpz_class b2 = A1 * A1 + 4 * A2;
        mpz_class b4 = 2 * A4 + A1 * A3;
        mpz_class b6 = A3 * A3 + 4 * A6;
        mpz_class b8 = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
        return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    }

    bool good_reduction(u64 p) const {
        return !mpz_divisible_ui_p(discriminant().get_mpz_t(), p);
    }
};

// a_p = p + 1 - #E(F_p) by direct x-loop: complete the square in y and count
// with the quadratic character of (a1 x + a3)^2 + 4(x^3 + a2 x^2 + a4 x + a6).
inline long long count_points_ap(const EllipticCurveQ& E, u64 p) {
    if (p == 2 || !is_prime_u64(p)) throw std::invalid_argument("p must be an odd prime");
    if (p > 1000000) throw std::invalid_argument("p exceeds the naive-count budget");
    if (!E.good_reduction(p)) throw std::invalid_argument("bad reduction");

    std::vector<int8_t> chi(p, -1);
    chi[0] = 0;
    for (u64 i = 1; i < p; ++i) chi[mulmod(i, i, p)] = 1;

    auto red = [&](long long v) { return static_cast<u64>(((v % static_cast<long long>(p)) + static_cast<long long>(p)) % static_cast<long long>(p)); };
    u64 a1 = red(E.a1), a2 = red(E.a2), a3 = red(E.a3), a4 = red(E.a4), a6 = red(E.a6);

    long long sum = 0;
    for (u64 x = 0; x < p; ++x) {
        u64 lin = (mulmod(a1, x, p) + a3) % p;
        u64 x2 = mulmod(x, x, p);
        u64 rhs = (mulmod(x2, x, p) + mulmod(a2, x2, p) + mulmod(a4, x, p) + a6) % p;
        u64 D = (mulmod(lin, lin, p) + 4 * rhs) % p;
        sum += chi[D];
    }
    long long ap = -sum;
    if (static_cast<double>(ap) * ap > 4.0 * static_cast<double>(p))
        throw std::logic_error("Hasse bound violated");
    return ap;
}

inline bool is_ordinary(const EllipticCurveQ& E, u64 p) {
    long long ap = count_points_ap(E, p);
    return ap % static_cast<long long>(p) != 0;
}

struct LPrimeCandidate {
    u64 value = 0;
    std::vector<std::string> failed;  // conditions this candidate failed
    std::optional<long long> ap;
};

struct LPrimeReport {
    u64 N = 0, l = 0;
    unsigned n = 0;
    u64 budget = 0;
    std::optional<u64> found;
    long long found_ap = 0;
    std::vector<LPrimeCandidate> rejected;
    // conditions deliberately not checked at this scale
    std::vector<std::string> unverified{"unramified in the coefficient field",
                                        "mod-l image surjectivity", "scalar element in the image"};
};

// Smallest prime l' <= budget with l' = 1 mod N, l' > 2ln + 5, good ordinary
// reduction for E. Every rejection is recorded with its failed conditions.
inline LPrimeReport find_l_prime(u64 N, u64 l, unsigned n, const EllipticCurveQ& E, u64 budget) {
    LPrimeReport rep;
    rep.N = N;
    rep.l = l;
    rep.n = n;
    rep.budget = budget;
    u64 bound = 2 * l * n + 5;
    for (u64 c = N + 1; c <= budget; c += N) {
        if (!is_prime_u64(c)) continue;
        LPrimeCandidate cand;
        cand.value = c;
        if (c <= bound) cand.failed.push_back("l' <= 2ln+5");
        if (!E.good_reduction(c)) {
            cand.failed.push_back("bad reduction");
        } else if (c > 2 && cand.failed.empty()) {
            long long ap = count_points_ap(E, c);
            cand.ap = ap;
            if (ap % static_cast<long long>(c) == 0) cand.failed.push_back("supersingular reduction");
        }
        if (cand.failed.empty() && cand.ap) {
            rep.found = c;
            rep.found_ap = *cand.ap;
            return rep;
        }
        rep.rejected.push_back(std::move(cand));
    }
    std::string last = rep.rejected.empty() ? "none" : std::to_string(rep.rejected.back().value);
    throw std::runtime_error("budget exhausted; last candidate " + last);
}

}  // namespace hgm
