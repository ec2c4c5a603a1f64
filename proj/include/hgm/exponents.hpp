#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "hgm/residue.hpp"

namespace hgm {

enum class ParityCase { OddN, EvenN, NEquals2 };

// The character exponent vector (a_1, ..., a_N): one entry per index, with
// the closed-form shape depending on the parity of n.
struct CharacterExponents {
    u64 N = 0;
    unsigned n = 0;
    ParityCase parity = ParityCase::NEquals2;
    std::vector<u64> entries;  // length N, values in [0, N)
    bool small_N_warning = false;  // N <= 100n + 100: the stability guarantee needs an explicit scan
};

// The permitted character indices {b_1, ..., b_n}: residues i with
// i + a_j != 0 for every exponent a_j.
struct EigenvalueSet {
    u64 N = 0;
    std::vector<u64> members;  // sorted, distinct, nonzero
};

namespace detail {

// The entries in display order: for n = 2 the zeros sit in the middle, for
// n > 2 they trail the two nonzero runs.
inline std::vector<u64> exponent_vector(unsigned n, u64 N) {
    std::vector<u64> v;
    if (n == 2) {
        for (u64 x = 1; x <= (N - 3) / 2; ++x) v.push_back(x);
        v.insert(v.end(), 3, 0);
        for (u64 x = (N + 3) / 2; x <= N - 1; ++x) v.push_back(x);
    } else if (n % 2 == 1) {
        for (u64 x = 1; 2 * x <= N - n + 2; ++x)
            if (x != 3) v.push_back(x);
        for (u64 x = (N + n - 2) / 2; x <= N - 3; ++x) v.push_back(x);
        v.insert(v.end(), n + 1, 0);
    } else {
        for (u64 x = 1; 2 * x <= N - n + 3; ++x)
            if (x != 6) v.push_back(x);
        for (u64 x = (N + n - 3) / 2; x <= N - 4; ++x) v.push_back(x);
        v.insert(v.end(), n + 1, 0);
    }
    return v;
}

}  // namespace detail

inline EigenvalueSet derive_b_set(const CharacterExponents& exp);

inline CharacterExponents build_exponents(unsigned n, u64 N) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    if (N % 2 == 0) throw std::invalid_argument("N must be odd");
    if (std::gcd(N, static_cast<u64>(n)) != 1) throw std::invalid_argument("N must be coprime to n");
    CharacterExponents e;
    e.N = N;
    e.n = n;
    e.parity = n == 2 ? ParityCase::NEquals2 : (n % 2 ? ParityCase::OddN : ParityCase::EvenN);
    e.small_N_warning = N <= 100 * u64(n) + 100;

    if (n >= N) throw std::invalid_argument("N too small for case");
    e.entries = detail::exponent_vector(n, N);
    if (e.entries.size() != N) throw std::invalid_argument("N too small for case");
    // the nonzero entries must be distinct for the displayed ranges to make sense
    {
        std::set<u64> nz;
        for (u64 v : e.entries)
            if (v != 0 && !nz.insert(v).second) throw std::invalid_argument("N too small for case");
        u64 expected_nonzero = n == 2 ? N - 3 : N - u64(n) - 1;
        if (nz.size() != expected_nonzero) throw std::invalid_argument("N too small for case");
    }

    u64 sum = 0;
    for (u64 v : e.entries) sum += v;
    if (sum % N != 0) throw std::invalid_argument("N too small for case");

    // the eigenvalue set must come out with cardinality exactly n
    EigenvalueSet b = derive_b_set(e);
    if (b.members.size() != n) throw std::invalid_argument("N too small for case");
    return e;
}

// Brute-force scan for the full set of residues i with i + a_j != 0 for all j.
inline EigenvalueSet derive_b_set(const CharacterExponents& exp) {
    EigenvalueSet out;
    out.N = exp.N;
    std::vector<bool> forbidden(exp.N, false);
    for (u64 a : exp.entries) forbidden[(exp.N - a) % exp.N] = true;
    for (u64 i = 0; i < exp.N; ++i)
        if (!forbidden[i]) out.members.push_back(i);
    return out;
}

// Closed-form eigenvalue set from the case displays; the brute-force scan
// above is the oracle it is tested against.
inline std::vector<u64> b_set_closed_form(unsigned n, u64 N) {
    std::set<u64> s;
    if (n == 2) {
        s = {(N - 1) / 2, (N + 1) / 2};
    } else if (n % 2 == 1) {
        s = {1, 2, N - 3};
        for (u64 v = (N - n + 4 + 1) / 2; 2 * v <= N + n - 4; ++v) s.insert(v);
    } else {
        s = {1, 2, 3, N - 6};
        for (u64 v = (N - n + 5 + 1) / 2; 2 * v <= N + n - 5; ++v) s.insert(v);
    }
    return {s.begin(), s.end()};
}

struct StabilityVerdict {
    bool stable_only_by_one = false;
    std::optional<u64> witness;  // first nontrivial stabilizer, increasing order
};

// Exhaustive scan over (Z/NZ)^x for nontrivial alpha with alpha * b = b.
inline StabilityVerdict check_alpha_stability(const EigenvalueSet& b) {
    StabilityVerdict v;
    std::set<u64> base(b.members.begin(), b.members.end());
    for (u64 alpha = 2; alpha < b.N; ++alpha) {
        if (std::gcd(alpha, b.N) != 1) continue;
        std::set<u64> mapped;
        for (u64 x : b.members) mapped.insert(mulmod(alpha, x, b.N));
        if (mapped == base) {
            v.witness = alpha;
            return v;
        }
    }
    v.stable_only_by_one = true;
    return v;
}

}  // namespace hgm
