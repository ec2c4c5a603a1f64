#pragma once

#include <map>
#include <vector>

#include <gmpxx.h>

#include "hgm/exponents.hpp"

namespace hgm {

// Representative of x mod N in {1, ..., N}.
inline u64 rep1N(u64 x, u64 N) {
    u64 r = x % N;
    return r == 0 ? N : r;
}

// j(d) = (sum_i rep(a*a_i + d)) / N - 1 for d = 1..N. The sums are divisible
// by N exactly when the exponents are well formed.
inline std::vector<long long> j_profile(const CharacterExponents& exp, u64 a) {
    if (std::gcd(a, exp.N) != 1) throw std::invalid_argument("twist must be a unit mod N");
    std::vector<long long> j;
    for (u64 d = 1; d <= exp.N; ++d) {
        u64 sum = 0;
        for (u64 ai : exp.entries) sum += rep1N(mulmod(a, ai, exp.N) + d, exp.N);
        if (sum % exp.N != 0) throw std::logic_error("j-profile sum not divisible by N");
        j.push_back(static_cast<long long>(sum / exp.N) - 1);
    }
    return j;
}

struct TwistProfile {
    u64 a = 0;
    long long M = 0;
    std::map<u64, long long> positions;  // eigenvalue i in the b-set -> j
};

// position(i) = M(a) + #{b in b-set : rep(ab) < rep(ai)}, M(a) = j(1);
// cross-validated against the recursion j(d+1) = j(d)+1 iff d in a*b-set.
inline TwistProfile hodge_positions(const CharacterExponents& exp, const EigenvalueSet& b, u64 a) {
    std::vector<long long> j = j_profile(exp, a);
    TwistProfile prof;
    prof.a = a % exp.N;
    prof.M = j[0];

    std::set<u64> ab;
    for (u64 bi : b.members) ab.insert(rep1N(mulmod(a, bi, exp.N), exp.N));
    for (u64 d = 1; d < exp.N; ++d) {
        long long expected = j[d - 1] + (ab.count(d) ? 1 : 0);
        if (j[d] != expected) throw std::logic_error("j-profile recursion mismatch");
    }

    for (u64 bi : b.members) {
        long long count = 0;
        for (u64 other : b.members)
            if (rep1N(mulmod(a, other, exp.N), exp.N) < rep1N(mulmod(a, bi, exp.N), exp.N)) ++count;
        prof.positions[bi] = prof.M + count;
    }

    // the positions must be exactly {M, M+1, ..., M+n-1}
    std::set<long long> vals;
    for (auto& [i, v] : prof.positions) vals.insert(v);
    if (vals.size() != b.members.size() || *vals.begin() != prof.M ||
        *vals.rbegin() != prof.M + static_cast<long long>(b.members.size()) - 1)
        throw std::logic_error("positions are not a consecutive range");
    return prof;
}

struct OrdinarityInstance {
    std::vector<std::vector<long long>> weights;  // embeddings x n, rows non-increasing
    std::vector<mpq_class> valuations;            // length n, non-increasing
};

// val_i = sum over embeddings of (a_{tau,i} + n - i), indices 1-based.
inline bool ordinary_predicate(const OrdinarityInstance& inst) {
    size_t n = inst.valuations.size();
    for (const auto& row : inst.weights) {
        if (row.size() != n) throw std::invalid_argument("weight row length mismatch");
        for (size_t i = 1; i < n; ++i)
            if (row[i - 1] < row[i]) throw std::invalid_argument("weight rows must be non-increasing");
    }
    for (size_t i = 1; i < n; ++i)
        if (inst.valuations[i - 1] < inst.valuations[i])
            throw std::invalid_argument("valuations must be non-increasing");
    for (size_t i = 1; i <= n; ++i) {
        mpq_class target = 0;
        for (const auto& row : inst.weights)
            target += static_cast<long>(row[i - 1] + static_cast<long long>(n) - static_cast<long long>(i));
        if (inst.valuations[i - 1] != target) return false;
    }
    return true;
}

}  // namespace hgm
