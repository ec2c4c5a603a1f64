#include <catch_amalgamated.hpp>

#include <random>

#include "hgm/monodromy.hpp"

using namespace hgm;

namespace {

// valid (n, N) combinations on the standard grid
const std::vector<std::pair<unsigned, u64>> kGrid = {
    {2, 5}, {2, 7}, {2, 11}, {2, 13}, {3, 7}, {3, 11}, {3, 13}, {4, 13}, {5, 11}, {5, 13}};

std::vector<FiniteField> fields_with_mu_N(u64 N, u64 max_order) {
    std::vector<FiniteField> out;
    for (u64 p = 2; p < max_order; ++p) {
        if (!is_prime_u64(p) || N % p == 0) continue;
        u64 d = mult_order(p % N, N);
        for (u64 k = d;; k += d) {
            u64 q = 1;
            bool over = false;
            for (u64 i = 0; i < k; ++i) {
                if (q > max_order / p) { over = true; break; }
                q *= p;
            }
            if (over || q >= max_order) break;
            out.emplace_back(p, static_cast<unsigned>(k));
        }
    }
    return out;
}

Matrix random_invertible(const FiniteField& F, unsigned n, std::mt19937_64& rng) {
    while (true) {
        Matrix M(&F, n, n);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) M.at(i, j) = rng() % F.order();
        if (M.det() != 0) return M;
    }
}

}  // namespace

TEST_CASE("worked 2x2 example over F_11", "[monodromy]") {
    FiniteField F11(11, 1);
    auto b = derive_b_set(build_exponents(2, 5));
    REQUIRE(b.members == std::vector<u64>{2, 3});
    auto t = build_companion_pair(2, 5, F11, b, FiniteField::elt(3));
    // g1 = B A^{-1} = [[1,0],[-1,1]]
    REQUIRE(t.g1.at(0, 0) == 1);
    REQUIRE(t.g1.at(0, 1) == 0);
    REQUIRE(t.g1.at(1, 0) == 10);
    REQUIRE(t.g1.at(1, 1) == 1);
    // B-polynomial X^2 - 3X + 1: zeta^-2 + zeta^-3 = 5 + 9 = 3, product 1
    FPoly bp = charpoly(t.g0.inverse());
    REQUIRE(bp.coeff(0) == 1);
    REQUIRE(bp.coeff(1) == 8);
    REQUIRE(verify_local_data(t).all());
    REQUIRE_THROWS(build_companion_pair(2, 5, F11, b, FiniteField::elt(2)));  // order 10, not 5
}

TEST_CASE("local data across the grid", "[monodromy][grid]") {
    for (auto [n, N] : kGrid) {
        auto b = derive_b_set(build_exponents(n, N));
        for (const auto& F : fields_with_mu_N(N, 2000)) {
            auto t = build_companion_pair(n, N, F, b);
            REQUIRE(t.g0 * t.g1 * t.ginf == Matrix::identity(&F, n));
            auto rep = verify_local_data(t);
            INFO(F.describe() << " n=" << n << " N=" << N);
            REQUIRE(rep.all());
        }
    }
}

TEST_CASE("transvection negative control", "[monodromy]") {
    FiniteField F11(11, 1);
    auto b = derive_b_set(build_exponents(2, 5));
    auto t = build_companion_pair(2, 5, F11, b);
    t.g1 = Matrix::identity(&F11, 2);
    auto rep = verify_local_data(t);
    REQUIRE_FALSE(rep.transvection);
    REQUIRE(rep.failures() == std::vector<std::string>{"transvection(g1)"});
}

TEST_CASE("absolute irreducibility", "[monodromy]") {
    FiniteField F11(11, 1);
    auto b = derive_b_set(build_exponents(2, 5));
    auto t = build_companion_pair(2, 5, F11, b);
    REQUIRE(absolutely_irreducible(t));

    // commuting diagonal pair: reducible
    Matrix d1(&F11, 2, 2), d2(&F11, 2, 2);
    d1.at(0, 0) = 2; d1.at(1, 1) = 6;  // det 1
    d2.at(0, 0) = 3; d2.at(1, 1) = 4;  // det 1
    MonodromyTriple diag{&F11, 2, 5, t.zeta, b, d1, d2, (d1 * d2).inverse()};
    REQUIRE_FALSE(absolutely_irreducible(diag));

    // common eigenvector: upper triangular pair
    Matrix u1(&F11, 2, 2), u2(&F11, 2, 2);
    u1.at(0, 0) = 2; u1.at(0, 1) = 1; u1.at(1, 1) = 6;
    u2.at(0, 0) = 3; u2.at(0, 1) = 5; u2.at(1, 1) = 4;
    MonodromyTriple tri{&F11, 2, 5, t.zeta, b, u1, u2, (u1 * u2).inverse()};
    REQUIRE_FALSE(absolutely_irreducible(tri));
}

TEST_CASE("invariant bilinear forms", "[monodromy]") {
    // n = 2 always has the symplectic form
    FiniteField F11(11, 1);
    auto b25 = derive_b_set(build_exponents(2, 5));
    auto t25 = build_companion_pair(2, 5, F11, b25);
    auto r2 = invariant_bilinear_form(t25);
    REQUIRE(r2.found);
    REQUIRE(r2.alternating);

    // n=3, N=7, b={1,2,4} over F_8: not minus-stable, no form
    FiniteField F8(2, 3);
    EigenvalueSet b124{7, {1, 2, 4}};
    auto t37 = build_companion_pair(3, 7, F8, b124);
    REQUIRE_FALSE(invariant_bilinear_form(t37).found);

    // n=4, N=7, minus-stable b={1,6,2,5}: alternating form exists
    EigenvalueSet b1625{7, {1, 2, 5, 6}};
    auto t47 = build_companion_pair(4, 7, F8, b1625);
    auto r4 = invariant_bilinear_form(t47);
    REQUIRE(r4.found);
    REQUIRE(r4.alternating);
    // certificate re-verifies against both generators
    for (const Matrix* g : {&t47.g0, &t47.g1})
        REQUIRE(g->transpose() * *r4.form * *g == *r4.form);
}

TEST_CASE("sesquilinear forms", "[monodromy]") {
    FiniteField F8(2, 3);
    EigenvalueSet b124{7, {1, 2, 4}};
    auto t37 = build_companion_pair(3, 7, F8, b124);
    auto r = invariant_sesquilinear_form(t37);
    REQUIRE_FALSE(r.found);
    REQUIRE(r.note == "no-quadratic-subfield");

    // hand-built pair inside SU(2, F_4): diag(x, x^2) with sigma(x) = x^2
    // preserves the identity form since sigma(g)^T g = diag(x^3, x^3) = 1
    FiniteField F4(2, 2);
    FiniteField::elt x = F4.generator();
    Matrix d(&F4, 2, 2), s(&F4, 2, 2);
    d.at(0, 0) = x; d.at(1, 1) = F4.mul(x, x);
    s.at(0, 1) = 1; s.at(1, 0) = 1;  // the swap is unitary and det -1 = 1 in char 2
    MonodromyTriple su{&F4, 2, 3, F4.root_of_unity(3), EigenvalueSet{3, {1, 2}},
                       d, s, (d * s).inverse()};
    auto ru = invariant_sesquilinear_form(su);
    REQUIRE(ru.found);
    const Matrix& M = *ru.form;
    for (const Matrix* g : {&su.g0, &su.g1})
        REQUIRE(g->frobenius(1).transpose() * M * *g == M);
}

TEST_CASE("trace field", "[monodromy]") {
    FiniteField F11(11, 1);
    auto b25 = derive_b_set(build_exponents(2, 5));
    auto t25 = build_companion_pair(2, 5, F11, b25);
    REQUIRE(trace_field(t25) == 1);

    // Frobenius-stable b-set {1,2,4} mod 7 puts every trace in F_2
    FiniteField F8(2, 3);
    auto t37 = build_companion_pair(3, 7, F8, EigenvalueSet{7, {1, 2, 4}});
    REQUIRE(trace_field(t37) == 1);
}

TEST_CASE("BFS group orders", "[monodromy]") {
    FiniteField F11(11, 1);
    auto t25 = build_companion_pair(2, 5, F11, derive_b_set(build_exponents(2, 5)));
    auto r = bfs_group_order(t25, 10000);
    REQUIRE(r.complete);
    REQUIRE(r.order == 1320);
    REQUIRE(sl_order(2, 11) == 1320);

    FiniteField F7(7, 1);
    auto t23 = build_companion_pair(2, 3, F7, derive_b_set(build_exponents(2, 3)));
    auto r7 = bfs_group_order(t23, 10000);
    REQUIRE(r7.complete);
    REQUIRE(r7.order == 336);

    // cap exceeded is reported, not silently wrong
    auto capped = bfs_group_order(t25, 100);
    REQUIRE_FALSE(capped.complete);

    // identity generators give the trivial group
    Matrix id = Matrix::identity(&F11, 2);
    MonodromyTriple triv{&F11, 2, 5, t25.zeta, t25.b, id, id, id};
    REQUIRE(bfs_group_order(triv, 10).order == 1);
}

TEST_CASE("classification verdicts and conjugation invariance", "[monodromy]") {
    FiniteField F11(11, 1);
    auto t25 = build_companion_pair(2, 5, F11, derive_b_set(build_exponents(2, 5)));
    auto c = classify_image(t25);
    REQUIRE(c.verdict == ImageVerdict::FullSL);
    REQUIRE(c.method == "bfs-order");
    REQUIRE(c.order);
    REQUIRE(*c.order == 1320);

    FiniteField F8(2, 3);
    auto t47 = build_companion_pair(4, 7, F8, EigenvalueSet{7, {1, 2, 5, 6}});
    REQUIRE(classify_image(t47).verdict == ImageVerdict::Symplectic);

    // the Frobenius-stable (3,7) case lands in a proper subfield
    auto t37 = build_companion_pair(3, 7, F8, EigenvalueSet{7, {1, 2, 4}});
    auto c37 = classify_image(t37);
    REQUIRE(c37.verdict == ImageVerdict::SubfieldDefined);
    REQUIRE(bfs_group_order(t37, 10000).order == 168);  // = |SL_3(F_2)|

    // conjugating all generators leaves the verdict unchanged
    std::mt19937_64 rng(31);
    for (const MonodromyTriple* t : {&t25, &t47}) {
        Matrix P = random_invertible(*t->field, t->n, rng);
        Matrix Pi = P.inverse();
        MonodromyTriple conj{t->field, t->n, t->N, t->zeta, t->b,
                             Pi * t->g0 * P, Pi * t->g1 * P, Pi * t->ginf * P};
        REQUIRE(classify_image(conj).verdict == classify_image(*t).verdict);
    }
}

TEST_CASE("BFS order matches the closed form exactly when full-SL", "[monodromy][grid]") {
    for (auto [n, N] : kGrid) {
        auto b = derive_b_set(build_exponents(n, N));
        for (const auto& F : fields_with_mu_N(N, 100)) {
            if (sl_order(n, F.order()) > 200000) continue;
            auto t = build_companion_pair(n, N, F, b);
            auto c = classify_image(t, 300000);
            auto bfs = bfs_group_order(t, 300000);
            REQUIRE(bfs.complete);
            INFO(F.describe() << " n=" << n << " N=" << N << " verdict " << verdict_name(c.verdict));
            REQUIRE((c.verdict == ImageVerdict::FullSL) ==
                    (mpz_class(static_cast<unsigned long>(bfs.order)) == sl_order(n, F.order())));
        }
    }
}

TEST_CASE("goursat product criterion", "[monodromy]") {
    FiniteField F7(7, 1), F11(11, 1), F13(13, 1), F31(31, 1), F49(7, 2);
    REQUIRE(product_goursat_check(2, F11, ImageVerdict::FullSL, F31, ImageVerdict::FullSL));
    REQUIRE(product_goursat_check(2, F7, ImageVerdict::FullSL, F13, ImageVerdict::FullSL));
    REQUIRE_THROWS(product_goursat_check(2, F7, ImageVerdict::FullSL, F49, ImageVerdict::FullSL));
    REQUIRE_THROWS(product_goursat_check(2, F7, ImageVerdict::Symplectic, F13, ImageVerdict::FullSL));
    FiniteField F3(3, 1), F5(5, 1);
    REQUIRE_THROWS(product_goursat_check(2, F3, ImageVerdict::FullSL, F5, ImageVerdict::FullSL));

    // brute-force oracle: simultaneous BFS over F_7 x F_13 reaches the full product
    auto b23 = derive_b_set(build_exponents(2, 3));
    auto ta = build_companion_pair(2, 3, F7, b23);
    auto tb = build_companion_pair(2, 3, F13, b23);
    auto pair = bfs_pair_order(ta, tb, 1000000);
    REQUIRE(pair.complete);
    REQUIRE(pair.order == 733824);
}
