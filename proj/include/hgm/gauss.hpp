#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hgm/cyclotomic.hpp"
#include "hgm/exponents.hpp"
#include "hgm/poly.hpp"

namespace hgm {

// Everything needed to evaluate Gauss sums over F_q inside Z[zeta_{Np}]:
// the field, its canonical generator, the multiplicative identification
// t(g^{(q-1)/N}) = zeta_N, and the additive character psi(x) = zeta_p^{c Tr x}.
class GaussSumContext {
  public:
    GaussSumContext(const FiniteField& field, u64 N, u64 psi_exponent = 1)
        : f_(&field), N_(N), c_(psi_exponent % field.characteristic()) {
        if (field.characteristic() == 2) throw std::invalid_argument("p must be odd");
        if ((field.order() - 1) % N != 0) throw std::invalid_argument("N must divide q-1");
        if (N % field.characteristic() == 0) throw std::invalid_argument("p must not divide N");
        if (c_ == 0) throw std::invalid_argument("additive character must be nontrivial");
        gen_ = field.generator();
        m_ = N * field.characteristic();
    }

    const FiniteField& field() const { return *f_; }
    u64 N() const { return N_; }
    u64 p() const { return f_->characteristic(); }
    u64 q() const { return f_->order(); }
    u64 conductor() const { return m_; }
    u64 psi_exponent() const { return c_; }

    // g(a) = -sum over x in F_q^x of t(x^{(1-q)/N})^a psi(x). For x = g^e the
    // term is zeta_N^{-ea} zeta_p^{c Tr(g^e)}, assembled as a power of
    // zeta_{Np} via zeta_N = zeta_{Np}^p, zeta_p = zeta_{Np}^N.
    CyclotomicInt gauss_sum(u64 a) const {
        a %= N_;
        u64 p = f_->characteristic();
        std::vector<mpz_class> raw(m_, 0);
        FiniteField::elt x = 1;
        for (u64 e = 0; e < q() - 1; ++e) {
            u64 mult = a == 0 ? 0 : (N_ - mulmod(e % N_, a, N_) % N_) % N_;
            u64 add = mulmod(c_, f_->trace(x), p);
            raw[(p * mult + N_ * add) % m_] -= 1;
            x = f_->mul(x, gen_);
        }
        CyclotomicInt acc(m_);
        for (u64 k = 0; k < m_; ++k)
            if (raw[k] != 0) acc = acc + CyclotomicInt::zeta_pow(m_, k) * raw[k];
        return acc;
    }

  private:
    const FiniteField* f_;
    u64 N_, m_, c_;
    FiniteField::elt gen_;
};

// CRT-composed automorphism exponent: zeta_N -> zeta_N^{aN}, zeta_p -> zeta_p^{ap}.
inline u64 mixed_galois_exponent(u64 N, u64 p, u64 aN, u64 ap) {
    return crt(aN % N, N, ap % p, p);
}

struct SignedPowerCheck {
    bool pass = false;
    int sign = 0;  // the epsilon in product = sign * q^e, when pass
};

// g(a) g(-a) = +-q for a != 0; the sign is (-1)^{a(1-q)/N}.
inline SignedPowerCheck pairing_identity(const GaussSumContext& ctx, u64 a) {
    SignedPowerCheck r;
    CyclotomicInt prod = ctx.gauss_sum(a) * ctx.gauss_sum((ctx.N() - a % ctx.N()) % ctx.N());
    mpz_class q(static_cast<unsigned long>(ctx.q()));
    if (prod == CyclotomicInt::from_int(ctx.conductor(), q)) {
        r.pass = true;
        r.sign = 1;
    } else if (prod == CyclotomicInt::from_int(ctx.conductor(), -q)) {
        r.pass = true;
        r.sign = -1;
    }
    return r;
}

// prod over s != 0 of g(s) = epsilon * q^{(N-1)/2}; the squared form holds
// regardless of epsilon.
inline SignedPowerCheck full_product_identity(const GaussSumContext& ctx) {
    SignedPowerCheck r;
    CyclotomicInt prod = CyclotomicInt::from_int(ctx.conductor(), 1);
    for (u64 s = 1; s < ctx.N(); ++s) prod = prod * ctx.gauss_sum(s);
    mpz_class target = mpz_pow(mpz_class(static_cast<unsigned long>(ctx.q())),
                               static_cast<unsigned long>((ctx.N() - 1) / 2));
    if (prod == CyclotomicInt::from_int(ctx.conductor(), target)) {
        r.pass = true;
        r.sign = 1;
    } else if (prod == CyclotomicInt::from_int(ctx.conductor(), -target)) {
        r.pass = true;
        r.sign = -1;
    }
    return r;
}

struct ProductIdentityVerdict {
    bool pass = false;
    std::string detail;
};

// Cross-multiplied integral form of the product identity:
// (prod_j prod_i g(a_i + b_j)) * q^{n(n-1)/2} = (prod_j g(b_j))^n * q^{n(N-1)/2}.
inline ProductIdentityVerdict product_ratio_check(const GaussSumContext& ctx, const CharacterExponents& exp,
                                         const EigenvalueSet& b) {
    if (exp.N != ctx.N() || b.N != ctx.N()) throw std::invalid_argument("N mismatch");
    u64 m = ctx.conductor();
    unsigned n = exp.n;
    std::vector<CyclotomicInt> g;
    for (u64 s = 0; s < ctx.N(); ++s) g.push_back(ctx.gauss_sum(s));

    CyclotomicInt lhs = CyclotomicInt::from_int(m, 1);
    for (u64 bj : b.members)
        for (u64 ai : exp.entries) lhs = lhs * g[(ai + bj) % ctx.N()];
    lhs = lhs * mpz_pow(mpz_class(static_cast<unsigned long>(ctx.q())),
                        static_cast<unsigned long>(n) * (n - 1) / 2);

    CyclotomicInt rhs = CyclotomicInt::from_int(m, 1);
    for (u64 bj : b.members) rhs = rhs * g[bj % ctx.N()];
    rhs = rhs.pow(n);
    rhs = rhs * mpz_pow(mpz_class(static_cast<unsigned long>(ctx.q())),
                        static_cast<unsigned long>(n) * ((ctx.N() - 1) / 2));

    ProductIdentityVerdict v;
    v.pass = lhs == rhs;
    if (!v.pass) v.detail = "integral-form sides differ";
    return v;
}

struct GaloisVerdict {
    bool pass = false;
    std::string failed_at;
};

// The product prod_j g(b_j) is fixed by every automorphism moving zeta_p and
// fixing zeta_N; for n = 2 it is also fixed by zeta_N -> zeta_N^{-1}.
inline GaloisVerdict galois_invariance(const GaussSumContext& ctx, const EigenvalueSet& b) {
    GaloisVerdict v;
    u64 sum = 0;
    for (u64 bj : b.members) sum += bj;
    if (sum % ctx.N() != 0) throw std::invalid_argument("b-set must sum to 0 mod N");
    CyclotomicInt prod = CyclotomicInt::from_int(ctx.conductor(), 1);
    for (u64 bj : b.members) prod = prod * ctx.gauss_sum(bj % ctx.N());
    for (u64 a = 1; a < ctx.p(); ++a) {
        u64 e = mixed_galois_exponent(ctx.N(), ctx.p(), 1, a);
        if (prod.galois(e) != prod) {
            v.failed_at = "zeta_p -> zeta_p^" + std::to_string(a);
            return v;
        }
    }
    if (b.members.size() == 2) {
        u64 e = mixed_galois_exponent(ctx.N(), ctx.p(), ctx.N() - 1, 1);
        if (prod.galois(e) != prod) {
            v.failed_at = "zeta_N -> zeta_N^-1";
            return v;
        }
    }
    v.pass = true;
    return v;
}

struct FrobeniusScalarReport {
    u64 q = 0, N = 0, l = 0;
    unsigned n = 0;
    u64 reduction_degree = 0;   // r = ord_N(l)
    u64 membership_degree = 0;  // L = lcm(2, r)
    std::vector<CyclotomicInt> eigenvalue_scalars;  // q^{-1} prod_j g(a_j + i), conductor Np
    std::optional<CyclotomicInt> determinant;       // q^{-n} prod prod, conductor Np
    bool consistent = false;   // determinant equals the product of the scalars
    bool member = false;       // n-th power membership after reduction mod l
};

// The determinant Frobenius scalar q^{-n} prod_j prod_i g(a_i + b_j),
// computed exactly, descended to Z[zeta_N], reduced at a prime over l, and
// tested for membership in the n-th powers of F_{l^L}^x.
inline FrobeniusScalarReport frobenius_det_membership(const GaussSumContext& ctx,
                                                      const CharacterExponents& exp,
                                                      const EigenvalueSet& b, u64 l) {
    if (!is_prime_u64(l)) throw std::invalid_argument("l must be prime");
    if (ctx.N() % l == 0 || l == ctx.p()) throw std::invalid_argument("l must not divide Np");
    FrobeniusScalarReport rep;
    rep.q = ctx.q();
    rep.N = ctx.N();
    rep.l = l;
    rep.n = exp.n;
    u64 m = ctx.conductor();
    mpz_class q(static_cast<unsigned long>(ctx.q()));

    std::vector<CyclotomicInt> g;
    for (u64 s = 0; s < ctx.N(); ++s) g.push_back(ctx.gauss_sum(s));

    CyclotomicInt det = CyclotomicInt::from_int(m, 1);
    CyclotomicInt scalar_prod = CyclotomicInt::from_int(m, 1);
    for (u64 bi : b.members) {
        CyclotomicInt eig = CyclotomicInt::from_int(m, 1);
        for (u64 aj : exp.entries) eig = eig * g[(aj + bi) % ctx.N()];
        det = det * eig;
        if (!eig.divisible_by(q)) throw std::logic_error("integrality violated");
        CyclotomicInt s = eig.div_exact(q);
        scalar_prod = scalar_prod * s;
        rep.eigenvalue_scalars.push_back(std::move(s));
    }
    mpz_class qn = mpz_pow(q, rep.n);
    if (!det.divisible_by(qn)) throw std::logic_error("integrality violated");
    CyclotomicInt det_scalar = det.div_exact(qn);
    rep.consistent = det_scalar == scalar_prod;
    rep.determinant = det_scalar;

    // descend to conductor N (the scalar is psi-independent, hence in Z[zeta_N])
    CyclotomicInt descended = det_scalar.descend(ctx.N());
    rep.reduction_degree = mult_order(l % ctx.N(), ctx.N());
    rep.membership_degree = std::lcm(u64(2), rep.reduction_degree);
    FiniteField target(l, static_cast<unsigned>(rep.reduction_degree));
    FiniteField::elt x = cyclo_reduce_mod_prime(descended, target);
    if (x == 0) throw std::logic_error("scalar reduces to zero");
    mpz_class order = mpz_pow(mpz_class(static_cast<unsigned long>(l)),
                              static_cast<unsigned long>(rep.membership_degree)) - 1;
    mpz_class gcd_ne;
    mpz_class nn(static_cast<unsigned long>(rep.n));
    mpz_gcd(gcd_ne.get_mpz_t(), nn.get_mpz_t(), order.get_mpz_t());
    mpz_class e = order / gcd_ne;
    rep.member = target.pow(x, e) == 1;
    return rep;
}

struct PsiIndependenceVerdict {
    bool pass = false;
    bool raw_sums_differ = false;  // individual g(a) depend on psi; recorded
};

// The per-eigenvalue scalars q^{-1} prod_j g(a_j + i) agree across distinct
// nontrivial additive characters even though individual sums do not.
inline PsiIndependenceVerdict psi_independence(const GaussSumContext& ctx,
                                               const CharacterExponents& exp,
                                               const EigenvalueSet& b) {
    PsiIndependenceVerdict v;
    GaussSumContext alt(ctx.field(), ctx.N(), 2);
    mpz_class q(static_cast<unsigned long>(ctx.q()));
    std::vector<CyclotomicInt> g1, g2;
    for (u64 s = 0; s < ctx.N(); ++s) {
        g1.push_back(ctx.gauss_sum(s));
        g2.push_back(alt.gauss_sum(s));
    }
    v.raw_sums_differ = g1[1 % ctx.N()] != g2[1 % ctx.N()];
    for (u64 bi : b.members) {
        CyclotomicInt e1 = CyclotomicInt::from_int(ctx.conductor(), 1);
        CyclotomicInt e2 = CyclotomicInt::from_int(ctx.conductor(), 1);
        for (u64 aj : exp.entries) {
            e1 = e1 * g1[(aj + bi) % ctx.N()];
            e2 = e2 * g2[(aj + bi) % ctx.N()];
        }
        if (e1.div_exact(q) != e2.div_exact(q)) return v;
    }
    v.pass = true;
    return v;
}

}  // namespace hgm
