#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgm/integers.hpp"

namespace hgm {

// F_{p^k} with a deterministic modulus: the lexicographically smallest monic
// irreducible degree-k polynomial over F_p (coefficients compared
// low-to-high, constant term most significant in the comparison).
//
// Elements are encoded as integers in [0, p^k): the element with reduced
// representative c_0 + c_1 x + ... + c_{k-1} x^{k-1} has code
// c_0 + c_1 p + ... + c_{k-1} p^{k-1}. The canonical total order on elements
// is the order of these codes. Multiplication uses log/exp tables for small
// fields and schoolbook polynomial arithmetic otherwise.
class FiniteField {
  public:
    using elt = u64;

    FiniteField(u64 p, unsigned k) : p_(p), k_(k) {
        if (k == 0) throw std::invalid_argument("field degree must be positive");
        if (!is_prime_u64(p)) throw std::invalid_argument("characteristic must be prime");
        q_ = 1;
        for (unsigned i = 0; i < k; ++i) {
            if (q_ > (u64(1) << 62) / p) throw std::invalid_argument("field too large");
            q_ *= p;
        }
        modulus_ = smallest_irreducible();
        if (q_ <= table_limit_) build_tables();
    }

    u64 characteristic() const { return p_; }
    unsigned degree() const { return k_; }
    u64 order() const { return q_; }
    const std::vector<u64>& modulus() const { return modulus_; }

    elt zero() const { return 0; }
    elt one() const { return 1; }
    elt from_int(std::int64_t n) const {
        std::int64_t r = n % static_cast<std::int64_t>(p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        return static_cast<elt>(r);
    }

    std::vector<u64> digits(elt a) const {
        std::vector<u64> d(k_);
        for (unsigned i = 0; i < k_; ++i) {
            d[i] = a % p_;
            a /= p_;
        }
        return d;
    }
    elt from_digits(const std::vector<u64>& d) const {
        elt a = 0;
        for (unsigned i = k_; i-- > 0;) a = a * p_ + (i < d.size() ? d[i] % p_ : 0);
        return a;
    }

    elt add(elt a, elt b) const {
        if (k_ == 1) return (a + b) % p_;
        elt r = 0, mul = 1;
        for (unsigned i = 0; i < k_; ++i) {
            r += (a % p_ + b % p_) % p_ * mul;
            a /= p_;
            b /= p_;
            mul *= p_;
        }
        return r;
    }
    elt neg(elt a) const {
        if (k_ == 1) return a == 0 ? 0 : p_ - a;
        elt r = 0, mul = 1;
        for (unsigned i = 0; i < k_; ++i) {
            u64 d = a % p_;
            r += (d == 0 ? 0 : p_ - d) * mul;
            a /= p_;
            mul *= p_;
        }
        return r;
    }
    elt sub(elt a, elt b) const { return add(a, neg(b)); }

    elt mul(elt a, elt b) const {
        if (a == 0 || b == 0) return 0;
        if (!exptab_.empty()) {
            u64 s = logtab_[a] + logtab_[b];
            if (s >= q_ - 1) s -= q_ - 1;
            return exptab_[s];
        }
        return mul_generic(a, b);
    }

    elt pow(elt a, u64 e) const {
        elt r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    elt pow(elt a, const mpz_class& e) const {
        if (e < 0) return pow(inv(a), mpz_class(-e));
        elt r = 1;
        mpz_class m = e;
        size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
        for (size_t i = bits; i-- > 0;) {
            r = mul(r, r);
            if (mpz_tstbit(m.get_mpz_t(), i)) r = mul(r, a);
        }
        return r;
    }

    elt inv(elt a) const {
        if (a == 0) throw std::invalid_argument("division by zero in field");
        return pow(a, q_ - 2);
    }

    // x -> x^(p^j), the j-th power of the Frobenius.
    elt frobenius(elt a, unsigned j = 1) const {
        for (unsigned i = 0; i < j; ++i) a = pow(a, p_);
        return a;
    }

    // Absolute trace down to the prime field, returned as an integer < p.
    u64 trace(elt a) const {
        elt s = 0, x = a;
        for (unsigned i = 0; i < k_; ++i) {
            s = add(s, x);
            x = pow(x, p_);
        }
        return s;  // lies in the prime subfield, code < p
    }

    u64 element_order(elt a) const {
        if (a == 0) throw std::invalid_argument("zero has no multiplicative order");
        u64 order = q_ - 1;
        for (auto& [f, e] : factorize(q_ - 1)) {
            for (int i = 0; i < e; ++i) {
                if (pow(a, order / f) == 1)
                    order /= f;
                else
                    break;
            }
        }
        return order;
    }

    // Smallest element (in canonical order) generating the multiplicative group.
    elt generator() const {
        if (generator_) return generator_;
        auto fac = factorize(q_ - 1);
        for (elt g = 2; g < q_; ++g) {
            bool ok = true;
            for (auto& [f, e] : fac) {
                if (pow(g, (q_ - 1) / f) == 1) { ok = false; break; }
            }
            if (ok) { generator_ = g; return g; }
        }
        throw std::logic_error("no generator found");  // unreachable
    }

    // Fixed primitive N-th root of unity: generator^((q-1)/N).
    elt root_of_unity(u64 N) const {
        if (N == 0 || (q_ - 1) % N != 0) throw std::invalid_argument("no N-th roots");
        return pow(generator(), (q_ - 1) / N);
    }

    bool operator==(const FiniteField& o) const { return p_ == o.p_ && k_ == o.k_; }

    std::string describe() const {
        return "F_" + std::to_string(p_) + (k_ > 1 ? "^" + std::to_string(k_) : "");
    }

  private:
    static constexpr u64 table_limit_ = 1 << 16;

    elt mul_generic(elt a, elt b) const {
        std::vector<u64> da = digits(a), db = digits(b);
        std::vector<u64> prod(2 * k_ - 1, 0);
        for (unsigned i = 0; i < k_; ++i) {
            if (da[i] == 0) continue;
            for (unsigned j = 0; j < k_; ++j)
                prod[i + j] = (prod[i + j] + mulmod(da[i], db[j], p_)) % p_;
        }
        // reduce modulo the monic modulus polynomial
        for (unsigned i = 2 * k_ - 2; i >= k_; --i) {
            u64 c = prod[i];
            if (c == 0) continue;
            prod[i] = 0;
            for (unsigned j = 0; j < k_; ++j) {
                u64 t = mulmod(c, modulus_[j], p_);
                prod[i - k_ + j] = (prod[i - k_ + j] + p_ - t) % p_;
            }
            if (i == k_) break;
        }
        prod.resize(k_);
        return from_digits(prod);
    }

    // Polynomial helpers over F_p used only for modulus construction.
    using ppoly = std::vector<u64>;  // low-to-high, not necessarily normalized

    ppoly pmulmod(const ppoly& a, const ppoly& b, const ppoly& f) const {
        ppoly prod(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < b.size(); ++j)
                prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p_)) % p_;
        }
        size_t k = f.size() - 1;  // f monic of degree k
        for (size_t i = prod.size(); i-- > k;) {
            u64 c = prod[i];
            if (c == 0) continue;
            prod[i] = 0;
            for (size_t j = 0; j < k; ++j)
                prod[i - k + j] = (prod[i - k + j] + p_ - mulmod(c, f[j], p_)) % p_;
        }
        prod.resize(k);
        return prod;
    }

    ppoly xpow_mod(u64 e, const ppoly& f) const {
        ppoly r(f.size() - 1, 0), x(f.size() - 1, 0);
        r[0] = 1;
        if (f.size() == 2) {
            // degree-1 modulus: x reduces to a constant
            x[0] = (p_ - f[0]) % p_;
        } else {
            x[1] = 1;
        }
        u64 bit = u64(1) << 63;
        while (bit && !(e & bit)) bit >>= 1;
        while (bit) {
            r = pmulmod(r, r, f);
            if (e & bit) r = pmulmod(r, x, f);
            bit >>= 1;
        }
        return r;
    }

    static bool is_zero(const ppoly& a) {
        for (u64 c : a)
            if (c) return false;
        return true;
    }

    ppoly pgcd(ppoly a, ppoly b) const {
        auto deg = [](const ppoly& v) -> int {
            for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
                if (v[i]) return i;
            return -1;
        };
        while (!is_zero(b)) {
            int db = deg(b);
            u64 lead_inv = invmod(b[db], p_);
            int da = deg(a);
            while (da >= db) {
                u64 c = mulmod(a[da], lead_inv, p_);
                if (c != 0)
                    for (int j = 0; j <= db; ++j)
                        a[da - db + j] = (a[da - db + j] + p_ - mulmod(c, b[j], p_)) % p_;
                da = deg(a);
            }
            std::swap(a, b);
        }
        return a;
    }

    bool irreducible(const ppoly& f) const {
        unsigned k = static_cast<unsigned>(f.size()) - 1;
        // x^(p^k) == x mod f
        ppoly xq = xpow_mod(ipow(p_, k), f);
        ppoly x(f.size() - 1, 0);
        if (k == 1) {
            x[0] = (p_ - f[0]) % p_;
        } else {
            x[1] = 1;
        }
        for (size_t i = 0; i < xq.size(); ++i)
            if (xq[i] != x[i]) return false;
        for (auto& [t, e] : factorize(k)) {
            ppoly xd = xpow_mod(ipow(p_, k / static_cast<unsigned>(t)), f);
            ppoly diff = xd;
            for (size_t i = 0; i < x.size(); ++i) diff[i] = (diff[i] + p_ - x[i]) % p_;
            ppoly g = pgcd(f, diff);
            int dg = -1;
            for (int i = static_cast<int>(g.size()) - 1; i >= 0; --i)
                if (g[i]) { dg = i; break; }
            if (dg != 0) return false;
        }
        return true;
    }

    std::vector<u64> smallest_irreducible() const {
        if (k_ == 1) return {0, 1};  // modulus X for prime fields
        // enumerate (c_0, ..., c_{k-1}) in lex order, c_0 most significant
        std::vector<u64> c(k_, 0);
        while (true) {
            ppoly f(k_ + 1, 0);
            for (unsigned i = 0; i < k_; ++i) f[i] = c[i];
            f[k_] = 1;
            if (f[0] != 0 && irreducible(f)) {
                f.resize(k_ + 1);
                return f;
            }
            int i = static_cast<int>(k_) - 1;
            while (i >= 0 && c[i] == p_ - 1) c[i--] = 0;
            if (i < 0) throw std::logic_error("no irreducible polynomial found");
            ++c[i];
        }
    }

    void build_tables() {
        elt g = generator();
        exptab_.resize(q_ - 1);
        logtab_.assign(q_, 0);
        elt x = 1;
        for (u64 i = 0; i < q_ - 1; ++i) {
            exptab_[i] = x;
            logtab_[x] = i;
            x = mul_generic(x, g);
        }
    }

    u64 p_;
    unsigned k_;
    u64 q_;
    std::vector<u64> modulus_;
    mutable elt generator_ = 0;
    std::vector<u64> exptab_;
    std::vector<u64> logtab_;
};

// Deterministic field construction.
inline FiniteField ff_build(u64 p, unsigned k) { return FiniteField(p, k); }

inline FiniteField::elt ff_root_of_unity(const FiniteField& f, u64 N) { return f.root_of_unity(N); }

}  // namespace hgm
