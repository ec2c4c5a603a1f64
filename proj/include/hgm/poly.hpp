#pragma once

#include <vector>

#include "hgm/finite_field.hpp"

namespace hgm {

// Univariate polynomial over a finite field, coefficients low-to-high.
// The zero polynomial has an empty coefficient vector.
class FPoly {
  public:
    explicit FPoly(const FiniteField* f) : f_(f) {}
    FPoly(const FiniteField* f, std::vector<u64> coeffs) : f_(f), c_(std::move(coeffs)) { normalize(); }

    static FPoly zero(const FiniteField* f) { return FPoly(f); }
    static FPoly constant(const FiniteField* f, u64 a) { return FPoly(f, {a}); }
    static FPoly x_minus(const FiniteField* f, u64 a) { return FPoly(f, {f->neg(a), 1}); }

    const FiniteField* field() const { return f_; }
    const std::vector<u64>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    u64 coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }

    bool operator==(const FPoly& o) const { return c_ == o.c_; }

    FPoly operator+(const FPoly& o) const {
        std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = f_->add(coeff(i), o.coeff(i));
        return FPoly(f_, std::move(r));
    }
    FPoly operator-(const FPoly& o) const {
        std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = f_->sub(coeff(i), o.coeff(i));
        return FPoly(f_, std::move(r));
    }
    FPoly operator*(const FPoly& o) const {
        if (is_zero() || o.is_zero()) return zero(f_);
        std::vector<u64> r(c_.size() + o.c_.size() - 1, 0);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = f_->add(r[i + j], f_->mul(c_[i], o.c_[j]));
        }
        return FPoly(f_, std::move(r));
    }
    FPoly scaled(u64 a) const {
        std::vector<u64> r(c_);
        for (auto& x : r) x = f_->mul(x, a);
        return FPoly(f_, std::move(r));
    }

    // quotient and remainder by a nonzero divisor
    std::pair<FPoly, FPoly> divmod(const FPoly& d) const {
        if (d.is_zero()) throw std::invalid_argument("polynomial division by zero");
        std::vector<u64> rem(c_);
        std::vector<u64> quo(c_.size() > d.c_.size() - 1 ? c_.size() - d.c_.size() + 1 : 0, 0);
        u64 lead_inv = f_->inv(d.c_.back());
        for (size_t i = rem.size(); i-- > d.c_.size() - 1;) {
            if (i + 1 < d.c_.size()) break;
            u64 c = f_->mul(rem[i], lead_inv);
            if (c == 0) continue;
            size_t shift = i - (d.c_.size() - 1);
            quo[shift] = c;
            for (size_t j = 0; j < d.c_.size(); ++j)
                rem[shift + j] = f_->sub(rem[shift + j], f_->mul(c, d.c_[j]));
        }
        return {FPoly(f_, std::move(quo)), FPoly(f_, std::move(rem))};
    }
    FPoly operator%(const FPoly& d) const { return divmod(d).second; }
    FPoly operator/(const FPoly& d) const { return divmod(d).first; }

    FPoly monic() const {
        if (is_zero()) return *this;
        return scaled(f_->inv(c_.back()));
    }

    u64 eval(u64 x) const {
        u64 r = 0;
        for (size_t i = c_.size(); i-- > 0;) r = f_->add(f_->mul(r, x), c_[i]);
        return r;
    }

    // (X - 1)^n
    static FPoly x_minus_one_pow(const FiniteField* f, unsigned n) {
        FPoly r = constant(f, 1);
        FPoly xm1 = x_minus(f, 1);
        for (unsigned i = 0; i < n; ++i) r = r * xm1;
        return r;
    }

  private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    const FiniteField* f_;
    std::vector<u64> c_;
};

inline FPoly poly_gcd(FPoly a, FPoly b) {
    while (!b.is_zero()) {
        FPoly r = a % b;
        a = b;
        b = r;
    }
    return a.monic();
}

inline FPoly poly_lcm(const FPoly& a, const FPoly& b) {
    if (a.is_zero() || b.is_zero()) return FPoly::zero(a.field());
    FPoly g = poly_gcd(a, b);
    return ((a * b) / g).monic();
}

}  // namespace hgm
