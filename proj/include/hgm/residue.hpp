#pragma once

#include <compare>
#include <stdexcept>

#include "hgm/integers.hpp"

namespace hgm {

// An element of Z/NZ with its modulus attached. Value is always reduced.
class Residue {
  public:
    Residue(u64 value, u64 modulus) : mod_(modulus) {
        if (modulus == 0) throw std::invalid_argument("Residue: zero modulus");
        val_ = value % modulus;
    }
    static Residue from_signed(std::int64_t value, u64 modulus) {
        if (modulus == 0) throw std::invalid_argument("Residue: zero modulus");
        std::int64_t m = static_cast<std::int64_t>(modulus);
        std::int64_t v = value % m;
        if (v < 0) v += m;
        return Residue(static_cast<u64>(v), modulus);
    }

    u64 value() const { return val_; }
    u64 modulus() const { return mod_; }

    Residue operator+(const Residue& o) const { return Residue((val_ + o.check(mod_)) % mod_, mod_); }
    Residue operator-(const Residue& o) const { return Residue((val_ + mod_ - o.check(mod_)) % mod_, mod_); }
    Residue operator*(const Residue& o) const { return Residue(mulmod(val_, o.check(mod_), mod_), mod_); }
    Residue operator-() const { return Residue(val_ == 0 ? 0 : mod_ - val_, mod_); }
    bool operator==(const Residue& o) const { return mod_ == o.mod_ && val_ == o.val_; }
    auto operator<=>(const Residue& o) const = default;

    bool is_unit() const { return std::gcd(val_, mod_) == 1; }

    Residue pow(u64 e) const { return Residue(powmod(val_, e, mod_), mod_); }
    Residue inverse() const { return Residue(invmod(val_, mod_), mod_); }

    // Representative in {1, ..., N}: the class of 0 is represented by N.
    u64 rep1N() const { return val_ == 0 ? mod_ : val_; }

  private:
    u64 check(u64 m) const {
        if (m != mod_) throw std::invalid_argument("Residue: modulus mismatch");
        return val_;
    }
    u64 val_;
    u64 mod_;
};

// Least r >= 1 with x^r = 1; requires x to be a unit.
inline u64 residue_order(const Residue& x) {
    if (!x.is_unit()) throw std::invalid_argument("not invertible");
    return mult_order(x.value(), x.modulus());
}

}  // namespace hgm
