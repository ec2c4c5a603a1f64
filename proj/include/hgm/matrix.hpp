#pragma once

#include <string>
#include <vector>

#include "hgm/poly.hpp"

namespace hgm {

// Dense square-friendly matrix over a finite field. Entries are field codes.
class Matrix {
  public:
    Matrix(const FiniteField* f, unsigned rows, unsigned cols)
        : f_(f), rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {}

    static Matrix identity(const FiniteField* f, unsigned n) {
        Matrix m(f, n, n);
        for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    // Companion matrix of a monic polynomial, in the layout with 1s on the
    // subdiagonal and the negated coefficients down the last column
    // (-c_0 at the top ... -c_{n-1} at the bottom reading the polynomial
    // X^n + c_{n-1}X^{n-1} + ... + c_0).
    static Matrix companion(const FPoly& p) {
        if (!p.is_monic()) throw std::invalid_argument("companion: polynomial not monic");
        unsigned n = static_cast<unsigned>(p.degree());
        const FiniteField* f = p.field();
        Matrix m(f, n, n);
        for (unsigned i = 1; i < n; ++i) m.at(i, i - 1) = 1;
        for (unsigned i = 0; i < n; ++i) m.at(i, n - 1) = f->neg(p.coeff(i));
        return m;
    }

    const FiniteField* field() const { return f_; }
    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }
    u64& at(unsigned i, unsigned j) { return a_[size_t(i) * cols_ + j]; }
    u64 at(unsigned i, unsigned j) const { return a_[size_t(i) * cols_ + j]; }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
        Matrix r(f_, rows_, o.cols_);
        for (unsigned i = 0; i < rows_; ++i)
            for (unsigned k = 0; k < cols_; ++k) {
                u64 v = at(i, k);
                if (v == 0) continue;
                for (unsigned j = 0; j < o.cols_; ++j)
                    r.at(i, j) = f_->add(r.at(i, j), f_->mul(v, o.at(k, j)));
            }
        return r;
    }
    Matrix operator+(const Matrix& o) const {
        Matrix r(f_, rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->add(a_[i], o.a_[i]);
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        Matrix r(f_, rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->sub(a_[i], o.a_[i]);
        return r;
    }

    Matrix transpose() const {
        Matrix r(f_, cols_, rows_);
        for (unsigned i = 0; i < rows_; ++i)
            for (unsigned j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    // Entrywise field automorphism x -> x^(p^j).
    Matrix frobenius(unsigned j) const {
        Matrix r(f_, rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->frobenius(a_[i], j);
        return r;
    }

    unsigned rank() const {
        Matrix m(*this);
        unsigned r = 0;
        for (unsigned c = 0; c < cols_ && r < rows_; ++c) {
            unsigned piv = r;
            while (piv < rows_ && m.at(piv, c) == 0) ++piv;
            if (piv == rows_) continue;
            m.swap_rows(piv, r);
            u64 inv = f_->inv(m.at(r, c));
            for (unsigned j = c; j < cols_; ++j) m.at(r, j) = f_->mul(m.at(r, j), inv);
            for (unsigned i = 0; i < rows_; ++i) {
                if (i == r || m.at(i, c) == 0) continue;
                u64 factor = m.at(i, c);
                for (unsigned j = c; j < cols_; ++j)
                    m.at(i, j) = f_->sub(m.at(i, j), f_->mul(factor, m.at(r, j)));
            }
            ++r;
        }
        return r;
    }

    u64 det() const {
        if (rows_ != cols_) throw std::invalid_argument("det: not square");
        Matrix m(*this);
        u64 d = 1;
        for (unsigned c = 0; c < cols_; ++c) {
            unsigned piv = c;
            while (piv < rows_ && m.at(piv, c) == 0) ++piv;
            if (piv == rows_) return 0;
            if (piv != c) {
                m.swap_rows(piv, c);
                d = f_->neg(d);
            }
            d = f_->mul(d, m.at(c, c));
            u64 inv = f_->inv(m.at(c, c));
            for (unsigned i = c + 1; i < rows_; ++i) {
                u64 factor = f_->mul(m.at(i, c), inv);
                if (factor == 0) continue;
                for (unsigned j = c; j < cols_; ++j)
                    m.at(i, j) = f_->sub(m.at(i, j), f_->mul(factor, m.at(c, j)));
            }
        }
        return d;
    }

    Matrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("inverse: not square");
        Matrix m(*this);
        Matrix inv = identity(f_, rows_);
        for (unsigned c = 0; c < cols_; ++c) {
            unsigned piv = c;
            while (piv < rows_ && m.at(piv, c) == 0) ++piv;
            if (piv == rows_) throw std::invalid_argument("matrix not invertible");
            m.swap_rows(piv, c);
            inv.swap_rows(piv, c);
            u64 s = f_->inv(m.at(c, c));
            for (unsigned j = 0; j < cols_; ++j) {
                m.at(c, j) = f_->mul(m.at(c, j), s);
                inv.at(c, j) = f_->mul(inv.at(c, j), s);
            }
            for (unsigned i = 0; i < rows_; ++i) {
                if (i == c || m.at(i, c) == 0) continue;
                u64 factor = m.at(i, c);
                for (unsigned j = 0; j < cols_; ++j) {
                    m.at(i, j) = f_->sub(m.at(i, j), f_->mul(factor, m.at(c, j)));
                    inv.at(i, j) = f_->sub(inv.at(i, j), f_->mul(factor, inv.at(c, j)));
                }
            }
        }
        return inv;
    }

    // Row-major canonical serialization, used as a BFS dedup key.
    std::string serialize() const {
        unsigned width = f_->order() < (u64(1) << 32) ? 4 : 8;
        std::string s;
        s.reserve(a_.size() * width);
        for (u64 v : a_)
            for (unsigned b = 0; b < width; ++b) s.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
        return s;
    }

    void swap_rows(unsigned i, unsigned j) {
        if (i == j) return;
        for (unsigned c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }

  private:
    const FiniteField* f_;
    unsigned rows_, cols_;
    std::vector<u64> a_;
};

// Characteristic polynomial via Hessenberg reduction; exact over any field.
inline FPoly charpoly(const Matrix& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("charpoly: not square");
    const FiniteField* f = M.field();
    unsigned n = M.rows();
    Matrix h(M);
    for (unsigned m = 1; m + 1 < n; ++m) {
        unsigned piv = m;
        while (piv < n && h.at(piv, m - 1) == 0) ++piv;
        if (piv == n) continue;
        if (piv != m) {
            h.swap_rows(piv, m);
            for (unsigned i = 0; i < n; ++i) std::swap(h.at(i, piv), h.at(i, m));
        }
        u64 t_inv = f->inv(h.at(m, m - 1));
        for (unsigned i = m + 1; i < n; ++i) {
            u64 u = f->mul(h.at(i, m - 1), t_inv);
            if (u == 0) continue;
            for (unsigned j = 0; j < n; ++j) h.at(i, j) = f->sub(h.at(i, j), f->mul(u, h.at(m, j)));
            for (unsigned j = 0; j < n; ++j) h.at(j, m) = f->add(h.at(j, m), f->mul(u, h.at(j, i)));
        }
    }
    // p_m = (X - h[m][m]) p_{m-1} - sum_i h[i][m] * (prod of subdiagonals) * p_{i-1}
    std::vector<FPoly> p;
    p.push_back(FPoly::constant(f, 1));
    for (unsigned m = 0; m < n; ++m) {
        FPoly pm = p[m] * FPoly::x_minus(f, h.at(m, m));
        u64 t = 1;
        for (unsigned i = m; i-- > 0;) {
            t = f->mul(t, h.at(i + 1, i));
            u64 c = f->mul(h.at(i, m), t);
            if (c != 0) pm = pm - p[i].scaled(c);
        }
        p.push_back(pm);
    }
    return p[n];
}

// Minimal polynomial: lcm over standard basis vectors of the local minimal
// polynomial found by the first Krylov dependency.
inline FPoly minpoly(const Matrix& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("minpoly: not square");
    const FiniteField* f = M.field();
    unsigned n = M.rows();
    FPoly result = FPoly::constant(f, 1);
    for (unsigned s = 0; s < n; ++s) {
        // Krylov vectors v, Mv, ... with coordinate tracking
        std::vector<std::vector<u64>> basis;      // echelonized vectors
        std::vector<std::vector<u64>> combos;     // expression in terms of M^j v
        std::vector<int> pivots;
        std::vector<u64> v(n, 0);
        v[s] = 1;
        unsigned step = 0;
        while (true) {
            std::vector<u64> w = v, combo(step + 1, 0);
            combo[step] = 1;
            for (size_t b = 0; b < basis.size(); ++b) {
                int pc = pivots[b];
                u64 c = w[pc];
                if (c == 0) continue;
                for (unsigned j = 0; j < n; ++j) w[j] = f->sub(w[j], f->mul(c, basis[b][j]));
                for (size_t j = 0; j < combos[b].size(); ++j)
                    combo[j] = f->sub(combo[j], f->mul(c, combos[b][j]));
            }
            int piv = -1;
            for (unsigned j = 0; j < n; ++j)
                if (w[j] != 0) { piv = static_cast<int>(j); break; }
            if (piv < 0) {
                // dependency: combo gives the local minimal polynomial
                FPoly local(f, combo);
                result = poly_lcm(result, local.monic());
                break;
            }
            u64 inv = f->inv(w[static_cast<unsigned>(piv)]);
            for (auto& x : w) x = f->mul(x, inv);
            for (auto& x : combo) x = f->mul(x, inv);
            basis.push_back(w);
            combos.push_back(combo);
            pivots.push_back(piv);
            // advance v <- M v
            std::vector<u64> next(n, 0);
            for (unsigned i = 0; i < n; ++i) {
                u64 acc = 0;
                for (unsigned j = 0; j < n; ++j) acc = f->add(acc, f->mul(M.at(i, j), v[j]));
                next[i] = acc;
            }
            v = std::move(next);
            ++step;
        }
        if (result.degree() == static_cast<int>(n)) break;
    }
    return result;
}

// Basis of the right nullspace of a (rows x cols) system, as column vectors.
inline std::vector<std::vector<u64>> nullspace(const FiniteField* f,
                                               std::vector<std::vector<u64>> rows, unsigned cols) {
    std::vector<int> pivot_col;
    unsigned r = 0;
    for (unsigned c = 0; c < cols && r < rows.size(); ++c) {
        unsigned piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        u64 inv = f->inv(rows[r][c]);
        for (unsigned j = 0; j < cols; ++j) rows[r][j] = f->mul(rows[r][j], inv);
        for (unsigned i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            u64 factor = rows[i][c];
            for (unsigned j = 0; j < cols; ++j)
                rows[i][j] = f->sub(rows[i][j], f->mul(factor, rows[r][j]));
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[static_cast<unsigned>(c)] = true;
    std::vector<std::vector<u64>> out;
    for (unsigned free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<u64> v(cols, 0);
        v[free_c] = 1;
        for (unsigned i = 0; i < pivot_col.size(); ++i)
            v[static_cast<unsigned>(pivot_col[i])] = f->neg(rows[i][free_c]);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace hgm
