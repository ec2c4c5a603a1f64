#pragma once

#include <deque>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "hgm/cyclotomic.hpp"
#include "hgm/exponents.hpp"
#include "hgm/matrix.hpp"

namespace hgm {

// The triple (g0, g1, ginf) acting on an n-dimensional space over a field
// containing a fixed primitive N-th root of unity zeta.
struct MonodromyTriple {
    const FiniteField* field = nullptr;
    unsigned n = 0;
    u64 N = 0;
    FiniteField::elt zeta = 0;
    EigenvalueSet b;
    Matrix g0, g1, ginf;
};

// A = companion((X-1)^n), B = companion(prod (X - zeta^{-b_i}));
// triple = (B^{-1}, B A^{-1}, A). The zeta override exists for reproducing
// hand computations with a non-canonical root choice.
inline MonodromyTriple build_companion_pair(unsigned n, u64 N, const FiniteField& field,
                                            const EigenvalueSet& b,
                                            std::optional<FiniteField::elt> zeta_override = {}) {
    if ((field.order() - 1) % N != 0)
        throw std::invalid_argument("field has no primitive N-th roots of unity");
    if (b.members.size() != n) throw std::invalid_argument("eigenvalue set has wrong cardinality");
    FiniteField::elt zeta =
        zeta_override ? *zeta_override : canonical_root_assignment(field, N);
    if (field.element_order(zeta) != N) throw std::invalid_argument("zeta has wrong order");

    FPoly apoly = FPoly::x_minus_one_pow(&field, n);
    FPoly bpoly = FPoly::constant(&field, 1);
    for (u64 bi : b.members)
        bpoly = bpoly * FPoly::x_minus(&field, field.pow(zeta, N - bi % N));
    Matrix A = Matrix::companion(apoly);
    Matrix B = Matrix::companion(bpoly);

    MonodromyTriple t{&field, n, N, zeta, b, B.inverse(), B * A.inverse(), A};
    if (!(t.g0 * t.g1 * t.ginf == Matrix::identity(&field, n)))
        throw std::logic_error("monodromy relation violated");
    if (t.g0.det() != 1 || t.g1.det() != 1 || t.ginf.det() != 1)
        throw std::logic_error("monodromy determinant not 1");
    return t;
}

struct LocalDataReport {
    bool charpoly_g0 = false;    // prod (X - zeta^{b_j})
    bool charpoly_ginf = false;  // (X - 1)^n
    bool minpoly_ginf = false;   // (X - 1)^n, maximally unipotent
    bool transvection = false;   // rank(g1 - I) = 1 and g1 unipotent
    bool all() const { return charpoly_g0 && charpoly_ginf && minpoly_ginf && transvection; }
    std::vector<std::string> failures() const {
        std::vector<std::string> out;
        if (!charpoly_g0) out.push_back("charpoly(g0)");
        if (!charpoly_ginf) out.push_back("charpoly(ginf)");
        if (!minpoly_ginf) out.push_back("minpoly(ginf)");
        if (!transvection) out.push_back("transvection(g1)");
        return out;
    }
};

inline LocalDataReport verify_local_data(const MonodromyTriple& t) {
    const FiniteField* f = t.field;
    LocalDataReport r;
    FPoly target0 = FPoly::constant(f, 1);
    for (u64 bj : t.b.members)
        target0 = target0 * FPoly::x_minus(f, f->pow(t.zeta, bj % t.N));
    FPoly unipotent = FPoly::x_minus_one_pow(f, t.n);
    r.charpoly_g0 = charpoly(t.g0) == target0;
    r.charpoly_ginf = charpoly(t.ginf) == unipotent;
    r.minpoly_ginf = minpoly(t.ginf) == unipotent;
    Matrix diff = t.g1 - Matrix::identity(f, t.n);
    r.transvection = diff.rank() == 1 && charpoly(t.g1) == unipotent;
    return r;
}

namespace detail {

inline std::vector<u64> flatten(const Matrix& m) {
    std::vector<u64> v(size_t(m.rows()) * m.cols());
    for (unsigned i = 0; i < m.rows(); ++i)
        for (unsigned j = 0; j < m.cols(); ++j) v[size_t(i) * m.cols() + j] = m.at(i, j);
    return v;
}

// Echelon container over flattened matrices; add() returns true when the
// vector enlarges the span.
struct Span {
    const FiniteField* f;
    unsigned dim;
    std::vector<std::vector<u64>> rows;
    std::vector<int> pivots;
    bool add(std::vector<u64> v) {
        for (size_t b = 0; b < rows.size(); ++b) {
            u64 c = v[static_cast<unsigned>(pivots[b])];
            if (c == 0) continue;
            for (unsigned j = 0; j < dim; ++j) v[j] = f->sub(v[j], f->mul(c, rows[b][j]));
        }
        int piv = -1;
        for (unsigned j = 0; j < dim; ++j)
            if (v[j] != 0) { piv = static_cast<int>(j); break; }
        if (piv < 0) return false;
        u64 inv = f->inv(v[static_cast<unsigned>(piv)]);
        for (auto& x : v) x = f->mul(x, inv);
        rows.push_back(std::move(v));
        pivots.push_back(piv);
        return true;
    }
};

}  // namespace detail

// Burnside criterion: the algebra generated by the triple is the full n x n
// matrix algebra. Grown by fixed-point iteration from the identity.
inline bool absolutely_irreducible(const MonodromyTriple& t) {
    const FiniteField* f = t.field;
    unsigned n = t.n;
    std::vector<Matrix> gens{t.g0, t.g1, t.ginf};
    detail::Span span{f, n * n, {}, {}};
    std::vector<Matrix> frontier{Matrix::identity(f, n)};
    span.add(detail::flatten(frontier[0]));
    while (!frontier.empty() && span.rows.size() < size_t(n) * n) {
        std::vector<Matrix> next;
        for (const Matrix& m : frontier)
            for (const Matrix& g : gens) {
                Matrix prod = m * g;
                if (span.add(detail::flatten(prod))) next.push_back(std::move(prod));
            }
        frontier = std::move(next);
    }
    return span.rows.size() == size_t(n) * n;
}

struct FormResult {
    bool found = false;
    std::optional<Matrix> form;
    bool alternating = false;
    bool symmetric = false;
    unsigned space_dim = 0;
    std::string note;
};

namespace detail {

inline Matrix unflatten(const FiniteField* f, const std::vector<u64>& v, unsigned n) {
    Matrix m(f, n, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) m.at(i, j) = v[size_t(i) * n + j];
    return m;
}

inline bool is_alternating(const Matrix& m) {
    const FiniteField* f = m.field();
    for (unsigned i = 0; i < m.rows(); ++i) {
        if (m.at(i, i) != 0) return false;
        for (unsigned j = i + 1; j < m.cols(); ++j)
            if (m.at(i, j) != f->neg(m.at(j, i))) return false;
    }
    return true;
}

inline bool is_symmetric(const Matrix& m) {
    for (unsigned i = 0; i < m.rows(); ++i)
        for (unsigned j = i + 1; j < m.cols(); ++j)
            if (m.at(i, j) != m.at(j, i)) return false;
    return true;
}

inline bool is_zero(const Matrix& m) {
    for (unsigned i = 0; i < m.rows(); ++i)
        for (unsigned j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0) return false;
    return true;
}

// Nullspace of the system left(g)^T M g = M for g in gens; twist = 0 for
// bilinear, else the Frobenius power applied on the left factor.
inline std::vector<std::vector<u64>> form_space(const MonodromyTriple& t, unsigned twist) {
    const FiniteField* f = t.field;
    unsigned n = t.n;
    std::vector<std::vector<u64>> sys;
    for (const Matrix* g : {&t.g0, &t.g1}) {
        Matrix left = twist ? g->frobenius(twist) : *g;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                std::vector<u64> row(size_t(n) * n, 0);
                for (unsigned k = 0; k < n; ++k)
                    for (unsigned l = 0; l < n; ++l)
                        row[size_t(k) * n + l] = f->mul(left.at(k, i), g->at(l, j));
                row[size_t(i) * n + j] = f->sub(row[size_t(i) * n + j], 1);
                sys.push_back(std::move(row));
            }
    }
    return nullspace(f, std::move(sys), n * n);
}

}  // namespace detail

// Nonzero M with g^T M g = M for both generators, or none. When the solution
// space contains an alternating form one is returned preferentially.
inline FormResult invariant_bilinear_form(const MonodromyTriple& t) {
    const FiniteField* f = t.field;
    auto basis = detail::form_space(t, 0);
    FormResult r;
    r.space_dim = static_cast<unsigned>(basis.size());
    if (basis.empty()) return r;
    std::optional<Matrix> fallback;
    for (const auto& v : basis) {
        Matrix m = detail::unflatten(f, v, t.n);
        // the transpose of a solution is a solution, so the alternating part
        // stays inside the space
        Matrix alt = m - m.transpose();
        if (!detail::is_zero(alt) && detail::is_alternating(alt)) {
            r.found = true;
            r.form = alt;
            r.alternating = true;
            return r;
        }
        if (detail::is_alternating(m)) {
            r.found = true;
            r.form = m;
            r.alternating = true;
            return r;
        }
        if (!fallback) fallback = m;
    }
    r.found = true;
    r.form = *fallback;
    r.symmetric = detail::is_symmetric(*fallback);
    return r;
}

// Nonzero M with sigma(g)^T M g = M, sigma the order-2 automorphism of the
// field. Fields of odd degree over the prime field have no such sigma.
inline FormResult invariant_sesquilinear_form(const MonodromyTriple& t) {
    FormResult r;
    if (t.field->degree() % 2 != 0) {
        r.note = "no-quadratic-subfield";
        return r;
    }
    auto basis = detail::form_space(t, t.field->degree() / 2);
    r.space_dim = static_cast<unsigned>(basis.size());
    if (basis.empty()) return r;
    r.found = true;
    r.form = detail::unflatten(t.field, basis[0], t.n);
    return r;
}

// Degree over the prime field of the subfield generated by traces of all
// words of length <= budget in the generators.
inline unsigned trace_field(const MonodromyTriple& t, unsigned budget = 3) {
    const FiniteField* f = t.field;
    std::vector<Matrix> gens{t.g0, t.g1, t.ginf};
    std::vector<Matrix> words{Matrix::identity(f, t.n)};
    unsigned degree = 1;
    auto elt_degree = [&](FiniteField::elt x) {
        for (unsigned d = 1; d <= f->degree(); ++d)
            if (f->degree() % d == 0 && f->frobenius(x, d) == x) return d;
        return f->degree();
    };
    for (unsigned len = 1; len <= budget; ++len) {
        std::vector<Matrix> next;
        for (const Matrix& w : words)
            for (const Matrix& g : gens) next.push_back(w * g);
        for (const Matrix& w : next) {
            FiniteField::elt tr = 0;
            for (unsigned i = 0; i < t.n; ++i) tr = f->add(tr, w.at(i, i));
            degree = static_cast<unsigned>(std::lcm(degree, elt_degree(tr)));
        }
        words = std::move(next);
        if (degree == f->degree()) break;
    }
    return degree;
}

struct BfsResult {
    bool complete = false;
    u64 order = 0;  // exact order, or visited count when capped
};

// Breadth-first closure of <g0, g1> under right multiplication by the
// generators, deduplicated by canonical serialization.
inline BfsResult bfs_group_order(const MonodromyTriple& t, u64 cap) {
    if (cap > 100000000) throw std::invalid_argument("cap too large");
    std::vector<Matrix> gens{t.g0, t.g1};
    std::unordered_set<std::string> seen;
    std::deque<Matrix> frontier;
    Matrix id = Matrix::identity(t.field, t.n);
    seen.insert(id.serialize());
    frontier.push_back(id);
    while (!frontier.empty()) {
        Matrix m = std::move(frontier.front());
        frontier.pop_front();
        for (const Matrix& g : gens) {
            Matrix prod = m * g;
            if (seen.insert(prod.serialize()).second) {
                if (seen.size() > cap) return {false, cap};
                frontier.push_back(std::move(prod));
            }
        }
    }
    return {true, seen.size()};
}

// BFS over the simultaneously reduced pair: generators act diagonally.
inline BfsResult bfs_pair_order(const MonodromyTriple& t1, const MonodromyTriple& t2, u64 cap) {
    if (cap > 100000000) throw std::invalid_argument("cap too large");
    std::vector<std::pair<Matrix, Matrix>> gens{{t1.g0, t2.g0}, {t1.g1, t2.g1}};
    std::unordered_set<std::string> seen;
    std::deque<std::pair<Matrix, Matrix>> frontier;
    std::pair<Matrix, Matrix> id{Matrix::identity(t1.field, t1.n), Matrix::identity(t2.field, t2.n)};
    seen.insert(id.first.serialize() + id.second.serialize());
    frontier.push_back(id);
    while (!frontier.empty()) {
        auto m = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& g : gens) {
            std::pair<Matrix, Matrix> prod{m.first * g.first, m.second * g.second};
            if (seen.insert(prod.first.serialize() + prod.second.serialize()).second) {
                if (seen.size() > cap) return {false, cap};
                frontier.push_back(std::move(prod));
            }
        }
    }
    return {true, seen.size()};
}

// |SL_n(q)| = q^(n(n-1)/2) * prod_{i=2..n} (q^i - 1)
inline mpz_class sl_order(unsigned n, u64 q) {
    mpz_class Q(static_cast<unsigned long>(q));
    mpz_class r = mpz_pow(Q, n * (n - 1) / 2);
    for (unsigned i = 2; i <= n; ++i) r *= mpz_pow(Q, i) - 1;
    return r;
}

inline mpz_class psl_order(unsigned n, u64 q) {
    mpz_class c(static_cast<unsigned long>(std::gcd(u64(n), q - 1)));
    return sl_order(n, q) / c;
}

enum class ImageVerdict { FullSL, Symplectic, Unitary, SubfieldDefined, Undetermined };

struct ImageClassification {
    ImageVerdict verdict = ImageVerdict::Undetermined;
    std::string method;  // bfs-order | form-solve | trace-field
    std::optional<Matrix> form;
    unsigned trace_degree = 0;
    std::optional<mpz_class> order;
    std::string note;
};

inline const char* verdict_name(ImageVerdict v) {
    switch (v) {
        case ImageVerdict::FullSL: return "full-SL";
        case ImageVerdict::Symplectic: return "symplectic";
        case ImageVerdict::Unitary: return "unitary";
        case ImageVerdict::SubfieldDefined: return "subfield-defined";
        default: return "undetermined";
    }
}

// Trichotomy: irreducibility, then invariant forms, then trace field, with a
// BFS order certificate when the expected order fits under the cap. For
// n = 2 the alternating form is automatic (Sp_2 = SL_2) and does not count
// against the full-SL verdict.
inline ImageClassification classify_image(const MonodromyTriple& t, u64 bfs_cap = 2000000) {
    ImageClassification c;
    if (!absolutely_irreducible(t)) {
        c.note = "not absolutely irreducible";
        return c;
    }
    if (t.n > 2) {
        FormResult bil = invariant_bilinear_form(t);
        if (bil.found && bil.alternating) {
            c.verdict = ImageVerdict::Symplectic;
            c.method = "form-solve";
            c.form = bil.form;
            return c;
        }
    }
    FormResult ses = invariant_sesquilinear_form(t);
    if (ses.found) {
        c.verdict = ImageVerdict::Unitary;
        c.method = "form-solve";
        c.form = ses.form;
        return c;
    }
    c.trace_degree = trace_field(t);
    if (c.trace_degree < t.field->degree()) {
        c.verdict = ImageVerdict::SubfieldDefined;
        c.method = "trace-field";
        return c;
    }
    c.verdict = ImageVerdict::FullSL;
    mpz_class expected = sl_order(t.n, t.field->order());
    if (expected <= bfs_cap) {
        BfsResult bfs = bfs_group_order(t, bfs_cap);
        if (bfs.complete && expected == mpz_class(static_cast<unsigned long>(bfs.order))) {
            c.method = "bfs-order";
            c.order = expected;
            return c;
        }
        c.note = "BFS order disagrees with the exclusion route";
        c.verdict = ImageVerdict::Undetermined;
        return c;
    }
    c.method = "form-solve";
    c.note = "order not enumerated";
    return c;
}

// Goursat criterion for surjectivity onto the product: both factors full-SL,
// distinct characteristics, and non-isomorphic simple quotients.
inline bool product_goursat_check(unsigned n, const FiniteField& f1, ImageVerdict v1,
                                  const FiniteField& f2, ImageVerdict v2) {
    if (v1 != ImageVerdict::FullSL || v2 != ImageVerdict::FullSL)
        throw std::invalid_argument("both factors must be full-SL");
    if (f1.characteristic() == f2.characteristic())
        throw std::invalid_argument("characteristics must be distinct");
    if (std::max(f1.characteristic(), f2.characteristic()) <= 10)
        throw std::invalid_argument("larger characteristic must exceed 10");
    mpz_class o1 = psl_order(n, f1.order());
    mpz_class o2 = psl_order(n, f2.order());
    if (o1 != o2) return true;
    // equal orders: either genuinely isomorphic (the exceptional pairs
    // PSL_2(4)=PSL_2(5), PSL_2(7)=PSL_3(2), PSL_2(9)=A_6, PSL_4(2)=A_8)
    // or at least not certifiable as distinct by order comparison
    return false;
}

}  // namespace hgm
