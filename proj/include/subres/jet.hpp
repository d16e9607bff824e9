#pragma once

#include "subres/poly.hpp"
#include "subres/polymap.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace subres {

/// Truncated polynomial map: per-component sparse polynomials with no term of
/// degree above `degree`. Coefficients are exact rationals or doubles
/// depending on the declared mode. The basepoint is carried as metadata; the
/// algebra acts on coordinates relative to it.
template <class K>
struct Jet {
    std::size_t vars = 0;     // source dimension
    unsigned degree = 0;      // truncation degree
    std::vector<Poly<K>> comp;
    std::vector<K> basepoint;

    Jet() = default;

    Jet(std::size_t v, unsigned d, std::vector<Poly<K>> c)
        : vars(v), degree(d), comp(std::move(c)) {
        for (auto& p : comp) p = poly_truncate_degree(p, degree);
        for (const auto& p : comp)
            for (const auto& [m, coef] : p.terms)
                if (m.dim() != vars) throw std::invalid_argument("Jet: monomial dimension mismatch");
    }

    static Jet identity(std::size_t v, unsigned d) {
        std::vector<Poly<K>> c;
        for (std::size_t i = 0; i < v; ++i) c.push_back(Poly<K>::var(v, i));
        return Jet(v, d, std::move(c));
    }

    std::size_t dims() const { return comp.size(); }

    bool is_endo() const { return comp.size() == vars; }

    friend bool operator==(const Jet& a, const Jet& b) {
        return a.vars == b.vars && a.degree == b.degree && a.comp == b.comp;
    }
};

template <class K>
Jet<K> jet_from_polymap(const PolyMap& F, unsigned degree);

template <>
inline Jet<Rational> jet_from_polymap<Rational>(const PolyMap& F, unsigned degree) {
    return Jet<Rational>(F.source.dim(), degree, F.comp);
}

template <>
inline Jet<double> jet_from_polymap<double>(const PolyMap& F, unsigned degree) {
    std::vector<Poly<double>> c(F.comp.size());
    for (std::size_t i = 0; i < F.comp.size(); ++i)
        for (const auto& [m, coef] : F.comp[i].terms) c[i].add_term(m, to_double(coef));
    return Jet<double>(F.source.dim(), degree, std::move(c));
}

inline PolyMap jet_to_polymap(const Jet<Rational>& J, const WeightedSpace& src, const WeightedSpace& tgt) {
    if (src.dim() != J.vars || tgt.dim() != J.dims())
        throw std::invalid_argument("jet_to_polymap: dimension mismatch");
    return PolyMap(src, tgt, J.comp);
}

template <class K>
Jet<K> jet_add(const Jet<K>& a, const Jet<K>& b) {
    if (a.vars != b.vars || a.dims() != b.dims()) throw std::invalid_argument("jet_add: shape mismatch");
    std::vector<Poly<K>> c;
    for (std::size_t i = 0; i < a.comp.size(); ++i) c.push_back(a.comp[i] + b.comp[i]);
    return Jet<K>(a.vars, std::max(a.degree, b.degree), std::move(c));
}

template <class K>
Jet<K> jet_sub(const Jet<K>& a, const Jet<K>& b) {
    if (a.vars != b.vars || a.dims() != b.dims()) throw std::invalid_argument("jet_sub: shape mismatch");
    std::vector<Poly<K>> c;
    for (std::size_t i = 0; i < a.comp.size(); ++i) c.push_back(a.comp[i] - b.comp[i]);
    return Jet<K>(a.vars, std::max(a.degree, b.degree), std::move(c));
}

/// Truncated composition (F after G).
template <class K>
Jet<K> jet_compose(const Jet<K>& F, const Jet<K>& G) {
    if (G.dims() != F.vars) throw std::invalid_argument("jet_compose: shape mismatch");
    unsigned d = std::min(F.degree, G.degree);
    std::vector<Poly<K>> out;
    out.reserve(F.comp.size());
    for (const auto& p : F.comp) {
        // substitute with degree pruning after each multiplication
        Poly<K> acc;
        for (const auto& [m, coef] : p.terms) {
            Poly<K> v = Poly<K>::constant(G.vars, coef);
            for (std::size_t i = 0; i < F.vars; ++i)
                for (unsigned e = 0; e < m.exps[i]; ++e)
                    v = poly_truncate_degree(v * G.comp[i], d);
            acc = acc + v;
        }
        out.push_back(std::move(acc));
    }
    return Jet<K>(G.vars, d, std::move(out));
}

template <class K>
Matrix<K> jet_linear_part(const Jet<K>& F) {
    Matrix<K> L(F.dims(), F.vars);
    for (std::size_t i = 0; i < F.comp.size(); ++i)
        for (std::size_t j = 0; j < F.vars; ++j) L(i, j) = F.comp[i].coeff(Monomial::var(F.vars, j));
    return L;
}

namespace detail {

inline bool pivot_usable(const Rational& x) { return x != 0; }
inline bool pivot_usable(const double& x) { return std::abs(x) > 1e-300; }

/// Gauss-Jordan inverse over a field K (exact for Rational, partial pivoting
/// by magnitude for double).
template <class K>
std::optional<Matrix<K>> matrix_inverse_field(const Matrix<K>& m) {
    if (!m.is_square()) throw std::invalid_argument("matrix_inverse_field: not square");
    const std::size_t n = m.rows;
    Matrix<K> a = m;
    Matrix<K> inv = Matrix<K>::identity(n, K(1), K());
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        if constexpr (std::is_same_v<K, double>) {
            for (std::size_t i = col + 1; i < n; ++i)
                if (std::abs(a(i, col)) > std::abs(a(pivot, col))) pivot = i;
        } else {
            while (pivot < n && !pivot_usable(a(pivot, col))) ++pivot;
            if (pivot == n) return std::nullopt;
        }
        if (!pivot_usable(a(pivot, col))) return std::nullopt;
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.a[pivot * n + j], a.a[col * n + j]);
                std::swap(inv.a[pivot * n + j], inv.a[col * n + j]);
            }
        K d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) = a(col, j) / d;
            inv(col, j) = inv(col, j) / d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == K()) continue;
            K f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) = a(i, j) - f * a(col, j);
                inv(i, j) = inv(i, j) - f * inv(col, j);
            }
        }
    }
    return inv;
}

}  // namespace detail

/// Inverse jet: F o G = G o F = id up to the truncation degree. Requires an
/// invertible linear part; solved degree by degree.
template <class K>
Jet<K> jet_invert(const Jet<K>& F) {
    if (!F.is_endo()) throw std::invalid_argument("jet_invert: not an endomorphism");
    auto Linv = detail::matrix_inverse_field(jet_linear_part(F));
    if (!Linv) throw std::invalid_argument("jet_invert: singular linear part");
    const std::size_t n = F.vars;
    // start from the inverse linear part
    std::vector<Poly<K>> g;
    for (std::size_t i = 0; i < n; ++i) {
        Poly<K> p;
        for (std::size_t j = 0; j < n; ++j) p.add_term(Monomial::var(n, j), (*Linv)(i, j));
        g.push_back(std::move(p));
    }
    Jet<K> G(n, F.degree, std::move(g));
    for (unsigned d = 2; d <= F.degree; ++d) {
        // defect at degree d; correct G by -L^{-1} (defect)
        Jet<K> FG = jet_compose(F, G);
        std::vector<Poly<K>> corr(n);
        for (std::size_t i = 0; i < n; ++i) {
            Poly<K> defect;
            for (const auto& [m, coef] : FG.comp[i].terms) {
                if (m.degree() != d) continue;
                defect.add_term(m, coef);
            }
            corr[i] = defect;
        }
        for (std::size_t i = 0; i < n; ++i) {
            Poly<K> delta;
            for (std::size_t j = 0; j < n; ++j)
                if (!((*Linv)(i, j) == K())) delta = delta + corr[j].scaled((*Linv)(i, j));
            G.comp[i] = G.comp[i] - delta;
        }
    }
    return G;
}

/// Largest coefficient magnitude (for convergence bookkeeping).
inline double jet_max_abs(const Jet<double>& J) {
    double m = 0;
    for (const auto& p : J.comp)
        for (const auto& [mon, c] : p.terms) m = std::max(m, std::abs(c));
    return m;
}

inline double jet_max_abs(const Jet<Rational>& J) {
    double m = 0;
    for (const auto& p : J.comp)
        for (const auto& [mon, c] : p.terms) m = std::max(m, std::abs(to_double(c)));
    return m;
}

}  // namespace subres
