#pragma once

#include "subres/linearize.hpp"
#include "subres/polymap.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace subres {

/// A nilpotent polynomial vector field: the coefficient polynomial of the
/// i-th coordinate direction carries monomials with weight(m) < weights[i],
/// plus optionally weight-0 nilpotent terms (weight(m) == weights[i] with
/// degree >= 2, no graded linear part). These fields form a nilpotent Lie
/// algebra under the commutator; constants are allowed (generators of
/// translations).
struct SsrVectorField {
    WeightedSpace space;
    std::vector<Poly<Rational>> comp;

    SsrVectorField() = default;

    SsrVectorField(WeightedSpace V, std::vector<Poly<Rational>> c)
        : space(std::move(V)), comp(std::move(c)) {
        if (comp.size() != space.dim())
            throw std::invalid_argument("SsrVectorField: component count mismatch");
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (const auto& [m, coef] : comp[i].terms) {
                if (m.dim() != space.dim())
                    throw std::invalid_argument("SsrVectorField: monomial dimension mismatch");
                Rational w = monomial_weight(m, space);
                if (w > space.weights[i] || (w == space.weights[i] && m.degree() <= 1))
                    throw std::invalid_argument("SsrVectorField: term is not nilpotent for the grading");
            }
    }

    /// True when every term has strictly negative weight (no weight-0 sector).
    bool is_strict() const {
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (const auto& [m, coef] : comp[i].terms)
                if (monomial_weight(m, space) >= space.weights[i]) return false;
        return true;
    }

    static SsrVectorField zero(const WeightedSpace& V) {
        return SsrVectorField(V, std::vector<Poly<Rational>>(V.dim()));
    }

    bool is_zero() const {
        for (const auto& p : comp)
            if (!p.is_zero()) return false;
        return true;
    }

    SsrVectorField operator+(const SsrVectorField& o) const {
        check_space(o);
        std::vector<Poly<Rational>> c;
        for (std::size_t i = 0; i < comp.size(); ++i) c.push_back(comp[i] + o.comp[i]);
        return SsrVectorField(space, std::move(c));
    }

    SsrVectorField operator-(const SsrVectorField& o) const {
        check_space(o);
        std::vector<Poly<Rational>> c;
        for (std::size_t i = 0; i < comp.size(); ++i) c.push_back(comp[i] - o.comp[i]);
        return SsrVectorField(space, std::move(c));
    }

    SsrVectorField scaled(const Rational& t) const {
        std::vector<Poly<Rational>> c;
        for (const auto& p : comp) c.push_back(p.scaled(t));
        return SsrVectorField(space, std::move(c));
    }

    friend bool operator==(const SsrVectorField& a, const SsrVectorField& b) {
        return a.space.weights == b.space.weights && a.comp == b.comp;
    }

    /// Filtration weight: max over terms of weight(m) - weights[i]; nullopt
    /// for the zero field.
    std::optional<Rational> weight() const {
        std::optional<Rational> w;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (const auto& [m, coef] : comp[i].terms) {
                Rational t = monomial_weight(m, space) - space.weights[i];
                if (!w || t > *w) w = t;
            }
        return w;
    }

   private:
    void check_space(const SsrVectorField& o) const {
        if (space.dim() != o.space.dim() || space.weights != o.space.weights)
            throw std::invalid_argument("SsrVectorField: dimension mismatch");
    }
};

/// Commutator [X,Y]_i = sum_j X_j d_j(Y_i) - Y_j d_j(X_i), exact.
inline SsrVectorField bracket(const SsrVectorField& X, const SsrVectorField& Y) {
    if (X.space.dim() != Y.space.dim() || X.space.weights != Y.space.weights)
        throw std::invalid_argument("bracket: dimension mismatch");
    const std::size_t n = X.space.dim();
    std::vector<Poly<Rational>> c;
    c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Poly<Rational> acc;
        for (std::size_t j = 0; j < n; ++j) {
            if (!X.comp[j].is_zero()) acc = acc + X.comp[j] * poly_partial(Y.comp[i], j);
            if (!Y.comp[j].is_zero()) acc = acc - Y.comp[j] * poly_partial(X.comp[i], j);
        }
        c.push_back(std::move(acc));
    }
    return SsrVectorField(X.space, std::move(c));
}

/// Matrix of the Lie derivative p -> sum_j X_j d_j(p) on the function-space
/// basis. Strictly lowers weight, hence nilpotent.
inline Matrix<Rational> derivation_matrix(const SsrVectorField& X, const LinBasis& B) {
    Matrix<Rational> D(B.size(), B.size());
    std::map<Monomial, std::size_t> col;
    for (std::size_t j = 0; j < B.size(); ++j) col.emplace(B.monomials[j], j);
    for (std::size_t i = 0; i < B.size(); ++i) {
        Poly<Rational> lie;
        Poly<Rational> p = Poly<Rational>::term(B.monomials[i], Rational(1));
        for (std::size_t j = 0; j < X.space.dim(); ++j)
            if (!X.comp[j].is_zero()) lie = lie + X.comp[j] * poly_partial(p, j);
        for (const auto& [m, coef] : lie.terms) {
            auto it = col.find(m);
            if (it == col.end()) throw std::logic_error("derivation_matrix: term escapes the basis");
            D(i, it->second) = coef;
        }
    }
    return D;
}

/// Time-1 flow of X, computed by exponentiating the nilpotent derivation on
/// the function space and reading the flow back off the coordinate rows.
inline PolyMap exp_ssr(const SsrVectorField& X) {
    LinBasis B = enumerate_basis(X.space);
    Matrix<Rational> M = matrix_exp_nilpotent(derivation_matrix(X, B), rational_scalar);
    return delinearize(M, B);
}

/// Inverse of exp_ssr via the nilpotent matrix logarithm: the log of the
/// pullback matrix is a derivation again, and its coordinate rows are the
/// field components.
inline SsrVectorField log_ssr(const PolyMap& F) {
    if (!is_unipotent_subresonant(F))
        throw std::invalid_argument("log_ssr: map is not strictly subresonant (unipotent part required)");
    LinRep rep = linearize(F);
    Matrix<Rational> D = matrix_log_unipotent(rep.matrix, rational_scalar);
    const std::size_t n = F.source.dim();
    std::vector<Poly<Rational>> c;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t row = rep.basis_tgt.index_of(Monomial::var(n, i));
        Poly<Rational> p;
        for (std::size_t j = 0; j < rep.basis_src.size(); ++j)
            p.add_term(rep.basis_src.monomials[j], D(row, j));
        c.push_back(std::move(p));
    }
    return SsrVectorField(F.source, std::move(c));
}

/// Z whose flow realizes "flow of X, then flow of Y"; finite by nilpotency.
/// This is the product order for which the classical commutator series
/// Z = X + Y + [X,Y]/2 + ([X,[X,Y]] + [Y,[Y,X]])/12 + ... holds with the
/// standard vector-field bracket.
inline SsrVectorField bch(const SsrVectorField& X, const SsrVectorField& Y) {
    return log_ssr(compose(exp_ssr(Y), exp_ssr(X)));
}

}  // namespace subres
