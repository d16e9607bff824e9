#pragma once

#include "subres/matrix.hpp"
#include "subres/polymap.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace subres {

/// The weight-sorted basis of the space of polynomial functions of weight at
/// most `cutoff` (the constant function included). Complete: every monomial of
/// weight <= cutoff appears exactly once; sorted by (weight, lex).
struct LinBasis {
    WeightedSpace space;
    Rational cutoff;
    std::vector<Monomial> monomials;

    std::size_t size() const { return monomials.size(); }

    std::size_t index_of(const Monomial& m) const {
        for (std::size_t i = 0; i < monomials.size(); ++i)
            if (monomials[i] == m) return i;
        throw std::out_of_range("LinBasis::index_of: monomial not in basis");
    }
};

namespace detail {

inline void enumerate_rec(const WeightedSpace& V, const Rational& budget, std::size_t i,
                          std::vector<unsigned>& exps, std::vector<Monomial>& out) {
    if (i == V.dim()) {
        out.push_back(Monomial(exps));
        return;
    }
    // weights are positive, so exponents are bounded by budget / weight
    enumerate_rec(V, budget, i + 1, exps, out);
    Rational remaining = budget;
    unsigned e = 1;
    while (Rational(e) * V.weights[i] <= budget) {
        exps[i] = e;
        enumerate_rec(V, budget - Rational(e) * V.weights[i], i + 1, exps, out);
        ++e;
    }
    exps[i] = 0;
}

}  // namespace detail

inline LinBasis enumerate_basis(const WeightedSpace& V, const Rational& cutoff) {
    if (cutoff < V.top_weight())
        throw std::invalid_argument("enumerate_basis: cutoff below the top weight breaks faithfulness");
    std::vector<Monomial> ms;
    std::vector<unsigned> exps(V.dim(), 0);
    detail::enumerate_rec(V, cutoff, 0, exps, ms);
    // enumerate_rec uses per-variable leftover budgets, so every generated
    // monomial already satisfies weight <= cutoff
    std::sort(ms.begin(), ms.end(), GradedLexLess{&V});
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    return LinBasis{V, cutoff, std::move(ms)};
}

inline LinBasis enumerate_basis(const WeightedSpace& V) { return enumerate_basis(V, V.top_weight()); }

/// Evaluation embedding: coordinates of ev(v) are the basis monomials
/// evaluated at v. The constant coordinate is always 1.
inline std::vector<Rational> ev(const std::vector<Rational>& v, const LinBasis& B) {
    if (v.size() != B.space.dim()) throw std::invalid_argument("ev: dimension mismatch");
    std::vector<Rational> out;
    out.reserve(B.size());
    for (const auto& m : B.monomials) {
        Rational val = 1;
        for (std::size_t i = 0; i < v.size(); ++i)
            for (unsigned k = 0; k < m.exps[i]; ++k) val *= v[i];
        out.push_back(val);
    }
    return out;
}

/// Matrix representation of a subresonant map on the evaluation coordinates:
/// row p, column m holds the coefficient of m in the pullback of the target
/// basis monomial p. Then ev(F(v)) = matrix * ev(v).
struct LinRep {
    LinBasis basis_src;
    LinBasis basis_tgt;
    Matrix<Rational> matrix;
};

/// Pullback of a single target monomial through F, as a polynomial on the
/// source.
inline Poly<Rational> pullback_monomial(const PolyMap& F, const Monomial& p) {
    Poly<Rational> r = Poly<Rational>::constant(F.source.dim(), 1);
    for (std::size_t c = 0; c < p.dim(); ++c)
        if (p.exps[c] != 0) r = r * poly_pow(F.comp[c], p.exps[c], F.source.dim());
    return r;
}

inline LinRep linearize(const PolyMap& F) {
    if (!classify(F).subresonant) throw std::invalid_argument("linearize: map must be subresonant");
    if (!F.source.same_profile(F.target))
        throw std::invalid_argument("linearize: source and target must share the weight profile");
    LinBasis Bs = enumerate_basis(F.source);
    LinBasis Bt = enumerate_basis(F.target);
    Matrix<Rational> M(Bt.size(), Bs.size());
    std::map<Monomial, std::size_t> col;
    for (std::size_t j = 0; j < Bs.size(); ++j) col.emplace(Bs.monomials[j], j);
    for (std::size_t i = 0; i < Bt.size(); ++i) {
        Poly<Rational> pb = pullback_monomial(F, Bt.monomials[i]);
        for (const auto& [m, c] : pb.terms) {
            auto it = col.find(m);
            if (it == col.end())
                throw std::logic_error("linearize: pullback escapes the function space");
            M(i, it->second) = c;
        }
    }
    return LinRep{std::move(Bs), std::move(Bt), std::move(M)};
}

/// Entries coupling a lower-weight row to a strictly higher-weight column must
/// vanish (pullback never raises weight).
inline bool is_weight_triangular(const LinRep& rep) {
    for (std::size_t i = 0; i < rep.basis_tgt.size(); ++i) {
        Rational wi = monomial_weight(rep.basis_tgt.monomials[i], rep.basis_tgt.space);
        for (std::size_t j = 0; j < rep.basis_src.size(); ++j) {
            Rational wj = monomial_weight(rep.basis_src.monomials[j], rep.basis_src.space);
            if (wi < wj && rep.matrix(i, j) != 0) return false;
        }
    }
    return true;
}

/// Recover the unique subresonant map whose linearization is g. Rejects
/// matrices that violate the weight filtration, move the constant functional,
/// or fail to preserve the image of the evaluation embedding (checked by
/// re-linearizing the candidate).
inline PolyMap delinearize(const Matrix<Rational>& g, const LinBasis& Bsrc, const LinBasis& Btgt) {
    if (g.rows != Btgt.size() || g.cols != Bsrc.size())
        throw std::invalid_argument("delinearize: matrix shape does not match bases");
    for (std::size_t i = 0; i < Btgt.size(); ++i) {
        Rational wi = monomial_weight(Btgt.monomials[i], Btgt.space);
        for (std::size_t j = 0; j < Bsrc.size(); ++j) {
            Rational wj = monomial_weight(Bsrc.monomials[j], Bsrc.space);
            if (wi < wj && g(i, j) != 0)
                throw std::invalid_argument("delinearize: matrix violates the weight filtration");
        }
    }
    // the constant functional must pull back to itself
    std::size_t c_tgt = Btgt.index_of(Monomial::one(Btgt.space.dim()));
    std::size_t c_src = Bsrc.index_of(Monomial::one(Bsrc.space.dim()));
    for (std::size_t j = 0; j < Bsrc.size(); ++j) {
        Rational expected = (j == c_src) ? Rational(1) : Rational(0);
        if (g(c_tgt, j) != expected)
            throw std::invalid_argument("delinearize: matrix does not fix the evaluation hyperplane");
    }
    // rows of the target coordinate functions assemble the candidate map
    std::vector<Poly<Rational>> comp;
    for (std::size_t c = 0; c < Btgt.space.dim(); ++c) {
        std::size_t row = Btgt.index_of(Monomial::var(Btgt.space.dim(), c));
        Poly<Rational> p;
        for (std::size_t j = 0; j < Bsrc.size(); ++j) p.add_term(Bsrc.monomials[j], g(row, j));
        comp.push_back(std::move(p));
    }
    PolyMap F(Bsrc.space, Btgt.space, std::move(comp));
    if (!classify(F).subresonant)
        throw std::invalid_argument("delinearize: candidate map is not subresonant");
    LinRep check = linearize(F);
    if (!(check.matrix == g))
        throw std::invalid_argument("delinearize: matrix does not preserve the evaluation image");
    return F;
}

inline PolyMap delinearize(const Matrix<Rational>& g, const LinBasis& B) {
    return delinearize(g, B, B);
}

}  // namespace subres
