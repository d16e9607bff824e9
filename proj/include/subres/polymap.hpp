#pragma once

#include "subres/matrix.hpp"
#include "subres/poly.hpp"
#include "subres/rational.hpp"
#include "subres/weighted_space.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace subres {

/// A polynomial map between weighted spaces: one sparse polynomial with exact
/// rational coefficients per target coordinate.
struct PolyMap {
    WeightedSpace source;
    WeightedSpace target;
    std::vector<Poly<Rational>> comp;

    PolyMap() = default;

    PolyMap(WeightedSpace src, WeightedSpace tgt, std::vector<Poly<Rational>> c)
        : source(std::move(src)), target(std::move(tgt)), comp(std::move(c)) {
        if (comp.size() != target.dim()) throw std::invalid_argument("PolyMap: component count mismatch");
        for (const auto& p : comp)
            for (const auto& [m, coef] : p.terms) {
                if (m.dim() != source.dim()) throw std::invalid_argument("PolyMap: monomial dimension mismatch");
                if (coef == 0) throw std::invalid_argument("PolyMap: stored zero coefficient");
            }
    }

    static PolyMap identity(const WeightedSpace& V) {
        std::vector<Poly<Rational>> c;
        for (std::size_t i = 0; i < V.dim(); ++i) c.push_back(Poly<Rational>::var(V.dim(), i));
        return PolyMap(V, V, std::move(c));
    }

    static PolyMap translation(const WeightedSpace& V, const std::vector<Rational>& u) {
        if (u.size() != V.dim()) throw std::invalid_argument("translation: dimension mismatch");
        std::vector<Poly<Rational>> c;
        for (std::size_t i = 0; i < V.dim(); ++i) {
            Poly<Rational> p = Poly<Rational>::var(V.dim(), i);
            p.add_term(Monomial::one(V.dim()), u[i]);
            c.push_back(std::move(p));
        }
        return PolyMap(V, V, std::move(c));
    }

    bool is_endo() const { return source.same_profile(target) && source.dim() == target.dim(); }
};

inline std::vector<Rational> eval(const PolyMap& F, const std::vector<Rational>& v) {
    if (v.size() != F.source.dim()) throw std::invalid_argument("eval: dimension mismatch");
    std::vector<Rational> out;
    out.reserve(F.comp.size());
    for (const auto& p : F.comp) out.push_back(poly_eval(p, v));
    return out;
}

// ---------------------------------------------------------------------------
// Classification by weight
// ---------------------------------------------------------------------------

/// Class flags of a polynomial map. A map can satisfy several at once (the
/// identity satisfies all three); none set means the map escapes the weight
/// budget.
struct Classification {
    bool subresonant = false;           // every term has weight(m) <= lambda_target
    bool resonant = false;              // every term has weight(m) == lambda_target
    bool strictly_subresonant = false;  // identity + terms with weight(m) < lambda_target

    enum class Tightest { None, Subresonant, Resonant, StrictlySubresonant };

    Tightest tightest() const {
        if (strictly_subresonant) return Tightest::StrictlySubresonant;
        if (resonant) return Tightest::Resonant;
        if (subresonant) return Tightest::Subresonant;
        return Tightest::None;
    }

    bool none() const { return !subresonant; }
};

inline Classification classify(const PolyMap& F) {
    Classification c;
    bool all_le = true, all_eq = true;
    for (std::size_t i = 0; i < F.comp.size(); ++i) {
        const Rational& budget = F.target.weights[i];
        for (const auto& [m, coef] : F.comp[i].terms) {
            Rational w = monomial_weight(m, F.source);
            if (w > budget) all_le = false;
            if (w != budget) all_eq = false;
        }
    }
    c.subresonant = all_le;
    c.resonant = all_le && all_eq;

    if (all_le && F.is_endo()) {
        bool strict = true;
        for (std::size_t i = 0; i < F.comp.size() && strict; ++i) {
            const Rational& budget = F.target.weights[i];
            Poly<Rational> rest = F.comp[i] - Poly<Rational>::var(F.source.dim(), i);
            for (const auto& [m, coef] : rest.terms)
                if (monomial_weight(m, F.source) >= budget) {
                    strict = false;
                    break;
                }
        }
        c.strictly_subresonant = strict;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Composition and inversion
// ---------------------------------------------------------------------------

/// F after G, exact substitution. Both maps must be subresonant; the result is
/// rejected if it escapes the weight budget, which can only happen for
/// malformed inputs.
inline PolyMap compose(const PolyMap& F, const PolyMap& G) {
    if (G.target.dim() != F.source.dim() || !G.target.same_profile(F.source))
        throw std::invalid_argument("compose: target(G) does not match source(F)");
    if (!classify(F).subresonant || !classify(G).subresonant)
        throw std::invalid_argument("compose: inputs must be subresonant");
    std::vector<Poly<Rational>> c;
    c.reserve(F.comp.size());
    for (const auto& p : F.comp) c.push_back(poly_substitute(p, G.comp, G.source.dim()));
    PolyMap R(G.source, F.target, std::move(c));
    if (!classify(R).subresonant)
        throw std::invalid_argument("compose: result escapes the weight budget (malformed input)");
    return R;
}

namespace detail {

/// Inverse of id + P where P has no linear-or-constant part interfering with
/// unipotency: every term of P either has weight(m) < lambda_target or
/// (weight(m) == lambda_target with degree >= 2). The fixed-point iteration
/// G <- id - P o G terminates by nilpotency.
inline PolyMap invert_unipotent(const PolyMap& F) {
    const PolyMap id = PolyMap::identity(F.source);
    std::vector<Poly<Rational>> pterms;
    for (std::size_t i = 0; i < F.comp.size(); ++i)
        pterms.push_back(F.comp[i] - id.comp[i]);

    PolyMap G = id;
    const std::size_t cap = 64;
    for (std::size_t k = 0; k < cap; ++k) {
        // next = id - P o G
        std::vector<Poly<Rational>> c;
        c.reserve(F.comp.size());
        for (std::size_t i = 0; i < F.comp.size(); ++i)
            c.push_back(id.comp[i] - poly_substitute(pterms[i], G.comp, F.source.dim()));
        PolyMap next(F.source, F.target, std::move(c));
        if (next.comp == G.comp) return G;
        G = std::move(next);
    }
    throw std::runtime_error("invert_unipotent: fixed point not reached (input not unipotent?)");
}

}  // namespace detail

/// True when F is subresonant with identity graded linear part: the identity
/// plus terms that are either of strictly negative weight or of weight 0 with
/// degree >= 2. Strictly subresonant maps are the special case without the
/// weight-0 terms; both kinds invert by the same nilpotent iteration.
inline bool is_unipotent_subresonant(const PolyMap& F) {
    if (!F.is_endo()) return false;
    Classification c = classify(F);
    if (!c.subresonant) return false;
    const std::size_t n = F.source.dim();
    for (std::size_t i = 0; i < n; ++i) {
        Poly<Rational> rest = F.comp[i] - Poly<Rational>::var(n, i);
        for (const auto& [m, coef] : rest.terms) {
            if (monomial_weight(m, F.source) < F.target.weights[i]) continue;
            if (m.degree() <= 1) return false;  // off-identity graded linear entry
        }
    }
    return true;
}

/// Exact inverse of a strictly subresonant map (weight-0 nilpotent terms are
/// tolerated; the iteration G <- id - (F - id) o G terminates by nilpotency).
inline PolyMap invert_ssr(const PolyMap& F) {
    if (!is_unipotent_subresonant(F))
        throw std::invalid_argument("invert_ssr: map is not strictly subresonant (unipotent part required)");
    return detail::invert_unipotent(F);
}

inline Matrix<Rational> differential_at(const PolyMap& F, const std::vector<Rational>& p) {
    if (p.size() != F.source.dim()) throw std::invalid_argument("differential_at: dimension mismatch");
    Matrix<Rational> J(F.target.dim(), F.source.dim());
    for (std::size_t i = 0; i < F.comp.size(); ++i)
        for (std::size_t j = 0; j < F.source.dim(); ++j)
            J(i, j) = poly_eval(poly_partial(F.comp[i], j), p);
    return J;
}

// ---------------------------------------------------------------------------
// Quotients
// ---------------------------------------------------------------------------

/// The descended map on V / V^{<= -lambda}: coordinates of weight >= lambda are
/// quotiented away. lambda must be one of the filtration weights.
inline PolyMap quotient_map(const PolyMap& F, const Rational& lambda) {
    auto is_weight = [&](const WeightedSpace& V) {
        for (const auto& w : V.weights)
            if (w == lambda) return true;
        return false;
    };
    if (!is_weight(F.source) || !is_weight(F.target))
        throw std::invalid_argument("quotient_map: lambda is not a filtration weight");
    if (!classify(F).subresonant) throw std::invalid_argument("quotient_map: map must be subresonant");

    auto kept = [&](const WeightedSpace& V) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < V.dim(); ++i)
            if (V.weights[i] < lambda) idx.push_back(i);
        return idx;
    };
    std::vector<std::size_t> src_keep = kept(F.source), tgt_keep = kept(F.target);
    if (src_keep.empty() || tgt_keep.empty())
        throw std::invalid_argument("quotient_map: quotient space is zero");

    auto make_space = [&](const WeightedSpace& V, const std::vector<std::size_t>& idx) {
        std::vector<std::string> c;
        std::vector<Rational> w;
        for (std::size_t i : idx) {
            c.push_back(V.coords[i]);
            w.push_back(V.weights[i]);
        }
        return WeightedSpace(std::move(c), std::move(w));
    };
    WeightedSpace qsrc = make_space(F.source, src_keep);
    WeightedSpace qtgt = make_space(F.target, tgt_keep);

    std::vector<Poly<Rational>> c;
    for (std::size_t i : tgt_keep) {
        Poly<Rational> q;
        for (const auto& [m, coef] : F.comp[i].terms) {
            bool uses_killed = false;
            for (std::size_t j = 0; j < m.dim(); ++j)
                if (m.exps[j] != 0 && F.source.weights[j] >= lambda) {
                    uses_killed = true;
                    break;
                }
            if (uses_killed) continue;  // cannot occur in a subresonant kept component except for translates
            std::vector<unsigned> e;
            for (std::size_t j : src_keep) e.push_back(m.exps[j]);
            q.add_term(Monomial(std::move(e)), coef);
        }
        c.push_back(std::move(q));
    }
    return PolyMap(qsrc, qtgt, std::move(c));
}

// ---------------------------------------------------------------------------
// Resonant / strictly subresonant splitting
// ---------------------------------------------------------------------------

/// The weight-0 projection: keep exactly the terms with weight(m) ==
/// lambda_target. On subresonant maps this projection is multiplicative.
inline PolyMap resonant_part(const PolyMap& F) {
    std::vector<Poly<Rational>> c;
    for (std::size_t i = 0; i < F.comp.size(); ++i) {
        Poly<Rational> p;
        for (const auto& [m, coef] : F.comp[i].terms)
            if (monomial_weight(m, F.source) == F.target.weights[i]) p.add_term(m, coef);
        c.push_back(std::move(p));
    }
    return PolyMap(F.source, F.target, std::move(c));
}

/// The block-diagonal part of the differential at 0: linear terms coupling
/// coordinates of equal weight.
inline Matrix<Rational> graded_linear_part(const PolyMap& F) {
    Matrix<Rational> L(F.target.dim(), F.source.dim());
    for (std::size_t i = 0; i < F.comp.size(); ++i)
        for (std::size_t j = 0; j < F.source.dim(); ++j)
            if (F.source.weights[j] == F.target.weights[i])
                L(i, j) = F.comp[i].coeff(Monomial::var(F.source.dim(), j));
    return L;
}

inline PolyMap linear_polymap(const WeightedSpace& src, const WeightedSpace& tgt,
                              const Matrix<Rational>& L) {
    std::vector<Poly<Rational>> c;
    for (std::size_t i = 0; i < tgt.dim(); ++i) {
        Poly<Rational> p;
        for (std::size_t j = 0; j < src.dim(); ++j) p.add_term(Monomial::var(src.dim(), j), L(i, j));
        c.push_back(std::move(p));
    }
    return PolyMap(src, tgt, std::move(c));
}

/// Inverse of a resonant map with invertible differential at the origin.
inline PolyMap invert_resonant(const PolyMap& R) {
    Classification c = classify(R);
    if (!c.resonant) throw std::invalid_argument("invert_resonant: map is not resonant");
    Matrix<Rational> L = graded_linear_part(R);
    auto Linv = matrix_inverse(L);
    if (!Linv) throw std::invalid_argument("invert_resonant: singular differential at origin");
    PolyMap LinvMap = linear_polymap(R.target, R.source, *Linv);
    // R = (R o L^{-1}) o L with R o L^{-1} unipotent (identity linear part,
    // higher-degree weight-0 terms).
    PolyMap U = compose(R, LinvMap);
    PolyMap Uinv = detail::invert_unipotent(U);
    return compose(LinvMap, Uinv);
}

struct SrDecomposition {
    PolyMap resonant;
    PolyMap strictly_subresonant;
};

/// F = S o R with R resonant (relative to the coordinate splitting) and S
/// strictly subresonant; unique. Translations go to S.
inline SrDecomposition sr_decompose(const PolyMap& F) {
    if (!classify(F).subresonant) throw std::invalid_argument("sr_decompose: map must be subresonant");
    PolyMap R = resonant_part(F);
    if (!matrix_inverse(graded_linear_part(R)))
        throw std::invalid_argument("sr_decompose: singular differential at origin");
    PolyMap S = compose(F, invert_resonant(R));
    return SrDecomposition{std::move(R), std::move(S)};
}

/// Inverse of any subresonant map with invertible differential at the origin
/// (translation parts allowed).
inline PolyMap invert_subresonant(const PolyMap& F) {
    SrDecomposition d = sr_decompose(F);
    PolyMap Sinv = detail::invert_unipotent(d.strictly_subresonant);
    return compose(invert_resonant(d.resonant), Sinv);
}

}  // namespace subres
