#pragma once

#include "subres/linearize.hpp"
#include "subres/polymap.hpp"
#include "subres/prng.hpp"
#include "subres/serialization_fwd.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace subres {

// ---------------------------------------------------------------------------
// Random generators (all exact-rational, driven by SplitMix64)
// ---------------------------------------------------------------------------

inline std::vector<Rational> random_point(const WeightedSpace& V, SplitMix64& rng,
                                          std::int64_t max_num = 5, std::int64_t max_den = 3) {
    std::vector<Rational> v;
    v.reserve(V.dim());
    for (std::size_t i = 0; i < V.dim(); ++i) v.push_back(rng.rational(max_num, max_den));
    return v;
}

/// Random subresonant map with invertible differential at the origin.
/// Every admissible monomial is included with probability ~1/2.
inline PolyMap random_subresonant(const WeightedSpace& V, SplitMix64& rng, bool with_translation = true) {
    LinBasis B = enumerate_basis(V);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Poly<Rational>> comp;
        for (std::size_t i = 0; i < V.dim(); ++i) {
            Poly<Rational> p;
            for (const auto& m : B.monomials) {
                if (monomial_weight(m, V) > V.weights[i]) continue;
                if (m.is_constant() && !with_translation) continue;
                bool diagonal = (m == Monomial::var(V.dim(), i));
                if (diagonal) {
                    p.add_term(m, rng.nonzero_rational(4, 3));
                } else if (rng.below(2) == 0) {
                    p.add_term(m, rng.rational(4, 3));
                }
            }
            comp.push_back(std::move(p));
        }
        PolyMap F(V, V, std::move(comp));
        if (matrix_inverse(graded_linear_part(F))) return F;
    }
    throw std::runtime_error("random_subresonant: could not draw an invertible map");
}

/// Random strictly subresonant map: identity plus terms of strictly negative
/// weight (constants included).
inline PolyMap random_ssr(const WeightedSpace& V, SplitMix64& rng) {
    LinBasis B = enumerate_basis(V);
    std::vector<Poly<Rational>> comp;
    for (std::size_t i = 0; i < V.dim(); ++i) {
        Poly<Rational> p = Poly<Rational>::var(V.dim(), i);
        for (const auto& m : B.monomials) {
            if (monomial_weight(m, V) >= V.weights[i]) continue;
            if (rng.below(2) == 0) p.add_term(m, rng.rational(4, 3));
        }
        comp.push_back(std::move(p));
    }
    return PolyMap(V, V, std::move(comp));
}

// ---------------------------------------------------------------------------
// Law batteries
// ---------------------------------------------------------------------------

struct LawResult {
    std::string law;
    std::size_t samples = 0;
    std::size_t passed = 0;
    std::optional<std::string> counterexample;

    bool ok() const { return passed == samples && !counterexample; }
};

struct BatteryHooks {
    // injectable composition, so a corrupted routine can be demonstrated to
    // produce a counterexample report
    std::function<PolyMap(const PolyMap&, const PolyMap&)> compose = [](const PolyMap& F, const PolyMap& G) {
        return subres::compose(F, G);
    };
};

namespace detail {

inline void record_failure(LawResult& r, const PolyMap& F, const PolyMap& G) {
    if (!r.counterexample) r.counterexample = polymap_to_text(F) + "  ||  " + polymap_to_text(G);
}

}  // namespace detail

/// classify(compose(F, G)) stays subresonant.
inline LawResult law_composition_closure(const WeightedSpace& V, std::size_t samples, SplitMix64& rng,
                                         const BatteryHooks& hooks = {}) {
    LawResult r{"composition_closure", samples, 0, std::nullopt};
    for (std::size_t s = 0; s < samples; ++s) {
        PolyMap F = random_subresonant(V, rng);
        PolyMap G = random_subresonant(V, rng);
        bool ok = false;
        try {
            ok = classify(hooks.compose(F, G)).subresonant;
        } catch (const std::exception&) {
            ok = false;
        }
        if (ok)
            ++r.passed;
        else
            detail::record_failure(r, F, G);
    }
    return r;
}

/// compose(F, invert_ssr(F)) and the reverse order both equal the identity,
/// exactly.
inline LawResult law_ssr_inversion(const WeightedSpace& V, std::size_t samples, SplitMix64& rng,
                                   const BatteryHooks& hooks = {}) {
    LawResult r{"ssr_inversion_identity", samples, 0, std::nullopt};
    const PolyMap id = PolyMap::identity(V);
    for (std::size_t s = 0; s < samples; ++s) {
        PolyMap F = random_ssr(V, rng);
        PolyMap G = invert_ssr(F);
        bool ok = hooks.compose(F, G).comp == id.comp && hooks.compose(G, F).comp == id.comp;
        if (ok)
            ++r.passed;
        else
            detail::record_failure(r, F, G);
    }
    return r;
}

/// linearize(F o G) == linearize(F) * linearize(G), exactly.
inline LawResult law_linearize_homomorphism(const WeightedSpace& V, std::size_t samples, SplitMix64& rng,
                                            const BatteryHooks& hooks = {}) {
    LawResult r{"linearize_homomorphism", samples, 0, std::nullopt};
    for (std::size_t s = 0; s < samples; ++s) {
        PolyMap F = random_subresonant(V, rng);
        PolyMap G = random_subresonant(V, rng);
        bool ok = linearize(hooks.compose(F, G)).matrix == linearize(F).matrix * linearize(G).matrix;
        if (ok)
            ++r.passed;
        else
            detail::record_failure(r, F, G);
    }
    return r;
}

/// ev(F(v)) == linearize(F) * ev(v) on random rational points, exactly.
inline LawResult law_ev_equivariance(const WeightedSpace& V, std::size_t samples, SplitMix64& rng) {
    LawResult r{"ev_equivariance", samples, 0, std::nullopt};
    for (std::size_t s = 0; s < samples; ++s) {
        PolyMap F = random_subresonant(V, rng);
        LinRep rep = linearize(F);
        std::vector<Rational> v = random_point(V, rng);
        bool ok = ev(eval(F, v), rep.basis_tgt) == rep.matrix.apply(ev(v, rep.basis_src));
        if (ok)
            ++r.passed;
        else
            detail::record_failure(r, F, F);
    }
    return r;
}

/// delinearize(linearize(F)) == F, exactly.
inline LawResult law_delinearize_round_trip(const WeightedSpace& V, std::size_t samples, SplitMix64& rng) {
    LawResult r{"delinearize_round_trip", samples, 0, std::nullopt};
    for (std::size_t s = 0; s < samples; ++s) {
        PolyMap F = random_subresonant(V, rng);
        LinRep rep = linearize(F);
        PolyMap back = delinearize(rep.matrix, rep.basis_src, rep.basis_tgt);
        bool ok = back.comp == F.comp;
        if (ok)
            ++r.passed;
        else
            detail::record_failure(r, F, back);
    }
    return r;
}

/// Pullbacks of linear functionals of weight mu stay within weight mu.
inline LawResult law_pullback_weight(const WeightedSpace& V, std::size_t samples, SplitMix64& rng) {
    LawResult r{"pullback_weight_bound", samples, 0, std::nullopt};
    for (std::size_t s = 0; s < samples; ++s) {
        PolyMap F = random_subresonant(V, rng);
        bool ok = true;
        for (std::size_t i = 0; i < V.dim() && ok; ++i) {
            // xi = random combination of coordinates of weight <= weights[i]
            Poly<Rational> pullback;
            Rational mu = V.weights[i];
            for (std::size_t j = 0; j < V.dim(); ++j) {
                if (V.weights[j] > mu) continue;
                pullback = pullback + F.comp[j].scaled(rng.rational(3, 2));
            }
            for (const auto& [m, c] : pullback.terms)
                if (monomial_weight(m, V) > mu) ok = false;
        }
        if (ok)
            ++r.passed;
        else
            detail::record_failure(r, F, F);
    }
    return r;
}

/// p of weight <= lambda is blind to directions deeper than lambda:
/// p(v + v') == p(v) when v' is supported on coordinates of weight > lambda.
inline LawResult law_vanishing_on_deep_directions(const WeightedSpace& V, std::size_t samples,
                                                  SplitMix64& rng) {
    LawResult r{"deep_direction_invariance", samples, 0, std::nullopt};
    LinBasis B = enumerate_basis(V);
    for (std::size_t s = 0; s < samples; ++s) {
        // random lambda among the weights
        Rational lambda = V.weights[rng.below(V.dim())];
        Poly<Rational> p;
        for (const auto& m : B.monomials)
            if (monomial_weight(m, V) <= lambda && rng.below(2) == 0) p.add_term(m, rng.rational(4, 3));
        std::vector<Rational> v = random_point(V, rng);
        std::vector<Rational> shifted = v;
        for (std::size_t j = 0; j < V.dim(); ++j)
            if (V.weights[j] > lambda) shifted[j] += rng.rational(5, 3);
        bool ok = poly_eval(p, v) == poly_eval(p, shifted);
        if (ok) ++r.passed;
        // counterexample serialization is map-shaped; skip for scalar law
        r.samples = samples;
    }
    return r;
}

/// F with F(0) = 0 maps points supported on coordinates of weight >= lambda to
/// points supported on target coordinates of weight >= lambda.
inline LawResult law_filtration_image(const WeightedSpace& V, std::size_t samples, SplitMix64& rng) {
    LawResult r{"filtration_image", samples, 0, std::nullopt};
    for (std::size_t s = 0; s < samples; ++s) {
        PolyMap F = random_subresonant(V, rng, /*with_translation=*/false);
        Rational lambda = V.weights[rng.below(V.dim())];
        std::vector<Rational> v(V.dim(), Rational(0));
        for (std::size_t j = 0; j < V.dim(); ++j)
            if (V.weights[j] >= lambda) v[j] = rng.rational(5, 3);
        std::vector<Rational> image = eval(F, v);
        bool ok = true;
        for (std::size_t j = 0; j < V.dim(); ++j)
            if (V.weights[j] < lambda && image[j] != 0) ok = false;
        if (ok)
            ++r.passed;
        else
            detail::record_failure(r, F, F);
    }
    return r;
}

/// sr_decompose: exact recomposition, idempotence, and class flags.
inline LawResult law_sr_decompose(const WeightedSpace& V, std::size_t samples, SplitMix64& rng) {
    LawResult r{"sr_decompose", samples, 0, std::nullopt};
    for (std::size_t s = 0; s < samples; ++s) {
        PolyMap F = random_subresonant(V, rng);
        SrDecomposition d = sr_decompose(F);
        bool ok = classify(d.resonant).resonant && classify(d.strictly_subresonant).strictly_subresonant &&
                  compose(d.strictly_subresonant, d.resonant).comp == F.comp;
        if (ok) {
            SrDecomposition dd = sr_decompose(d.resonant);
            ok = dd.resonant.comp == d.resonant.comp &&
                 dd.strictly_subresonant.comp == PolyMap::identity(V).comp;
        }
        if (ok)
            ++r.passed;
        else
            detail::record_failure(r, F, F);
    }
    return r;
}

/// Strictly subresonant maps act as the identity on each weight-graded block
/// of the linearization.
inline LawResult law_ssr_graded_identity(const WeightedSpace& V, std::size_t samples, SplitMix64& rng) {
    LawResult r{"ssr_identity_on_graded", samples, 0, std::nullopt};
    for (std::size_t s = 0; s < samples; ++s) {
        PolyMap F = random_ssr(V, rng);
        LinRep rep = linearize(F);
        bool ok = true;
        for (std::size_t i = 0; i < rep.basis_tgt.size() && ok; ++i) {
            Rational wi = monomial_weight(rep.basis_tgt.monomials[i], V);
            for (std::size_t j = 0; j < rep.basis_src.size(); ++j) {
                Rational wj = monomial_weight(rep.basis_src.monomials[j], V);
                if (wi != wj) continue;
                Rational expected = (rep.basis_tgt.monomials[i] == rep.basis_src.monomials[j]) ? 1 : 0;
                if (rep.matrix(i, j) != expected) ok = false;
            }
        }
        if (ok)
            ++r.passed;
        else
            detail::record_failure(r, F, F);
    }
    return r;
}

/// Distinct maps have distinct linearizations.
inline LawResult law_linearize_faithful(const WeightedSpace& V, std::size_t samples, SplitMix64& rng) {
    LawResult r{"linearize_faithful", samples, 0, std::nullopt};
    for (std::size_t s = 0; s < samples; ++s) {
        PolyMap F = random_subresonant(V, rng);
        PolyMap G = random_subresonant(V, rng);
        bool ok = true;
        if (!(F.comp == G.comp)) ok = !(linearize(F).matrix == linearize(G).matrix);
        if (ok)
            ++r.passed;
        else
            detail::record_failure(r, F, G);
    }
    return r;
}

inline std::vector<LawResult> run_algebra_battery(const WeightedSpace& V, std::size_t samples,
                                                  SplitMix64& rng, const BatteryHooks& hooks = {}) {
    std::vector<LawResult> out;
    out.push_back(law_composition_closure(V, samples, rng, hooks));
    out.push_back(law_ssr_inversion(V, samples, rng, hooks));
    out.push_back(law_linearize_homomorphism(V, samples, rng, hooks));
    out.push_back(law_ev_equivariance(V, samples, rng));
    out.push_back(law_delinearize_round_trip(V, samples, rng));
    out.push_back(law_pullback_weight(V, samples, rng));
    out.push_back(law_vanishing_on_deep_directions(V, samples, rng));
    out.push_back(law_filtration_image(V, samples, rng));
    out.push_back(law_sr_decompose(V, samples, rng));
    out.push_back(law_ssr_graded_identity(V, samples, rng));
    out.push_back(law_linearize_faithful(V, samples, rng));
    return out;
}

}  // namespace subres
