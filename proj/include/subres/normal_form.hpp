#pragma once

#include "subres/jet.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace subres {

// ---------------------------------------------------------------------------
// Weight split of jets
// ---------------------------------------------------------------------------

/// A = PA + R, exactly: PA keeps the terms with weight(m) <= lambda_target
/// (the subresonant budget), R keeps the rest. Weights are one positive
/// rational per coordinate, shared by source and target fibers.
template <class K>
struct JetSplit {
    Jet<K> subresonant;
    Jet<K> super_resonant;
};

template <class K>
JetSplit<K> sr_split(const Jet<K>& A, const std::vector<Rational>& weights) {
    if (weights.size() != A.vars || A.dims() != A.vars)
        throw std::invalid_argument("sr_split: weight profile does not match the jet");
    std::vector<Poly<K>> pa(A.dims()), r(A.dims());
    for (std::size_t i = 0; i < A.dims(); ++i) {
        for (const auto& [m, coef] : A.comp[i].terms) {
            Rational w = 0;
            for (std::size_t j = 0; j < weights.size(); ++j)
                if (m.exps[j] != 0) w += Rational(m.exps[j]) * weights[j];
            if (w <= weights[i])
                pa[i].add_term(m, coef);
            else
                r[i].add_term(m, coef);
        }
    }
    return JetSplit<K>{Jet<K>(A.vars, A.degree, std::move(pa)), Jet<K>(A.vars, A.degree, std::move(r))};
}

// ---------------------------------------------------------------------------
// Conjugacy results
// ---------------------------------------------------------------------------

enum class Verdict { Converged, Diverged, MaxIterations, Resonance };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Converged: return "converged";
        case Verdict::Diverged: return "diverged";
        case Verdict::MaxIterations: return "max_iterations";
        case Verdict::Resonance: return "resonance";
    }
    return "unknown";
}

/// Outcome of a normal-form computation. `change` satisfies
/// change^{-1} o A o change = normal_form for converged runs (exactly in
/// rational mode, below tol in float mode).
template <class K>
struct ConjugacyResult {
    Jet<K> change;
    Jet<K> normal_form;
    std::vector<double> deviations;  // ||N^(n+1) - N^(n)|| per iteration
    double rate = 0.0;               // fitted per-step deviation ratio
    Verdict verdict = Verdict::MaxIterations;
    std::string report;              // resonance / divergence detail
    std::size_t iterations = 0;
};

namespace detail {

inline double knorm(const Rational& x) { return std::abs(to_double(x)); }
inline double knorm(const double& x) { return std::abs(x); }

/// Least-squares slope of log(dev) against the iteration index, fitted on the
/// tail; exp(slope) is the per-step ratio.
inline double fit_rate(const std::vector<double>& dev) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < dev.size(); ++i)
        if (dev[i] > 0) pts.emplace_back(static_cast<double>(i), std::log(dev[i]));
    if (pts.size() < 2) return 0.0;
    std::size_t start = pts.size() / 2 >= 2 ? pts.size() / 2 : 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = start; i < pts.size(); ++i) {
        sx += pts[i].first;
        sy += pts[i].second;
        sxx += pts[i].first * pts[i].first;
        sxy += pts[i].first * pts[i].second;
        ++n;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) return 0.0;
    return std::exp((n * sxy - sx * sy) / denom);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Fixed-point normal form (degree-by-degree homological solve)
// ---------------------------------------------------------------------------

/// Remove the super-resonant terms of a contracting jet with diagonal linear
/// part by a polynomial change of coordinates with identity derivative at 0.
/// The canonical solution keeps zero coefficients on every slot that is not
/// super-resonant. Small divisors abort with a resonance report.
template <class K>
ConjugacyResult<K> normal_form_fixed_point(const Jet<K>& A, const std::vector<Rational>& weights,
                                           double divisor_tol = 1e-9) {
    if (!A.is_endo() || weights.size() != A.vars)
        throw std::invalid_argument("normal_form_fixed_point: shape mismatch");
    const std::size_t n = A.vars;
    Matrix<K> L = jet_linear_part(A);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !(L(i, j) == K()))
                throw std::invalid_argument("normal_form_fixed_point: linear part must be diagonal");
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [m, coef] : A.comp[i].terms)
            if (m.is_constant()) throw std::invalid_argument("normal_form_fixed_point: not a fixed point");

    std::vector<K> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = L(i, i);

    auto term_weight = [&](const Monomial& m) {
        Rational w = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (m.exps[j] != 0) w += Rational(m.exps[j]) * weights[j];
        return w;
    };
    auto eig_power = [&](const Monomial& m) {
        K v = K(1);
        for (std::size_t j = 0; j < n; ++j)
            for (unsigned e = 0; e < m.exps[j]; ++e) v = v * eig[j];
        return v;
    };

    ConjugacyResult<K> out;
    Jet<K> N = Jet<K>::identity(n, A.degree);
    Jet<K> C = A;
    for (unsigned d = 2; d <= A.degree; ++d) {
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& [m, coef] : C.comp[i].terms) {
                if (m.degree() != d) continue;
                if (term_weight(m) <= weights[i]) continue;  // subresonant slot: keep
                K divisor = eig_power(m) - eig[i];
                double scale = std::max({detail::knorm(eig_power(m)), detail::knorm(eig[i]), 1.0});
                if (detail::knorm(divisor) < divisor_tol * scale) {
                    std::ostringstream os;
                    os << "small divisor at component " << i << ", |divisor| = " << detail::knorm(divisor);
                    out.report = os.str();
                    out.verdict = Verdict::Resonance;
                    out.change = Jet<K>::identity(n, A.degree);
                    out.normal_form = A;
                    return out;
                }
                N.comp[i].add_term(m, coef / divisor);
            }
        }
        C = jet_compose(jet_compose(jet_invert(N), A), N);
    }
    out.change = N;
    out.normal_form = C;
    out.verdict = Verdict::Converged;
    return out;
}

// ---------------------------------------------------------------------------
// Orbit iteration
// ---------------------------------------------------------------------------

/// Conjugacy along an orbit of jets by the telescoping iteration
/// N^(n) = (PA^{o n})^{-1} o A^{o n}, with PA the per-step subresonant part.
/// Returns the Cauchy differences, a fitted exponential rate, and the
/// base-point change of coordinates (the inverse of the iteration limit, so
/// that change^{-1} o A_0 o change agrees with the normal form at the base).
template <class K>
ConjugacyResult<K> normal_form_orbit(const std::vector<Jet<K>>& steps, const std::vector<Rational>& weights,
                                     unsigned degree, double tol, std::size_t horizon) {
    if (steps.empty()) throw std::invalid_argument("normal_form_orbit: empty orbit");
    const std::size_t n = steps.front().vars;
    for (const auto& s : steps)
        if (s.vars != n || s.dims() != n) throw std::invalid_argument("normal_form_orbit: shape mismatch");

    std::vector<Jet<K>> pa;
    pa.reserve(steps.size());
    for (const auto& s : steps) pa.push_back(sr_split(Jet<K>(s.vars, degree, s.comp), weights).subresonant);

    ConjugacyResult<K> out;
    Jet<K> Acomp = Jet<K>::identity(n, degree);
    Jet<K> PAcomp = Jet<K>::identity(n, degree);
    Jet<K> prev = Jet<K>::identity(n, degree);
    std::size_t limit = std::min(horizon, steps.size());
    Jet<K> current = prev;
    for (std::size_t k = 0; k < limit; ++k) {
        Acomp = jet_compose(steps[k % steps.size()], Acomp);
        PAcomp = jet_compose(pa[k % pa.size()], PAcomp);
        current = jet_compose(jet_invert(PAcomp), Acomp);
        out.deviations.push_back(jet_max_abs(jet_sub(current, prev)));
        prev = current;
        ++out.iterations;
        if (out.deviations.back() < tol && k >= 2) break;
    }
    out.rate = detail::fit_rate(out.deviations);

    bool tail_decreasing = true;
    if (out.deviations.size() >= 3) {
        std::size_t z = out.deviations.size();
        for (std::size_t i = z >= 4 ? z - 3 : 1; i + 1 < z; ++i)
            if (out.deviations[i + 1] > out.deviations[i] && out.deviations[i + 1] > tol)
                tail_decreasing = false;
    }
    if (!out.deviations.empty() && out.deviations.back() < tol && tail_decreasing && out.rate < 1.0) {
        out.verdict = Verdict::Converged;
    } else if (!tail_decreasing || out.rate >= 1.0) {
        out.verdict = Verdict::Diverged;
        out.report = "deviation sequence is not eventually decreasing";
    } else {
        out.verdict = Verdict::MaxIterations;
        out.report = "horizon reached before the tolerance";
    }
    out.change = jet_invert(current);
    out.normal_form = pa.front();
    return out;
}

/// Repeat one jet along the orbit (fixed-point cocycle).
template <class K>
ConjugacyResult<K> normal_form_orbit_constant(const Jet<K>& step, const std::vector<Rational>& weights,
                                              unsigned degree, double tol, std::size_t horizon) {
    std::vector<Jet<K>> steps(horizon, step);
    return normal_form_orbit(steps, weights, degree, tol, horizon);
}

}  // namespace subres
