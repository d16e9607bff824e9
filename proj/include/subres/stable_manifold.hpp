#pragma once

#include "subres/jet.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace subres {

/// Taylor jet of the local stable manifold as a graph over the stable
/// coordinates: h with h(0) = 0, Dh(0) = 0 and
/// f_cu(x, h(x)) = h(f_s(x, h(x))) up to the truncation degree.
template <class K>
struct StableManifoldJet {
    std::vector<std::size_t> stable_idx;    // coordinates with |eigenvalue| < 1
    std::vector<std::size_t> unstable_idx;  // the center-unstable block
    Jet<K> graph;                           // components indexed like unstable_idx, variables like stable_idx
    double residual = 0.0;                  // largest residual coefficient after the solve
    std::string small_divisor_report;       // nonempty if the solve was aborted

    bool ok() const { return small_divisor_report.empty(); }
};

/// Solve the graph invariance equation order by order for a map with diagonal
/// linear part fixing the origin. Blocks are split by eigenvalue modulus; the
/// per-monomial divisor s^m - u_i is reported (never divided) when it falls
/// under the tolerance.
template <class K>
StableManifoldJet<K> local_stable_manifold(const Jet<K>& F, unsigned degree, double divisor_tol = 1e-9) {
    if (!F.is_endo()) throw std::invalid_argument("local_stable_manifold: not an endomorphism");
    const std::size_t n = F.vars;
    for (const auto& p : F.comp)
        for (const auto& [m, c] : p.terms)
            if (m.is_constant()) throw std::invalid_argument("local_stable_manifold: not a fixed point");
    Matrix<K> L = jet_linear_part(F);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !(L(i, j) == K()))
                throw std::invalid_argument("local_stable_manifold: linear part must be diagonal");
    if (degree < 2) throw std::invalid_argument("local_stable_manifold: degree must be at least 2");

    StableManifoldJet<K> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (detail::knorm(L(i, i)) < 1.0)
            out.stable_idx.push_back(i);
        else
            out.unstable_idx.push_back(i);
    }
    const std::size_t ns = out.stable_idx.size();
    const std::size_t nu = out.unstable_idx.size();
    if (ns == 0 || nu == 0)
        throw std::invalid_argument("local_stable_manifold: need both a stable and an unstable block");

    std::vector<K> s_eig(ns), u_eig(nu);
    for (std::size_t a = 0; a < ns; ++a) s_eig[a] = L(out.stable_idx[a], out.stable_idx[a]);
    for (std::size_t b = 0; b < nu; ++b) u_eig[b] = L(out.unstable_idx[b], out.unstable_idx[b]);

    // h: stable vars -> unstable block, built degree by degree
    Jet<K> h(ns, degree, std::vector<Poly<K>>(nu));

    // residual(x) = f_cu(x, h(x)) - h(f_s(x, h(x))), as a jet in the stable vars
    auto compute_residual = [&]() {
        // embed: E(x) = (x at stable slots, h(x) at unstable slots)
        std::vector<Poly<K>> embed(n);
        for (std::size_t a = 0; a < ns; ++a) embed[out.stable_idx[a]] = Poly<K>::var(ns, a);
        for (std::size_t b = 0; b < nu; ++b) embed[out.unstable_idx[b]] = h.comp[b];
        Jet<K> E(ns, degree, std::move(embed));
        Jet<K> FE = jet_compose(Jet<K>(n, degree, F.comp), E);
        // stable part of F o E drives h; unstable part is compared with h o (stable part)
        std::vector<Poly<K>> fs(ns), fu(nu);
        for (std::size_t a = 0; a < ns; ++a) fs[a] = FE.comp[out.stable_idx[a]];
        for (std::size_t b = 0; b < nu; ++b) fu[b] = FE.comp[out.unstable_idx[b]];
        Jet<K> hFs = jet_compose(h, Jet<K>(ns, degree, std::move(fs)));
        std::vector<Poly<K>> res(nu);
        for (std::size_t b = 0; b < nu; ++b) res[b] = fu[b] - hFs.comp[b];
        return Jet<K>(ns, degree, std::move(res));
    };

    auto s_power = [&](const Monomial& m) {
        K v = K(1);
        for (std::size_t a = 0; a < ns; ++a)
            for (unsigned e = 0; e < m.exps[a]; ++e) v = v * s_eig[a];
        return v;
    };

    for (unsigned d = 2; d <= degree; ++d) {
        Jet<K> res = compute_residual();
        for (std::size_t b = 0; b < nu; ++b) {
            for (const auto& [m, coef] : res.comp[b].terms) {
                if (m.degree() != d) continue;
                K divisor = s_power(m) - u_eig[b];
                double scale = std::max({detail::knorm(s_power(m)), detail::knorm(u_eig[b]), 1.0});
                if (detail::knorm(divisor) < divisor_tol * scale) {
                    std::ostringstream os;
                    os << "small divisor at unstable component " << out.unstable_idx[b]
                       << ", |s^m - u| = " << detail::knorm(divisor);
                    out.small_divisor_report = os.str();
                    out.graph = h;
                    return out;
                }
                h.comp[b].add_term(m, coef / divisor);
            }
        }
    }
    out.graph = h;
    out.residual = jet_max_abs(compute_residual());
    return out;
}

}  // namespace subres
