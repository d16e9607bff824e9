#pragma once

#include "subres/vectorfield.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace subres {

// ---------------------------------------------------------------------------
// Canonical coordinates on the nilpotent Lie algebra of strictly negative
// weight fields
// ---------------------------------------------------------------------------

/// The canonical basis of the Lie algebra: one entry (direction, monomial) per
/// admissible pair with weight(m) < weights[dir], sorted by (field weight,
/// direction, monomial). Field weights are strictly negative; the induced
/// coordinate space carries the opposite (positive) weights, deepest first.
struct FieldBasis {
    WeightedSpace space;                                  // the underlying weighted space V
    std::vector<std::pair<std::size_t, Monomial>> entries;
    WeightedSpace coord_space;                            // coordinates on the Lie algebra

    std::size_t size() const { return entries.size(); }
};

inline FieldBasis field_basis(const WeightedSpace& V) {
    LinBasis B = enumerate_basis(V);
    std::vector<std::pair<std::size_t, Monomial>> entries;
    for (std::size_t i = 0; i < V.dim(); ++i)
        for (const auto& m : B.monomials)
            if (monomial_weight(m, V) < V.weights[i]) entries.emplace_back(i, m);
    std::stable_sort(entries.begin(), entries.end(), [&](const auto& a, const auto& b) {
        Rational wa = monomial_weight(a.second, V) - V.weights[a.first];
        Rational wb = monomial_weight(b.second, V) - V.weights[b.first];
        if (wa != wb) return wa < wb;
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    std::vector<std::string> names;
    std::vector<Rational> weights;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        names.push_back("n" + std::to_string(k + 1));
        weights.push_back(V.weights[entries[k].first] - monomial_weight(entries[k].second, V));
    }
    return FieldBasis{V, std::move(entries), WeightedSpace(std::move(names), std::move(weights))};
}

inline std::vector<Rational> field_to_coords(const SsrVectorField& X, const FieldBasis& FB) {
    if (!X.is_strict()) throw std::invalid_argument("field_to_coords: field has weight-0 terms");
    std::vector<Rational> out(FB.size(), Rational(0));
    std::vector<Poly<Rational>> rest = X.comp;
    for (std::size_t k = 0; k < FB.size(); ++k) {
        const auto& [dir, m] = FB.entries[k];
        out[k] = rest[dir].coeff(m);
    }
    return out;
}

inline SsrVectorField field_from_coords(const std::vector<Rational>& c, const FieldBasis& FB) {
    if (c.size() != FB.size()) throw std::invalid_argument("field_from_coords: dimension mismatch");
    std::vector<Poly<Rational>> comp(FB.space.dim());
    for (std::size_t k = 0; k < FB.size(); ++k) {
        const auto& [dir, m] = FB.entries[k];
        comp[dir].add_term(m, c[k]);
    }
    return SsrVectorField(FB.space, std::move(comp));
}

// ---------------------------------------------------------------------------
// Subalgebras and transversals
// ---------------------------------------------------------------------------

/// A user-declared subalgebra: basis of strictly negative weight fields,
/// linearly independent and bracket-closed (both verified exactly).
struct Subalgebra {
    WeightedSpace space;
    std::vector<SsrVectorField> basis;
};

namespace detail {

inline Matrix<Rational> stack_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
    Matrix<Rational> M(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) M(i, j) = rows[i][j];
    return M;
}

/// Solve for coordinates of target in the row span; nullopt if outside.
inline std::optional<std::vector<Rational>> coords_in_span(const std::vector<std::vector<Rational>>& span,
                                                           const std::vector<Rational>& target) {
    Matrix<Rational> A(target.size(), span.size());
    for (std::size_t j = 0; j < span.size(); ++j)
        for (std::size_t i = 0; i < target.size(); ++i) A(i, j) = span[j][i];
    return matrix_solve(A, target);
}

}  // namespace detail

inline void validate_subalgebra(const Subalgebra& S, const FieldBasis& FB) {
    if (S.basis.empty()) throw std::invalid_argument("Subalgebra: empty basis");
    std::vector<std::vector<Rational>> rows;
    for (const auto& X : S.basis) {
        if (!X.is_strict()) throw std::invalid_argument("Subalgebra: basis field has weight-0 terms");
        rows.push_back(field_to_coords(X, FB));
    }
    if (matrix_rank(detail::stack_rows(rows, FB.size())) != S.basis.size())
        throw std::invalid_argument("Subalgebra: basis is linearly dependent");
    for (std::size_t i = 0; i < S.basis.size(); ++i)
        for (std::size_t j = i + 1; j < S.basis.size(); ++j) {
            SsrVectorField b = bracket(S.basis[i], S.basis[j]);
            if (!detail::coords_in_span(rows, field_to_coords(b, FB)))
                throw std::invalid_argument("Subalgebra: not closed under the bracket");
        }
}

/// Transversal decomposition v + u = n, compatible with the weight filtration
/// level by level.
struct TransversalChart {
    Subalgebra u_plus;
    std::vector<SsrVectorField> transversal;
};

namespace detail {

inline std::vector<Rational> distinct_field_weights(const FieldBasis& FB) {
    std::vector<Rational> w;
    for (std::size_t k = 0; k < FB.size(); ++k) {
        Rational lam = FB.coord_space.weights[k];
        if (w.empty() || w.back() != lam) w.push_back(lam);
    }
    return w;  // non-increasing, one entry per graded level
}

/// dim of the intersection of span(rows) with the coordinate subspace given
/// by the index set.
inline std::size_t intersection_dim(const std::vector<std::vector<Rational>>& rows,
                                    const std::vector<std::size_t>& coord_idx, std::size_t n) {
    // dim(U) + dim(W) - dim(U + W)
    std::vector<std::vector<Rational>> stacked = rows;
    for (std::size_t j : coord_idx) {
        std::vector<Rational> e(n, Rational(0));
        e[j] = 1;
        stacked.push_back(std::move(e));
    }
    std::size_t du = matrix_rank(detail::stack_rows(rows, n));
    std::size_t dw = coord_idx.size();
    std::size_t ds = matrix_rank(detail::stack_rows(stacked, n));
    return du + dw - ds;
}

}  // namespace detail

/// Default transversal: the orthogonal complement of the graded projection of
/// u_plus inside each weight-graded block of the canonical coordinates,
/// computed exactly. Filtration-compatible by construction.
inline TransversalChart make_transversal_chart(const Subalgebra& S) {
    FieldBasis FB = field_basis(S.space);
    validate_subalgebra(S, FB);
    const std::size_t n = FB.size();
    std::vector<std::vector<Rational>> urows;
    for (const auto& X : S.basis) urows.push_back(field_to_coords(X, FB));

    std::vector<SsrVectorField> transversal;
    for (const Rational& lam : detail::distinct_field_weights(FB)) {
        std::vector<std::size_t> block, deeper;
        for (std::size_t k = 0; k < n; ++k) {
            if (FB.coord_space.weights[k] == lam) block.push_back(k);
            if (FB.coord_space.weights[k] > lam) deeper.push_back(k);
        }
        // graded projection of u: vectors of (u cap deeper-or-equal) restricted to the block
        // basis of u cap {coords supported on block+deeper}: solve for combinations
        // vanishing outside block+deeper
        Matrix<Rational> outside(0, 0);
        std::vector<std::size_t> outside_idx;
        for (std::size_t k = 0; k < n; ++k) {
            bool inside = FB.coord_space.weights[k] >= lam;
            if (!inside) outside_idx.push_back(k);
        }
        Matrix<Rational> A(outside_idx.size(), urows.size());
        for (std::size_t j = 0; j < urows.size(); ++j)
            for (std::size_t i = 0; i < outside_idx.size(); ++i) A(i, j) = urows[j][outside_idx[i]];
        std::vector<std::vector<Rational>> combos = matrix_nullspace(A);
        // project the surviving combinations onto the block coordinates
        std::vector<std::vector<Rational>> proj;
        for (const auto& cmb : combos) {
            std::vector<Rational> v(block.size(), Rational(0));
            for (std::size_t j = 0; j < urows.size(); ++j)
                for (std::size_t b = 0; b < block.size(); ++b) v[b] += cmb[j] * urows[j][block[b]];
            proj.push_back(std::move(v));
        }
        // orthogonal complement of the projection inside the block
        Matrix<Rational> P = detail::stack_rows(proj, block.size());
        for (const auto& kervec : matrix_nullspace(P)) {
            std::vector<Rational> full(n, Rational(0));
            for (std::size_t b = 0; b < block.size(); ++b) full[block[b]] = kervec[b];
            transversal.push_back(field_from_coords(full, FB));
        }
    }
    TransversalChart T{S, std::move(transversal)};
    return T;
}

/// Check the per-level dimension condition: dim n^{<=lam} splits as the sum of
/// the u_plus and transversal intersections, and v + u spans.
inline void validate_chart(const TransversalChart& T) {
    FieldBasis FB = field_basis(T.u_plus.space);
    validate_subalgebra(T.u_plus, FB);
    const std::size_t n = FB.size();
    std::vector<std::vector<Rational>> urows, vrows, all;
    for (const auto& X : T.u_plus.basis) urows.push_back(field_to_coords(X, FB));
    for (const auto& X : T.transversal) {
        if (!X.is_strict()) throw std::invalid_argument("TransversalChart: transversal field has weight-0 terms");
        vrows.push_back(field_to_coords(X, FB));
    }
    all = urows;
    all.insert(all.end(), vrows.begin(), vrows.end());
    if (urows.size() + vrows.size() != n || matrix_rank(detail::stack_rows(all, n)) != n)
        throw std::invalid_argument("TransversalChart: transversal is not complementary");
    for (const Rational& lam : detail::distinct_field_weights(FB)) {
        std::vector<std::size_t> filt;
        for (std::size_t k = 0; k < n; ++k)
            if (FB.coord_space.weights[k] >= lam) filt.push_back(k);  // field weight <= -lam
        std::size_t du = detail::intersection_dim(urows, filt, n);
        std::size_t dv = detail::intersection_dim(vrows, filt, n);
        if (du + dv != filt.size())
            throw std::invalid_argument("TransversalChart: filtration dimensions do not split");
    }
}

// ---------------------------------------------------------------------------
// Chart maps
// ---------------------------------------------------------------------------

/// log(exp(v) o exp(u)) for v in the transversal, u in the subalgebra.
inline SsrVectorField ch_chart(const TransversalChart& T, const std::vector<Rational>& vcoords,
                               const std::vector<Rational>& ucoords) {
    if (vcoords.size() != T.transversal.size() || ucoords.size() != T.u_plus.basis.size())
        throw std::invalid_argument("ch_chart: coordinate count mismatch");
    SsrVectorField V = SsrVectorField::zero(T.u_plus.space);
    for (std::size_t a = 0; a < vcoords.size(); ++a) V = V + T.transversal[a].scaled(vcoords[a]);
    SsrVectorField U = SsrVectorField::zero(T.u_plus.space);
    for (std::size_t b = 0; b < ucoords.size(); ++b) U = U + T.u_plus.basis[b].scaled(ucoords[b]);
    return bch(V, U);
}

/// The chart map and its exact inverse as polynomial maps between weighted
/// spaces: source coordinates are the transversal and subalgebra coefficients
/// (sorted by weight), target coordinates are the canonical Lie algebra
/// coordinates.
struct ChartMaps {
    WeightedSpace chart_space;          // sorted (v, u) coordinate space
    std::vector<std::size_t> position;  // position[k] = sorted slot of concatenated (v,u) index k
    PolyMap forward;                    // chart_space -> coord_space of the algebra
    PolyMap inverse;                    // coord_space -> chart_space
};

namespace detail {

inline Poly<Rational> poly_const_of(std::size_t dim, const Rational& q) {
    return Poly<Rational>::constant(dim, q);
}

}  // namespace detail

inline ChartMaps chart_polymaps(const TransversalChart& T) {
    validate_chart(T);
    const WeightedSpace& V = T.u_plus.space;
    FieldBasis FB = field_basis(V);
    LinBasis B = enumerate_basis(V);
    const std::size_t nvars = T.transversal.size() + T.u_plus.basis.size();
    if (nvars != FB.size()) throw std::invalid_argument("chart_polymaps: chart is not complementary");

    // chart coordinate weights, concatenated (v-block, u-block)
    std::vector<Rational> lam;
    std::vector<std::string> raw_names;
    for (std::size_t a = 0; a < T.transversal.size(); ++a) {
        auto w = T.transversal[a].weight();
        if (!w) throw std::invalid_argument("chart_polymaps: zero transversal basis field");
        lam.push_back(-*w);
        raw_names.push_back("v" + std::to_string(a + 1));
    }
    for (std::size_t b = 0; b < T.u_plus.basis.size(); ++b) {
        auto w = T.u_plus.basis[b].weight();
        if (!w) throw std::invalid_argument("chart_polymaps: zero subalgebra basis field");
        lam.push_back(-*w);
        raw_names.push_back("u" + std::to_string(b + 1));
    }
    // sort coordinates by weight, non-increasing (stable: v-block first on ties)
    std::vector<std::size_t> order(nvars);
    for (std::size_t k = 0; k < nvars; ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lam[a] > lam[b]; });
    std::vector<std::size_t> position(nvars);
    std::vector<std::string> names(nvars);
    std::vector<Rational> weights(nvars);
    for (std::size_t slot = 0; slot < nvars; ++slot) {
        position[order[slot]] = slot;
        names[slot] = raw_names[order[slot]];
        weights[slot] = lam[order[slot]];
    }
    WeightedSpace chart_space(names, weights);
    if (chart_space.weights != FB.coord_space.weights)
        throw std::invalid_argument(
            "chart_polymaps: basis fields are not weight-adapted (weight multiset mismatch)");

    // symbolic exponentials: matrices over polynomials in the chart variables
    using P = Poly<Rational>;
    auto scalar = [&](const Rational& q) { return detail::poly_const_of(nvars, q); };
    auto symbolic_combination = [&](std::size_t first, const std::vector<SsrVectorField>& fields) {
        Matrix<P> D(B.size(), B.size());
        for (std::size_t b = 0; b < fields.size(); ++b) {
            Matrix<Rational> Db = derivation_matrix(fields[b], B);
            P var = P::var(nvars, position[first + b]);
            for (std::size_t i = 0; i < B.size(); ++i)
                for (std::size_t j = 0; j < B.size(); ++j)
                    if (Db(i, j) != 0) D(i, j) = D(i, j) + var.scaled(Db(i, j));
        }
        return D;
    };
    Matrix<P> Dv = symbolic_combination(0, T.transversal);
    Matrix<P> Du = symbolic_combination(T.transversal.size(), T.u_plus.basis);
    // bch(v, u): flow of v first, then u; in the row convention the pullback
    // matrix of (G after F) is mat(G) * mat(F)
    Matrix<P> M = matrix_exp_nilpotent(Du, scalar) * matrix_exp_nilpotent(Dv, scalar);
    Matrix<P> L = matrix_log_unipotent(M, scalar);

    // canonical Lie algebra coordinates of log(exp v o exp u), polynomial in
    // the chart variables
    std::vector<Poly<Rational>> comp(FB.size());
    for (std::size_t k = 0; k < FB.size(); ++k) {
        const auto& [dir, m] = FB.entries[k];
        std::size_t row = B.index_of(Monomial::var(V.dim(), dir));
        std::size_t colm = B.index_of(m);
        comp[k] = L(row, colm);
    }
    PolyMap forward(chart_space, FB.coord_space, std::move(comp));
    if (!classify(forward).subresonant)
        throw std::logic_error("chart_polymaps: chart map escaped the weight budget");

    // invert: forward = L o U with L the linear part (a basis-change matrix)
    // and U unipotent in chart coordinates
    Matrix<Rational> Lmat(FB.size(), nvars);
    for (std::size_t k = 0; k < FB.size(); ++k)
        for (std::size_t jv = 0; jv < nvars; ++jv)
            Lmat(k, jv) = forward.comp[k].coeff(Monomial::var(nvars, jv));
    auto Linv = matrix_inverse(Lmat);
    if (!Linv) throw std::logic_error("chart_polymaps: singular linear part");
    PolyMap LinvMap = linear_polymap(FB.coord_space, chart_space, *Linv);
    PolyMap U = compose(LinvMap, forward);
    PolyMap inverse = compose(detail::invert_unipotent(U), LinvMap);
    return ChartMaps{chart_space, position, std::move(forward), std::move(inverse)};
}

/// Canonical coset representative: the unique transversal coordinates v with
/// exp(n) in exp(v) exp(u_plus). Two fields in the same right coset reduce
/// identically.
inline std::vector<Rational> coset_reduce(const TransversalChart& T, const SsrVectorField& n) {
    FieldBasis FB = field_basis(T.u_plus.space);
    std::vector<std::vector<Rational>> vrows, urows;
    for (const auto& X : T.transversal) vrows.push_back(field_to_coords(X, FB));
    for (const auto& X : T.u_plus.basis) urows.push_back(field_to_coords(X, FB));
    std::vector<std::vector<Rational>> all = vrows;
    all.insert(all.end(), urows.begin(), urows.end());

    // linear split helper: coordinates of a field in the combined basis
    auto split = [&](const SsrVectorField& X) {
        auto c = detail::coords_in_span(all, field_to_coords(X, FB));
        if (!c) throw std::invalid_argument("coset_reduce: transversal is not complementary");
        return *c;
    };

    std::vector<Rational> v(vrows.size(), Rational(0));
    {
        std::vector<Rational> c = split(n);
        for (std::size_t a = 0; a < vrows.size(); ++a) v[a] = c[a];
    }
    const std::size_t cap = FB.size() + 3;
    for (std::size_t pass = 0; pass < cap; ++pass) {
        SsrVectorField Vf = SsrVectorField::zero(T.u_plus.space);
        for (std::size_t a = 0; a < v.size(); ++a) Vf = Vf + T.transversal[a].scaled(v[a]);
        SsrVectorField rem = bch(Vf.scaled(Rational(-1)), n);  // log(exp(-v) o exp(n))
        std::vector<Rational> c = split(rem);
        bool clean = true;
        for (std::size_t a = 0; a < vrows.size(); ++a)
            if (c[a] != 0) {
                clean = false;
                v[a] += c[a];
            }
        if (clean) return v;
    }
    throw std::runtime_error("coset_reduce: did not stabilize within the nilpotency bound");
}

// ---------------------------------------------------------------------------
// Haar measure in exponential coordinates
// ---------------------------------------------------------------------------

/// A product of rational intervals in the subalgebra basis coordinates.
struct Box {
    std::vector<std::pair<Rational, Rational>> intervals;
};

inline Rational haar_volume(const Subalgebra& S, const Box& box) {
    if (box.intervals.size() != S.basis.size())
        throw std::invalid_argument("haar_volume: box dimension mismatch");
    Rational vol = 1;
    for (const auto& [lo, hi] : box.intervals) {
        if (hi <= lo) throw std::invalid_argument("haar_volume: degenerate box");
        vol *= hi - lo;
    }
    return vol;
}

/// Jacobian determinant of left translation by exp(u0) in exponential
/// coordinates, as an exact polynomial in the coordinates. Unipotent change
/// of variables: identically 1, so Haar volume is translation invariant.
inline Poly<Rational> left_translation_jacobian(const Subalgebra& S, const std::vector<Rational>& u0) {
    if (u0.size() != S.basis.size()) throw std::invalid_argument("left_translation_jacobian: size mismatch");
    const WeightedSpace& V = S.space;
    FieldBasis FB = field_basis(V);
    validate_subalgebra(S, FB);
    LinBasis B = enumerate_basis(V);
    const std::size_t j = S.basis.size();
    using P = Poly<Rational>;
    auto scalar = [&](const Rational& q) { return P::constant(j, q); };

    Matrix<Rational> D0(B.size(), B.size());
    for (std::size_t b = 0; b < j; ++b) {
        Matrix<Rational> Db = derivation_matrix(S.basis[b].scaled(u0[b]), B);
        D0 = D0 + Db;
    }
    Matrix<Rational> M0r = matrix_exp_nilpotent(D0, rational_scalar);
    Matrix<P> M0(B.size(), B.size());
    for (std::size_t r = 0; r < B.size(); ++r)
        for (std::size_t c = 0; c < B.size(); ++c)
            if (M0r(r, c) != 0) M0(r, c) = P::constant(j, M0r(r, c));

    Matrix<P> Du(B.size(), B.size());
    for (std::size_t b = 0; b < j; ++b) {
        Matrix<Rational> Db = derivation_matrix(S.basis[b], B);
        P var = P::var(j, b);
        for (std::size_t r = 0; r < B.size(); ++r)
            for (std::size_t c = 0; c < B.size(); ++c)
                if (Db(r, c) != 0) Du(r, c) = Du(r, c) + var.scaled(Db(r, c));
    }
    Matrix<P> M = matrix_exp_nilpotent(Du, scalar) * M0;
    Matrix<P> L = matrix_log_unipotent(M, scalar);

    // canonical coordinates of bch(u0, u), then subalgebra coordinates
    std::vector<P> canonical(FB.size());
    for (std::size_t k = 0; k < FB.size(); ++k) {
        const auto& [dir, m] = FB.entries[k];
        canonical[k] = L(B.index_of(Monomial::var(V.dim(), dir)), B.index_of(m));
    }
    // solve C * x = canonical with C the (canonical x j) basis matrix of the
    // subalgebra; entries of x are polynomials in u
    Matrix<Rational> C(FB.size(), j);
    for (std::size_t b = 0; b < j; ++b) {
        std::vector<Rational> col = field_to_coords(S.basis[b], FB);
        for (std::size_t r = 0; r < FB.size(); ++r) C(r, b) = col[r];
    }
    // row-reduce [C | canonical] treating canonical entries as ring elements
    std::vector<P> rhs = canonical;
    Matrix<Rational> A = C;
    std::vector<std::size_t> pivot_rows;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < j && rank < A.rows; ++col) {
        std::size_t piv = rank;
        while (piv < A.rows && A(piv, col) == 0) ++piv;
        if (piv == A.rows) throw std::logic_error("left_translation_jacobian: singular basis matrix");
        if (piv != rank) {
            for (std::size_t cc = 0; cc < j; ++cc) std::swap(A.a[piv * j + cc], A.a[rank * j + cc]);
            std::swap(rhs[piv], rhs[rank]);
        }
        Rational d = A(rank, col);
        for (std::size_t cc = 0; cc < j; ++cc) A(rank, cc) /= d;
        rhs[rank] = rhs[rank].scaled(Rational(1) / d);
        for (std::size_t rr = 0; rr < A.rows; ++rr) {
            if (rr == rank || A(rr, col) == 0) continue;
            Rational f = A(rr, col);
            for (std::size_t cc = 0; cc < j; ++cc) A(rr, cc) -= f * A(rank, cc);
            rhs[rr] = rhs[rr] - rhs[rank].scaled(f);
        }
        pivot_rows.push_back(rank);
        ++rank;
    }
    // consistency: non-pivot rows must have vanished (bch stays in the subalgebra)
    for (std::size_t r = rank; r < A.rows; ++r)
        if (!rhs[r].is_zero()) throw std::logic_error("left_translation_jacobian: bch left the subalgebra");
    std::vector<P> x(rhs.begin(), rhs.begin() + j);

    // Jacobian determinant by cofactor expansion (small dimensions)
    std::vector<std::vector<P>> J(j, std::vector<P>(j));
    for (std::size_t r = 0; r < j; ++r)
        for (std::size_t c = 0; c < j; ++c) J[r][c] = poly_partial(x[r], c);
    std::vector<std::size_t> cols(j);
    for (std::size_t c = 0; c < j; ++c) cols[c] = c;
    std::function<P(std::size_t, std::vector<std::size_t>&)> det = [&](std::size_t row,
                                                                       std::vector<std::size_t>& avail) -> P {
        if (avail.empty()) return P::constant(j, 1);
        P acc;
        for (std::size_t idx = 0; idx < avail.size(); ++idx) {
            std::size_t c = avail[idx];
            if (J[row][c].is_zero()) continue;
            std::vector<std::size_t> rest;
            for (std::size_t t = 0; t < avail.size(); ++t)
                if (t != idx) rest.push_back(avail[t]);
            P sub = det(row + 1, rest);
            P contrib = J[row][c] * sub;
            if (idx % 2 == 1) contrib = contrib.scaled(Rational(-1));
            acc = acc + contrib;
        }
        return acc;
    };
    return det(0, cols);
}

}  // namespace subres
