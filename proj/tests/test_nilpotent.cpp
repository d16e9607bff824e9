#include <catch2/catch_amalgamated.hpp>

#include "subres/battery.hpp"
#include "subres/nilpotent.hpp"
#include "subres/prng.hpp"
#include "subres/serialization_fwd.hpp"
#include "subres/vectorfield.hpp"

using namespace subres;

namespace {

WeightedSpace space321() { return WeightedSpace({"x", "y", "z"}, {rat(3), rat(2), rat(1)}); }
WeightedSpace space21() { return WeightedSpace({"x", "y"}, {rat(2), rat(1)}); }

SsrVectorField field_zdy(const WeightedSpace& V) {
    // z d/dy
    std::vector<Poly<Rational>> c(V.dim());
    c[1] = Poly<Rational>::var(3, 2);
    return SsrVectorField(V, std::move(c));
}

SsrVectorField field_ydx(const WeightedSpace& V) {
    // y d/dx
    std::vector<Poly<Rational>> c(V.dim());
    c[0] = Poly<Rational>::var(3, 1);
    return SsrVectorField(V, std::move(c));
}

SsrVectorField field_zdx(const WeightedSpace& V) {
    std::vector<Poly<Rational>> c(V.dim());
    c[0] = Poly<Rational>::var(3, 2);
    return SsrVectorField(V, std::move(c));
}

/// Random strictly negative weight field, every admissible term with
/// probability 1/2.
SsrVectorField random_strict_field(const WeightedSpace& V, SplitMix64& rng) {
    FieldBasis FB = field_basis(V);
    std::vector<Poly<Rational>> c(V.dim());
    for (const auto& [dir, m] : FB.entries)
        if (rng.below(2) == 0) c[dir].add_term(m, rng.rational(4, 3));
    return SsrVectorField(V, std::move(c));
}

/// Time-1 flow by Picard iteration on the t-series, an ODE route independent
/// of the derivation-matrix exponential.
PolyMap picard_flow(const SsrVectorField& X) {
    const std::size_t n = X.space.dim();
    const std::size_t tcap = enumerate_basis(X.space).size() + 2;
    using Series = std::vector<std::vector<Poly<Rational>>>;  // [t-power][component]
    auto zero_series = [&] { return Series(tcap + 1, std::vector<Poly<Rational>>(n)); };

    Series phi = zero_series();
    for (std::size_t i = 0; i < n; ++i) phi[0][i] = Poly<Rational>::var(n, i);

    auto mul_tseries = [&](const std::vector<Poly<Rational>>& a, const std::vector<Poly<Rational>>& b) {
        std::vector<Poly<Rational>> out(tcap + 1);
        for (std::size_t i = 0; i <= tcap; ++i)
            for (std::size_t j = 0; i + j <= tcap; ++j)
                if (!a[i].is_zero() && !b[j].is_zero()) out[i + j] = out[i + j] + a[i] * b[j];
        return out;
    };

    for (std::size_t pass = 0; pass < tcap + 2; ++pass) {
        // Y = X(phi)
        Series Y = zero_series();
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& [m, coef] : X.comp[i].terms) {
                std::vector<Poly<Rational>> prod(tcap + 1);
                prod[0] = Poly<Rational>::constant(n, coef);
                for (std::size_t j = 0; j < n; ++j) {
                    std::vector<Poly<Rational>> var_series(tcap + 1);
                    for (std::size_t k = 0; k <= tcap; ++k) var_series[k] = phi[k][j];
                    for (unsigned e = 0; e < m.exps[j]; ++e) prod = mul_tseries(prod, var_series);
                }
                for (std::size_t k = 0; k <= tcap; ++k) Y[k][i] = Y[k][i] + prod[k];
            }
        }
        // phi_next = id + integral of Y
        Series next = zero_series();
        for (std::size_t i = 0; i < n; ++i) next[0][i] = Poly<Rational>::var(n, i);
        for (std::size_t k = 0; k + 1 <= tcap; ++k)
            for (std::size_t i = 0; i < n; ++i)
                next[k + 1][i] = Y[k][i].scaled(Rational(1) / Rational(static_cast<long long>(k + 1)));
        if (next == phi) break;
        phi = std::move(next);
    }
    // evaluate at t = 1
    std::vector<Poly<Rational>> comp(n);
    for (std::size_t k = 0; k <= tcap; ++k)
        for (std::size_t i = 0; i < n; ++i) comp[i] = comp[i] + phi[k][i];
    return PolyMap(X.space, X.space, std::move(comp));
}

/// Truncated commutator series through depth-3 brackets (exact when all
/// depth-4 brackets vanish): X + Y + [X,Y]/2 + ([X,[X,Y]] + [Y,[Y,X]])/12.
SsrVectorField bch_series_oracle(const SsrVectorField& X, const SsrVectorField& Y) {
    SsrVectorField xy = bracket(X, Y);
    SsrVectorField xxy = bracket(X, xy);
    SsrVectorField yyx = bracket(Y, bracket(Y, X));
    return X + Y + xy.scaled(rat(1, 2)) + (xxy + yyx).scaled(rat(1, 12));
}

}  // namespace

TEST_CASE("bracket calculus") {
    WeightedSpace V = space321();

    SECTION("antisymmetry kills the diagonal") {
        SplitMix64 rng(2);
        for (int s = 0; s < 20; ++s) {
            SsrVectorField X = random_strict_field(V, rng);
            CHECK(bracket(X, X).is_zero());
        }
    }

    SECTION("frozen commutator: [z dy, y dx] = z dx") {
        CHECK(bracket(field_zdy(V), field_ydx(V)) == field_zdx(V));
    }

    SECTION("depth-four brackets vanish by weight bookkeeping") {
        SplitMix64 rng(4);
        for (int s = 0; s < 25; ++s) {
            SsrVectorField a = random_strict_field(V, rng);
            SsrVectorField b = random_strict_field(V, rng);
            SsrVectorField c = random_strict_field(V, rng);
            SsrVectorField d = random_strict_field(V, rng);
            CHECK(bracket(bracket(bracket(a, b), c), d).is_zero());
        }
    }

    SECTION("jacobi identity on random triples") {
        SplitMix64 rng(6);
        for (int s = 0; s < 30; ++s) {
            SsrVectorField X = random_strict_field(V, rng);
            SsrVectorField Y = random_strict_field(V, rng);
            SsrVectorField Z = random_strict_field(V, rng);
            SsrVectorField j = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y));
            CHECK(j.is_zero());
        }
    }

    SECTION("dimension mismatch is rejected") {
        SsrVectorField X = field_zdy(V);
        SsrVectorField W = SsrVectorField::zero(space21());
        CHECK_THROWS(bracket(X, W));
    }
}

TEST_CASE("exponential of nilpotent fields") {
    WeightedSpace V = space321();

    SECTION("exp(0) = id") {
        CHECK(exp_ssr(SsrVectorField::zero(V)).comp == PolyMap::identity(V).comp);
    }

    SECTION("linear flow: exp(t z dy) = (x, y + t z, z)") {
        PolyMap F = exp_ssr(field_zdy(V).scaled(rat(7, 3)));
        PolyMap expected = polymap_from_text("x <- 1 * x ; y <- 1 * y ; y <- 7/3 * z ; z <- 1 * z", V, V);
        CHECK(F.comp == expected.comp);
    }

    SECTION("coupled flow picks up the second-order term z/2") {
        PolyMap F = exp_ssr(field_zdy(V) + field_ydx(V));
        PolyMap expected = polymap_from_text(
            "x <- 1 * x ; x <- 1 * y ; x <- 1/2 * z ; y <- 1 * y ; y <- 1 * z ; z <- 1 * z", V, V);
        CHECK(F.comp == expected.comp);
    }

    SECTION("one-parameter group law") {
        SplitMix64 rng(8);
        for (int s = 0; s < 15; ++s) {
            SsrVectorField X = random_strict_field(V, rng);
            Rational a = rng.rational(3, 2), b = rng.rational(3, 2);
            CHECK(compose(exp_ssr(X.scaled(a)), exp_ssr(X.scaled(b))).comp ==
                  exp_ssr(X.scaled(a + b)).comp);
        }
    }

    SECTION("matrix-exponential route agrees with Picard integration") {
        SplitMix64 rng(10);
        for (int s = 0; s < 15; ++s) {
            SsrVectorField X = random_strict_field(V, rng);
            CHECK(exp_ssr(X).comp == picard_flow(X).comp);
        }
    }
}

TEST_CASE("logarithm") {
    WeightedSpace V = space21();

    SECTION("log(id) = 0") {
        CHECK(log_ssr(PolyMap::identity(V)).is_zero());
    }

    SECTION("one-step nilpotency: log(x + a y^2, y) = a y^2 dx") {
        PolyMap F = polymap_from_text("x <- 1 * x ; x <- -5/2 * y^2 ; y <- 1 * y", V, V);
        SsrVectorField X = log_ssr(F);
        std::vector<Poly<Rational>> c(2);
        c[0].add_term(Monomial({0, 2}), rat(-5, 2));
        CHECK(X == SsrVectorField(V, std::move(c)));
    }

    SECTION("round trips") {
        SplitMix64 rng(12);
        WeightedSpace W = space321();
        for (int s = 0; s < 40; ++s) {
            SsrVectorField X = random_strict_field(W, rng);
            CHECK(log_ssr(exp_ssr(X)) == X);
        }
        for (int s = 0; s < 40; ++s) {
            PolyMap F = random_ssr(W, rng);
            CHECK(exp_ssr(log_ssr(F)).comp == F.comp);
        }
    }

    SECTION("rejects maps with non-identity graded linear part") {
        PolyMap F = polymap_from_text("x <- 2 * x ; y <- 1 * y", V, V);
        CHECK_THROWS(log_ssr(F));
    }
}

TEST_CASE("baker-campbell-hausdorff") {
    WeightedSpace V = space321();

    SECTION("commuting fields add") {
        SsrVectorField X = field_zdx(V);
        std::vector<Poly<Rational>> c(3);
        c[0].add_term(Monomial({0, 0, 2}), rat(4));
        SsrVectorField Y(V, std::move(c));  // z^2 dx
        CHECK(bracket(X, Y).is_zero());
        CHECK(bch(X, Y) == X + Y);
    }

    SECTION("frozen value: bch(z dy, y dx) = z dy + y dx + (1/2) z dx") {
        SsrVectorField Z = bch(field_zdy(V), field_ydx(V));
        SsrVectorField expected = field_zdy(V) + field_ydx(V) + field_zdx(V).scaled(rat(1, 2));
        CHECK(Z == expected);
    }

    SECTION("bch(X, -X) = 0") {
        SplitMix64 rng(14);
        for (int s = 0; s < 20; ++s) {
            SsrVectorField X = random_strict_field(V, rng);
            CHECK(bch(X, X.scaled(rat(-1))).is_zero());
        }
    }

    SECTION("agrees with the truncated commutator series") {
        SplitMix64 rng(16);
        for (int s = 0; s < 25; ++s) {
            SsrVectorField X = random_strict_field(V, rng);
            SsrVectorField Y = random_strict_field(V, rng);
            // depth-4 brackets vanish on this profile, so the series is exact
            CHECK(bracket(bracket(bracket(X, Y), X), Y).is_zero());
            CHECK(bch(X, Y) == bch_series_oracle(X, Y));
        }
    }

    SECTION("associativity consequence") {
        SplitMix64 rng(18);
        for (int s = 0; s < 15; ++s) {
            SsrVectorField X = random_strict_field(V, rng);
            SsrVectorField Y = random_strict_field(V, rng);
            SsrVectorField Z = random_strict_field(V, rng);
            CHECK(bch(bch(X, Y), Z) == bch(X, bch(Y, Z)));
        }
    }
}

namespace {

Subalgebra heisenberg(const WeightedSpace& V) {
    return Subalgebra{V, {field_zdy(V), field_ydx(V), field_zdx(V)}};
}

}  // namespace

TEST_CASE("subalgebra validation") {
    WeightedSpace V = space321();
    FieldBasis FB = field_basis(V);

    SECTION("heisenberg triple is closed") {
        CHECK_NOTHROW(validate_subalgebra(heisenberg(V), FB));
    }

    SECTION("non-closed pair is rejected") {
        Subalgebra S{V, {field_zdy(V), field_ydx(V)}};
        CHECK_THROWS(validate_subalgebra(S, FB));
    }

    SECTION("dependent basis is rejected") {
        Subalgebra S{V, {field_zdx(V), field_zdx(V).scaled(rat(2))}};
        CHECK_THROWS(validate_subalgebra(S, FB));
    }
}

TEST_CASE("transversal charts") {
    WeightedSpace V = space321();
    Subalgebra S = heisenberg(V);
    TransversalChart T = make_transversal_chart(S);

    SECTION("default transversal satisfies the filtration dimension splitting") {
        CHECK(T.transversal.size() + S.basis.size() == field_basis(V).size());
        CHECK_NOTHROW(validate_chart(T));
    }

    SECTION("chart at u = 0 returns v, at v = 0 returns u") {
        SplitMix64 rng(20);
        std::vector<Rational> zero_u(S.basis.size(), rat(0));
        std::vector<Rational> zero_v(T.transversal.size(), rat(0));
        for (int s = 0; s < 10; ++s) {
            std::vector<Rational> v, u;
            for (std::size_t a = 0; a < T.transversal.size(); ++a) v.push_back(rng.rational(4, 3));
            for (std::size_t b = 0; b < S.basis.size(); ++b) u.push_back(rng.rational(4, 3));
            SsrVectorField onlyv = ch_chart(T, v, zero_u);
            SsrVectorField expectv = SsrVectorField::zero(V);
            for (std::size_t a = 0; a < v.size(); ++a) expectv = expectv + T.transversal[a].scaled(v[a]);
            CHECK(onlyv == expectv);
            SsrVectorField onlyu = ch_chart(T, zero_v, u);
            SsrVectorField expectu = SsrVectorField::zero(V);
            for (std::size_t b = 0; b < u.size(); ++b) expectu = expectu + S.basis[b].scaled(u[b]);
            CHECK(onlyu == expectu);
        }
    }

    SECTION("forward and inverse chart polymaps are subresonant and exactly inverse") {
        ChartMaps M = chart_polymaps(T);
        CHECK(classify(M.forward).subresonant);
        CHECK(classify(M.inverse).subresonant);
        CHECK(compose(M.inverse, M.forward).comp == PolyMap::identity(M.chart_space).comp);
        CHECK(compose(M.forward, M.inverse).comp == PolyMap::identity(M.forward.target).comp);

        // numeric consistency with the bch route
        SplitMix64 rng(22);
        FieldBasis FB = field_basis(V);
        for (int s = 0; s < 50; ++s) {
            std::vector<Rational> v, u;
            for (std::size_t a = 0; a < T.transversal.size(); ++a) v.push_back(rng.rational(3, 2));
            for (std::size_t b = 0; b < S.basis.size(); ++b) u.push_back(rng.rational(3, 2));
            std::vector<Rational> chart_coords(FB.size());
            for (std::size_t a = 0; a < v.size(); ++a) chart_coords[M.position[a]] = v[a];
            for (std::size_t b = 0; b < u.size(); ++b) chart_coords[M.position[v.size() + b]] = u[b];
            std::vector<Rational> n_coords = eval(M.forward, chart_coords);
            CHECK(field_from_coords(n_coords, FB) == ch_chart(T, v, u));
            CHECK(eval(M.inverse, n_coords) == chart_coords);
        }
    }

    SECTION("central subalgebra gives a strictly subresonant (linear) chart") {
        std::vector<Poly<Rational>> c(3);
        c[0] = Poly<Rational>::constant(3, rat(1));  // translations along the deepest direction
        Subalgebra Z{V, {SsrVectorField(V, std::move(c))}};
        ChartMaps M = chart_polymaps(make_transversal_chart(Z));
        CHECK(classify(M.forward).strictly_subresonant);
        CHECK(classify(M.inverse).strictly_subresonant);
    }

    SECTION("change of transversal is subresonant") {
        // second transversal: perturb a shallow basis vector by a deeper one
        TransversalChart T2 = T;
        REQUIRE(T2.transversal.size() == 4);
        // find a weight -1 vector and add a weight -2 subalgebra element
        std::size_t shallow = 0;
        bool found = false;
        for (std::size_t a = 0; a < T2.transversal.size(); ++a)
            if (*T2.transversal[a].weight() == rat(-1)) {
                shallow = a;
                found = true;
                break;
            }
        REQUIRE(found);
        T2.transversal[shallow] = T2.transversal[shallow] + field_zdx(V).scaled(rat(3));
        CHECK_NOTHROW(validate_chart(T2));

        ChartMaps M1 = chart_polymaps(T);
        ChartMaps M2 = chart_polymaps(T2);
        // composite chart_2 -> chart_1, restricted to the transversal block:
        // substitute u = 0, read off the v-components
        PolyMap across = compose(M1.inverse, M2.forward);
        const std::size_t nv = T.transversal.size();
        // build the v2 -> v1 map
        std::vector<Poly<Rational>> vcomp;
        std::vector<std::string> v1names, v2names;
        std::vector<Rational> v1w, v2w;
        for (std::size_t a = 0; a < nv; ++a) {
            v1names.push_back("a" + std::to_string(a + 1));
            v1w.push_back(-*T.transversal[a].weight());
            v2names.push_back("b" + std::to_string(a + 1));
            v2w.push_back(-*T2.transversal[a].weight());
        }
        // substitution: v2 variables keep their slot, u variables set to 0
        std::vector<Poly<Rational>> args(field_basis(V).size());
        std::vector<std::size_t> v2slot(nv);
        for (std::size_t k = 0; k < args.size(); ++k) args[k] = Poly<Rational>::zero();
        for (std::size_t a = 0; a < nv; ++a) v2slot[a] = M2.position[a];
        // sorted v2-only space
        std::vector<std::size_t> order(nv);
        for (std::size_t a = 0; a < nv; ++a) order[a] = a;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return v2w[x] > v2w[y]; });
        std::vector<std::string> v2sorted_names;
        std::vector<Rational> v2sorted_w;
        for (std::size_t r = 0; r < nv; ++r) {
            v2sorted_names.push_back(v2names[order[r]]);
            v2sorted_w.push_back(v2w[order[r]]);
        }
        WeightedSpace V2(v2sorted_names, v2sorted_w);
        for (std::size_t r = 0; r < nv; ++r) args[v2slot[order[r]]] = Poly<Rational>::var(nv, r);
        for (std::size_t a = 0; a < nv; ++a) {
            std::size_t slot1 = M1.position[a];
            vcomp.push_back(poly_substitute(across.comp[slot1], args, nv));
        }
        // sorted v1 space
        std::vector<std::size_t> order1(nv);
        for (std::size_t a = 0; a < nv; ++a) order1[a] = a;
        std::stable_sort(order1.begin(), order1.end(), [&](std::size_t x, std::size_t y) { return v1w[x] > v1w[y]; });
        std::vector<std::string> v1sorted_names;
        std::vector<Rational> v1sorted_w;
        std::vector<Poly<Rational>> vcomp_sorted;
        for (std::size_t r = 0; r < nv; ++r) {
            v1sorted_names.push_back(v1names[order1[r]]);
            v1sorted_w.push_back(v1w[order1[r]]);
            vcomp_sorted.push_back(vcomp[order1[r]]);
        }
        WeightedSpace V1(v1sorted_names, v1sorted_w);
        PolyMap change(V2, V1, vcomp_sorted);
        CHECK(classify(change).subresonant);
    }
}

TEST_CASE("coset reduction") {
    WeightedSpace V = space321();
    Subalgebra S = heisenberg(V);
    TransversalChart T = make_transversal_chart(S);
    SplitMix64 rng(24);

    SECTION("subalgebra elements reduce to zero") {
        for (int s = 0; s < 15; ++s) {
            SsrVectorField u = SsrVectorField::zero(V);
            for (const auto& b : S.basis) u = u + b.scaled(rng.rational(3, 2));
            std::vector<Rational> v = coset_reduce(T, u);
            for (const auto& c : v) CHECK(c == rat(0));
        }
    }

    SECTION("transversal elements reduce to their own coordinates") {
        for (int s = 0; s < 15; ++s) {
            std::vector<Rational> coords;
            SsrVectorField n = SsrVectorField::zero(V);
            for (const auto& b : T.transversal) {
                Rational c = rng.rational(3, 2);
                coords.push_back(c);
                n = n + b.scaled(c);
            }
            CHECK(coset_reduce(T, n) == coords);
        }
    }

    SECTION("invariance under right multiplication by the subalgebra") {
        for (int s = 0; s < 40; ++s) {
            SsrVectorField n = random_strict_field(V, rng);
            SsrVectorField u = SsrVectorField::zero(V);
            for (const auto& b : S.basis) u = u + b.scaled(rng.rational(3, 2));
            CHECK(coset_reduce(T, bch(n, u)) == coset_reduce(T, n));
        }
    }

    SECTION("agrees with the exact chart inverse") {
        ChartMaps M = chart_polymaps(T);
        FieldBasis FB = field_basis(V);
        for (int s = 0; s < 25; ++s) {
            SsrVectorField n = random_strict_field(V, rng);
            std::vector<Rational> chart_coords = eval(M.inverse, field_to_coords(n, FB));
            std::vector<Rational> v = coset_reduce(T, n);
            for (std::size_t a = 0; a < v.size(); ++a) CHECK(v[a] == chart_coords[M.position[a]]);
        }
    }
}

TEST_CASE("haar measure in exponential coordinates") {
    WeightedSpace V = space321();
    Subalgebra S = heisenberg(V);

    SECTION("unit box has volume one") {
        Box box{{{rat(0), rat(1)}, {rat(0), rat(1)}, {rat(0), rat(1)}}};
        CHECK(haar_volume(S, box) == rat(1));
    }

    SECTION("per-axis scaling multiplies the volume") {
        Box box{{{rat(0), rat(1, 2)}, {rat(-1), rat(1)}, {rat(0), rat(3)}}};
        CHECK(haar_volume(S, box) == rat(1, 2) * rat(2) * rat(3));
    }

    SECTION("degenerate boxes are rejected") {
        Box box{{{rat(0), rat(0)}, {rat(0), rat(1)}, {rat(0), rat(1)}}};
        CHECK_THROWS(haar_volume(S, box));
    }

    SECTION("left translation has unit jacobian, exactly") {
        SplitMix64 rng(26);
        for (int s = 0; s < 10; ++s) {
            std::vector<Rational> u0;
            for (std::size_t b = 0; b < S.basis.size(); ++b) u0.push_back(rng.rational(4, 3));
            Poly<Rational> det = left_translation_jacobian(S, u0);
            CHECK(det == Poly<Rational>::constant(S.basis.size(), rat(1)));
        }
    }
}
