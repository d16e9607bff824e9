#include <catch2/catch_amalgamated.hpp>

#include "subres/battery.hpp"
#include "subres/polymap.hpp"
#include "subres/prng.hpp"
#include "subres/serialization_fwd.hpp"

using namespace subres;

namespace {

WeightedSpace space321() {
    return WeightedSpace({"x", "y", "z"}, {rat(3), rat(2), rat(1)});
}

WeightedSpace space21() { return WeightedSpace({"x", "y"}, {rat(2), rat(1)}); }

PolyMap from_text(const std::string& t, const WeightedSpace& V) { return polymap_from_text(t, V, V); }

}  // namespace

TEST_CASE("monomial weights") {
    WeightedSpace V = space321();
    CHECK(monomial_weight(Monomial({0, 1, 1}), V) == rat(3));
    CHECK(monomial_weight(Monomial({0, 0, 0}), V) == rat(0));
    CHECK(monomial_weight(Monomial({1, 0, 0}), V) == rat(3));
    CHECK_THROWS(monomial_weight(Monomial({1, 0}), V));
}

TEST_CASE("weighted space validation") {
    CHECK_THROWS(WeightedSpace({"x"}, {rat(0)}));
    CHECK_THROWS(WeightedSpace({"x", "y"}, {rat(1), rat(2)}));  // must be non-increasing
    CHECK_THROWS(WeightedSpace({"x", "y"}, {rat(1)}));
    CHECK_NOTHROW(WeightedSpace({"x", "y"}, {rat(2), rat(2)}));  // repeated weights allowed
}

TEST_CASE("classification") {
    WeightedSpace V = space321();

    SECTION("resonant cross term: weight(yz) = 3 = budget of x") {
        PolyMap F = from_text("x <- 1 * x ; x <- 5/2 * y z ; y <- 1 * y ; z <- 1 * z", V);
        Classification c = classify(F);
        CHECK(c.subresonant);
        CHECK(c.resonant);
        CHECK_FALSE(c.strictly_subresonant);
        CHECK(c.tightest() == Classification::Tightest::Resonant);
    }

    SECTION("weight(y^2) = 4 > 3 escapes the budget") {
        PolyMap F = from_text("x <- 1 * x ; x <- 1 * y^2 ; y <- 1 * y ; z <- 1 * z", V);
        Classification c = classify(F);
        CHECK(c.none());
        CHECK(c.tightest() == Classification::Tightest::None);
    }

    SECTION("identity carries all three flags") {
        Classification c = classify(PolyMap::identity(V));
        CHECK(c.subresonant);
        CHECK(c.resonant);
        CHECK(c.strictly_subresonant);
    }

    SECTION("translations are strictly subresonant but not resonant") {
        PolyMap t = PolyMap::translation(V, {rat(1), rat(-2), rat(1, 3)});
        Classification c = classify(t);
        CHECK(c.subresonant);
        CHECK(c.strictly_subresonant);
        CHECK_FALSE(c.resonant);
    }
}

TEST_CASE("composition") {
    WeightedSpace V = space21();
    PolyMap id = PolyMap::identity(V);

    SECTION("F after identity is F") {
        PolyMap F = from_text("x <- 1 * x ; x <- 3/4 * y^2 ; y <- 1 * y", V);
        CHECK(compose(F, id).comp == F.comp);
        CHECK(compose(id, F).comp == F.comp);
    }

    SECTION("unipotent quadratic terms add") {
        PolyMap F = from_text("x <- 1 * x ; x <- 2 * y^2 ; y <- 1 * y", V);
        PolyMap G = from_text("x <- 1 * x ; x <- 5 * y^2 ; y <- 1 * y", V);
        PolyMap FG = compose(F, G);
        CHECK(FG.comp == from_text("x <- 1 * x ; x <- 7 * y^2 ; y <- 1 * y", V).comp);
    }

    SECTION("translations compose additively") {
        PolyMap tu = PolyMap::translation(V, {rat(1), rat(2)});
        PolyMap tv = PolyMap::translation(V, {rat(-3), rat(5, 2)});
        CHECK(compose(tu, tv).comp == PolyMap::translation(V, {rat(-2), rat(9, 2)}).comp);
    }

    SECTION("substitution agrees with pointwise evaluation") {
        SplitMix64 rng(11);
        WeightedSpace W = space321();
        for (int s = 0; s < 50; ++s) {
            PolyMap F = random_subresonant(W, rng);
            PolyMap G = random_subresonant(W, rng);
            PolyMap FG = compose(F, G);
            std::vector<Rational> v = random_point(W, rng);
            CHECK(eval(FG, v) == eval(F, eval(G, v)));
        }
    }
}

TEST_CASE("strictly subresonant inversion") {
    SECTION("identity") {
        WeightedSpace V = space21();
        CHECK(invert_ssr(PolyMap::identity(V)).comp == PolyMap::identity(V).comp);
    }

    SECTION("one-step nilpotent") {
        WeightedSpace V = space21();
        PolyMap F = from_text("x <- 1 * x ; x <- 7/3 * y^2 ; y <- 1 * y", V);
        CHECK(invert_ssr(F).comp == from_text("x <- 1 * x ; x <- -7/3 * y^2 ; y <- 1 * y", V).comp);
    }

    SECTION("two-step back-substitution") {
        WeightedSpace V = space321();
        PolyMap F = from_text("x <- 1 * x ; x <- 1 * y z ; y <- 1 * y ; y <- 1 * z^2 ; z <- 1 * z", V);
        PolyMap G = invert_ssr(F);
        PolyMap expected =
            from_text("x <- 1 * x ; x <- -1 * y z ; x <- 1 * z^3 ; y <- 1 * y ; y <- -1 * z^2 ; z <- 1 * z", V);
        CHECK(G.comp == expected.comp);
        CHECK(compose(F, G).comp == PolyMap::identity(V).comp);
        CHECK(compose(G, F).comp == PolyMap::identity(V).comp);
    }

    SECTION("rejects non-strict input") {
        WeightedSpace V = space21();
        PolyMap F = from_text("x <- 2 * x ; y <- 1 * y", V);
        CHECK_THROWS(invert_ssr(F));
    }
}

TEST_CASE("differential") {
    SECTION("no linear cross terms at the origin") {
        WeightedSpace V = space321();
        PolyMap F = from_text("x <- 1 * x ; x <- 4 * y z ; y <- 1 * y ; z <- 1 * z", V);
        Matrix<Rational> D = differential_at(F, {rat(0), rat(0), rat(0)});
        CHECK(D == Matrix<Rational>::identity(3));
    }

    SECTION("linear maps are their own differential everywhere") {
        WeightedSpace V = space21();
        PolyMap L = from_text("x <- 3 * x ; x <- 2 * y^2 ; y <- 5 * y", V);
        PolyMap Lin = from_text("x <- 3 * x ; y <- 5 * y", V);
        Matrix<Rational> D = differential_at(Lin, {rat(7), rat(-2)});
        CHECK(D(0, 0) == rat(3));
        CHECK(D(0, 1) == rat(0));
        CHECK(D(1, 0) == rat(0));
        CHECK(D(1, 1) == rat(5));
        (void)L;
    }

    SECTION("quadratic term contributes 2a y at (0,1)") {
        WeightedSpace V = space21();
        PolyMap F = from_text("x <- 1 * x ; x <- 5/2 * y^2 ; y <- 1 * y", V);
        Matrix<Rational> D = differential_at(F, {rat(0), rat(1)});
        CHECK(D(0, 0) == rat(1));
        CHECK(D(0, 1) == rat(5));  // 2a with a = 5/2
        CHECK(D(1, 0) == rat(0));
        CHECK(D(1, 1) == rat(1));
    }

    SECTION("interpolation oracle: directional derivatives on random maps") {
        // restrict to a line p + t e_j, interpolate the univariate polynomial
        // exactly, and read off the linear coefficient
        WeightedSpace V = space321();
        SplitMix64 rng(23);
        for (int s = 0; s < 20; ++s) {
            PolyMap F = random_subresonant(V, rng);
            std::vector<Rational> p = random_point(V, rng);
            Matrix<Rational> D = differential_at(F, p);
            for (std::size_t j = 0; j < V.dim(); ++j) {
                // evaluate at p + t e_j for t = 1..deg+1 and solve the Vandermonde system
                unsigned deg = 0;
                for (const auto& c : F.comp) deg = std::max(deg, poly_degree(c));
                std::size_t n = deg + 1;
                for (std::size_t i = 0; i < F.comp.size(); ++i) {
                    Matrix<Rational> Vand(n, n);
                    std::vector<Rational> rhs(n);
                    for (std::size_t row = 0; row < n; ++row) {
                        Rational t(static_cast<long long>(row + 1));
                        Rational tp = 1;
                        for (std::size_t col = 0; col < n; ++col) {
                            Vand(row, col) = tp;
                            tp *= t;
                        }
                        std::vector<Rational> q = p;
                        q[j] += t;
                        rhs[row] = poly_eval(F.comp[i], q) - poly_eval(F.comp[i], p);
                    }
                    auto sol = matrix_solve(Vand, rhs);
                    REQUIRE(sol.has_value());
                    CHECK((*sol)[1] == D(i, j));  // linear coefficient of the restriction
                }
            }
        }
    }
}

TEST_CASE("quotient maps") {
    WeightedSpace V = space321();

    SECTION("identity descends to the identity") {
        PolyMap q = quotient_map(PolyMap::identity(V), rat(3));
        CHECK(q.source.dim() == 2);
        CHECK(q.comp == PolyMap::identity(q.source).comp);
    }

    SECTION("killing the deepest direction drops the first component") {
        PolyMap F = from_text("x <- 1 * x ; x <- 1 * y z ; y <- 1 * y ; y <- 1 * z^2 ; z <- 1 * z", V);
        PolyMap q = quotient_map(F, rat(3));
        WeightedSpace Q = q.source;
        CHECK(Q.coords == std::vector<std::string>{"y", "z"});
        CHECK(q.comp == polymap_from_text("y <- 1 * y ; y <- 1 * z^2 ; z <- 1 * z", Q, Q).comp);
    }

    SECTION("translations descend to projected translations") {
        PolyMap t = PolyMap::translation(V, {rat(5), rat(7), rat(9)});
        PolyMap q = quotient_map(t, rat(2));
        CHECK(q.comp == PolyMap::translation(q.source, {rat(9)}).comp);
    }

    SECTION("evaluation commutes with the quotient projection") {
        SplitMix64 rng(7);
        for (int s = 0; s < 30; ++s) {
            PolyMap F = random_subresonant(V, rng);
            Rational lambda = rat(2);
            PolyMap q = quotient_map(F, lambda);
            std::vector<Rational> v = random_point(V, rng);
            std::vector<Rational> Fv = eval(F, v);
            // project = keep coordinates of weight < lambda
            std::vector<Rational> pv, pFv;
            for (std::size_t i = 0; i < V.dim(); ++i)
                if (V.weights[i] < lambda) pv.push_back(v[i]);
            for (std::size_t i = 0; i < V.dim(); ++i)
                if (V.weights[i] < lambda) pFv.push_back(Fv[i]);
            CHECK(eval(q, pv) == pFv);
        }
    }

    SECTION("rejects a non-filtration weight") {
        CHECK_THROWS(quotient_map(PolyMap::identity(V), rat(5, 2)));
    }
}

TEST_CASE("resonant / strictly subresonant decomposition") {
    WeightedSpace V = space21();

    SECTION("resonant map decomposes as (F, id)") {
        PolyMap F = from_text("x <- 2 * x ; x <- 3 * y^2 ; y <- 5 * y", V);
        REQUIRE(classify(F).resonant);
        SrDecomposition d = sr_decompose(F);
        CHECK(d.resonant.comp == F.comp);
        CHECK(d.strictly_subresonant.comp == PolyMap::identity(V).comp);
    }

    SECTION("strictly subresonant map decomposes as (id, F)") {
        PolyMap F = from_text("x <- 1 * x ; x <- 4 * y ; y <- 1 * y ; y <- -2 * 1", V);
        REQUIRE(classify(F).strictly_subresonant);
        SrDecomposition d = sr_decompose(F);
        CHECK(d.resonant.comp == PolyMap::identity(V).comp);
        CHECK(d.strictly_subresonant.comp == F.comp);
    }

    SECTION("singular differential is rejected") {
        PolyMap F = from_text("x <- 1 * y^2 ; y <- 1 * y", V);
        CHECK_THROWS(sr_decompose(F));
    }

    SECTION("general subresonant inverse") {
        SplitMix64 rng(31);
        WeightedSpace W = space321();
        for (int s = 0; s < 20; ++s) {
            PolyMap F = random_subresonant(W, rng);
            PolyMap G = invert_subresonant(F);
            CHECK(compose(F, G).comp == PolyMap::identity(W).comp);
            CHECK(compose(G, F).comp == PolyMap::identity(W).comp);
        }
    }
}

TEST_CASE("textual serialization round-trips bit-exactly") {
    WeightedSpace V = space321();
    SplitMix64 rng(101);
    for (int s = 0; s < 40; ++s) {
        PolyMap F = random_subresonant(V, rng);
        std::string text = polymap_to_text(F);
        PolyMap back = polymap_from_text(text, V, V);
        CHECK(back.comp == F.comp);
        CHECK(polymap_to_text(back) == text);
    }
}

TEST_CASE("small algebra battery stays exact") {
    WeightedSpace V = space321();
    SplitMix64 rng(5);
    auto results = run_algebra_battery(V, 40, rng);
    for (const auto& r : results) {
        INFO(r.law);
        CHECK(r.ok());
    }
}
