#include <catch2/catch_amalgamated.hpp>

#include "subres/battery.hpp"
#include "subres/linearize.hpp"
#include "subres/serialization_fwd.hpp"

using namespace subres;

namespace {

WeightedSpace space321() { return WeightedSpace({"x", "y", "z"}, {rat(3), rat(2), rat(1)}); }
WeightedSpace space21() { return WeightedSpace({"x", "y"}, {rat(2), rat(1)}); }

}  // namespace

TEST_CASE("basis enumeration") {
    SECTION("weights (3,2,1), cutoff 3") {
        LinBasis B = enumerate_basis(space321());
        REQUIRE(B.size() == 7);
        // sorted by (weight, lex): 1, z, z^2, y, z^3, yz, x
        CHECK(B.monomials[0] == Monomial({0, 0, 0}));
        CHECK(B.monomials[1] == Monomial({0, 0, 1}));
        CHECK(B.monomials[2] == Monomial({0, 0, 2}));
        CHECK(B.monomials[3] == Monomial({0, 1, 0}));
        CHECK(B.monomials[4] == Monomial({0, 0, 3}));
        CHECK(B.monomials[5] == Monomial({0, 1, 1}));
        CHECK(B.monomials[6] == Monomial({1, 0, 0}));
    }

    SECTION("affine line") {
        LinBasis B = enumerate_basis(WeightedSpace({"x"}, {rat(1)}));
        REQUIRE(B.size() == 2);
        CHECK(B.monomials[0] == Monomial({0}));
        CHECK(B.monomials[1] == Monomial({1}));
    }

    SECTION("weights (2,1), cutoff 2") {
        LinBasis B = enumerate_basis(space21());
        REQUIRE(B.size() == 4);
        CHECK(B.monomials[0] == Monomial({0, 0}));
        CHECK(B.monomials[1] == Monomial({0, 1}));
        CHECK(B.monomials[2] == Monomial({0, 2}));
        CHECK(B.monomials[3] == Monomial({1, 0}));
    }

    SECTION("cutoff below the top weight is rejected") {
        CHECK_THROWS(enumerate_basis(space321(), rat(2)));
    }

    SECTION("larger cutoff is allowed and complete") {
        LinBasis B = enumerate_basis(space21(), rat(3));
        // weight <= 3 over (2,1): 1, y, y^2, x, y^3, xy
        CHECK(B.size() == 6);
        for (std::size_t i = 0; i + 1 < B.size(); ++i) {
            CHECK(monomial_weight(B.monomials[i], B.space) <= monomial_weight(B.monomials[i + 1], B.space));
        }
    }
}

TEST_CASE("evaluation embedding") {
    SECTION("origin maps to the constant coordinate") {
        LinBasis B = enumerate_basis(space321());
        std::vector<Rational> e = ev({rat(0), rat(0), rat(0)}, B);
        CHECK(e[0] == rat(1));
        for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i] == rat(0));
    }

    SECTION("explicit values over (2,1)") {
        LinBasis B = enumerate_basis(space21());
        std::vector<Rational> e = ev({rat(5), rat(2)}, B);
        CHECK(e == std::vector<Rational>{rat(1), rat(2), rat(4), rat(5)});
    }

    SECTION("distinct points give distinct images") {
        LinBasis B = enumerate_basis(space321());
        SplitMix64 rng(3);
        for (int s = 0; s < 30; ++s) {
            auto v = random_point(B.space, rng);
            auto w = random_point(B.space, rng);
            if (v == w) continue;
            CHECK(ev(v, B) != ev(w, B));
        }
    }
}

TEST_CASE("linearization") {
    SECTION("identity gives the identity matrix") {
        LinRep rep = linearize(PolyMap::identity(space321()));
        CHECK(rep.matrix == Matrix<Rational>::identity(7));
    }

    SECTION("diagonal entries are monomials in the graded linear part") {
        WeightedSpace V = space321();
        // x <- p x + a10 y + a01 z + a11 yz + a03 z^3 ; y <- q y + b1 z + b2 z^2 ; z <- r z
        PolyMap F = polymap_from_text(
            "x <- 2 * x ; x <- 1 * y ; x <- -3 * z ; x <- 1/2 * y z ; x <- 7 * z^3 ; "
            "y <- 3 * y ; y <- 4 * z ; y <- -1/5 * z^2 ; z <- 5 * z",
            V, V);
        LinRep rep = linearize(F);
        REQUIRE(rep.basis_src.size() == 7);
        // basis order: 1, z, z^2, y, z^3, yz, x
        CHECK(rep.matrix(0, 0) == rat(1));        // constants are fixed
        CHECK(rep.matrix(1, 1) == rat(5));        // r
        CHECK(rep.matrix(2, 2) == rat(25));       // r^2
        CHECK(rep.matrix(3, 3) == rat(3));        // q
        CHECK(rep.matrix(4, 4) == rat(125));      // r^3
        CHECK(rep.matrix(5, 5) == rat(15));       // q r
        CHECK(rep.matrix(6, 6) == rat(2));        // p
        CHECK(is_weight_triangular(rep));
    }

    SECTION("pullback of the deep coordinate through a quadratic term") {
        WeightedSpace V = space21();
        PolyMap F = polymap_from_text("x <- 1 * x ; x <- 1 * y^2 ; y <- 1 * y", V, V);
        LinRep rep = linearize(F);
        // row for x over basis {1, y, y^2, x}
        std::size_t row = rep.basis_tgt.index_of(Monomial({1, 0}));
        CHECK(rep.matrix(row, 0) == rat(0));
        CHECK(rep.matrix(row, 1) == rat(0));
        CHECK(rep.matrix(row, 2) == rat(1));
        CHECK(rep.matrix(row, 3) == rat(1));
    }
}

TEST_CASE("delinearization") {
    SECTION("identity matrix gives the identity map") {
        LinBasis B = enumerate_basis(space321());
        PolyMap F = delinearize(Matrix<Rational>::identity(7), B);
        CHECK(F.comp == PolyMap::identity(space321()).comp);
    }

    SECTION("scaling the constant coordinate is rejected") {
        LinBasis B = enumerate_basis(space321());
        Matrix<Rational> g = Matrix<Rational>::identity(7);
        g(0, 0) = rat(2);
        CHECK_THROWS(delinearize(g, B));
    }

    SECTION("filtration violation is rejected") {
        LinBasis B = enumerate_basis(space321());
        Matrix<Rational> g = Matrix<Rational>::identity(7);
        g(1, 6) = rat(1);  // couples the weight-1 row z to the weight-3 column x
        CHECK_THROWS(delinearize(g, B));
    }

    SECTION("matrix preserving the filtration but not the evaluation image is rejected") {
        LinBasis B = enumerate_basis(space21());
        // perturb the y^2 row without matching the y row: no polynomial map
        // pulls back y^2 to y^2 + y while fixing y
        Matrix<Rational> g = Matrix<Rational>::identity(4);
        g(2, 1) = rat(1);
        CHECK_THROWS(delinearize(g, B));
    }
}

TEST_CASE("linearization laws on random maps") {
    SplitMix64 rng(17);
    for (const auto& profile :
         {std::vector<Rational>{rat(2), rat(1)}, std::vector<Rational>{rat(3), rat(2), rat(1)}}) {
        WeightedSpace V = WeightedSpace::with_weights(profile);
        auto check = [&](const LawResult& r) {
            INFO(r.law);
            CHECK(r.ok());
        };
        check(law_linearize_homomorphism(V, 40, rng));
        check(law_ev_equivariance(V, 40, rng));
        check(law_delinearize_round_trip(V, 40, rng));
        check(law_ssr_graded_identity(V, 40, rng));
        check(law_linearize_faithful(V, 40, rng));
    }
}

TEST_CASE("triangularity on random subresonant maps") {
    SplitMix64 rng(19);
    WeightedSpace V = space321();
    for (int s = 0; s < 40; ++s) {
        CHECK(is_weight_triangular(linearize(random_subresonant(V, rng))));
    }
}
