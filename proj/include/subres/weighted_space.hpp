#pragma once

#include "subres/rational.hpp"

#include <compare>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace subres {

/// Exponent vector over the source coordinates. The all-zero vector is the
/// constant monomial, of weight 0.
struct Monomial {
    std::vector<unsigned> exps;

    Monomial() = default;
    explicit Monomial(std::vector<unsigned> e) : exps(std::move(e)) {}

    static Monomial one(std::size_t dim) { return Monomial(std::vector<unsigned>(dim, 0)); }

    static Monomial var(std::size_t dim, std::size_t i, unsigned power = 1) {
        if (i >= dim) throw std::out_of_range("Monomial::var: index out of range");
        std::vector<unsigned> e(dim, 0);
        e[i] = power;
        return Monomial(std::move(e));
    }

    std::size_t dim() const { return exps.size(); }

    unsigned degree() const {
        unsigned d = 0;
        for (unsigned e : exps) d += e;
        return d;
    }

    bool is_constant() const { return degree() == 0; }

    Monomial operator*(const Monomial& o) const {
        if (dim() != o.dim()) throw std::invalid_argument("Monomial product: dimension mismatch");
        Monomial r = *this;
        for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] += o.exps[i];
        return r;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    // Lexicographic on exponent vectors; used for tie-breaking within a weight grade.
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// A filtered vector space presented by coordinates. weights[i] is the weight
/// of the i-th coordinate function; the dual vector direction has weight
/// -weights[i]. Weights are strictly positive and non-increasing; multiplicity
/// is encoded by repeating a weight.
struct WeightedSpace {
    std::vector<std::string> coords;
    std::vector<Rational> weights;

    WeightedSpace() = default;

    WeightedSpace(std::vector<std::string> c, std::vector<Rational> w)
        : coords(std::move(c)), weights(std::move(w)) {
        validate();
    }

    static WeightedSpace with_weights(std::vector<Rational> w) {
        std::vector<std::string> names;
        names.reserve(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) names.push_back("x" + std::to_string(i + 1));
        return WeightedSpace(std::move(names), std::move(w));
    }

    std::size_t dim() const { return coords.size(); }

    /// Deepest (largest) weight lambda_1.
    const Rational& top_weight() const { return weights.front(); }

    /// Shallowest (smallest) weight lambda_l.
    const Rational& bottom_weight() const { return weights.back(); }

    bool same_profile(const WeightedSpace& o) const { return weights == o.weights; }

    void validate() const {
        if (coords.empty()) throw std::invalid_argument("WeightedSpace: needs at least one coordinate");
        if (coords.size() != weights.size())
            throw std::invalid_argument("WeightedSpace: coords/weights length mismatch");
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (weights[i] <= 0) throw std::invalid_argument("WeightedSpace: weights must be strictly positive");
            if (i + 1 < weights.size() && weights[i] < weights[i + 1])
                throw std::invalid_argument("WeightedSpace: weights must be non-increasing");
        }
    }
};

inline Rational monomial_weight(const Monomial& m, const WeightedSpace& V) {
    if (m.dim() != V.dim()) throw std::invalid_argument("monomial_weight: dimension mismatch");
    Rational w = 0;
    for (std::size_t i = 0; i < m.exps.size(); ++i)
        if (m.exps[i] != 0) w += Rational(m.exps[i]) * V.weights[i];
    return w;
}

/// Order monomials by (weight, lex). This grades the function-space basis so
/// that pullback matrices are triangular with respect to the weight grading.
struct GradedLexLess {
    const WeightedSpace* space;
    bool operator()(const Monomial& a, const Monomial& b) const {
        Rational wa = monomial_weight(a, *space);
        Rational wb = monomial_weight(b, *space);
        if (wa != wb) return wa < wb;
        return a < b;
    }
};

}  // namespace subres
