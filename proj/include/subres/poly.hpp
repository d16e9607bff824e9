#pragma once

#include "subres/rational.hpp"
#include "subres/weighted_space.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace subres {

/// Sparse polynomial in dim(space) variables with coefficients in K.
/// Zero coefficients are never stored. K needs ring operations and
/// comparison against K().
template <class K>
struct Poly {
    std::map<Monomial, K> terms;

    Poly() = default;

    static Poly zero() { return Poly(); }

    static Poly constant(std::size_t dim, const K& c) {
        Poly p;
        if (!(c == K())) p.terms.emplace(Monomial::one(dim), c);
        return p;
    }

    static Poly var(std::size_t dim, std::size_t i) {
        Poly p;
        p.terms.emplace(Monomial::var(dim, i), K(1));
        return p;
    }

    static Poly term(const Monomial& m, const K& c) {
        Poly p;
        if (!(c == K())) p.terms.emplace(m, c);
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    const K coeff(const Monomial& m) const {
        auto it = terms.find(m);
        return it == terms.end() ? K() : it->second;
    }

    void add_term(const Monomial& m, const K& c) {
        if (c == K()) return;
        auto [it, inserted] = terms.emplace(m, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second == K()) terms.erase(it);
        }
    }

    Poly operator+(const Poly& o) const {
        Poly r = *this;
        for (const auto& [m, c] : o.terms) r.add_term(m, c);
        return r;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& [m, c] : r.terms) c = K() - c;
        return r;
    }

    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        Poly r;
        for (const auto& [m1, c1] : terms)
            for (const auto& [m2, c2] : o.terms) r.add_term(m1 * m2, c1 * c2);
        return r;
    }

    Poly scaled(const K& c) const {
        Poly r;
        if (c == K()) return r;
        for (const auto& [m, k] : terms) r.add_term(m, k * c);
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms == b.terms; }
};

template <class K>
Poly<K> poly_pow(const Poly<K>& p, unsigned e, std::size_t dim) {
    Poly<K> r = Poly<K>::constant(dim, K(1));
    Poly<K> base = p;
    while (e > 0) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

template <class K>
K poly_eval(const Poly<K>& p, const std::vector<K>& point) {
    K acc = K();
    for (const auto& [m, c] : p.terms) {
        if (m.dim() != point.size()) throw std::invalid_argument("poly_eval: dimension mismatch");
        K v = c;
        for (std::size_t i = 0; i < point.size(); ++i)
            for (unsigned k = 0; k < m.exps[i]; ++k) v = v * point[i];
        acc = acc + v;
    }
    return acc;
}

template <class K>
Poly<K> poly_partial(const Poly<K>& p, std::size_t i) {
    Poly<K> r;
    for (const auto& [m, c] : p.terms) {
        if (i >= m.dim()) throw std::out_of_range("poly_partial: index out of range");
        if (m.exps[i] == 0) continue;
        Monomial d = m;
        d.exps[i] -= 1;
        r.add_term(d, c * K(m.exps[i]));
    }
    return r;
}

/// Substitute args[i] for variable i.
template <class K>
Poly<K> poly_substitute(const Poly<K>& p, const std::vector<Poly<K>>& args, std::size_t out_dim) {
    Poly<K> r;
    for (const auto& [m, c] : p.terms) {
        if (m.dim() != args.size()) throw std::invalid_argument("poly_substitute: dimension mismatch");
        Poly<K> v = Poly<K>::constant(out_dim, c);
        for (std::size_t i = 0; i < args.size(); ++i)
            if (m.exps[i] != 0) v = v * poly_pow(args[i], m.exps[i], out_dim);
        r = r + v;
    }
    return r;
}

/// Largest total degree among stored terms (0 for the zero polynomial).
template <class K>
unsigned poly_degree(const Poly<K>& p) {
    unsigned d = 0;
    for (const auto& [m, c] : p.terms) d = std::max(d, m.degree());
    return d;
}

template <class K>
Poly<K> poly_truncate_degree(const Poly<K>& p, unsigned max_degree) {
    Poly<K> r;
    for (const auto& [m, c] : p.terms)
        if (m.degree() <= max_degree) r.add_term(m, c);
    return r;
}

}  // namespace subres
