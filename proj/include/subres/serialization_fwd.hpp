#pragma once

#include "subres/polymap.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace subres {

/// Canonical textual form, one term per statement:
///   component <- coeff * c1^e1 c2^e2 ; ...
/// Components in target order, terms in (weight, lex) order, rationals in
/// lowest terms. The constant monomial prints as "1". Round-trips bit-exactly.
inline std::string polymap_to_text(const PolyMap& F) {
    std::ostringstream os;
    bool first_stmt = true;
    for (std::size_t i = 0; i < F.comp.size(); ++i) {
        std::vector<Monomial> ms;
        ms.reserve(F.comp[i].terms.size());
        for (const auto& [m, c] : F.comp[i].terms) ms.push_back(m);
        std::sort(ms.begin(), ms.end(), GradedLexLess{&F.source});
        for (const auto& m : ms) {
            if (!first_stmt) os << " ; ";
            first_stmt = false;
            os << F.target.coords[i] << " <- " << rational_to_string(F.comp[i].coeff(m)) << " *";
            if (m.is_constant()) {
                os << " 1";
            } else {
                for (std::size_t j = 0; j < m.dim(); ++j) {
                    if (m.exps[j] == 0) continue;
                    os << " " << F.source.coords[j];
                    if (m.exps[j] > 1) os << "^" << m.exps[j];
                }
            }
        }
    }
    return os.str();
}

/// Parse the canonical textual form back into a map over the given spaces.
inline PolyMap polymap_from_text(const std::string& text, const WeightedSpace& source,
                                 const WeightedSpace& target) {
    auto coord_index = [](const WeightedSpace& V, const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < V.dim(); ++i)
            if (V.coords[i] == name) return i;
        throw std::invalid_argument("polymap_from_text: unknown coordinate '" + name + "'");
    };

    std::vector<Poly<Rational>> comp(target.dim());
    std::vector<std::string> statements;
    {
        std::string cur;
        std::istringstream is(text);
        std::string tok;
        while (is >> tok) {
            if (tok == ";") {
                if (!cur.empty()) statements.push_back(cur);
                cur.clear();
            } else {
                if (!cur.empty()) cur += ' ';
                cur += tok;
            }
        }
        if (!cur.empty()) statements.push_back(cur);
    }
    for (const std::string& stmt : statements) {
        std::istringstream is(stmt);
        std::string comp_name, arrow, coeff_str, star;
        if (!(is >> comp_name >> arrow >> coeff_str >> star) || arrow != "<-" || star != "*")
            throw std::invalid_argument("polymap_from_text: malformed statement '" + stmt + "'");
        std::size_t ci = coord_index(target, comp_name);
        Rational coeff = rational_from_string(coeff_str);
        Monomial m = Monomial::one(source.dim());
        std::string factor;
        while (is >> factor) {
            if (factor == "1") continue;
            std::size_t caret = factor.find('^');
            std::string name = factor.substr(0, caret);
            unsigned power = 1;
            if (caret != std::string::npos) power = static_cast<unsigned>(std::stoul(factor.substr(caret + 1)));
            m.exps[coord_index(source, name)] += power;
        }
        comp[ci].add_term(m, coeff);
    }
    return PolyMap(source, target, std::move(comp));
}

}  // namespace subres
