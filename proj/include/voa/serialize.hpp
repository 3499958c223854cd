#pragma once

#include <string>

#include "voa/presentation.hpp"

namespace voa {

// --- textual rendering of monomials and field expressions; the output is
// --- valid FIELDEXPR syntax and reparses to the same value.

inline std::string render(const Monomial& m, const AlgebraPresentation& p) {
    if (m.is_vacuum()) return "1";
    std::string s;
    int open = 0;
    for (size_t i = 0; i < m.size(); ++i) {
        const Factor& f = m.factors[i];
        if (i + 1 < m.size()) {
            s += "NO(";
            ++open;
        }
        std::string atom = p.generators[f.gen].name;
        if (f.deriv > 0) atom = "d" + std::to_string(f.deriv) + "(" + atom + ")";
        s += atom;
        s += (i + 1 < m.size()) ? ", " : "";
    }
    // close the right-nested chain
    std::string closes(open, ')');
    return s + closes;
}

inline std::string render(const FieldExpr& e, const AlgebraPresentation& p) {
    if (e.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : e.terms()) {
        std::string cs = c.to_string();
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) cs = cs.substr(1);
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        bool needs_parens = cs.find(' ') != std::string::npos;
        if (needs_parens) cs = "(" + cs + ")";
        if (m.is_vacuum()) {
            s += cs;
        } else if (cs == "1") {
            s += render(m, p);
        } else {
            s += cs + "*" + render(m, p);
        }
    }
    return s;
}

inline std::string render(const LambdaPoly& b, const AlgebraPresentation& p) {
    if (b.is_zero()) return "0";
    std::string s;
    for (auto it = b.coeffs().rbegin(); it != b.coeffs().rend(); ++it) {
        if (!s.empty()) s += "\n";
        s += "pole " + std::to_string(it->first + 1) + ": " + render(it->second, p) + ";";
    }
    return s;
}

// Deterministic canonical source text; parse(serialize(p)) reproduces p.
inline std::string serialize(const AlgebraPresentation& p) {
    std::string s;
    s += "algebra " + p.name + "\n";
    s += "param k\n";
    s += "critical " + to_string(p.critical_level) + "\n";
    s += "central_charge " + p.declared_c.to_string() + "\n";
    s += "\n";
    for (const auto& g : p.generators) {
        s += "generator " + g.name + " weight " + to_string(g.weight);
        if (g.conformal) s += " conformal";
        s += "\n";
    }
    for (const auto& [key, entry] : p.table.entries()) {
        s += "\nope " + p.generators[key.first].name + " " + p.generators[key.second].name + " {";
        if (entry.is_zero()) {
            s += " }\n";
            continue;
        }
        s += "\n";
        for (auto it = entry.coeffs().rbegin(); it != entry.coeffs().rend(); ++it)
            s += "  pole " + std::to_string(it->first + 1) + ": " + render(it->second, p) + ";\n";
        s += "}\n";
    }
    return s;
}

}  // namespace voa
