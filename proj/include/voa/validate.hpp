#pragma once

#include <set>
#include <string>
#include <vector>

#include "voa/calculus.hpp"
#include "voa/parse.hpp"
#include "voa/roots.hpp"

namespace voa {

// Corrections applied while transcribing the source tables: weights the
// source lists that are inconsistent with its own pole structure. validate()
// reports these as non-blocking discrepancy warnings.
struct WeightCorrection {
    const char* algebra;
    const char* generator;
    const char* shipped;   // weight used here
    const char* original;  // weight listed in the source table
};

inline constexpr WeightCorrection kWeightCorrections[] = {
    {"sl3_reg", "W", "3", "4"},
    {"g2_a1tilde", "G+", "5/2", "5/3"},
    {"g2_a1tilde", "G-", "5/2", "5/3"},
};

// Structural validation: generator sanity, weight homogeneity of every
// stored pole coefficient, pole bounds, denominator poles confined to the
// critical level, and agreement of any stored conformal-row with the
// synthesized one. Findings never throw; errors block loading.
inline std::vector<Diagnostic> validate(const AlgebraPresentation& p) {
    std::vector<Diagnostic> ds;
    auto error = [&](const std::string& m) {
        ds.push_back({Diagnostic::Severity::Error, 0, 0, m, false});
    };
    auto warn = [&](const std::string& m, bool discrepancy = false) {
        ds.push_back({Diagnostic::Severity::Warning, 0, 0, m, discrepancy});
    };

    int conformal_count = 0;
    std::set<std::string> names;
    for (const auto& g : p.generators) {
        if (!names.insert(g.name).second) error("duplicate generator '" + g.name + "'");
        if (g.weight <= 0) error("generator '" + g.name + "' has non-positive weight");
        if (g.conformal) {
            ++conformal_count;
            if (g.weight != 2) error("conformal generator '" + g.name + "' must have weight 2");
        }
    }
    if (conformal_count != 1) {
        error("exactly one generator must be marked conformal (found " +
              std::to_string(conformal_count) + ")");
        return ds;
    }
    int L = p.conformal_index();
    auto weights = p.weights();

    auto check_denominator = [&](const RatFunc& c, const std::string& where) {
        if (c.den().degree() == 0) return;
        RootSet rs = rational_roots(c.den());
        for (const auto& [r, mult] : rs.roots)
            if (r != p.critical_level)
                error(where + ": denominator vanishes at k = " + to_string(r) +
                      ", which is not the critical level");
        if (rs.residual.degree() > 0)
            error(where + ": denominator has non-rational roots");
    };

    check_denominator(p.declared_c, "central charge");

    std::set<std::pair<int, int>> covered;
    for (const auto& [key, entry] : p.table.entries()) {
        auto [a, b] = key;
        const std::string where =
            "(" + p.generators[a].name + ", " + p.generators[b].name + ")";
        covered.insert({std::min(a, b), std::max(a, b)});
        Rat bound = weights[a] + weights[b];
        for (const auto& [n, coeff] : entry.coeffs()) {
            Rat expected = bound - n - 1;
            if (Rat(n) >= bound)
                error(where + " pole " + std::to_string(n + 1) +
                      " exceeds the weight bound " + to_string(bound));
            if (!coeff.is_homogeneous(weights, expected))
                error(where + " pole " + std::to_string(n + 1) +
                      ": coefficient is not weight-homogeneous of weight " + to_string(expected));
            for (const auto& [m, c] : coeff.terms())
                check_denominator(c, where + " pole " + std::to_string(n + 1));
        }
    }

    // a stored conformal row must agree with the synthesized one
    for (const auto& [key, entry] : p.table.entries()) {
        auto [a, b] = key;
        if (a != L && b != L) continue;
        try {
            AlgebraPresentation q = p;
            BracketTable t;
            for (const auto& [k2, e2] : p.table.entries())
                if (k2.first != L && k2.second != L) t.set(k2.first, k2.second, e2);
            q.table = t;
            Calculus calc(q);
            LambdaPoly synth = a == L ? calc.bracket_gen(a, b) : calc.skew(calc.bracket_gen(b, a));
            if (!(synth == entry))
                error("stored bracket (" + p.generators[a].name + ", " + p.generators[b].name +
                      ") disagrees with the row synthesized from primarity");
        } catch (const Error& e) {
            error(std::string("could not synthesize conformal row: ") + e.what());
        }
    }

    // pair coverage: at least one orientation of every unordered pair
    for (int a = 0; a < p.num_generators(); ++a) {
        for (int b = a; b < p.num_generators(); ++b) {
            if (a == L || b == L) continue;
            if (!covered.count({a, b}))
                warn("no bracket stored for (" + p.generators[a].name + ", " +
                     p.generators[b].name + "); table is partial");
        }
    }

    for (const auto& wc : kWeightCorrections) {
        if (p.name != wc.algebra) continue;
        auto idx = p.try_index_of(wc.generator);
        if (idx && p.generators[*idx].weight == rat_from_string(wc.shipped))
            warn(std::string("generator ") + wc.generator + ": weight " + wc.shipped +
                     " used; the source table lists " + wc.original +
                     ", which is inconsistent with the pole structure of its own entries",
                 true);
    }

    return ds;
}

// parse + build + validate; errors in any stage block loading.
struct LoadResult {
    std::optional<AlgebraPresentation> presentation;
    std::vector<Diagnostic> diagnostics;
};

inline LoadResult load_presentation(std::string_view text) {
    LoadResult out;
    ParseResult pr = parse_source(text);
    out.diagnostics = std::move(pr.diagnostics);
    if (!pr.file || has_errors(out.diagnostics)) return out;
    BuildResult br = build_presentation(*pr.file);
    out.diagnostics.insert(out.diagnostics.end(), br.diagnostics.begin(), br.diagnostics.end());
    if (!br.presentation || has_errors(out.diagnostics)) return out;
    auto vds = validate(*br.presentation);
    out.diagnostics.insert(out.diagnostics.end(), vds.begin(), vds.end());
    if (has_errors(out.diagnostics)) return out;
    out.presentation = std::move(br.presentation);
    return out;
}

}  // namespace voa
