#pragma once

#include <deque>
#include <set>
#include <string>
#include <vector>

#include "voa/calculus.hpp"
#include "voa/roots.hpp"

namespace voa {

// Output of the level solvers: the rational solutions, the irreducible
// part whose roots could not be classified (reported, never dropped), and
// the levels removed from consideration (critical level and coefficient
// poles).
struct LevelSet {
    std::set<Rat> levels;
    UniPoly residual = UniPoly::one();
    std::set<Rat> excluded;
};

// Bounded-weight evidence that a seed set generates a proper ideal. This
// is necessary-condition evidence, not a proof: sufficiency would require
// closing at unbounded weight.
struct IdealEvidence {
    Rat level;
    std::vector<std::string> seeds;
    Rat cutoff;
    bool proper = false;
    std::vector<FieldExpr> relations;
};

enum class Verdict { InIdealCandidate, Survives, Unknown };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::InIdealCandidate: return "in-ideal-candidate";
        case Verdict::Survives: return "survives";
        case Verdict::Unknown: return "unknown";
    }
    return "?";
}

// Critical level plus every rational root of every stored coefficient
// denominator (and of the declared central charge).
inline std::set<Rat> excluded_levels(const AlgebraPresentation& p) {
    std::set<Rat> ex{p.critical_level};
    auto add_den = [&](const RatFunc& c) {
        if (c.den().degree() == 0) return;
        for (const auto& [r, m] : rational_roots(c.den()).roots) ex.insert(r);
    };
    add_den(p.declared_c);
    for (const auto& [key, entry] : p.table.entries())
        for (const auto& [n, coeff] : entry.coeffs())
            for (const auto& [m, c] : coeff.terms()) add_den(c);
    return ex;
}

namespace detail {

// Common rational zeros of a set of constraints: gcd of the numerators,
// then its rational roots; irrational common factors land in residual.
inline LevelSet solve_common_zeros(const std::vector<RatFunc>& constraints,
                                   const std::set<Rat>& excluded) {
    LevelSet ls;
    ls.excluded = excluded;
    UniPoly g = UniPoly::zero();
    for (const RatFunc& c : constraints) g = UniPoly::gcd(g, c.num());
    if (g.is_zero() || g.degree() == 0) return ls;
    RootSet rs = rational_roots(g);
    for (const auto& [r, m] : rs.roots)
        if (!excluded.count(r)) ls.levels.insert(r);
    ls.residual = rs.residual;
    return ls;
}

// Vacuum coefficient of the pole of degree w_i + w_j of J^(j)(z) J^(i)(w),
// i.e. of the product (J^(j))_(w_i + w_j - 1) J^(i). Zero when the pole
// degree is not an integer.
inline RatFunc top_pairing(Calculus& calc, const std::vector<Rat>& w, int j, int i) {
    Rat pole = w[i] + w[j];
    if (!is_integer(pole)) return RatFunc::zero();
    long n = to_long(pole) - 1;
    return calc.bracket_gen(j, i).coeff(static_cast<int>(n)).vacuum_coeff();
}

}  // namespace detail

// Levels at which the simple quotient collapses to the vacuum line: common
// zeros of every top-pole vacuum pairing, over all ordered generator pairs
// including the conformal vector.
inline LevelSet trivial_levels(const AlgebraPresentation& p) {
    Calculus calc(p);
    auto w = p.weights();
    std::vector<RatFunc> constraints;
    for (int i = 0; i < p.num_generators(); ++i)
        for (int j = 0; j < p.num_generators(); ++j) {
            RatFunc v = detail::top_pairing(calc, w, j, i);
            if (!v.is_zero()) constraints.push_back(v);
        }
    return detail::solve_common_zeros(constraints, excluded_levels(p));
}

// Levels at which the simple quotient is the Virasoro vertex algebra:
// for every non-conformal i and every j, the top vacuum pairing vanishes
// and the pole of degree w_i + w_j - 2 has no component on the bare
// conformal vector. Levels that already collapse to the vacuum line are
// removed.
inline LevelSet virasoro_levels(const AlgebraPresentation& p) {
    Calculus calc(p);
    auto w = p.weights();
    int L = p.conformal_index();
    Monomial Lmono = Monomial::single(L);
    std::vector<RatFunc> constraints;
    for (int i = 0; i < p.num_generators(); ++i) {
        if (i == L) continue;
        for (int j = 0; j < p.num_generators(); ++j) {
            RatFunc v = detail::top_pairing(calc, w, j, i);
            if (!v.is_zero()) constraints.push_back(v);
            Rat pole = w[i] + w[j] - 2;
            if (is_integer(pole) && pole >= 1) {
                long n = to_long(pole) - 1;
                RatFunc lc = calc.bracket_gen(j, i).coeff(static_cast<int>(n)).coeff(Lmono);
                if (!lc.is_zero()) constraints.push_back(lc);
            }
        }
    }
    LevelSet ls = detail::solve_common_zeros(constraints, excluded_levels(p));
    for (const Rat& r : trivial_levels(p).levels) ls.levels.erase(r);
    return ls;
}

// Per-generator membership evidence at a fixed level, by the weight
// cascade: a generator whose vacuum pairings all vanish is a candidate for
// the maximal ideal; a nonzero vacuum pairing is a hard obstruction, and
// so is any product landing exactly on a bare surviving generator once
// candidate-covered terms are dropped.
inline std::vector<Verdict> generator_survivors(const AlgebraPresentation& p, const Rat& k0) {
    if (excluded_levels(p).count(k0))
        throw Error(Errc::ExcludedLevel, "level k = " + to_string(k0) + " is excluded for " + p.name);
    AlgebraPresentation q = specialize(p, k0);
    Calculus calc(q);
    auto w = q.weights();
    int n_gens = q.num_generators();

    std::vector<Verdict> verdict(n_gens, Verdict::InIdealCandidate);
    for (int i = 0; i < n_gens; ++i)
        for (int j = 0; j < n_gens; ++j)
            if (!detail::top_pairing(calc, w, j, i).is_zero()) verdict[i] = Verdict::Survives;

    // cascade: modes of ideal members stay in the ideal, so a candidate
    // whose product with a generator is a nonzero multiple of a bare
    // surviving generator (all candidate-covered terms removed) cannot be
    // in the ideal after all
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n_gens; ++i) {
            if (verdict[i] != Verdict::InIdealCandidate) continue;
            for (int j = 0; j < n_gens && verdict[i] == Verdict::InIdealCandidate; ++j) {
                LambdaPoly b = calc.bracket_gen(j, i);
                for (const auto& [n, coeff] : b.coeffs()) {
                    FieldExpr rest;
                    for (const auto& [m, c] : coeff.terms()) {
                        bool covered = false;
                        for (const Factor& f : m.factors)
                            if (verdict[f.gen] == Verdict::InIdealCandidate) covered = true;
                        if (!covered) rest.add(m, c);
                    }
                    if (rest.num_terms() != 1) continue;
                    const auto& [m, c] = *rest.terms().begin();
                    if (m.size() == 1 && m.factors[0].deriv == 0 &&
                        verdict[m.factors[0].gen] == Verdict::Survives) {
                        verdict[i] = Verdict::Survives;
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
    return verdict;
}

// Closes the seed set under products with all generators and under the
// derivative, truncating at the weight cutoff, and reports whether the
// vacuum was reached together with the relations found.
inline IdealEvidence ideal_closure(const AlgebraPresentation& p, const Rat& k0,
                                   const std::vector<std::string>& seeds, const Rat& cutoff) {
    if (excluded_levels(p).count(k0))
        throw Error(Errc::ExcludedLevel, "level k = " + to_string(k0) + " is excluded for " + p.name);
    if (cutoff < p.max_weight())
        throw Error(Errc::CutoffTooSmall, "cutoff " + to_string(cutoff) +
                                              " is below the maximal generator weight " +
                                              to_string(p.max_weight()));
    AlgebraPresentation q = specialize(p, k0);
    Calculus calc(q);
    auto w = q.weights();

    // reduced echelon basis keyed by leading monomial
    std::map<Monomial, FieldExpr, MonomialLess> basis;
    auto reduce = [&](FieldExpr x) {
        bool again = true;
        while (again && !x.is_zero()) {
            again = false;
            for (const auto& [m, c] : x.terms()) {
                auto it = basis.find(m);
                if (it != basis.end()) {
                    x += (RatFunc(-1) * c) * it->second;
                    again = true;
                    break;
                }
            }
        }
        return x;
    };

    std::deque<FieldExpr> work;
    IdealEvidence ev;
    ev.level = k0;
    ev.seeds = seeds;
    ev.cutoff = cutoff;

    auto submit = [&](const FieldExpr& x) {
        if (x.is_zero()) return;
        if (x.weight(w) > cutoff) return;
        FieldExpr r = reduce(x);
        if (r.is_zero()) return;
        Monomial lead = r.terms().begin()->first;
        r = (RatFunc::one() / r.terms().begin()->second) * r;
        for (auto& [m, e] : basis) {
            RatFunc c = e.coeff(lead);
            if (!c.is_zero()) e += (RatFunc(-1) * c) * r;
        }
        basis.emplace(lead, r);
        work.push_back(r);
    };

    for (const std::string& s : seeds) submit(FieldExpr::gen(q.index_of(s)));

    while (!work.empty()) {
        FieldExpr x = std::move(work.front());
        work.pop_front();
        Rat wx = x.is_zero() ? Rat(0) : x.weight(w);
        if (wx + 1 <= cutoff) submit(calc.derive(x));
        for (int g = 0; g < q.num_generators(); ++g) {
            FieldExpr ge = FieldExpr::gen(g);
            LambdaPoly b = calc.bracket(ge, x);
            for (const auto& [n, c] : b.coeffs()) submit(c);
            if (w[g] + wx <= cutoff) submit(calc.no_product(ge, x));
        }
    }

    ev.proper = basis.find(Monomial::vacuum()) == basis.end();
    for (const auto& [lead, e] : basis)
        if (lead.size() == 1 && lead.factors[0].deriv == 0) ev.relations.push_back(e);
    return ev;
}

}  // namespace voa
