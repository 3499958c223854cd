#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "voa/calculus.hpp"
#include "voa/serialize.hpp"

namespace voa {

enum class CheckKind { Skew, Jacobi, Conformal, Charge };

inline const char* check_name(CheckKind c) {
    switch (c) {
        case CheckKind::Skew: return "skew";
        case CheckKind::Jacobi: return "jacobi";
        case CheckKind::Conformal: return "conformal";
        case CheckKind::Charge: return "charge";
    }
    return "?";
}

struct CounterExample {
    std::vector<std::string> generators;  // the pair or triple involved
    int lambda_power = 0;
    std::optional<int> mu_power;
    std::string monomial;
    std::string coefficient;  // the offending nonzero difference

    std::string to_string() const {
        std::string s = "(";
        for (size_t i = 0; i < generators.size(); ++i)
            s += (i ? ", " : "") + generators[i];
        s += ") at lambda^" + std::to_string(lambda_power);
        if (mu_power) s += " mu^" + std::to_string(*mu_power);
        s += ": " + monomial + " has residue " + coefficient;
        return s;
    }
};

struct CheckReport {
    std::string algebra;
    CheckKind check = CheckKind::Skew;
    bool pass = true;
    std::vector<CounterExample> counterexamples;
};

namespace detail {

inline void report_difference(CheckReport& rep, const AlgebraPresentation& p,
                              std::vector<std::string> gens, int lambda_power,
                              std::optional<int> mu_power, const FieldExpr& diff) {
    for (const auto& [m, c] : diff.terms()) {
        CounterExample ce;
        ce.generators = gens;
        ce.lambda_power = lambda_power;
        ce.mu_power = mu_power;
        ce.monomial = render(m, p);
        ce.coefficient = c.to_string();
        rep.counterexamples.push_back(std::move(ce));
    }
    if (!diff.is_zero()) rep.pass = false;
}

}  // namespace detail

// [b_l a] must equal -[a_{-l-d} b] for every pair with both orientations
// stored; self-pairs are checked against their own transform.
inline CheckReport check_skew(const AlgebraPresentation& p) {
    CheckReport rep{p.name, CheckKind::Skew, true, {}};
    Calculus calc(p);
    auto compare = [&](int a, int b) {
        LambdaPoly lhs = calc.bracket_gen(b, a);
        LambdaPoly rhs = calc.skew(calc.bracket_gen(a, b));
        int top = std::max(lhs.max_index(), rhs.max_index());
        for (int n = 0; n <= top; ++n)
            detail::report_difference(rep, p, {p.generators[b].name, p.generators[a].name}, n,
                                      std::nullopt, lhs.coeff(n) - rhs.coeff(n));
    };
    for (const auto& [key, entry] : p.table.entries()) {
        auto [a, b] = key;
        if (a == b) {
            compare(a, a);
        } else if (p.table.has(b, a) && a < b) {
            compare(a, b);
            compare(b, a);
        }
    }
    return rep;
}

// [a_l [b_m c]] - [b_m [a_l c]] = [[a_l b]_{l+m} c], identically in l, m, k.
// The default scope is every ordered triple with repetition.
inline CheckReport check_jacobi(
    const AlgebraPresentation& p,
    const std::optional<std::vector<std::array<int, 3>>>& triples = std::nullopt) {
    CheckReport rep{p.name, CheckKind::Jacobi, true, {}};
    Calculus calc(p);
    std::vector<std::array<int, 3>> scope;
    if (triples) {
        scope = *triples;
    } else {
        int n = p.num_generators();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) scope.push_back({a, b, c});
    }

    for (const auto& [a, b, c] : scope) {
        FieldExpr A = FieldExpr::gen(a), B = FieldExpr::gen(b), C = FieldExpr::gen(c);
        // coefficients of l^m/m! mu^n/n!
        std::map<std::pair<int, int>, FieldExpr> sides;

        LambdaPoly bc = calc.bracket(B, C);
        for (const auto& [n, X] : bc.coeffs()) {
            LambdaPoly aX = calc.bracket(A, X);
            for (const auto& [m, Y] : aX.coeffs()) sides[{m, n}] += Y;
        }
        LambdaPoly ac = calc.bracket(A, C);
        for (const auto& [m, U] : ac.coeffs()) {
            LambdaPoly bU = calc.bracket(B, U);
            for (const auto& [n, V] : bU.coeffs()) sides[{m, n}] += RatFunc(-1) * V;
        }
        LambdaPoly ab = calc.bracket(A, B);
        for (const auto& [q, Z] : ab.coeffs()) {
            LambdaPoly Zc = calc.bracket(Z, C);
            for (const auto& [r, W] : Zc.coeffs()) {
                // (l+m)^{(r)} expands over l^{(s)} m^{(r-s)}; combined with
                // l^{(q)} this contributes binom(q+s, q) at (q+s, r-s)
                for (int s = 0; s <= r; ++s)
                    sides[{q + s, r - s}] +=
                        RatFunc(Rat(-binomial(q + s, q))) * W;
            }
        }

        for (const auto& [powers, diff] : sides)
            detail::report_difference(
                rep, p,
                {p.generators[a].name, p.generators[b].name, p.generators[c].name},
                powers.first, powers.second, diff);
    }
    return rep;
}

// Primarity of every non-conformal generator and the Virasoro relations
// for the conformal vector itself.
inline CheckReport check_conformal(const AlgebraPresentation& p) {
    CheckReport rep{p.name, CheckKind::Conformal, true, {}};
    Calculus calc(p);
    int L = p.conformal_index();
    for (int j = 0; j < p.num_generators(); ++j) {
        LambdaPoly lj = calc.bracket_gen(L, j);
        LambdaPoly expected;
        expected.set(0, FieldExpr::gen(j, 1));
        if (j == L) {
            expected.set(1, RatFunc(2) * FieldExpr::gen(L));
            expected.set(3, FieldExpr::vacuum(lj.coeff(3).vacuum_coeff()));
            // the third product must be a pure vacuum multiple
        } else {
            expected.set(1, RatFunc(p.generators[j].weight) * FieldExpr::gen(j));
        }
        int top = std::max(lj.max_index(), expected.max_index());
        for (int n = 0; n <= top; ++n)
            detail::report_difference(rep, p, {p.generators[L].name, p.generators[j].name}, n,
                                      std::nullopt, lj.coeff(n) - expected.coeff(n));
    }
    return rep;
}

// 2 x (vacuum coefficient of L_(3)L); must agree with the declared charge.
inline RatFunc central_charge(const AlgebraPresentation& p) {
    Calculus calc(p);
    int L = p.conformal_index();
    RatFunc derived = RatFunc(2) * calc.bracket_gen(L, L).coeff(3).vacuum_coeff();
    if (!(derived == p.declared_c))
        throw Error(Errc::ChargeMismatch, "derived central charge " + derived.to_string() +
                                              " does not match the declared " +
                                              p.declared_c.to_string() + " in " + p.name);
    return derived;
}

}  // namespace voa
