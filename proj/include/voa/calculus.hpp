#pragma once

#include <unordered_map>
#include <utility>

#include "voa/presentation.hpp"

namespace voa {

// The lambda-bracket calculus over one presentation: extends the stored
// generator-pair brackets to arbitrary field expressions and rewrites
// nested normally ordered products into the canonical PBW basis.
//
// Conventions (even fields throughout):
//   [da_l b] = -l [a_l b],   [a_l db] = (l+d)[a_l b]
//   [b_l a]  = -[a_{-l-d} b]
//   [a_l :bc:] = :[a_l b]c: + :b[a_l c]: + int_0^l [[a_l b]_m c] dm
//   :ab: - :ba: = int_{-d}^0 [a_l b] dl
//   :(:ab:)c: - :a(:bc:): = :(int_0^d a)[b_l c]: + :(int_0^d b)[a_l c]:
//
// All operations are pure; the instance keeps internal memo tables, so a
// Calculus is cheap to query repeatedly but is not meant to be shared
// across threads.
class Calculus {
  public:
    explicit Calculus(const AlgebraPresentation& p)
        : p_(p), weights_(p.weights()) {
        for (int i = 0; i < p.num_generators(); ++i)
            if (p.generators[i].conformal) conformal_ = i;
    }

    const AlgebraPresentation& presentation() const { return p_; }

    // [a_l b] for declared generators, closing the stored table under
    // skew-symmetry and synthesizing every bracket that involves the
    // conformal vector from primarity and the declared central charge.
    LambdaPoly bracket_gen(int a, int b) {
        check_gen(a);
        check_gen(b);
        long key = static_cast<long>(a) * p_.num_generators() + b;
        auto it = gen_memo_.find(key);
        if (it != gen_memo_.end()) return it->second;
        LambdaPoly r;
        if (const LambdaPoly* e = p_.table.find(a, b))
            r = *e;
        else if (const LambdaPoly* o = p_.table.find(b, a))
            r = skew(*o);
        else if (a == conformal_)
            r = synth_conformal_row(b);
        else if (b == conformal_)
            r = skew(synth_conformal_row(a));
        else
            throw Error(Errc::MissingEntry, "no bracket stored for (" + p_.generators[a].name +
                                                ", " + p_.generators[b].name + ") in " + p_.name);
        return gen_memo_.emplace(key, std::move(r)).first->second;
    }

    LambdaPoly bracket(const FieldExpr& x, const FieldExpr& y) {
        LambdaPoly r;
        for (const auto& [m, cm] : x.terms())
            for (const auto& [n, cn] : y.terms()) r.add_scaled(cm * cn, bracket_mono(m, n));
        return r;
    }

    // a_(n)b for any integer n: non-negative products from the bracket,
    // n = -1 the normally ordered product, lower ones :(d^j a / j!) b:.
    FieldExpr nth_product(const FieldExpr& x, long n, const FieldExpr& y) {
        if (n >= 0) return bracket(x, y).coeff(static_cast<int>(n));
        if (n == -1) return no_product(x, y);
        long j = -n - 1;
        return RatFunc(Rat(Rat(1) / factorial(j))) * no_product(derive(x, j), y);
    }

    // canonical :xy:
    FieldExpr no_product(const FieldExpr& x, const FieldExpr& y) {
        FieldExpr r;
        for (const auto& [m, cm] : x.terms())
            for (const auto& [n, cn] : y.terms()) r += (cm * cn) * no_mono(m, n);
        return r;
    }

    FieldExpr canonicalize(const RawExpr& raw) {
        switch (raw.kind()) {
            case RawExpr::Kind::Vacuum:
                return FieldExpr::vacuum();
            case RawExpr::Kind::Atom:
                return FieldExpr::gen(raw.factor().gen, raw.factor().deriv);
            case RawExpr::Kind::NO:
                return no_product(canonicalize(raw.left()), canonicalize(raw.right()));
            case RawExpr::Kind::Sum: {
                FieldExpr r;
                for (size_t i = 0; i < raw.num_summands(); ++i)
                    r += raw.summand_coeff(i) * canonicalize(raw.summand(i));
                return r;
            }
        }
        return FieldExpr::zero();
    }

    // idempotent on the canonical representation
    FieldExpr canonicalize(const FieldExpr& x) { return x; }

    // translation operator d; Leibniz over factors, then re-canonicalized
    FieldExpr derive(const FieldExpr& x) {
        FieldExpr r;
        for (const auto& [m, c] : x.terms()) {
            for (size_t i = 0; i < m.size(); ++i) {
                Monomial d = m;
                d.factors[i].deriv += 1;
                r += c * canon_factors(d);
            }
        }
        return r;
    }

    FieldExpr derive(FieldExpr x, long times) {
        for (long i = 0; i < times; ++i) x = derive(x);
        return x;
    }

    // -[a_{-l-d} b] from [a_l b]
    LambdaPoly skew(const LambdaPoly& P) {
        LambdaPoly Q;
        int top = P.max_index();
        for (int m = 0; m <= top; ++m) {
            FieldExpr acc;
            for (int j = 0; m + j <= top; ++j) {
                FieldExpr c = P.coeff(m + j);
                if (c.is_zero()) continue;
                Rat s = ((m + j) % 2 ? -1 : 1);
                acc += RatFunc(Rat(-s / factorial(j))) * derive(c, j);
            }
            Q.set(m, std::move(acc));
        }
        return Q;
    }

    // Rebuilds a factor list that may be out of canonical order.
    FieldExpr canon_factors(const Monomial& m) {
        if (m.is_sorted()) return FieldExpr::term(m);
        FieldExpr acc = FieldExpr::term(Monomial::single(m.factors.back().gen, m.factors.back().deriv));
        for (size_t i = m.size() - 1; i-- > 0;) {
            Monomial f = Monomial::single(m.factors[i].gen, m.factors[i].deriv);
            acc = no_product(FieldExpr::term(f), acc);
        }
        return acc;
    }

  private:
    void check_gen(int i) const {
        if (i < 0 || i >= p_.num_generators())
            throw Error(Errc::UnknownGenerator, "generator index out of range in " + p_.name);
    }

    // [L_l J] = (d + D_J l) J for primary J; the Virasoro row for L itself.
    LambdaPoly synth_conformal_row(int j) const {
        LambdaPoly r;
        r.set(0, FieldExpr::gen(j, 1));
        if (j == conformal_) {
            r.set(1, RatFunc(2) * FieldExpr::gen(j));
            FieldExpr v = FieldExpr::vacuum((RatFunc(1) / RatFunc(2)) * p_.declared_c);
            r.set(3, std::move(v));
        } else {
            r.set(1, RatFunc(weights_[j]) * FieldExpr::gen(j));
        }
        return r;
    }

    struct MonoPairHash {
        size_t operator()(const std::pair<Monomial, Monomial>& p) const {
            MonomialHash h;
            return h(p.first) * 0x9e3779b97f4a7c15ull + h(p.second);
        }
    };

    LambdaPoly bracket_mono(const Monomial& M, const Monomial& N) {
        if (M.is_vacuum() || N.is_vacuum()) return {};
        auto key = std::make_pair(M, N);
        auto it = bracket_memo_.find(key);
        if (it != bracket_memo_.end()) return it->second;
        LambdaPoly r = bracket_mono_uncached(M, N);
        return bracket_memo_.emplace(std::move(key), std::move(r)).first->second;
    }

    LambdaPoly bracket_mono_uncached(const Monomial& M, const Monomial& N) {
        if (N.size() >= 2) {
            // non-commutative Wick on N = :n1 N':
            Monomial n1 = Monomial::single(N.factors[0].gen, N.factors[0].deriv);
            Monomial Nt{{N.factors.begin() + 1, N.factors.end()}};
            FieldExpr n1e = FieldExpr::term(n1);
            FieldExpr Nte = FieldExpr::term(Nt);
            LambdaPoly A = bracket_mono(M, n1);
            LambdaPoly B = bracket_mono(M, Nt);
            LambdaPoly r;
            for (const auto& [n, An] : A.coeffs()) r.add(n, no_product(An, Nte));
            for (const auto& [n, Bn] : B.coeffs()) r.add(n, no_product(n1e, Bn));
            for (const auto& [n, An] : A.coeffs()) {
                LambdaPoly C = bracket(An, Nte);
                for (const auto& [m, Cm] : C.coeffs())
                    r.add(n + m + 1, RatFunc(binomial(n + m + 1, n)) * Cm);
            }
            return r;
        }
        const Factor& nf = N.factors[0];
        if (nf.deriv > 0) {
            // [a_l d^p b] = (l+d)^p [a_l b]
            LambdaPoly base = bracket_mono(M, Monomial::single(nf.gen));
            for (int i = 0; i < nf.deriv; ++i) base = shift_lambda_plus_partial(base);
            return base;
        }
        if (M.size() == 1) {
            const Factor& mf = M.factors[0];
            if (mf.deriv > 0) {
                // [d^m a_l b] = (-l)^m [a_l b]
                LambdaPoly base = bracket_mono(Monomial::single(mf.gen), N);
                for (int i = 0; i < mf.deriv; ++i) base = mul_minus_lambda(base);
                return base;
            }
            return bracket_gen(mf.gen, nf.gen);
        }
        // composite left against a bare generator: flip by skew-symmetry
        return skew(bracket_mono(N, M));
    }

    LambdaPoly shift_lambda_plus_partial(const LambdaPoly& P) {
        LambdaPoly r;
        for (const auto& [n, c] : P.coeffs()) {
            r.add(n + 1, RatFunc(Rat(n + 1)) * c);
            r.add(n, derive(c));
        }
        return r;
    }

    static LambdaPoly mul_minus_lambda(const LambdaPoly& P) {
        LambdaPoly r;
        for (const auto& [n, c] : P.coeffs()) r.add(n + 1, RatFunc(Rat(-(n + 1))) * c);
        return r;
    }

    FieldExpr no_mono(const Monomial& M, const Monomial& N) {
        if (M.is_vacuum()) return FieldExpr::term(N);
        if (N.is_vacuum()) return FieldExpr::term(M);
        auto key = std::make_pair(M, N);
        auto it = no_memo_.find(key);
        if (it != no_memo_.end()) return it->second;
        FieldExpr r = no_mono_uncached(M, N);
        return no_memo_.emplace(std::move(key), std::move(r)).first->second;
    }

    FieldExpr no_mono_uncached(const Monomial& M, const Monomial& N) {
        if (M.size() == 1) {
            if (factor_le(M.factors[0], N.factors[0])) {
                Monomial r;
                r.factors.reserve(1 + N.size());
                r.factors.push_back(M.factors[0]);
                r.factors.insert(r.factors.end(), N.factors.begin(), N.factors.end());
                return FieldExpr::term(r);
            }
            // :MN: = :NM: + int_{-d}^0 [M_l N] dl
            FieldExpr r = no_mono(N, M);
            LambdaPoly P = bracket_mono(M, N);
            for (const auto& [j, c] : P.coeffs()) {
                Rat s = Rat(j % 2 ? -1 : 1) / factorial(j + 1);
                r += RatFunc(s) * derive(c, j + 1);
            }
            return r;
        }
        // quasi-associativity on M = :m1 M':
        Monomial m1 = Monomial::single(M.factors[0].gen, M.factors[0].deriv);
        Monomial Mt{{M.factors.begin() + 1, M.factors.end()}};
        FieldExpr r = no_product(FieldExpr::term(m1), no_mono(Mt, N));
        LambdaPoly Pt = bracket_mono(Mt, N);
        for (const auto& [j, c] : Pt.coeffs()) {
            Monomial dm1 = Monomial::single(m1.factors[0].gen, m1.factors[0].deriv + j + 1);
            r += (RatFunc(Rat(1) / factorial(j + 1))) * no_product(FieldExpr::term(dm1), c);
        }
        LambdaPoly Pm = bracket_mono(m1, N);
        for (const auto& [j, c] : Pm.coeffs()) {
            FieldExpr dMt = derive(FieldExpr::term(Mt), j + 1);
            r += (RatFunc(Rat(1) / factorial(j + 1))) * no_product(dMt, c);
        }
        return r;
    }

    const AlgebraPresentation& p_;
    std::vector<Rat> weights_;
    int conformal_ = -1;
    std::unordered_map<long, LambdaPoly> gen_memo_;
    std::unordered_map<std::pair<Monomial, Monomial>, LambdaPoly, MonoPairHash> bracket_memo_;
    std::unordered_map<std::pair<Monomial, Monomial>, FieldExpr, MonoPairHash> no_memo_;
};

}  // namespace voa
