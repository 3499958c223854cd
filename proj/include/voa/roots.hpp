#pragma once

#include <map>
#include <set>
#include <vector>

#include "voa/error.hpp"
#include "voa/poly.hpp"
#include "voa/rational.hpp"

namespace voa {
namespace detail {

inline Int pollard_rho(const Int& n) {
    // n odd composite, not a prime power of interest; Brent's variant.
    if (n % 2 == 0) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xD1CEu);
    while (true) {
        Int y = rng.get_z_range(n - 2) + 1;
        Int c = rng.get_z_range(n - 2) + 1;
        Int x = y, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = x - y;
            if (diff < 0) diff = -diff;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

inline void factor_into(Int n, std::map<Int, int>& out) {
    if (n <= 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 32)) {
        out[n]++;
        return;
    }
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        while (n % p == 0) {
            out[Int(p)]++;
            n /= p;
        }
        if (n == 1) return;
    }
    if (mpz_probab_prime_p(n.get_mpz_t(), 32)) {
        out[n]++;
        return;
    }
    long lim = 1000000;
    for (long p = 17; p <= lim && Int(p) * p <= n; p += 2) {
        while (n % p == 0) {
            out[Int(p)]++;
            n /= p;
            if (mpz_probab_prime_p(n.get_mpz_t(), 32)) {
                out[n]++;
                return;
            }
        }
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 32)) {
        out[n]++;
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

inline std::vector<Int> divisors(const Int& n) {
    std::map<Int, int> f;
    Int m = n < 0 ? Int(-n) : n;
    factor_into(m, f);
    std::vector<Int> divs{1};
    for (const auto& [p, e] : f) {
        size_t sz = divs.size();
        Int pe = 1;
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pe);
        }
    }
    return divs;
}

}  // namespace detail

struct RootSet {
    std::map<Rat, int> roots;  // root -> multiplicity
    UniPoly residual;          // primitive integer form, no rational roots
};

// Rational roots with multiplicity via the rational-root theorem over the
// primitive integer form; residual is what is left after dividing out the
// primitive linear factors (q*k - p).
inline RootSet rational_roots(const UniPoly& p) {
    if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "rational_roots of the zero polynomial");
    RootSet rs;
    UniPoly cur = p.primitive_integer();
    // k = 0 roots first
    while (cur.degree() >= 1 && cur.coeff(0) == 0) {
        rs.roots[Rat(0)]++;
        cur = UniPoly::exact_div(cur, UniPoly::var());
    }
    if (cur.degree() >= 1) {
        Int a0 = cur.coeff(0).get_num();
        Int an = cur.lead().get_num();
        std::vector<Rat> candidates;
        for (const Int& pd : detail::divisors(a0))
            for (const Int& qd : detail::divisors(an)) {
                Rat r(pd, qd);
                r.canonicalize();
                candidates.push_back(r);
                candidates.push_back(-r);
            }
        std::set<Rat> seen(candidates.begin(), candidates.end());
        for (const Rat& r : seen) {
            while (cur.degree() >= 1 && cur.eval(r) == 0) {
                rs.roots[r]++;
                // divide out the primitive linear factor (q*k - p)
                UniPoly lin({-Rat(r.get_num()), Rat(r.get_den())});
                cur = UniPoly::exact_div(cur, lin);
            }
        }
    }
    rs.residual = cur.primitive_integer();
    if (rs.residual.is_zero()) rs.residual = UniPoly::one();
    return rs;
}

}  // namespace voa
