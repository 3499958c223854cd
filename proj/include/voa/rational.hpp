#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "voa/error.hpp"

namespace voa {

// Arbitrary-precision integers and rationals. mpq_class keeps values in
// lowest terms with a positive denominator, which is exactly the canonical
// form we need.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "-p", "p/q" (whitespace-free).
inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw Error(Errc::InvalidPresentation, "bad rational literal '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// Only call on values known to fit (pole degrees, derivative orders, ...).
inline long to_long(const Rat& r) {
    if (!is_integer(r) || !r.get_num().fits_slong_p())
        throw Error(Errc::NonIntegralProduct, "value " + to_string(r) + " is not a small integer");
    return r.get_num().get_si();
}

inline Rat factorial(long n) {
    Rat r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Rat binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Rat r = 1;
    for (long i = 0; i < k; ++i) r *= Rat(n - i, i + 1);
    r.canonicalize();
    return r;
}

}  // namespace voa
