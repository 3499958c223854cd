#pragma once

#include <string>
#include <utility>
#include <vector>

#include "voa/error.hpp"
#include "voa/rational.hpp"

namespace voa {

// Univariate polynomial in the formal level k over Rat. Canonical form: no
// trailing zero coefficient; the empty vector is the zero polynomial.
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly zero() { return UniPoly(); }
    static UniPoly constant(Rat v) { return UniPoly({std::move(v)}); }
    static UniPoly one() { return constant(1); }
    // The variable itself.
    static UniPoly var() { return UniPoly({Rat(0), Rat(1)}); }

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1 by convention
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }

    Rat coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rat(0);
    }
    Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }

    bool is_constant() const { return c_.size() <= 1; }
    Rat constant_value() const { return coeff(0); }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return UniPoly(std::move(c));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(c));
    }
    friend UniPoly operator*(const Rat& s, const UniPoly& a) {
        if (s == 0) return zero();
        UniPoly r = a;
        for (auto& x : r.c_) x *= s;
        return r;
    }

    UniPoly pow(long e) const {
        UniPoly r = one();
        for (long i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    // quotient/remainder; b must be nonzero
    static std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
        UniPoly rem = a, quot;
        quot.c_.assign(a.c_.size(), Rat(0));
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            int d = rem.degree() - b.degree();
            Rat q = rem.lead() / b.lead();
            quot.c_[d] += q;
            for (size_t i = 0; i < b.c_.size(); ++i) rem.c_[i + d] -= q * b.c_[i];
            rem.trim();
        }
        quot.trim();
        return {quot, rem};
    }

    // exact division; throws if the division leaves a remainder
    static UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
        auto [q, r] = divrem(a, b);
        if (!r.is_zero()) throw Error(Errc::DivisionByZero, "inexact polynomial division");
        return q;
    }

    // monic gcd; gcd(0,0) = 0
    static UniPoly gcd(UniPoly a, UniPoly b) {
        while (!b.is_zero()) {
            a = divrem(a, b).second;
            std::swap(a, b);
        }
        return a.monic();
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return Rat(1) / lead() * *this;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return zero();
        std::vector<Rat> c(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = Rat(static_cast<long>(i)) * c_[i];
        return UniPoly(std::move(c));
    }

    Rat eval(const Rat& x) const {
        Rat r = 0;
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    // Smallest positive rational scale turning this into an integer
    // polynomial with content 1 and positive leading coefficient.
    // Returns the scaled polynomial; the zero polynomial maps to itself.
    UniPoly primitive_integer() const {
        if (is_zero()) return *this;
        Int l = 1;
        for (const auto& x : c_) {
            Int d = x.get_den();
            Int g;
            mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
            l = l / g * d;
        }
        Int content = 0;
        for (const auto& x : c_) {
            Int n = x.get_num() * (l / x.get_den());
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), n.get_mpz_t());
        }
        Rat scale(l, content);
        scale.canonicalize();
        UniPoly r = scale * *this;
        if (r.lead() < 0) r = Rat(-1) * r;
        return r;
    }

    // "2*k^2 - 11/2*k + 3"; descending powers, variable named `var`
    std::string to_string(const std::string& var = "k") const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const Rat& a = c_[i];
            if (a == 0) continue;
            Rat mag = abs(a);
            if (s.empty())
                s += (a < 0) ? "-" : "";
            else
                s += (a < 0) ? " - " : " + ";
            bool unit = (mag == 1) && i > 0;
            if (!unit) s += voa::to_string(mag);
            if (i > 0) {
                if (!unit) s += "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rat> c_;
};

}  // namespace voa
