#pragma once

#include <string>
#include <utility>

#include "voa/error.hpp"
#include "voa/poly.hpp"
#include "voa/rational.hpp"
#include "voa/roots.hpp"

namespace voa {

// Rational function in the level k over Rat. Canonical form: gcd(num, den)
// = 1 and den monic; the zero function is 0/1. Equality is structural.
class RatFunc {
  public:
    RatFunc() : num_(UniPoly::zero()), den_(UniPoly::one()) {}
    RatFunc(UniPoly num, UniPoly den) { assign(std::move(num), std::move(den)); }
    /* implicit */ RatFunc(const Rat& v) : num_(UniPoly::constant(v)), den_(UniPoly::one()) {
        if (v == 0) num_ = UniPoly::zero();
    }
    /* implicit */ RatFunc(long v) : RatFunc(Rat(v)) {}
    /* implicit */ RatFunc(const UniPoly& p) : num_(p), den_(UniPoly::one()) {}

    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc(Rat(1)); }
    static RatFunc var() { return RatFunc(UniPoly::var()); }

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const { return num_.constant_value(); }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw Error(Errc::DivisionByZero, "division by the zero function");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    Rat eval(const Rat& k0) const {
        Rat d = den_.eval(k0);
        if (d == 0) throw Error(Errc::PoleAtPoint, "denominator vanishes at k = " + voa::to_string(k0));
        return num_.eval(k0) / d;
    }

    // Canonical display: constant * product of primitive linear factors *
    // residual, over the monic denominator rendered the same way. Reparses
    // to the identical value.
    std::string to_string(const std::string& var = "k") const {
        if (is_zero()) return "0";
        std::string n = factored(num_, var);
        if (den_ == UniPoly::one()) return n;
        return n + " / (" + factored(den_, var) + ")";
    }

  private:
    static std::string factored(const UniPoly& p, const std::string& var) {
        if (p.is_constant()) return voa::to_string(p.constant_value());
        RootSet rs = rational_roots(p);
        UniPoly prod = UniPoly::one();
        for (const auto& [r, m] : rs.roots)
            prod = prod * UniPoly({-Rat(r.get_num()), Rat(r.get_den())}).pow(m);
        prod = prod * rs.residual;
        Rat c = UniPoly::exact_div(p, prod).constant_value();
        std::string s;
        if (c == -1)
            s = "-";
        else if (c != 1)
            s = voa::to_string(c) + "*";
        bool first = true;
        auto append = [&](const UniPoly& f, int mult) {
            for (int i = 0; i < mult; ++i) {
                if (!first) s += "*";
                s += "(" + f.to_string(var) + ")";
                first = false;
            }
        };
        for (const auto& [r, m] : rs.roots)
            append(UniPoly({-Rat(r.get_num()), Rat(r.get_den())}), m);
        if (!(rs.residual == UniPoly::one())) append(rs.residual, 1);
        if (first) s += "1";
        return s;
    }

    void assign(UniPoly num, UniPoly den) {
        if (den.is_zero()) throw Error(Errc::DivisionByZero, "zero denominator");
        if (num.is_zero()) {
            num_ = UniPoly::zero();
            den_ = UniPoly::one();
            return;
        }
        UniPoly g = UniPoly::gcd(num, den);
        if (g.degree() > 0) {
            num = UniPoly::exact_div(num, g);
            den = UniPoly::exact_div(den, g);
        }
        Rat l = den.lead();
        num_ = Rat(1) / l * num;
        den_ = Rat(1) / l * den;
    }

    UniPoly num_, den_;
};

inline RatFunc pow(const RatFunc& b, long e) {
    if (e < 0) return RatFunc::one() / pow(b, -e);
    RatFunc r = RatFunc::one();
    for (long i = 0; i < e; ++i) r = r * b;
    return r;
}

}  // namespace voa
