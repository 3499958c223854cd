#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "voa/error.hpp"
#include "voa/ratfunc.hpp"

namespace voa {

// One factor of a normally ordered monomial: the deriv-th derivative of a
// generator, identified by its declaration index.
struct Factor {
    int gen = 0;
    int deriv = 0;

    friend bool operator==(const Factor&, const Factor&) = default;
};

// Canonical factor order: generator declaration index ascending, then
// derivative order descending. Monomials keep their factors sorted
// non-decreasingly in this order.
inline bool factor_le(const Factor& a, const Factor& b) {
    if (a.gen != b.gen) return a.gen < b.gen;
    return a.deriv >= b.deriv;
}

// A right-nested normally ordered product of derivatives of generators.
// The empty factor list is the vacuum.
struct Monomial {
    std::vector<Factor> factors;

    bool is_vacuum() const { return factors.empty(); }
    size_t size() const { return factors.size(); }

    bool is_sorted() const {
        for (size_t i = 1; i < factors.size(); ++i)
            if (!factor_le(factors[i - 1], factors[i])) return false;
        return true;
    }

    Rat weight(std::span<const Rat> gen_weights) const {
        Rat w = 0;
        for (const Factor& f : factors) w += gen_weights[f.gen] + f.deriv;
        return w;
    }

    static Monomial vacuum() { return {}; }
    static Monomial single(int gen, int deriv = 0) { return {{Factor{gen, deriv}}}; }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Total order on monomials: length first (so the vacuum sorts before the
// bare generators, which sort before composites), then factor-by-factor.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = 0; i < a.size(); ++i) {
            const Factor &x = a.factors[i], &y = b.factors[i];
            if (x.gen != y.gen) return x.gen < y.gen;
            if (x.deriv != y.deriv) return x.deriv > y.deriv;
        }
        return false;
    }
};

struct MonomialHash {
    size_t operator()(const Monomial& m) const {
        size_t h = 0x9e3779b97f4a7c15ull;
        for (const Factor& f : m.factors) {
            h ^= (static_cast<size_t>(f.gen) << 16) ^ static_cast<size_t>(f.deriv);
            h *= 0x100000001b3ull;
        }
        return h;
    }
};

// Finite Q(k)-linear combination of canonical monomials.
class FieldExpr {
  public:
    using Terms = std::map<Monomial, RatFunc, MonomialLess>;

    FieldExpr() = default;

    static FieldExpr zero() { return {}; }
    static FieldExpr vacuum(RatFunc c = RatFunc::one()) { return term(Monomial::vacuum(), std::move(c)); }
    static FieldExpr gen(int g, int deriv = 0) { return term(Monomial::single(g, deriv)); }
    static FieldExpr term(Monomial m, RatFunc c = RatFunc::one()) {
        FieldExpr e;
        if (!c.is_zero()) e.t_.emplace(std::move(m), std::move(c));
        return e;
    }

    bool is_zero() const { return t_.empty(); }
    const Terms& terms() const { return t_; }
    size_t num_terms() const { return t_.size(); }

    RatFunc coeff(const Monomial& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? RatFunc::zero() : it->second;
    }
    RatFunc vacuum_coeff() const { return coeff(Monomial::vacuum()); }

    void add(const Monomial& m, const RatFunc& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = t_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    FieldExpr& operator+=(const FieldExpr& o) {
        for (const auto& [m, c] : o.t_) add(m, c);
        return *this;
    }
    friend FieldExpr operator+(FieldExpr a, const FieldExpr& b) { return a += b; }
    friend FieldExpr operator-(const FieldExpr& a, const FieldExpr& b) { return a + RatFunc(-1) * b; }
    friend FieldExpr operator*(const RatFunc& s, const FieldExpr& e) {
        FieldExpr r;
        if (s.is_zero()) return r;
        for (const auto& [m, c] : e.t_) r.t_.emplace(m, s * c);
        return r;
    }

    friend bool operator==(const FieldExpr&, const FieldExpr&) = default;

    // Common conformal weight of all monomials; NonHomogeneous / ZeroField otherwise.
    Rat weight(std::span<const Rat> gen_weights) const {
        if (t_.empty()) throw Error(Errc::ZeroField, "the zero field has no weight");
        Rat w = t_.begin()->first.weight(gen_weights);
        for (const auto& [m, c] : t_)
            if (m.weight(gen_weights) != w)
                throw Error(Errc::NonHomogeneous, "mixed conformal weights in field expression");
        return w;
    }

    bool is_homogeneous(std::span<const Rat> gen_weights, const Rat& w) const {
        for (const auto& [m, c] : t_)
            if (m.weight(gen_weights) != w) return false;
        return true;
    }

  private:
    Terms t_;
};

// Unstructured normally ordered expression, as written in a source file or
// assembled by hand: atoms, binary NO nests in any association, sums and
// scalar multiples. canonicalize() turns it into a FieldExpr.
class RawExpr {
  public:
    enum class Kind { Vacuum, Atom, NO, Sum };

    static RawExpr vacuum() { return RawExpr(Kind::Vacuum); }
    static RawExpr atom(int gen, int deriv = 0) {
        RawExpr e(Kind::Atom);
        e.factor_ = {gen, deriv};
        return e;
    }
    static RawExpr no(RawExpr left, RawExpr right) {
        RawExpr e(Kind::NO);
        e.parts_.push_back(std::make_shared<RawExpr>(std::move(left)));
        e.parts_.push_back(std::make_shared<RawExpr>(std::move(right)));
        return e;
    }
    static RawExpr scaled(RatFunc c, RawExpr x) {
        RawExpr e(Kind::Sum);
        e.parts_.push_back(std::make_shared<RawExpr>(std::move(x)));
        e.coeffs_.push_back(std::move(c));
        return e;
    }

    RawExpr& operator+=(RawExpr o) {
        if (kind_ != Kind::Sum) {
            RawExpr self = std::move(*this);
            *this = RawExpr(Kind::Sum);
            parts_.push_back(std::make_shared<RawExpr>(std::move(self)));
            coeffs_.push_back(RatFunc::one());
        }
        parts_.push_back(std::make_shared<RawExpr>(std::move(o)));
        coeffs_.push_back(RatFunc::one());
        return *this;
    }

    Kind kind() const { return kind_; }
    const Factor& factor() const { return factor_; }
    const RawExpr& left() const { return *parts_[0]; }
    const RawExpr& right() const { return *parts_[1]; }
    size_t num_summands() const { return parts_.size(); }
    const RawExpr& summand(size_t i) const { return *parts_[i]; }
    const RatFunc& summand_coeff(size_t i) const { return coeffs_[i]; }

  private:
    explicit RawExpr(Kind k) : kind_(k) {}

    Kind kind_;
    Factor factor_{};
    std::vector<std::shared_ptr<RawExpr>> parts_;
    std::vector<RatFunc> coeffs_;
};

struct ModeIndices {
    long product_index;  // n with a_(n)b
    Rat physics_mode;    // m with m = n - weight(a) + 1
};

// Single authority for converting between the three indexings: OPE pole
// degree d, n-th product index n = d - 1, and the physics mode of the left
// field. Pole degrees may be rational in principle, but the product index
// must come out integral.
inline ModeIndices mode_convert(const Rat& pole_degree, const Rat& weight_left) {
    Rat n = pole_degree - 1;
    if (!is_integer(n))
        throw Error(Errc::NonIntegralProduct,
                    "pole degree " + to_string(pole_degree) + " has no integral product index");
    ModeIndices mi;
    mi.product_index = to_long(n);
    mi.physics_mode = n - weight_left + 1;
    return mi;
}

}  // namespace voa
