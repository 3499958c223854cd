#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "voa/fields.hpp"

namespace voa {

struct GeneratorDecl {
    std::string name;
    Rat weight;
    bool conformal = false;

    friend bool operator==(const GeneratorDecl&, const GeneratorDecl&) = default;
};

// [a_lambda b] = sum_n lambda^n/n! coeff(n); coeff(n) is the n-th product
// a_(n)b. No zero entries are stored.
class LambdaPoly {
  public:
    using Coeffs = std::map<int, FieldExpr>;

    LambdaPoly() = default;

    bool is_zero() const { return c_.empty(); }
    const Coeffs& coeffs() const { return c_; }
    int max_index() const { return c_.empty() ? -1 : c_.rbegin()->first; }

    FieldExpr coeff(int n) const {
        auto it = c_.find(n);
        return it == c_.end() ? FieldExpr::zero() : it->second;
    }

    void set(int n, FieldExpr e) {
        if (e.is_zero())
            c_.erase(n);
        else
            c_[n] = std::move(e);
    }
    void add(int n, const FieldExpr& e) {
        if (e.is_zero()) return;
        auto [it, fresh] = c_.emplace(n, e);
        if (!fresh) {
            it->second += e;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    void add_scaled(const RatFunc& s, const LambdaPoly& o) {
        for (const auto& [n, e] : o.c_) add(n, s * e);
    }

    friend bool operator==(const LambdaPoly&, const LambdaPoly&) = default;

  private:
    Coeffs c_;
};

// Stored generator-pair brackets, keyed by ordered (left, right) generator
// indices. Missing orientations are synthesized by the calculus via
// skew-symmetry; all brackets involving the conformal vector are synthesized
// from primarity and the declared central charge.
class BracketTable {
  public:
    using Key = std::pair<int, int>;

    bool has(int a, int b) const { return entries_.count({a, b}) > 0; }
    const LambdaPoly* find(int a, int b) const {
        auto it = entries_.find({a, b});
        return it == entries_.end() ? nullptr : &it->second;
    }
    void set(int a, int b, LambdaPoly p) { entries_[{a, b}] = std::move(p); }

    const std::map<Key, LambdaPoly>& entries() const { return entries_; }

    friend bool operator==(const BracketTable&, const BracketTable&) = default;

  private:
    std::map<Key, LambdaPoly> entries_;
};

struct AlgebraPresentation {
    std::string name;
    std::vector<GeneratorDecl> generators;
    BracketTable table;
    RatFunc declared_c;
    Rat critical_level;

    int num_generators() const { return static_cast<int>(generators.size()); }

    int index_of(const std::string& gname) const {
        for (int i = 0; i < num_generators(); ++i)
            if (generators[i].name == gname) return i;
        throw Error(Errc::UnknownGenerator, "no generator named '" + gname + "' in " + name);
    }

    std::optional<int> try_index_of(const std::string& gname) const {
        for (int i = 0; i < num_generators(); ++i)
            if (generators[i].name == gname) return i;
        return std::nullopt;
    }

    int conformal_index() const {
        for (int i = 0; i < num_generators(); ++i)
            if (generators[i].conformal) return i;
        throw Error(Errc::InvalidPresentation, "no conformal generator declared in " + name);
    }

    std::vector<Rat> weights() const {
        std::vector<Rat> w;
        w.reserve(generators.size());
        for (const auto& g : generators) w.push_back(g.weight);
        return w;
    }

    Rat max_weight() const {
        Rat w = 0;
        for (const auto& g : generators)
            if (g.weight > w) w = g.weight;
        return w;
    }

    friend bool operator==(const AlgebraPresentation&, const AlgebraPresentation&) = default;
};

// The same presentation with every coefficient evaluated at a fixed level.
// Throws PoleAtPoint if k0 hits a coefficient denominator.
inline AlgebraPresentation specialize(const AlgebraPresentation& p, const Rat& k0) {
    auto spec_expr = [&](const FieldExpr& e) {
        FieldExpr r;
        for (const auto& [m, c] : e.terms()) r.add(m, RatFunc(c.eval(k0)));
        return r;
    };
    AlgebraPresentation q;
    q.name = p.name;
    q.generators = p.generators;
    q.declared_c = RatFunc(p.declared_c.eval(k0));
    q.critical_level = p.critical_level;
    for (const auto& [key, entry] : p.table.entries()) {
        LambdaPoly e;
        for (const auto& [n, c] : entry.coeffs()) e.set(n, spec_expr(c));
        q.table.set(key.first, key.second, std::move(e));
    }
    return q;
}

}  // namespace voa
