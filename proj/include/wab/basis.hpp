#pragma once

#include <compare>
#include <limits>
#include <map>
#include <string>

#include "wab/scalar.hpp"

namespace wab {

/// Module basis label v_m^j: layer j, weight offset m.
struct BasisIndex {
    long layer;
    long offset;

    auto operator<=>(const BasisIndex&) const = default;

    std::string text() const {
        return "v[" + std::to_string(layer) + "," + std::to_string(offset) + "]";
    }
};

/// Closed layer range, either end may be infinite.
struct LayerWindow {
    bool lo_inf = true;
    bool hi_inf = true;
    long lo = 0;
    long hi = 0;

    static LayerWindow all() { return {}; }
    static LayerWindow range(long lo, long hi) { return {false, false, lo, hi}; }
    static LayerWindow at(long j) { return range(j, j); }
    static LayerWindow from(long lo) { return {false, true, lo, 0}; }
    static LayerWindow upto(long hi) { return {true, false, 0, hi}; }

    bool contains(long j) const { return (lo_inf || j >= lo) && (hi_inf || j <= hi); }
    bool finite() const { return !lo_inf && !hi_inf; }
    long count() const { return finite() ? hi - lo + 1 : std::numeric_limits<long>::max(); }

    bool subset_of(const LayerWindow& o) const {
        bool lo_ok = o.lo_inf || (!lo_inf && lo >= o.lo);
        bool hi_ok = o.hi_inf || (!hi_inf && hi <= o.hi);
        return lo_ok && hi_ok;
    }

    bool operator==(const LayerWindow&) const = default;

    std::string text() const {
        std::string s = lo_inf ? "-inf" : std::to_string(lo);
        s += "..";
        s += hi_inf ? "inf" : std::to_string(hi);
        return s;
    }
};

/// Sparse Scalar-linear combination of basis labels; zero coefficients are
/// never stored.
class ModuleVector {
public:
    ModuleVector() = default;

    static ModuleVector basis(const BasisIndex& v) {
        ModuleVector x;
        x.terms_[v] = Scalar(1);
        return x;
    }

    const std::map<BasisIndex, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const BasisIndex& v, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(v, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Scalar coefficient(const BasisIndex& v) const {
        auto it = terms_.find(v);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    ModuleVector operator+(const ModuleVector& o) const {
        ModuleVector r = *this;
        for (auto& [v, c] : o.terms_) r.add_term(v, c);
        return r;
    }

    ModuleVector operator-(const ModuleVector& o) const {
        ModuleVector r = *this;
        for (auto& [v, c] : o.terms_) r.add_term(v, -c);
        return r;
    }

    ModuleVector scaled(const Scalar& c) const {
        ModuleVector r;
        if (c.is_zero()) return r;
        for (auto& [v, co] : terms_) r.add_term(v, co * c);
        return r;
    }

    std::string text() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [v, c] : terms_) {
            if (!first) s += " + ";
            first = false;
            s += "(" + c.text() + ")*" + v.text();
        }
        return s;
    }

private:
    std::map<BasisIndex, Scalar> terms_;
};

}  // namespace wab
