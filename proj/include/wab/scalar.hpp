#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wab/rational.hpp"

namespace wab {

/// A denominator vanished identically (division by the zero scalar, or a
/// substitution that kills a denominator).
struct ZeroDenominator : std::runtime_error {
    explicit ZeroDenominator(const std::string& what) : std::runtime_error(what) {}
};

/// Interned indeterminate names. Monomial order is graded-lex with the
/// variables ranked alphabetically by name, so printed forms are stable
/// across runs regardless of registration order.
class VarTable {
public:
    static VarTable& instance() {
        static VarTable t;
        return t;
    }

    int id(const std::string& name) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = ids_.find(name);
        if (it != ids_.end()) return it->second;
        int v = static_cast<int>(names_.size());
        names_.push_back(name);
        ids_.emplace(name, v);
        return v;
    }

    std::string name(int v) const {
        std::lock_guard<std::mutex> lock(mu_);
        return names_.at(static_cast<size_t>(v));
    }

    // alphabetical rank; ties impossible (names unique)
    bool name_less(int x, int y) const {
        if (x == y) return false;
        std::lock_guard<std::mutex> lock(mu_);
        return names_[static_cast<size_t>(x)] < names_[static_cast<size_t>(y)];
    }

private:
    VarTable() = default;
    mutable std::mutex mu_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> ids_;
};

/// Product of indeterminate powers; exponents are strictly positive,
/// factors kept sorted in the canonical (alphabetical) variable order.
class Monomial {
public:
    Monomial() = default;

    static Monomial one() { return Monomial(); }

    static Monomial var(int id, unsigned exp = 1) {
        Monomial m;
        if (exp > 0) m.f_.emplace_back(id, exp);
        return m;
    }

    bool is_one() const { return f_.empty(); }

    unsigned degree() const {
        unsigned d = 0;
        for (auto& [v, e] : f_) d += e;
        return d;
    }

    const std::vector<std::pair<int, unsigned>>& factors() const { return f_; }

    Monomial operator*(const Monomial& o) const {
        auto& vt = VarTable::instance();
        Monomial r;
        r.f_.reserve(f_.size() + o.f_.size());
        size_t i = 0, j = 0;
        while (i < f_.size() && j < o.f_.size()) {
            if (f_[i].first == o.f_[j].first) {
                r.f_.emplace_back(f_[i].first, f_[i].second + o.f_[j].second);
                ++i, ++j;
            } else if (vt.name_less(f_[i].first, o.f_[j].first)) {
                r.f_.push_back(f_[i++]);
            } else {
                r.f_.push_back(o.f_[j++]);
            }
        }
        for (; i < f_.size(); ++i) r.f_.push_back(f_[i]);
        for (; j < o.f_.size(); ++j) r.f_.push_back(o.f_[j]);
        return r;
    }

    /// Graded-lex: higher total degree first; on ties the larger exponent on
    /// the alphabetically-earliest differing variable wins. Returns <0, 0, >0
    /// with >0 meaning x sorts in front of y.
    static int compare(const Monomial& x, const Monomial& y) {
        unsigned dx = x.degree(), dy = y.degree();
        if (dx != dy) return dx > dy ? 1 : -1;
        auto& vt = VarTable::instance();
        size_t i = 0, j = 0;
        while (i < x.f_.size() && j < y.f_.size()) {
            int vx = x.f_[i].first, vy = y.f_[j].first;
            if (vx == vy) {
                if (x.f_[i].second != y.f_[j].second)
                    return x.f_[i].second > y.f_[j].second ? 1 : -1;
                ++i, ++j;
            } else if (vt.name_less(vx, vy)) {
                return 1;  // x has a positive power on an earlier variable
            } else {
                return -1;
            }
        }
        if (i < x.f_.size()) return 1;
        if (j < y.f_.size()) return -1;
        return 0;
    }

    bool operator==(const Monomial& o) const { return f_ == o.f_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    std::string text() const {
        if (f_.empty()) return "1";
        auto& vt = VarTable::instance();
        std::string s;
        for (size_t i = 0; i < f_.size(); ++i) {
            if (i) s += "*";
            s += vt.name(f_[i].first);
            if (f_[i].second != 1) s += "^" + std::to_string(f_[i].second);
        }
        return s;
    }

private:
    std::vector<std::pair<int, unsigned>> f_;
};

struct MonomialFront {
    bool operator()(const Monomial& x, const Monomial& y) const {
        return Monomial::compare(x, y) > 0;
    }
};

/// Sparse multivariate polynomial over Q. The term map is canonical: equal
/// polynomials have identical term maps.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, MonomialFront>;

    Polynomial() = default;

    explicit Polynomial(const Rational& c) {
        if (c != 0) terms_[Monomial::one()] = c;
    }

    static Polynomial constant(const Rational& c) { return Polynomial(c); }

    static Polynomial variable(const std::string& name) {
        Polynomial p;
        p.terms_[Monomial::var(VarTable::instance().id(name))] = 1;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    const TermMap& terms() const { return terms_; }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial operator+(const Polynomial& o) const {
        Polynomial r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }

    Polynomial operator-(const Polynomial& o) const {
        Polynomial r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    Polynomial operator*(const Polynomial& o) const {
        Polynomial r;
        for (auto& [m1, c1] : terms_)
            for (auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
        return r;
    }

    Polynomial scaled(const Rational& c) const {
        Polynomial r;
        if (c == 0) return r;
        for (auto& [m, co] : terms_) r.terms_.emplace(m, co * c);
        return r;
    }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    const Rational& leading_coefficient() const {
        static const Rational zero{0};
        return terms_.empty() ? zero : terms_.begin()->second;
    }

    /// Expanded form, terms in graded-lex order, e.g. "a^2 - 2*a*b + 1".
    std::string text() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [m, c] : terms_) {
            Rational ac = c < 0 ? Rational(-c) : c;
            if (first) {
                if (c < 0) s += "-";
            } else {
                s += c < 0 ? " - " : " + ";
            }
            first = false;
            if (m.is_one()) {
                s += rational_text(ac);
            } else {
                if (ac != 1) s += rational_text(ac) + "*";
                s += m.text();
            }
        }
        return s;
    }

private:
    TermMap terms_;
};

/// Exact rational function over Q: numerator/denominator pair of expanded
/// polynomials. Normal form: all coefficients are integers with joint content
/// 1 and the denominator's graded-lex leading coefficient is positive. No
/// polynomial gcd cancellation is performed; equality always goes through
/// cross-multiplication of the difference, so reduced form is never assumed.
class Scalar {
public:
    Scalar() : num_(), den_(Rational(1)) {}
    Scalar(long v) : num_(Rational(v)), den_(Rational(1)) {}          // NOLINT(google-explicit-constructor)
    Scalar(const Rational& v) : num_(v), den_(Rational(1)) {}         // NOLINT(google-explicit-constructor)

    static Scalar variable(const std::string& name) {
        return Scalar(Polynomial::variable(name), Polynomial(Rational(1)));
    }

    static Scalar from_poly(Polynomial num, Polynomial den = Polynomial(Rational(1))) {
        return Scalar(std::move(num), std::move(den));
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    Scalar operator+(const Scalar& o) const {
        return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Scalar operator-(const Scalar& o) const {
        return Scalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Scalar operator*(const Scalar& o) const { return Scalar(num_ * o.num_, den_ * o.den_); }
    Scalar operator/(const Scalar& o) const {
        if (o.is_zero()) throw ZeroDenominator("division by zero scalar");
        return Scalar(num_ * o.den_, den_ * o.num_);
    }
    Scalar operator-() const { return Scalar(-num_, den_); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    /// The sole equality oracle: is_zero of the cross-multiplied difference.
    bool equals(const Scalar& o) const { return (*this - o).is_zero(); }

    /// Constant value if this scalar is a ratio of constants.
    std::optional<Rational> as_rational() const {
        if (!num_.is_constant() || !den_.is_constant()) return std::nullopt;
        if (num_.is_zero()) return Rational(0);
        return num_.leading_coefficient() / den_.leading_coefficient();
    }

    /// Simultaneous substitution; bound names are replaced by scalars, the
    /// rest stay symbolic. Throws ZeroDenominator when the denominator
    /// vanishes identically under the binding.
    Scalar substitute(const std::map<std::string, Scalar>& bindings) const {
        Scalar n = substitute_poly(num_, bindings);
        Scalar d = substitute_poly(den_, bindings);
        if (d.is_zero())
            throw ZeroDenominator("substitution makes denominator identically zero");
        return n / d;
    }

    /// Full evaluation at a rational point; every indeterminate must be bound.
    Rational eval(const std::map<std::string, Rational>& bindings) const {
        Rational n = eval_poly(num_, bindings);
        Rational d = eval_poly(den_, bindings);
        if (d == 0) throw ZeroDenominator("denominator vanishes at evaluation point");
        return n / d;
    }

    /// "num" when the denominator is 1, else "(num)/(den)".
    std::string text() const {
        Rational one{1};
        if (den_.is_constant() && !den_.is_zero() && den_.leading_coefficient() == one)
            return num_.text();
        return "(" + num_.text() + ")/(" + den_.text() + ")";
    }

    bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

private:
    Scalar(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    void normalize() {
        if (den_.is_zero()) throw ZeroDenominator("zero denominator polynomial");
        if (num_.is_zero()) {
            den_ = Polynomial(Rational(1));
            return;
        }
        // clear coefficient denominators, then divide out the joint content
        Int l = 1;
        for (auto& [m, c] : num_.terms()) l = lcm(l, denominator(c));
        for (auto& [m, c] : den_.terms()) l = lcm(l, denominator(c));
        Int g = 0;
        auto acc = [&](const Polynomial& p) {
            for (auto& [m, c] : p.terms()) {
                Int t = numerator(c) * (l / denominator(c));
                g = gcd(g, t);
            }
        };
        acc(num_);
        acc(den_);
        Rational scale{l, g};  // g != 0 because num_ is nonzero
        if (den_.leading_coefficient() < 0) scale = -scale;
        num_ = num_.scaled(scale);
        den_ = den_.scaled(scale);
    }

    static Scalar substitute_poly(const Polynomial& p, const std::map<std::string, Scalar>& b) {
        auto& vt = VarTable::instance();
        Scalar acc{0};
        for (auto& [m, c] : p.terms()) {
            Scalar term{Rational(c)};
            Polynomial sym(Rational(1));  // unsubstituted part, stays polynomial
            for (auto& [v, e] : m.factors()) {
                auto it = b.find(vt.name(v));
                if (it == b.end()) {
                    sym = sym * power_poly(v, e);
                } else {
                    term = term * power(it->second, e);
                }
            }
            acc += term * Scalar(sym, Polynomial(Rational(1)));
        }
        return acc;
    }

    static Polynomial power_poly(int var, unsigned e) {
        Polynomial p;
        p.add_term(Monomial::var(var, e), Rational(1));
        return p;
    }

    static Scalar power(const Scalar& s, unsigned e) {
        Scalar r{1};
        for (unsigned i = 0; i < e; ++i) r = r * s;
        return r;
    }

    static Rational eval_poly(const Polynomial& p, const std::map<std::string, Rational>& b) {
        auto& vt = VarTable::instance();
        Rational acc{0};
        for (auto& [m, c] : p.terms()) {
            Rational term = c;
            for (auto& [v, e] : m.factors()) {
                auto it = b.find(vt.name(v));
                if (it == b.end())
                    throw std::invalid_argument("unbound indeterminate '" + vt.name(v) + "'");
                for (unsigned q = 0; q < e; ++q) term *= it->second;
            }
            acc += term;
        }
        return acc;
    }

    Polynomial num_, den_;
};

inline Scalar operator*(long c, const Scalar& s) { return Scalar(c) * s; }
inline Scalar operator+(long c, const Scalar& s) { return Scalar(c) + s; }
inline Scalar operator-(long c, const Scalar& s) { return Scalar(c) - s; }

/// Scalar-or-infinity, used only for the gamma parameter (Convention 2.1).
class ExtendedScalar {
public:
    static ExtendedScalar infinity() {
        ExtendedScalar g;
        g.infinite_ = true;
        return g;
    }
    static ExtendedScalar finite(Scalar v) {
        ExtendedScalar g;
        g.value_ = std::move(v);
        return g;
    }

    bool is_infinite() const { return infinite_; }
    const Scalar& value() const {
        if (infinite_) throw std::logic_error("infinite gamma has no finite value");
        return value_;
    }

    std::string text() const { return infinite_ ? "inf" : value_.text(); }

private:
    bool infinite_ = false;
    Scalar value_{0};
};

/// The factor alpha*gamma + beta read per Convention 2.1: at gamma = infinity
/// an affine-in-gamma factor degenerates to its gamma-coefficient, so k+gamma
/// reads as 1 and b*gamma - a - k reads as b.
inline Scalar gamma_factor(const Scalar& alpha, const Scalar& beta, const ExtendedScalar& g) {
    if (g.is_infinite()) return alpha;
    return alpha * g.value() + beta;
}

}  // namespace wab
