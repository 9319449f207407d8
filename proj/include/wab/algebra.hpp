#pragma once

#include <compare>
#include <map>
#include <string>

#include "wab/report.hpp"
#include "wab/scalar.hpp"

namespace wab {

enum class GenKind : unsigned char { L, W };

/// Basis element L_k or W_k of W(a,b).
struct Generator {
    GenKind kind;
    long index;

    auto operator<=>(const Generator&) const = default;

    std::string text() const {
        return std::string(kind == GenKind::L ? "L" : "W") + std::to_string(index);
    }
};

inline Generator gen_L(long k) { return {GenKind::L, k}; }
inline Generator gen_W(long k) { return {GenKind::W, k}; }

/// The structure parameters a, b; symbolic by default, exact rationals when
/// concrete.
struct AlgebraParams {
    Scalar a;
    Scalar b;

    static AlgebraParams symbolic() {
        return {Scalar::variable("a"), Scalar::variable("b")};
    }
    static AlgebraParams with(Scalar a_, Scalar b_) { return {std::move(a_), std::move(b_)}; }
};

/// Finite Scalar-linear combination of generators.
class AlgebraElement {
public:
    AlgebraElement() = default;

    static AlgebraElement basis(const Generator& g) {
        AlgebraElement x;
        x.terms_[g] = Scalar(1);
        return x;
    }

    const std::map<Generator, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Generator& g, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(g, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    AlgebraElement operator+(const AlgebraElement& o) const {
        AlgebraElement r = *this;
        for (auto& [g, c] : o.terms_) r.add_term(g, c);
        return r;
    }

    AlgebraElement scaled(const Scalar& c) const {
        AlgebraElement r;
        if (c.is_zero()) return r;
        for (auto& [g, co] : terms_) r.add_term(g, co * c);
        return r;
    }

    AlgebraElement operator-(const AlgebraElement& o) const {
        return *this + o.scaled(Scalar(-1));
    }

private:
    std::map<Generator, Scalar> terms_;
};

/// [L_i, L_j] = (j-i) L_{i+j}, [L_i, W_j] = (a+j+bi) W_{i+j}, [W_i, W_j] = 0,
/// extended bilinearly.
inline AlgebraElement bracket(const AlgebraParams& p, const AlgebraElement& x,
                              const AlgebraElement& y) {
    AlgebraElement r;
    for (auto& [gx, cx] : x.terms()) {
        for (auto& [gy, cy] : y.terms()) {
            Scalar c = cx * cy;
            long i = gx.index, j = gy.index;
            if (gx.kind == GenKind::L && gy.kind == GenKind::L) {
                r.add_term(gen_L(i + j), Scalar(j - i) * c);
            } else if (gx.kind == GenKind::L && gy.kind == GenKind::W) {
                r.add_term(gen_W(i + j), (p.a + Scalar(j) + p.b * Scalar(i)) * c);
            } else if (gx.kind == GenKind::W && gy.kind == GenKind::L) {
                r.add_term(gen_W(i + j), -(p.a + Scalar(i) + p.b * Scalar(j)) * c);
            }
            // [W,W] = 0
        }
    }
    return r;
}

/// Jacobi identity on all generator triples with |index| <= K, symbolic in
/// a and b when the params are symbolic.
inline VerificationReport check_jacobi(const AlgebraParams& p, int K) {
    if (K < 1) throw std::invalid_argument("check_jacobi: K must be >= 1");
    VerificationReport rep;
    rep.window_k = K;
    std::vector<Generator> gens;
    for (long k = -K; k <= K; ++k) {
        gens.push_back(gen_L(k));
        gens.push_back(gen_W(k));
    }
    for (auto& x : gens) {
        for (auto& y : gens) {
            for (auto& z : gens) {
                AlgebraElement bx = AlgebraElement::basis(x);
                AlgebraElement by = AlgebraElement::basis(y);
                AlgebraElement bz = AlgebraElement::basis(z);
                AlgebraElement s = bracket(p, bx, bracket(p, by, bz)) +
                                   bracket(p, by, bracket(p, bz, bx)) +
                                   bracket(p, bz, bracket(p, bx, by));
                ++rep.checks;
                for (auto& [g, c] : s.terms()) {
                    rep.add_residual({"jacobi",
                                      {static_cast<long>(x.kind == GenKind::W), x.index,
                                       static_cast<long>(y.kind == GenKind::W), y.index,
                                       static_cast<long>(z.kind == GenKind::W), z.index},
                                      g.text(), c});
                }
            }
        }
    }
    return rep;
}

}  // namespace wab
