#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "wab/algebra.hpp"
#include "wab/basis.hpp"
#include "wab/catalog.hpp"

namespace wab {

/// An executable module action rule: given a generator and a basis label,
/// produce the exact image vector. Implementations are immutable and pure;
/// concurrent evaluation is permitted.
class ActionRule {
public:
    virtual ~ActionRule() = default;

    virtual const AlgebraParams& algebra() const = 0;
    virtual const LayerWindow& window() const = 0;

    /// Raw action terms before layer-window clipping.
    virtual std::vector<ActTerm> act_raw(const Generator& g, const BasisIndex& v) const = 0;

    /// In-window labels u whose action act(g, u) has a component on t.
    virtual std::vector<BasisIndex> co_support(const Generator& g, const BasisIndex& t) const = 0;

    /// Window-applied action: labels outside the window act as zero; raw
    /// terms landing outside the window are dropped and flagged as clipped.
    ModuleVector act(const Generator& g, const BasisIndex& v, bool* clipped = nullptr) const {
        ModuleVector out;
        if (!window().contains(v.layer)) return out;
        for (auto& term : act_raw(g, v)) {
            if (!window().contains(term.target.layer)) {
                if (clipped) *clipped = true;
                continue;
            }
            out.add_term(term.target, term.coeff);
        }
        return out;
    }

    ModuleVector act(const Generator& g, const ModuleVector& v, bool* clipped = nullptr) const {
        ModuleVector out;
        for (auto& [lab, c] : v.terms()) out = out + act(g, lab, clipped).scaled(c);
        return out;
    }

    /// Bilinear extension to algebra elements.
    ModuleVector act(const AlgebraElement& x, const ModuleVector& v, bool* clipped = nullptr) const {
        ModuleVector out;
        for (auto& [g, c] : x.terms()) out = out + act(g, v, clipped).scaled(c);
        return out;
    }

protected:
    /// co_support helper: probe candidates against the window-applied action.
    std::vector<BasisIndex> probe_candidates(const Generator& g, const BasisIndex& t,
                                             std::vector<BasisIndex> candidates) const {
        std::vector<BasisIndex> out;
        for (auto& u : candidates) {
            if (!window().contains(u.layer)) continue;
            if (!act(g, u).coefficient(t).is_zero()) out.push_back(u);
        }
        return out;
    }
};

using RulePtr = std::shared_ptr<const ActionRule>;

/// Catalog family action.
class FamilyRule : public ActionRule {
public:
    explicit FamilyRule(ModuleSpec spec) : spec_(std::move(spec)) {}

    const ModuleSpec& spec() const { return spec_; }
    const AlgebraParams& algebra() const override { return spec_.algebra; }
    const LayerWindow& window() const override { return spec_.layers; }

    std::vector<ActTerm> act_raw(const Generator& g, const BasisIndex& v) const override {
        std::vector<ActTerm> out;
        if (auto term = family_act_raw(spec_, g, v)) out.push_back(std::move(*term));
        return out;
    }

    std::vector<BasisIndex> co_support(const Generator& g, const BasisIndex& t) const override {
        return probe_candidates(g, t, family_co_candidates(spec_, g, t));
    }

private:
    ModuleSpec spec_;
};

inline RulePtr make_rule(ModuleSpec spec) {
    return std::make_shared<FamilyRule>(std::move(spec));
}

/// Mechanical dual of an action rule, by coefficient extraction against the
/// pairing x f (v) = -f(x v). Labels are reused verbatim: the dual label
/// (j, m) stands for the functional dual to v_m^j.
class DualRule : public ActionRule {
public:
    explicit DualRule(RulePtr inner) : inner_(std::move(inner)) {
        const LayerWindow& w = inner_->window();
        if (!(w.finite() || (w.lo_inf && w.hi_inf)))
            throw BadParams("dualize: layer window must be finite or all of Z");
    }

    const RulePtr& inner() const { return inner_; }
    const AlgebraParams& algebra() const override { return inner_->algebra(); }
    const LayerWindow& window() const override { return inner_->window(); }

    std::vector<ActTerm> act_raw(const Generator& g, const BasisIndex& u) const override {
        std::vector<ActTerm> out;
        for (auto& v : inner_->co_support(g, u)) {
            Scalar c = inner_->act(g, v).coefficient(u);
            if (!c.is_zero()) out.push_back({-c, v});
        }
        return out;
    }

    std::vector<BasisIndex> co_support(const Generator& g, const BasisIndex& t) const override {
        // act_raw(g, u) hits t  iff  inner act(g, t) hits u
        std::vector<BasisIndex> out;
        for (auto& [lab, c] : inner_->act(g, t).terms()) out.push_back(lab);
        return out;
    }

private:
    RulePtr inner_;
};

inline RulePtr dualize(RulePtr rule) { return std::make_shared<DualRule>(std::move(rule)); }

/// Transport of a W(a,0)-module structure to W(a,1) along eta: L_k acts
/// unchanged, W_k acts as 1/(a+k) times the old W_k.
class TwistRule : public ActionRule {
public:
    explicit TwistRule(RulePtr inner, bool invert = false)
        : inner_(std::move(inner)), invert_(invert) {
        const AlgebraParams& p = inner_->algebra();
        Scalar expect = invert_ ? Scalar(1) : Scalar(0);
        if (!p.b.equals(expect))
            throw BadParams(invert_ ? "untwist: inner rule must be over W(a,1)"
                                    : "twist: inner rule must be over W(a,0)");
        long dummy;
        if (detail::is_concrete_integer(p.a, &dummy))
            throw BadParams("twist: concrete integer a makes a+k vanish");
        alg_ = AlgebraParams::with(p.a, invert_ ? Scalar(0) : Scalar(1));
    }

    const RulePtr& inner() const { return inner_; }
    const AlgebraParams& algebra() const override { return alg_; }
    const LayerWindow& window() const override { return inner_->window(); }

    std::vector<ActTerm> act_raw(const Generator& g, const BasisIndex& v) const override {
        auto terms = inner_->act_raw(g, v);
        if (g.kind == GenKind::W) {
            Scalar f = alg_.a + Scalar(g.index);
            for (auto& t : terms) t.coeff = invert_ ? t.coeff * f : t.coeff / f;
        }
        return terms;
    }

    std::vector<BasisIndex> co_support(const Generator& g, const BasisIndex& t) const override {
        return inner_->co_support(g, t);
    }

private:
    RulePtr inner_;
    bool invert_;
    AlgebraParams alg_;
};

inline RulePtr twist_eta(RulePtr rule) { return std::make_shared<TwistRule>(std::move(rule), false); }
inline RulePtr untwist_eta(RulePtr rule) { return std::make_shared<TwistRule>(std::move(rule), true); }

/// Adds one extra term to the action of a single (generator, label) pair;
/// used as a corruption probe against the window checks.
class PerturbedRule : public ActionRule {
public:
    PerturbedRule(RulePtr inner, Generator g, BasisIndex v, ActTerm extra)
        : inner_(std::move(inner)), g_(g), v_(v), extra_(std::move(extra)) {}

    const AlgebraParams& algebra() const override { return inner_->algebra(); }
    const LayerWindow& window() const override { return inner_->window(); }

    std::vector<ActTerm> act_raw(const Generator& g, const BasisIndex& v) const override {
        auto terms = inner_->act_raw(g, v);
        if (g == g_ && v == v_) terms.push_back(extra_);
        return terms;
    }

    std::vector<BasisIndex> co_support(const Generator& g, const BasisIndex& t) const override {
        auto out = inner_->co_support(g, t);
        if (g == g_ && extra_.target == t) {
            bool present = false;
            for (auto& u : out) present = present || u == v_;
            if (!present && window().contains(v_.layer)) out.push_back(v_);
        }
        return out;
    }

private:
    RulePtr inner_;
    Generator g_;
    BasisIndex v_;
    ActTerm extra_;
};

/// How a single layer of a hand-built stack behaves under the L-action.
enum class LayerKind {
    APrime,        // L_k v_m = (lambda_eff + m + k mu) v_{m+k}
    ADoublePrime,  // irreducible quotient: label (j,0) absent, L_k v_m = m v_{m+k}
    BPrime,        // L_k v_m = m v_{m+k} (m != -k), L_k v_{-k} = -k(k+gamma) v_0
};

struct StackLayer {
    LayerKind kind = LayerKind::APrime;
    Scalar lambda_eff{0};  // APrime only
    Scalar mu{0};          // APrime only
    ExtendedScalar gamma = ExtendedScalar::finite(Scalar::variable("gam"));  // BPrime only
    /// W_k v_m^j -> w(k,m) v_{m+k}^{j+1}; empty on the top layer.
    std::function<Scalar(long, long)> w;
};

/// A hand-built tower of intermediate-series layers with explicit W-action
/// coefficients; the classifier's candidate solutions and the negative
/// controls are expressed as stacks.
class StackRule : public ActionRule {
public:
    StackRule(AlgebraParams alg, long j_lo, std::vector<StackLayer> layers)
        : alg_(std::move(alg)), j_lo_(j_lo), layers_(std::move(layers)),
          window_(LayerWindow::range(j_lo, j_lo + static_cast<long>(layers_.size()) - 1)) {}

    const AlgebraParams& algebra() const override { return alg_; }
    const LayerWindow& window() const override { return window_; }

    std::vector<ActTerm> act_raw(const Generator& g, const BasisIndex& v) const override {
        std::vector<ActTerm> out;
        if (!window_.contains(v.layer)) return out;
        const StackLayer& lay = layers_[static_cast<size_t>(v.layer - j_lo_)];
        const long k = g.index, m = v.offset;
        if (absent(v.layer, m)) return out;
        if (g.kind == GenKind::L) {
            Scalar c;
            switch (lay.kind) {
                case LayerKind::APrime:
                    c = lay.lambda_eff + Scalar(m) + Scalar(k) * lay.mu;
                    break;
                case LayerKind::ADoublePrime:
                    c = Scalar(m);
                    break;
                case LayerKind::BPrime:
                    if (m == -k) {
                        c = -Scalar(k) * gamma_factor(Scalar(1), Scalar(k), lay.gamma);
                        push(out, c, v.layer, 0);
                        return out;
                    }
                    c = Scalar(m);
                    break;
            }
            push(out, c, v.layer, m + k);
            return out;
        }
        if (!lay.w) return out;
        push(out, lay.w(k, m), v.layer + 1, m + k);
        return out;
    }

    std::vector<BasisIndex> co_support(const Generator& g, const BasisIndex& t) const override {
        long dj = g.kind == GenKind::L ? 0 : -1;
        return probe_candidates(g, t, {{t.layer + dj, t.offset - g.index}});
    }

private:
    bool absent(long j, long m) const {
        if (!window_.contains(j)) return true;
        return layers_[static_cast<size_t>(j - j_lo_)].kind == LayerKind::ADoublePrime && m == 0;
    }

    void push(std::vector<ActTerm>& out, Scalar c, long j2, long m2) const {
        if (c.is_zero()) return;
        if (window_.contains(j2) && absent(j2, m2)) return;  // image label absent: genuine zero
        out.push_back({std::move(c), BasisIndex{j2, m2}});
    }

    AlgebraParams alg_;
    long j_lo_;
    std::vector<StackLayer> layers_;
    LayerWindow window_;
};

/// L_0 eigenvalue of a basis label, computed from the action itself. Every
/// catalog action sends v to a multiple of v under L_0; anything else is a
/// defect in the rule.
inline Scalar weight_of(const ActionRule& rule, const BasisIndex& v) {
    ModuleVector r = rule.act(gen_L(0), v);
    if (r.is_zero()) return Scalar(0);
    if (r.terms().size() != 1 || r.terms().begin()->first != v)
        throw std::logic_error("L_0 image of " + v.text() + " is not a multiple of it");
    return r.terms().begin()->second;
}

}  // namespace wab
