#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wab/action_rule.hpp"
#include "wab/report.hpp"

namespace wab {

namespace detail {

/// Layers actually iterated by a window check: the rule's window clamped to
/// [-(K+2), K+2], which covers every case split (m = 0, m = -k, layer
/// boundaries) with margin at the shipped window sizes.
inline std::pair<long, long> layer_iteration_range(const LayerWindow& w, int K) {
    long lo = w.lo_inf ? -(K + 2) : std::max<long>(w.lo, -(K + 2));
    long hi = w.hi_inf ? (K + 2) : std::min<long>(w.hi, K + 2);
    return {lo, hi};
}

inline void collect_residuals(VerificationReport& rep, const std::string& relation,
                              std::vector<long> indices, const ModuleVector& residual) {
    for (auto& [lab, c] : residual.terms()) {
        ResidualEntry e;
        e.relation = relation;
        e.indices = indices;
        e.at = lab.text();
        e.residual = c;
        rep.add_residual(std::move(e));
    }
}

}  // namespace detail

/// Checks that the rule is a genuine module over its algebra on a finite
/// window: for all |i|,|k| <= K, layers in window, |m| <= M it asserts
///   act([x,y], v) = act(x, act(y, v)) - act(y, act(x, v))
/// for (x,y) in {(L_i,L_k), (L_i,W_k), (W_i,W_k)}. Assertions where window
/// truncation clips an intermediate term are skipped and counted, never
/// failed: a finite window of an infinite module is not a submodule.
inline VerificationReport check_module_window(const ActionRule& rule, int K, int M) {
    if (K < 1 || M < 1) throw std::invalid_argument("check_module_window: K, M must be >= 1");
    VerificationReport rep;
    rep.window_k = K;
    rep.window_m = M;
    const AlgebraParams& alg = rule.algebra();
    auto [jlo, jhi] = detail::layer_iteration_range(rule.window(), K);

    struct Pair {
        const char* id;
        Generator x, y;
    };
    std::vector<Pair> pairs;
    for (long i = -K; i <= K; ++i)
        for (long k = -K; k <= K; ++k) {
            if (i < k) pairs.push_back({"LL", gen_L(i), gen_L(k)});
            pairs.push_back({"LW", gen_L(i), gen_W(k)});
            if (i < k) pairs.push_back({"WW", gen_W(i), gen_W(k)});
        }

    for (auto& pr : pairs) {
        AlgebraElement bx = AlgebraElement::basis(pr.x);
        AlgebraElement by = AlgebraElement::basis(pr.y);
        AlgebraElement br = bracket(alg, bx, by);
        for (long j = jlo; j <= jhi; ++j) {
            for (long m = -M; m <= M; ++m) {
                BasisIndex v{j, m};
                bool clip = false;
                ModuleVector base = ModuleVector::basis(v);
                ModuleVector lhs = rule.act(pr.x, rule.act(pr.y, base, &clip), &clip) -
                                   rule.act(pr.y, rule.act(pr.x, base, &clip), &clip);
                ModuleVector rhs = rule.act(br, base, &clip);
                if (clip) {
                    ++rep.skips;
                    continue;
                }
                ++rep.checks;
                detail::collect_residuals(rep, pr.id, {pr.x.index, pr.y.index, j, m}, lhs - rhs);
            }
        }
    }
    return rep;
}

/// The [W_i, W_k] = 0 slice of the window check, contentful only on rules
/// with at least three layers.
inline VerificationReport check_w_square_zero(const ActionRule& rule, int K, int M) {
    if (rule.window().finite() && rule.window().count() < 3)
        throw BadParams("check_w_square_zero: rule has fewer than 3 layers");
    VerificationReport rep;
    rep.window_k = K;
    rep.window_m = M;
    auto [jlo, jhi] = detail::layer_iteration_range(rule.window(), K);
    for (long i = -K; i <= K; ++i) {
        for (long k = i + 1; k <= K; ++k) {
            for (long j = jlo; j <= jhi; ++j) {
                for (long m = -M; m <= M; ++m) {
                    bool clip = false;
                    ModuleVector base = ModuleVector::basis(BasisIndex{j, m});
                    ModuleVector lhs = rule.act(gen_W(i), rule.act(gen_W(k), base, &clip), &clip) -
                                       rule.act(gen_W(k), rule.act(gen_W(i), base, &clip), &clip);
                    if (clip) {
                        ++rep.skips;
                        continue;
                    }
                    ++rep.checks;
                    detail::collect_residuals(rep, "WW", {i, k, j, m}, lhs);
                }
            }
        }
    }
    return rep;
}

/// Candidate module map: label -> (scalar factor, image label); undefined on
/// a label means the check involving it is skipped.
struct BasisMap {
    std::function<std::optional<std::pair<Scalar, BasisIndex>>(const BasisIndex&)> map;

    static BasisMap identity() {
        return {[](const BasisIndex& v) {
            return std::optional<std::pair<Scalar, BasisIndex>>({Scalar(1), v});
        }};
    }

    /// v_m^j -> sign^j * scale * u at (lo + hi - j, -m); the dual-module
    /// relabeling device of the catalog (layer reflection inside the window).
    static BasisMap dual_relabel(long layer_lo_plus_hi, long sign, const Scalar& scale = Scalar(1)) {
        return {[=](const BasisIndex& v) {
            Scalar s = (sign < 0 && (v.layer % 2 != 0)) ? Scalar(-1) : Scalar(1);
            return std::optional<std::pair<Scalar, BasisIndex>>(
                {s * scale, BasisIndex{layer_lo_plus_hi - v.layer, -v.offset}});
        }};
    }

    ModuleVector apply(const ModuleVector& v, bool* undefined) const {
        ModuleVector out;
        for (auto& [lab, c] : v.terms()) {
            auto im = map(lab);
            if (!im) {
                if (undefined) *undefined = true;
                continue;
            }
            out.add_term(im->second, im->first * c);
        }
        return out;
    }
};

/// Asserts map(act_A(g, v)) = act_B(g, map(v)) for all window generators and
/// labels; the map must be injective on the tested window.
inline VerificationReport check_isomorphic(const ActionRule& ruleA, const ActionRule& ruleB,
                                           const BasisMap& phi, int K, int M) {
    VerificationReport rep;
    rep.window_k = K;
    rep.window_m = M;
    auto [jlo, jhi] = detail::layer_iteration_range(ruleA.window(), K);
    std::vector<Generator> gens;
    for (long k = -K; k <= K; ++k) {
        gens.push_back(gen_L(k));
        gens.push_back(gen_W(k));
    }
    for (auto& g : gens) {
        for (long j = jlo; j <= jhi; ++j) {
            for (long m = -M; m <= M; ++m) {
                BasisIndex v{j, m};
                auto im = phi.map(v);
                if (!im) continue;
                if (!ruleB.window().contains(im->second.layer)) {
                    ++rep.skips;
                    continue;
                }
                bool skip = false;
                ModuleVector lhs = phi.apply(ruleA.act(g, v, &skip), &skip);
                ModuleVector rhs = ruleB.act(g, im->second, &skip).scaled(im->first);
                if (skip) {
                    ++rep.skips;
                    continue;
                }
                ++rep.checks;
                detail::collect_residuals(
                    rep, "iso", {static_cast<long>(g.kind == GenKind::W), g.index, j, m}, lhs - rhs);
            }
        }
    }
    return rep;
}

/// A catalogued dual statement: the mechanical dual of `source` matches
/// `target` under `map`.
struct DualPairing {
    RulePtr source;   // the family whose dual is taken
    RulePtr dual;     // mechanical dual of source
    RulePtr target;   // the catalog family the dual is claimed to match
    BasisMap map;
    std::string description;
};

/// Duals shipped with the catalog. A and B carry the closed-form parameter
/// transforms; A1 and A3 dualize onto B1 and B3 with the same gamma. (A2 and
/// B2 have half-infinite layer windows, which the mechanical dual does not
/// accept.)
inline std::optional<DualPairing> dual_pairing(Family f, const AlgebraParams& alg,
                                               const Scalar& lambda, const Scalar& mu,
                                               const ExtendedScalar& gamma) {
    DualPairing p;
    switch (f) {
        case Family::A:
            p.source = make_rule(build_module(Family::A, alg, lambda, mu));
            p.target = make_rule(build_module(Family::A, alg, -lambda, Scalar(1) - mu));
            p.map = BasisMap::dual_relabel(0, -1);
            p.description = "dual A(lam,mu) = A(-lam, 1-mu)";
            break;
        case Family::B:
            p.source = make_rule(build_module(Family::B, alg, lambda, mu));
            p.target = make_rule(build_module(Family::B, alg, -lambda - alg.a, -mu - alg.b));
            p.map = BasisMap::dual_relabel(1, +1);
            p.description = "dual B(lam,mu) = B(-lam-a, -mu-b)";
            break;
        case Family::A1:
            p.source = make_rule(build_module(Family::A1, alg, lambda, mu, gamma));
            p.target = make_rule(build_module(Family::B1, alg, lambda, mu, gamma));
            p.map = BasisMap::dual_relabel(0, -1);
            p.description = "dual A1(gamma) = B1(gamma)";
            break;
        case Family::A3:
            p.source = make_rule(build_module(Family::A3, alg, lambda, mu, gamma));
            p.target = make_rule(build_module(Family::B3, alg, lambda, mu, gamma));
            p.map = BasisMap::dual_relabel(0, -1);
            p.description = "dual A3(gamma) = B3(gamma)";
            break;
        default:
            return std::nullopt;
    }
    p.dual = dualize(p.source);
    return p;
}

/// An eta-twist statement: twisting the W(a,0) source reproduces the W(a,1)
/// tilde family, up to the recorded layer sign.
struct TwistPairing {
    RulePtr source;   // W(a,0)-module
    RulePtr twisted;  // its eta twist
    RulePtr target;   // the tilde family
    BasisMap map;
    std::string description;
};

inline std::optional<TwistPairing> twist_pairing(Family f, const Scalar& a, const Scalar& lambda,
                                                 const Scalar& mu, const ExtendedScalar& gamma) {
    struct Row {
        Family src, dst;
        long sign;
    };
    static const std::vector<Row> rows = {
        {Family::A, Family::Atilde, +1},      {Family::Bhat, Family::Btilde, +1},
        {Family::A1, Family::A1tilde, +1},    {Family::A2hat, Family::A2tilde, +1},
        {Family::A3, Family::A3tilde, -1},    {Family::B1, Family::B1tilde, +1},
        {Family::B2hat, Family::B2tilde, +1}, {Family::B3, Family::B3tilde, +1},
    };
    for (auto& r : rows) {
        if (r.src != f) continue;
        AlgebraParams a0 = AlgebraParams::with(a, Scalar(0));
        AlgebraParams a1 = AlgebraParams::with(a, Scalar(1));
        TwistPairing p;
        p.source = make_rule(build_module(r.src, a0, lambda, mu, gamma));
        p.twisted = twist_eta(p.source);
        p.target = make_rule(build_module(r.dst, a1, lambda, mu, gamma));
        if (r.sign > 0) {
            p.map = BasisMap::identity();
        } else {
            p.map = {[](const BasisIndex& v) {
                Scalar s = (v.layer % 2 != 0) ? Scalar(-1) : Scalar(1);
                return std::optional<std::pair<Scalar, BasisIndex>>({s, v});
            }};
        }
        p.description = "twist " + family_name(r.src) + " over W(a,0) = " + family_name(r.dst);
        return p;
    }
    return std::nullopt;
}

}  // namespace wab
