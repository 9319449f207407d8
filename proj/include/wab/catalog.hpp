#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wab/algebra.hpp"
#include "wab/basis.hpp"
#include "wab/scalar.hpp"

namespace wab {

/// Invalid family/parameter combination at module construction.
struct BadParams : std::runtime_error {
    explicit BadParams(const std::string& what) : std::runtime_error(what) {}
};

/// Every module family shipped by the catalog. Vir* are Virasoro modules of
/// the intermediate series carried with trivial W-action; the tilde families
/// are W(a,1)-modules obtained from W(a,0)-modules through the eta twist; the
/// hat families are the maximal W(a,0)-modules; AbarPeriodic wraps layers mod
/// p for a = q/p and AbarInteger is the single-layer family with the
/// Kronecker W-action for integer a.
enum class Family {
    VirAprime,
    VirA,
    VirB,
    A,
    B,
    A1,
    A2,
    A3,
    B1,
    B2,
    B3,
    Atilde,
    Btilde,
    A1tilde,
    A2tilde,
    A3tilde,
    B1tilde,
    B2tilde,
    B3tilde,
    Bhat,
    A2hat,
    B2hat,
    AbarPeriodic,
    AbarInteger,
};

inline const std::vector<std::pair<Family, std::string>>& family_names() {
    static const std::vector<std::pair<Family, std::string>> v = {
        {Family::VirAprime, "VirAprime"}, {Family::VirA, "VirA"},
        {Family::VirB, "VirB"},           {Family::A, "A"},
        {Family::B, "B"},                 {Family::A1, "A1"},
        {Family::A2, "A2"},               {Family::A3, "A3"},
        {Family::B1, "B1"},               {Family::B2, "B2"},
        {Family::B3, "B3"},               {Family::Atilde, "Atilde"},
        {Family::Btilde, "Btilde"},       {Family::A1tilde, "A1tilde"},
        {Family::A2tilde, "A2tilde"},     {Family::A3tilde, "A3tilde"},
        {Family::B1tilde, "B1tilde"},     {Family::B2tilde, "B2tilde"},
        {Family::B3tilde, "B3tilde"},     {Family::Bhat, "Bhat"},
        {Family::A2hat, "A2hat"},         {Family::B2hat, "B2hat"},
        {Family::AbarPeriodic, "Abar_periodic"}, {Family::AbarInteger, "Abar_integer"},
    };
    return v;
}

inline std::string family_name(Family f) {
    for (auto& [fam, name] : family_names())
        if (fam == f) return name;
    throw std::logic_error("unnamed family");
}

inline std::optional<Family> family_from_name(const std::string& s) {
    for (auto& [fam, name] : family_names())
        if (name == s) return fam;
    return std::nullopt;
}

inline bool family_uses_gamma(Family f) {
    switch (f) {
        case Family::VirA:
        case Family::VirB:
        case Family::A1:
        case Family::A2:
        case Family::A3:
        case Family::B1:
        case Family::B2:
        case Family::B3:
        case Family::A1tilde:
        case Family::A2tilde:
        case Family::A3tilde:
        case Family::B1tilde:
        case Family::B2tilde:
        case Family::B3tilde:
        case Family::A2hat:
        case Family::B2hat:
            return true;
        default:
            return false;
    }
}

inline bool family_uses_lambda_mu(Family f) {
    switch (f) {
        case Family::VirAprime:
        case Family::A:
        case Family::B:
        case Family::Atilde:
        case Family::Btilde:
        case Family::Bhat:
        case Family::AbarPeriodic:
        case Family::AbarInteger:
            return true;
        default:
            return false;
    }
}

inline bool family_is_tilde(Family f) {
    switch (f) {
        case Family::Atilde:
        case Family::Btilde:
        case Family::A1tilde:
        case Family::A2tilde:
        case Family::A3tilde:
        case Family::B1tilde:
        case Family::B2tilde:
        case Family::B3tilde:
            return true;
        default:
            return false;
    }
}

inline bool family_is_hat(Family f) {
    return f == Family::Bhat || f == Family::A2hat || f == Family::B2hat;
}

inline LayerWindow family_natural_window(Family f, int p = 0) {
    switch (f) {
        case Family::VirAprime:
        case Family::VirA:
        case Family::VirB:
        case Family::AbarInteger:
            return LayerWindow::at(0);
        case Family::B:
        case Family::A3:
        case Family::Btilde:
        case Family::A3tilde:
        case Family::Bhat:
            return LayerWindow::range(0, 1);
        case Family::B3:
        case Family::B3tilde:
            return LayerWindow::range(-1, 0);
        case Family::A2:
            return LayerWindow::from(-1);
        case Family::B2:
            return LayerWindow::upto(1);
        case Family::AbarPeriodic:
            return LayerWindow::range(0, p - 1);
        default:
            return LayerWindow::all();
    }
}

/// A catalog family instance: family tag, structure parameters, exact or
/// symbolic module parameters, and the layer window the action lives on.
struct ModuleSpec {
    Family family = Family::A;
    AlgebraParams algebra = AlgebraParams::symbolic();
    Scalar lambda = Scalar::variable("lam");
    Scalar mu = Scalar::variable("mu");
    ExtendedScalar gamma = ExtendedScalar::finite(Scalar::variable("gam"));
    Scalar c = Scalar::variable("c");
    int p = 0;             // AbarPeriodic only
    long a_int = 0;        // AbarInteger only: the concrete integer a
    long pa_int = 0;       // AbarPeriodic only: p*a = q, an integer
    LayerWindow layers;
};

namespace detail {

inline bool is_concrete_integer(const Scalar& s, long* out = nullptr) {
    auto r = s.as_rational();
    if (!r || denominator(*r) != 1) return false;
    if (out) {
        if (numerator(*r) > std::numeric_limits<long>::max() ||
            numerator(*r) < std::numeric_limits<long>::min())
            throw BadParams("integer parameter out of range");
        *out = static_cast<long>(numerator(*r));
    }
    return true;
}

}  // namespace detail

/// Validates parameters and fills in the family's natural layer window (a
/// narrower window may be requested; labels outside it act as zero).
inline ModuleSpec build_module(Family f, AlgebraParams algebra,
                               Scalar lambda = Scalar::variable("lam"),
                               Scalar mu = Scalar::variable("mu"),
                               ExtendedScalar gamma = ExtendedScalar::finite(Scalar::variable("gam")),
                               Scalar c = Scalar::variable("c"), int p = 0,
                               std::optional<LayerWindow> window = std::nullopt) {
    ModuleSpec spec;
    spec.family = f;
    spec.algebra = std::move(algebra);
    spec.lambda = std::move(lambda);
    spec.mu = std::move(mu);
    spec.gamma = std::move(gamma);
    spec.c = std::move(c);
    spec.p = p;

    const std::string nm = family_name(f);
    if (family_is_tilde(f) || f == Family::AbarPeriodic || f == Family::AbarInteger) {
        if (!spec.algebra.b.equals(Scalar(1)))
            throw BadParams(nm + " is a W(a,1)-module family; requires b = 1");
    }
    if (family_is_hat(f)) {
        if (!spec.algebra.b.equals(Scalar(0)))
            throw BadParams(nm + " is a W(a,0)-module family; requires b = 0");
    }
    if (family_is_tilde(f) || f == Family::AbarPeriodic) {
        long dummy;
        if (detail::is_concrete_integer(spec.algebra.a, &dummy))
            throw BadParams(nm + ": concrete integer a makes a 1/(a+k) denominator vanish");
    }
    if (f == Family::AbarPeriodic) {
        auto r = spec.algebra.a.as_rational();
        if (!r) throw BadParams(nm + " requires concrete rational a = q/p");
        if (p < 2) throw BadParams(nm + " requires p >= 2");
        if (denominator(*r) != p)
            throw BadParams(nm + ": a must equal q/p in lowest terms with the given p");
        Int q = numerator(*r) ;
        spec.pa_int = static_cast<long>(q);  // p*a = q
    }
    if (f == Family::AbarInteger) {
        // the Kronecker delta_{k+a,0} needs a concrete integer argument
        if (!detail::is_concrete_integer(spec.algebra.a, &spec.a_int))
            throw BadParams(nm + " requires concrete integer a (delta with a symbolic argument)");
    }
    if (family_uses_gamma(f) && !spec.gamma.is_infinite()) {
        // nothing further: symbolic or concrete finite gamma both fine
    } else if (!family_uses_gamma(f) && spec.gamma.is_infinite()) {
        throw BadParams(nm + " does not take gamma = inf");
    }

    LayerWindow natural = family_natural_window(f, p);
    if (window) {
        if (!window->subset_of(natural))
            throw BadParams(nm + ": layer window " + window->text() +
                            " exceeds the family's natural range " + natural.text());
        spec.layers = *window;
    } else {
        spec.layers = natural;
    }
    return spec;
}

/// One raw term of a family action: coefficient and target label, before any
/// layer-window clipping.
struct ActTerm {
    Scalar coeff;
    BasisIndex target;
};

/// The family's defining action on a basis label, transcribed from its
/// display with all case splits (m = 0, m = -k, layer boundaries). Returns
/// the raw single term (or nothing when the display gives zero); window
/// clipping is applied by callers. Layer labels outside the family's natural
/// range never reach this function through public entry points.
inline std::optional<ActTerm> family_act_raw(const ModuleSpec& s, const Generator& g,
                                             const BasisIndex& v) {
    const Scalar& A = s.algebra.a;
    const Scalar& B = s.algebra.b;
    const Scalar& LAM = s.lambda;
    const Scalar& MU = s.mu;
    const long j = v.layer, m = v.offset, k = g.index;
    const Scalar K{k}, M{m}, J{j};
    const bool isL = g.kind == GenKind::L;
    auto t = [](Scalar c, long j2, long m2) -> std::optional<ActTerm> {
        if (c.is_zero()) return std::nullopt;
        return ActTerm{std::move(c), BasisIndex{j2, m2}};
    };
    auto none = []() -> std::optional<ActTerm> { return std::nullopt; };
    // k(k+gamma) and its mirror, read per Convention 2.1 at gamma = inf
    auto kkg = [&] { return Scalar(k) * gamma_factor(Scalar(1), K, s.gamma); };

    switch (s.family) {
        case Family::VirAprime:
            if (isL) return t(LAM + M + MU * K, 0, m + k);
            return none();
        case Family::VirA:
            if (isL) {
                if (m == 0) return t(kkg(), 0, k);
                return t(Scalar(m + k), 0, m + k);
            }
            return none();
        case Family::VirB:
            if (isL) {
                if (m == -k) return t(-kkg(), 0, 0);
                return t(M, 0, m + k);
            }
            return none();
        case Family::A:
            if (isL) return t(LAM + A * J + M + (MU + J * B) * K, j, m + k);
            return t(Scalar(1), j + 1, m + k);
        case Family::B:
            if (isL) {
                if (j == 0) return t(LAM + M + MU * K, 0, m + k);
                return t(LAM + A + M + (MU + B + 1) * K, 1, m + k);
            }
            if (j == 0) return t(B * (LAM + M) - MU * (K + A), 1, m + k);
            return none();
        case Family::A1:
            if (isL) {
                if (j == 0) {
                    if (m == 0) return t(kkg(), 0, k);
                    return t(Scalar(m + k), 0, m + k);
                }
                return t(A * J + M + J * B * K, j, m + k);
            }
            if (j == -1) return t(Scalar(m + k), 0, m + k);
            if (j == 0) return m == 0 ? t(Scalar(1), 1, k) : none();
            return t(Scalar(1), j + 1, m + k);
        case Family::A2:  // layers j >= -1
            if (isL) {
                if (j == -1) return t(-A + M - (1 + B) * K, -1, m + k);
                if (j == 0) {
                    if (m == 0) return t(kkg(), 0, k);
                    return t(Scalar(m + k), 0, m + k);
                }
                return t(J * A + M + J * B * K, j, m + k);
            }
            if (j == -1) return t(Scalar(m + k) * (A + (1 + B) * K + B * M), 0, m + k);
            if (j == 0) return m == 0 ? t(Scalar(1), 1, k) : none();
            return t(Scalar(1), j + 1, m + k);
        case Family::A3:  // layers {0,1}
            if (isL) {
                if (j == 0) {
                    if (m == 0) return t(kkg(), 0, k);
                    return t(Scalar(m + k), 0, m + k);
                }
                return t(A + M + (B + 1) * K, 1, m + k);
            }
            if (j == 0) {
                if (m == 0) return t(gamma_factor(B, -A - K, s.gamma), 1, k);
                return t(B, 1, m + k);
            }
            return none();
        case Family::B1:
            if (isL) {
                if (j == 0) {
                    if (m == -k) return t(-kkg(), 0, 0);
                    return t(M, 0, m + k);
                }
                return t(J * A + M + (J * B + 1) * K, j, m + k);
            }
            if (j == -1) return m == -k ? t(Scalar(1), 0, 0) : none();
            if (j == 0) return t(M, 1, m + k);
            return t(Scalar(1), j + 1, m + k);
        case Family::B2:  // layers j <= 1
            if (isL) {
                if (j == 0) {
                    if (m == -k) return t(-kkg(), 0, 0);
                    return t(M, 0, m + k);
                }
                if (j == 1) return t(A + M + (B + 2) * K, 1, m + k);
                return t(J * A + M + (J * B + 1) * K, j, m + k);
            }
            if (j == 1) return none();
            if (j == 0) return t(M * (A + K - B * M), 1, m + k);
            if (j == -1) return m == -k ? t(Scalar(1), 0, 0) : none();
            return t(Scalar(1), j + 1, m + k);
        case Family::B3: {  // layers {-1,0}
            if (isL) {
                if (j == 0) {
                    if (m == -k) return t(-kkg(), 0, 0);
                    return t(M, 0, m + k);
                }
                return t(-A + M - B * K, -1, m + k);
            }
            if (j == 0) return none();
            // the generic coefficient carries the factor b (required by the
            // module identities and by duality with A3; verified mechanically)
            if (m == -k) return t(gamma_factor(B, -A - K, s.gamma), 0, 0);
            return t(B, 0, m + k);
        }
        case Family::Atilde:
            if (isL) return t(LAM + A * J + M + MU * K, j, m + k);
            return t(Scalar(1) / (A + K), j + 1, m + k);
        case Family::A1tilde:
            if (isL) {
                if (j == 0) {
                    if (m == 0) return t(kkg(), 0, k);
                    return t(Scalar(m + k), 0, m + k);
                }
                return t(A * J + M, j, m + k);
            }
            if (j == -1) return t(Scalar(m + k) / (A + K), 0, m + k);
            if (j == 0) return m == 0 ? t(Scalar(1) / (A + K), 1, k) : none();
            return t(Scalar(1) / (A + K), j + 1, m + k);
        case Family::A3tilde:  // layers {0,1}
            if (isL) {
                if (j == 0) {
                    if (m == 0) return t(kkg(), 0, k);
                    return t(Scalar(m + k), 0, m + k);
                }
                return t(A + M + K, 1, m + k);
            }
            if (j == 0) return m == 0 ? t(Scalar(1), 1, k) : none();
            return none();
        case Family::B1tilde:
            if (isL) {
                if (j == 0) {
                    if (m == -k) return t(-kkg(), 0, 0);
                    return t(M, 0, m + k);
                }
                return t(J * A + M + K, j, m + k);
            }
            if (j == -1) return m == -k ? t(Scalar(1) / (A + K), 0, 0) : none();
            if (j == 0) return t(M / (A + K), 1, m + k);
            return t(Scalar(1) / (A + K), j + 1, m + k);
        case Family::B3tilde:  // layers {-1,0}
            if (isL) {
                if (j == 0) {
                    if (m == -k) return t(-kkg(), 0, 0);
                    return t(M, 0, m + k);
                }
                return t(-A + M, -1, m + k);
            }
            if (j == 0) return none();
            // eta-twist of B3 over W(a,0): only the m = -k image survives
            if (m == -k) return t(Scalar(-1), 0, 0);
            return none();
        case Family::Btilde:  // layers {0,1}
            if (isL) {
                if (j == 0) return t(LAM + M, 0, m + k);
                return t(LAM + A + M + K, 1, m + k);
            }
            if (j == 0) return t(((A * M - LAM * K) * MU + A + K) / (A + K), 1, m + k);
            return none();
        case Family::A2tilde:
            if (isL) {
                if (j == 0) {
                    if (m == 0) return t(kkg(), 0, k);
                    return t(Scalar(m + k), 0, m + k);
                }
                if (j > 0) return t(J * A + M, j, m + k);
                return t(J * A + M + J * K, j, m + k);
            }
            if (j == 0) return m == 0 ? t(Scalar(1) / (A + K), 1, k) : none();
            if (j == -1) return t(Scalar(m + k), 0, m + k);
            if (j > 0) return t(Scalar(1) / (A + K), j + 1, m + k);
            return t(Scalar(1), j + 1, m + k);
        case Family::B2tilde:
            if (isL) {
                if (j == 0) {
                    if (m == -k) return t(-kkg(), 0, 0);
                    return t(M, 0, m + k);
                }
                if (j < 0) return t(J * A + M + K, j, m + k);
                return t(J * A + M + (J + 1) * K, j, m + k);
            }
            if (j == 0) return t(M, 1, m + k);
            if (j == -1) return m == -k ? t(Scalar(1) / (A + K), 0, 0) : none();
            if (j < -1) return t(Scalar(1) / (A + K), j + 1, m + k);
            return t(Scalar(1), j + 1, m + k);  // all layers j >= 1
        case Family::Bhat:  // layers {0,1}; the layer-0 L-action has no mu
            if (isL) {
                if (j == 0) return t(LAM + M, 0, m + k);
                return t(LAM + A + M + K, 1, m + k);
            }
            if (j == 0) return t((A * M - LAM * K) * MU + A + K, 1, m + k);
            return none();
        case Family::A2hat:
            if (isL) {
                if (j == 0) {
                    if (m == 0) return t(kkg(), 0, k);
                    return t(Scalar(m + k), 0, m + k);
                }
                if (j > 0) return t(J * A + M, j, m + k);
                return t(J * A + M + J * K, j, m + k);
            }
            if (j == 0) return m == 0 ? t(Scalar(1), 1, k) : none();
            if (j == -1) return t(Scalar(m + k) * (A + K), 0, m + k);
            if (j > 0) return t(Scalar(1), j + 1, m + k);
            return t(A + K, j + 1, m + k);
        case Family::B2hat:
            if (isL) {
                if (j == 0) {
                    if (m == -k) return t(-kkg(), 0, 0);
                    return t(M, 0, m + k);
                }
                if (j < 0) return t(J * A + M + K, j, m + k);
                return t(J * A + M + (J + 1) * K, j, m + k);
            }
            if (j == 0) return t(M * (A + K), 1, m + k);
            if (j == -1) return m == -k ? t(Scalar(1), 0, 0) : none();
            if (j < -1) return t(Scalar(1), j + 1, m + k);
            return t(A + K, j + 1, m + k);  // all layers j >= 1
        case Family::AbarPeriodic:  // layers 0..p-1, W wraps with offset p*a
            if (isL) return t(LAM + A * J + M + MU * K, j, m + k);
            if (j < s.p - 1) return t(Scalar(1) / (A + K), j + 1, m + k);
            return t(Scalar(1) / (A + K), 0, m + k + s.pa_int);
        case Family::AbarInteger:  // single layer, W_k = delta_{k+a,0} c shift
            if (isL) return t(LAM + M + MU * K, 0, m + k);
            if (k + s.a_int == 0) return t(s.c, 0, m + k + s.a_int);
            return none();
    }
    return none();
}

/// Candidate source labels u with family action possibly mapping u onto the
/// given target (callers re-probe the action to keep only genuine hits).
inline std::vector<BasisIndex> family_co_candidates(const ModuleSpec& s, const Generator& g,
                                                    const BasisIndex& t) {
    std::vector<BasisIndex> out;
    if (g.kind == GenKind::L) {
        out.push_back({t.layer, t.offset - g.index});
        return out;
    }
    switch (s.family) {
        case Family::AbarPeriodic:
            if (t.layer == 0)
                out.push_back({s.p - 1, t.offset - g.index - s.pa_int});
            out.push_back({t.layer - 1, t.offset - g.index});
            break;
        case Family::AbarInteger:
            out.push_back({0, t.offset - g.index - s.a_int});
            break;
        default:
            out.push_back({t.layer - 1, t.offset - g.index});
            break;
    }
    return out;
}

}  // namespace wab
