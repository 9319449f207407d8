#include <catch2/catch_amalgamated.hpp>

#include "wab/action_rule.hpp"
#include "wab/catalog.hpp"
#include "wab/specfile.hpp"

using namespace wab;

namespace {

Scalar var(const char* n) { return Scalar::variable(n); }

ModuleSpec sym(Family f, int p = 0) {
    return build_module(f, AlgebraParams::symbolic(), var("lam"), var("mu"),
                        ExtendedScalar::finite(var("gam")), var("c"), p);
}

ModuleSpec sym_b(Family f, long b, int p = 0) {
    return build_module(f, AlgebraParams::with(var("a"), Scalar(b)), var("lam"), var("mu"),
                        ExtendedScalar::finite(var("gam")), var("c"), p);
}

ActTerm single(const ModuleSpec& s, Generator g, BasisIndex v) {
    auto t = family_act_raw(s, g, v);
    REQUIRE(t.has_value());
    return *t;
}

}  // namespace

TEST_CASE("build_module windows and validation") {
    REQUIRE(sym(Family::A).layers == LayerWindow::all());
    REQUIRE(sym(Family::B).layers == LayerWindow::range(0, 1));
    REQUIRE(sym(Family::B3).layers == LayerWindow::range(-1, 0));
    REQUIRE(sym(Family::A2).layers == LayerWindow::from(-1));
    REQUIRE(sym(Family::B2).layers == LayerWindow::upto(1));

    AlgebraParams half = AlgebraParams::with(Scalar(Rational(1, 2)), Scalar(1));
    ModuleSpec per = build_module(Family::AbarPeriodic, half, var("lam"), var("mu"),
                                  ExtendedScalar::finite(var("gam")), var("c"), 2);
    REQUIRE(per.layers == LayerWindow::range(0, 1));
    REQUIRE(per.pa_int == 1);

    // tilde family with concrete integer a: the 1/(a+k) denominators vanish
    REQUIRE_THROWS_AS(build_module(Family::Atilde, AlgebraParams::with(Scalar(2), Scalar(1))),
                      BadParams);
    // tilde family requires b = 1
    REQUIRE_THROWS_AS(build_module(Family::Atilde, AlgebraParams::symbolic()), BadParams);
    // hat family requires b = 0
    REQUIRE_THROWS_AS(build_module(Family::Bhat, AlgebraParams::symbolic()), BadParams);
    // periodic family: a must be q/p in lowest terms for the given p
    REQUIRE_THROWS_AS(build_module(Family::AbarPeriodic,
                                   AlgebraParams::with(Scalar(Rational(1, 2)), Scalar(1)),
                                   var("lam"), var("mu"), ExtendedScalar::finite(var("gam")),
                                   var("c"), 4),
                      BadParams);
    // integer family: delta_{k+a,0} needs a concrete integer a
    REQUIRE_THROWS_AS(build_module(Family::AbarInteger,
                                   AlgebraParams::with(var("a"), Scalar(1))),
                      BadParams);
    // requested window must sit inside the natural one
    REQUIRE_THROWS_AS(build_module(Family::B, AlgebraParams::symbolic(), var("lam"), var("mu"),
                                   ExtendedScalar::finite(var("gam")), var("c"), 0,
                                   LayerWindow::range(0, 5)),
                      BadParams);
}

TEST_CASE("act on A, B and the rational-a families") {
    ModuleSpec A = sym(Family::A);
    Scalar a = var("a"), b = var("b"), lam = var("lam"), mu = var("mu");

    ActTerm t = single(A, gen_L(2), {1, 3});
    REQUIRE(t.target == BasisIndex{1, 5});
    REQUIRE(t.coeff.equals(lam + a + Scalar(3) + Scalar(2) * (mu + b)));

    ModuleSpec B = sym(Family::B);
    for (long k = -2; k <= 2; ++k)
        for (long m = -2; m <= 2; ++m)
            REQUIRE_FALSE(family_act_raw(B, gen_W(k), {1, m}).has_value());

    AlgebraParams half = AlgebraParams::with(Scalar(Rational(1, 2)), Scalar(1));
    ModuleSpec per = build_module(Family::AbarPeriodic, half, var("lam"), var("mu"),
                                  ExtendedScalar::finite(var("gam")), var("c"), 2);
    ActTerm wrap = single(per, gen_W(1), {1, 0});
    REQUIRE(wrap.target == BasisIndex{0, 2});
    REQUIRE(wrap.coeff.equals(Scalar(Rational(2, 3))));

    ModuleSpec z =
        build_module(Family::AbarInteger, AlgebraParams::with(Scalar(0), Scalar(1)));
    for (long m = -2; m <= 2; ++m) {
        ActTerm w0 = single(z, gen_W(0), {0, m});
        REQUIRE(w0.target == BasisIndex{0, m});
        REQUIRE(w0.coeff.equals(var("c")));
        for (long k : {-2L, -1L, 1L, 2L})
            REQUIRE_FALSE(family_act_raw(z, gen_W(k), {0, m}).has_value());
    }
}

TEST_CASE("every family: L_0 acts diagonally on the window") {
    std::vector<ModuleSpec> specs;
    for (auto& rec : standard_catalog()) specs.push_back(record_to_spec(rec));
    for (auto& spec : specs) {
        FamilyRule rule(spec);
        auto lo = spec.layers.lo_inf ? -3 : std::max<long>(spec.layers.lo, -3);
        auto hi = spec.layers.hi_inf ? 3 : std::min<long>(spec.layers.hi, 3);
        for (long j = lo; j <= hi; ++j) {
            for (long m = -3; m <= 3; ++m) {
                BasisIndex v{j, m};
                ModuleVector r = rule.act(gen_L(0), v);
                if (r.is_zero()) continue;
                REQUIRE(r.terms().size() == 1);
                REQUIRE(r.terms().begin()->first == v);
            }
        }
    }
}

TEST_CASE("weight_of") {
    FamilyRule A(sym(Family::A));
    Scalar a = var("a"), lam = var("lam");
    REQUIRE(weight_of(A, {2, -1}).equals(lam + Scalar(2) * a - Scalar(1)));

    FamilyRule B(sym(Family::B));
    REQUIRE(weight_of(B, {1, 4}).equals(lam + a + Scalar(4)));

    FamilyRule vir(sym(Family::VirAprime));
    REQUIRE(weight_of(vir, {0, 5}).equals(lam + Scalar(5)));
}

TEST_CASE("W moves layers by exactly one step (wrapping in the periodic family)") {
    for (auto& rec : standard_catalog()) {
        ModuleSpec spec = record_to_spec(rec);
        FamilyRule rule(spec);
        auto lo = spec.layers.lo_inf ? -3 : std::max<long>(spec.layers.lo, -3);
        auto hi = spec.layers.hi_inf ? 3 : std::min<long>(spec.layers.hi, 3);
        for (long j = lo; j <= hi; ++j) {
            for (long m = -3; m <= 3; ++m) {
                for (long k = -3; k <= 3; ++k) {
                    for (auto& t : rule.act_raw(gen_W(k), {j, m})) {
                        long expect = spec.family == Family::AbarInteger ? j
                                      : spec.family == Family::AbarPeriodic
                                          ? (j + 1) % spec.p
                                          : j + 1;
                        REQUIRE(t.target.layer == expect);
                    }
                }
            }
        }
    }
}

TEST_CASE("periodic family: p W-steps return to layer 0 with offset shift p*a") {
    for (int p = 2; p <= 3; ++p) {
        AlgebraParams alg = AlgebraParams::with(Scalar(Rational(1, p)), Scalar(1));
        ModuleSpec spec = build_module(Family::AbarPeriodic, alg, var("lam"), var("mu"),
                                       ExtendedScalar::finite(var("gam")), var("c"), p);
        FamilyRule rule(spec);
        ModuleVector v = ModuleVector::basis({0, 0});
        long ksum = 0;
        for (int step = 0; step < p; ++step) {
            v = rule.act(gen_W(step + 1), v);
            ksum += step + 1;
        }
        REQUIRE(v.terms().size() == 1);
        BasisIndex lab = v.terms().begin()->first;
        REQUIRE(lab.layer == 0);
        REQUIRE(lab.offset == ksum + 1);  // p * (1/p) = 1
    }
}

TEST_CASE("act_element is bilinear") {
    FamilyRule A(sym(Family::A));
    BasisIndex v{0, 0};
    AlgebraElement x = AlgebraElement::basis(gen_L(1)) + AlgebraElement::basis(gen_L(2));
    ModuleVector lhs = A.act(x, ModuleVector::basis(v));
    ModuleVector rhs = A.act(gen_L(1), v) + A.act(gen_L(2), v);
    REQUIRE((lhs - rhs).is_zero());

    REQUIRE(A.act(AlgebraElement{}, ModuleVector::basis(v)).is_zero());

    ModuleVector two = A.act(AlgebraElement::basis(gen_W(0)).scaled(Scalar(2)),
                             ModuleVector::basis({0, 4}));
    REQUIRE(two.terms().size() == 1);
    REQUIRE(two.terms().begin()->first == BasisIndex{1, 4});
    REQUIRE(two.terms().begin()->second.equals(Scalar(2)));
}

TEST_CASE("out-of-window labels act as zero and clipped targets are flagged") {
    // restrict A(lam,mu) to layers [0,1]: labels outside act as zero, and the
    // W-image of the top layer is clipped
    ModuleSpec spec = build_module(Family::A, AlgebraParams::symbolic(), var("lam"), var("mu"),
                                   ExtendedScalar::finite(var("gam")), var("c"), 0,
                                   LayerWindow::range(0, 1));
    FamilyRule rule(spec);
    REQUIRE(rule.act(gen_L(1), BasisIndex{5, 0}).is_zero());
    bool clipped = false;
    REQUIRE(rule.act(gen_W(1), BasisIndex{1, 0}, &clipped).is_zero());
    REQUIRE(clipped);
}
