#include <catch2/catch_amalgamated.hpp>

#include "flatlab/audit.hpp"
#include "test_util.hpp"

using namespace tu;

namespace {

BaseTower<Q> tower_st() { return make_tower(qctx(), {"s", "t"}); }

AffineAlgebra<Q> base_R() { return AffineAlgebra<Q>::base_only(tower_st()); }

AffineAlgebra<Q> hyperbola() {
    auto tw = tower_st();
    auto amb = Ring::make({"s", "t", "u", "v"});
    return AffineAlgebra<Q>::make(tw, {"u", "v"}, {parse_poly(amb, qctx(), "u*v - s")});
}

AffineAlgebra<Q> sqrt_s() {
    auto tw = tower_st();
    auto amb = Ring::make({"s", "t", "u"});
    return AffineAlgebra<Q>::make(tw, {"u"}, {parse_poly(amb, qctx(), "u^2 - s")});
}

AffineAlgebra<Q> nilpotent_u() {
    auto tw = tower_st();
    auto amb = Ring::make({"s", "t", "u"});
    return AffineAlgebra<Q>::make(tw, {"u"}, {parse_poly(amb, qctx(), "u^2")});
}

AffineAlgebra<Q> localized_s() {
    AffineAlgebra<Q> R = base_R();
    return localize_by_element(R, R.parse("s"));
}

PresentedModule<Q> ideal_module() {
    return PresentedModule<Q>::of_columns(base_R(), 2, {{"t", "-s"}});
}

BaseTower<Q> tower_t() { return make_tower(qctx(), {"t"}); }

AffineAlgebra<Q> line_R() { return AffineAlgebra<Q>::base_only(tower_t()); }

}  // namespace

TEST_CASE("main criterion accepts flat modules") {
    AffineAlgebra<Q> R = base_R();
    auto flat_cases = std::vector<PresentedModule<Q>>{
        PresentedModule<Q>::free(R, 1),
        PresentedModule<Q>::free(R, 2),
        PresentedModule<Q>::free(sqrt_s(), 1),
        PresentedModule<Q>::free(nilpotent_u(), 1),
        PresentedModule<Q>::free(localized_s(), 1),
        PresentedModule<Q>::free(hyperbola(), 1),
    };
    for (auto& M : flat_cases) {
        FlatnessReport<Q> rep = main_criterion(M, 2);
        INFO("ngens " << M.ngens() << " over " << M.algebra().ambient()->vars.size()
                      << " ambient variables");
        CHECK(rep.flat);
        CHECK(rep.method == "tensor-torsion");
        CHECK(rep.d == 2);
        CHECK_FALSE(rep.witness_h.empty());
        CHECK(rep.witness_element.empty());
    }
}

TEST_CASE("main criterion rejects non-flat modules with a certified witness") {
    AffineAlgebra<Q> R = base_R();
    PresentedModule<Q> free1 = PresentedModule<Q>::free(R, 1);
    auto nonflat_cases = std::vector<PresentedModule<Q>>{
        PresentedModule<Q>::cyclic(R, {"t"}),
        PresentedModule<Q>::cyclic(R, {"s", "t"}),
        ideal_module(),
        direct_sum(PresentedModule<Q>::cyclic(R, {"t"}), free1),
        direct_sum(PresentedModule<Q>::cyclic(R, {"s"}),
                   PresentedModule<Q>::cyclic(R, {"t"})),
        PresentedModule<Q>::cyclic(localized_s(), {"t"}),
    };
    for (auto& M : nonflat_cases) {
        FlatnessReport<Q> rep = main_criterion(M, 2);
        INFO("ngens " << M.ngens());
        CHECK_FALSE(rep.flat);
        CHECK_FALSE(rep.witness_element.empty());
        CHECK_FALSE(rep.witness_annihilator.empty());
        CHECK(torsion_submodule(tensor_power(M, 2)).torsion_free == false);
    }
}

TEST_CASE("underpowered tensor degree is a precondition error") {
    PresentedModule<Q> M = PresentedModule<Q>::free(base_R(), 1);
    for (int d : {1, 0, -3}) {
        try {
            main_criterion(M, d);
            FAIL("expected a precondition error");
        } catch (const error& e) {
            CHECK(e.kind() == errc::precondition);
        }
    }
}

TEST_CASE("the pair route agrees with the general route") {
    AffineAlgebra<Q> R = base_R();
    auto cases = std::vector<PresentedModule<Q>>{
        PresentedModule<Q>::free(R, 1),
        PresentedModule<Q>::cyclic(R, {"t"}),
        ideal_module(),
        PresentedModule<Q>::free(sqrt_s(), 1),
        PresentedModule<Q>::cyclic(nilpotent_u(), {"u"}),
    };
    for (auto& M : cases) {
        FlatnessReport<Q> pair = dim2_criterion(M);
        FlatnessReport<Q> full = main_criterion(M, 2);
        CHECK(pair.flat == full.flat);
        CHECK(pair.method == "pair-torsion");
    }
}

TEST_CASE("smith oracle on explicit univariate presentations") {
    AffineAlgebra<Q> L = line_R();
    SECTION("diagonal matrix") {
        PresentedModule<Q> M = PresentedModule<Q>::of_columns(L, 2, {{"1", "0"}, {"0", "t"}});
        SmithResult<Q> sr = smith_oracle(M);
        REQUIRE(sr.invariants.size() == 2);
        CHECK(sr.invariants[0] == qp(L.ambient(), "1"));
        CHECK(sr.invariants[1] == qp(L.ambient(), "t"));
        CHECK_FALSE(sr.flat);
        CHECK(sr.free_rank == 0);
    }
    SECTION("upper triangular matrix") {
        PresentedModule<Q> M =
            PresentedModule<Q>::of_columns(L, 2, {{"t", "0"}, {"t^2", "t"}});
        SmithResult<Q> sr = smith_oracle(M);
        REQUIRE(sr.invariants.size() == 2);
        CHECK(sr.invariants[0] == qp(L.ambient(), "t"));
        CHECK(sr.invariants[1] == qp(L.ambient(), "t"));
        CHECK_FALSE(sr.flat);
    }
    SECTION("free module") {
        SmithResult<Q> sr = smith_oracle(PresentedModule<Q>::free(L, 3));
        CHECK(sr.invariants.empty());
        CHECK(sr.free_rank == 3);
        CHECK(sr.flat);
    }
    SECTION("unimodular relations present the zero module") {
        PresentedModule<Q> M =
            PresentedModule<Q>::of_columns(L, 2, {{"1", "t"}, {"t", "t^2 + 1"}});
        SmithResult<Q> sr = smith_oracle(M);
        REQUIRE(sr.invariants.size() == 2);
        CHECK(sr.invariants[0].is_constant());
        CHECK(sr.invariants[1].is_constant());
        CHECK(sr.flat);
        CHECK(M.is_zero());
    }
    SECTION("preconditions") {
        CHECK_THROWS_AS(smith_oracle(PresentedModule<Q>::free(base_R(), 1)), error);
        CHECK_THROWS_AS(smith_oracle(PresentedModule<Q>::free(sqrt_s(), 1)), error);
    }
}

TEST_CASE("smith oracle agrees with the criterion on random univariate modules") {
    AffineAlgebra<Q> L = line_R();
    Rng rng(271828);
    for (int trial = 0; trial < 10; ++trial) {
        uint32_t g = (uint32_t)rng.i(1, 3);
        size_t p = (size_t)rng.i(0, 3);
        std::vector<VQ> cols;
        for (size_t j = 0; j < p; ++j) {
            std::vector<PQ> entries;
            for (uint32_t i = 0; i < g; ++i)
                entries.push_back(random_poly(rng, L.ambient(), 2, 2, 4));
            cols.push_back(VQ::from_polys(L.ambient(), entries));
        }
        PresentedModule<Q> M(L, g, cols);
        SmithResult<Q> sr = smith_oracle(M);
        FlatnessReport<Q> rep = main_criterion(M, 1);
        INFO("trial " << trial << " gens " << g << " rels " << p);
        CHECK(sr.flat == rep.flat);
        for (size_t i = 0; i + 1 < sr.invariants.size(); ++i)
            CHECK(udivmod(sr.invariants[i + 1], sr.invariants[i], 0).second.is_zero());
    }
}

TEST_CASE("finiteness over the base") {
    CHECK(is_module_finite(PresentedModule<Q>::free(base_R(), 2)));
    CHECK(is_module_finite(PresentedModule<Q>::free(sqrt_s(), 1)));
    CHECK(is_module_finite(PresentedModule<Q>::free(nilpotent_u(), 1)));
    CHECK_FALSE(is_module_finite(PresentedModule<Q>::free(hyperbola(), 1)));
    CHECK_FALSE(is_module_finite(PresentedModule<Q>::free(localized_s(), 1)));
    AffineAlgebra<Q> A = hyperbola();
    CHECK_FALSE(is_module_finite(PresentedModule<Q>::cyclic(A, {"u"})));
    CHECK(is_module_finite(PresentedModule<Q>::cyclic(A, {"u", "v - 1"})));
}

TEST_CASE("fitting oracle certifies local freeness") {
    SECTION("a quadratic extension is free of rank two") {
        FittingVerdict<Q> fr = fitting_oracle(PresentedModule<Q>::free(sqrt_s(), 1));
        CHECK(fr.flat);
        CHECK(fr.rank == 2);
        CHECK(fr.base_gens == 2);
    }
    SECTION("the nilpotent fiber is also free of rank two") {
        FittingVerdict<Q> fr = fitting_oracle(PresentedModule<Q>::free(nilpotent_u(), 1));
        CHECK(fr.flat);
        CHECK(fr.rank == 2);
    }
    SECTION("torsion quotients are rejected") {
        CHECK_FALSE(fitting_oracle(PresentedModule<Q>::cyclic(base_R(), {"s"})).flat);
        CHECK_FALSE(fitting_oracle(ideal_module()).flat);
    }
    SECTION("a fiber module presenting a base hypersurface") {
        AffineAlgebra<Q> A = hyperbola();
        PresentedModule<Q> M = PresentedModule<Q>::cyclic(A, {"u", "v - 1"});
        FittingVerdict<Q> fr = fitting_oracle(M);
        CHECK_FALSE(fr.flat);
        CHECK(fr.base_gens == 1);
        CHECK(fitting_oracle(M).flat == main_criterion(M, 2).flat);
    }
    SECTION("non-finite modules are a precondition error") {
        try {
            fitting_oracle(PresentedModule<Q>::free(hyperbola(), 1));
            FAIL("expected a precondition error");
        } catch (const error& e) {
            CHECK(e.kind() == errc::precondition);
        }
    }
}

TEST_CASE("rigidity audit") {
    AffineAlgebra<Q> R = base_R();
    PresentedModule<Q> Ms = PresentedModule<Q>::cyclic(R, {"s"});
    PresentedModule<Q> Nt = PresentedModule<Q>::cyclic(R, {"t"});
    PresentedModule<Q> k = PresentedModule<Q>::cyclic(R, {"s", "t"});
    AuditReport a = audit_rigidity(Ms, Nt, "transverse lines");
    CHECK(a.applicable);
    CHECK(a.pass);
    AuditReport b = audit_rigidity(Ms, Ms, "line against itself");
    CHECK(b.applicable);
    CHECK(b.pass);
    AuditReport c = audit_rigidity(k, k, "residue field against itself");
    CHECK_FALSE(c.applicable);
    CHECK(c.pass);
    CHECK(c.tag == "rigidity");
}

TEST_CASE("torsion-tor audit") {
    AffineAlgebra<Q> R = base_R();
    PresentedModule<Q> Ms = PresentedModule<Q>::cyclic(R, {"s"});
    for (auto& [M, N, label] :
         std::vector<std::tuple<PresentedModule<Q>, PresentedModule<Q>, std::string>>{
             {PresentedModule<Q>::free(R, 1), PresentedModule<Q>::free(R, 2), "free pair"},
             {ideal_module(), PresentedModule<Q>::free(R, 1), "ideal against free"},
             {Ms, PresentedModule<Q>::free(localized_s(), 1),
              "annihilated against localized"}}) {
        AuditReport a = audit_torsion_tor(M, N, label);
        INFO(label);
        CHECK(a.applicable);
        CHECK(a.pass);
    }
    AuditReport b = audit_torsion_tor(Ms, PresentedModule<Q>::cyclic(R, {"t"}),
                                      "torsion product");
    CHECK_FALSE(b.applicable);
    CHECK(b.pass);
}

TEST_CASE("descent audit") {
    AuditReport a = audit_power_descent(PresentedModule<Q>::free(base_R(), 2), 3, "free");
    CHECK(a.applicable);
    CHECK(a.pass);
    CHECK(a.conclusions.size() == 2);
    AuditReport b = audit_power_descent(ideal_module(), 3, "ideal module");
    CHECK_FALSE(b.applicable);
    CHECK(b.pass);
    CHECK_THROWS_AS(audit_power_descent(ideal_module(), 0, "bad power"), error);
}

TEST_CASE("codepth audits") {
    AffineAlgebra<Q> R = base_R();
    SECTION("duality on base witnesses") {
        AuditReport a = audit_codepth_duality(PresentedModule<Q>::cyclic(R, {"s"}), "line");
        CHECK(a.applicable);
        CHECK(a.pass);
        AuditReport a2 = audit_codepth_duality(ideal_module(), "ideal module");
        CHECK(a2.applicable);
        CHECK(a2.pass);
        AffineAlgebra<Q> A = hyperbola();
        AuditReport b = audit_codepth_duality(PresentedModule<Q>::cyclic(A, {"u", "v - 1"}),
                                              "fiber hypersurface");
        CHECK_FALSE(b.applicable);
        CHECK(b.pass);
        AuditReport c =
            audit_codepth_duality(PresentedModule<Q>::cyclic(R, {"1"}), "zero module");
        CHECK_FALSE(c.applicable);
        CHECK(c.pass);
        AuditReport d = audit_codepth_duality(PresentedModule<Q>::cyclic(R, {"s - 1"}),
                                              "support away from the origin");
        CHECK_FALSE(d.applicable);
        CHECK(d.pass);
    }
    SECTION("additivity on Tor-independent pairs") {
        PresentedModule<Q> Ms = PresentedModule<Q>::cyclic(R, {"s"});
        PresentedModule<Q> Nt = PresentedModule<Q>::cyclic(R, {"t"});
        AuditReport a = audit_codepth_additivity(Ms, Nt, "transverse lines");
        CHECK(a.applicable);
        CHECK(a.pass);
        AuditReport b = audit_codepth_additivity(Ms, Ms, "dependent pair");
        CHECK_FALSE(b.applicable);
        CHECK(b.pass);
        AuditReport c = audit_codepth_additivity(
            PresentedModule<Q>::cyclic(R, {"s - 1"}), Nt, "shifted support");
        CHECK(c.applicable);
        CHECK(c.pass);
    }
}

TEST_CASE("dim2 audit") {
    for (auto& [M, label] : std::vector<std::pair<PresentedModule<Q>, std::string>>{
             {PresentedModule<Q>::free(base_R(), 1), "free"},
             {ideal_module(), "ideal module"},
             {PresentedModule<Q>::free(nilpotent_u(), 1), "nilpotent fiber"},
             {PresentedModule<Q>::cyclic(nilpotent_u(), {"u"}), "nilpotent quotient"}}) {
        AuditReport a = audit_dim2(M, label);
        INFO(label);
        CHECK(a.applicable);
        CHECK(a.pass);
    }
}

TEST_CASE("two-element Koszul audit") {
    AffineAlgebra<Q> R = base_R();
    auto amb = R.ambient();
    AuditReport a = audit_koszul2(PresentedModule<Q>::free(R, 1), qp(amb, "s"), qp(amb, "t"),
                                  "regular pair");
    CHECK(a.applicable);
    CHECK(a.pass);
    AuditReport b = audit_koszul2(PresentedModule<Q>::cyclic(R, {"s"}), qp(amb, "s"),
                                  qp(amb, "t"), "killing pair");
    CHECK(b.applicable);
    CHECK(b.pass);
    CHECK(b.conclusions.size() == 2);
    AuditReport c = audit_koszul2(PresentedModule<Q>::free(R, 1), qp(amb, "s"),
                                  qp(amb, "s - 1"), "improper pair");
    CHECK_FALSE(c.applicable);
    CHECK(c.pass);
}

TEST_CASE("associated point reports") {
    AffineAlgebra<Q> R = base_R();
    AssPointsReport f = ass_points_report(PresentedModule<Q>::free(R, 1), 2);
    CHECK(f.holds);
    CHECK(f.witness_annihilator.empty());
    CHECK(f.d == 2);
    AssPointsReport i = ass_points_report(ideal_module(), 2);
    CHECK_FALSE(i.holds);
    CHECK_FALSE(i.witness_annihilator.empty());
    AffineAlgebra<Q> L = line_R();
    AssPointsReport t = ass_points_report(PresentedModule<Q>::cyclic(L, {"t"}), 1);
    CHECK_FALSE(t.holds);
    CHECK(t.witness_annihilator == "t");
    CHECK_THROWS_AS(ass_points_report(PresentedModule<Q>::free(R, 1), 0), error);
}

TEST_CASE("criterion over a prime field") {
    FieldCtx<GF> cx(32003);
    auto tw = make_tower(cx, {"s", "t"});
    AffineAlgebra<GF> R = AffineAlgebra<GF>::base_only(tw);
    CHECK(main_criterion(PresentedModule<GF>::free(R, 1), 2).flat);
    CHECK_FALSE(main_criterion(PresentedModule<GF>::cyclic(R, {"t"}), 2).flat);
}
