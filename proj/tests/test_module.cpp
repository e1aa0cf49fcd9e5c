#include <catch2/catch_amalgamated.hpp>

#include "flatlab/torsion.hpp"
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

// coker (t, -s) over the base: the ideal (s, t) as a module
PresentedModule<Q> ideal_module() {
    return PresentedModule<Q>::of_columns(base_R(), 2, {{"t", "-s"}});
}

}  // namespace

TEST_CASE("affine algebras over the base") {
    AffineAlgebra<Q> A = hyperbola();
    CHECK(A.n_base() == 2);
    CHECK(A.n_y() == 2);
    CHECK(A.nf(A.parse("u*v")) == A.parse("s"));
    CHECK(A.nf(A.parse("u*v - s")).is_zero());
    CHECK_FALSE(A.is_base_witness());
    CHECK(base_R().is_base_witness());
    SECTION("defining ideal GB is reduced and cached") {
        CHECK(A.relations().gb().size() == 1);
        CHECK(A.relations().gb()[0] == A.parse("u*v - s"));
    }
}

TEST_CASE("localization adjoins an inverse") {
    AffineAlgebra<Q> R = base_R();
    AffineAlgebra<Q> As = localize_by_element(R, R.parse("s"));
    CHECK(As.n_y() == 1);
    CHECK(As.y_vars() == std::vector<std::string>{"z"});
    CHECK(As.nf(As.parse("z*s - 1")).is_zero());
    CHECK(As.nf(As.parse("z*s")) == As.parse("1"));
    SECTION("fresh name avoids collisions") {
        auto tw = make_tower(qctx(), {"z", "t"});
        AffineAlgebra<Q> B = AffineAlgebra<Q>::base_only(tw);
        AffineAlgebra<Q> Bz = localize_by_element(B, B.parse("z"));
        CHECK(Bz.y_vars() == std::vector<std::string>{"z2"});
    }
    SECTION("localizing at zero is rejected") {
        AffineAlgebra<Q> A = sqrt_s();
        CHECK_THROWS_AS(localize_by_element(A, A.parse("u^2 - s")), error);
    }
}

TEST_CASE("presented modules normalize relations into the quotient") {
    AffineAlgebra<Q> A = sqrt_s();
    PresentedModule<Q> M = PresentedModule<Q>::of_columns(A, 2, {{"u^2", "0"}});
    REQUIRE(M.relations().size() == 1);
    CHECK(M.relations()[0] == Vec<Q>::single(A.ambient(), 2, 0, A.parse("s")));
    SECTION("zero module detection") {
        CHECK(PresentedModule<Q>::cyclic(base_R(), {"1"}).is_zero());
        CHECK(PresentedModule<Q>::cyclic(base_R(), {"s", "s - 1"}).is_zero());
        CHECK_FALSE(PresentedModule<Q>::cyclic(base_R(), {"s"}).is_zero());
        CHECK_FALSE(PresentedModule<Q>::free(base_R(), 1).is_zero());
    }
}

TEST_CASE("annihilator of cyclic and sum modules") {
    SECTION("Ann(A/(f)) is (f) plus the defining ideal") {
        AffineAlgebra<Q> A = sqrt_s();
        PresentedModule<Q> M = PresentedModule<Q>::cyclic(A, {"u"});
        Ideal<Q> ann = annihilator(M);
        CHECK(ann == Ideal<Q>(A.ambient(), {A.parse("u"), A.parse("u^2 - s")}));
        CHECK(ann.contains(A.parse("s")));
    }
    SECTION("annihilator of a sum is the intersection") {
        AffineAlgebra<Q> R = base_R();
        PresentedModule<Q> M = direct_sum(PresentedModule<Q>::cyclic(R, {"s"}),
                                          PresentedModule<Q>::cyclic(R, {"t"}));
        CHECK(annihilator(M) == qideal(R.ambient(), {"s*t"}));
    }
    SECTION("free modules have zero annihilator, zero modules the unit") {
        AffineAlgebra<Q> R = base_R();
        CHECK(annihilator(PresentedModule<Q>::free(R, 2)).is_zero_ideal());
        CHECK(annihilator(PresentedModule<Q>::cyclic(R, {"1"})).is_unit());
    }
}

TEST_CASE("support overlap through annihilators") {
    AffineAlgebra<Q> R = base_R();
    PresentedModule<Q> Ms = PresentedModule<Q>::cyclic(R, {"s"});
    PresentedModule<Q> Mt = PresentedModule<Q>::cyclic(R, {"t"});
    PresentedModule<Q> Ms1 = PresentedModule<Q>::cyclic(R, {"s - 1"});
    CHECK(supports_intersect(Ms, Mt));    // both contain the origin
    CHECK_FALSE(supports_intersect(Ms, Ms1));  // parallel lines s=0, s=1
    CHECK(supports_intersect(Ms, PresentedModule<Q>::free(R, 1)));
}

TEST_CASE("tensor over the base") {
    AffineAlgebra<Q> R = base_R();
    SECTION("free factors multiply ranks") {
        PresentedModule<Q> F2 = PresentedModule<Q>::free(R, 2);
        PresentedModule<Q> F3 = PresentedModule<Q>::free(R, 3);
        PresentedModule<Q> T = tensor_over_base(F2, F3);
        CHECK(T.ngens() == 6);
        CHECK(T.relations().empty());
    }
    SECTION("the base witness is a unit for the product") {
        PresentedModule<Q> M = ideal_module();
        CHECK(canonically_equal(tensor_over_base(M, PresentedModule<Q>::free(R, 1)), M));
        CHECK(canonically_equal(tensor_over_base(PresentedModule<Q>::free(R, 1), M), M));
    }
    SECTION("square of the ideal module has the four expected columns") {
        PresentedModule<Q> T = tensor_over_base(ideal_module(), ideal_module());
        REQUIRE(T.ngens() == 4);
        std::vector<VQ> want = {
            qv(R.ambient(), {"t", "0", "-s", "0"}),
            qv(R.ambient(), {"0", "t", "0", "-s"}),
            qv(R.ambient(), {"t", "-s", "0", "0"}),
            qv(R.ambient(), {"0", "0", "t", "-s"}),
        };
        REQUIRE(T.relations().size() == 4);
        for (auto& w : want) {
            bool found = false;
            for (auto& r : T.relations())
                if (r == w) { found = true; break; }
            CHECK(found);
        }
    }
    SECTION("cyclic tensor cyclic adds the ideals") {
        PresentedModule<Q> T = tensor_over_base(PresentedModule<Q>::cyclic(R, {"s"}),
                                                PresentedModule<Q>::cyclic(R, {"t"}));
        CHECK(T.ngens() == 1);
        CHECK(canonically_equal(T, PresentedModule<Q>::cyclic(R, {"s", "t"})));
    }
    SECTION("y variables are tagged positionally on collision") {
        AffineAlgebra<Q> A = sqrt_s();
        PresentedModule<Q> M = PresentedModule<Q>::free(A, 1);
        PresentedModule<Q> T2 = tensor_over_base(M, M);
        CHECK(T2.algebra().y_vars() == std::vector<std::string>{"u@1", "u@2"});
        PresentedModule<Q> T3 = tensor_over_base(T2, M);
        CHECK(T3.algebra().y_vars() == std::vector<std::string>{"u@1", "u@2", "u@3"});
        // the defining ideal repeats the square relation per slot
        CHECK(T3.algebra().relations().gens().size() == 3);
        CHECK(canonically_equal(T3, tensor_power(M, 3)));
    }
    SECTION("distinct y names survive untagged") {
        AffineAlgebra<Q> A = sqrt_s();
        auto tw = tower_st();
        auto amb = Ring::make({"s", "t", "w"});
        AffineAlgebra<Q> B =
            AffineAlgebra<Q>::make(tw, {"w"}, {parse_poly(amb, qctx(), "w^2 - t")});
        PresentedModule<Q> T =
            tensor_over_base(PresentedModule<Q>::free(A, 1), PresentedModule<Q>::free(B, 1));
        CHECK(T.algebra().y_vars() == std::vector<std::string>{"u", "w"});
    }
}

TEST_CASE("tensor over the coefficient field doubles the base") {
    AffineAlgebra<Q> R = base_R();
    PresentedModule<Q> Ms = PresentedModule<Q>::cyclic(R, {"s"});
    PresentedModule<Q> Mt = PresentedModule<Q>::cyclic(R, {"t"});
    PresentedModule<Q> P = tensor_over_field(Ms, Mt);
    CHECK(P.algebra().tower().base->vars ==
          std::vector<std::string>{"s", "t", "s'", "t'"});
    CHECK(P.ngens() == 1);
    REQUIRE(P.relations().size() == 2);
    const RingPtr& amb = P.algebra().ambient();
    CHECK(P.relations()[0] == Vec<Q>::single(amb, 1, 0, qp(amb, "s")));
    CHECK(P.relations()[1] == Vec<Q>::single(amb, 1, 0, qp(amb, "t'")));
    SECTION("y blocks keep the product naming") {
        AffineAlgebra<Q> A = sqrt_s();
        PresentedModule<Q> F = PresentedModule<Q>::free(A, 1);
        PresentedModule<Q> T = tensor_over_field(F, F);
        CHECK(T.algebra().ambient()->vars ==
              std::vector<std::string>{"s", "t", "s'", "t'", "u@1", "u@2"});
        // left copy squares to s, right copy to s'
        CHECK(T.algebra().nf(T.algebra().parse("u@1^2 - s")).is_zero());
        CHECK(T.algebra().nf(T.algebra().parse("u@2^2 - s'")).is_zero());
    }
}

TEST_CASE("prune eliminates unit entries") {
    AffineAlgebra<Q> A = hyperbola();
    // e_1 = -u e_0 forces g=1 with the substituted relation
    PresentedModule<Q> M = PresentedModule<Q>::of_columns(A, 2, {{"u", "1"}, {"s", "t"}});
    PruneResult<Q> P = prune(M);
    CHECK(P.module.ngens() == 1);
    CHECK(P.kept == std::vector<uint32_t>{0});
    CHECK(prune_is_iso(M, P));
    CHECK(canonically_equal(P.module, PresentedModule<Q>::cyclic(A, {"s - t*u"})));
    SECTION("free modules and tight presentations are untouched") {
        PresentedModule<Q> F = PresentedModule<Q>::free(A, 3);
        CHECK(prune(F).module.ngens() == 3);
        PresentedModule<Q> I = ideal_module();
        CHECK(prune(I).module.ngens() == 2);
    }
    SECTION("zero module prunes to nothing") {
        PresentedModule<Q> Z = PresentedModule<Q>::cyclic(base_R(), {"1"});
        PruneResult<Q> PZ = prune(Z);
        CHECK(PZ.module.ngens() == 0);
        CHECK(PZ.module.is_zero());
        CHECK(prune_is_iso(Z, PZ));
    }
}

TEST_CASE("torsion of modules over the base") {
    AffineAlgebra<Q> R = base_R();
    SECTION("free modules are torsion free with trivial multiplier") {
        TorsionInfo<Q> ti = torsion_submodule(PresentedModule<Q>::free(R, 2));
        CHECK(ti.torsion_free);
        CHECK(ti.h == R.parse("1"));
        CHECK(ti.sat_steps == 0);
    }
    SECTION("the ideal module is torsion free") {
        CHECK(is_torsion_free(ideal_module()));
    }
    SECTION("cyclic torsion module is all torsion") {
        PresentedModule<Q> M = PresentedModule<Q>::cyclic(R, {"s"});
        TorsionInfo<Q> ti = torsion_submodule(M);
        CHECK_FALSE(ti.torsion_free);
        Submodule<Q> T(R.ambient(), 1, ti.gens);
        CHECK(T.contains(Vec<Q>::unit(R.ambient(), 1, 0, Q(1))));
        CHECK(ti.quotient.is_zero());
        // the certified multiplier annihilates every torsion generator
        for (auto& g : ti.gens) CHECK(M.nf(g.scaled(ti.h)).is_zero());
        CHECK(annihilator(M).contains(ti.h));
    }
    SECTION("mixed sum splits off its torsion part") {
        PresentedModule<Q> M = direct_sum(PresentedModule<Q>::cyclic(R, {"s"}),
                                          PresentedModule<Q>::free(R, 1));
        TorsionInfo<Q> ti = torsion_submodule(M);
        CHECK_FALSE(ti.torsion_free);
        Submodule<Q> T(R.ambient(), 2, ti.gens);
        CHECK(T.contains(Vec<Q>::unit(R.ambient(), 2, 0, Q(1))));
        CHECK_FALSE(T.contains(Vec<Q>::unit(R.ambient(), 2, 1, Q(1))));
        CHECK_FALSE(ti.quotient.is_zero());
        CHECK(is_torsion_free(ti.quotient));  // idempotence
        PruneResult<Q> P = prune(ti.quotient);
        CHECK(P.module.ngens() == 1);
        CHECK(P.module.relations().empty());  // the quotient is free of rank 1
    }
    SECTION("square of the ideal module carries the swap class") {
        PresentedModule<Q> T2 = tensor_over_base(ideal_module(), ideal_module());
        TorsionInfo<Q> ti = torsion_submodule(T2);
        CHECK_FALSE(ti.torsion_free);
        const RingPtr& amb = R.ambient();
        // w = e(0,1) - e(1,0) at slots 1 and 2
        VQ w = qv(amb, {"0", "1", "-1", "0"});
        CHECK_FALSE(T2.nf(w).is_zero());          // nonzero class
        CHECK(T2.nf(w.scaled(qp(amb, "s"))).is_zero());  // killed by s
        CHECK(T2.nf(w.scaled(qp(amb, "t"))).is_zero());  // and by t
        Submodule<Q> T(amb, 4, ti.gens);
        CHECK(T.contains(w));
        CHECK(is_torsion_free(ti.quotient));
        for (auto& g : ti.gens) CHECK(T2.nf(g.scaled(ti.h)).is_zero());
    }
    SECTION("torsion over an algebra with extra variables") {
        AffineAlgebra<Q> As = localize_by_element(R, R.parse("s"));
        // A_s / (t): t is a nonzerodivisor parameter, so this is torsion
        PresentedModule<Q> M = PresentedModule<Q>::cyclic(As, {"t"});
        TorsionInfo<Q> ti = torsion_submodule(M);
        CHECK_FALSE(ti.torsion_free);
        CHECK(ti.quotient.is_zero());
        // and the localized free line stays torsion free
        CHECK(is_torsion_free(PresentedModule<Q>::free(As, 1)));
    }
}
