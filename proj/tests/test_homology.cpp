#include <catch2/catch_amalgamated.hpp>

#include "flatlab/depth.hpp"
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

PresentedModule<Q> ideal_module() {
    return PresentedModule<Q>::of_columns(base_R(), 2, {{"t", "-s"}});
}

long k_dim(const PresentedModule<Q>& M) {
    return module_k_dim(M.gb(), M.ngens(), M.algebra().ambient()->vars.size());
}

}  // namespace

TEST_CASE("Koszul differentials have binomial shape and square to zero") {
    AffineAlgebra<Q> R = base_R();
    auto amb = R.ambient();
    KoszulComplex<Q> kc(qps(amb, {"s", "t"}), PresentedModule<Q>::free(R, 1));
    CHECK(kc.length() == 2);
    CHECK(kc.differential(1).src == 2);
    CHECK(kc.differential(1).dst == 1);
    CHECK(kc.differential(2).src == 1);
    CHECK(kc.differential(2).dst == 2);
    auto top = kc.differential(2).cols[0].to_polys();
    CHECK(top[0] == qp(amb, "-t"));
    CHECK(top[1] == qp(amb, "s"));
    SECTION("three-variable sequence over a hypersurface algebra") {
        AffineAlgebra<Q> A = hyperbola();
        KoszulComplex<Q> kc3(qps(A.ambient(), {"u", "v", "t"}), PresentedModule<Q>::free(A, 1));
        CHECK(kc3.length() == 3);
        CHECK(kc3.differential(2).src == 3);
        CHECK(kc3.differential(2).dst == 3);
        CHECK(kc3.differential(3).src == 1);
    }
}

TEST_CASE("homology of a regular sequence is concentrated in degree zero") {
    AffineAlgebra<Q> R = base_R();
    PresentedModule<Q> F = PresentedModule<Q>::free(R, 1);
    KoszulComplex<Q> kc(qps(R.ambient(), {"s", "t"}), F);
    auto h0 = kc.homology(0);
    auto h1 = kc.homology(1);
    auto h2 = kc.homology(2);
    CHECK_FALSE(h0.is_zero);
    CHECK(h1.is_zero);
    CHECK(h2.is_zero);
    CHECK(k_dim(h0.module) == 1);
    Ideal<Q> ann = annihilator(h0.module);
    CHECK(ann.contains(qp(R.ambient(), "s")));
    CHECK(ann.contains(qp(R.ambient(), "t")));
    SECTION("degrees outside the range report zero") {
        CHECK(kc.homology(-1).is_zero);
        CHECK(kc.homology(3).is_zero);
        CHECK(kc.homology(3).module.ngens() == 0);
    }
}

TEST_CASE("homology sees annihilated coefficients") {
    AffineAlgebra<Q> R = base_R();
    PresentedModule<Q> M = PresentedModule<Q>::cyclic(R, {"s"});
    KoszulComplex<Q> kc({qp(R.ambient(), "s")}, M);
    auto h0 = kc.homology(0);
    auto h1 = kc.homology(1);
    CHECK_FALSE(h0.is_zero);
    CHECK_FALSE(h1.is_zero);
    CHECK(k_dim(h1.module) == -1);
    CHECK(annihilator(h1.module).contains(qp(R.ambient(), "s")));
}

TEST_CASE("degree-zero homology is the coefficient quotient") {
    PresentedModule<Q> M = ideal_module();
    auto amb = M.algebra().ambient();
    auto h0 = koszul_homology(qps(amb, {"s", "t"}), M, 0);
    CHECK_FALSE(h0.is_zero);
    CHECK(k_dim(h0.module) == 2);
    std::vector<VQ> rels = M.relations();
    for (uint32_t j = 0; j < 2; ++j) {
        rels.push_back(VQ::single(amb, 2, j, qp(amb, "s")));
        rels.push_back(VQ::single(amb, 2, j, qp(amb, "t")));
    }
    PresentedModule<Q> direct(M.algebra(), 2, rels);
    CHECK(k_dim(direct) == 2);
}

TEST_CASE("depth at the irrelevant ideal") {
    AffineAlgebra<Q> R = base_R();
    auto amb = R.ambient();
    CHECK(depth_at_irrelevant(PresentedModule<Q>::free(R, 1)) == ExtInt::of(2));
    CHECK(depth_at_irrelevant(PresentedModule<Q>::cyclic(R, {"s"})) == ExtInt::of(1));
    PresentedModule<Q> k = PresentedModule<Q>::cyclic(R, {"s", "t"});
    CHECK(depth_at_irrelevant(k) == ExtInt::of(0));
    CHECK(depth_at_irrelevant(direct_sum(PresentedModule<Q>::free(R, 1), k)) == ExtInt::of(0));
    SECTION("vanishing homology gives the infinite sentinel") {
        PresentedModule<Q> zero = PresentedModule<Q>::cyclic(R, {"1"});
        CHECK(depth_at_irrelevant(zero) == ExtInt::pinf());
        PresentedModule<Q> off = PresentedModule<Q>::cyclic(R, {"s - 1"});
        CHECK(depth_at_irrelevant(off) == ExtInt::pinf());
        CHECK(depth_at_irrelevant(off).str() == "inf");
    }
}

TEST_CASE("depth over hypersurface algebras") {
    AffineAlgebra<Q> A2 = sqrt_s();
    CHECK(depth_at_irrelevant(PresentedModule<Q>::free(A2, 1)) == ExtInt::of(2));
    AffineAlgebra<Q> A3 = hyperbola();
    CHECK(depth_at_irrelevant(PresentedModule<Q>::free(A3, 1)) == ExtInt::of(3));
}

TEST_CASE("codepth over the base variables") {
    AffineAlgebra<Q> R = base_R();
    auto amb = R.ambient();
    CHECK(codepth_over_base(PresentedModule<Q>::free(R, 1)) == ExtInt::of(0));
    CHECK(codepth_over_base(PresentedModule<Q>::cyclic(R, {"s"})) == ExtInt::of(1));
    CHECK(codepth_over_base(PresentedModule<Q>::cyclic(R, {"s", "t"})) ==
          ExtInt::of(2));
    CHECK(codepth_over_base(PresentedModule<Q>::free(hyperbola(), 1)) == ExtInt::of(0));
    SECTION("modules supported away from the fiber report -inf") {
        PresentedModule<Q> off = PresentedModule<Q>::cyclic(R, {"s - 1"});
        CHECK(codepth_over_base(off) == ExtInt::minf());
        CHECK(codepth_over_base(off).str() == "-inf");
        AffineAlgebra<Q> As = localize_by_element(R, R.parse("s"));
        CHECK(codepth_over_base(PresentedModule<Q>::free(As, 1)) == ExtInt::minf());
    }
}

TEST_CASE("finite length detection") {
    AffineAlgebra<Q> R = base_R();
    auto amb = R.ambient();
    CHECK(is_finite_length(PresentedModule<Q>::cyclic(R, {"s", "t"})));
    CHECK(is_finite_length(PresentedModule<Q>::cyclic(R, {"1"})));
    CHECK(is_finite_length(PresentedModule<Q>::free(R, 0)));
    CHECK_FALSE(is_finite_length(PresentedModule<Q>::cyclic(R, {"s"})));
    CHECK_FALSE(is_finite_length(PresentedModule<Q>::free(R, 1)));
    CHECK_FALSE(is_finite_length(PresentedModule<Q>::cyclic(R, {"s - 1"})));
    AffineAlgebra<Q> A = hyperbola();
    CHECK(is_finite_length(PresentedModule<Q>::cyclic(A, {"u", "v", "t"})));
}

TEST_CASE("extended integers") {
    CHECK(ExtInt::of(2) + ExtInt::of(3) == ExtInt::of(5));
    CHECK(ExtInt::pinf() + ExtInt::of(1) == ExtInt::pinf());
    CHECK(ExtInt::of(-4) + ExtInt::minf() == ExtInt::minf());
    CHECK(ExtInt::pinf() + ExtInt::pinf() == ExtInt::pinf());
    CHECK_THROWS_AS(ExtInt::pinf() + ExtInt::minf(), error);
    CHECK(ExtInt::of(-3).str() == "-3");
    CHECK_FALSE(ExtInt::of(0) == ExtInt::minf());
}

TEST_CASE("homology over a prime field") {
    FieldCtx<GF> cx(101);
    auto tw = make_tower(cx, {"s", "t"});
    AffineAlgebra<GF> R = AffineAlgebra<GF>::base_only(tw);
    PresentedModule<GF> F = PresentedModule<GF>::free(R, 1);
    std::vector<Poly<GF>> seq{Poly<GF>::variable(R.ambient(), 0, cx.one()),
                              Poly<GF>::variable(R.ambient(), 1, cx.one())};
    KoszulComplex<GF> kc(seq, F);
    CHECK_FALSE(kc.homology(0).is_zero);
    CHECK(kc.homology(1).is_zero);
    CHECK(depth_at_irrelevant(F) == ExtInt::of(2));
}
