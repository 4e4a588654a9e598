#include <gtest/gtest.h>

#include <sstream>

#include "support/oracles.hpp"

using namespace ww;

namespace {

IntInvariant single(int n, std::vector<i64> c) { return IntInvariant::single(n, c); }

IntInvariant first_slot(const IntInvariant& inv) {
    IntInvariant out(MultiDegree{inv.degree().n[0]});
    for (const auto& [i, c] : inv.coeffs()) out.add({i[0]}, c);
    return out;
}

}  // namespace

TEST(BuildVW, P2Examples) {
    EXPECT_EQ(build_vw(*p2_fixture(4)), single(11, {0, 8, 2, 1}));
    EXPECT_EQ(build_vw(*p2_fixture(1)), single(2, {1}));
    EXPECT_EQ(build_vw(*p2_fixture(6)), single(17, {1024, 256, 1088, 848, 728, 480, 288, 132, 46}));
}

TEST(BuildVW, P1xP1Example) {
    const IntInvariant v = build_vw(*p1xp1_fixture(3, 4));
    EXPECT_EQ(v.degree(), (MultiDegree{13, 1, 1}));
    EXPECT_EQ(first_slot(v), single(13, {224, 92, 78, 40, 20, 6, 1}));
}

TEST(BuildVW, RejectsNonIntegralTable) {
    WelschingerTable t{SurfaceClass::p2(1), multireal_vector({1, 0})};
    EXPECT_THROW(build_vw(t), TableNotBetaIntegral);
}

TEST(BuildVW, RejectsIncompleteTable) {
    WelschingerTable t{SurfaceClass::p2(4), multireal_vector({240, 144})};
    EXPECT_THROW(build_vw(t), std::invalid_argument);
}

TEST(BuildVW, ReproducesEveryFixture) {
    for (const auto& name : builtin_table_names()) {
        const WelschingerTable t = *builtin_table(name);
        const IntInvariant v = build_vw(t);
        for (const auto& [s, w] : t.values)
            EXPECT_EQ(eval_invariant(v, multireal_algebra(t.surface.degree(), s)), WittClassQ(w)) << name;
    }
}

TEST(TriangleSemantics, WelschingerFormula) {
    for (int d = 1; d <= 6; ++d) {
        const MultirealTriangle T = triangle_semantics(*p2_fixture(d));
        EXPECT_FALSE(T.first_non_integral().has_value());
        const auto top = T.row(0), second = T.row(1);
        for (size_t u = 0; u < second.size(); ++u) EXPECT_EQ(second[u], (top[u + 1] - top[u]) / 2);
    }
}

TEST(TriangleSemantics, CsvRows) {
    const std::string csv = triangle_semantics(*p2_fixture(4)).to_csv();
    EXPECT_EQ(csv, "0,16,40,80,144,240\n8,12,20,32,48\n2,4,6,8\n1,1,1\n0,0\n0\n");
}

TEST(Aliases, Classes) {
    EXPECT_EQ(alias_p1xp1(3, 4), SurfaceClass({1, 1}, {7, 3, 4}));
    EXPECT_EQ(alias_p1xp1_symmetric(2), SurfaceClass({2}, {4, 2}));
    EXPECT_EQ(p3_summands(3), (std::vector<std::pair<int, int>>{{0, 3}, {1, 2}}));
    EXPECT_EQ(alias_p3(3).size(), 2u);
}

TEST(Aliases, CanonicalBlocks) {
    EXPECT_EQ(canonical_blocks(SurfaceClass({1, 1}, {4, 1, 1})), SurfaceClass({2}, {4, 1}));
    EXPECT_EQ(canonical_blocks(SurfaceClass({1, 2}, {6, 1, 3})), SurfaceClass({2, 1}, {6, 3, 1}));
    EXPECT_THROW(SurfaceClass({1}, {1, 3}), std::invalid_argument);
}

TEST(Aliases, P3Aggregate) {
    const auto v = p3_invariant(2);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->degree(), (MultiDegree{2}));
    IntInvariant expected(MultiDegree{2});
    for (auto [a, b] : p3_summands(2)) {
        const IntInvariant part = build_vw(*p1xp1_fixture(a, b));
        for (const auto& [i, c] : part.coeffs()) expected.add({i[0]}, c);
    }
    EXPECT_EQ(*v, expected);
    for (const auto& [s, w] : multireal_from_beta(*v)) EXPECT_GE(w, 0);
}

TEST(Aliases, ClosedFormMatchesTables) {
    for (int a = 1; a <= 7; ++a) {
        const auto t = p1xp1_fixture(a, 2);
        ASSERT_TRUE(t.has_value());
        const i64 expected = ((a + 1) / 2) * (i64{1} << (a - 1));
        EXPECT_EQ(t->values.at(MultiIndex{a + 1, 0, 0}), expected) << "a=" << a;
    }
}

TEST(WGLift, Examples) {
    const LiftedInvariant one = wg_lift(single(2, {1}), 1, 1);
    EXPECT_EQ(one.rank, 1);
    EXPECT_EQ(one.hyperbolic, 0);

    const auto N = oracle::kontsevich(4);
    const i64 gw4 = static_cast<i64>(N[4]);
    const LiftedInvariant v4 = wg_lift(single(11, {0, 8, 2, 1}), gw4, 240);
    EXPECT_EQ(v4.hyperbolic, (620 - 240) / 2);
    EXPECT_EQ(v4.rank, 620);
    EXPECT_EQ(v4.evaluate(multireal_algebra(MultiDegree{11}, {0})).witt, WittClassQ(240));

    const LiftedInvariant zero = wg_lift(IntInvariant(MultiDegree{4}), 0, 0);
    EXPECT_EQ(zero.rank, 0);
    EXPECT_THROW(wg_lift(single(11, {0, 8, 2, 1}), 621, 240), LiftError);
    EXPECT_THROW(wg_lift(single(11, {0, 8, 2, 1}), 100, 240), LiftError);
}

TEST(HypothesisGuard, Examples) {
    EXPECT_EQ(hypothesis_guard(SurfaceClass::p2(5)).status, GuardStatus::quadratic_side_defined);
    EXPECT_EQ(hypothesis_guard(SurfaceClass({6}, {4, 1})).status, GuardStatus::welschinger_only);
    EXPECT_EQ(hypothesis_guard(SurfaceClass({6}, {5, 1})).status, GuardStatus::quadratic_side_defined);
    EXPECT_EQ(hypothesis_guard(SurfaceClass({7}, {6, 1})).status, GuardStatus::welschinger_only);
}

TEST(TableJson, RoundTrip) {
    for (const auto& name : builtin_table_names()) {
        const WelschingerTable t = *builtin_table(name);
        const WelschingerTable back = table_from_json(json::parse(to_json(t).dump()));
        EXPECT_EQ(back.surface, t.surface);
        EXPECT_EQ(back.values, t.values);
    }
}

TEST(InvariantJson, RoundTrip) {
    oracle::Random rng(3);
    for (int k = 0; k < 50; ++k) {
        WittInvariant x = rng.witt_invariant(rng.degree(2, 8), Basis::lambda);
        EXPECT_EQ(invariant_from_json(json::parse(to_json(x).dump())), x);
    }
}
