#include <gtest/gtest.h>

#include <filesystem>

#include "support/fd_checks.hpp"

using namespace ww;

namespace {

FloorClass cls(int a, int b, int c, int d) { return normalize_class({a, b, c, d}); }

// Three vertices, all sources on the bottom one, two weight-1 edges up.
FloorDiagram cherry() { return FloorDiagram(cls(3, 0, 0, 0), {0, 0, 0}, {{0, 1, 1}, {0, 2, 1}}, {0, 0, 0}, {}); }

std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("ww_test_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST(NormalizeClass, Examples) {
    EXPECT_EQ(cls(4, 0, 0, 0), (FloorClass{4, 0, 0, 0}));
    EXPECT_EQ(cls(7, 3, 4, 0), (FloorClass{7, 4, 3, 0}));
    EXPECT_THROW(cls(3, 2, 2, 0), ClassOutsideDomain);
    EXPECT_THROW(cls(3, 3, 0, 0), ClassOutsideDomain);
    EXPECT_EQ(cls(4, 0, 0, 0).elements(), 11);
}

TEST(FloorDiagram, Constraints) {
    EXPECT_EQ(cherry().violation(), "");
    FloorDiagram bad(cls(3, 0, 0, 0), {0, 0, 0}, {{0, 1, 2}, {0, 2, 1}}, {0, 0, 0}, {});
    EXPECT_NE(bad.violation(), "");
    for (const FloorClass& c : oracle::classes_up_to(5))
        for (const auto& D : enumerate_diagrams(c)) EXPECT_EQ(D.violation(), "") << c.to_string();
}

TEST(FloorDiagram, PartialOrder) {
    const FloorDiagram D = cherry();
    const int e0 = D.edge_element(0), s0 = D.source_element(0);
    EXPECT_TRUE(D.less(s0, 0));
    EXPECT_TRUE(D.less(0, e0));
    EXPECT_TRUE(D.less(e0, 1));
    EXPECT_TRUE(D.less(s0, 2));
    EXPECT_FALSE(D.comparable(1, 2));
    EXPECT_FALSE(D.comparable(D.edge_element(0), D.edge_element(1)));
}

TEST(FloorDiagram, JsonRoundTrip) {
    for (const auto& D : enumerate_diagrams(cls(4, 1, 1, 0)))
        EXPECT_EQ(diagram_from_json(D.floor_class(), json::parse(to_json(D).dump())), D);
}

TEST(EnumerateMarked, LineAndCubic) {
    const auto cubic = enumerate_all_marked(cls(3, 0, 0, 0), 0);
    EXPECT_EQ(cubic.size(), 9u);
    size_t essential = 0;
    for (const auto& e : cubic) {
        essential += e.essential;
        if (!e.essential) {
            bool has_even = false;
            for (const auto& edge : e.marked.diagram.edges()) has_even = has_even || edge.weight == 2;
            EXPECT_TRUE(has_even);
        }
    }
    EXPECT_EQ(essential, 8u);

    const auto line = enumerate_marked(cls(1, 0, 0, 0), 0);
    ASSERT_EQ(line.size(), 1u);
    EXPECT_EQ(line[0].marked.diagram.num_vertices(), 1);
    EXPECT_EQ(line[0].mult, TPoly(0, 1));

    EXPECT_EQ(quad_invariant(cls(2, 0, 0, 0), 2).value, TPoly(2, 1));
}

TEST(PartitionMarking, Examples) {
    const FloorDiagram D = cherry();
    const MarkedDiagram plain{D, 0, {3, 4, 5, 3, 4, 1, 2, 3}};
    // s = 0 needs distinct labels
    const MarkedDiagram s0{D, 0, {4, 6, 8, 5, 7, 1, 2, 3}};
    EXPECT_NE(plain.violation(), "");
    EXPECT_EQ(s0.violation(), "");
    const MarkingPartition P0 = partition_marking(s0);
    EXPECT_EQ(P0.V, 0u);
    EXPECT_EQ(P0.C, 0u);
    EXPECT_TRUE(P0.twins.empty());
    EXPECT_EQ(multiplicity(s0), TPoly(0, 1));

    // Labels: 1 = two sources, 2 = source with its vertex, 3 = both edges, 4 = both top vertices.
    const MarkedDiagram md{D, 4, {2, 4, 4, 3, 3, 1, 1, 2}};
    ASSERT_EQ(md.violation(), "");
    const MarkingPartition P = partition_marking(md);
    EXPECT_EQ(P.V, bit(2));
    EXPECT_EQ(P.v_weight.at(2), 1);
    EXPECT_EQ(P.C, 0u);
    ASSERT_EQ(P.twins.size(), 2u);
    const TwinTree& top = P.twins[0].root == 3 ? P.twins[0] : P.twins[1];
    const TwinTree& leaves = P.twins[0].root == 3 ? P.twins[1] : P.twins[0];
    EXPECT_EQ(top.labels, bit(3) | bit(4));
    EXPECT_EQ(top.omega_infinity(), 1);
    EXPECT_EQ(leaves.labels, bit(1));
    EXPECT_EQ(leaves.omega_infinity(), 2);
    EXPECT_TRUE(is_essential(md));
    const int s = 4;
    EXPECT_EQ(multiplicity(md), TPoly::t(s, 3) + TPoly::t(s, 4) - TPoly(s, 2));
}

TEST(Multiplicity, Factors) {
    EXPECT_EQ(twin_factor(1, bit(1), 0), TPoly(1, 1));
    EXPECT_EQ(twin_factor(1, bit(1), 1), TPoly::t(1, 1) - TPoly(1, 1));
    EXPECT_EQ(TPoly::bracket(1, 3, 1), TPoly(1, 1) + TPoly::u(1, 1));
}

TEST(QuadInvariant, Line) {
    const auto r = quad_invariant(cls(1, 0, 0, 0), 0);
    EXPECT_EQ(r.value, TPoly(0, 1));
    EXPECT_EQ(beta_extract(quad_invariant(cls(1, 0, 0, 0), 1)), IntInvariant::single(2, {1}));
}

TEST(QuadInvariant, Degree4) {
    const auto r = quad_invariant(cls(4, 0, 0, 0), 5);
    TPoly sum(5);
    for (const auto& e : r.ledger) sum += e.mult;
    EXPECT_EQ(sum, r.value);
    EXPECT_EQ(beta_extract(r), IntInvariant::single(11, {0, 8, 2, 1}));
    EXPECT_EQ(welschinger_via_fd(r), 0);
}

TEST(QuadInvariant, CubicAllMinusSigns) {
    EXPECT_EQ(welschinger_via_fd(cls(3, 0, 0, 0), 4), 0);
    EXPECT_EQ(beta_extract(quad_invariant(cls(3, 0, 0, 0), 4)), IntInvariant::single(8, {0, 1}));
}

TEST(QuadInvariant, BetaExtractNeedsMaximalPairs) {
    EXPECT_THROW(beta_extract(quad_invariant(cls(3, 0, 0, 0), 2)), std::invalid_argument);
}

TEST(QuadInvariant, AsymmetricSumIsReported) {
    QuadInvariantResult r{cls(1, 0, 0, 0), 0, TPoly(0, 1), {}};
    r.cls = cls(2, 0, 0, 0);
    r.s = 2;
    r.value = TPoly::t(2, 1);
    EXPECT_THROW(beta_extract(r), AsymmetricSum);
}

TEST(ClassicalCount, MatchesKontsevich) {
    const auto N = oracle::kontsevich(4);
    for (int d = 1; d <= 4; ++d) EXPECT_EQ(classical_count(cls(d, 0, 0, 0)), static_cast<i64>(N[d])) << d;
}

TEST(Kontsevich, KnownValues) {
    const auto N = oracle::kontsevich(6);
    EXPECT_EQ(N[3], 12);
    EXPECT_EQ(N[4], 620);
    EXPECT_EQ(N[5], 87304);
    EXPECT_EQ(N[6], 26312976);
}

TEST(WelschingerViaFd, TwoRulingFormula) {
    for (int a = 1; a <= 4; ++a) {
        const FloorClass c = cls(a + 2, a, 2, 0);
        EXPECT_EQ(welschinger_via_fd(c, c.max_pairs()), ((a + 1) / 2) * (i64{1} << (a - 1))) << a;
    }
}

TEST(FloorProperties, DedupOracle) { EXPECT_EQ(fdcheck::dedup_against_oracle(3), ""); }

TEST(FloorProperties, TwinIdentity) {
    size_t trees = 0;
    EXPECT_EQ(fdcheck::twin_identity(4, &trees), "");
    EXPECT_GT(trees, 0u);
}

TEST(FloorProperties, SymmetricAtMaximalPairs) { EXPECT_EQ(fdcheck::symmetric_at_max(4), ""); }

TEST(FloorProperties, ConsistentAcrossPairs) { EXPECT_EQ(fdcheck::consistent_across_s(3), ""); }

TEST(Enumeration, ParallelMatchesSerial) {
    const FloorClass c = cls(5, 2, 1, 0);
    EnumOptions serial, parallel;
    parallel.jobs = 3;
    const auto a = enumerate_all_marked(c, c.max_pairs(), serial);
    const auto b = enumerate_all_marked(c, c.max_pairs(), parallel);
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].marked.phi, b[i].marked.phi);
        EXPECT_EQ(a[i].marked.diagram, b[i].marked.diagram);
        EXPECT_EQ(a[i].mult, b[i].mult);
    }
}

TEST(Enumeration, CacheReplayMatches) {
    const auto dir = fresh_dir("cache");
    EnumOptions opt;
    opt.cache_dir = dir.string();
    const FloorClass c = cls(4, 1, 0, 0);
    const auto cold = quad_invariant(c, 3, opt);
    EXPECT_TRUE(std::filesystem::exists(dir / "fd_4_1_0_0_s3.jsonl"));
    const auto warm = quad_invariant(c, 3, opt);
    EXPECT_EQ(cold.value, warm.value);
    EXPECT_EQ(to_json(cold).dump(), to_json(warm).dump());
    EXPECT_EQ(cold.value, quad_invariant(c, 3).value);
    std::filesystem::remove_all(dir);
}

TEST(Enumeration, StaleCacheIsRegenerated) {
    const auto dir = fresh_dir("stale");
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "fd_3_0_0_0_s1.jsonl");
        out << "{\"class\":[3,0,0,0],\"s\":1,\"gen_version\":\"old\"}\n";
    }
    EnumOptions opt;
    opt.cache_dir = dir.string();
    EXPECT_EQ(quad_invariant(cls(3, 0, 0, 0), 1, opt).value, quad_invariant(cls(3, 0, 0, 0), 1).value);
    std::filesystem::remove_all(dir);
}
