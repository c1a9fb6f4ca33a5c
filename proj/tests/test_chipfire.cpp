// Copyright (c) twomark contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "twomark/assembly.hpp"
#include "twomark/chipfire.hpp"

using namespace twomark;

namespace {

Graph triangle() { return Graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}); }

Graph bowtie() {
    return Graph(5, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {2, 3, 1}, {3, 4, 1}, {2, 4, 1}});
}

Graph path(int edges) {
    std::vector<Edge> e;
    for (int i = 0; i < edges; ++i) e.push_back({i, i + 1, 1});
    return Graph(edges + 1, e);
}

} // namespace

TEST(Reduce, SingleChipOffBaseIsAlreadyReduced) {
    Graph g = triangle();
    Divisor d = Divisor::unit(3, 1);
    EXPECT_TRUE(dhar_burns_all(g, d, 0));
    EXPECT_EQ(reduce(g, d, 0), d);
}

TEST(Reduce, ZeroDivisorIsFixed) {
    for (const Graph& g : {triangle(), bowtie(), path(3)}) {
        Divisor zero(g.vertex_count());
        EXPECT_EQ(reduce(g, zero, 0), zero);
    }
}

TEST(Reduce, TripleChipOnTriangle) {
    Graph g = triangle();
    Divisor d(3);
    d[1] = 3;
    Divisor r = reduce(g, d, 0);
    EXPECT_EQ(r.degree(), 3);
    EXPECT_TRUE(is_q_reduced(g, r, 0));
    EXPECT_EQ(reduce(g, r, 0), r);
}

TEST(Reduce, DebtReliefHandlesNegativeChips) {
    Graph g = bowtie();
    Divisor d(5);
    d[4] = -3;
    d[0] = 1;
    Divisor r = reduce(g, d, 0);
    EXPECT_EQ(r.degree(), -2);
    EXPECT_TRUE(is_q_reduced(g, r, 0));
}

TEST(Reduce, UniqueReducedFormAcrossFiringClosure) {
    // every divisor reachable by set firings reduces to the same form,
    // and that form is the only q-reduced one in the closure
    Graph g = triangle();
    Divisor d(3);
    d[1] = 2;
    d[2] = 1;
    Divisor r = reduce(g, d, 0);
    auto closure = oracles::firing_closure(g, d, -4, 7);
    long long reduced_seen = 0;
    for (const Divisor& e : closure) {
        EXPECT_EQ(reduce(g, e, 0), r);
        if (is_q_reduced(g, e, 0)) ++reduced_seen;
    }
    EXPECT_EQ(reduced_seen, 1);
    EXPECT_TRUE(std::any_of(closure.begin(), closure.end(),
                            [&](const Divisor& e) { return e == r; }));
}

TEST(Equivalence, TorsionOnTriangle) {
    Graph g = triangle();
    Divisor v = Divisor::unit(3, 0), w = Divisor::unit(3, 1);
    Divisor diff = v - w;
    EXPECT_TRUE(is_equivalent(g, 3 * diff, Divisor(3)));
    EXPECT_FALSE(is_equivalent(g, diff, Divisor(3)));
    EXPECT_FALSE(is_equivalent(g, 2 * diff, Divisor(3)));
}

TEST(Equivalence, DegreeMismatchIsFalse) {
    Graph g = triangle();
    EXPECT_FALSE(is_equivalent(g, Divisor::unit(3, 0), Divisor(3)));
    EXPECT_TRUE(is_equivalent(g, Divisor::unit(3, 0), Divisor::unit(3, 0)));
}

TEST(Rank, TriangleExamples) {
    Graph g = triangle();
    EXPECT_EQ(rank(g, Divisor::unit(3, 1)), 0);
    Divisor two(3);
    two[1] = 2;
    EXPECT_EQ(rank(g, two), 1);
    Divisor neg(3);
    neg[2] = -1;
    EXPECT_EQ(rank(g, neg), -1);
}

TEST(Rank, BowtieDoubleChipOnSharedVertex) {
    Graph g = bowtie();
    Divisor d(5);
    d[2] = 2;
    EXPECT_EQ(rank(g, d), 1);
    EXPECT_EQ(oracles::rank_by_definition(g, d), 1);
}

TEST(Rank, MatchesLiteralDefinition) {
    for (const Graph& g : {triangle(), bowtie(), path(2), Graph(2, {{0, 1, 2}})}) {
        for (long long deg = -1; deg <= 3; ++deg) {
            for (const Divisor& rep : enumerate_picard(g, deg, 0)) {
                EXPECT_EQ(rank(g, rep), oracles::rank_by_definition(g, rep))
                    << g.fingerprint() << " deg " << deg;
            }
        }
    }
}

TEST(Rank, IsAClassFunction) {
    Graph g = bowtie();
    Divisor d(5);
    d[0] = 2;
    Divisor fired = d;
    fired[2] -= g.valence(2);
    for (const auto& [u, m] : g.neighbors(2)) fired[u] += m;
    EXPECT_TRUE(is_equivalent(g, d, fired));
    EXPECT_EQ(rank(g, d), rank(g, fired));
}

TEST(Rank, MonotoneUnderAddingAChip) {
    Graph g = bowtie();
    for (const Divisor& rep : enumerate_picard(g, 1, 0)) {
        long long r = rank(g, rep);
        for (Vertex u = 0; u < g.vertex_count(); ++u) {
            long long ru = rank(g, rep + Divisor::unit(5, u));
            EXPECT_GE(ru, r);
            EXPECT_LE(ru, r + 1);
        }
    }
}

TEST(Rank, RiemannRochOnFixtureSweep) {
    for (const Graph& g : {triangle(), bowtie(), path(3)}) {
        Divisor k = canonical_divisor(g);
        for (long long deg = -2; deg <= 2 * g.genus(); ++deg) {
            for (const Divisor& rep : enumerate_picard(g, deg, 0)) {
                EXPECT_EQ(rank(g, rep) - rank(g, k - rep), deg - g.genus() + 1);
            }
        }
    }
}

TEST(Rank, EffectiveIffReducedEffectiveAtEveryBase) {
    Graph g = bowtie();
    for (long long deg = 0; deg <= 2; ++deg) {
        for (const Divisor& rep : enumerate_picard(g, deg, 0)) {
            bool has_rank = rank(g, rep) >= 0;
            for (Vertex q = 0; q < g.vertex_count(); ++q)
                EXPECT_EQ(reduce(g, rep, q)[q] >= 0, has_rank);
        }
    }
}

TEST(Torsion, CycleExamples) {
    EXPECT_EQ(torsion_order(marked_cycle(1, 6)), 7);
    EXPECT_EQ(torsion_order(marked_cycle(2, 4)), 3);
    EXPECT_EQ(torsion_order(marked_cycle(1, 1)), 2);
    EXPECT_EQ(torsion_order(marked_cycle(2, 12)), 7);
    EXPECT_EQ(torsion_order(marked_path(3)), 1);
}

TEST(Picard, TriangleDegreeOneHasThreeClasses) {
    Graph g = triangle();
    auto reps = enumerate_picard(g, 1, 0);
    ASSERT_EQ(reps.size(), 3u);
    for (size_t i = 0; i < reps.size(); ++i) {
        EXPECT_EQ(reps[i].degree(), 1);
        EXPECT_TRUE(is_q_reduced(g, reps[i], 0));
        for (size_t j = i + 1; j < reps.size(); ++j)
            EXPECT_FALSE(is_equivalent(g, reps[i], reps[j]));
    }
}

TEST(Picard, ChainOfTwoTriangleLoopsHasNineClasses) {
    MarkedGraph chain = build_chain({{{1, 2}, {1, 2}}, {}});
    EXPECT_EQ(spanning_tree_count(chain.graph), 9);
    EXPECT_EQ(enumerate_picard(chain.graph, 2, chain.w).size(), 9u);
}

TEST(Picard, TreeHasOneClassAnyDegree) {
    Graph g = path(4);
    for (long long deg : {-2LL, 0LL, 3LL}) EXPECT_EQ(enumerate_picard(g, deg, 0).size(), 1u);
}

TEST(Picard, CapThrowsResourceError) {
    EXPECT_THROW(enumerate_picard(triangle(), 1, 0, 2), resource_limit_error);
}
