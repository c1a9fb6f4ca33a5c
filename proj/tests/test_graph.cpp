// Copyright (c) twomark contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "twomark/graph.hpp"

using namespace twomark;

namespace {

Graph triangle() { return Graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}); }

Graph double_edge() { return Graph(2, {{0, 1, 2}}); }

Graph path(int edges) {
    std::vector<Edge> e;
    for (int i = 0; i < edges; ++i) e.push_back({i, i + 1, 1});
    return Graph(edges + 1, e);
}

// two triangles sharing vertex 2, genus 2
Graph bowtie() {
    return Graph(5, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {2, 3, 1}, {3, 4, 1}, {2, 4, 1}});
}

} // namespace

TEST(GraphInvariants, RejectsLoopEdges) {
    EXPECT_THROW(Graph(2, {{0, 0, 1}, {0, 1, 1}}), std::invalid_argument);
}

TEST(GraphInvariants, RejectsDisconnected) {
    EXPECT_THROW(Graph(4, {{0, 1, 1}, {2, 3, 1}}), std::invalid_argument);
}

TEST(GraphInvariants, RejectsBadMultiplicity) {
    EXPECT_THROW(Graph(2, {{0, 1, 0}}), std::invalid_argument);
}

TEST(GraphInvariants, GenusAndValence) {
    Graph g = triangle();
    EXPECT_EQ(g.genus(), 1);
    EXPECT_EQ(g.valence(0), 2);
    EXPECT_EQ(double_edge().genus(), 1);
    EXPECT_EQ(double_edge().valence(1), 2);
    EXPECT_EQ(path(3).genus(), 0);
    EXPECT_EQ(bowtie().genus(), 2);
    EXPECT_EQ(bowtie().valence(2), 4);
}

TEST(GraphInvariants, ParallelEdgesAccumulate) {
    Graph g(2, {{0, 1, 1}, {1, 0, 1}});
    EXPECT_EQ(g.multiplicity(0, 1), 2);
    EXPECT_EQ(g, double_edge());
}

TEST(MarkedGraphInvariants, RejectsEqualMarks) {
    EXPECT_THROW(MarkedGraph(triangle(), 1, 1), std::invalid_argument);
    EXPECT_THROW(MarkedGraph(triangle(), 0, 5), std::invalid_argument);
}

TEST(CanonicalDivisor, TriangleIsZero) {
    Divisor k = canonical_divisor(triangle());
    EXPECT_TRUE(k.is_zero());
    EXPECT_EQ(k.degree(), 0);
}

TEST(CanonicalDivisor, PathOnTwoVertices) {
    Divisor k = canonical_divisor(path(1));
    EXPECT_EQ(k[0], -1);
    EXPECT_EQ(k[1], -1);
    EXPECT_EQ(k.degree(), -2);
}

TEST(CanonicalDivisor, BowtieConcentratesOnSharedVertex) {
    Divisor k = canonical_divisor(bowtie());
    EXPECT_EQ(k[2], 2);
    EXPECT_EQ(k[0], 0);
    EXPECT_EQ(k.degree(), 2);
}

TEST(CanonicalDivisor, DegreeIsTwoGenusMinusTwo) {
    for (const Graph& g : {triangle(), double_edge(), path(4), bowtie()})
        EXPECT_EQ(canonical_divisor(g).degree(), 2 * g.genus() - 2);
}

TEST(SpanningTrees, Triangle) { EXPECT_EQ(spanning_tree_count(triangle()), 3); }

TEST(SpanningTrees, DoubleEdge) { EXPECT_EQ(spanning_tree_count(double_edge()), 2); }

TEST(SpanningTrees, Bowtie) {
    EXPECT_EQ(spanning_tree_count(bowtie()), 9);
    EXPECT_EQ(oracles::spanning_trees_brute(bowtie()), 9);
}

TEST(SpanningTrees, MatchesBruteForce) {
    Graph theta(2, {{0, 1, 3}});
    Graph k4(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
    for (const Graph& g : {triangle(), double_edge(), path(3), bowtie(), theta, k4})
        EXPECT_EQ(spanning_tree_count(g), oracles::spanning_trees_brute(g)) << g.fingerprint();
}

TEST(Subdivide, PartsOneReproducesGraph) {
    Graph g = triangle();
    EXPECT_EQ(subdivide(g, 0, 1, 1), g);
}

TEST(Subdivide, DoubleEdgeIntoSevenCycle) {
    Graph g = subdivide(double_edge(), 0, 1, 6);
    EXPECT_EQ(g.vertex_count(), 7);
    EXPECT_EQ(g.genus(), 1);
    EXPECT_EQ(g.multiplicity(0, 1), 1);
    for (Vertex v = 0; v < 7; ++v) EXPECT_EQ(g.valence(v), 2);
}

TEST(Subdivide, PathKeepsGenusZero) {
    EXPECT_EQ(subdivide(path(2), 0, 1, 3).genus(), 0);
}

TEST(Subdivide, UnknownEdgeThrows) {
    EXPECT_THROW(subdivide(triangle(), 0, 0, 2), std::invalid_argument);
    EXPECT_THROW(subdivide(path(2), 0, 2, 2), std::invalid_argument);
    EXPECT_THROW(subdivide(triangle(), 0, 1, 0), std::invalid_argument);
}

TEST(Subdivide, GenusInvariantEverywhere) {
    for (const Graph& g : {triangle(), double_edge(), bowtie()}) {
        for (const Edge& e : g.edges()) {
            for (long long parts = 1; parts <= 4; ++parts) {
                Graph s = subdivide(g, e.u, e.v, parts);
                EXPECT_EQ(s.genus(), g.genus());
                EXPECT_EQ(s.vertex_count(), g.vertex_count() + static_cast<int>(parts) - 1);
            }
        }
    }
}
