// Copyright (c) twomark contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "twomark/transmission.hpp"

namespace twomark {

// Two twice-marked graphs joined by identifying w1 with v2. The result is
// marked (v1, w2); genus and Jacobian order multiply across the seam.
struct GluedGraph {
    MarkedGraph first;
    MarkedGraph second;
    MarkedGraph glued;
    std::vector<Vertex> into_first;
    std::vector<Vertex> into_second;
    Vertex seam;
};

inline GluedGraph vertex_glue(const MarkedGraph& m1, const MarkedGraph& m2) {
    const int n1 = m1.graph.vertex_count();
    const int n2 = m2.graph.vertex_count();
    std::vector<Vertex> into_first(static_cast<size_t>(n1));
    for (int i = 0; i < n1; ++i) into_first[static_cast<size_t>(i)] = i;
    std::vector<Vertex> into_second(static_cast<size_t>(n2));
    Vertex next = n1;
    for (Vertex i = 0; i < n2; ++i)
        into_second[static_cast<size_t>(i)] = (i == m2.v) ? m1.w : next++;
    std::vector<Edge> edges = m1.graph.edges();
    for (const Edge& e : m2.graph.edges())
        edges.push_back({into_second[static_cast<size_t>(e.u)], into_second[static_cast<size_t>(e.v)], e.mult});
    Graph g(n1 + n2 - 1, edges);
    return GluedGraph{m1, m2, MarkedGraph(std::move(g), m1.v, into_second[static_cast<size_t>(m2.w)]),
                      std::move(into_first), std::move(into_second), m1.w};
}

// Lifts a divisor on one side into the glued vertex numbering.
inline Divisor embed_divisor(const GluedGraph& gg, int side, const Divisor& d) {
    const std::vector<Vertex>& map = side == 1 ? gg.into_first : gg.into_second;
    if (side != 1 && side != 2) throw std::invalid_argument("embed_divisor: side must be 1 or 2");
    if (d.size() != static_cast<int>(map.size()))
        throw std::invalid_argument("embed_divisor: size mismatch");
    Divisor out(gg.glued.graph.vertex_count());
    for (size_t i = 0; i < map.size(); ++i) out[map[i]] += d[static_cast<Vertex>(i)];
    return out;
}

// Rank of d1 + d2 on the gluing, computed on the pieces:
//     min over l of  r1(d1 - (l+1) w1) + r2(d2 + l v2) + 1.
// Past l = deg d1 the first term is frozen at -1 while the second is
// nondecreasing in l, and below l = -deg d2 - 1 symmetrically, so the
// minimum is certified inside [-deg d2 - g2 - 1, deg d1 + g1 + 1].
inline long long glue_rank(const GluedGraph& gg, const Divisor& d1, const Divisor& d2) {
    const Graph& g1 = gg.first.graph;
    const Graph& g2 = gg.second.graph;
    const Divisor uw1 = Divisor::unit(g1.vertex_count(), gg.first.w);
    const Divisor uv2 = Divisor::unit(g2.vertex_count(), gg.second.v);
    const long long lo = -d2.degree() - g2.genus() - 1;
    const long long hi = d1.degree() + g1.genus() + 1;
    long long best = LLONG_MAX;
    for (long long l = lo; l <= hi; ++l)
        best = std::min(best, rank(g1, d1 - (l + 1) * uw1) + rank(g2, d2 + l * uv2) + 1);
    return best;
}

struct ChainingReport {
    bool tables_match = false;
    std::optional<std::pair<long long, long long>> mismatch;
    bool d1_submodular = false;
    bool d2_submodular = false;
    bool glued_submodular = false;
    bool perms_checked = false;
    bool perms_match = false;

    bool ok() const { return tables_match && (!perms_checked || perms_match); }
};

// Compares the transmission table of d1 + d2 on the gluing, computed by
// direct ranks, against the min-plus product of the two component tables
// over the requested window. When all three divisors are submodular, also
// compares the extracted permutation with the Demazure product.
inline ChainingReport verify_chaining(const GluedGraph& gg, const Divisor& d1, const Divisor& d2,
                                      long long a_lo, long long a_hi, long long b_lo, long long b_hi) {
    ChainingReport out;
    Divisor d = embed_divisor(gg, 1, d1) + embed_divisor(gg, 2, d2);
    TransmissionTable lhs = transmission_table(gg.glued, d, a_lo, a_hi, b_lo, b_hi);
    // the minimizing column for (a, b) lies in [b - deg d2, a + deg d1]
    const long long l_lo = b_lo - d2.degree() - 1;
    const long long l_hi = a_hi + d1.degree() + 1;
    TransmissionTable t1 = transmission_table(gg.first, d1, a_lo, a_hi, l_lo, l_hi);
    TransmissionTable t2 = transmission_table(gg.second, d2, l_lo, l_hi, b_lo, b_hi);
    SFunction star = tropical_star(t1.table, t2.table);
    out.tables_match = true;
    for (long long a = a_lo; a <= a_hi && out.tables_match; ++a) {
        for (long long b = b_lo; b <= b_hi; ++b) {
            if (lhs.table.at(a, b) != star(a, b)) {
                out.tables_match = false;
                out.mismatch = std::make_pair(a, b);
                break;
            }
        }
    }
    SubmodularityReport s1 = transmission_permutation(gg.first, d1);
    SubmodularityReport s2 = transmission_permutation(gg.second, d2);
    SubmodularityReport sg = transmission_permutation(gg.glued, d);
    out.d1_submodular = s1.submodular;
    out.d2_submodular = s2.submodular;
    out.glued_submodular = sg.submodular;
    if (s1.submodular && s2.submodular && sg.submodular) {
        out.perms_checked = true;
        out.perms_match = (*sg.tau == demazure(*s1.tau, *s2.tau));
    }
    return out;
}

// Cycle of length l1 + l2 with marks at the two endpoints of the split:
// v at position 0, w at position l1, edges between consecutive positions.
inline MarkedGraph marked_cycle(long long l1, long long l2) {
    if (l1 < 1 || l2 < 1) throw std::invalid_argument("marked_cycle: arcs must be positive");
    const long long L = l1 + l2;
    std::vector<Edge> edges;
    for (long long i = 0; i < L; ++i)
        edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % L), 1});
    return MarkedGraph(Graph(static_cast<int>(L), edges), 0, static_cast<Vertex>(l1));
}

// Path with `nedges` unit edges, marked at its endpoints.
inline MarkedGraph marked_path(long long nedges) {
    if (nedges < 1) throw std::invalid_argument("marked_path: need at least one edge");
    std::vector<Edge> edges;
    for (long long i = 0; i < nedges; ++i)
        edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1), 1});
    return MarkedGraph(Graph(static_cast<int>(nedges) + 1, edges), 0, static_cast<Vertex>(nedges));
}

// A chain of marked cycles glued in series. Loop i contributes a cycle with
// arc split (l1_i, l2_i) and torsion (l1_i + l2_i) / gcd(l1_i, l2_i); the
// optional xi_i places one chip on loop i, xi_i steps clockwise from w_i
// (clockwise meaning positions l1_i + xi_i mod L_i in loop coordinates).
struct ChainSpec {
    struct Loop {
        long long l1 = 1;
        long long l2 = 1;
    };
    std::vector<Loop> loops;
    std::vector<long long> xi;
};

inline long long loop_torsion(const ChainSpec::Loop& loop) {
    return (loop.l1 + loop.l2) / std::gcd(loop.l1, loop.l2);
}

namespace detail {

struct ChainLayout {
    MarkedGraph graph;
    std::vector<std::vector<Vertex>> loop_vertex; // [loop][local position]
};

inline ChainLayout chain_layout(const ChainSpec& spec) {
    if (spec.loops.empty()) throw std::invalid_argument("chain: need at least one loop");
    if (!spec.xi.empty() && spec.xi.size() != spec.loops.size())
        throw std::invalid_argument("chain: xi must give one position per loop");
    for (size_t i = 0; i < spec.loops.size(); ++i) {
        const auto& loop = spec.loops[i];
        if (loop.l1 < 1 || loop.l2 < 1) throw std::invalid_argument("chain: arcs must be positive");
        if (!spec.xi.empty() && (spec.xi[i] < 0 || spec.xi[i] >= loop.l1 + loop.l2))
            throw std::invalid_argument("chain: xi out of range");
    }
    ChainLayout layout{marked_cycle(spec.loops[0].l1, spec.loops[0].l2), {}};
    layout.loop_vertex.emplace_back();
    for (Vertex i = 0; i < layout.graph.graph.vertex_count(); ++i)
        layout.loop_vertex[0].push_back(i);
    for (size_t i = 1; i < spec.loops.size(); ++i) {
        MarkedGraph next = marked_cycle(spec.loops[i].l1, spec.loops[i].l2);
        GluedGraph gg = vertex_glue(layout.graph, next);
        for (auto& row : layout.loop_vertex)
            for (Vertex& v : row) v = gg.into_first[static_cast<size_t>(v)];
        layout.loop_vertex.emplace_back();
        for (Vertex j = 0; j < next.graph.vertex_count(); ++j)
            layout.loop_vertex.back().push_back(gg.into_second[static_cast<size_t>(j)]);
        layout.graph = gg.glued;
    }
    return layout;
}

} // namespace detail

inline MarkedGraph build_chain(const ChainSpec& spec) { return detail::chain_layout(spec).graph; }

// One chip per loop, xi_i steps clockwise from w_i.
inline Divisor break_divisor(const ChainSpec& spec) {
    detail::ChainLayout layout = detail::chain_layout(spec);
    Divisor d(layout.graph.graph.vertex_count());
    for (size_t i = 0; i < spec.loops.size(); ++i) {
        const auto& loop = spec.loops[i];
        long long L = loop.l1 + loop.l2;
        long long xi = spec.xi.empty() ? 0 : spec.xi[i];
        long long pos = floor_mod(loop.l1 + xi, L);
        d[layout.loop_vertex[i][static_cast<size_t>(pos)]] += 1;
    }
    return d;
}

// Per-loop transmission factor of the break chip: the chip xi steps past
// w_i is equivalent to w_i + j(w_i - v_i) exactly when l1 * j = xi mod L,
// giving the simple reflection at j in torsion k; off that lattice the
// factor is the identity.
inline std::vector<ZPerm> break_factors(const ChainSpec& spec) {
    std::vector<ZPerm> factors;
    for (size_t i = 0; i < spec.loops.size(); ++i) {
        const auto& loop = spec.loops[i];
        long long L = loop.l1 + loop.l2;
        long long xi = spec.xi.empty() ? 0 : spec.xi[i];
        long long g0 = std::gcd(loop.l1, L);
        if (xi % g0 != 0) {
            factors.push_back(ZPerm::identity());
            continue;
        }
        long long k = L / g0;
        long long j = floor_mod((xi / g0) * mod_inverse(loop.l1 / g0, k), k);
        factors.push_back(ZPerm::simple_reflection(k, j));
    }
    return factors;
}

inline ZPerm chain_break_product(const ChainSpec& spec) {
    std::vector<ZPerm> factors = break_factors(spec);
    ZPerm acc = factors.front();
    for (size_t i = 1; i < factors.size(); ++i) acc = demazure(acc, factors[i]);
    return acc;
}

// Closed form for genus 1: tau = iota_{d-1} sigma^k_{m-1} when D is
// equivalent to m w + (d - m) v for some m, and iota_{d-1} otherwise.
// Solved by equivalence tests over one torsion period; no rank scans.
inline ZPerm genus1_tau(const MarkedGraph& mg, const Divisor& d) {
    const Graph& g = mg.graph;
    if (g.genus() != 1) throw std::invalid_argument("genus1_tau: genus must be 1");
    const long long k = torsion_order(mg);
    if (k == 1) throw std::invalid_argument("genus1_tau: marked points must be inequivalent");
    const long long deg = d.degree();
    const Divisor uv = Divisor::unit(g.vertex_count(), mg.v);
    const Divisor uw = Divisor::unit(g.vertex_count(), mg.w);
    for (long long m = 0; m < k; ++m) {
        if (is_equivalent(g, d, m * uw + (deg - m) * uv))
            return compose(ZPerm::shift(deg - 1), ZPerm::simple_reflection(k, m - 1));
    }
    return ZPerm::shift(deg - 1);
}

} // namespace twomark
