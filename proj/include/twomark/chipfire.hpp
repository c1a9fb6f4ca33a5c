// Copyright (c) twomark contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <climits>
#include <queue>

#include "twomark/graph.hpp"

namespace twomark {

// Burning test from q on a configuration that is nonnegative off q.
// Returns true iff the fire consumes the whole graph, i.e. d is q-reduced.
// When it does not, *unburnt receives the surviving set; firing that set
// keeps the configuration nonnegative off q.
inline bool dhar_burns_all(const Graph& g, const Divisor& d, Vertex q,
                           std::vector<char>* unburnt = nullptr) {
    const int n = g.vertex_count();
    std::vector<char> burnt(static_cast<size_t>(n), 0);
    burnt[static_cast<size_t>(q)] = 1;
    int burnt_count = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (Vertex v = 0; v < n; ++v) {
            if (burnt[static_cast<size_t>(v)]) continue;
            long long incoming = 0;
            for (const auto& [u, m] : g.neighbors(v))
                if (burnt[static_cast<size_t>(u)]) incoming += m;
            if (d[v] < incoming) {
                burnt[static_cast<size_t>(v)] = 1;
                ++burnt_count;
                changed = true;
            }
        }
    }
    if (unburnt) {
        unburnt->assign(static_cast<size_t>(n), 0);
        for (Vertex v = 0; v < n; ++v) (*unburnt)[static_cast<size_t>(v)] = burnt[static_cast<size_t>(v)] ? 0 : 1;
    }
    return burnt_count == n;
}

inline bool is_q_reduced(const Graph& g, const Divisor& d, Vertex q) {
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (v != q && d[v] < 0) return false;
    return dhar_burns_all(g, d, q);
}

// The unique q-reduced divisor linearly equivalent to d.
//
// Debt relief first: with BFS balls B_i = {dist <= i} around q, firing
// B_{i-1} raises every distance-i vertex (each has an edge into B_{i-1})
// and leaves strictly farther layers untouched, so clearing layers from
// the outside in terminates. Then the burning loop superstabilizes.
inline Divisor reduce(const Graph& g, Divisor d, Vertex q) {
    const int n = g.vertex_count();
    if (d.size() != n) throw std::invalid_argument("reduce: divisor size mismatch");

    std::vector<int> dist(static_cast<size_t>(n), -1);
    std::queue<Vertex> bfs;
    bfs.push(q);
    dist[static_cast<size_t>(q)] = 0;
    int max_dist = 0;
    while (!bfs.empty()) {
        Vertex u = bfs.front();
        bfs.pop();
        for (const auto& [v, m] : g.neighbors(u)) {
            (void)m;
            if (dist[static_cast<size_t>(v)] < 0) {
                dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(u)] + 1;
                max_dist = std::max(max_dist, dist[static_cast<size_t>(v)]);
                bfs.push(v);
            }
        }
    }

    auto fire_ball = [&](int radius) {
        // boundary edges run between layers radius and radius+1
        for (const Edge& e : g.edges()) {
            int du = dist[static_cast<size_t>(e.u)];
            int dv = dist[static_cast<size_t>(e.v)];
            if (du <= radius && dv > radius) {
                d[e.u] -= e.mult;
                d[e.v] += e.mult;
            } else if (dv <= radius && du > radius) {
                d[e.v] -= e.mult;
                d[e.u] += e.mult;
            }
        }
    };

    for (int layer = max_dist; layer >= 1; --layer) {
        while (true) {
            bool negative = false;
            for (Vertex v = 0; v < n; ++v)
                if (dist[static_cast<size_t>(v)] == layer && d[v] < 0) { negative = true; break; }
            if (!negative) break;
            fire_ball(layer - 1);
        }
    }

    std::vector<char> unburnt;
    long long guard = 0;
    while (!dhar_burns_all(g, d, q, &unburnt)) {
        for (const Edge& e : g.edges()) {
            bool iu = unburnt[static_cast<size_t>(e.u)] != 0;
            bool iv = unburnt[static_cast<size_t>(e.v)] != 0;
            if (iu && !iv) {
                d[e.u] -= e.mult;
                d[e.v] += e.mult;
            } else if (iv && !iu) {
                d[e.v] -= e.mult;
                d[e.u] += e.mult;
            }
        }
        if (++guard > 100000000LL) throw std::logic_error("reduce: superstabilization did not settle");
    }
    return d;
}

// d1 ~ d2 iff the difference is principal; tested via q0-reduced forms.
inline bool is_equivalent(const Graph& g, const Divisor& d1, const Divisor& d2) {
    if (d1.degree() != d2.degree()) return false;
    return reduce(g, d1, 0) == reduce(g, d2, 0);
}

namespace rank_audit {

struct Entry {
    Graph graph;
    Divisor reduced;
    long long value;
};

namespace detail {
struct State {
    std::mutex mu;
    bool enabled = false;
    std::map<std::pair<std::string, std::vector<long long>>, char> seen;
    std::vector<Entry> entries;
};
inline State& state() {
    static State s;
    return s;
}
} // namespace detail

inline void set_enabled(bool on) {
    auto& s = detail::state();
    std::lock_guard<std::mutex> lock(s.mu);
    s.enabled = on;
}

inline void clear() {
    auto& s = detail::state();
    std::lock_guard<std::mutex> lock(s.mu);
    s.seen.clear();
    s.entries.clear();
}

inline size_t size() {
    auto& s = detail::state();
    std::lock_guard<std::mutex> lock(s.mu);
    return s.entries.size();
}

// Entries are append-only, so (from, to) half-open slices are stable.
inline std::vector<Entry> slice(size_t from) {
    auto& s = detail::state();
    std::lock_guard<std::mutex> lock(s.mu);
    return std::vector<Entry>(s.entries.begin() + static_cast<std::ptrdiff_t>(from), s.entries.end());
}

inline void record(const Graph& g, const Divisor& reduced, long long value) {
    auto& s = detail::state();
    std::lock_guard<std::mutex> lock(s.mu);
    if (!s.enabled) return;
    auto key = std::make_pair(g.fingerprint(), reduced.coeffs());
    if (s.seen.emplace(std::move(key), 1).second) s.entries.push_back({g, reduced, value});
}

} // namespace rank_audit

// Baker-Norine rank. A class has rank >= 0 iff its q-reduced form is
// effective, and rank(D) >= r+1 iff rank(D - u) >= r for every vertex u,
// which factors the descending witness search through one chip at a time.
// Results are memoized per reduced class (graph-local, synchronized).
inline long long rank(const Graph& g, const Divisor& d) {
    Divisor r = reduce(g, d, 0);
    auto& memo = g.rank_memo();
    {
        std::lock_guard<std::mutex> lock(memo.mu);
        auto it = memo.rank.find(r.coeffs());
        if (it != memo.rank.end()) return it->second;
    }
    long long result;
    if (r[0] < 0) {
        result = -1;
    } else {
        result = LLONG_MAX;
        for (Vertex v = 0; v < g.vertex_count() && result > -1; ++v) {
            Divisor child = r;
            child[v] -= 1;
            result = std::min(result, rank(g, child));
        }
        result += 1;
    }
    {
        std::lock_guard<std::mutex> lock(memo.mu);
        memo.rank.emplace(r.coeffs(), result);
    }
    rank_audit::record(g, r, result);
    return result;
}

// Smallest n >= 1 with n(v - w) principal. Finite on finite graphs; the
// order divides the number of spanning trees.
inline long long torsion_order(const MarkedGraph& mg) {
    const Graph& g = mg.graph;
    const long long jac = spanning_tree_count(g);
    Divisor step = Divisor::unit(g.vertex_count(), mg.v) - Divisor::unit(g.vertex_count(), mg.w);
    Divisor acc(g.vertex_count());
    const Divisor zero(g.vertex_count());
    for (long long n = 1; n <= jac; ++n) {
        acc += step;
        if (reduce(g, acc, 0) == zero) return n;
    }
    throw std::logic_error("torsion_order: no order within the Jacobian bound");
}

// One q-reduced representative per degree-`degree` class. q-reduced
// divisors satisfy 0 <= D(u) < valence(u) off q, so an odometer over that
// box followed by a burning test enumerates Pic exactly.
inline std::vector<Divisor> enumerate_picard(const Graph& g, long long degree, Vertex q,
                                             long long class_cap = 10000) {
    const int n = g.vertex_count();
    const long long classes = spanning_tree_count(g);
    if (classes > class_cap)
        throw resource_limit_error("enumerate_picard: " + std::to_string(classes) +
                                   " classes exceed cap " + std::to_string(class_cap));
    long long box = 1;
    for (Vertex v = 0; v < n; ++v) {
        if (v == q) continue;
        box *= g.valence(v);
        if (box > 50000000LL)
            throw resource_limit_error("enumerate_picard: candidate box too large");
    }
    std::vector<Divisor> reps;
    Divisor d(n);
    std::vector<Vertex> free_vertices;
    for (Vertex v = 0; v < n; ++v)
        if (v != q) free_vertices.push_back(v);
    std::vector<long long> c(free_vertices.size(), 0);
    while (true) {
        long long sum = 0;
        for (size_t i = 0; i < free_vertices.size(); ++i) {
            d[free_vertices[i]] = c[i];
            sum += c[i];
        }
        d[q] = degree - sum;
        if (dhar_burns_all(g, d, q)) reps.push_back(d);
        size_t pos = 0;
        while (pos < c.size()) {
            if (++c[pos] < g.valence(free_vertices[pos])) break;
            c[pos] = 0;
            ++pos;
        }
        if (pos == c.size()) break;
    }
    if (static_cast<long long>(reps.size()) != classes)
        throw std::logic_error("enumerate_picard: representative count disagrees with tree count");
    return reps;
}

} // namespace twomark
