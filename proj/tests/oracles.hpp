// Copyright (c) twomark contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference implementations. These stay deliberately literal and
// independent of the library's algorithmic shortcuts so they can serve as
// oracles.
#pragma once

#include <functional>

#include "twomark/chipfire.hpp"
#include "twomark/zperm.hpp"

namespace oracles {

using twomark::Divisor;
using twomark::Graph;
using twomark::Vertex;
using twomark::ZPerm;

// Spanning trees by exhaustive choice of n-1 edge copies.
inline long long spanning_trees_brute(const Graph& g) {
    std::vector<std::pair<Vertex, Vertex>> copies;
    for (const auto& e : g.edges())
        for (long long i = 0; i < e.mult; ++i) copies.push_back({e.u, e.v});
    const int n = g.vertex_count();
    const int need = n - 1;
    long long count = 0;
    std::vector<int> pick;
    std::function<void(int)> choose = [&](int from) {
        if (static_cast<int>(pick.size()) == need) {
            std::vector<int> parent(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
            std::function<int(int)> find = [&](int x) {
                while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)];
                return x;
            };
            for (int idx : pick) {
                int a = find(copies[static_cast<size_t>(idx)].first);
                int b = find(copies[static_cast<size_t>(idx)].second);
                if (a == b) return;
                parent[static_cast<size_t>(a)] = b;
            }
            ++count;
            return;
        }
        for (int i = from; i < static_cast<int>(copies.size()); ++i) {
            pick.push_back(i);
            choose(i + 1);
            pick.pop_back();
        }
    };
    choose(0);
    return count;
}

// Every effective divisor of the given degree, as multisets over vertices.
inline void for_each_effective(int n, long long degree,
                               const std::function<void(const Divisor&)>& f) {
    Divisor d(n);
    std::function<void(int, long long)> place = [&](int v, long long left) {
        if (v == n - 1) {
            d[v] = left;
            f(d);
            return;
        }
        for (long long c = 0; c <= left; ++c) {
            d[v] = c;
            place(v + 1, left - c);
        }
    };
    if (degree < 0) return;
    place(0, degree);
}

// Literal descending-witness Baker-Norine rank: check r = deg(D) downward,
// where the degree-r test quantifies over every effective E of degree r.
inline long long rank_by_definition(const Graph& g, const Divisor& d) {
    if (d.degree() < 0) return -1;
    for (long long r = d.degree(); r >= 0; --r) {
        bool all_ok = true;
        for_each_effective(g.vertex_count(), r, [&](const Divisor& e) {
            if (!all_ok) return;
            if (twomark::reduce(g, d - e, 0)[0] < 0) all_ok = false;
        });
        if (all_ok) return r;
    }
    return -1;
}

// Reachability check for reduce: breadth-first closure of single-set firing
// moves inside a coefficient box. Returns every visited divisor.
inline std::vector<Divisor> firing_closure(const Graph& g, const Divisor& start, long long lo,
                                           long long hi, size_t cap = 2000000) {
    std::set<std::vector<long long>> seen;
    std::vector<Divisor> out;
    std::vector<Divisor> frontier{start};
    seen.insert(start.coeffs());
    const int n = g.vertex_count();
    while (!frontier.empty()) {
        if (seen.size() > cap) throw std::runtime_error("firing_closure: cap exceeded");
        std::vector<Divisor> next;
        for (const Divisor& d : frontier) {
            out.push_back(d);
            for (Vertex v = 0; v < n; ++v) {
                for (int dir = 0; dir < 2; ++dir) {
                    Divisor e = d;
                    long long sign = dir == 0 ? 1 : -1;
                    e[v] -= sign * g.valence(v);
                    for (const auto& [u, m] : g.neighbors(v)) e[u] += sign * m;
                    bool in_box = true;
                    for (Vertex x = 0; x < n; ++x)
                        if (e[x] < lo || e[x] > hi) in_box = false;
                    if (in_box && seen.insert(e.coeffs()).second) next.push_back(e);
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

// Plain inversion count of tau restricted to pairs (u, v) in the window.
inline long long inversions_in_window(const ZPerm& p, long long lo, long long hi) {
    long long count = 0;
    for (long long u = lo; u <= hi; ++u)
        for (long long v = u + 1; v <= hi; ++v)
            if (p(u) > p(v)) ++count;
    return count;
}

// Every k-periodic permutation whose displacement away from the diagonal
// stays within max_dev.
inline std::vector<ZPerm> all_periodic(long long k, long long max_dev) {
    std::vector<ZPerm> out;
    std::vector<long long> vals(static_cast<size_t>(k));
    std::function<void(long long)> fill = [&](long long i) {
        if (i == k) {
            try {
                out.push_back(ZPerm::periodic(k, vals));
            } catch (const std::invalid_argument&) {
            }
            return;
        }
        for (long long v = i - max_dev; v <= i + max_dev; ++v) {
            vals[static_cast<size_t>(i)] = v;
            fill(i + 1);
        }
    };
    fill(0);
    return out;
}

// Every permutation of the block [0, size) as a shift-finite ZPerm.
inline std::vector<ZPerm> all_block_permutations(long long size) {
    std::vector<long long> perm(static_cast<size_t>(size));
    for (long long i = 0; i < size; ++i) perm[static_cast<size_t>(i)] = i;
    std::vector<ZPerm> out;
    do {
        std::map<long long, long long> exc;
        for (long long i = 0; i < size; ++i)
            if (perm[static_cast<size_t>(i)] != i) exc[i] = perm[static_cast<size_t>(i)];
        out.push_back(ZPerm::shift_finite(0, std::move(exc)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace oracles
