// Copyright (c) twomark contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <sstream>
#include <vector>

#include "twomark/core.hpp"

namespace twomark {

using Vertex = int;

// Integer chip configuration on the vertices of a graph.
class Divisor {
public:
    Divisor() = default;
    explicit Divisor(int vertex_count) : coeff_(static_cast<size_t>(vertex_count), 0) {
        if (vertex_count < 0) throw std::invalid_argument("Divisor: negative vertex count");
    }
    Divisor(std::initializer_list<long long> c) : coeff_(c) {}

    static Divisor unit(int vertex_count, Vertex v) {
        Divisor d(vertex_count);
        d[v] += 1;
        return d;
    }

    int size() const { return static_cast<int>(coeff_.size()); }

    long long& operator[](Vertex v) { return coeff_.at(static_cast<size_t>(v)); }
    long long operator[](Vertex v) const { return coeff_.at(static_cast<size_t>(v)); }

    long long degree() const {
        long long s = 0;
        for (long long c : coeff_) s += c;
        return s;
    }

    bool effective() const {
        return std::all_of(coeff_.begin(), coeff_.end(), [](long long c) { return c >= 0; });
    }

    bool is_zero() const {
        return std::all_of(coeff_.begin(), coeff_.end(), [](long long c) { return c == 0; });
    }

    Divisor& operator+=(const Divisor& o) {
        check_size(o);
        for (size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += o.coeff_[i];
        return *this;
    }
    Divisor& operator-=(const Divisor& o) {
        check_size(o);
        for (size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= o.coeff_[i];
        return *this;
    }
    Divisor& operator*=(long long s) {
        for (auto& c : coeff_) c *= s;
        return *this;
    }
    friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
    friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
    friend Divisor operator*(long long s, Divisor d) { return d *= s; }

    friend bool operator==(const Divisor& a, const Divisor& b) { return a.coeff_ == b.coeff_; }
    friend bool operator<(const Divisor& a, const Divisor& b) { return a.coeff_ < b.coeff_; }

    const std::vector<long long>& coeffs() const { return coeff_; }

private:
    void check_size(const Divisor& o) const {
        if (coeff_.size() != o.coeff_.size())
            throw std::invalid_argument("Divisor: size mismatch");
    }
    std::vector<long long> coeff_;
};

struct Edge {
    Vertex u;
    Vertex v;
    long long mult;
};

namespace detail {
// Class-level cache of Baker-Norine ranks, keyed by q0-reduced divisor.
// Shared by all copies of a Graph; must stay semantically invisible.
struct RankMemo {
    std::mutex mu;
    std::map<std::vector<long long>, long long> rank;
};
} // namespace detail

// Finite connected multigraph. No loop edges; parallel edges carried as
// multiplicities. Vertices are dense ids 0..n-1. Immutable after
// construction and safe to share across threads.
class Graph {
public:
    Graph(int vertex_count, const std::vector<Edge>& edges)
        : n_(vertex_count), memo_(std::make_shared<detail::RankMemo>()) {
        if (n_ <= 0) throw std::invalid_argument("Graph: vertex count must be positive");
        std::map<std::pair<Vertex, Vertex>, long long> acc;
        for (const Edge& e : edges) {
            if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
                throw std::invalid_argument("Graph: edge endpoint out of range");
            if (e.u == e.v) throw std::invalid_argument("Graph: loop edges are not allowed");
            if (e.mult <= 0) throw std::invalid_argument("Graph: edge multiplicity must be positive");
            acc[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.mult;
        }
        adj_.assign(static_cast<size_t>(n_), std::vector<long long>(static_cast<size_t>(n_), 0));
        for (const auto& [uv, m] : acc) {
            edges_.push_back({uv.first, uv.second, m});
            adj_[static_cast<size_t>(uv.first)][static_cast<size_t>(uv.second)] = m;
            adj_[static_cast<size_t>(uv.second)][static_cast<size_t>(uv.first)] = m;
        }
        valence_.assign(static_cast<size_t>(n_), 0);
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v = 0; v < n_; ++v) valence_[static_cast<size_t>(u)] += adj_[static_cast<size_t>(u)][static_cast<size_t>(v)];
        neigh_.assign(static_cast<size_t>(n_), {});
        for (const Edge& e : edges_) {
            neigh_[static_cast<size_t>(e.u)].push_back({e.v, e.mult});
            neigh_[static_cast<size_t>(e.v)].push_back({e.u, e.mult});
        }
        if (!connected()) throw std::invalid_argument("Graph: must be connected");
    }

    int vertex_count() const { return n_; }

    long long edge_count() const {
        long long m = 0;
        for (const Edge& e : edges_) m += e.mult;
        return m;
    }

    long long genus() const { return edge_count() - n_ + 1; }

    long long valence(Vertex v) const { return valence_.at(static_cast<size_t>(v)); }

    long long multiplicity(Vertex u, Vertex v) const {
        return adj_.at(static_cast<size_t>(u)).at(static_cast<size_t>(v));
    }

    const std::vector<Edge>& edges() const { return edges_; }

    // (neighbor, multiplicity) pairs of v
    const std::vector<std::pair<Vertex, long long>>& neighbors(Vertex v) const {
        return neigh_.at(static_cast<size_t>(v));
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
        for (size_t i = 0; i < a.edges_.size(); ++i) {
            const Edge& x = a.edges_[i];
            const Edge& y = b.edges_[i];
            if (x.u != y.u || x.v != y.v || x.mult != y.mult) return false;
        }
        return true;
    }

    // Stable textual identity, used to key cross-graph registries.
    std::string fingerprint() const {
        std::ostringstream os;
        os << n_;
        for (const Edge& e : edges_) os << ';' << e.u << ',' << e.v << ',' << e.mult;
        return os.str();
    }

    detail::RankMemo& rank_memo() const { return *memo_; }

private:
    bool connected() const {
        std::vector<char> seen(static_cast<size_t>(n_), 0);
        std::queue<Vertex> bfs;
        bfs.push(0);
        seen[0] = 1;
        int reached = 1;
        while (!bfs.empty()) {
            Vertex u = bfs.front();
            bfs.pop();
            for (const auto& [v, m] : neigh_[static_cast<size_t>(u)]) {
                (void)m;
                if (!seen[static_cast<size_t>(v)]) {
                    seen[static_cast<size_t>(v)] = 1;
                    ++reached;
                    bfs.push(v);
                }
            }
        }
        return reached == n_;
    }

    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<long long>> adj_;
    std::vector<long long> valence_;
    std::vector<std::vector<std::pair<Vertex, long long>>> neigh_;
    std::shared_ptr<detail::RankMemo> memo_;
};

// A graph with two distinct marked vertices.
struct MarkedGraph {
    MarkedGraph(Graph g, Vertex v_, Vertex w_) : graph(std::move(g)), v(v_), w(w_) {
        if (v < 0 || v >= graph.vertex_count() || w < 0 || w >= graph.vertex_count())
            throw std::invalid_argument("MarkedGraph: mark out of range");
        if (v == w) throw std::invalid_argument("MarkedGraph: marks must be distinct");
    }
    Graph graph;
    Vertex v;
    Vertex w;
};

// K(u) = valence(u) - 2; its degree is 2g - 2.
inline Divisor canonical_divisor(const Graph& g) {
    Divisor k(g.vertex_count());
    for (Vertex u = 0; u < g.vertex_count(); ++u) k[u] = g.valence(u) - 2;
    return k;
}

// Kirchhoff count of spanning trees, equal to the order of the Jacobian.
// Fraction-free elimination on the reduced Laplacian; intermediate minors
// are forest counts and stay well inside __int128 at the scales handled.
inline long long spanning_tree_count(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 1) return 1;
    const int m = n - 1;
    std::vector<std::vector<__int128>> a(static_cast<size_t>(m), std::vector<__int128>(static_cast<size_t>(m), 0));
    for (int i = 0; i < m; ++i) {
        a[static_cast<size_t>(i)][static_cast<size_t>(i)] = g.valence(i + 1);
        for (int j = 0; j < m; ++j)
            if (i != j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = -g.multiplicity(i + 1, j + 1);
    }
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < m; ++k) {
        if (a[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
            int pivot = -1;
            for (int i = k + 1; i < m; ++i)
                if (a[static_cast<size_t>(i)][static_cast<size_t>(k)] != 0) { pivot = i; break; }
            if (pivot < 0) return 0;
            std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(pivot)]);
            sign = -sign;
        }
        for (int i = k + 1; i < m; ++i)
            for (int j = k + 1; j < m; ++j)
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    (a[static_cast<size_t>(i)][static_cast<size_t>(j)] * a[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                     a[static_cast<size_t>(i)][static_cast<size_t>(k)] * a[static_cast<size_t>(k)][static_cast<size_t>(j)]) /
                    prev;
        prev = a[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    __int128 det = sign * a[static_cast<size_t>(m - 1)][static_cast<size_t>(m - 1)];
    if (det < 0 || det > __int128(9223372036854775807LL))
        throw std::overflow_error("spanning_tree_count: out of range");
    return static_cast<long long>(det);
}

// Replace one copy of edge (u,v) by a path of `parts` unit edges through
// fresh vertices. Genus is unchanged; parts == 1 reproduces the graph.
inline Graph subdivide(const Graph& g, Vertex u, Vertex v, long long parts) {
    if (parts < 1) throw std::invalid_argument("subdivide: parts must be >= 1");
    if (u < 0 || u >= g.vertex_count() || v < 0 || v >= g.vertex_count() || g.multiplicity(u, v) == 0)
        throw std::invalid_argument("subdivide: unknown edge");
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        if ((e.u == std::min(u, v)) && (e.v == std::max(u, v))) {
            if (e.mult > 1) edges.push_back({e.u, e.v, e.mult - 1});
        } else {
            edges.push_back(e);
        }
    }
    const int n = g.vertex_count();
    if (parts == 1) {
        edges.push_back({u, v, 1});
        return Graph(n, edges);
    }
    Vertex prev = u;
    for (long long i = 0; i + 1 < parts; ++i) {
        Vertex fresh = n + static_cast<Vertex>(i);
        edges.push_back({prev, fresh, 1});
        prev = fresh;
    }
    edges.push_back({prev, v, 1});
    return Graph(n + static_cast<int>(parts) - 1, edges);
}

} // namespace twomark
