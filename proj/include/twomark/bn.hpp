// Copyright (c) twomark contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "twomark/transmission.hpp"

namespace twomark {

// Vanishing sequences of D at the marked points: a_i is the largest a with
// rank(D - a v) >= rank(D) - i, and likewise at w. rho is the adjusted
// count g - (r+1)(g-d+r) - sum(a_i - i) - sum(b_i - i).
struct VanishingData {
    long long r = -1;
    std::vector<long long> at_v;
    std::vector<long long> at_w;
    long long rho = 0;
};

inline long long vanishing_bound(long long genus, long long degree, long long r,
                                 const std::vector<long long>& at_v,
                                 const std::vector<long long>& at_w) {
    long long bound = (r + 1) * (genus - degree + r);
    for (size_t i = 0; i < at_v.size(); ++i) bound += at_v[i] - static_cast<long long>(i);
    for (size_t i = 0; i < at_w.size(); ++i) bound += at_w[i] - static_cast<long long>(i);
    return bound;
}

inline VanishingData vanishing_data(const MarkedGraph& mg, const Divisor& d) {
    const Graph& g = mg.graph;
    VanishingData out;
    out.r = rank(g, d);
    if (out.r < 0) throw std::invalid_argument("vanishing_data: divisor has rank -1");
    auto sequence = [&](Vertex u) {
        const Divisor step = Divisor::unit(g.vertex_count(), u);
        std::vector<long long> seq;
        long long a = 0;
        for (long long i = 0; i <= out.r; ++i) {
            while (rank(g, d - (a + 1) * step) >= out.r - i) ++a;
            seq.push_back(a);
        }
        return seq;
    };
    out.at_v = sequence(mg.v);
    out.at_w = sequence(mg.w);
    out.rho = g.genus() - vanishing_bound(g.genus(), d.degree(), out.r, out.at_v, out.at_w);
    return out;
}

// The inversion lower bound and the set identities behind it. With
// T = {(n, tau(n)) : n >= 0, tau(n) <= 0} matched to (b_i, -a_sigma(i)),
// the sets
//     S   = {n < 0 : tau(n) > 0}
//     A_i = {n < 0 : 0 >= tau(n) > tau(b_i)}
//     B_i = {0 <= n < b_i : tau(n) > 0}
// are pairwise disjoint, consist of inversions against b_i, and have sizes
// g - d + r, a_sigma(i) - sigma(i) and b_i - i.
struct InvBoundReport {
    long long r = -1;
    std::vector<long long> at_v;
    std::vector<long long> at_w;
    std::vector<long long> sigma;
    long long s_size = 0;
    std::vector<long long> a_set_sizes;
    std::vector<long long> b_set_sizes;
    InvCount inv0;
    long long bound = 0;
    bool sequences_ok = true;
    bool sizes_ok = true;
    bool disjoint_ok = true;
    bool inversions_ok = true;
    bool bound_ok = true;

    bool ok() const { return sequences_ok && sizes_ok && disjoint_ok && inversions_ok && bound_ok; }
};

inline InvBoundReport check_inv_bound(const MarkedGraph& mg, const Divisor& d) {
    const Graph& g = mg.graph;
    SubmodularityReport sub = transmission_permutation(mg, d);
    if (!sub.submodular) throw std::invalid_argument("check_inv_bound: divisor is not submodular");
    const ZPerm& tau = *sub.tau;
    const long long genus = g.genus();
    const long long deg = d.degree();
    const long long disp = tau.displacement();
    const long long dev = tau.deviation();

    InvBoundReport rep;
    rep.r = rank(g, d);
    if (rep.r >= 0) {
        VanishingData vd = vanishing_data(mg, d);
        rep.at_v = vd.at_v;
        rep.at_w = vd.at_w;
    }

    // T sorted by first coordinate; tau(n) <= 0 forces n <= dev - disp
    std::vector<std::pair<long long, long long>> t_set;
    for (long long n = 0; n <= dev - disp; ++n)
        if (tau(n) <= 0) t_set.emplace_back(n, tau(n));
    if (static_cast<long long>(t_set.size()) != rep.r + 1) rep.sequences_ok = false;

    // the vanishing orders read off tau: b_i are the first coordinates of T,
    // the -a_j its second coordinates
    if (rep.sequences_ok && rep.r >= 0) {
        for (size_t i = 0; i < t_set.size(); ++i) {
            if (t_set[i].first != rep.at_w[i]) rep.sequences_ok = false;
        }
        std::vector<char> used(t_set.size(), 0);
        for (size_t i = 0; i < t_set.size(); ++i) {
            long long want = -t_set[i].second;
            auto it = std::find(rep.at_v.begin(), rep.at_v.end(), want);
            if (it == rep.at_v.end()) {
                rep.sequences_ok = false;
                break;
            }
            size_t j = static_cast<size_t>(it - rep.at_v.begin());
            if (used[j]) {
                rep.sequences_ok = false;
                break;
            }
            used[j] = 1;
            rep.sigma.push_back(static_cast<long long>(j));
        }
    }

    std::vector<long long> s_set;
    for (long long n = -disp - dev - 1; n < 0; ++n)
        if (tau(n) > 0) s_set.push_back(n);
    rep.s_size = static_cast<long long>(s_set.size());
    if (rep.s_size != genus - deg + rep.r) rep.sizes_ok = false;

    for (size_t i = 0; i < t_set.size(); ++i) {
        const long long bi = t_set[i].first;
        const long long tbi = t_set[i].second;
        std::vector<long long> a_set;
        for (long long n = tbi - disp - dev - 1; n < 0; ++n)
            if (tau(n) <= 0 && tau(n) > tbi) a_set.push_back(n);
        std::vector<long long> b_set;
        for (long long n = 0; n < bi; ++n)
            if (tau(n) > 0) b_set.push_back(n);
        rep.a_set_sizes.push_back(static_cast<long long>(a_set.size()));
        rep.b_set_sizes.push_back(static_cast<long long>(b_set.size()));
        if (rep.sequences_ok && rep.r >= 0) {
            size_t sj = static_cast<size_t>(rep.sigma[i]);
            if (static_cast<long long>(a_set.size()) != rep.at_v[sj] - static_cast<long long>(sj))
                rep.sizes_ok = false;
            if (static_cast<long long>(b_set.size()) != rep.at_w[i] - static_cast<long long>(i))
                rep.sizes_ok = false;
        }
        // pairwise disjoint and all inversions against b_i
        std::set<long long> seen;
        auto absorb = [&](const std::vector<long long>& xs) {
            for (long long n : xs) {
                if (!seen.insert(n).second) rep.disjoint_ok = false;
                if (!(n < bi && tau(n) > tbi)) rep.inversions_ok = false;
            }
        };
        absorb(s_set);
        absorb(a_set);
        absorb(b_set);
    }

    rep.inv0 = inv(tau, 0);
    rep.bound = rep.r >= 0 ? vanishing_bound(genus, deg, rep.r, rep.at_v, rep.at_w) : 0;
    rep.bound_ok = rep.inv0.geq(rep.bound);
    return rep;
}

// Nondecreasing k-tuple describing the full twist profile against F = kv:
// rank(D + mF) = x_m(mu) - 1 for all m, with x_m(mu) = sum max(0, mu_i+m+1).
struct SplittingType {
    std::vector<long long> mu;
    long long degree = 0; // d(mu) = g - 1 + sum(mu_i + 1)
    long long codim = 0;  // |mu| = sum_{i<j} max(0, mu_j - mu_i - 1)
};

struct SplittingResult {
    bool classifiable = false;
    SplittingType type;
    long long witness_m = 0; // first m whose rank difference decreases
    std::map<long long, long long> x; // x_m = rank(D + m k v) + 1 over the window
    long long m_lo = 0;
    long long m_hi = 0;
};

// Degree forcing pins x_m outside [m_lo, m_hi]: x_m = 0 once deg + mk < 0
// and x_m = deg + mk - g + 1 once deg + mk > 2g - 2, so the difference
// profile runs 0 to k inside the window and mu is read off its thresholds.
inline SplittingResult splitting_type(const MarkedGraph& mg, const Divisor& d) {
    const Graph& g = mg.graph;
    const long long k = torsion_order(mg);
    if (k < 2) throw std::invalid_argument("splitting_type: need torsion order >= 2");
    const long long genus = g.genus();
    const long long deg = d.degree();
    const Divisor uv = Divisor::unit(g.vertex_count(), mg.v);

    SplittingResult res;
    res.m_lo = -floor_div(deg, k) - 1;
    res.m_hi = floor_div(2 * genus - 2 - deg, k) + 1;
    for (long long m = res.m_lo - 1; m <= res.m_hi + 1; ++m)
        res.x[m] = rank(g, d + (m * k) * uv) + 1;
    if (res.x[res.m_lo] != 0 || res.x[res.m_lo - 1] != 0)
        throw std::logic_error("splitting_type: lower degree forcing failed");
    if (res.x[res.m_hi + 1] != deg + (res.m_hi + 1) * k - genus + 1 ||
        res.x[res.m_hi + 1] - res.x[res.m_hi] != k)
        throw std::logic_error("splitting_type: upper degree forcing failed");

    long long prev_diff = 0;
    for (long long m = res.m_lo; m <= res.m_hi + 1; ++m) {
        long long diff = res.x[m] - res.x[m - 1];
        if (diff < prev_diff) {
            res.classifiable = false;
            res.witness_m = m;
            return res;
        }
        prev_diff = diff;
    }
    res.classifiable = true;
    for (long long i = 1; i <= k; ++i) {
        long long m = res.m_lo;
        while (res.x[m] - res.x[m - 1] < k - i + 1) ++m;
        res.type.mu.push_back(-m);
    }
    long long mu_sum = 0;
    for (long long v : res.type.mu) mu_sum += v;
    res.type.degree = genus - 1 + mu_sum + k;
    if (res.type.degree != deg)
        throw std::logic_error("splitting_type: degree of mu disagrees with deg D");
    res.type.codim = 0;
    for (size_t i = 0; i < res.type.mu.size(); ++i)
        for (size_t j = i + 1; j < res.type.mu.size(); ++j)
            res.type.codim += std::max<long long>(0, res.type.mu[j] - res.type.mu[i] - 1);
    return res;
}

struct SplittingClassCheck {
    long long degree = 0;
    Divisor representative;
    bool submodular = false;
    bool classifiable = false;
    SplittingType type;
    InvCount inv_k;
    bool codim_le_inv = false;
    bool inv_le_genus = false;
    bool sm_sizes_ok = false;      // |S_m| = (k - x_{m+1} + x_m)(x_m - x_{m-1}) and they sum to |mu|
    bool sm_inversions_ok = false; // every S_m pair is an inversion of tau
    bool coupling_ok = false;      // x_m - x_{m-1} = #{0 <= n < k : tau(n) <= mk}

    bool ok() const {
        return submodular && classifiable && codim_le_inv && inv_le_genus && sm_sizes_ok &&
               sm_inversions_ok && coupling_ok;
    }
};

struct SplittingGeneralityReport {
    long long k = 0;
    long long genus = 0;
    bool kv_equiv_kw = false;
    long long rank_kv = -1;
    bool pass = false;
    std::vector<SplittingClassCheck> checks;
};

// Sweeps Picard classes of the given degrees and verifies that each one is
// classifiable with codim(mu) <= inv_k(tau) <= g, that the inversion sets
//     S_m = {(i, j) : i < 0 <= j < k,
//            floor((tau(j)-1)/k) < m = floor((tau(i)-1)/k)}
// are inversions with the stated product cardinalities summing to |mu|,
// and that kv ~ kw with rank(kv) >= 1.
inline SplittingGeneralityReport check_splitting_generality(const MarkedGraph& mg,
                                                            std::vector<long long> degrees = {},
                                                            long long class_cap = 10000) {
    const Graph& g = mg.graph;
    SplittingGeneralityReport rep;
    rep.k = torsion_order(mg);
    if (rep.k < 2) throw std::invalid_argument("check_splitting_generality: need torsion >= 2");
    rep.genus = g.genus();
    if (degrees.empty()) degrees = {rep.genus};
    const Divisor uv = Divisor::unit(g.vertex_count(), mg.v);
    const Divisor uw = Divisor::unit(g.vertex_count(), mg.w);
    rep.kv_equiv_kw = is_equivalent(g, rep.k * uv, rep.k * uw);
    rep.rank_kv = rank(g, rep.k * uv);
    rep.pass = rep.kv_equiv_kw && rep.rank_kv >= 1;

    for (long long deg : degrees) {
        for (const Divisor& d : enumerate_picard(g, deg, mg.w, class_cap)) {
            SplittingClassCheck cc;
            cc.degree = deg;
            cc.representative = d;
            SubmodularityReport sub = transmission_permutation(mg, d);
            cc.submodular = sub.submodular;
            if (sub.submodular) {
                const ZPerm& tau = *sub.tau;
                SplittingResult sr = splitting_type(mg, d);
                cc.classifiable = sr.classifiable;
                if (sr.classifiable) {
                    cc.type = sr.type;
                    cc.inv_k = inv(tau, rep.k);
                    cc.codim_le_inv = !cc.inv_k.infinite && sr.type.codim <= cc.inv_k.value;
                    cc.inv_le_genus = cc.inv_k.leq(rep.genus);

                    const long long disp = tau.displacement();
                    const long long dev = tau.deviation();
                    long long total = 0;
                    cc.sm_sizes_ok = true;
                    cc.sm_inversions_ok = true;
                    cc.coupling_ok = true;
                    for (long long m = sr.m_lo; m <= sr.m_hi; ++m) {
                        long long crossing = 0;
                        for (long long n = 0; n < rep.k; ++n)
                            if (tau(n) <= m * rep.k) ++crossing;
                        if (crossing != sr.x.at(m) - sr.x.at(m - 1)) cc.coupling_ok = false;

                        long long count = 0;
                        // tau(i) in (mk, (m+1)k] forces i > mk - disp - dev
                        for (long long i = m * rep.k - disp - dev; i < 0; ++i) {
                            if (floor_div(tau(i) - 1, rep.k) != m) continue;
                            for (long long j = 0; j < rep.k; ++j) {
                                if (floor_div(tau(j) - 1, rep.k) < m) {
                                    ++count;
                                    if (!(i < j && tau(i) > tau(j))) cc.sm_inversions_ok = false;
                                }
                            }
                        }
                        long long expected = (rep.k - sr.x.at(m + 1) + sr.x.at(m)) *
                                             (sr.x.at(m) - sr.x.at(m - 1));
                        if (count != expected) cc.sm_sizes_ok = false;
                        total += count;
                    }
                    if (total != sr.type.codim) cc.sm_sizes_ok = false;
                }
            }
            if (!cc.ok()) rep.pass = false;
            rep.checks.push_back(std::move(cc));
        }
    }
    return rep;
}

} // namespace twomark
