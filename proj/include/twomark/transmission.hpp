// Copyright (c) twomark contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "twomark/chipfire.hpp"
#include "twomark/parallel.hpp"
#include "twomark/sfunction.hpp"

namespace twomark {

// r(D) - r(D - v) - r(D - w) + r(D - v - w); always in {-1, 0, 1}.
inline long long delta(const MarkedGraph& mg, const Divisor& d) {
    const Graph& g = mg.graph;
    Divisor uv = Divisor::unit(g.vertex_count(), mg.v);
    Divisor uw = Divisor::unit(g.vertex_count(), mg.w);
    return rank(g, d) - rank(g, d - uv) - rank(g, d - uw) + rank(g, d - uv - uw);
}

struct SubmodularityViolation {
    long long a = 0;
    long long b = 0;
    long long delta_value = 0;
};

struct SubmodularityReport {
    bool submodular = false;
    std::optional<ZPerm> tau;
    std::optional<SubmodularityViolation> violation;
    long long torsion = 1;
    long long genus = 0;
    long long degree = 0;
};

// Extracts the transmission permutation of D, or a witness twist with a
// negative alternating rank sum.
//
// Ranks are degree-forced outside 0 <= deg(D + av - bw) <= 2g (they are -1
// below degree 0 and deg - g above 2g - 2), so the alternating sum vanishes
// off the band a in [b - d, b - d + 2g] and scanning that band checks every
// twist. Twisting (a, b) by (k, k) adds the principal divisor k(v - w), so
// residues b in [0, k) cover all of Z; b = k is scanned once more to pin
// the periodicity.
inline SubmodularityReport transmission_permutation(const MarkedGraph& mg, const Divisor& d) {
    const Graph& g = mg.graph;
    const long long genus = g.genus();
    const long long deg = d.degree();
    const long long k = torsion_order(mg);
    const Divisor uv = Divisor::unit(g.vertex_count(), mg.v);
    const Divisor uw = Divisor::unit(g.vertex_count(), mg.w);

    SubmodularityReport rep;
    rep.torsion = k;
    rep.genus = genus;
    rep.degree = deg;

    auto twist_rank = [&](long long a, long long b) {
        return rank(g, d + a * uv - b * uw);
    };

    std::vector<long long> tau_vals(static_cast<size_t>(k + 1));
    for (long long b = 0; b <= k; ++b) {
        long long found_a = 0;
        int found = 0;
        for (long long a = b - deg; a <= b - deg + 2 * genus; ++a) {
            long long dl = twist_rank(a, b) - twist_rank(a - 1, b) - twist_rank(a, b + 1) +
                           twist_rank(a - 1, b + 1);
            if (dl < 0) {
                rep.submodular = false;
                rep.violation = SubmodularityViolation{a, b, dl};
                return rep;
            }
            if (dl > 1) throw std::logic_error("transmission: alternating sum above one");
            if (dl == 1) {
                ++found;
                found_a = a;
            }
        }
        if (found != 1)
            throw std::logic_error("transmission: band must contain exactly one unit step");
        tau_vals[static_cast<size_t>(b)] = found_a;
    }
    if (tau_vals[static_cast<size_t>(k)] != tau_vals[0] + k)
        throw std::logic_error("transmission: torsion periodicity failed");
    tau_vals.pop_back();
    rep.submodular = true;
    rep.tau = ZPerm::periodic(k, std::move(tau_vals));
    return rep;
}

// Windowed s(a, b) = r(D + (a-1)v - bw) + 1 with closed-form tails. The
// values are honest ranks whatever D is; the diagonal period is the torsion
// order and the deviation radius is the genus, since the band argument
// above forces s = 0 once a - b - (g - d) <= -g and s = a - b - (g - d)
// once it is >= g.
struct TransmissionTable {
    SFunction table;
    long long degree = 0;
    long long genus = 0;
    long long torsion = 1;
};

inline TransmissionTable transmission_table(const MarkedGraph& mg, const Divisor& d, long long a_lo,
                                            long long a_hi, long long b_lo, long long b_hi) {
    if (a_lo > a_hi || b_lo > b_hi) throw std::invalid_argument("transmission_table: empty window");
    const Graph& g = mg.graph;
    const Divisor uv = Divisor::unit(g.vertex_count(), mg.v);
    const Divisor uw = Divisor::unit(g.vertex_count(), mg.w);
    TransmissionTable t;
    t.degree = d.degree();
    t.genus = g.genus();
    t.torsion = torsion_order(mg);
    t.table.a_lo = a_lo;
    t.table.a_hi = a_hi;
    t.table.b_lo = b_lo;
    t.table.b_hi = b_hi;
    t.table.period = t.torsion;
    t.table.shift = t.genus - t.degree;
    t.table.dev = t.genus;
    t.table.vals.assign(static_cast<size_t>(t.table.a_extent() * t.table.b_extent()), 0);
    for (long long a = a_lo; a <= a_hi; ++a)
        for (long long b = b_lo; b <= b_hi; ++b)
            t.table.at(a, b) = rank(g, d + (a - 1) * uv - b * uw) + 1;
    return t;
}

// Checks both defining count identities of the transmission permutation on
// a window around the interesting band:
//     r(D + av - bw) + 1      = #{n >= b : tau(n) <= a}
//     r(K - D - av + bw) + 1  = #{n <  b : tau(n) >  a}
inline bool verify_defining_counts(const MarkedGraph& mg, const Divisor& d, const ZPerm& tau) {
    const Graph& g = mg.graph;
    const long long genus = g.genus();
    const long long deg = d.degree();
    const long long k = torsion_order(mg);
    const Divisor uv = Divisor::unit(g.vertex_count(), mg.v);
    const Divisor uw = Divisor::unit(g.vertex_count(), mg.w);
    const Divisor kd = canonical_divisor(g);
    const long long disp = tau.displacement();
    const long long dev = tau.deviation();
    for (long long b = -1; b <= k + 1; ++b) {
        for (long long a = b - deg - 1; a <= b - deg + 2 * genus + 1; ++a) {
            long long lhs1 = rank(g, d + a * uv - b * uw) + 1;
            if (lhs1 != count_below(tau, a + 1, b)) return false;
            long long above = 0;
            for (long long n = a - disp - dev - 1; n < b; ++n)
                if (tau(n) > a) ++above;
            long long lhs2 = rank(g, kd - d - a * uv + b * uw) + 1;
            if (lhs2 != above) return false;
        }
    }
    return true;
}

// Largest v - u over inversions (u, v) with 0 <= v < k; the large-k
// surrogate requires this width to stay below k.
inline long long max_inversion_width(const ZPerm& tau, long long k) {
    long long disp = tau.displacement();
    long long dev = tau.deviation();
    long long width = 0;
    for (long long v = 0; v < k; ++v) {
        long long tv = tau(v);
        for (long long u = tv - disp - dev; u < v; ++u)
            if (tau(u) > tv) width = std::max(width, v - u);
    }
    return width;
}

struct CertifyOptions {
    long long class_cap = 10000;
    bool large_k_surrogate = false;
    std::optional<long long> k_override;
    bool verify_counts = false;
    unsigned threads = 0;
};

struct ClassCertificate {
    Divisor representative;
    bool submodular = false;
    std::optional<ZPerm> tau;
    std::optional<SubmodularityViolation> violation;
    bool member_ok = false;
    InvCount inversions;
    bool bound_ok = false;
    bool width_ok = true;
    bool counts_ok = true;

    bool ok() const { return submodular && member_ok && bound_ok && width_ok && counts_ok; }
};

struct CertificationReport {
    long long torsion = 1;
    long long k = 0;
    long long genus = 0;
    long long classes = 0;
    bool pass = false;
    long long max_inv = 0;
    size_t worst_class = 0;
    std::vector<ClassCertificate> details;
};

// Certifies k-general transmission: every divisor class is submodular with
// tau in the k-periodic group and inv_k(tau) <= genus.
//
// Only degree-g classes are enumerated. Twisting by the marked points only
// reindexes the table, s_{D+v}(a, b) = s_D(a+1, b) and s_{D-w}(a, b) =
// s_D(a, b+1), which composes tau with shifts on either side and changes
// neither submodularity nor inv_k; every divisor is equivalent to a
// degree-g one plus a multiple of v.
inline CertificationReport certify_k_general_transmission(const MarkedGraph& mg,
                                                          const CertifyOptions& opts = {}) {
    const Graph& g = mg.graph;
    CertificationReport rep;
    rep.torsion = torsion_order(mg);
    rep.genus = g.genus();
    rep.k = opts.k_override.value_or(rep.torsion);
    if (!opts.k_override && rep.torsion == 1)
        throw std::invalid_argument(
            "certify: the marked points are equivalent; pass an explicit k to check");
    if (rep.k == 1 || rep.k < 0) throw std::invalid_argument("certify: k must be 0 or >= 2");

    auto reps = enumerate_picard(g, rep.genus, mg.w, opts.class_cap);
    rep.classes = static_cast<long long>(reps.size());
    rep.details.assign(reps.size(), {});

    parallel_for(static_cast<long long>(reps.size()), [&](long long i) {
        ClassCertificate cc;
        cc.representative = reps[static_cast<size_t>(i)];
        SubmodularityReport sub = transmission_permutation(mg, cc.representative);
        cc.submodular = sub.submodular;
        cc.violation = sub.violation;
        if (sub.submodular) {
            const ZPerm& tau = *sub.tau;
            cc.tau = tau;
            cc.member_ok = rep.k == 0 ? tau.is_pure_shift() : tau.in_affine_group(rep.k);
            if (cc.member_ok) {
                cc.inversions = inv(tau, rep.k);
                cc.bound_ok = cc.inversions.leq(rep.genus);
                if (opts.large_k_surrogate && rep.k >= 2)
                    cc.width_ok = max_inversion_width(tau, rep.k) < rep.k;
            }
            if (opts.verify_counts) cc.counts_ok = verify_defining_counts(mg, cc.representative, tau);
        }
        rep.details[static_cast<size_t>(i)] = std::move(cc);
    }, opts.threads);

    rep.pass = true;
    rep.max_inv = 0;
    size_t argmax = 0;
    for (size_t i = 0; i < rep.details.size(); ++i) {
        const ClassCertificate& cc = rep.details[i];
        if (!cc.ok() && rep.pass) {
            rep.pass = false;
            rep.worst_class = i;
        }
        if (!cc.inversions.infinite && cc.inversions.value > rep.max_inv) {
            rep.max_inv = cc.inversions.value;
            argmax = i;
        }
    }
    if (rep.pass) rep.worst_class = argmax;
    return rep;
}

} // namespace twomark
