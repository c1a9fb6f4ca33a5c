// Copyright (c) twomark contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "twomark/zperm.hpp"

namespace twomark {

// #{n >= b : tau(n) < a}, the defining count of the s-function of tau.
inline long long count_below(const ZPerm& tau, long long a, long long b) {
    long long disp = tau.displacement();
    long long dev = tau.deviation();
    long long count = 0;
    // tau(n) >= n + disp - dev, so no n beyond a - disp + dev can qualify
    for (long long n = b; n + disp - dev < a; ++n)
        if (tau(n) < a) ++count;
    return count;
}

// A rectangular window of s-values plus enough structure to evaluate
// everywhere the data determines the function:
//
//   * diagonal periodicity s(a+P, b+P) = s(a, b) when period P > 0,
//   * the closed-form tail max(0, a - b - shift), exact whenever
//     |a - b - shift| >= dev.
//
// The tail threshold is sound because tau(n) - n - shift is bounded by dev
// in absolute value and averages to zero, which balances the crossings of
// any level; queries strictly between window and tail throw, never guess.
struct SFunction {
    long long a_lo = 0, a_hi = -1, b_lo = 0, b_hi = -1;
    long long period = 0;
    long long shift = 0;
    long long dev = 0;
    std::vector<long long> vals;

    long long a_extent() const { return a_hi - a_lo + 1; }
    long long b_extent() const { return b_hi - b_lo + 1; }

    bool in_window(long long a, long long b) const {
        return a >= a_lo && a <= a_hi && b >= b_lo && b <= b_hi;
    }

    long long& at(long long a, long long b) {
        return vals[static_cast<size_t>((a - a_lo) * b_extent() + (b - b_lo))];
    }
    long long at(long long a, long long b) const {
        return vals[static_cast<size_t>((a - a_lo) * b_extent() + (b - b_lo))];
    }

    long long operator()(long long a, long long b) const {
        if (in_window(a, b)) return at(a, b);
        if (period > 0) {
            // slide along the diagonal towards the window
            long long t_min = floor_div(b - b_hi + period - 1, period);
            long long t_max = floor_div(b - b_lo, period);
            for (long long t = t_min; t <= t_max; ++t)
                if (in_window(a - t * period, b - t * period)) return at(a - t * period, b - t * period);
        }
        long long d = a - b - shift;
        if (d >= dev) return d;
        if (d <= -dev) return 0;
        throw window_error("s-function query outside certified window: a=" + std::to_string(a) +
                           " b=" + std::to_string(b));
    }
};

inline SFunction s_function(const ZPerm& tau, long long a_lo, long long a_hi, long long b_lo,
                            long long b_hi) {
    if (a_lo > a_hi || b_lo > b_hi) throw std::invalid_argument("s_function: empty window");
    SFunction s;
    s.a_lo = a_lo;
    s.a_hi = a_hi;
    s.b_lo = b_lo;
    s.b_hi = b_hi;
    s.period = tau.kind() == ZPerm::Kind::periodic && !tau.is_pure_shift() ? tau.period() : 0;
    s.shift = tau.displacement();
    s.dev = tau.deviation();
    s.vals.assign(static_cast<size_t>(s.a_extent() * s.b_extent()), 0);
    for (long long a = a_lo; a <= a_hi; ++a)
        for (long long b = b_lo; b <= b_hi; ++b) s.at(a, b) = count_below(tau, a, b);
    return s;
}

// Window sized so every value the function can take is either stored or
// tail-determined, with `pad` extra slack on each side.
inline SFunction s_function(const ZPerm& tau, long long pad = 2) {
    long long disp = tau.displacement();
    long long dev = tau.deviation();
    long long b_lo = -dev - pad;
    long long b_hi = dev + pad;
    if (tau.kind() == ZPerm::Kind::periodic) {
        b_hi = tau.period() - 1 + dev + pad;
    } else {
        for (const auto& [n, t] : tau.exceptions()) {
            (void)t;
            b_lo = std::min(b_lo, n - dev - pad);
            b_hi = std::max(b_hi, n + dev + pad);
        }
    }
    return s_function(tau, b_lo + disp - dev - pad, b_hi + disp + dev + pad, b_lo, b_hi);
}

// Min-plus product restricted to the first factor's a-window and the second
// factor's b-window. The minimizing column for (a, b) is certified to lie in
// [b + shift2 - dev2, a - shift1 + dev1]: below it the second factor is zero
// while the first can only grow, and symmetrically above.
inline SFunction tropical_star(const SFunction& s1, const SFunction& s2) {
    long long period;
    if (s1.period == s2.period)
        period = s1.period;
    else if (s1.period == 0 && s1.dev == 0)
        period = s2.period;
    else if (s2.period == 0 && s2.dev == 0)
        period = s1.period;
    else if (s1.period > 0 && s2.period > 0)
        period = std::lcm(s1.period, s2.period);
    else
        throw std::invalid_argument("tropical_star: incompatible periodicities");

    SFunction out;
    out.a_lo = s1.a_lo;
    out.a_hi = s1.a_hi;
    out.b_lo = s2.b_lo;
    out.b_hi = s2.b_hi;
    out.period = period;
    out.shift = s1.shift + s2.shift;
    out.dev = s1.dev + s2.dev;
    out.vals.assign(static_cast<size_t>(out.a_extent() * out.b_extent()), 0);
    for (long long a = out.a_lo; a <= out.a_hi; ++a) {
        for (long long b = out.b_lo; b <= out.b_hi; ++b) {
            long long lo = b + s2.shift - s2.dev;
            long long hi = a - s1.shift + s1.dev;
            long long best;
            if (lo > hi) {
                best = 0; // empty certified range happens only in the zero tail
            } else {
                best = s1(a, lo) + s2(lo, b);
                for (long long l = lo + 1; l <= hi; ++l)
                    best = std::min(best, s1(a, l) + s2(l, b));
            }
            out.at(a, b) = best;
        }
    }
    return out;
}

// Recover the permutation from its s-function via the difference relation
// s(a, b) - s(a, b+1) = [tau(b) < a].
inline ZPerm zperm_from_sfunction(const SFunction& s) {
    auto tau_at = [&](long long b) {
        for (long long a = b + s.shift - s.dev - 1; a <= b + s.shift + s.dev + 1; ++a) {
            if (s(a, b) - s(a, b + 1) == 1) return a - 1;
        }
        throw window_error("zperm_from_sfunction: no difference step found at b=" + std::to_string(b));
    };
    if (s.period > 0) {
        const long long P = s.period;
        if (s.b_extent() < P)
            throw window_error("zperm_from_sfunction: window narrower than the period");
        std::vector<long long> vals(static_cast<size_t>(P));
        for (long long b = s.b_lo; b < s.b_lo + P; ++b) {
            long long i = floor_mod(b, P);
            vals[static_cast<size_t>(i)] = tau_at(b) - (b - i);
        }
        return ZPerm::periodic(P, std::move(vals));
    }
    std::map<long long, long long> exc;
    for (long long b = s.b_lo; b < s.b_hi; ++b) {
        long long t = tau_at(b);
        if (t != b + s.shift) exc[b] = t;
    }
    if (exc.count(s.b_lo) || exc.count(s.b_hi - 1))
        throw window_error("zperm_from_sfunction: deviations touch the window boundary");
    return ZPerm::shift_finite(-s.shift, std::move(exc));
}

} // namespace twomark
