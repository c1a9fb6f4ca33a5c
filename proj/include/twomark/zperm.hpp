// Copyright (c) twomark contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "twomark/core.hpp"

namespace twomark {

// Inversion count that distinguishes an infinite total from any finite one.
// Never collapse the infinite case into a large number; comparisons against
// finite bounds must fail.
struct InvCount {
    bool infinite = false;
    long long value = 0;

    static InvCount inf() { return {true, 0}; }
    static InvCount finite(long long v) { return {false, v}; }

    bool leq(long long bound) const { return !infinite && value <= bound; }
    bool geq(long long bound) const { return infinite || value >= bound; }

    friend bool operator==(const InvCount& a, const InvCount& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
};

// A permutation of the integers with a finite description. Two forms:
//
//   periodic k:     tau(n + k) = tau(n) + k, stored as tau on [0, k);
//   shift-finite:   tau(n) = n - m away from finitely many exceptions.
//
// Finite-graph torsion always produces the periodic form; the shift-finite
// form carries the finitely-many-inversions theory and large-k limits.
class ZPerm {
public:
    enum class Kind { periodic, shift_finite };

    static ZPerm periodic(long long period, std::vector<long long> values) {
        if (period < 1) throw std::invalid_argument("ZPerm: period must be >= 1");
        if (static_cast<long long>(values.size()) != period)
            throw std::invalid_argument("ZPerm: need one value per residue");
        std::vector<char> hit(static_cast<size_t>(period), 0);
        for (long long v : values) {
            long long r = floor_mod(v, period);
            if (hit[static_cast<size_t>(r)])
                throw std::invalid_argument("ZPerm: values are not a complete residue system");
            hit[static_cast<size_t>(r)] = 1;
        }
        ZPerm p;
        p.kind_ = Kind::periodic;
        p.period_ = period;
        p.values_ = std::move(values);
        return p;
    }

    static ZPerm shift_finite(long long m, std::map<long long, long long> exceptions) {
        for (auto it = exceptions.begin(); it != exceptions.end();) {
            if (it->second == it->first - m)
                it = exceptions.erase(it);
            else
                ++it;
        }
        std::set<long long> expect, image;
        for (const auto& [n, t] : exceptions) {
            expect.insert(n - m);
            image.insert(t);
        }
        if (expect != image)
            throw std::invalid_argument("ZPerm: exceptions do not permute their displaced image");
        ZPerm p;
        p.kind_ = Kind::shift_finite;
        p.shift_ = m;
        p.exceptions_ = std::move(exceptions);
        return p;
    }

    // iota_m(n) = n - m
    static ZPerm shift(long long m) { return shift_finite(m, {}); }

    static ZPerm identity() { return shift(0); }

    // sigma^k_m exchanges n and n+1 for all n congruent to m mod k
    // (equality when k = 0). k = 1 would not be a bijection of residues.
    static ZPerm simple_reflection(long long k, long long m) {
        if (k == 1 || k < 0) throw std::invalid_argument("simple_reflection: k must be 0 or >= 2");
        if (k == 0) return shift_finite(0, {{m, m + 1}, {m + 1, m}});
        std::vector<long long> vals(static_cast<size_t>(k));
        for (long long i = 0; i < k; ++i) vals[static_cast<size_t>(i)] = i;
        long long r = floor_mod(m, k);
        long long r1 = floor_mod(m + 1, k);
        vals[static_cast<size_t>(r)] = r + 1;
        vals[static_cast<size_t>(r1)] = r1 - 1;
        return periodic(k, std::move(vals));
    }

    Kind kind() const { return kind_; }
    long long period() const { return period_; }
    const std::vector<long long>& values() const { return values_; }
    long long shift_amount() const { return shift_; }
    const std::map<long long, long long>& exceptions() const { return exceptions_; }

    long long operator()(long long n) const {
        if (kind_ == Kind::periodic) {
            long long i = floor_mod(n, period_);
            return values_[static_cast<size_t>(i)] + (n - i);
        }
        auto it = exceptions_.find(n);
        return it != exceptions_.end() ? it->second : n - shift_;
    }

    // Asymptotic displacement: the mean of tau(n) - n over a period.
    long long displacement() const {
        if (kind_ == Kind::shift_finite) return -shift_;
        long long sum = 0;
        for (long long i = 0; i < period_; ++i) sum += values_[static_cast<size_t>(i)] - i;
        if (floor_mod(sum, period_) != 0) throw std::logic_error("ZPerm: non-integral displacement");
        return sum / period_;
    }

    // Max |tau(n) - n - displacement| over all n; zero exactly for shifts.
    long long deviation() const {
        long long disp = displacement();
        long long dev = 0;
        if (kind_ == Kind::periodic) {
            for (long long i = 0; i < period_; ++i)
                dev = std::max(dev, std::abs(values_[static_cast<size_t>(i)] - i - disp));
        } else {
            for (const auto& [n, t] : exceptions_) dev = std::max(dev, std::abs(t - n - disp));
        }
        return dev;
    }

    bool is_pure_shift() const {
        if (kind_ == Kind::shift_finite) return exceptions_.empty();
        for (long long i = 0; i < period_; ++i)
            if (values_[static_cast<size_t>(i)] - i != values_[0]) return false;
        return true;
    }

    // tau(n+k) = tau(n) + k for all n
    bool in_affine_group(long long k) const {
        if (k < 2) return false;
        if (kind_ == Kind::shift_finite) return exceptions_.empty();
        long long span = std::lcm(period_, k);
        for (long long n = 0; n < span; ++n)
            if ((*this)(n + k) != (*this)(n) + k) return false;
        return true;
    }

    ZPerm as_shift_finite() const {
        if (kind_ == Kind::shift_finite) return *this;
        if (!is_pure_shift()) throw std::invalid_argument("ZPerm: periodic non-shift has no finite form");
        return shift(-(values_[0]));
    }

    ZPerm embed_period(long long new_period) const {
        if (kind_ == Kind::shift_finite) {
            if (!exceptions_.empty())
                throw std::invalid_argument("ZPerm: only shifts embed into a periodic form");
        } else if (new_period % period_ != 0) {
            throw std::invalid_argument("ZPerm: period must divide the target");
        }
        std::vector<long long> vals(static_cast<size_t>(new_period));
        for (long long i = 0; i < new_period; ++i) vals[static_cast<size_t>(i)] = (*this)(i);
        return periodic(new_period, std::move(vals));
    }

    ZPerm inverse() const {
        if (kind_ == Kind::shift_finite) {
            std::map<long long, long long> inv;
            for (const auto& [n, t] : exceptions_) inv[t] = n;
            return shift_finite(-shift_, std::move(inv));
        }
        std::vector<long long> vals(static_cast<size_t>(period_));
        for (long long i = 0; i < period_; ++i) {
            long long v = values_[static_cast<size_t>(i)];
            long long r = floor_mod(v, period_);
            vals[static_cast<size_t>(r)] = i - (v - r);
        }
        return periodic(period_, std::move(vals));
    }

    friend bool operator==(const ZPerm& a, const ZPerm& b) {
        if (a.kind_ == Kind::periodic && b.kind_ == Kind::periodic) {
            long long span = std::lcm(a.period_, b.period_);
            for (long long n = 0; n < span; ++n)
                if (a(n) != b(n)) return false;
            return true;
        }
        if (a.kind_ == Kind::shift_finite && b.kind_ == Kind::shift_finite)
            return a.shift_ == b.shift_ && a.exceptions_ == b.exceptions_;
        const ZPerm& p = a.kind_ == Kind::periodic ? a : b;
        const ZPerm& s = a.kind_ == Kind::periodic ? b : a;
        if (!p.is_pure_shift()) return false;
        return s.exceptions_.empty() && s(0) == p(0);
    }

private:
    ZPerm() = default;

    Kind kind_ = Kind::shift_finite;
    long long period_ = 0;
    std::vector<long long> values_;
    long long shift_ = 0;
    std::map<long long, long long> exceptions_;
};

// (p o q)(n) = p(q(n)). Periodic periods combine through their lcm; a pure
// shift composes with either form. Mixing a genuinely periodic permutation
// with genuine exceptions has no finite description here and is rejected.
inline ZPerm compose(const ZPerm& p, const ZPerm& q) {
    using Kind = ZPerm::Kind;
    bool p_per = p.kind() == Kind::periodic && !p.is_pure_shift();
    bool q_per = q.kind() == Kind::periodic && !q.is_pure_shift();
    bool p_exc = p.kind() == Kind::shift_finite && !p.exceptions().empty();
    bool q_exc = q.kind() == Kind::shift_finite && !q.exceptions().empty();
    if ((p_per && q_exc) || (p_exc && q_per))
        throw std::invalid_argument("compose: incompatible representations");
    if (p_per || q_per) {
        long long k = std::lcm(p.kind() == Kind::periodic ? p.period() : 1,
                               q.kind() == Kind::periodic ? q.period() : 1);
        std::vector<long long> vals(static_cast<size_t>(k));
        for (long long i = 0; i < k; ++i) vals[static_cast<size_t>(i)] = p(q(i));
        return ZPerm::periodic(k, std::move(vals));
    }
    ZPerm ps = p.as_shift_finite();
    ZPerm qs = q.as_shift_finite();
    long long m = ps.shift_amount() + qs.shift_amount();
    std::set<long long> candidates;
    for (const auto& [n, t] : qs.exceptions()) {
        (void)t;
        candidates.insert(n);
    }
    ZPerm q_inv = qs.inverse();
    for (const auto& [n, t] : ps.exceptions()) {
        (void)t;
        candidates.insert(q_inv(n));
    }
    std::map<long long, long long> exc;
    for (long long n : candidates) {
        long long t = ps(qs(n));
        if (t != n - m) exc[n] = t;
    }
    return ZPerm::shift_finite(m, std::move(exc));
}

// Number of k-equivalence classes of inversions. For k >= 2 the count runs
// over inversions (u, v) with 0 <= v < k and requires membership in the
// affine group; for k = 0 it is the plain inversion count, infinite for any
// periodic permutation that is not a shift.
inline InvCount inv(const ZPerm& p, long long k) {
    if (k == 1 || k < 0) throw std::invalid_argument("inv: k must be 0 or >= 2");
    if (k == 0) {
        if (p.kind() == ZPerm::Kind::periodic)
            return p.is_pure_shift() ? InvCount::finite(0) : InvCount::inf();
        long long count = 0;
        const auto& exc = p.exceptions();
        const long long m = p.shift_amount();
        for (auto itu = exc.begin(); itu != exc.end(); ++itu) {
            for (auto itv = std::next(itu); itv != exc.end(); ++itv)
                if (itu->second > itv->second) ++count;
            // u exceptional, v on the shifted diagonal
            for (long long v = itu->first + 1; v - m < itu->second; ++v)
                if (!exc.count(v)) ++count;
            // v exceptional, u on the shifted diagonal
            for (long long u = itu->second + m + 1; u < itu->first; ++u)
                if (!exc.count(u)) ++count;
        }
        return InvCount::finite(count);
    }
    if (!p.in_affine_group(k)) throw std::invalid_argument("inv: permutation is not k-periodic");
    long long disp = p.displacement();
    long long dev = p.deviation();
    long long count = 0;
    for (long long v = 0; v < k; ++v) {
        long long tv = p(v);
        // tau(u) <= u + disp + dev, so inversions need u > tv - disp - dev
        for (long long u = tv - disp - dev; u < v; ++u)
            if (p(u) > tv) ++count;
    }
    return InvCount::finite(count);
}

namespace detail {

// p written as iota_m followed by simple reflections in product order:
// p = iota_m o sigma_{word[0]} o sigma_{word[1]} o ...  The word is reduced;
// its length equals inv_k(p) (k the stored generator modulus, 0 for the
// shift-finite form). Extraction bubbles the leftmost descent.
struct AffineWord {
    long long iota = 0;
    long long modulus = 0;
    std::vector<long long> word;
};

inline AffineWord affine_word_periodic(const ZPerm& p) {
    const long long k = p.period();
    const long long expected = inv(p, k).value;
    std::vector<long long> vals = p.values();
    std::vector<long long> bubble;
    while (true) {
        long long descent = -1;
        for (long long j = 0; j < k; ++j) {
            long long a = vals[static_cast<size_t>(j)];
            long long b = (j + 1 < k) ? vals[static_cast<size_t>(j + 1)] : vals[0] + k;
            if (a > b) { descent = j; break; }
        }
        if (descent < 0) break;
        bubble.push_back(descent);
        if (static_cast<long long>(bubble.size()) > expected)
            throw std::logic_error("affine_word: word exceeds the inversion count");
        if (descent + 1 < k) {
            std::swap(vals[static_cast<size_t>(descent)], vals[static_cast<size_t>(descent + 1)]);
        } else {
            long long old_last = vals[static_cast<size_t>(k - 1)];
            vals[static_cast<size_t>(k - 1)] = vals[0] + k;
            vals[0] = old_last - k;
        }
    }
    for (long long i = 0; i < k; ++i)
        if (vals[static_cast<size_t>(i)] - i != vals[0])
            throw std::logic_error("affine_word: sorted state is not a shift");
    if (static_cast<long long>(bubble.size()) != expected)
        throw std::logic_error("affine_word: word is not reduced");
    AffineWord w;
    w.iota = -vals[0];
    w.modulus = k;
    w.word.assign(bubble.rbegin(), bubble.rend());
    return w;
}

inline AffineWord affine_word_shift_finite(const ZPerm& p) {
    long long m = p.shift_amount();
    const long long expected = inv(p, 0).value;
    std::map<long long, long long> exc = p.exceptions();
    auto value_at = [&](long long n) {
        auto it = exc.find(n);
        return it != exc.end() ? it->second : n - m;
    };
    std::vector<long long> bubble;
    while (!exc.empty()) {
        long long descent = 0;
        bool found = false;
        std::set<long long> candidates;
        for (const auto& [n, t] : exc) {
            (void)t;
            candidates.insert(n);
            candidates.insert(n - 1);
        }
        for (long long j : candidates) {
            if (value_at(j) > value_at(j + 1)) {
                descent = j;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("affine_word: exceptions remain but no descent");
        bubble.push_back(descent);
        if (static_cast<long long>(bubble.size()) > expected)
            throw std::logic_error("affine_word: word exceeds the inversion count");
        long long a = value_at(descent);
        long long b = value_at(descent + 1);
        exc[descent] = b;
        exc[descent + 1] = a;
        if (exc[descent] == descent - m) exc.erase(descent);
        if (exc.count(descent + 1) && exc[descent + 1] == descent + 1 - m) exc.erase(descent + 1);
    }
    if (static_cast<long long>(bubble.size()) != expected)
        throw std::logic_error("affine_word: word is not reduced");
    AffineWord w;
    w.iota = m;
    w.modulus = 0;
    w.word.assign(bubble.rbegin(), bubble.rend());
    return w;
}

inline AffineWord affine_word(const ZPerm& p) {
    if (p.kind() == ZPerm::Kind::periodic) return affine_word_periodic(p);
    return affine_word_shift_finite(p);
}

} // namespace detail

// Demazure product. Folds the right factor's reduced word one generator at
// a time: a * iota_m = a o iota_m, and a * sigma_j multiplies only when j
// is an ascent of a. Both operands must admit a common finite form.
inline ZPerm demazure(const ZPerm& a, const ZPerm& b) {
    using Kind = ZPerm::Kind;
    if (b.is_pure_shift()) return compose(a, b);

    bool a_per = a.kind() == Kind::periodic && !a.is_pure_shift();
    bool b_per = b.kind() == Kind::periodic && !b.is_pure_shift();
    bool a_exc = a.kind() == Kind::shift_finite && !a.exceptions().empty();
    bool b_exc = b.kind() == Kind::shift_finite && !b.exceptions().empty();
    if ((a_per && b_exc) || (a_exc && b_per))
        throw std::invalid_argument("demazure: incompatible representations");

    if (a_per || b_per) {
        long long k = std::lcm(a.kind() == Kind::periodic ? a.period() : 1,
                               b.kind() == Kind::periodic ? b.period() : 1);
        ZPerm x = a.embed_period(k);
        detail::AffineWord word = detail::affine_word(b.embed_period(k));
        x = compose(x, ZPerm::shift(word.iota));
        for (long long j : word.word) {
            if (x(j) < x(j + 1)) x = compose(x, ZPerm::simple_reflection(k, j));
        }
        return x;
    }
    detail::AffineWord word = detail::affine_word(b.as_shift_finite());
    ZPerm x = compose(a.as_shift_finite(), ZPerm::shift(word.iota));
    for (long long j : word.word) {
        if (x(j) < x(j + 1)) x = compose(x, ZPerm::simple_reflection(0, j));
    }
    return x;
}

} // namespace twomark
