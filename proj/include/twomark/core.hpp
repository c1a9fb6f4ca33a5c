// Copyright (c) twomark contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace twomark {

// Thrown when an enumeration would exceed a configured cap.
struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a windowed s-function is queried outside its certified range.
struct window_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

constexpr long long floor_mod(long long a, long long b) {
    return a - floor_div(a, b) * b;
}

// Modular inverse of a mod m, for gcd(a, m) == 1, m >= 1.
inline long long mod_inverse(long long a, long long m) {
    a = floor_mod(a, m);
    long long t = 0, new_t = 1;
    long long r = m, new_r = a;
    while (new_r != 0) {
        long long q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw std::invalid_argument("mod_inverse: not invertible");
    return floor_mod(t, m);
}

} // namespace twomark
