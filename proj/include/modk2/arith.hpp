#pragma once

// Small-integer number theory used throughout: gcds, modular inverses,
// factorization by trial division, Euler phi, divisor lists.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace modk2 {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// Non-negative representative of a mod m (m > 0).
inline i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 gcd(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline i64 lcm(i64 a, i64 b) { return a / gcd(a, b) * b; }

struct ExtGcd {
    i64 g;  // gcd, always >= 0
    i64 x;  // a*x + b*y == g
    i64 y;
};

inline ExtGcd ext_gcd(i64 a, i64 b) {
    i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

/// Inverse of a modulo m; throws if gcd(a, m) != 1.
inline i64 inv_mod(i64 a, i64 m) {
    if (m == 1) return 0;
    auto e = ext_gcd(mod(a, m), m);
    if (e.g != 1) throw std::domain_error("inv_mod: not invertible");
    return mod(e.x, m);
}

inline i64 mul_mod(i64 a, i64 b, i64 m) {
    return static_cast<i64>((static_cast<__int128>(mod(a, m)) * mod(b, m)) % m);
}

inline i64 pow_mod(i64 base, u64 e, i64 m) {
    if (m == 1) return 0;
    i64 r = 1;
    base = mod(base, m);
    while (e != 0) {
        if (e & 1u) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        e >>= 1u;
    }
    return r;
}

bool is_prime(i64 n);

/// Prime factorization as (prime, exponent) pairs in increasing order.
std::vector<std::pair<i64, int>> factorize(i64 n);

std::vector<i64> prime_divisors(i64 n);

std::vector<i64> divisors(i64 n);

i64 euler_phi(i64 n);

/// Multiplicative order of a modulo m (gcd(a, m) must be 1).
i64 mult_order(i64 a, i64 m);

/// Largest divisor of n coprime to p, and the exponent k with p^k || n.
std::pair<i64, int> split_prime_part(i64 n, i64 p);

inline i64 ipow(i64 b, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

/// Units of Z/m in increasing order.
std::vector<i64> units_mod(i64 m);

}  // namespace modk2
