#pragma once

// 2x2 integer matrices and points of P^1(Q).

#include <string>

#include "modk2/arith.hpp"
#include "modk2/lattice.hpp"

namespace modk2 {

/// Reduced fraction num/den with den >= 0; den == 0 is the point at infinity (num == 1).
struct Frac {
    i64 num = 0;
    i64 den = 1;

    static Frac make(i64 n, i64 d);
    static Frac infinity() { return {1, 0}; }
    bool is_infinity() const { return den == 0; }
    bool operator==(const Frac& o) const = default;
    std::string to_string() const;
};

struct Mat2 {
    i64 a = 1, b = 0, c = 0, d = 1;

    static Mat2 identity() { return {}; }
    i64 det() const { return checked_add(checked_mul(a, d), -checked_mul(b, c)); }
    Mat2 operator*(const Mat2& o) const {
        return {checked_add(checked_mul(a, o.a), checked_mul(b, o.c)), checked_add(checked_mul(a, o.b), checked_mul(b, o.d)),
                checked_add(checked_mul(c, o.a), checked_mul(d, o.c)), checked_add(checked_mul(c, o.b), checked_mul(d, o.d))};
    }
    /// Inverse of a determinant-one matrix.
    Mat2 inverse_sl2() const { return {d, -b, -c, a}; }
    Mat2 negated() const { return {-a, -b, -c, -d}; }
    bool operator==(const Mat2& o) const = default;
    /// Equal up to sign.
    bool equal_projectively(const Mat2& o) const { return *this == o || *this == o.negated(); }

    /// Moebius action on P^1(Q).
    Frac act(const Frac& x) const;
    std::string to_string() const;
};

/// Some integer pair (c', d') congruent to (c, d) mod m with gcd(c', d') == 1; requires gcd(c, d, m) == 1.
std::pair<i64, i64> lift_coprime_pair(i64 c, i64 d, i64 m);

/// A determinant-one matrix with bottom row (c, d), gcd(c, d) == 1.
Mat2 complete_bottom_row(i64 c, i64 d);

/// An element of Gamma_0(M) whose lower-right entry is congruent to t (gcd(t, M) == 1).
Mat2 gamma0_with_lower_right(i64 M, i64 t);

}  // namespace modk2
