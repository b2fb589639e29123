#pragma once

// K_1 of the divisors 1 - z1^a z2^c = 0 on the square torus: the symbols <a, c>,
// SL_2(Z) pullbacks, the trace along (z1, z2) -> (z1, z2^p) and the cocycle dTheta.

#include <map>
#include <random>
#include <string>

#include "modk2/arith.hpp"
#include "modk2/mat2.hpp"

namespace modk2::gm2k1 {

/// Element of Q/Z, num/den reduced with 0 <= num < den.
struct QZ {
    i64 num = 0;
    i64 den = 1;
    static QZ make(i64 n, i64 d);
    QZ operator+(const QZ& o) const;
    QZ operator-() const { return make(-num, den); }
    QZ operator*(i64 k) const { return make(checked_mul(num, k), den); }
    auto operator<=>(const QZ& o) const = default;
    std::string to_string() const;
};

/// Primitive (a, c), sign fixed by a > 0, or a = 0 and c > 0.
struct PrimVec {
    i64 a = 0;
    i64 c = 1;
    /// Normalizes; `flipped` reports whether the sign changed.
    static PrimVec make(i64 a, i64 c, bool* flipped = nullptr);
    auto operator<=>(const PrimVec& o) const = default;
    std::string to_string() const;
};

/// exp(2 pi i mu) * s^m * prod_theta (1 - exp(2 pi i theta) s)^{e_theta}, in the parameter
/// s -> (s^-c, s^a) of its divisor. A sign is stored as mu + 1/2.
struct DivisorFn {
    QZ mu;
    i64 m = 0;
    std::map<QZ, i64> factors;

    static DivisorFn one() { return {}; }
    /// 1 - exp(2 pi i theta) s^k for k != 0.
    static DivisorFn one_minus(const QZ& theta, i64 k);

    bool is_one() const { return mu.num == 0 && m == 0 && factors.empty(); }
    DivisorFn operator*(const DivisorFn& o) const;
    DivisorFn pow(i64 e) const;
    DivisorFn inverse() const { return pow(-1); }
    bool operator==(const DivisorFn& o) const = default;

    /// f(s^-1)
    DivisorFn invert_parameter() const;
    /// f(s^k), k != 0
    DivisorFn substitute_power(i64 k) const;
    /// Norm along t = s^p (p prime), as a function of t.
    DivisorFn norm_power(i64 p) const;

    std::string to_string() const;
};

/// Finite map divisor -> function, trivial components dropped; written additively.
class K1Elem {
public:
    const std::map<PrimVec, DivisorFn>& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    /// Multiplies f into the component of (a, c), given in the parameter attached to the
    /// unnormalized vector (a, c).
    void add_component(i64 a, i64 c, const DivisorFn& f);

    K1Elem operator+(const K1Elem& o) const;
    K1Elem operator-(const K1Elem& o) const { return *this + o.scaled(-1); }
    K1Elem scaled(i64 k) const;
    bool operator==(const K1Elem& o) const = default;
    std::string to_string() const;

private:
    std::map<PrimVec, DivisorFn> comps_;
};

/// <a, c>: 1 - s on the divisor of (a, c); gcd(a, c) = 1.
K1Elem bracket_symbol(i64 a, i64 c);

/// Restriction of 1 - exp(2 pi i theta) z1^x z2^y to the divisor of (a, c), as an element of K_1.
K1Elem restrict_monomial(i64 a, i64 c, const QZ& theta, i64 x, i64 y);

/// Pullback along the right action (z1, z2).g; (g1 g2)^* = g1^* g2^*.
K1Elem pullback(const Mat2& g, const K1Elem& x);
/// Pushforward g_* = (g^-1)^*.
K1Elem pushforward(const Mat2& g, const K1Elem& x);

/// Trace along alpha : (z1, z2) -> (z1, z2^p).
K1Elem pushforward_alpha(i64 p, const K1Elem& x);
/// Pullback along alpha; every component (A, C) must have p not dividing A.
K1Elem pullback_alpha(i64 p, const K1Elem& x);

/// <b, d> - <0, 1> for g = (a b; c d).
K1Elem del_theta(const Mat2& g);

enum class LeftAction { pullback, pushforward };
K1Elem act(LeftAction how, const Mat2& g, const K1Elem& x);

/// Chooses the left action for which dTheta is a cocycle on the generators S and T.
LeftAction calibrate_action();

/// dTheta(g1 g2) == dTheta(g1) + g1 . dTheta(g2).
bool cocycle_holds(LeftAction how, const Mat2& g1, const Mat2& g2);

/// phi_p(a b; c d) = (a, pb; c/p, d).
Mat2 phi_p(i64 p, const Mat2& g);

struct Lemma41Result {
    bool pass = false;
    K1Elem lhs, rhs;
};
/// alpha_*(dTheta(g)) against dTheta(phi_p(g)); requires p | c.
Lemma41Result lemma41_check(i64 p, const Mat2& g);

/// Random element of Gamma_0(N): bottom row (N k, d) with |k| <= bound, completed by extended gcd.
Mat2 random_gamma0(i64 N, std::mt19937_64& rng, i64 bound = 20);

}  // namespace modk2::gm2k1
