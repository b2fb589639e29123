#pragma once

// Polynomials over F_l, equal-degree factorization of cyclotomic
// polynomials, and arithmetic in F_l[x]/(g) for irreducible g.

#include <memory>
#include <string>
#include <vector>

#include "modk2/arith.hpp"

namespace modk2::cyclo {

/// Dense polynomial over F_l, constant term first, no trailing zeros (zero polynomial is empty).
using FpPoly = std::vector<i64>;

namespace fp {
void trim(FpPoly& a);
FpPoly add(const FpPoly& a, const FpPoly& b, i64 l);
FpPoly sub(const FpPoly& a, const FpPoly& b, i64 l);
FpPoly mul(const FpPoly& a, const FpPoly& b, i64 l);
/// Remainder of a by b (b nonzero).
FpPoly rem(FpPoly a, const FpPoly& b, i64 l);
FpPoly quot(FpPoly a, const FpPoly& b, i64 l);
FpPoly monic(FpPoly a, i64 l);
FpPoly gcd(FpPoly a, FpPoly b, i64 l);
FpPoly powmod(FpPoly base, u64 e, const FpPoly& m, i64 l);
/// Evaluate a(x^k) mod m.
FpPoly compose_power(const FpPoly& a, i64 k, const FpPoly& m, i64 l);
/// Reduce integer coefficients mod l.
FpPoly from_integers(const std::vector<i64>& c, i64 l);
std::string to_string(const FpPoly& a);
}  // namespace fp

/// Monic irreducible factors of Phi_n over F_l (l prime, l not dividing n), sorted
/// lexicographically by coefficient vector from the top degree down.
std::vector<FpPoly> factor_cyclotomic_mod(i64 n, i64 l);

/// Prime factorization of a 64-bit integer (Pollard rho with Miller-Rabin).
std::vector<std::pair<u64, int>> factorize_u64(u64 n);

/// F_l[x]/(g), g monic irreducible of degree f.
class ResidueField {
public:
    ResidueField(i64 l, FpPoly g);

    i64 characteristic() const { return l_; }
    int degree() const { return f_; }
    u64 size() const { return q_; }
    const FpPoly& modulus() const { return g_; }
    /// Fixed generator of the multiplicative group (smallest in a deterministic enumeration).
    const FpPoly& generator() const { return gen_; }
    const std::vector<std::pair<u64, int>>& unit_order_factors() const { return order_factors_; }

    FpPoly reduce(const FpPoly& a) const { return fp::rem(a, g_, l_); }
    FpPoly mul(const FpPoly& a, const FpPoly& b) const { return fp::rem(fp::mul(a, b, l_), g_, l_); }
    FpPoly pow(const FpPoly& a, u64 e) const { return fp::powmod(a, e, g_, l_); }
    /// a^e for a signed exponent (a must be nonzero when e < 0).
    FpPoly pow_signed(const FpPoly& a, i64 e) const;
    FpPoly inv(const FpPoly& a) const;
    FpPoly constant(i64 c) const;
    FpPoly one() const { return constant(1); }
    bool is_one(const FpPoly& a) const { return a == one(); }

    /// Multiplicative order of a nonzero element.
    u64 order(const FpPoly& a) const;
    /// Exponent k in [0, q-1) with generator()^k == a (Pohlig-Hellman with baby-step giant-step).
    u64 dlog(const FpPoly& a) const;

private:
    i64 l_;
    FpPoly g_;
    int f_;
    u64 q_;
    std::vector<std::pair<u64, int>> order_factors_;
    FpPoly gen_;
};

}  // namespace modk2::cyclo
