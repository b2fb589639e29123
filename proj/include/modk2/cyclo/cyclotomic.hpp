#pragma once

// Exact arithmetic in Q(zeta_M), represented modulo the M-th cyclotomic
// polynomial so that every element has a unique coefficient vector of length
// phi(M).

#include <gmpxx.h>

#include <string>
#include <vector>

#include "modk2/arith.hpp"

namespace modk2::cyclo {

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<i64>& cyclotomic_polynomial(i64 n);

class CycElt {
public:
    CycElt() = default;
    explicit CycElt(i64 level);  // zero

    static CycElt from_int(i64 level, i64 v);
    static CycElt from_rational(i64 level, const mpq_class& v);
    /// zeta_M^a.
    static CycElt zeta_power(i64 level, i64 a);
    /// 1 - zeta_M^a.
    static CycElt one_minus_zeta(i64 level, i64 a);

    i64 level() const { return level_; }
    int degree_bound() const { return static_cast<int>(coeffs_.size()); }
    const std::vector<mpq_class>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;

    CycElt operator+(const CycElt& o) const;
    CycElt operator-(const CycElt& o) const;
    CycElt operator-() const;
    CycElt operator*(const CycElt& o) const;
    CycElt operator/(const CycElt& o) const;
    CycElt& operator*=(const CycElt& o) { return *this = *this * o; }
    bool operator==(const CycElt& o) const;

    CycElt inverse() const;
    CycElt pow(i64 e) const;

    /// sigma_t : zeta_M -> zeta_M^t (t coprime to M).
    CycElt galois(i64 t) const;

    /// Image in Q(zeta_N) for M | N, via zeta_M = zeta_N^(N/M).
    CycElt embed(i64 target_level) const;

    /// Rational absolute norm to Q (product of all Galois conjugates).
    mpq_class absolute_norm() const;

    std::string to_string() const;

private:
    CycElt(i64 level, std::vector<mpq_class> coeffs);
    void require_same_level(const CycElt& o) const;
    // reduce a polynomial of arbitrary degree modulo Phi_M
    static std::vector<mpq_class> reduce(i64 level, std::vector<mpq_class> poly);

    i64 level_ = 0;
    std::vector<mpq_class> coeffs_;
};

}  // namespace modk2::cyclo
