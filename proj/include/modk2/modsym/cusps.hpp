#pragma once

// Cusps of X_1(M): classification up to Gamma_1(M) (with -1), the C^0 flag,
// diamond orbits, and closed-form counts used as independent cross-checks.

#include <string>
#include <vector>

#include "modk2/mat2.hpp"

namespace modk2::modsym {

/// Class invariant of a cusp a/b: (b mod M, a mod gcd(b, M)), minimized over the global sign.
struct CuspKey {
    i64 b = 0;
    i64 a = 0;
    bool operator==(const CuspKey& o) const = default;
    auto operator<=>(const CuspKey& o) const = default;
};

CuspKey cusp_key(i64 M, const Frac& x);

class CuspSet {
public:
    explicit CuspSet(i64 level);

    i64 level() const { return level_; }
    std::size_t size() const { return keys_.size(); }
    const CuspKey& key(std::size_t i) const { return keys_[i]; }
    /// A fraction representing class i.
    const Frac& representative(std::size_t i) const { return reps_[i]; }

    std::size_t index_of(const Frac& x) const;
    std::size_t index_of_key(const CuspKey& k) const;

    /// Classes a/b with gcd(b, M) > 1, i.e. no representative has a divisible by M.
    bool in_c0(std::size_t i) const;

    /// Index of the class of <t> applied to class i.
    std::size_t diamond(i64 t, std::size_t i) const;

    /// Orbits of a set of units mod M (closed under multiplication) acting through diamonds.
    std::vector<std::vector<std::size_t>> orbits(const std::vector<i64>& units) const;
    std::vector<std::size_t> diamond_orbit_of(const Frac& x) const;

    std::size_t infinity() const { return index_of(Frac::infinity()); }
    std::size_t zero() const { return index_of(Frac::make(0, 1)); }

    std::string label(std::size_t i) const { return representative(i).to_string(); }

private:
    i64 level_;
    std::vector<CuspKey> keys_;
    std::vector<Frac> reps_;
};

/// Units t mod N with t = 1 mod M.
std::vector<i64> kernel_units(i64 N, i64 M);

/// Number of cusps of X_1(M) by the divisor-sum formula.
i64 cusp_count_formula(i64 M);

/// Genus of X_1(M) for M >= 4 by the Riemann-Hurwitz formula (no elliptic points).
i64 genus_formula(i64 M);

}  // namespace modk2::modsym
