#pragma once

// The group G_M generated by -1, zeta_M and the 1 - zeta_M^a, written
// additively as exponent vectors, together with a verified relation lattice.

#include <iosfwd>
#include <string>
#include <vector>

#include "modk2/cyclo/cyclotomic.hpp"
#include "modk2/lattice.hpp"

namespace modk2::cyclo {

/// Generator layout for level M: index 0 is -1, index 1 is zeta, index 1+a is 1 - zeta^a (a = 1..M-1).
inline int generator_count(i64 level) { return static_cast<int>(level) + 1; }
inline int sign_index() { return 0; }
inline int zeta_index() { return 1; }
inline int unit_index(i64 level, i64 a) { return 1 + static_cast<int>(mod(a, level)); }

class CycNumFormal {
public:
    CycNumFormal() = default;
    explicit CycNumFormal(i64 level);  // identity
    CycNumFormal(i64 level, IntVec exps);

    static CycNumFormal minus_one(i64 level);
    static CycNumFormal zeta(i64 level, i64 k = 1);
    /// 1 - zeta^a, a not divisible by M.
    static CycNumFormal one_minus_zeta(i64 level, i64 a);

    i64 level() const { return level_; }
    const IntVec& exps() const { return exps_; }
    i64 sign_exp() const { return exps_[0]; }
    i64 zeta_exp() const { return exps_[1]; }
    i64 unit_exp(i64 a) const { return exps_[static_cast<std::size_t>(unit_index(level_, a))]; }

    CycNumFormal operator+(const CycNumFormal& o) const;
    CycNumFormal operator-(const CycNumFormal& o) const;
    CycNumFormal operator-() const;
    CycNumFormal scaled(i64 k) const;
    bool operator==(const CycNumFormal& o) const = default;

    /// Sign exponent reduced mod 2 and zeta exponent mod M.
    CycNumFormal normalized() const;

    /// sigma_t on exponent vectors.
    CycNumFormal galois(i64 t) const;

    /// Same element viewed at level N (M | N), via zeta_M = zeta_N^(N/M).
    CycNumFormal embed(i64 target_level) const;

    bool is_identity() const;
    std::string to_string() const;

private:
    i64 level_ = 0;
    IntVec exps_;
};

/// Exact value in Q(zeta_M)^x.
CycElt eval_formal(const CycNumFormal& x);

/// Sum of |exponent| over the unit generators.
i64 formal_weight(const CycNumFormal& x);

struct LatticeRelation {
    IntVec vec;          // evaluates to 1 in Q(zeta_M)^x
    std::string family;  // "torsion", "inversion" or "distribution"
};

class RelationLattice {
public:
    /// Builds and exactly verifies every relation; throws std::logic_error on a false relation.
    static RelationLattice build(i64 level);

    i64 level() const { return level_; }
    const std::vector<LatticeRelation>& relations() const { return relations_; }
    const AbelianQuotient& quotient() const { return quotient_; }

    /// Membership of x in the relation lattice.
    bool is_trivial(const CycNumFormal& x) const;
    bool equal(const CycNumFormal& x, const CycNumFormal& y) const { return is_trivial(x - y); }
    /// Lattice test first; if that fails and the difference is small, decides by exact evaluation.
    bool equal_certified(const CycNumFormal& x, const CycNumFormal& y, i64 max_weight = 48) const;

    void write(std::ostream& os) const;
    static RelationLattice read(std::istream& is);

private:
    i64 level_ = 0;
    std::vector<LatticeRelation> relations_;
    AbelianQuotient quotient_;
};

/// Exact check that a relation vector evaluates to 1.
bool relation_holds(i64 level, const IntVec& vec);

}  // namespace modk2::cyclo
