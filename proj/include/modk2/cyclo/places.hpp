#pragma once

// Places of Q(zeta_M) above a rational prime l, residues of elements of G_M,
// tame symbols, the Galois action on places, and norms between levels.

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "modk2/cyclo/finite_field.hpp"
#include "modk2/cyclo/units.hpp"

namespace modk2::cyclo {

struct Place {
    i64 level = 0;
    i64 ell = 0;
    int k = 0;           // l^k || level
    i64 ell_k = 1;       // l^k
    i64 m_prime = 1;     // prime-to-l part of the level
    i64 e = 1;           // phi(l^k)
    int f = 1;           // degree of g
    int index = 0;       // position among the places above l
    bool sanity = false; // l does not divide the level
    i64 zeta_exp = 0;    // zeta_M reduces to x^zeta_exp
    std::shared_ptr<const ResidueField> field;
    // per generator of G_M: valuation and unit residue for the uniformizer 1 - zeta_{l^k}
    std::vector<i64> gen_val;
    std::vector<FpPoly> gen_res;

    const FpPoly& modulus() const { return field->modulus(); }
    std::string label() const;
};

/// Nonzero element of a residue field.
struct ResidueElt {
    std::shared_ptr<const ResidueField> field;
    FpPoly value;

    ResidueElt operator*(const ResidueElt& o) const;
    ResidueElt inverse() const;
    ResidueElt pow(i64 e) const;
    bool operator==(const ResidueElt& o) const { return value == o.value && field->modulus() == o.field->modulus(); }
    bool is_one() const { return field->is_one(value); }
    std::string to_string() const { return fp::to_string(value); }
};

/// Places above l. Requires l | M unless `sanity_mode` (then the places are flagged).
std::vector<Place> places_over(i64 level, i64 ell, bool sanity_mode = false);

struct ValuationResidue {
    i64 valuation;
    ResidueElt residue;
};

ValuationResidue valuation_and_residue(const Place& w, const CycNumFormal& x);

/// (-1)^{v(x)v(y)} x^{v(y)} y^{-v(x)} in k(w).
ResidueElt tame_pair(const Place& w, const CycNumFormal& x, const CycNumFormal& y);

/// All places of one level above a chosen list of primes.
class PlaceTable {
public:
    PlaceTable() = default;
    /// Primes default to those dividing the level; primes not dividing it give sanity places.
    explicit PlaceTable(i64 level, std::vector<i64> primes = {});

    i64 level() const { return level_; }
    const std::vector<i64>& primes() const { return primes_; }
    const std::vector<Place>& places() const { return places_; }
    std::size_t size() const { return places_.size(); }
    const Place& operator[](std::size_t i) const { return places_[i]; }

    /// Index of sigma_t(w).
    std::size_t galois_target(i64 t, std::size_t w) const;
    /// The isomorphism k(w) -> k(sigma_t w) induced by sigma_t.
    FpPoly galois_transport(i64 t, std::size_t w, const FpPoly& value) const;

    /// Format:
    ///   places <M> <count> <primes...>
    ///   place <l> <index> <k> <e> <f> <sanity 0|1> <deg g + 1 coefficients of g>
    void write(std::ostream& os) const;
    /// Reads a table and checks it against a fresh computation.
    static PlaceTable read(std::istream& is);

private:
    i64 level_ = 0;
    std::vector<i64> primes_;
    std::vector<Place> places_;
};

/// Places of level N above those of level M (M | N), with residue-field norms.
class PlaceMatching {
public:
    PlaceMatching(const PlaceTable& upper, const PlaceTable& lower);

    /// Index in the lower table of the place below upper place w.
    std::size_t below(std::size_t w) const { return below_[w]; }
    /// Norm from k(w) to k(v), expressed in the coordinates of k(v).
    FpPoly norm_down(std::size_t w, const FpPoly& z) const;
    /// The embedding k(v) -> k(w) applied to an element of k(v).
    FpPoly embed_up(std::size_t w, const FpPoly& y) const;

private:
    const PlaceTable* upper_;
    const PlaceTable* lower_;
    std::vector<std::size_t> below_;
    std::vector<FpPoly> image_of_y_;  // image of the generator of k(v) inside k(w)
};

}  // namespace modk2::cyclo
