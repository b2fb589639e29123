#pragma once

// Manin-symbol presentation of H_1(X_1(M), C_M, Z) using the modified Manin
// map xi_M = W_M o (usual Manin map): the generator attached to the coset with
// bottom row (c, d) is the class {-d/(Mb), -c/(Ma)}.

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modk2/lattice.hpp"
#include "modk2/mat2.hpp"
#include "modk2/modsym/cusps.hpp"

namespace modk2::modsym {

struct ManinCoset {
    i64 c = 0;
    i64 d = 0;
    bool in_s0 = false;  // M does not divide c and M does not divide d
    bool operator==(const ManinCoset& o) const { return c == o.c && d == o.d; }
};

/// Canonical representative of +-(c, d) mod M.
std::pair<i64, i64> normalize_coset(i64 M, i64 c, i64 d);

/// All normalized cosets (c, d) mod M with gcd(c, d, M) == 1, in increasing (c, d) order.
std::vector<ManinCoset> enumerate_cosets(i64 M);

/// Number of pairs (c, d) mod M with gcd(c, d, M) == 1 before identifying (c, d) with (-c, -d).
i64 raw_coset_count(i64 M);

/// Coordinates relative to a presentation: a vector in the free quotient.
using HomVec = IntVec;

/// Integer combination of coset indices.
using CosetCombo = std::map<std::size_t, i64>;

class HomologyPresentation {
public:
    explicit HomologyPresentation(i64 level);

    i64 level() const { return level_; }
    const std::vector<ManinCoset>& cosets() const { return cosets_; }
    std::size_t coset_index(i64 c, i64 d) const;
    const CuspSet& cusps() const { return cusps_; }
    const AbelianQuotient& quotient() const { return quotient_; }

    /// rank of H_1(X_1(M), C_M, Z)
    int rank() const { return quotient_.free_rank(); }

    /// A determinant-one lift of coset i.
    Mat2 lift(std::size_t i) const;
    /// Endpoints {alpha, beta} of xi_M(coset i).
    std::pair<Frac, Frac> xi_endpoints(std::size_t i) const;

    /// xi_M(coset i) in coordinates.
    HomVec manin_map(std::size_t i) const;
    HomVec coords(const CosetCombo& combo) const;
    /// A coset combination representing free basis vector i.
    CosetCombo basis_lift(int i) const;

    /// {alpha, beta} as a combination of xi-generators.
    CosetCombo decompose_xi(const Frac& alpha, const Frac& beta) const;
    /// {alpha, beta} as a combination of usual Manin symbols (g -> {g0, g oo}).
    CosetCombo decompose_usual(const Frac& alpha, const Frac& beta) const;
    HomVec symbol(const Frac& alpha, const Frac& beta) const { return coords(decompose_xi(alpha, beta)); }

    /// Boundary of a class as a vector over cusps.
    IntVec boundary(const HomVec& h) const;
    /// rank x #cusps matrix: boundary of each free basis vector.
    const IntMatrix& boundary_matrix() const { return boundary_; }

    /// H_1(X_1(M), C, Z) for a set of cusp indices C, as a sublattice of the coordinates.
    SubLattice sub_homology(const std::vector<std::size_t>& cusp_subset) const;
    SubLattice absolute_homology() const { return sub_homology({}); }
    /// Cusp indices of C^0.
    std::vector<std::size_t> c0_cusps() const;

    /// Rows: coordinates of xi(coset) for every coset in S^0 (in coset order).
    const IntMatrix& xi0_matrix() const { return xi0_; }
    const std::vector<std::size_t>& s0_indices() const { return s0_; }

    void write(std::ostream& os) const;
    /// Reads a cached quotient and checks it against the level's cosets.
    static std::shared_ptr<HomologyPresentation> read(std::istream& is);

private:
    HomologyPresentation(i64 level, std::optional<AbelianQuotient> q);
    void build(std::optional<AbelianQuotient> q);

    i64 level_;
    std::vector<ManinCoset> cosets_;
    std::vector<int> index_;  // c*M + d -> coset index or -1
    CuspSet cusps_;
    AbelianQuotient quotient_;
    IntMatrix boundary_;
    IntMatrix xi0_;
    std::vector<std::size_t> s0_;
};

/// Cached presentation per level (single construction; disk cache when a cache directory is set).
std::shared_ptr<const HomologyPresentation> presentation(i64 level);

/// Directory for on-disk caches; empty disables disk caching.
void set_cache_dir(const std::string& dir);
std::string cache_dir();

}  // namespace modk2::modsym
