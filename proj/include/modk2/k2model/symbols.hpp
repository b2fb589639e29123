#pragma once

// Symbols in K_2 of cyclotomic fields, the symbol map on Manin cosets and
// Sharifi's map varpi_M, plus a finitely presented model of the symbol group.

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "modk2/cyclo/units.hpp"
#include "modk2/lattice.hpp"
#include "modk2/modsym/homology.hpp"

namespace modk2::k2 {

using cyclo::CycNumFormal;

/// Integer combination of wedge pairs e_i ^ e_j (i < j) of the generators of G_M.
/// Bilinearity and antisymmetry are built into this normal form.
class SymbolicK2 {
public:
    SymbolicK2() = default;
    explicit SymbolicK2(i64 level) : level_(level) {}

    static SymbolicK2 wedge(const CycNumFormal& x, const CycNumFormal& y);

    i64 level() const { return level_; }
    const std::map<std::pair<int, int>, i64>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    SymbolicK2& add_scaled(const SymbolicK2& o, i64 k);
    SymbolicK2 operator+(const SymbolicK2& o) const { return SymbolicK2(*this).add_scaled(o, 1); }
    SymbolicK2 operator-(const SymbolicK2& o) const { return SymbolicK2(*this).add_scaled(o, -1); }
    SymbolicK2 scaled(i64 k) const { return SymbolicK2(level_).add_scaled(*this, k); }
    bool operator==(const SymbolicK2& o) const = default;

    SymbolicK2 galois(i64 t) const;
    /// Restriction: the same symbol at level N (M | N).
    SymbolicK2 embed(i64 target_level) const;

    /// Dense coordinates in the basis e_i ^ e_j (i < j).
    IntVec dense() const;
    std::string to_string() const;

private:
    void add_pair(int i, int j, i64 c);
    i64 level_ = 0;
    std::map<std::pair<int, int>, i64> terms_;
};

/// Index of e_i ^ e_j (i < j) among n generators.
int wedge_index(int n, int i, int j);
int wedge_dim(int n);

/// u_c ^ u_d for a coset (c, d) of S^0.
SymbolicK2 sharifi_symbol(i64 level, const modsym::ManinCoset& coset);

/// Sum of sharifi_symbol over a combination of S^0 cosets, weights indexed like xi0_matrix rows.
SymbolicK2 symbol_of_s0_combo(const modsym::HomologyPresentation& P, const IntVec& weights);

/// varpi_M(h) for h in H_1(X_1(M), C^0); throws if h has no S^0-supported preimage.
SymbolicK2 varpi(const modsym::HomologyPresentation& P, const IntVec& h);

/// Kernel basis of xi restricted to S^0, as weight vectors on S^0 cosets.
std::vector<IntVec> xi0_kernel(const modsym::HomologyPresentation& P);

struct K2Relation {
    SparseRow row;
    std::string family;  // "units", "steinberg", "zeta", "sign", "conjugation"
};

/// The wedge square of G_M modulo Steinberg relations and conjugation coinvariance.
class PresentedK2 {
public:
    /// Builds the relations, verifying each Steinberg identity x + y = 1 exactly.
    static PresentedK2 build(i64 level);

    i64 level() const { return level_; }
    int dim() const { return wedge_dim(cyclo::generator_count(level_)); }
    const AbelianQuotient& quotient() const { return quotient_; }
    std::size_t relation_count() const { return relation_count_; }
    const std::map<std::string, std::size_t>& family_counts() const { return family_counts_; }

    IntVec reduce(const SymbolicK2& s) const;
    /// Zero after discarding the primary parts at the given primes (2 for the K_M comparison).
    bool is_zero(const SymbolicK2& s, const std::vector<i64>& discarded = {2}) const;

    /// Format: "presentedk2 <M> <relation count>" then the quotient block.
    void write(std::ostream& os) const;
    static PresentedK2 read(std::istream& is);

    /// The relation rows (regenerated, not stored).
    static std::vector<K2Relation> relations(i64 level);

private:
    i64 level_ = 0;
    std::size_t relation_count_ = 0;
    std::map<std::string, std::size_t> family_counts_;
    AbelianQuotient quotient_;
};

/// Cached model per level (disk cache under modsym::cache_dir()).
std::shared_ptr<const PresentedK2> presented_k2(i64 level);

}  // namespace modk2::k2
