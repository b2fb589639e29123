#pragma once

// Integer linear algebra over Z: dense matrices, Smith/echelon forms with
// unimodular transforms, and finitely presented abelian quotients Z^n / L.
//
// All public results are int64. Internally every elimination first runs in
// overflow-checked int64 and is transparently re-run over GMP integers if an
// intermediate overflows; the final transforms must fit in int64 again.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modk2/arith.hpp"

namespace modk2 {

using IntVec = std::vector<i64>;

struct ArithmeticOverflow : std::overflow_error {
    using std::overflow_error::overflow_error;
};

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}

    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    i64& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    i64 operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    std::span<const i64> row(int r) const { return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)}; }
    std::span<i64> row(int r) { return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)}; }
    IntVec row_vec(int r) const { auto s = row(r); return {s.begin(), s.end()}; }

    void append_row(std::span<const i64> r);

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix scaled(i64 k) const;
    IntMatrix transposed() const;
    bool operator==(const IntMatrix& o) const = default;

    bool is_zero() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<i64> data_;
};

/// Row vector times matrix, checked.
IntVec vec_mat(std::span<const i64> x, const IntMatrix& m);

i64 checked_add(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);

/// Sparse relation row: (column, coefficient) pairs, any order, duplicates summed.
using SparseRow = std::vector<std::pair<int, i64>>;

/// Z^n modulo a relation lattice L, with explicit coordinates.
///
/// Coordinates of a class are laid out as: one entry per nontrivial invariant
/// factor d_i > 1 (reduced into [0, d_i)), followed by free_rank() integers.
class AbelianQuotient {
public:
    AbelianQuotient() = default;
    static AbelianQuotient build(int ambient_dim, const std::vector<SparseRow>& relations);

    int ambient_dim() const { return n_; }
    int free_rank() const { return free_rank_; }
    const IntVec& torsion() const { return torsion_; }
    int coord_dim() const { return static_cast<int>(torsion_.size()) + free_rank_; }
    bool torsion_free() const { return torsion_.empty(); }

    IntVec project(std::span<const i64> x) const;
    IntVec project_unit(int generator) const;

    /// A preimage in Z^n of the i-th free basis vector.
    IntVec lift_free(int i) const;

    /// Whole class is zero.
    bool is_zero(std::span<const i64> coords) const;
    /// Zero after discarding the l-primary parts of the torsion for every l in `ignored_primes`.
    bool is_zero_ignoring(std::span<const i64> coords, std::span<const i64> ignored_primes) const;

    /// Number of elimination pivots that were units (diagnostic).
    int unit_pivots() const { return static_cast<int>(pivot_col_.size()); }

    void write(std::ostream& os) const;
    static AbelianQuotient read(std::istream& is);

private:
    int n_ = 0;
    // pivot_col_[k] is eliminated as e_{pivot_col_[k]} = -sum pivot_rows_[k] (over free columns)
    std::vector<int> pivot_col_;
    std::vector<SparseRow> pivot_rows_;  // entries indexed by position in free_cols_
    std::vector<int> col_pos_;           // ambient column -> position in free_cols_, or -1 if pivot
    std::vector<int> free_cols_;
    IntMatrix q_;     // residual column transform (m x m)
    IntMatrix qinv_;  // its inverse
    IntVec diag_;     // residual invariant factors (length m, zeros for free part)
    IntVec torsion_;
    std::vector<int> torsion_index_;  // which residual coordinate each torsion coord is
    int first_free_ = 0;
    int free_rank_ = 0;
};

/// Row echelon form H = U * A with U unimodular (row operations only).
class Echelon {
public:
    explicit Echelon(const IntMatrix& a);

    const IntMatrix& h() const { return h_; }
    const IntMatrix& u() const { return u_; }
    int rank() const { return static_cast<int>(pivots_.size()); }
    const std::vector<int>& pivot_cols() const { return pivots_; }

    /// Rows spanning {x : x * A = 0} (a Z-basis of the left kernel).
    std::vector<IntVec> left_kernel() const;

    /// Some x with x * A = b, if one exists.
    std::optional<IntVec> solve(std::span<const i64> b) const;

    /// Product of the pivots: the index of the row lattice in Z^cols when rank == cols.
    i64 pivot_product() const;

private:
    IntMatrix h_;
    IntMatrix u_;
    std::vector<int> pivots_;
};

/// Rank of a matrix over the field with p elements.
int rank_mod_p(const IntMatrix& a, i64 p);

/// Rank over Q.
int rank_q(const IntMatrix& a);

/// A saturated sublattice of Z^k given by a basis (rows), with coordinate solving.
class SubLattice {
public:
    SubLattice() = default;
    explicit SubLattice(IntMatrix basis);

    const IntMatrix& basis() const { return basis_; }
    int rank() const { return basis_.rows(); }
    int ambient() const { return basis_.cols(); }

    bool contains(std::span<const i64> v) const;
    /// Coordinates of v in the basis; throws std::domain_error if v is not in the lattice.
    IntVec coordinates(std::span<const i64> v) const;
    IntVec embed(std::span<const i64> coords) const;

private:
    IntMatrix basis_;
    std::shared_ptr<Echelon> ech_;
};

/// Basis of {x in Z^k : x * A = 0}.
SubLattice kernel_lattice(const IntMatrix& a);

std::string to_string(std::span<const i64> v);

}  // namespace modk2
