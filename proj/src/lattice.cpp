#include "modk2/lattice.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace modk2 {

i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("int64 add overflow");
    return r;
}

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("int64 mul overflow");
    return r;
}

namespace {

// Overflow-checked int64 scalar; the elimination templates below run on this
// first and fall back to mpz_class.
struct Checked {
    i64 v = 0;
    Checked() = default;
    Checked(i64 x) : v(x) {}  // NOLINT(google-explicit-constructor)
};

Checked operator+(Checked a, Checked b) { return checked_add(a.v, b.v); }
Checked operator-(Checked a, Checked b) {
    i64 r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw ArithmeticOverflow("int64 sub overflow");
    return r;
}
Checked operator*(Checked a, Checked b) { return checked_mul(a.v, b.v); }
Checked operator-(Checked a) {
    if (a.v == INT64_MIN) throw ArithmeticOverflow("int64 negate overflow");
    return -a.v;
}
Checked operator/(Checked a, Checked b) {
    if (a.v == INT64_MIN && b.v == -1) throw ArithmeticOverflow("int64 div overflow");
    return a.v / b.v;
}
Checked operator%(Checked a, Checked b) {
    if (b.v == -1) return i64{0};
    return a.v % b.v;
}

int sgn(Checked a) { return (a.v > 0) - (a.v < 0); }
int sgn(const mpz_class& a) { return ::sgn(a); }
bool abs_less(Checked a, Checked b) {
    // |a| < |b| without negating INT64_MIN
    unsigned __int128 x = a.v < 0 ? static_cast<unsigned __int128>(-(static_cast<__int128>(a.v))) : a.v;
    unsigned __int128 y = b.v < 0 ? static_cast<unsigned __int128>(-(static_cast<__int128>(b.v))) : b.v;
    return x < y;
}
bool abs_less(const mpz_class& a, const mpz_class& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }
i64 to_i64(Checked a) { return a.v; }
i64 to_i64(const mpz_class& a) {
    if (!a.fits_slong_p()) throw ArithmeticOverflow("result does not fit in int64");
    return a.get_si();
}
template <class T>
T from_i64(i64 x) {
    if constexpr (std::is_same_v<T, mpz_class>) return mpz_class(static_cast<long>(x));
    else return T(x);
}
// floor division for nonzero b
template <class T>
T floor_div(const T& a, const T& b) {
    T q = a / b;
    T r = a - q * b;
    if (sgn(r) != 0 && (sgn(r) < 0) != (sgn(b) < 0)) q = q - T(from_i64<T>(1));
    return q;
}

template <class T>
using Dense = std::vector<std::vector<T>>;

template <class F>
auto with_fallback(F&& f) {
    try {
        return f(Checked{});
    } catch (const ArithmeticOverflow&) {
        return f(mpz_class{});
    }
}

// ---------------------------------------------------------------- Smith form

template <class T>
struct SmithResult {
    Dense<T> q, qinv;
    std::vector<T> diag;  // length = min(rows, cols) entries up to rank, then implicit zeros
    int rank = 0;
};

template <class T>
SmithResult<T> smith(Dense<T> a, int rows, int cols) {
    SmithResult<T> res;
    res.q.assign(cols, std::vector<T>(cols, from_i64<T>(0)));
    res.qinv.assign(cols, std::vector<T>(cols, from_i64<T>(0)));
    for (int i = 0; i < cols; ++i) {
        res.q[i][i] = from_i64<T>(1);
        res.qinv[i][i] = from_i64<T>(1);
    }
    auto col_axpy = [&](int dst, int src, const T& k, int row_from) {
        // col_dst -= k * col_src
        for (int i = row_from; i < rows; ++i)
            if (sgn(a[i][src]) != 0) a[i][dst] = a[i][dst] - k * a[i][src];
        for (int i = 0; i < cols; ++i)
            if (sgn(res.q[i][src]) != 0) res.q[i][dst] = res.q[i][dst] - k * res.q[i][src];
        // inverse: row_src += k * row_dst
        for (int j = 0; j < cols; ++j)
            if (sgn(res.qinv[dst][j]) != 0) res.qinv[src][j] = res.qinv[src][j] + k * res.qinv[dst][j];
    };
    auto col_swap = [&](int x, int y) {
        if (x == y) return;
        for (int i = 0; i < rows; ++i) std::swap(a[i][x], a[i][y]);
        for (int i = 0; i < cols; ++i) std::swap(res.q[i][x], res.q[i][y]);
        std::swap(res.qinv[x], res.qinv[y]);
    };
    auto row_axpy = [&](int dst, int src, const T& k, int col_from) {
        for (int j = col_from; j < cols; ++j)
            if (sgn(a[src][j]) != 0) a[dst][j] = a[dst][j] - k * a[src][j];
    };

    int t = 0;
    const int lim = std::min(rows, cols);
    while (t < lim) {
        int bi = -1, bj = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j)
                if (sgn(a[i][j]) != 0 && (bi < 0 || abs_less(a[i][j], a[bi][bj]))) {
                    bi = i;
                    bj = j;
                }
        if (bi < 0) break;
        std::swap(a[t], a[bi]);
        col_swap(t, bj);
        for (;;) {
            bool clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (sgn(a[i][t]) == 0) continue;
                T k = a[i][t] / a[t][t];
                row_axpy(i, t, k, t);
                if (sgn(a[i][t]) != 0) clean = false;
            }
            for (int j = t + 1; j < cols; ++j) {
                if (sgn(a[t][j]) == 0) continue;
                T k = a[t][j] / a[t][t];
                col_axpy(j, t, k, t);
                if (sgn(a[t][j]) != 0) clean = false;
            }
            if (!clean) {
                int mi = t, mj = t;
                for (int i = t + 1; i < rows; ++i)
                    if (sgn(a[i][t]) != 0 && abs_less(a[i][t], a[mi][mj])) { mi = i; mj = t; }
                for (int j = t + 1; j < cols; ++j)
                    if (sgn(a[t][j]) != 0 && abs_less(a[t][j], a[mi][mj])) { mi = t; mj = j; }
                if (mi != t) std::swap(a[t], a[mi]);
                if (mj != t) col_swap(t, mj);
                continue;
            }
            int fi = -1;
            for (int i = t + 1; i < rows && fi < 0; ++i)
                for (int j = t + 1; j < cols; ++j)
                    if (sgn(a[i][j] % a[t][t]) != 0) { fi = i; break; }
            if (fi < 0) break;
            row_axpy(t, fi, from_i64<T>(-1), t);
        }
        if (sgn(a[t][t]) < 0)
            for (int j = t; j < cols; ++j) a[t][j] = -a[t][j];
        res.diag.push_back(a[t][t]);
        ++t;
    }
    res.rank = t;
    return res;
}

// ------------------------------------------------- quotient by sparse lattice

template <class T>
using SRow = std::vector<std::pair<int, T>>;

template <class T>
struct QuotientCore {
    std::vector<int> pivot_col;
    std::vector<SRow<T>> pivot_rows;  // ambient columns
    std::vector<SRow<T>> residual;
};

template <class T>
QuotientCore<T> eliminate_units(int n, const std::vector<SparseRow>& relations) {
    QuotientCore<T> core;
    std::vector<int> where(n, -1);  // column -> pivot index
    std::vector<T> acc(n, from_i64<T>(0));
    std::vector<char> seen(n, 0);
    std::vector<int> touched;

    auto reduce = [&](const SRow<T>& in) {
        touched.clear();
        auto touch = [&](int c) {
            if (!seen[c]) {
                seen[c] = 1;
                touched.push_back(c);
            }
        };
        for (auto& [c, v] : in) {
            touch(c);
            acc[c] = acc[c] + v;
        }
        const std::size_t initial = touched.size();
        for (std::size_t k = 0; k < initial; ++k) {
            int c = touched[k];
            if (where[c] < 0 || sgn(acc[c]) == 0) continue;
            T f = acc[c];
            for (auto& [pc, pv] : core.pivot_rows[where[c]]) {
                touch(pc);
                acc[pc] = acc[pc] - f * pv;
            }
        }
        SRow<T> out;
        for (int c : touched) {
            if (sgn(acc[c]) != 0) out.emplace_back(c, acc[c]);
            acc[c] = from_i64<T>(0);
            seen[c] = 0;
        }
        std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.first < y.first; });
        return out;
    };

    auto try_pivot = [&](SRow<T>& row) {
        int pick = -1;
        for (std::size_t k = 0; k < row.size(); ++k) {
            int s = sgn(row[k].second);
            T one = from_i64<T>(s);
            if (sgn(row[k].second - one) == 0) {
                if (pick < 0 || row[k].first < row[static_cast<std::size_t>(pick)].first) pick = static_cast<int>(k);
            }
        }
        if (pick < 0) return false;
        const int c = row[static_cast<std::size_t>(pick)].first;
        if (sgn(row[static_cast<std::size_t>(pick)].second) < 0)
            for (auto& e : row) e.second = -e.second;
        // back-substitute into existing pivot rows
        for (auto& prow : core.pivot_rows) {
            auto it = std::lower_bound(prow.begin(), prow.end(), c, [](auto& e, int col) { return e.first < col; });
            if (it == prow.end() || it->first != c) continue;
            T f = it->second;
            SRow<T> merged;
            merged.reserve(prow.size() + row.size());
            std::size_t i = 0, j = 0;
            while (i < prow.size() || j < row.size()) {
                if (j == row.size() || (i < prow.size() && prow[i].first < row[j].first)) {
                    merged.push_back(prow[i++]);
                } else if (i == prow.size() || row[j].first < prow[i].first) {
                    merged.emplace_back(row[j].first, -(f * row[j].second));
                    ++j;
                } else {
                    T v = prow[i].second - f * row[j].second;
                    if (sgn(v) != 0) merged.emplace_back(prow[i].first, v);
                    ++i;
                    ++j;
                }
            }
            prow = std::move(merged);
        }
        where[c] = static_cast<int>(core.pivot_rows.size());
        core.pivot_col.push_back(c);
        core.pivot_rows.push_back(row);
        return true;
    };

    std::vector<SRow<T>> deferred;
    for (auto& rel : relations) {
        SRow<T> r;
        r.reserve(rel.size());
        for (auto& [c, v] : rel) {
            if (c < 0 || c >= n) throw std::out_of_range("relation column out of range");
            r.emplace_back(c, from_i64<T>(v));
        }
        auto red = reduce(r);
        if (red.empty()) continue;
        if (!try_pivot(red)) deferred.push_back(std::move(red));
    }
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<SRow<T>> next;
        for (auto& r : deferred) {
            auto red = reduce(r);
            if (red.empty()) continue;
            if (try_pivot(red)) changed = true;
            else next.push_back(std::move(red));
        }
        deferred = std::move(next);
    }
    // deferred rows were reduced before later pivots possibly appeared; one more pass
    for (auto& r : deferred) r = reduce(r);
    std::erase_if(deferred, [](auto& r) { return r.empty(); });
    core.residual = std::move(deferred);
    return core;
}

template <class T>
void build_quotient(int n, const std::vector<SparseRow>& relations, std::vector<int>& pivot_col, std::vector<SparseRow>& pivot_rows, std::vector<int>& col_pos,
                               std::vector<int>& free_cols, IntMatrix& q, IntMatrix& qinv, IntVec& diag) {
    auto core = eliminate_units<T>(n, relations);
    col_pos.assign(n, -1);
    std::vector<char> is_pivot(n, 0);
    for (int c : core.pivot_col) is_pivot[c] = 1;
    free_cols.clear();
    for (int c = 0; c < n; ++c)
        if (!is_pivot[c]) {
            col_pos[c] = static_cast<int>(free_cols.size());
            free_cols.push_back(c);
        }
    const int m = static_cast<int>(free_cols.size());
    pivot_col = core.pivot_col;
    pivot_rows.clear();
    for (auto& prow : core.pivot_rows) {
        SparseRow r;
        for (auto& [c, v] : prow)
            if (!is_pivot[c]) r.emplace_back(col_pos[c], to_i64(v));
        pivot_rows.push_back(std::move(r));
    }
    Dense<T> res(core.residual.size(), std::vector<T>(m, from_i64<T>(0)));
    for (std::size_t i = 0; i < core.residual.size(); ++i)
        for (auto& [c, v] : core.residual[i]) res[i][col_pos[c]] = v;
    auto snf = smith<T>(std::move(res), static_cast<int>(core.residual.size()), m);
    // only the free coordinates are exact; a torsion coordinate matters mod its invariant factor
    for (int j = 0; j < snf.rank; ++j) {
        const T& d = snf.diag[j];
        for (int i = 0; i < m; ++i) {
            T r = snf.q[i][j] % d;
            if (sgn(r) < 0) r = r + d;
            snf.q[i][j] = r;
            snf.qinv[j][i] = from_i64<T>(0);
        }
    }
    q = IntMatrix(m, m);
    qinv = IntMatrix(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            q(i, j) = to_i64(snf.q[i][j]);
            qinv(i, j) = to_i64(snf.qinv[i][j]);
        }
    diag.assign(m, 0);
    for (int i = 0; i < snf.rank; ++i) diag[i] = to_i64(snf.diag[i]);
}

// --------------------------------------------------------------- echelon form

template <class T>
struct EchelonCore {
    Dense<T> h, u;
    std::vector<int> pivots;
};

template <class T>
EchelonCore<T> echelon(const IntMatrix& a) {
    const int rows = a.rows(), cols = a.cols();
    EchelonCore<T> e;
    e.h.assign(rows, std::vector<T>(cols));
    e.u.assign(rows, std::vector<T>(rows, from_i64<T>(0)));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) e.h[i][j] = from_i64<T>(a(i, j));
        e.u[i][i] = from_i64<T>(1);
    }
    auto axpy = [&](int dst, int src, const T& k, int col_from) {
        for (int j = col_from; j < cols; ++j)
            if (sgn(e.h[src][j]) != 0) e.h[dst][j] = e.h[dst][j] - k * e.h[src][j];
        for (int j = 0; j < rows; ++j)
            if (sgn(e.u[src][j]) != 0) e.u[dst][j] = e.u[dst][j] - k * e.u[src][j];
    };
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        for (;;) {
            int best = -1;
            for (int i = r; i < rows; ++i)
                if (sgn(e.h[i][c]) != 0 && (best < 0 || abs_less(e.h[i][c], e.h[best][c]))) best = i;
            if (best < 0) break;
            std::swap(e.h[r], e.h[best]);
            std::swap(e.u[r], e.u[best]);
            bool clean = true;
            for (int i = r + 1; i < rows; ++i) {
                if (sgn(e.h[i][c]) == 0) continue;
                T k = e.h[i][c] / e.h[r][c];
                axpy(i, r, k, c);
                if (sgn(e.h[i][c]) != 0) clean = false;
            }
            if (clean) break;
        }
        if (sgn(e.h[r][c]) == 0) continue;
        if (sgn(e.h[r][c]) < 0) {
            for (auto& x : e.h[r]) x = -x;
            for (auto& x : e.u[r]) x = -x;
        }
        for (int i = 0; i < r; ++i) {
            if (sgn(e.h[i][c]) == 0) continue;
            T k = floor_div(e.h[i][c], e.h[r][c]);
            if (sgn(k) != 0) axpy(i, r, k, c);
        }
        e.pivots.push_back(c);
        ++r;
    }
    return e;
}

}  // namespace

// ------------------------------------------------------------------ IntMatrix

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, int cols) {
    IntMatrix m(static_cast<int>(rows.size()), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(rows[i].size()) != cols) throw std::invalid_argument("from_rows: ragged rows");
        std::copy(rows[i].begin(), rows[i].end(), m.row(static_cast<int>(i)).begin());
    }
    return m;
}

void IntMatrix::append_row(std::span<const i64> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = static_cast<int>(r.size());
    if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("append_row: width mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    IntMatrix out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            i64 a = (*this)(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                if (o(k, j) != 0) out(i, j) = checked_add(out(i, j), checked_mul(a, o(k, j)));
        }
    return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const { return *this + o.scaled(-1); }

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = checked_add(data_[i], o.data_[i]);
    return out;
}

IntMatrix IntMatrix::scaled(i64 k) const {
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = checked_mul(data_[i], k);
    return out;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](i64 x) { return x == 0; });
}

IntVec vec_mat(std::span<const i64> x, const IntMatrix& m) {
    if (static_cast<int>(x.size()) != m.rows()) throw std::invalid_argument("vec_mat: shape mismatch");
    IntVec out(m.cols(), 0);
    for (int i = 0; i < m.rows(); ++i) {
        if (x[i] == 0) continue;
        auto r = m.row(i);
        for (int j = 0; j < m.cols(); ++j)
            if (r[j] != 0) out[j] = checked_add(out[j], checked_mul(x[i], r[j]));
    }
    return out;
}

// ------------------------------------------------------------ AbelianQuotient

AbelianQuotient AbelianQuotient::build(int ambient_dim, const std::vector<SparseRow>& relations) {
    AbelianQuotient out;
    out.n_ = ambient_dim;
    auto run = [&](auto tag) {
        using T = decltype(tag);
        build_quotient<T>(ambient_dim, relations, out.pivot_col_, out.pivot_rows_, out.col_pos_, out.free_cols_, out.q_,
                          out.qinv_, out.diag_);
        return 0;
    };
    with_fallback(run);
    const int m = static_cast<int>(out.free_cols_.size());
    int rank = 0;
    while (rank < m && out.diag_[rank] != 0) ++rank;
    out.torsion_.clear();
    out.torsion_index_.clear();
    for (int i = 0; i < rank; ++i)
        if (out.diag_[i] > 1) {
            out.torsion_.push_back(out.diag_[i]);
            out.torsion_index_.push_back(i);
        }
    out.first_free_ = rank;
    out.free_rank_ = m - rank;
    return out;
}

IntVec AbelianQuotient::project(std::span<const i64> x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("project: dimension mismatch");
    const int m = static_cast<int>(free_cols_.size());
    IntVec xf(m, 0);
    for (int c = 0; c < n_; ++c)
        if (x[c] != 0 && col_pos_[c] >= 0) xf[col_pos_[c]] = checked_add(xf[col_pos_[c]], x[c]);
    for (std::size_t k = 0; k < pivot_col_.size(); ++k) {
        i64 v = x[pivot_col_[k]];
        if (v == 0) continue;
        for (auto& [pos, coef] : pivot_rows_[k]) xf[pos] = checked_add(xf[pos], -checked_mul(v, coef));
    }
    IntVec y = vec_mat(xf, q_);
    IntVec out;
    out.reserve(coord_dim());
    for (std::size_t t = 0; t < torsion_.size(); ++t) out.push_back(mod(y[torsion_index_[t]], torsion_[t]));
    for (int i = first_free_; i < m; ++i) out.push_back(y[i]);
    return out;
}

IntVec AbelianQuotient::project_unit(int generator) const {
    IntVec x(n_, 0);
    x.at(generator) = 1;
    return project(x);
}

IntVec AbelianQuotient::lift_free(int i) const {
    if (i < 0 || i >= free_rank_) throw std::out_of_range("lift_free");
    IntVec x(n_, 0);
    auto r = qinv_.row(first_free_ + i);
    for (std::size_t pos = 0; pos < free_cols_.size(); ++pos) x[free_cols_[pos]] = r[pos];
    return x;
}

bool AbelianQuotient::is_zero(std::span<const i64> coords) const {
    return std::all_of(coords.begin(), coords.end(), [](i64 v) { return v == 0; });
}

bool AbelianQuotient::is_zero_ignoring(std::span<const i64> coords, std::span<const i64> ignored_primes) const {
    for (std::size_t t = 0; t < torsion_.size(); ++t) {
        i64 d = torsion_[t];
        for (i64 p : ignored_primes)
            while (d % p == 0) d /= p;
        if (coords[t] % d != 0) return false;
    }
    for (std::size_t i = torsion_.size(); i < coords.size(); ++i)
        if (coords[i] != 0) return false;
    return true;
}

// Text format:
//   quotient <n> <m> <npivots>
//   free <m column indices>
//   pivot <col> <len> (<pos> <coef>)*        -- npivots lines
//   diag <m entries>
//   q <m*m entries row-major>
//   qinv <m*m entries row-major>
void AbelianQuotient::write(std::ostream& os) const {
    const int m = static_cast<int>(free_cols_.size());
    os << "quotient " << n_ << ' ' << m << ' ' << pivot_col_.size() << '\n';
    os << "free";
    for (int c : free_cols_) os << ' ' << c;
    os << '\n';
    for (std::size_t k = 0; k < pivot_col_.size(); ++k) {
        os << "pivot " << pivot_col_[k] << ' ' << pivot_rows_[k].size();
        for (auto& [p, v] : pivot_rows_[k]) os << ' ' << p << ' ' << v;
        os << '\n';
    }
    os << "diag";
    for (i64 d : diag_) os << ' ' << d;
    os << "\nq";
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) os << ' ' << q_(i, j);
    os << "\nqinv";
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) os << ' ' << qinv_(i, j);
    os << '\n';
}

namespace {
void expect(std::istream& is, const std::string& word) {
    std::string w;
    if (!(is >> w) || w != word) throw std::runtime_error("parse error: expected '" + word + "'");
}
}  // namespace

AbelianQuotient AbelianQuotient::read(std::istream& is) {
    AbelianQuotient out;
    std::size_t npiv = 0;
    int m = 0;
    expect(is, "quotient");
    is >> out.n_ >> m >> npiv;
    expect(is, "free");
    out.free_cols_.resize(m);
    out.col_pos_.assign(out.n_, -1);
    for (int i = 0; i < m; ++i) {
        is >> out.free_cols_[i];
        out.col_pos_.at(out.free_cols_[i]) = i;
    }
    for (std::size_t k = 0; k < npiv; ++k) {
        expect(is, "pivot");
        int c = 0;
        std::size_t len = 0;
        is >> c >> len;
        SparseRow r(len);
        for (auto& [p, v] : r) is >> p >> v;
        out.pivot_col_.push_back(c);
        out.pivot_rows_.push_back(std::move(r));
    }
    expect(is, "diag");
    out.diag_.resize(m);
    for (auto& d : out.diag_) is >> d;
    out.q_ = IntMatrix(m, m);
    out.qinv_ = IntMatrix(m, m);
    expect(is, "q");
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) is >> out.q_(i, j);
    expect(is, "qinv");
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) is >> out.qinv_(i, j);
    if (!is) throw std::runtime_error("parse error: truncated quotient");
    int rank = 0;
    while (rank < m && out.diag_[rank] != 0) ++rank;
    for (int i = 0; i < rank; ++i)
        if (out.diag_[i] > 1) {
            out.torsion_.push_back(out.diag_[i]);
            out.torsion_index_.push_back(i);
        }
    out.first_free_ = rank;
    out.free_rank_ = m - rank;
    return out;
}

// -------------------------------------------------------------------- Echelon

Echelon::Echelon(const IntMatrix& a) {
    auto run = [&](auto tag) {
        using T = decltype(tag);
        auto e = echelon<T>(a);
        h_ = IntMatrix(a.rows(), a.cols());
        u_ = IntMatrix(a.rows(), a.rows());
        for (int i = 0; i < a.rows(); ++i) {
            for (int j = 0; j < a.cols(); ++j) h_(i, j) = to_i64(e.h[i][j]);
            for (int j = 0; j < a.rows(); ++j) u_(i, j) = to_i64(e.u[i][j]);
        }
        pivots_ = e.pivots;
        return 0;
    };
    with_fallback(run);
}

std::vector<IntVec> Echelon::left_kernel() const {
    std::vector<IntVec> out;
    for (int i = rank(); i < u_.rows(); ++i) out.push_back(u_.row_vec(i));
    return out;
}

std::optional<IntVec> Echelon::solve(std::span<const i64> b) const {
    if (static_cast<int>(b.size()) != h_.cols()) throw std::invalid_argument("solve: dimension mismatch");
    IntVec z(h_.rows(), 0);
    IntVec resid(b.begin(), b.end());
    for (int k = 0; k < rank(); ++k) {
        int c = pivots_[k];
        i64 piv = h_(k, c);
        if (resid[c] % piv != 0) return std::nullopt;
        z[k] = resid[c] / piv;
        if (z[k] == 0) continue;
        auto hr = h_.row(k);
        for (int j = c; j < h_.cols(); ++j)
            if (hr[j] != 0) resid[j] = checked_add(resid[j], -checked_mul(z[k], hr[j]));
    }
    if (std::any_of(resid.begin(), resid.end(), [](i64 v) { return v != 0; })) return std::nullopt;
    return vec_mat(z, u_);
}

i64 Echelon::pivot_product() const {
    i64 p = 1;
    for (int k = 0; k < rank(); ++k) p = checked_mul(p, h_(k, pivots_[k]));
    return p;
}

int rank_mod_p(const IntMatrix& a, i64 p) {
    std::vector<IntVec> m;
    for (int i = 0; i < a.rows(); ++i) {
        IntVec r(a.cols());
        for (int j = 0; j < a.cols(); ++j) r[j] = mod(a(i, j), p);
        m.push_back(std::move(r));
    }
    int rank = 0;
    for (int c = 0; c < a.cols() && rank < a.rows(); ++c) {
        int piv = -1;
        for (int i = rank; i < a.rows(); ++i)
            if (m[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        i64 inv = inv_mod(m[rank][c], p);
        for (int i = rank + 1; i < a.rows(); ++i) {
            if (m[i][c] == 0) continue;
            i64 f = mul_mod(m[i][c], inv, p);
            for (int j = c; j < a.cols(); ++j) m[i][j] = mod(m[i][j] - mul_mod(f, m[rank][j], p), p);
        }
        ++rank;
    }
    return rank;
}

int rank_q(const IntMatrix& a) { return Echelon(a).rank(); }

// ----------------------------------------------------------------- SubLattice

SubLattice::SubLattice(IntMatrix basis) : basis_(std::move(basis)), ech_(std::make_shared<Echelon>(basis_)) {
    if (ech_->rank() != basis_.rows()) throw std::invalid_argument("SubLattice: basis rows are dependent");
}

bool SubLattice::contains(std::span<const i64> v) const {
    if (basis_.rows() == 0) return std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; });
    return ech_->solve(v).has_value();
}

IntVec SubLattice::coordinates(std::span<const i64> v) const {
    if (basis_.rows() == 0) {
        if (!std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; }))
            throw std::domain_error("vector not in sublattice");
        return {};
    }
    auto s = ech_->solve(v);
    if (!s) throw std::domain_error("vector not in sublattice");
    return *s;
}

IntVec SubLattice::embed(std::span<const i64> coords) const {
    if (basis_.rows() == 0) return IntVec(basis_.cols(), 0);
    return vec_mat(coords, basis_);
}

SubLattice kernel_lattice(const IntMatrix& a) {
    Echelon e(a);
    auto k = e.left_kernel();
    return SubLattice(IntMatrix::from_rows(k, a.rows()));
}

std::string to_string(std::span<const i64> v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    os << ']';
    return os.str();
}

}  // namespace modk2
