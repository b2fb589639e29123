#include "modk2/modsym/operators.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>

namespace modk2::modsym {

MatrixSum diamond_op(i64 M, i64 t) {
    return {{{1, gamma0_with_lower_right(M, t)}}, "diamond_" + std::to_string(mod(t, M))};
}

MatrixSum atkin_lehner_op(i64 M) { return {{{1, Mat2{0, -1, M, 0}}}, "W"}; }

MatrixSum hecke_u_op(i64 M, i64 l) {
    if (!is_prime(l) || M % l != 0) throw std::domain_error("U_l requires a prime l dividing the level");
    MatrixSum op{{}, "U_" + std::to_string(l)};
    for (i64 j = 0; j < l; ++j) op.terms.push_back({1, Mat2{1, j, 0, l}});
    return op;
}

MatrixSum hecke_t_op(i64 M, i64 l) {
    if (!is_prime(l) || M % l == 0) throw std::domain_error("T_l requires a prime l not dividing the level");
    MatrixSum op{{}, "T_" + std::to_string(l)};
    for (i64 j = 0; j < l; ++j) op.terms.push_back({1, Mat2{1, j, 0, l}});
    op.terms.push_back({1, gamma0_with_lower_right(M, l) * Mat2{l, 0, 0, 1}});
    return op;
}

HomVec apply_to_symbol(const HomologyPresentation& target, const MatrixSum& op, const Frac& alpha, const Frac& beta) {
    CosetCombo acc;
    for (auto& [coef, m] : op.terms) {
        for (auto [i, e] : target.decompose_xi(m.act(alpha), m.act(beta))) {
            i64& slot = acc[i];
            slot = checked_add(slot, checked_mul(coef, e));
        }
    }
    return target.coords(acc);
}

IntMatrix operator_matrix(const HomologyPresentation& source, const HomologyPresentation& target, const MatrixSum& op) {
    IntMatrix out(source.rank(), target.rank());
    // image of each coset generator, then combine along basis lifts
    std::map<std::size_t, HomVec> images;
    for (int i = 0; i < source.rank(); ++i) {
        IntVec row(static_cast<std::size_t>(target.rank()), 0);
        for (auto [j, e] : source.basis_lift(i)) {
            auto it = images.find(j);
            if (it == images.end()) {
                auto [alpha, beta] = source.xi_endpoints(j);
                it = images.emplace(j, apply_to_symbol(target, op, alpha, beta)).first;
            }
            for (std::size_t k = 0; k < row.size(); ++k) row[k] = checked_add(row[k], checked_mul(e, it->second[k]));
        }
        for (int k = 0; k < target.rank(); ++k) out(i, k) = row[static_cast<std::size_t>(k)];
    }
    return out;
}

namespace {

void write_matrix(std::ostream& os, const IntMatrix& m) {
    os << "matrix " << m.rows() << ' ' << m.cols() << '\n';
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
        os << '\n';
    }
}

std::optional<IntMatrix> read_matrix(std::istream& is, int rows, int cols) {
    std::string tag;
    int r = 0, c = 0;
    if (!(is >> tag >> r >> c) || tag != "matrix" || r != rows || c != cols) return std::nullopt;
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (!(is >> m(i, j))) return std::nullopt;
    return m;
}

}  // namespace

// Cache file format: "matrix <rows> <cols>" followed by rows of decimal integers.
std::shared_ptr<const IntMatrix> level_operator(i64 M, const MatrixSum& op) {
    static std::mutex mu;
    static std::map<std::pair<i64, std::string>, std::shared_ptr<const IntMatrix>> memo;
    auto pres = presentation(M);
    std::lock_guard lock(mu);
    auto key = std::make_pair(M, op.name);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::shared_ptr<const IntMatrix> result;
    const std::string dir = cache_dir();
    std::filesystem::path file;
    if (!dir.empty()) {
        file = std::filesystem::path(dir) / ("operator_" + std::to_string(M) + "_" + op.name + ".txt");
        if (std::ifstream in(file); in)
            if (auto m = read_matrix(in, pres->rank(), pres->rank())) result = std::make_shared<const IntMatrix>(std::move(*m));
    }
    if (!result) {
        result = std::make_shared<const IntMatrix>(operator_matrix(*pres, *pres, op));
        if (!dir.empty()) {
            std::filesystem::create_directories(dir);
            std::ofstream out(file);
            write_matrix(out, *result);
        }
    }
    memo[key] = result;
    return result;
}

IntMatrix degeneracy_matrix(i64 M, i64 p, Degeneracy which) {
    auto upper = presentation(M * p);
    auto lower = presentation(M);
    MatrixSum op{{{1, which == Degeneracy::pi1 ? Mat2::identity() : Mat2{p, 0, 0, 1}}}, which == Degeneracy::pi1 ? "pi1" : "pi2"};
    return operator_matrix(*upper, *lower, op);
}

IntMatrix pi1_minus_diamond_pi2(i64 M, i64 p) {
    auto upper = presentation(M * p);
    auto lower = presentation(M);
    MatrixSum op{{{1, Mat2::identity()}, {-1, gamma0_with_lower_right(M, p) * Mat2{p, 0, 0, 1}}}, "pi1-<p>pi2"};
    return operator_matrix(*upper, *lower, op);
}

std::vector<std::size_t> degeneracy_cusp_map(i64 M, i64 p, Degeneracy which) {
    CuspSet upper(M * p), lower(M);
    const Mat2 m = which == Degeneracy::pi1 ? Mat2::identity() : Mat2{p, 0, 0, 1};
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < upper.size(); ++i) out.push_back(lower.index_of(m.act(upper.representative(i))));
    return out;
}

}  // namespace modk2::modsym
