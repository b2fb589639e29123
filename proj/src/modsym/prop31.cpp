#include "modk2/modsym/prop31.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <sstream>

#include "modk2/modsym/homology.hpp"
#include "modk2/modsym/operators.hpp"

namespace modk2::modsym {

namespace {

// P^1(Z/M) point, normalized under unit scaling
std::pair<i64, i64> p1_normalize(i64 M, i64 c, i64 d, const std::vector<i64>& units) {
    std::pair<i64, i64> best{M, M};
    for (i64 u : units) best = std::min(best, {mod(u * c, M), mod(u * d, M)});
    return best;
}

struct Letter {
    int gen;  // Schreier generator index, or -1 for a tree edge (trivial element)
    i64 diamond;
};

}  // namespace

std::string Prop31Report::summary() const {
    std::ostringstream os;
    os << "M=" << level << " #G=" << group_order << " rank(Z[GxG0]/I)=" << module_rank << " expected=" << absolute_rank + group_order - 1
       << " rank H1(X,C0)=" << c0_rank << (module_torsion_free ? "" : " torsion!") << (relations_vanish ? "" : " relations-nonzero!")
       << (surjective ? " surjective" : " NOT surjective");
    return os.str();
}

Prop31Report prop31_check(i64 M) {
    if (M <= 3) throw std::domain_error("prop31_check: M must be > 3");
    Prop31Report rep;
    rep.level = M;
    const auto units = units_mod(M);

    // G = (Z/M)^x / +-1, labelled by min(t, M - t)
    std::vector<i64> G;
    for (i64 t : units)
        if (t <= M - t) G.push_back(t);
    std::map<i64, int> g_index;
    for (std::size_t i = 0; i < G.size(); ++i) g_index[G[i]] = static_cast<int>(i);
    auto g_of = [&](i64 t) { t = mod(t, M); return g_index.at(std::min(t, M - t)); };
    rep.group_order = static_cast<int>(G.size());

    // cosets of Gamma_0(M) in PSL_2(Z) <-> P^1(Z/M) via bottom rows, right action
    const Mat2 S{0, -1, 1, 0}, U{0, -1, 1, 1};
    const Mat2 gens[2] = {S, U};
    std::map<std::pair<i64, i64>, int> coset_id;
    std::vector<Mat2> transversal;
    std::vector<std::pair<i64, i64>> points;
    auto point_of = [&](const Mat2& g) { return p1_normalize(M, g.c, g.d, units); };
    coset_id[point_of(Mat2::identity())] = 0;
    transversal.push_back(Mat2::identity());
    points.push_back(point_of(Mat2::identity()));
    std::vector<std::array<int, 2>> action;   // coset index after right multiplication
    std::vector<std::array<bool, 2>> tree;    // edge used to define the target transversal
    std::deque<int> queue{0};
    action.push_back({-1, -1});
    tree.push_back({false, false});
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        for (int x = 0; x < 2; ++x) {
            Mat2 g = transversal[static_cast<std::size_t>(i)] * gens[x];
            auto pt = point_of(g);
            auto it = coset_id.find(pt);
            if (it == coset_id.end()) {
                int j = static_cast<int>(transversal.size());
                coset_id[pt] = j;
                transversal.push_back(g);
                points.push_back(pt);
                action.push_back({-1, -1});
                tree.push_back({false, false});
                action[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)] = j;
                tree[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)] = true;
                queue.push_back(j);
            } else {
                action[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)] = it->second;
            }
        }
    }
    const std::size_t n_cosets = transversal.size();

    // Schreier generators y_{i,x} = t_i x t_{ix}^{-1} for non-tree edges
    std::map<std::pair<int, int>, int> gen_id;
    std::vector<Mat2> gen_mat;
    for (std::size_t i = 0; i < n_cosets; ++i) {
        for (int x = 0; x < 2; ++x) {
            if (tree[i][static_cast<std::size_t>(x)]) continue;
            const int j = action[i][static_cast<std::size_t>(x)];
            Mat2 y = transversal[i] * gens[x] * transversal[static_cast<std::size_t>(j)].inverse_sl2();
            if (mod(y.c, M) != 0) throw std::logic_error("prop31: Schreier generator outside Gamma_0");
            gen_id[{static_cast<int>(i), x}] = static_cast<int>(gen_mat.size());
            gen_mat.push_back(y);
        }
    }
    const int n_gens = static_cast<int>(gen_mat.size());
    rep.schreier_generators = n_gens;
    auto col = [&](int g, int y) { return g * n_gens + y; };

    // rewrite a word in {S, U} starting at coset i as Schreier letters
    auto rewrite = [&](int i, const std::vector<int>& word) {
        std::vector<Letter> out;
        int cur = i;
        for (int x : word) {
            auto it = gen_id.find({cur, x});
            if (it == gen_id.end()) {
                out.push_back({-1, 1});
            } else {
                out.push_back({it->second, gen_mat[static_cast<std::size_t>(it->second)].d});
            }
            cur = action[static_cast<std::size_t>(cur)][static_cast<std::size_t>(x)];
        }
        if (cur != i) throw std::logic_error("prop31: word does not return to its coset");
        return out;
    };
    // Fox derivative: (g, w) = sum_j (g <prefix_j>, y_j), letters positive
    auto fox = [&](int g, const std::vector<Letter>& w, SparseRow& row) {
        i64 prefix = G[static_cast<std::size_t>(g)];
        for (auto& l : w) {
            if (l.gen >= 0) row.emplace_back(col(g_of(prefix), l.gen), 1);
            prefix = mod(prefix * l.diamond, M);
        }
    };

    std::vector<SparseRow> rels;
    const std::vector<int> s2{0, 0}, u3{1, 1, 1};
    for (std::size_t i = 0; i < n_cosets; ++i) {
        for (auto* rel : {&s2, &u3}) {
            auto w = rewrite(static_cast<int>(i), *rel);
            for (int g = 0; g < rep.group_order; ++g) {
                SparseRow row;
                fox(g, w, row);
                if (!row.empty()) rels.push_back(std::move(row));
            }
        }
    }
    // cusp stabilizers: T = S U projectively; one cusp per T-orbit on cosets
    std::vector<bool> seen(n_cosets, false);
    const std::vector<int> t_word{0, 1};
    for (std::size_t i = 0; i < n_cosets; ++i) {
        if (seen[i]) continue;
        std::vector<int> word;
        std::size_t cur = i;
        do {
            seen[cur] = true;
            word.insert(word.end(), t_word.begin(), t_word.end());
            cur = static_cast<std::size_t>(action[static_cast<std::size_t>(action[cur][0])][1]);
        } while (cur != i);
        auto w = rewrite(static_cast<int>(i), word);
        // <eps> and its order o in G
        i64 eps_d = 1;
        for (auto& l : w) eps_d = mod(eps_d * l.diamond, M);
        int o = 1;
        for (i64 p = eps_d; g_of(p) != g_of(1); p = mod(p * eps_d, M)) ++o;
        for (int g = 0; g < rep.group_order; ++g) {
            SparseRow row;
            i64 gm = G[static_cast<std::size_t>(g)];
            for (int m = 0; m < o; ++m) {
                fox(g_of(gm), w, row);
                gm = mod(gm * eps_d, M);
            }
            if (!row.empty()) rels.push_back(std::move(row));
        }
    }

    const int dim = rep.group_order * n_gens;
    auto Q = AbelianQuotient::build(dim, rels);
    rep.module_rank = Q.free_rank();
    rep.module_torsion_free = Q.torsion_free();

    // homology side
    auto pres = presentation(M);
    rep.absolute_rank = pres->absolute_homology().rank();
    const auto c0 = pres->cusps().diamond_orbit_of(Frac::make(0, 1));
    SubLattice hc0 = pres->sub_homology(c0);
    rep.c0_rank = hc0.rank();

    // image of each (g, y): <g>{0, y 0}
    IntMatrix images(dim, pres->rank());
    const Frac zero = Frac::make(0, 1);
    for (int g = 0; g < rep.group_order; ++g) {
        const Mat2 dg = gamma0_with_lower_right(M, G[static_cast<std::size_t>(g)]);
        for (int y = 0; y < n_gens; ++y) {
            const Mat2& ym = gen_mat[static_cast<std::size_t>(y)];
            HomVec v = pres->symbol(dg.act(zero), dg.act(ym.act(zero)));
            for (int k = 0; k < pres->rank(); ++k) images(col(g, y), k) = v[static_cast<std::size_t>(k)];
        }
    }
    rep.relations_vanish = true;
    for (auto& r : rels) {
        IntVec v(static_cast<std::size_t>(dim), 0);
        for (auto [j, e] : r) v[static_cast<std::size_t>(j)] += e;
        IntVec img = vec_mat(v, images);
        if (std::any_of(img.begin(), img.end(), [](i64 e) { return e != 0; })) {
            rep.relations_vanish = false;
            break;
        }
    }
    // surjectivity onto H_1(X, C_0): images in sublattice coordinates span Z^rank
    std::vector<IntVec> rows;
    bool inside = true;
    for (int j = 0; j < dim && inside; ++j) {
        IntVec v = images.row_vec(j);
        if (!hc0.contains(v)) {
            inside = false;
            break;
        }
        rows.push_back(hc0.coordinates(v));
    }
    if (inside && hc0.rank() > 0) {
        Echelon e(IntMatrix::from_rows(rows, hc0.rank()));
        rep.surjective = e.rank() == hc0.rank() && e.pivot_product() == 1;
    } else {
        rep.surjective = inside && hc0.rank() == 0;
    }
    return rep;
}

}  // namespace modk2::modsym
