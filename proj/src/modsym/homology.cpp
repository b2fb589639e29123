#include "modk2/modsym/homology.hpp"

#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace modk2::modsym {

std::pair<i64, i64> normalize_coset(i64 M, i64 c, i64 d) {
    c = mod(c, M);
    d = mod(d, M);
    std::pair<i64, i64> p{c, d}, q{mod(-c, M), mod(-d, M)};
    return std::min(p, q);
}

std::vector<ManinCoset> enumerate_cosets(i64 M) {
    if (M < 4) throw std::domain_error("enumerate_cosets: level must be >= 4");
    std::vector<ManinCoset> out;
    for (i64 c = 0; c < M; ++c) {
        for (i64 d = 0; d < M; ++d) {
            if (gcd(gcd(c, d), M) != 1) continue;
            if (normalize_coset(M, c, d) != std::pair<i64, i64>{c, d}) continue;
            out.push_back({c, d, c != 0 && d != 0});
        }
    }
    return out;
}

i64 raw_coset_count(i64 M) {
    i64 n = 0;
    for (i64 c = 0; c < M; ++c)
        for (i64 d = 0; d < M; ++d)
            if (gcd(gcd(c, d), M) == 1) ++n;
    return n;
}

HomologyPresentation::HomologyPresentation(i64 level) : HomologyPresentation(level, std::nullopt) {}

HomologyPresentation::HomologyPresentation(i64 level, std::optional<AbelianQuotient> q)
    : level_(level), cosets_(enumerate_cosets(level)), cusps_(level) {
    build(std::move(q));
}

std::size_t HomologyPresentation::coset_index(i64 c, i64 d) const {
    auto [cc, dd] = normalize_coset(level_, c, d);
    int i = index_[static_cast<std::size_t>(cc * level_ + dd)];
    if (i < 0) throw std::domain_error("coset_index: gcd(c, d, M) != 1");
    return static_cast<std::size_t>(i);
}

void HomologyPresentation::build(std::optional<AbelianQuotient> q) {
    const i64 M = level_;
    index_.assign(static_cast<std::size_t>(M * M), -1);
    for (std::size_t i = 0; i < cosets_.size(); ++i)
        index_[static_cast<std::size_t>(cosets_[i].c * M + cosets_[i].d)] = static_cast<int>(i);

    // x + x sigma and x + x tau + x tau^2, with (c,d) sigma = (d,-c) and (c,d) tau = (d,-c-d)
    std::vector<SparseRow> rels;
    for (std::size_t i = 0; i < cosets_.size(); ++i) {
        const i64 c = cosets_[i].c, d = cosets_[i].d;
        rels.push_back({{static_cast<int>(i), 1}, {static_cast<int>(coset_index(d, -c)), 1}});
        const std::size_t t1 = coset_index(d, -c - d);
        const std::size_t t2 = coset_index(-c - d, c);
        rels.push_back({{static_cast<int>(i), 1}, {static_cast<int>(t1), 1}, {static_cast<int>(t2), 1}});
    }
    if (q) {
        if (q->ambient_dim() != static_cast<int>(cosets_.size())) throw std::runtime_error("cached presentation has wrong dimension");
        for (auto& r : rels) {
            IntVec v(cosets_.size(), 0);
            for (auto [j, e] : r) v[static_cast<std::size_t>(j)] += e;
            if (!q->is_zero(q->project(v))) throw std::runtime_error("cached presentation does not kill a Manin relation");
        }
        quotient_ = std::move(*q);
    } else {
        quotient_ = AbelianQuotient::build(static_cast<int>(cosets_.size()), rels);
    }
    if (!quotient_.torsion_free()) throw std::logic_error("Manin presentation has torsion");

    boundary_ = IntMatrix(rank(), static_cast<int>(cusps_.size()));
    for (int i = 0; i < rank(); ++i) {
        IntVec bd(cusps_.size(), 0);
        for (auto [j, e] : basis_lift(i)) {
            auto [alpha, beta] = xi_endpoints(j);
            bd[cusps_.index_of(beta)] += e;
            bd[cusps_.index_of(alpha)] -= e;
        }
        for (std::size_t k = 0; k < bd.size(); ++k) boundary_(i, static_cast<int>(k)) = bd[k];
    }

    std::vector<IntVec> rows;
    for (std::size_t i = 0; i < cosets_.size(); ++i) {
        if (!cosets_[i].in_s0) continue;
        s0_.push_back(i);
        rows.push_back(manin_map(i));
    }
    xi0_ = IntMatrix::from_rows(rows, rank());
}

Mat2 HomologyPresentation::lift(std::size_t i) const {
    auto [c, d] = lift_coprime_pair(cosets_[i].c, cosets_[i].d, level_);
    return complete_bottom_row(c, d);
}

std::pair<Frac, Frac> HomologyPresentation::xi_endpoints(std::size_t i) const {
    const Mat2 g = lift(i);
    return {Frac::make(-g.d, checked_mul(level_, g.b)), Frac::make(-g.c, checked_mul(level_, g.a))};
}

HomVec HomologyPresentation::manin_map(std::size_t i) const {
    IntVec p = quotient_.project_unit(static_cast<int>(i));
    return p;
}

HomVec HomologyPresentation::coords(const CosetCombo& combo) const {
    IntVec v(cosets_.size(), 0);
    for (auto [i, e] : combo) v[i] = checked_add(v[i], e);
    return quotient_.project(v);
}

CosetCombo HomologyPresentation::basis_lift(int i) const {
    CosetCombo out;
    IntVec v = quotient_.lift_free(i);
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] != 0) out[j] = v[j];
    return out;
}

namespace {

void add_to(CosetCombo& acc, std::size_t i, i64 e) {
    i64& slot = acc[i];
    slot = checked_add(slot, e);
    if (slot == 0) acc.erase(i);
}

}  // namespace

CosetCombo HomologyPresentation::decompose_usual(const Frac& alpha, const Frac& beta) const {
    CosetCombo out;
    // {0, x} as a chain of unimodular geodesics through the convergents of x
    auto from_zero = [&](const Frac& x, i64 sign) {
        std::vector<Frac> pts{Frac::make(0, 1), Frac::infinity()};
        if (!x.is_infinity()) {
            i64 a = x.num, b = x.den;
            i64 p2 = 0, q2 = 1, p1 = 1, q1 = 0;
            while (b != 0) {
                i64 qk = a / b;
                if ((a % b != 0) && ((a < 0) != (b < 0))) --qk;
                i64 r = a - qk * b;
                i64 p = checked_add(checked_mul(qk, p1), p2), q = checked_add(checked_mul(qk, q1), q2);
                pts.push_back(Frac{p, q});
                p2 = p1;
                q2 = q1;
                p1 = p;
                q1 = q;
                a = b;
                b = r;
            }
        }
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            const i64 r = pts[k].num, s = pts[k].den, t = pts[k + 1].num, u = pts[k + 1].den;
            const i64 eps = checked_add(checked_mul(t, s), -checked_mul(r, u));
            if (eps != 1 && eps != -1) throw std::logic_error("decompose: non-adjacent convergents");
            // g = (t, eps r; u, eps s): g0 = r/s, g oo = t/u
            add_to(out, coset_index(u, eps * s), sign);
        }
    };
    from_zero(beta, 1);
    from_zero(alpha, -1);
    return out;
}

CosetCombo HomologyPresentation::decompose_xi(const Frac& alpha, const Frac& beta) const {
    const Mat2 W{0, -1, level_, 0};
    return decompose_usual(W.act(alpha), W.act(beta));
}

IntVec HomologyPresentation::boundary(const HomVec& h) const { return vec_mat(h, boundary_); }

SubLattice HomologyPresentation::sub_homology(const std::vector<std::size_t>& cusp_subset) const {
    std::vector<bool> keep(cusps_.size(), false);
    for (auto c : cusp_subset) keep.at(c) = true;
    std::vector<int> outside;
    for (std::size_t c = 0; c < cusps_.size(); ++c)
        if (!keep[c]) outside.push_back(static_cast<int>(c));
    IntMatrix b(rank(), static_cast<int>(outside.size()));
    for (int i = 0; i < rank(); ++i)
        for (std::size_t k = 0; k < outside.size(); ++k) b(i, static_cast<int>(k)) = boundary_(i, outside[k]);
    return kernel_lattice(b);
}

std::vector<std::size_t> HomologyPresentation::c0_cusps() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cusps_.size(); ++i)
        if (cusps_.in_c0(i)) out.push_back(i);
    return out;
}

// Format:
//   presentation <M> <number of cosets>
//   <AbelianQuotient block>
void HomologyPresentation::write(std::ostream& os) const {
    os << "presentation " << level_ << ' ' << cosets_.size() << '\n';
    quotient_.write(os);
}

std::shared_ptr<HomologyPresentation> HomologyPresentation::read(std::istream& is) {
    std::string tag;
    i64 level = 0;
    std::size_t n = 0;
    if (!(is >> tag >> level >> n) || tag != "presentation") throw std::runtime_error("presentation cache: bad header");
    auto q = AbelianQuotient::read(is);
    auto p = std::shared_ptr<HomologyPresentation>(new HomologyPresentation(level, std::move(q)));
    if (p->cosets_.size() != n) throw std::runtime_error("presentation cache: coset count mismatch");
    return p;
}

namespace {
std::mutex cache_mu;
std::string cache_directory;
}  // namespace

void set_cache_dir(const std::string& dir) {
    std::lock_guard lock(cache_mu);
    cache_directory = dir;
}

std::string cache_dir() {
    std::lock_guard lock(cache_mu);
    return cache_directory;
}

std::shared_ptr<const HomologyPresentation> presentation(i64 level) {
    static std::mutex mu;
    static std::map<i64, std::shared_ptr<const HomologyPresentation>> memo;
    std::lock_guard lock(mu);
    if (auto it = memo.find(level); it != memo.end()) return it->second;
    std::shared_ptr<const HomologyPresentation> p;
    const std::string dir = cache_dir();
    std::filesystem::path file;
    if (!dir.empty()) {
        file = std::filesystem::path(dir) / ("presentation_" + std::to_string(level) + ".txt");
        if (std::ifstream in(file); in) {
            try {
                p = HomologyPresentation::read(in);
            } catch (const std::exception&) {
                p.reset();  // stale or corrupt cache: rebuild below
            }
        }
    }
    if (!p) {
        p = std::make_shared<HomologyPresentation>(level);
        if (!dir.empty()) {
            std::filesystem::create_directories(dir);
            std::ofstream out(file);
            p->write(out);
        }
    }
    memo[level] = p;
    return p;
}

}  // namespace modk2::modsym
