#include "modk2/k2model/symbols.hpp"

#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "modk2/cyclo/cyclotomic.hpp"

namespace modk2::k2 {

int wedge_dim(int n) { return n * (n - 1) / 2; }

int wedge_index(int n, int i, int j) { return i * n - i * (i + 1) / 2 + (j - i - 1); }

void SymbolicK2::add_pair(int i, int j, i64 c) {
    if (c == 0 || i == j) return;
    if (i > j) {
        std::swap(i, j);
        c = -c;
    }
    auto it = terms_.find({i, j});
    if (it == terms_.end()) {
        terms_.emplace(std::make_pair(i, j), c);
        return;
    }
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
}

SymbolicK2 SymbolicK2::wedge(const CycNumFormal& x, const CycNumFormal& y) {
    if (x.level() != y.level()) throw std::invalid_argument("wedge: level mismatch");
    SymbolicK2 out(x.level());
    const auto& a = x.exps();
    const auto& b = y.exps();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) out.add_pair(static_cast<int>(i), static_cast<int>(j), checked_mul(a[i], b[j]));
    }
    return out;
}

SymbolicK2& SymbolicK2::add_scaled(const SymbolicK2& o, i64 k) {
    if (o.level_ != level_) throw std::invalid_argument("SymbolicK2: level mismatch");
    for (auto& [ij, c] : o.terms_) add_pair(ij.first, ij.second, checked_mul(c, k));
    return *this;
}

namespace {

CycNumFormal generator(i64 level, int i) {
    IntVec v(static_cast<std::size_t>(cyclo::generator_count(level)), 0);
    v[static_cast<std::size_t>(i)] = 1;
    return CycNumFormal(level, std::move(v));
}

}  // namespace

SymbolicK2 SymbolicK2::galois(i64 t) const {
    SymbolicK2 out(level_);
    for (auto& [ij, c] : terms_)
        out.add_scaled(wedge(generator(level_, ij.first).galois(t), generator(level_, ij.second).galois(t)), c);
    return out;
}

SymbolicK2 SymbolicK2::embed(i64 target_level) const {
    SymbolicK2 out(target_level);
    for (auto& [ij, c] : terms_)
        out.add_scaled(wedge(generator(level_, ij.first).embed(target_level), generator(level_, ij.second).embed(target_level)), c);
    return out;
}

IntVec SymbolicK2::dense() const {
    const int n = cyclo::generator_count(level_);
    IntVec v(static_cast<std::size_t>(wedge_dim(n)), 0);
    for (auto& [ij, c] : terms_) v[static_cast<std::size_t>(wedge_index(n, ij.first, ij.second))] = c;
    return v;
}

std::string SymbolicK2::to_string() const {
    auto name = [&](int i) {
        if (i == 0) return std::string("[-1]");
        if (i == 1) return std::string("[z]");
        return "u" + std::to_string(i - 1);
    };
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [ij, c] : terms_) {
        os << (first ? "" : " + ") << c << "*" << name(ij.first) << "^" << name(ij.second);
        first = false;
    }
    return os.str();
}

SymbolicK2 sharifi_symbol(i64 level, const modsym::ManinCoset& coset) {
    if (!coset.in_s0) throw std::domain_error("sharifi_symbol: coset outside S^0");
    return SymbolicK2::wedge(CycNumFormal::one_minus_zeta(level, coset.c), CycNumFormal::one_minus_zeta(level, coset.d));
}

SymbolicK2 symbol_of_s0_combo(const modsym::HomologyPresentation& P, const IntVec& weights) {
    const auto& s0 = P.s0_indices();
    if (weights.size() != s0.size()) throw std::invalid_argument("symbol_of_s0_combo: wrong length");
    SymbolicK2 out(P.level());
    for (std::size_t k = 0; k < s0.size(); ++k)
        if (weights[k] != 0) out.add_scaled(sharifi_symbol(P.level(), P.cosets()[s0[k]]), weights[k]);
    return out;
}

namespace {

const Echelon& xi0_echelon(const modsym::HomologyPresentation& P) {
    static std::mutex mu;
    static std::map<i64, std::unique_ptr<Echelon>> memo;
    std::lock_guard lock(mu);
    auto& slot = memo[P.level()];
    if (!slot) slot = std::make_unique<Echelon>(P.xi0_matrix());
    return *slot;
}

}  // namespace

SymbolicK2 varpi(const modsym::HomologyPresentation& P, const IntVec& h) {
    auto y = xi0_echelon(P).solve(h);
    if (!y) throw std::runtime_error("varpi: no S^0-supported preimage at level " + std::to_string(P.level()));
    return symbol_of_s0_combo(P, *y);
}

std::vector<IntVec> xi0_kernel(const modsym::HomologyPresentation& P) { return xi0_echelon(P).left_kernel(); }

std::vector<K2Relation> PresentedK2::relations(i64 level) {
    const i64 M = level;
    const int n = cyclo::generator_count(M);
    std::vector<K2Relation> out;
    auto push = [&](const SymbolicK2& s, const char* family) {
        if (s.is_zero()) return;
        SparseRow row;
        for (auto& [ij, c] : s.terms()) row.emplace_back(wedge_index(n, ij.first, ij.second), c);
        out.push_back({std::move(row), family});
    };
    // G_M relations wedged with every generator
    auto lattice = cyclo::RelationLattice::build(M);
    for (auto& r : lattice.relations()) {
        CycNumFormal x(M, r.vec);
        for (int j = 0; j < n; ++j) push(SymbolicK2::wedge(x, generator(M, j)), "units");
    }
    // x ^ (1 - x) for x = (1 - z^a)/(1 - z^{a+b}), 1 - x = z^a (1 - z^b)/(1 - z^{a+b})
    const cyclo::CycElt one = cyclo::CycElt::from_int(M, 1);
    for (i64 a = 1; a < M; ++a) {
        for (i64 b = 1; b < M; ++b) {
            if ((a + b) % M == 0) continue;
            CycNumFormal x = CycNumFormal::one_minus_zeta(M, a) - CycNumFormal::one_minus_zeta(M, a + b);
            CycNumFormal y = CycNumFormal::zeta(M, a) + CycNumFormal::one_minus_zeta(M, b) - CycNumFormal::one_minus_zeta(M, a + b);
            if (!(cyclo::eval_formal(x) + cyclo::eval_formal(y) == one)) throw std::logic_error("Steinberg identity fails");
            push(SymbolicK2::wedge(x, y), "steinberg");
        }
    }
    // z^a ^ (1 - z^a)
    for (i64 a = 1; a < M; ++a) push(SymbolicK2::wedge(CycNumFormal::zeta(M, a), CycNumFormal::one_minus_zeta(M, a)), "zeta");
    // g ^ (-g) = g ^ [-1] in the wedge square
    for (int j = 1; j < n; ++j) push(SymbolicK2::wedge(generator(M, j), CycNumFormal::minus_one(M)), "sign");
    // (1 - c) on wedge pairs
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            SymbolicK2 e = SymbolicK2::wedge(generator(M, i), generator(M, j));
            push(e - e.galois(-1), "conjugation");
        }
    return out;
}

PresentedK2 PresentedK2::build(i64 level) {
    PresentedK2 out;
    out.level_ = level;
    auto rels = relations(level);
    std::vector<SparseRow> rows;
    rows.reserve(rels.size());
    for (auto& r : rels) {
        ++out.family_counts_[r.family];
        rows.push_back(r.row);
    }
    out.relation_count_ = rels.size();
    out.quotient_ = AbelianQuotient::build(out.dim(), rows);
    return out;
}

IntVec PresentedK2::reduce(const SymbolicK2& s) const {
    if (s.level() != level_) throw std::invalid_argument("PresentedK2::reduce: level mismatch");
    return quotient_.project(s.dense());
}

bool PresentedK2::is_zero(const SymbolicK2& s, const std::vector<i64>& discarded) const {
    return quotient_.is_zero_ignoring(reduce(s), discarded);
}

void PresentedK2::write(std::ostream& os) const {
    os << "presentedk2 " << level_ << ' ' << relation_count_ << '\n';
    quotient_.write(os);
}

PresentedK2 PresentedK2::read(std::istream& is) {
    std::string tag;
    PresentedK2 out;
    if (!(is >> tag >> out.level_ >> out.relation_count_) || tag != "presentedk2") throw std::runtime_error("presentedk2 cache: bad header");
    out.quotient_ = AbelianQuotient::read(is);
    if (out.quotient_.ambient_dim() != out.dim()) throw std::runtime_error("presentedk2 cache: dimension mismatch");
    // every relation must still die in the cached quotient
    for (auto& r : relations(out.level_)) {
        ++out.family_counts_[r.family];
        IntVec v(static_cast<std::size_t>(out.dim()), 0);
        for (auto [j, c] : r.row) v[static_cast<std::size_t>(j)] += c;
        if (!out.quotient_.is_zero(out.quotient_.project(v))) throw std::runtime_error("presentedk2 cache: relation survives");
    }
    return out;
}

std::shared_ptr<const PresentedK2> presented_k2(i64 level) {
    static std::mutex mu;
    static std::map<i64, std::shared_ptr<const PresentedK2>> memo;
    std::lock_guard lock(mu);
    if (auto it = memo.find(level); it != memo.end()) return it->second;
    std::shared_ptr<const PresentedK2> p;
    const std::string dir = modsym::cache_dir();
    std::filesystem::path file;
    if (!dir.empty()) {
        file = std::filesystem::path(dir) / ("presentedk2_" + std::to_string(level) + ".txt");
        if (std::ifstream in(file); in) {
            try {
                p = std::make_shared<const PresentedK2>(PresentedK2::read(in));
            } catch (const std::exception&) {
                p.reset();
            }
        }
    }
    if (!p) {
        p = std::make_shared<const PresentedK2>(PresentedK2::build(level));
        if (!dir.empty()) {
            std::filesystem::create_directories(dir);
            std::ofstream out(file);
            p->write(out);
        }
    }
    memo[level] = p;
    return p;
}

}  // namespace modk2::k2
