#include "modk2/cyclo/units.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace modk2::cyclo {

CycNumFormal::CycNumFormal(i64 level) : level_(level), exps_(static_cast<std::size_t>(generator_count(level)), 0) {
    if (level < 1) throw std::domain_error("CycNumFormal: level must be >= 1");
}

CycNumFormal::CycNumFormal(i64 level, IntVec exps) : level_(level), exps_(std::move(exps)) {
    if (static_cast<int>(exps_.size()) != generator_count(level))
        throw std::invalid_argument("CycNumFormal: exponent vector has wrong length");
}

CycNumFormal CycNumFormal::minus_one(i64 level) {
    CycNumFormal r(level);
    r.exps_[0] = 1;
    return r;
}

CycNumFormal CycNumFormal::zeta(i64 level, i64 k) {
    CycNumFormal r(level);
    r.exps_[1] = mod(k, level);
    return r;
}

CycNumFormal CycNumFormal::one_minus_zeta(i64 level, i64 a) {
    if (mod(a, level) == 0) throw std::domain_error("one_minus_zeta: exponent divisible by the level");
    CycNumFormal r(level);
    r.exps_[static_cast<std::size_t>(unit_index(level, a))] = 1;
    return r;
}

CycNumFormal CycNumFormal::operator+(const CycNumFormal& o) const {
    if (level_ != o.level_) throw std::invalid_argument("CycNumFormal: level mismatch");
    CycNumFormal r = *this;
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = checked_add(r.exps_[i], o.exps_[i]);
    return r;
}

CycNumFormal CycNumFormal::operator-() const { return scaled(-1); }

CycNumFormal CycNumFormal::operator-(const CycNumFormal& o) const { return *this + (-o); }

CycNumFormal CycNumFormal::scaled(i64 k) const {
    CycNumFormal r = *this;
    for (auto& e : r.exps_) e = checked_mul(e, k);
    return r;
}

CycNumFormal CycNumFormal::normalized() const {
    CycNumFormal r = *this;
    r.exps_[0] = mod(r.exps_[0], 2);
    r.exps_[1] = mod(r.exps_[1], level_);
    return r;
}

CycNumFormal CycNumFormal::galois(i64 t) const {
    if (gcd(t, level_) != 1) throw std::domain_error("galois: t not coprime to level");
    CycNumFormal r(level_);
    r.exps_[0] = exps_[0];
    r.exps_[1] = mod(checked_mul(exps_[1], mod(t, level_)), level_);
    for (i64 a = 1; a < level_; ++a) {
        i64 e = exps_[static_cast<std::size_t>(1 + a)];
        if (e != 0) r.exps_[static_cast<std::size_t>(unit_index(level_, a * t))] += e;
    }
    return r;
}

CycNumFormal CycNumFormal::embed(i64 target_level) const {
    if (target_level % level_ != 0) throw std::invalid_argument("embed: target level not a multiple");
    const i64 r = target_level / level_;
    CycNumFormal out(target_level);
    out.exps_[0] = exps_[0];
    out.exps_[1] = mod(checked_mul(mod(exps_[1], level_), r), target_level);
    for (i64 a = 1; a < level_; ++a) out.exps_[static_cast<std::size_t>(unit_index(target_level, a * r))] += exps_[static_cast<std::size_t>(1 + a)];
    return out;
}

bool CycNumFormal::is_identity() const {
    for (auto e : exps_)
        if (e != 0) return false;
    return true;
}

std::string CycNumFormal::to_string() const {
    std::ostringstream os;
    bool first = true;
    auto term = [&](i64 e, const std::string& name) {
        if (e == 0) return;
        if (!first) os << " + ";
        first = false;
        if (e != 1) os << e << "*";
        os << name;
    };
    term(exps_[0], "[-1]");
    term(exps_[1], "[z]");
    for (i64 a = 1; a < level_; ++a) term(exps_[static_cast<std::size_t>(1 + a)], "[1-z^" + std::to_string(a) + "]");
    if (first) os << "0";
    return os.str();
}

namespace {

// product of generators with nonnegative weights given by sign * vec
CycElt eval_part(i64 level, const IntVec& v, int sgn) {
    CycElt r = CycElt::from_int(level, 1);
    auto take = [&](i64 e) { return sgn * e > 0 ? sgn * e : 0; };
    if (i64 e = take(v[0]); e % 2) r = -r;
    if (i64 e = take(v[1]); e) r = r * CycElt::zeta_power(level, e % level);
    for (i64 a = 1; a < level; ++a)
        if (i64 e = take(v[static_cast<std::size_t>(1 + a)]); e) r = r * CycElt::one_minus_zeta(level, a).pow(e);
    return r;
}

}  // namespace

CycElt eval_formal(const CycNumFormal& x) {
    return eval_part(x.level(), x.exps(), 1) / eval_part(x.level(), x.exps(), -1);
}

i64 formal_weight(const CycNumFormal& x) {
    i64 w = 0;
    for (i64 a = 1; a < x.level(); ++a) w += std::abs(x.unit_exp(a));
    return w;
}

bool relation_holds(i64 level, const IntVec& vec) {
    return eval_part(level, vec, 1) == eval_part(level, vec, -1);
}

RelationLattice RelationLattice::build(i64 level) {
    if (level < 3) throw std::domain_error("relation_lattice: level must be >= 3");
    RelationLattice L;
    L.level_ = level;
    const auto n = static_cast<std::size_t>(generator_count(level));
    auto add = [&](IntVec v, const char* family) {
        if (!relation_holds(level, v)) throw std::logic_error(std::string("relation_lattice: false ") + family + " relation");
        L.relations_.push_back({std::move(v), family});
    };

    {
        IntVec v(n, 0);
        v[0] = 2;
        add(v, "torsion");
    }
    {
        IntVec v(n, 0);
        v[1] = level;
        add(v, "torsion");
    }
    if (level % 2 == 0) {
        IntVec v(n, 0);
        v[0] = 1;
        v[1] = -(level / 2);
        add(v, "torsion");
    }
    // 1 - z^{-a} = -z^{-a} (1 - z^a)
    for (i64 a = 1; 2 * a < level; ++a) {
        IntVec v(n, 0);
        v[static_cast<std::size_t>(unit_index(level, -a))] += 1;
        v[0] -= 1;
        v[1] += a;
        v[static_cast<std::size_t>(unit_index(level, a))] -= 1;
        add(v, "inversion");
    }
    // 1 - z^{nb} = prod_k (1 - z^{b + kM/n})
    for (i64 d : divisors(level)) {
        if (d == 1) continue;
        const i64 step = level / d;
        for (i64 b = 1; b < step; ++b) {
            IntVec v(n, 0);
            v[static_cast<std::size_t>(unit_index(level, d * b))] += 1;
            for (i64 k = 0; k < d; ++k) v[static_cast<std::size_t>(unit_index(level, b + k * step))] -= 1;
            add(v, "distribution");
        }
    }

    std::vector<SparseRow> rows;
    rows.reserve(L.relations_.size());
    for (auto& r : L.relations_) {
        SparseRow s;
        for (std::size_t i = 0; i < r.vec.size(); ++i)
            if (r.vec[i] != 0) s.emplace_back(static_cast<int>(i), r.vec[i]);
        rows.push_back(std::move(s));
    }
    L.quotient_ = AbelianQuotient::build(static_cast<int>(n), rows);
    return L;
}

bool RelationLattice::is_trivial(const CycNumFormal& x) const {
    if (x.level() != level_) throw std::invalid_argument("RelationLattice: level mismatch");
    return quotient_.is_zero(quotient_.project(x.exps()));
}

bool RelationLattice::equal_certified(const CycNumFormal& x, const CycNumFormal& y, i64 max_weight) const {
    if (equal(x, y)) return true;
    const CycNumFormal d = x - y;
    if (formal_weight(d) > max_weight) return false;
    return eval_formal(d).is_one();
}

// Format:
//   relations <M> <count>
//   <family> <M+1 decimal integers>     (count lines)
//   <quotient block as written by AbelianQuotient::write>
void RelationLattice::write(std::ostream& os) const {
    os << "relations " << level_ << ' ' << relations_.size() << '\n';
    for (auto& r : relations_) {
        os << r.family;
        for (auto e : r.vec) os << ' ' << e;
        os << '\n';
    }
    quotient_.write(os);
}

RelationLattice RelationLattice::read(std::istream& is) {
    std::string tag;
    std::size_t count = 0;
    RelationLattice L;
    if (!(is >> tag >> L.level_ >> count) || tag != "relations") throw std::runtime_error("RelationLattice::read: bad header");
    const auto n = static_cast<std::size_t>(generator_count(L.level_));
    for (std::size_t i = 0; i < count; ++i) {
        LatticeRelation r;
        r.vec.resize(n);
        if (!(is >> r.family)) throw std::runtime_error("RelationLattice::read: truncated");
        for (auto& e : r.vec)
            if (!(is >> e)) throw std::runtime_error("RelationLattice::read: truncated");
        if (!relation_holds(L.level_, r.vec)) throw std::runtime_error("RelationLattice::read: relation does not hold");
        L.relations_.push_back(std::move(r));
    }
    L.quotient_ = AbelianQuotient::read(is);
    return L;
}

}  // namespace modk2::cyclo
