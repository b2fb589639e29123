#include "modk2/cyclo/places.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace modk2::cyclo {

std::string Place::label() const {
    std::ostringstream os;
    os << "M=" << level << " l=" << ell << " #" << index << (sanity ? " (unramified)" : "");
    return os.str();
}

ResidueElt ResidueElt::operator*(const ResidueElt& o) const { return {field, field->mul(value, o.value)}; }
ResidueElt ResidueElt::inverse() const { return {field, field->inv(value)}; }
ResidueElt ResidueElt::pow(i64 e) const { return {field, field->pow_signed(value, e)}; }

namespace {

bool is_power_of(i64 n, i64 p) {
    if (n <= 1) return false;
    while (n % p == 0) n /= p;
    return n == 1;
}

void fill_generator_table(Place& w) {
    const i64 M = w.level;
    const auto& F = *w.field;
    const std::size_t n = static_cast<std::size_t>(generator_count(M));
    w.gen_val.assign(n, 0);
    w.gen_res.assign(n, {});
    w.gen_res[0] = F.constant(-1);
    w.gen_res[1] = F.pow(FpPoly{0, 1}, static_cast<u64>(w.zeta_exp));
    for (i64 a = 1; a < M; ++a) {
        const std::size_t idx = static_cast<std::size_t>(unit_index(M, a));
        const i64 order = M / gcd(a, M);
        if (!w.sanity && is_power_of(order, w.ell)) {
            // zeta^a = zeta_{l^k}^c with c = l^{k-j} b, b prime to l
            int j = split_prime_part(order, w.ell).second;
            const i64 c = a / (M / w.ell_k);
            const i64 step = ipow(w.ell, w.k - j);
            w.gen_val[idx] = step;
            w.gen_res[idx] = F.constant(c / step);
        } else {
            FpPoly z = F.pow(FpPoly{0, 1}, static_cast<u64>(mod(w.zeta_exp * a, w.m_prime)));
            FpPoly r = F.reduce(fp::sub(FpPoly{1}, z, w.ell));
            if (r.empty()) throw std::logic_error("generator table: unexpected zero residue");
            w.gen_res[idx] = r;
        }
    }
}

}  // namespace

std::vector<Place> places_over(i64 level, i64 ell, bool sanity_mode) {
    if (level < 1) throw std::domain_error("places_over: level must be positive");
    if (!is_prime(ell)) throw std::domain_error("places_over: l must be prime");
    const bool sanity = level % ell != 0;
    if (sanity && !sanity_mode) throw std::domain_error("places_over: l does not divide the level");
    auto [mp, k] = split_prime_part(level, ell);
    std::vector<Place> out;
    int idx = 0;
    for (auto& g : factor_cyclotomic_mod(mp, ell)) {
        Place w;
        w.level = level;
        w.ell = ell;
        w.k = k;
        w.ell_k = ipow(ell, k);
        w.m_prime = mp;
        w.e = euler_phi(w.ell_k);
        w.f = static_cast<int>(g.size()) - 1;
        w.index = idx++;
        w.sanity = sanity;
        w.zeta_exp = inv_mod(w.ell_k % mp, mp);
        w.field = std::make_shared<const ResidueField>(ell, g);
        fill_generator_table(w);
        out.push_back(std::move(w));
    }
    return out;
}

ValuationResidue valuation_and_residue(const Place& w, const CycNumFormal& x) {
    if (x.level() != w.level) throw std::invalid_argument("valuation_and_residue: level mismatch");
    const auto& F = *w.field;
    i64 v = 0;
    FpPoly r = F.one();
    const auto& ex = x.exps();
    for (std::size_t i = 0; i < ex.size(); ++i) {
        if (ex[i] == 0) continue;
        v = checked_add(v, checked_mul(ex[i], w.gen_val[i]));
        r = F.mul(r, F.pow_signed(w.gen_res[i], ex[i]));
    }
    return {v, ResidueElt{w.field, r}};
}

ResidueElt tame_pair(const Place& w, const CycNumFormal& x, const CycNumFormal& y) {
    auto [vx, rx] = valuation_and_residue(w, x);
    auto [vy, ry] = valuation_and_residue(w, y);
    ResidueElt out = rx.pow(vy) * ry.pow(-vx);
    if (mod(vx, 2) == 1 && mod(vy, 2) == 1) out = out * ResidueElt{w.field, w.field->constant(-1)};
    return out;
}

PlaceTable::PlaceTable(i64 level, std::vector<i64> primes) : level_(level), primes_(std::move(primes)) {
    if (primes_.empty()) primes_ = prime_divisors(level);
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
    for (i64 l : primes_)
        for (auto& w : places_over(level, l, true)) places_.push_back(std::move(w));
}

std::size_t PlaceTable::galois_target(i64 t, std::size_t wi) const {
    if (gcd(t, level_) != 1) throw std::domain_error("galois_target: t not coprime to level");
    const Place& w = places_[wi];
    const i64 tt = mod(t, w.m_prime);
    for (std::size_t j = 0; j < places_.size(); ++j) {
        const Place& u = places_[j];
        if (u.ell != w.ell) continue;
        if (fp::compose_power(w.modulus(), tt, u.modulus(), u.ell).empty()) return j;
    }
    throw std::logic_error("galois_target: no image place");
}

FpPoly PlaceTable::galois_transport(i64 t, std::size_t wi, const FpPoly& value) const {
    const Place& w = places_[wi];
    const Place& u = places_[galois_target(t, wi)];
    return fp::compose_power(value, mod(t, w.m_prime), u.modulus(), u.ell);
}

void PlaceTable::write(std::ostream& os) const {
    os << "places " << level_ << ' ' << places_.size();
    for (i64 p : primes_) os << ' ' << p;
    os << '\n';
    for (auto& w : places_) {
        os << "place " << w.ell << ' ' << w.index << ' ' << w.k << ' ' << w.e << ' ' << w.f << ' ' << (w.sanity ? 1 : 0);
        for (i64 c : w.modulus()) os << ' ' << c;
        os << '\n';
    }
}

PlaceTable PlaceTable::read(std::istream& is) {
    std::string tag;
    i64 level = 0;
    std::size_t count = 0;
    if (!(is >> tag >> level >> count) || tag != "places") throw std::runtime_error("PlaceTable::read: bad header");
    std::string rest;
    std::getline(is, rest);
    std::istringstream ps(rest);
    std::vector<i64> primes;
    for (i64 p; ps >> p;) primes.push_back(p);
    PlaceTable t(level, primes);
    if (t.places_.size() != count) throw std::runtime_error("PlaceTable::read: place count mismatch");
    for (std::size_t i = 0; i < count; ++i) {
        i64 ell, e;
        int index, k, f, sanity;
        if (!(is >> tag >> ell >> index >> k >> e >> f >> sanity) || tag != "place")
            throw std::runtime_error("PlaceTable::read: bad place line");
        FpPoly g(static_cast<std::size_t>(f) + 1);
        for (auto& c : g)
            if (!(is >> c)) throw std::runtime_error("PlaceTable::read: truncated");
        const Place& w = t.places_[i];
        if (w.ell != ell || w.index != index || w.k != k || w.e != e || w.f != f || w.sanity != (sanity != 0) || w.modulus() != g)
            throw std::runtime_error("PlaceTable::read: entry does not match recomputation");
    }
    return t;
}

namespace {

// solve sum_i c_i * cols[i] = target over F_l; cols and target have length n
std::vector<i64> solve_mod_l(const std::vector<std::vector<i64>>& cols, std::vector<i64> target, i64 l) {
    const std::size_t m = cols.size(), n = target.size();
    std::vector<std::vector<i64>> a(n, std::vector<i64>(m + 1, 0));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < m; ++c) a[r][c] = r < cols[c].size() ? cols[c][r] : 0;
        a[r][m] = target[r];
    }
    std::vector<int> pivot_row(m, -1);
    std::size_t row = 0;
    for (std::size_t c = 0; c < m && row < n; ++c) {
        std::size_t p = row;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(a[p], a[row]);
        const i64 inv = inv_mod(a[row][c], l);
        for (auto& v : a[row]) v = mul_mod(v, inv, l);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || a[r][c] == 0) continue;
            const i64 fct = a[r][c];
            for (std::size_t j = 0; j <= m; ++j) a[r][j] = mod(a[r][j] - mul_mod(fct, a[row][j], l), l);
        }
        pivot_row[c] = static_cast<int>(row++);
    }
    for (std::size_t r = row; r < n; ++r)
        if (a[r][m] != 0) throw std::domain_error("norm_down: element not in the subfield");
    std::vector<i64> x(m, 0);
    for (std::size_t c = 0; c < m; ++c)
        if (pivot_row[c] >= 0) x[c] = a[static_cast<std::size_t>(pivot_row[c])][m];
    return x;
}

}  // namespace

PlaceMatching::PlaceMatching(const PlaceTable& upper, const PlaceTable& lower) : upper_(&upper), lower_(&lower) {
    const i64 N = upper.level(), M = lower.level();
    if (N % M != 0) throw std::invalid_argument("PlaceMatching: lower level must divide upper level");
    const i64 r = N / M;
    for (std::size_t wi = 0; wi < upper.size(); ++wi) {
        const Place& w = upper[wi];
        bool found = false;
        for (std::size_t vi = 0; vi < lower.size() && !found; ++vi) {
            const Place& v = lower[vi];
            if (v.ell != w.ell) continue;
            // zeta_M = zeta_N^r, and y_v = rho_v(zeta_M)^{l^{k_M}}
            const i64 E = mod(w.zeta_exp * (r % w.m_prime) % w.m_prime * (v.ell_k % w.m_prime), w.m_prime);
            if (!fp::compose_power(v.modulus(), E, w.modulus(), w.ell).empty()) continue;
            below_.push_back(vi);
            image_of_y_.push_back(w.field->pow(FpPoly{0, 1}, static_cast<u64>(E)));
            found = true;
        }
        if (!found) throw std::domain_error("PlaceMatching: no place below " + w.label());
    }
}

FpPoly PlaceMatching::embed_up(std::size_t wi, const FpPoly& y) const {
    const Place& w = (*upper_)[wi];
    FpPoly acc, p = w.field->one();
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] != 0) acc = fp::add(acc, fp::mul(p, FpPoly{y[i]}, w.ell), w.ell);
        p = w.field->mul(p, image_of_y_[wi]);
    }
    return w.field->reduce(acc);
}

FpPoly PlaceMatching::norm_down(std::size_t wi, const FpPoly& z) const {
    const Place& w = (*upper_)[wi];
    const Place& v = (*lower_)[below_[wi]];
    const u64 qw = w.field->size(), qv = v.field->size();
    const FpPoly nz = w.field->pow(z, (qw - 1) / (qv - 1));
    std::vector<std::vector<i64>> cols;
    FpPoly p = w.field->one();
    for (int i = 0; i < v.f; ++i) {
        FpPoly col = p;
        col.resize(static_cast<std::size_t>(w.f), 0);
        cols.push_back(col);
        p = w.field->mul(p, image_of_y_[wi]);
    }
    FpPoly target = nz;
    target.resize(static_cast<std::size_t>(w.f), 0);
    FpPoly x = solve_mod_l(cols, target, w.ell);
    fp::trim(x);
    return x;
}

}  // namespace modk2::cyclo
