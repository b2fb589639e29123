#include "modk2/modsym/cusps.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace modk2::modsym {

namespace {

CuspKey raw_key(i64 M, i64 a, i64 b) {
    const i64 bb = mod(b, M);
    const i64 g = gcd(bb, M);  // gcd(0, M) == M
    return {bb, mod(a, g)};
}

}  // namespace

CuspKey cusp_key(i64 M, const Frac& x) {
    const i64 a = x.is_infinity() ? 1 : x.num;
    const i64 b = x.is_infinity() ? 0 : x.den;
    return std::min(raw_key(M, a, b), raw_key(M, -a, -b));
}

CuspSet::CuspSet(i64 level) : level_(level) {
    if (level < 1) throw std::domain_error("CuspSet: level must be positive");
    std::set<CuspKey> seen;
    for (i64 b = 0; b < level; ++b) {
        const i64 g = gcd(b, level);
        for (i64 a = 0; a < g; ++a) {
            if (gcd(a, g) != 1) continue;
            CuspKey k = std::min(raw_key(level, a, b), raw_key(level, -a, -b));
            if (!seen.insert(k).second) continue;
            // find a reduced fraction A/B with these residues
            const i64 B = b == 0 ? level : b;
            i64 A = a;
            while (gcd(A, B) != 1) A += g;
            keys_.push_back(k);
            reps_.push_back(b == 0 && mod(A, level) == 1 ? Frac::infinity() : Frac::make(A, B));
        }
    }
    // sorted keys for binary search, representatives permuted alongside
    std::vector<std::size_t> order(keys_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return keys_[i] < keys_[j]; });
    std::vector<CuspKey> k2;
    std::vector<Frac> r2;
    for (auto i : order) {
        k2.push_back(keys_[i]);
        r2.push_back(reps_[i]);
    }
    keys_ = std::move(k2);
    reps_ = std::move(r2);
    for (std::size_t i = 0; i < keys_.size(); ++i)
        if (cusp_key(level_, reps_[i]) != keys_[i]) throw std::logic_error("CuspSet: representative mismatch");
}

std::size_t CuspSet::index_of_key(const CuspKey& k) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
    if (it == keys_.end() || *it != k) throw std::logic_error("CuspSet: unknown cusp class");
    return static_cast<std::size_t>(it - keys_.begin());
}

std::size_t CuspSet::index_of(const Frac& x) const { return index_of_key(cusp_key(level_, x)); }

bool CuspSet::in_c0(std::size_t i) const { return gcd(keys_[i].b, level_) > 1; }

std::size_t CuspSet::diamond(i64 t, std::size_t i) const {
    return index_of(gamma0_with_lower_right(level_, t).act(reps_[i]));
}

std::vector<std::vector<std::size_t>> CuspSet::orbits(const std::vector<i64>& units) const {
    std::vector<int> label(size(), -1);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i) {
        if (label[i] >= 0) continue;
        std::vector<std::size_t> orb;
        std::vector<std::size_t> stack{i};
        label[i] = static_cast<int>(out.size());
        while (!stack.empty()) {
            std::size_t j = stack.back();
            stack.pop_back();
            orb.push_back(j);
            for (i64 t : units) {
                std::size_t k = diamond(t, j);
                if (label[k] < 0) {
                    label[k] = static_cast<int>(out.size());
                    stack.push_back(k);
                }
            }
        }
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

std::vector<std::size_t> CuspSet::diamond_orbit_of(const Frac& x) const {
    const std::size_t start = index_of(x);
    for (auto& o : orbits(units_mod(level_)))
        if (std::find(o.begin(), o.end(), start) != o.end()) return o;
    throw std::logic_error("diamond_orbit_of: not found");
}

std::vector<i64> kernel_units(i64 N, i64 M) {
    if (N % M != 0) throw std::invalid_argument("kernel_units: M must divide N");
    std::vector<i64> out;
    for (i64 t : units_mod(N))
        if (mod(t, M) == mod(1, M)) out.push_back(t);
    return out;
}

i64 cusp_count_formula(i64 M) {
    if (M == 4) return 3;
    if (M <= 2) return M == 1 ? 1 : 2;
    if (M == 3) return 2;
    i64 s = 0;
    for (i64 d : divisors(M)) s += euler_phi(d) * euler_phi(M / d);
    return s / 2;
}

i64 genus_formula(i64 M) {
    if (M < 4) throw std::domain_error("genus_formula: M must be >= 4");
    // index of +-Gamma_1(M) in PSL_2(Z) is (M^2/2) prod (1 - p^-2); genus = 1 + mu/12 - c/2
    i64 num = M * M, den = 2;
    for (i64 p : prime_divisors(M)) {
        num *= (p * p - 1);
        den *= p * p;
    }
    const i64 mu = num / den;
    const i64 twelve_g = 12 + mu - 6 * cusp_count_formula(M);
    if (twelve_g % 12 != 0) throw std::logic_error("genus_formula: non-integral genus");
    return twelve_g / 12;
}

}  // namespace modk2::modsym
