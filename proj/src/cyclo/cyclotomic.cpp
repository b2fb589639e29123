#include "modk2/cyclo/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace modk2::cyclo {

namespace {

std::vector<i64> poly_exact_div(std::vector<i64> num, const std::vector<i64>& den) {
    // den monic
    const std::size_t dn = den.size() - 1;
    std::vector<i64> q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        i64 c = num[i];
        q[i - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    for (std::size_t i = 0; i < dn; ++i)
        if (num[i] != 0) throw std::logic_error("cyclotomic division not exact");
    return q;
}

void trim(std::vector<mpq_class>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

std::vector<mpq_class> poly_mul(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<mpq_class> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) r[i + j] += a[i] * b[j];
    }
    return r;
}

// (quotient, remainder) of a by b over Q; b nonzero
std::pair<std::vector<mpq_class>, std::vector<mpq_class>> poly_divmod(std::vector<mpq_class> a, std::vector<mpq_class> b) {
    trim(a);
    trim(b);
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    std::vector<mpq_class> q(a.size() - b.size() + 1);
    const mpq_class lead = b.back();
    for (std::size_t i = a.size(); i-- >= b.size();) {
        if (a[i] == 0) {
            if (i == 0) break;
            continue;
        }
        mpq_class c = a[i] / lead;
        q[i - (b.size() - 1)] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= c * b[j];
        if (i == 0) break;
    }
    trim(a);
    return {q, a};
}

}  // namespace

const std::vector<i64>& cyclotomic_polynomial(i64 n) {
    static std::mutex mu;
    static std::map<i64, std::vector<i64>> cache;
    if (n < 1) throw std::domain_error("cyclotomic_polynomial: n < 1");
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed without recursion on the lock
    std::vector<i64> num(static_cast<std::size_t>(n) + 1, 0);
    num[0] = -1;
    num[static_cast<std::size_t>(n)] = 1;
    for (i64 d : divisors(n)) {
        if (d == n) continue;
        auto it = cache.find(d);
        std::vector<i64> phid;
        if (it != cache.end()) {
            phid = it->second;
        } else {
            // build Phi_d bottom-up without taking the lock again
            std::vector<i64> nd(static_cast<std::size_t>(d) + 1, 0);
            nd[0] = -1;
            nd[static_cast<std::size_t>(d)] = 1;
            for (i64 e : divisors(d)) {
                if (e == d) continue;
                if (!cache.count(e)) throw std::logic_error("cyclotomic cache order");
                nd = poly_exact_div(nd, cache[e]);
            }
            cache[d] = nd;
            phid = nd;
        }
        num = poly_exact_div(num, phid);
    }
    return cache[n] = num;
}

CycElt::CycElt(i64 level) : level_(level) {
    if (level < 1) throw std::domain_error("CycElt: level must be >= 1");
    coeffs_.assign(static_cast<std::size_t>(euler_phi(level)), mpq_class(0));
}

CycElt::CycElt(i64 level, std::vector<mpq_class> coeffs) : level_(level), coeffs_(std::move(coeffs)) {}

CycElt CycElt::from_int(i64 level, i64 v) { return from_rational(level, mpq_class(static_cast<long>(v))); }

CycElt CycElt::from_rational(i64 level, const mpq_class& v) {
    CycElt r(level);
    r.coeffs_[0] = v;
    return r;
}

std::vector<mpq_class> CycElt::reduce(i64 level, std::vector<mpq_class> poly) {
    const auto& phi = cyclotomic_polynomial(level);
    const std::size_t d = phi.size() - 1;
    for (std::size_t i = poly.size(); i-- > d;) {
        if (poly[i] == 0) continue;
        mpq_class c = poly[i];
        for (std::size_t j = 0; j <= d; ++j)
            if (phi[j] != 0) poly[i - d + j] -= c * static_cast<long>(phi[j]);
    }
    poly.resize(d, mpq_class(0));
    return poly;
}

CycElt CycElt::zeta_power(i64 level, i64 a) {
    std::vector<mpq_class> p(static_cast<std::size_t>(mod(a, level)) + 1, mpq_class(0));
    p.back() = 1;
    return CycElt(level, reduce(level, std::move(p)));
}

CycElt CycElt::one_minus_zeta(i64 level, i64 a) { return from_int(level, 1) - zeta_power(level, a); }

bool CycElt::is_zero() const {
    for (auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CycElt::is_one() const {
    if (coeffs_.empty() || coeffs_[0] != 1) return false;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

void CycElt::require_same_level(const CycElt& o) const {
    if (level_ != o.level_) throw std::invalid_argument("CycElt: incompatible levels (embed first)");
}

CycElt CycElt::operator+(const CycElt& o) const {
    require_same_level(o);
    CycElt r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
    return r;
}

CycElt CycElt::operator-(const CycElt& o) const { return *this + (-o); }

CycElt CycElt::operator-() const {
    CycElt r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

CycElt CycElt::operator*(const CycElt& o) const {
    require_same_level(o);
    return CycElt(level_, reduce(level_, poly_mul(coeffs_, o.coeffs_)));
}

bool CycElt::operator==(const CycElt& o) const { return level_ == o.level_ && coeffs_ == o.coeffs_; }

CycElt CycElt::inverse() const {
    if (is_zero()) throw std::domain_error("CycElt: division by zero");
    // extended Euclid: s * a + t * Phi = 1
    const auto& phi_int = cyclotomic_polynomial(level_);
    std::vector<mpq_class> phi(phi_int.begin(), phi_int.end());
    std::vector<mpq_class> r0 = phi, r1 = coeffs_;
    std::vector<mpq_class> s0, s1{mpq_class(1)};
    trim(r1);
    while (!r1.empty()) {
        auto [q, r] = poly_divmod(r0, r1);
        auto qs = poly_mul(q, s1);
        std::vector<mpq_class> s2(std::max(s0.size(), qs.size()), mpq_class(0));
        for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
        for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant since Phi is irreducible
    if (r0.size() != 1) throw std::logic_error("CycElt::inverse: gcd not constant");
    mpq_class inv = 1 / r0[0];
    for (auto& c : s0) c *= inv;
    return CycElt(level_, reduce(level_, s0));
}

CycElt CycElt::operator/(const CycElt& o) const { return *this * o.inverse(); }

CycElt CycElt::pow(i64 e) const {
    if (e < 0) return inverse().pow(-e);
    CycElt r = from_int(level_, 1), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

CycElt CycElt::galois(i64 t) const {
    if (gcd(t, level_) != 1) throw std::domain_error("galois: t not coprime to level");
    std::vector<mpq_class> p(static_cast<std::size_t>(level_), mpq_class(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) p[static_cast<std::size_t>(mod(static_cast<i64>(i) * t, level_))] += coeffs_[i];
    return CycElt(level_, reduce(level_, std::move(p)));
}

CycElt CycElt::embed(i64 target_level) const {
    if (target_level % level_ != 0) throw std::invalid_argument("embed: target level not a multiple");
    const i64 step = target_level / level_;
    std::vector<mpq_class> p(static_cast<std::size_t>(step) * coeffs_.size() + 1, mpq_class(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) p[i * static_cast<std::size_t>(step)] = coeffs_[i];
    return CycElt(target_level, reduce(target_level, std::move(p)));
}

mpq_class CycElt::absolute_norm() const {
    CycElt prod = from_int(level_, 1);
    for (i64 t : units_mod(level_)) prod = prod * galois(t);
    for (std::size_t i = 1; i < prod.coeffs_.size(); ++i)
        if (prod.coeffs_[i] != 0) throw std::logic_error("absolute_norm: not rational");
    return prod.coeffs_.empty() ? mpq_class(0) : prod.coeffs_[0];
}

std::string CycElt::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << coeffs_[i].get_str();
        if (i > 0) os << "*z^" << i;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace modk2::cyclo
