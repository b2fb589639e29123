#include "modk2/gm2k1/k1.hpp"

#include <sstream>
#include <stdexcept>

namespace modk2::gm2k1 {

QZ QZ::make(i64 n, i64 d) {
    if (d == 0) throw std::domain_error("QZ: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const i64 g = gcd(n, d);
    n /= g;
    d /= g;
    return {mod(n, d), d};
}

QZ QZ::operator+(const QZ& o) const {
    const i64 l = checked_mul(den / gcd(den, o.den), o.den);
    return make(checked_add(checked_mul(num, l / den), checked_mul(o.num, l / o.den)), l);
}

std::string QZ::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

PrimVec PrimVec::make(i64 a, i64 c, bool* flipped) {
    if (gcd(a, c) != 1) throw std::domain_error("PrimVec: gcd(a, c) != 1");
    const bool flip = a < 0 || (a == 0 && c < 0);
    if (flipped) *flipped = flip;
    return flip ? PrimVec{-a, -c} : PrimVec{a, c};
}

std::string PrimVec::to_string() const { return "(" + std::to_string(a) + "," + std::to_string(c) + ")"; }

DivisorFn DivisorFn::one_minus(const QZ& theta, i64 k) {
    if (k == 0) throw std::domain_error("1 - eta s^0 is a constant outside the function class");
    DivisorFn f;
    f.factors[theta] = 1;
    return f.substitute_power(k);
}

DivisorFn DivisorFn::operator*(const DivisorFn& o) const {
    DivisorFn r = *this;
    r.mu = r.mu + o.mu;
    r.m = checked_add(r.m, o.m);
    for (auto& [t, e] : o.factors) {
        i64& slot = r.factors[t];
        slot = checked_add(slot, e);
        if (slot == 0) r.factors.erase(t);
    }
    return r;
}

DivisorFn DivisorFn::pow(i64 e) const {
    DivisorFn r;
    if (e == 0) return r;
    r.mu = mu * e;
    r.m = checked_mul(m, e);
    for (auto& [t, x] : factors) r.factors[t] = checked_mul(x, e);
    return r;
}

DivisorFn DivisorFn::invert_parameter() const {
    // 1 - eta s^-1 = -eta s^-1 (1 - eta^-1 s)
    DivisorFn r;
    r.mu = mu;
    r.m = -m;
    for (auto& [t, e] : factors) {
        DivisorFn piece;
        piece.mu = (QZ::make(1, 2) + t) * e;
        piece.m = -e;
        piece.factors[-t] = e;
        r = r * piece;
    }
    return r;
}

DivisorFn DivisorFn::substitute_power(i64 k) const {
    if (k == 0) throw std::domain_error("substitute_power: k = 0");
    if (k < 0) return substitute_power(-k).invert_parameter();
    // 1 - eta s^k = prod_j (1 - eta_j s) over the k-th roots eta_j of eta
    DivisorFn r;
    r.mu = mu;
    r.m = checked_mul(m, k);
    for (auto& [t, e] : factors)
        for (i64 j = 0; j < k; ++j) {
            DivisorFn piece;
            piece.factors[QZ::make(checked_add(t.num, checked_mul(j, t.den)), checked_mul(k, t.den))] = e;
            r = r * piece;
        }
    return r;
}

DivisorFn DivisorFn::norm_power(i64 p) const {
    // N(c) = c^p, N(s) = (-1)^{p+1} t, N(1 - eta s) = 1 - eta^p t
    DivisorFn r;
    r.mu = mu * p;
    r.m = m;
    if (p % 2 == 0) r.mu = r.mu + QZ::make(m, 2);
    for (auto& [t, e] : factors) {
        DivisorFn piece;
        piece.factors[t * p] = e;
        r = r * piece;
    }
    return r;
}

std::string DivisorFn::to_string() const {
    std::ostringstream os;
    os << "e(" << mu.to_string() << ")";
    if (m != 0) os << "*s^" << m;
    for (auto& [t, e] : factors) os << "*(1-e(" << t.to_string() << ")s)^" << e;
    return os.str();
}

void K1Elem::add_component(i64 a, i64 c, const DivisorFn& f) {
    bool flipped = false;
    PrimVec v = PrimVec::make(a, c, &flipped);
    DivisorFn g = flipped ? f.invert_parameter() : f;
    auto it = comps_.find(v);
    if (it == comps_.end()) {
        if (!g.is_one()) comps_.emplace(v, std::move(g));
        return;
    }
    it->second = it->second * g;
    if (it->second.is_one()) comps_.erase(it);
}

K1Elem K1Elem::operator+(const K1Elem& o) const {
    K1Elem r = *this;
    for (auto& [v, f] : o.comps_) r.add_component(v.a, v.c, f);
    return r;
}

K1Elem K1Elem::scaled(i64 k) const {
    K1Elem r;
    for (auto& [v, f] : comps_) r.add_component(v.a, v.c, f.pow(k));
    return r;
}

std::string K1Elem::to_string() const {
    if (comps_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [v, f] : comps_) {
        os << (first ? "" : " + ") << v.to_string() << ":" << f.to_string();
        first = false;
    }
    return os.str();
}

K1Elem bracket_symbol(i64 a, i64 c) {
    if (gcd(a, c) != 1) throw std::domain_error("bracket_symbol: gcd(a, c) != 1");
    K1Elem r;
    r.add_component(a, c, DivisorFn::one_minus(QZ{}, 1));
    return r;
}

K1Elem restrict_monomial(i64 a, i64 c, const QZ& theta, i64 x, i64 y) {
    // on s -> (s^-c, s^a), z1^x z2^y = s^{ay - cx}
    K1Elem r;
    r.add_component(a, c, DivisorFn::one_minus(theta, checked_add(checked_mul(a, y), -checked_mul(c, x))));
    return r;
}

K1Elem pullback(const Mat2& g, const K1Elem& x) {
    if (g.det() != 1) throw std::domain_error("pullback: determinant must be 1");
    K1Elem r;
    // the divisor of (a, c) pulls back to that of g (a, c)^T with the same parameter
    for (auto& [v, f] : x.components())
        r.add_component(checked_add(checked_mul(g.a, v.a), checked_mul(g.b, v.c)), checked_add(checked_mul(g.c, v.a), checked_mul(g.d, v.c)), f);
    return r;
}

K1Elem pushforward(const Mat2& g, const K1Elem& x) { return pullback(g.inverse_sl2(), x); }

K1Elem pushforward_alpha(i64 p, const K1Elem& x) {
    if (!is_prime(p)) throw std::domain_error("pushforward_alpha: p must be prime");
    K1Elem r;
    for (auto& [v, f] : x.components()) {
        // image points (s^-c, s^{pa}); the image divisor is (pa, c)/g with parameter t = s^g
        const i64 g = gcd(p, v.c);
        if (g == 1) r.add_component(checked_mul(p, v.a), v.c, f);
        else r.add_component(v.a, v.c / p, f.norm_power(p));
    }
    return r;
}

K1Elem pullback_alpha(i64 p, const K1Elem& x) {
    if (!is_prime(p)) throw std::domain_error("pullback_alpha: p must be prime");
    K1Elem r;
    for (auto& [v, f] : x.components()) {
        if (v.a % p == 0) throw std::domain_error("pullback_alpha: preimage of " + v.to_string() + " is reducible");
        // preimage divisor (A, pC) with parameter t, s = t^p
        r.add_component(v.a, checked_mul(p, v.c), f.substitute_power(p));
    }
    return r;
}

K1Elem del_theta(const Mat2& g) { return bracket_symbol(g.b, g.d) - bracket_symbol(0, 1); }

K1Elem act(LeftAction how, const Mat2& g, const K1Elem& x) {
    return how == LeftAction::pullback ? pullback(g, x) : pushforward(g, x);
}

bool cocycle_holds(LeftAction how, const Mat2& g1, const Mat2& g2) {
    return del_theta(g1 * g2) == del_theta(g1) + act(how, g1, del_theta(g2));
}

LeftAction calibrate_action() {
    const Mat2 S{0, -1, 1, 0}, T{1, 1, 0, 1};
    const Mat2 gens[] = {S, T, T.inverse_sl2()};
    for (LeftAction how : {LeftAction::pullback, LeftAction::pushforward}) {
        bool ok = true;
        for (auto& g1 : gens)
            for (auto& g2 : gens) ok = ok && cocycle_holds(how, g1, g2);
        if (ok) return how;
    }
    throw std::logic_error("calibrate_action: no left action makes dTheta a cocycle");
}

Mat2 phi_p(i64 p, const Mat2& g) {
    if (g.c % p != 0) throw std::domain_error("phi_p: p does not divide c");
    return {g.a, checked_mul(p, g.b), g.c / p, g.d};
}

Lemma41Result lemma41_check(i64 p, const Mat2& g) {
    Lemma41Result r;
    r.lhs = pushforward_alpha(p, del_theta(g));
    r.rhs = del_theta(phi_p(p, g));
    r.pass = r.lhs == r.rhs;
    return r;
}

Mat2 random_gamma0(i64 N, std::mt19937_64& rng, i64 bound) {
    // plain modular reduction keeps the stream identical across standard libraries
    auto kd = [&] { return static_cast<i64>(rng() % static_cast<u64>(2 * bound + 1)) - bound; };
    for (;;) {
        const i64 c = checked_mul(N, kd());
        const i64 d = kd() * std::max<i64>(1, std::abs(c) / 2 + 1) + kd();
        if (gcd(c, d) != 1) continue;
        return complete_bottom_row(c, d);
    }
}

}  // namespace modk2::gm2k1
