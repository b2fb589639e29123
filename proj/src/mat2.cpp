#include "modk2/mat2.hpp"

#include <sstream>

namespace modk2 {

Frac Frac::make(i64 n, i64 d) {
    if (d == 0) {
        if (n == 0) throw std::domain_error("Frac: 0/0");
        return infinity();
    }
    i64 g = gcd(n, d);
    n /= g;
    d /= g;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return {n, d};
}

std::string Frac::to_string() const {
    if (is_infinity()) return "oo";
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Frac Mat2::act(const Frac& x) const {
    if (x.is_infinity()) return Frac::make(a, c);
    return Frac::make(checked_add(checked_mul(a, x.num), checked_mul(b, x.den)),
                      checked_add(checked_mul(c, x.num), checked_mul(d, x.den)));
}

std::string Mat2::to_string() const {
    std::ostringstream os;
    os << "[" << a << " " << b << "; " << c << " " << d << "]";
    return os.str();
}

std::pair<i64, i64> lift_coprime_pair(i64 c, i64 d, i64 m) {
    c = mod(c, m);
    d = mod(d, m);
    if (gcd(gcd(c, d), m) != 1) throw std::domain_error("lift_coprime_pair: gcd(c, d, m) != 1");
    if (c == 0) c = m;
    for (i64 k = 0;; ++k) {
        i64 dd = d + k * m;
        if (gcd(c, dd) == 1) return {c, dd};
    }
}

Mat2 complete_bottom_row(i64 c, i64 d) {
    auto e = ext_gcd(d, c);  // x d + y c = g
    if (e.g != 1) throw std::domain_error("complete_bottom_row: entries not coprime");
    // a d - b c = 1 with a = x, b = -y
    return {e.x, -e.y, c, d};
}

Mat2 gamma0_with_lower_right(i64 M, i64 t) {
    t = mod(t, M);
    if (gcd(t, M) != 1) throw std::domain_error("gamma0_with_lower_right: t not a unit");
    if (M == 1) return Mat2::identity();
    // (a b; M t) with a t - b M = 1
    auto e = ext_gcd(t, M);  // x t + y M = 1
    return {e.x, -e.y, M, t};
}

}  // namespace modk2
