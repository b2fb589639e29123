#include "modk2/arith.hpp"

#include <algorithm>

namespace modk2 {

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n < 1) throw std::domain_error("factorize: n must be positive");
    std::vector<std::pair<i64, int>> out;
    for (i64 d = 2; d * d <= n; ++d) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e > 0) out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<i64> prime_divisors(i64 n) {
    std::vector<i64> out;
    for (auto [p, e] : factorize(n)) out.push_back(p);
    return out;
}

std::vector<i64> divisors(i64 n) {
    std::vector<i64> out{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t sz = out.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

i64 euler_phi(i64 n) {
    i64 r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

i64 mult_order(i64 a, i64 m) {
    if (gcd(a, m) != 1) throw std::domain_error("mult_order: a not a unit");
    if (m == 1) return 1;
    i64 order = euler_phi(m);
    for (auto [p, e] : factorize(order)) {
        while (order % p == 0 && pow_mod(a, static_cast<u64>(order / p), m) == 1) order /= p;
    }
    return order;
}

std::pair<i64, int> split_prime_part(i64 n, i64 p) {
    int k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return {n, k};
}

std::vector<i64> units_mod(i64 m) {
    std::vector<i64> out;
    for (i64 a = 0; a < m; ++a)
        if (gcd(a, m) == 1) out.push_back(m == 1 ? 0 : a);
    return out;
}

}  // namespace modk2
