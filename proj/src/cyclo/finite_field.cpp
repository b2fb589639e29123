#include "modk2/cyclo/finite_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "modk2/cyclo/cyclotomic.hpp"

namespace modk2::cyclo {

namespace fp {

void trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly add(const FpPoly& a, const FpPoly& b, i64 l) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = mod(r[i] + b[i], l);
    trim(r);
    return r;
}

FpPoly sub(const FpPoly& a, const FpPoly& b, i64 l) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = mod(r[i] - b[i], l);
    trim(r);
    return r;
}

FpPoly mul(const FpPoly& a, const FpPoly& b, i64 l) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mul_mod(a[i], b[j], l)) % l;
    }
    trim(r);
    return r;
}

namespace {
void divmod_inplace(FpPoly& a, const FpPoly& b, i64 l, FpPoly* q) {
    if (b.empty()) throw std::domain_error("FpPoly: division by zero");
    trim(a);
    const std::size_t db = b.size() - 1;
    const i64 lead_inv = inv_mod(b.back(), l);
    if (q) q->assign(a.size() >= b.size() ? a.size() - db : 0, 0);
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const i64 c = mul_mod(a.back(), lead_inv, l);
        if (q) (*q)[shift] = c;
        for (std::size_t j = 0; j <= db; ++j) a[shift + j] = mod(a[shift + j] - mul_mod(c, b[j], l), l);
        trim(a);
    }
    if (q) trim(*q);
}
}  // namespace

FpPoly rem(FpPoly a, const FpPoly& b, i64 l) {
    divmod_inplace(a, b, l, nullptr);
    return a;
}

FpPoly quot(FpPoly a, const FpPoly& b, i64 l) {
    FpPoly q;
    divmod_inplace(a, b, l, &q);
    return q;
}

FpPoly monic(FpPoly a, i64 l) {
    trim(a);
    if (a.empty()) return a;
    const i64 inv = inv_mod(a.back(), l);
    for (auto& c : a) c = mul_mod(c, inv, l);
    return a;
}

FpPoly gcd(FpPoly a, FpPoly b, i64 l) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        FpPoly r = rem(a, b, l);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, l);
}

FpPoly powmod(FpPoly base, u64 e, const FpPoly& m, i64 l) {
    FpPoly r{1};
    r = rem(r, m, l);
    base = rem(base, m, l);
    while (e != 0) {
        if (e & 1u) r = rem(mul(r, base, l), m, l);
        e >>= 1u;
        if (e != 0) base = rem(mul(base, base, l), m, l);
    }
    return r;
}

FpPoly compose_power(const FpPoly& a, i64 k, const FpPoly& m, i64 l) {
    const FpPoly xk = powmod(FpPoly{0, 1}, static_cast<u64>(k), m, l);
    FpPoly r, p = rem(FpPoly{1}, m, l);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0) r = add(r, mul(p, FpPoly{a[i]}, l), l);
        p = rem(mul(p, xk, l), m, l);
    }
    return rem(r, m, l);
}

FpPoly from_integers(const std::vector<i64>& c, i64 l) {
    FpPoly r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r[i] = mod(c[i], l);
    trim(r);
    return r;
}

std::string to_string(const FpPoly& a) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? " " : "") << a[i];
    os << ']';
    return os.str();
}

}  // namespace fp

namespace {

// a^(1 + l + ... + l^(f-1)) mod h via Frobenius powers; avoids the size of l^f
FpPoly frobenius_norm(const FpPoly& a, int f, const FpPoly& h, i64 l) {
    FpPoly acc = fp::rem(a, h, l), cur = acc;
    for (int i = 1; i < f; ++i) {
        cur = fp::powmod(cur, static_cast<u64>(l), h, l);
        acc = fp::rem(fp::mul(acc, cur, l), h, l);
    }
    return acc;
}

FpPoly frobenius_trace(const FpPoly& a, int f, const FpPoly& h, i64 l) {
    FpPoly acc = fp::rem(a, h, l), cur = acc;
    for (int i = 1; i < f; ++i) {
        cur = fp::powmod(cur, static_cast<u64>(l), h, l);
        acc = fp::add(acc, cur, l);
    }
    return acc;
}

void equal_degree_split(const FpPoly& h, int f, i64 l, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    const int d = static_cast<int>(h.size()) - 1;
    if (d == f) {
        out.push_back(h);
        return;
    }
    std::uniform_int_distribution<i64> coef(0, l - 1);
    for (;;) {
        FpPoly a(static_cast<std::size_t>(d));
        for (auto& c : a) c = coef(rng);
        fp::trim(a);
        if (a.size() < 2) continue;
        FpPoly b;
        if (l == 2) {
            b = frobenius_trace(a, f, h, l);
        } else {
            FpPoly n = frobenius_norm(a, f, h, l);
            b = fp::sub(fp::powmod(n, static_cast<u64>((l - 1) / 2), h, l), FpPoly{1}, l);
        }
        FpPoly g = fp::gcd(h, b, l);
        const int dg = static_cast<int>(g.size()) - 1;
        if (dg > 0 && dg < d) {
            equal_degree_split(g, f, l, rng, out);
            equal_degree_split(fp::quot(h, g, l), f, l, rng, out);
            return;
        }
    }
}

bool miller_rabin(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1u) == 0) {
        d >>= 1u;
        ++s;
    }
    auto mulm = [n](u64 a, u64 b) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % n); };
    auto powm = [&](u64 b, u64 e) {
        u64 r = 1;
        while (e) {
            if (e & 1u) r = mulm(r, b);
            b = mulm(b, b);
            e >>= 1u;
        }
        return r;
    };
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powm(a, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulm(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    auto mulm = [n](u64 a, u64 b) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % n); };
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto step = [&](u64 v) { return (mulm(v, v) + c) % n; };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_rec(u64 n, std::vector<u64>& primes) {
    if (n == 1) return;
    if (miller_rabin(n)) {
        primes.push_back(n);
        return;
    }
    for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
        if (n % p == 0) {
            primes.push_back(p);
            factor_rec(n / p, primes);
            return;
        }
    }
    u64 d = pollard_rho(n);
    factor_rec(d, primes);
    factor_rec(n / d, primes);
}

}  // namespace

std::vector<std::pair<u64, int>> factorize_u64(u64 n) {
    if (n == 0) throw std::domain_error("factorize_u64: zero");
    std::vector<u64> primes;
    factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<u64, int>> out;
    for (u64 p : primes) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

std::vector<FpPoly> factor_cyclotomic_mod(i64 n, i64 l) {
    if (!is_prime(l)) throw std::domain_error("factor_cyclotomic_mod: l not prime");
    if (n % l == 0) throw std::domain_error("factor_cyclotomic_mod: l divides n");
    const FpPoly phi = fp::from_integers(cyclotomic_polynomial(n), l);
    const int f = static_cast<int>(mult_order(mod(l, n), n));
    std::vector<FpPoly> out;
    std::mt19937_64 rng(0x5eed0000u + static_cast<u64>(n) * 1009u + static_cast<u64>(l));
    equal_degree_split(phi, f, l, rng, out);
    std::sort(out.begin(), out.end(), [](const FpPoly& a, const FpPoly& b) {
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

ResidueField::ResidueField(i64 l, FpPoly g) : l_(l), g_(fp::monic(std::move(g), l)) {
    f_ = static_cast<int>(g_.size()) - 1;
    if (f_ < 1) throw std::domain_error("ResidueField: modulus must have positive degree");
    unsigned __int128 q = 1;
    for (int i = 0; i < f_; ++i) {
        q *= static_cast<unsigned __int128>(l);
        if (q > (static_cast<unsigned __int128>(1) << 62)) throw std::overflow_error("ResidueField: field too large");
    }
    q_ = static_cast<u64>(q);
    order_factors_ = factorize_u64(q_ - 1);
    // enumerate elements in base-l order of their coefficient vectors
    for (u64 code = 1;; ++code) {
        FpPoly a;
        for (u64 c = code; c != 0; c /= static_cast<u64>(l)) a.push_back(static_cast<i64>(c % static_cast<u64>(l)));
        fp::trim(a);
        if (static_cast<int>(a.size()) > f_) throw std::logic_error("ResidueField: no generator found");
        bool primitive = true;
        for (auto [p, e] : order_factors_) {
            if (is_one(pow(a, (q_ - 1) / p))) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            gen_ = a;
            break;
        }
    }
}

FpPoly ResidueField::constant(i64 c) const {
    FpPoly r{mod(c, l_)};
    fp::trim(r);
    return r;
}

FpPoly ResidueField::inv(const FpPoly& a) const {
    if (fp::rem(a, g_, l_).empty()) throw std::domain_error("ResidueField: inverse of zero");
    return pow(a, q_ - 2);
}

FpPoly ResidueField::pow_signed(const FpPoly& a, i64 e) const {
    const u64 n = q_ - 1;
    const u64 r = static_cast<u64>(mod(e, static_cast<i64>(n)));
    if (e < 0 && fp::rem(a, g_, l_).empty()) throw std::domain_error("ResidueField: negative power of zero");
    return pow(a, r);
}

u64 ResidueField::order(const FpPoly& a) const {
    u64 ord = q_ - 1;
    for (auto [p, e] : order_factors_) {
        for (int i = 0; i < e && ord % p == 0 && is_one(pow(a, ord / p)); ++i) ord /= p;
    }
    return ord;
}

u64 ResidueField::dlog(const FpPoly& a0) const {
    const FpPoly a = reduce(a0);
    if (a.empty()) throw std::domain_error("dlog of zero");
    const u64 n = q_ - 1;
    auto key = [](const FpPoly& v) {
        std::string s;
        for (auto c : v) s += std::to_string(c) + ',';
        return s;
    };
    // CRT accumulation of x mod p^e
    unsigned __int128 x = 0, modulus = 1;
    for (auto [p, e] : order_factors_) {
        u64 pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        const u64 cofactor = n / pe;
        const FpPoly gp = pow(gen_, cofactor);           // order p^e
        const FpPoly ap = pow(a, cofactor);
        const FpPoly gamma = pow(gp, pe / p);              // order p
        // baby steps for gamma
        const u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(p)))) + 1;
        std::unordered_map<std::string, u64> table;
        FpPoly cur = one();
        for (u64 j = 0; j < m; ++j) {
            table.emplace(key(cur), j);
            cur = mul(cur, gamma);
        }
        const FpPoly giant = inv(pow(gamma, m));
        u64 xi = 0, pk = 1;
        for (int k = 0; k < e; ++k) {
            // h = (ap * gp^{-xi})^{p^{e-1-k}}
            FpPoly h = mul(ap, inv(pow(gp, xi)));
            u64 exp = 1;
            for (int i = 0; i < e - 1 - k; ++i) exp *= p;
            h = pow(h, exp);
            u64 d = 0;
            bool found = false;
            FpPoly y = h;
            for (u64 i = 0; i <= m && !found; ++i) {
                if (auto it = table.find(key(y)); it != table.end()) {
                    d = i * m + it->second;
                    found = true;
                }
                y = mul(y, giant);
            }
            if (!found) throw std::logic_error("dlog: element not in group");
            xi += d * pk;
            pk *= p;
        }
        // combine x mod modulus with xi mod pe
        const i64 mi = static_cast<i64>(modulus % pe);
        u64 t = 0;
        if (pe > 1) {
            const i64 diff = mod(static_cast<i64>(xi % pe) - static_cast<i64>(x % pe), static_cast<i64>(pe));
            t = static_cast<u64>(mul_mod(diff, inv_mod(mi, static_cast<i64>(pe)), static_cast<i64>(pe)));
        }
        x += modulus * t;
        modulus *= pe;
    }
    return static_cast<u64>(x % n);
}

}  // namespace modk2::cyclo
