// Acceptance run: one line per criterion, exit status 1 if any fails.
// Comparisons are exact; the discarded primes, trial counts and seeds are fixed here.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "modk2/harness/harness.hpp"

using namespace modk2;
using namespace modk2::harness;

namespace {

constexpr u64 kSeed = 20240601;
constexpr int kLemmaTrials = 200;  // cocycle pairs: half of this

struct Criterion {
    std::string id;
    std::string what;
    std::vector<CheckSpec> specs;
    double budget_seconds;  // per check
};

CheckSpec make(CheckKind k, i64 M, i64 p = 0, i64 l = 0, CuspMode c = CuspMode::orbit, Backend b = Backend::tame) {
    CheckSpec s;
    s.kind = k;
    s.M = M;
    s.p = p;
    s.l = l;
    s.cusps = c;
    s.backend = b;
    s.trials = kLemmaTrials;
    s.seed = kSeed;
    return s;
}

std::vector<Criterion> criteria() {
    std::vector<Criterion> cs;
    Criterion a1{"A1", "varpi_M well defined, M = 4..16", {}, 60};
    for (i64 M = 4; M <= 16; ++M) a1.specs.push_back(make(CheckKind::welldefined, M, 0, 0, CuspMode::orbit, Backend::both));
    cs.push_back(a1);

    Criterion a2{"A2", "norm relation, p | M", {}, 300};
    for (auto [M, p] : {std::pair<i64, i64>{4, 2}, {8, 2}, {9, 3}})
        for (auto c : {CuspMode::orbit, CuspMode::infty}) a2.specs.push_back(make(CheckKind::theorem1_divides, M, p, 0, c, Backend::both));
    cs.push_back(a2);

    Criterion a3{"A3", "norm relation, p not dividing M", {}, 300};
    for (auto [M, p] : {std::pair<i64, i64>{4, 3}, {5, 2}, {7, 2}})
        for (auto c : {CuspMode::orbit, CuspMode::infty}) a3.specs.push_back(make(CheckKind::theorem1_coprime, M, p, 0, c, Backend::both));
    cs.push_back(a3);

    Criterion a4{"A4", "U_l - 1 annihilation, l | M", {}, 600};
    for (i64 M : {11, 14, 15})
        for (i64 l : prime_divisors(M)) a4.specs.push_back(make(CheckKind::atkin, M, 0, l, CuspMode::orbit, Backend::both));
    cs.push_back(a4);

    Criterion a5{"A5", "Eisenstein property on C_inf", {}, 600};
    for (i64 M : {11, 13})
        for (i64 l : {2, 3, 5, 7}) a5.specs.push_back(make(CheckKind::eisenstein, M, 0, l, CuspMode::orbit, Backend::both));
    cs.push_back(a5);

    Criterion a6{"A6", "trace of dTheta and the cocycle identity", {}, 60};
    for (auto [M, p] : {std::pair<i64, i64>{4, 2}, {4, 3}, {6, 5}}) a6.specs.push_back(make(CheckKind::lemma41, M, p));
    cs.push_back(a6);

    Criterion a7{"A7", "Gamma_0 cocycle module, M = 5..16", {}, 60};
    for (i64 M = 5; M <= 16; ++M) a7.specs.push_back(make(CheckKind::prop31, M));
    cs.push_back(a7);

    Criterion a8{"A8", "pi_1 - <p> pi_2 onto mod p", {}, 60};
    for (i64 p : {2, 3}) a8.specs.push_back(make(CheckKind::surjectivity, 11, p));
    cs.push_back(a8);

    Criterion a9{"A9", "integrality at places prime to M", {}, 60};
    for (i64 M : {5, 7, 11}) a9.specs.push_back(make(CheckKind::sanity_integrality, M));
    cs.push_back(a9);

    cs.push_back({"A10", "rank = 2 genus and cusp counts, M <= 30", {make(CheckKind::oracles, 30)}, 60});
    return cs;
}

}  // namespace

int main(int argc, char** argv) {
    std::string out = argc > 1 ? argv[1] : "";
    configure_cache("");
    std::vector<VerificationReport> all;
    bool ok = true;
    for (auto& c : criteria()) {
        int passed = 0;
        double worst = 0;
        std::string first_failure;
        for (auto& s : c.specs) {
            VerificationReport r = run_check(s);
            worst = std::max(worst, r.seconds);
            if (r.pass && r.seconds <= c.budget_seconds) ++passed;
            else if (first_failure.empty()) first_failure = s.label() + ": " + (r.pass ? "over time budget" : r.summary);
            all.push_back(std::move(r));
        }
        const bool pass = passed == static_cast<int>(c.specs.size());
        ok = ok && pass;
        std::cout << c.id << " " << (pass ? "PASS" : "FAIL") << "  " << c.what << "  (" << passed << "/" << c.specs.size() << " checks, slowest " << worst << " s)";
        if (!pass) std::cout << "  first failure: " << first_failure;
        std::cout << std::endl;
    }
    if (!out.empty()) emit_report(all, out);
    return ok ? 0 : 1;
}
