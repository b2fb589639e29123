// Command-line front end: `present` prints a homology presentation, `verify` runs one check.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "modk2/harness/harness.hpp"
#include "modk2/modsym/homology.hpp"

using namespace modk2;

namespace {

std::vector<std::size_t> cusp_selection(const modsym::HomologyPresentation& P, const std::string& which) {
    if (which == "all") {
        std::vector<std::size_t> all(P.cusps().size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return all;
    }
    if (which == "C0") return P.c0_cusps();
    if (which == "Cinf") return P.cusps().diamond_orbit_of(Frac::infinity());
    return {};
}

void present(std::ostream& os, i64 M, const std::string& which) {
    auto P = modsym::presentation(M);
    const auto& cs = P->cusps();
    std::size_t s0 = P->s0_indices().size();
    os << "presentation " << M << "\n";
    os << "cosets " << P->cosets().size() << " s0 " << s0 << "\n";
    os << "cusps " << cs.size() << "\n";
    for (std::size_t i = 0; i < cs.size(); ++i) os << "cusp " << i << " " << cs.label(i) << " " << (cs.in_c0(i) ? 1 : 0) << "\n";
    os << "rank " << P->rank() << "\n";
    const auto subset = cusp_selection(*P, which);
    const SubLattice H = P->sub_homology(subset);
    os << "subset " << which << " " << subset.size();
    for (auto c : subset) os << " " << c;
    os << "\n";
    os << "sublattice " << H.rank() << " " << H.ambient() << "\n";
    for (int i = 0; i < H.rank(); ++i) {
        auto row = H.basis().row(i);
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
        os << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Modular symbols, Sharifi's map and cyclotomic K_2 checks"};
    app.require_subcommand(1);
    std::string cache_flag;
    app.add_option("--cache-dir", cache_flag, "cache directory (default: $MODK2_CACHE_DIR, none if unset)");

    auto* pres = app.add_subcommand("present", "print the presentation of H_1(X_1(M), cusps, Z)");
    i64 pM = 0;
    std::string pcusps = "all", pout;
    pres->add_option("--M", pM, "level")->required()->check(CLI::Range(i64{4}, i64{1000}));
    pres->add_option("--cusps", pcusps, "cusp subset of the sublattice to print")->check(CLI::IsMember({"all", "C0", "Cinf", "none"}));
    pres->add_option("--out", pout, "write to this file instead of stdout");

    auto* ver = app.add_subcommand("verify", "run one verification check");
    harness::CheckSpec spec;
    std::string kind, cusps = "orbit", backend = "tame", out;
    bool print_json = false;
    ver->add_option("kind", kind, "check kind")->required()->check(CLI::IsMember(harness::kind_names()));
    ver->add_option("--M", spec.M, "level (largest level for oracles)")->required();
    ver->add_option("--p", spec.p, "prime p");
    ver->add_option("--l", spec.l, "prime l");
    ver->add_option("--cusps", cusps, "cusp subset: every kernel orbit in C^0, or the diamond orbit of infinity")->check(CLI::IsMember({"orbit", "infty"}));
    ver->add_option("--trials", spec.trials, "random trials (lemma41)");
    ver->add_option("--seed", spec.seed, "random seed (lemma41)");
    ver->add_option("--backend", backend, "K_2 backend")->check(CLI::IsMember({"tame", "presented", "both"}));
    ver->add_option("--out", out, "directory for report.json and summary.txt");
    ver->add_flag("--json", print_json, "print the JSON report instead of the summary");

    CLI11_PARSE(app, argc, argv);

    try {
        harness::configure_cache(cache_flag);
        if (*pres) {
            if (pout.empty()) {
                present(std::cout, pM, pcusps);
            } else {
                std::ofstream f(pout);
                if (!f) throw std::runtime_error("cannot open " + pout);
                present(f, pM, pcusps);
            }
            return 0;
        }
        spec.kind = harness::parse_kind(kind);
        spec.cusps = harness::parse_cusp_mode(cusps);
        spec.backend = harness::parse_backend(backend);
        spec.validate();
        const std::vector<harness::VerificationReport> reports{harness::run_check(spec)};
        if (!out.empty()) harness::emit_report(reports, out);
        if (print_json) std::cout << harness::report_json(reports).dump(2) << "\n";
        else std::cout << harness::summary_text(reports);
        return reports.front().pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
