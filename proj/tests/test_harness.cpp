#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "modk2/harness/harness.hpp"
#include "modk2/modsym/cusps.hpp"
#include "modk2/modsym/homology.hpp"

using namespace modk2;
using namespace modk2::harness;

namespace {

CheckSpec spec(CheckKind k, i64 M, i64 p = 0, i64 l = 0) {
    CheckSpec s;
    s.kind = k;
    s.M = M;
    s.p = p;
    s.l = l;
    return s;
}

}  // namespace

TEST_CASE("spec validation") {
    CHECK_NOTHROW(spec(CheckKind::theorem1_divides, 4, 2).validate());
    CHECK_THROWS_AS(spec(CheckKind::theorem1_divides, 5, 2).validate(), std::invalid_argument);
    CHECK_THROWS_AS(spec(CheckKind::theorem1_coprime, 4, 2).validate(), std::invalid_argument);
    CHECK_THROWS_AS(spec(CheckKind::theorem1_coprime, 4, 9).validate(), std::invalid_argument);
    CHECK_THROWS_AS(spec(CheckKind::atkin, 11, 0, 2).validate(), std::invalid_argument);
    CHECK_THROWS_AS(spec(CheckKind::eisenstein, 11, 0, 11).validate(), std::invalid_argument);
    CHECK_THROWS_AS(spec(CheckKind::prop31, 3).validate(), std::invalid_argument);
    CHECK(parse_kind("sanity-integrality") == CheckKind::sanity_integrality);
    CHECK_THROWS(parse_kind("theorem3"));
    for (auto& name : kind_names()) CHECK(to_string(parse_kind(name)) == name);
}

TEST_CASE("cusp subset selection") {
    const auto C = select_cusp_subset(12, 4, CuspMode::orbit);
    CHECK(!C.empty());
    const auto& cs = modsym::presentation(12)->cusps();
    for (auto c : C) {
        CHECK(cs.in_c0(c));
        for (i64 t : modsym::kernel_units(12, 4)) CHECK(std::find(C.begin(), C.end(), cs.diamond(t, c)) != C.end());
    }
    const auto inf = select_cusp_subset(12, 4, CuspMode::infty);
    CHECK(std::find(inf.begin(), inf.end(), cs.infinity()) != inf.end());
    CHECK_THROWS_AS(select_cusp_subset(4, 4, CuspMode::orbit), std::invalid_argument);
    // orbits partition the C^0 cusps they cover
    std::size_t covered = 0;
    for (auto& o : kernel_orbits_in_c0(12, 4)) covered += o.size();
    CHECK(covered == modsym::presentation(12)->c0_cusps().size());
}

TEST_CASE("example checks") {
    auto a = run_check(spec(CheckKind::theorem1_coprime, 4, 3));
    CHECK(a.status == "pass");
    CHECK(a.detail["tame"]["passed"] == a.detail["elements"]);
    auto b = run_check(spec(CheckKind::atkin, 11, 0, 11));
    CHECK(b.pass);
    auto c = run_check(spec(CheckKind::prop31, 5));
    CHECK(c.pass);
    CHECK(c.detail["module_rank"] == 1);
    CHECK(c.detail["absolute_rank"] == 0);
    auto e = run_check(spec(CheckKind::theorem1_divides, 5, 2));
    CHECK(e.status == "error");
    CHECK(!e.pass);
}

TEST_CASE("reports are deterministic") {
    CheckSpec s = spec(CheckKind::lemma41, 4, 2);
    s.trials = 40;
    s.seed = 99;
    const auto j1 = report_json({run_check(s), run_check(spec(CheckKind::theorem1_divides, 4, 2))}, false).dump();
    const auto j2 = report_json({run_check(s), run_check(spec(CheckKind::theorem1_divides, 4, 2))}, false).dump();
    CHECK(j1 == j2);
    s.seed = 100;
    CHECK(report_json({run_check(s)}, false)["checks"][0]["detail"]["samples"] != nlohmann::ordered_json::parse(j1)["checks"][0]["detail"]["samples"]);
}

TEST_CASE("report files") {
    const auto dir = std::filesystem::temp_directory_path() / "modk2_report_test";
    std::filesystem::remove_all(dir);
    emit_report({}, dir.string());
    std::ifstream f(dir / "report.json");
    auto j = nlohmann::ordered_json::parse(f);
    CHECK(j["checks"].empty());
    CHECK(j["pass"] == true);
    emit_report({run_check(spec(CheckKind::atkin, 11, 0, 2))}, dir.string());
    std::ifstream g(dir / "report.json");
    auto k = nlohmann::ordered_json::parse(g);
    CHECK(k["pass"] == false);
    CHECK(k["checks"][0]["status"] == "error");
    std::filesystem::remove_all(dir);
}

TEST_CASE("cache directory from flag or environment") {
    const auto dir = std::filesystem::temp_directory_path() / "modk2_cache_test";
    std::filesystem::remove_all(dir);
    CHECK(configure_cache(dir.string()) == dir.string());
    modsym::presentation(31);
    CHECK(std::filesystem::exists(dir / "presentation_31.txt"));
    setenv("MODK2_CACHE_DIR", dir.string().c_str(), 1);
    CHECK(configure_cache("") == dir.string());
    unsetenv("MODK2_CACHE_DIR");
    CHECK(configure_cache("").empty());
    std::filesystem::remove_all(dir);
}
