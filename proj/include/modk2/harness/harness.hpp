#pragma once

// Verification checks: spec validation, cusp-subset selection, the check
// pipelines for both backends, and report serialization.

#include <string>
#include <vector>

#include "json.hpp"
#include "modk2/arith.hpp"

namespace modk2::harness {

enum class CheckKind {
    theorem1_divides,
    theorem1_coprime,
    atkin,
    eisenstein,
    prop31,
    lemma41,
    welldefined,
    sanity_integrality,
    surjectivity,
    oracles,
};

enum class CuspMode { orbit, infty };
enum class Backend { tame, presented, both };

std::string to_string(CheckKind k);
std::string to_string(CuspMode m);
std::string to_string(Backend b);
/// Throws std::invalid_argument on unknown names.
CheckKind parse_kind(const std::string& s);
CuspMode parse_cusp_mode(const std::string& s);
Backend parse_backend(const std::string& s);
std::vector<std::string> kind_names();

struct CheckSpec {
    CheckKind kind = CheckKind::prop31;
    i64 M = 0;
    i64 p = 0;
    i64 l = 0;
    CuspMode cusps = CuspMode::orbit;
    int trials = 200;
    u64 seed = 1;
    Backend backend = Backend::tame;

    /// Throws std::invalid_argument when the parameters do not fit the kind.
    void validate() const;
    nlohmann::ordered_json to_json() const;
    std::string label() const;
};

struct VerificationReport {
    CheckSpec spec;
    std::string statement;
    bool pass = false;
    std::string status;  // "pass", "fail" or "error"
    std::string summary;
    nlohmann::ordered_json detail;
    double seconds = 0;
};

/// Kernel orbits of cusps of X_1(N) contained in C^0_N, for the kernel of (Z/N)^x -> (Z/M)^x.
std::vector<std::vector<std::size_t>> kernel_orbits_in_c0(i64 N, i64 M);

/// orbit: the first kernel orbit in C^0; infty: the full diamond orbit of infinity.
/// Throws std::invalid_argument for N == M and std::domain_error for an empty selection.
std::vector<std::size_t> select_cusp_subset(i64 N, i64 M, CuspMode mode);

/// Runs one check. Arithmetic failures are caught and reported with status "error".
VerificationReport run_check(const CheckSpec& spec);

/// Software and configuration fingerprint.
nlohmann::ordered_json fingerprint();

/// {"fingerprint", "checks", "pass"} plus a separate "timing" block when requested.
nlohmann::ordered_json report_json(const std::vector<VerificationReport>& reports, bool with_timing = true);
std::string summary_text(const std::vector<VerificationReport>& reports);

/// Writes <dir>/report.json and <dir>/summary.txt.
void emit_report(const std::vector<VerificationReport>& reports, const std::string& dir);

/// Sets the cache directory from `flag`, else from MODK2_CACHE_DIR; returns the directory used.
std::string configure_cache(const std::string& flag);

}  // namespace modk2::harness
