#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blocksdp/atoms.hpp"
#include "blocksdp/covering.hpp"
#include "blocksdp/parallel.hpp"

namespace blocksdp {

/// What each sampled atom is checked against.
enum class OracleCheck {
    atom_pattern,  // zeros at every intersection-one pair
    antidiagonal,  // constructive antidiagonal zero, n = d
    patterns,      // one of the six d = 2 templates, val <= 7, shared-image rule
    induction,     // val(M) <= sum val(M_i) against a covering family
};

std::string to_string(OracleCheck check);
std::optional<OracleCheck> parse_oracle_check(const std::string& text);

enum class SideSchedule { u_first, v_first, alternate };

struct OracleConfig {
    OracleCheck check = OracleCheck::atom_pattern;
    int n = 2;
    int d = 2;
    std::uint64_t seed = 0;
    std::size_t trials = 1;
    RankProfile ranks;
    SideSchedule sides = SideSchedule::alternate;  // alternate: even trials U-first, odd V-first
    double eps = kZeroEps;
    Exec exec = Exec::parallel;
    std::optional<CoveringFamily> family;  // induction only
};

struct TrialOutcome {
    bool ok = true;
    std::string failure;
    std::string falsifier;  // factorization JSON when !ok
    int pattern = 0;
    std::uint64_t val = 0;
    bool shared_image = false;
    std::string witness;
    std::uint64_t induction_lhs = 0;
    std::uint64_t induction_rhs = 0;
};

struct OracleFailure {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::string message;
    std::string falsifier;
};

struct OracleReport {
    OracleCheck check = OracleCheck::atom_pattern;
    int n = 0;
    int d = 0;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::array<std::size_t, kPatternCount> pattern_counts{};
    std::uint64_t max_val = 0;
    std::size_t shared_image_cases = 0;
    std::size_t u_first_trials = 0;
    std::size_t v_first_trials = 0;
    std::vector<OracleFailure> failures;  // first few, in trial order

    bool ok() const { return passed == trials; }
};

/// Runs one trial (seed = config.seed + index). Exposed for tests.
TrialOutcome run_trial(const OracleConfig& config, std::size_t index);

/// Runs every trial; results are collected by trial index so the report does
/// not depend on scheduling.
OracleReport run_oracle(const OracleConfig& config);

std::string oracle_report_to_json(const OracleReport& report);

}  // namespace blocksdp
