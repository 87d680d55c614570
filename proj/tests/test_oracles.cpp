#include <doctest.h>

#include <omp.h>

#include <json.hpp>

#include "blocksdp/errors.hpp"
#include "blocksdp/oracles.hpp"

using namespace blocksdp;

namespace {

OracleConfig config(OracleCheck check, int n, int d, std::size_t trials, std::uint64_t seed = 0) {
    OracleConfig c;
    c.check = check;
    c.n = n;
    c.d = d;
    c.trials = trials;
    c.seed = seed;
    return c;
}

}  // namespace

TEST_CASE("check names round trip") {
    for (auto c : {OracleCheck::atom_pattern, OracleCheck::antidiagonal, OracleCheck::patterns, OracleCheck::induction})
        CHECK(parse_oracle_check(to_string(c)) == c);
    CHECK_FALSE(parse_oracle_check("bogus").has_value());
}

TEST_CASE("every check passes on sampled atoms") {
    CHECK(run_oracle(config(OracleCheck::atom_pattern, 5, 3, 300)).ok());
    CHECK(run_oracle(config(OracleCheck::antidiagonal, 3, 3, 300)).ok());
    const auto p = run_oracle(config(OracleCheck::patterns, 2, 2, 500));
    CHECK(p.ok());
    CHECK(p.max_val <= 7);
    std::size_t total = 0;
    for (auto c : p.pattern_counts) total += c;
    CHECK(total == 500);

    auto ind = config(OracleCheck::induction, 4, 2, 200);
    ind.family = recursive_covering(2);
    CHECK(run_oracle(ind).ok());
}

TEST_CASE("alternating schedule splits trials evenly") {
    const auto r = run_oracle(config(OracleCheck::atom_pattern, 2, 2, 101));
    CHECK(r.u_first_trials == 51);
    CHECK(r.v_first_trials == 50);
    auto c = config(OracleCheck::atom_pattern, 2, 2, 10);
    c.sides = SideSchedule::v_first;
    CHECK(run_oracle(c).v_first_trials == 10);
}

TEST_CASE("reports are reproducible and independent of the executor") {
    omp_set_num_threads(4);
    for (auto check : {OracleCheck::atom_pattern, OracleCheck::patterns}) {
        auto c = config(check, 2, 2, 400, 12345);
        c.exec = Exec::serial;
        const auto serial = oracle_report_to_json(run_oracle(c));
        c.exec = Exec::parallel;
        const auto parallel = oracle_report_to_json(run_oracle(c));
        CHECK(serial == parallel);
        CHECK(oracle_report_to_json(run_oracle(c)) == parallel);
        CHECK(nlohmann::json::parse(serial)["seed"] == 12345);
    }
    auto c = config(OracleCheck::patterns, 2, 2, 50, 1);
    const auto a = oracle_report_to_json(run_oracle(c));
    c.seed = 2;
    CHECK(oracle_report_to_json(run_oracle(c)) != a);
}

TEST_CASE("a single trial uses seed + index") {
    const auto c = config(OracleCheck::patterns, 2, 2, 1, 70);
    const auto t = run_trial(c, 5);
    const auto direct = classify_pattern_d2(evaluate(sample_atom(2, 2, {RankProfile::uniform(), SampleSide::v_first}, 75)));
    CHECK(t.pattern == direct);
}

TEST_CASE("a too-strict threshold is reported as a falsifier, not an error") {
    // With a zero threshold, rounding noise at the constructed zeros counts as
    // support; failures keep the factorization.
    auto c = config(OracleCheck::atom_pattern, 2, 2, 20);
    c.eps = 0.0;
    const auto r = run_oracle(c);
    CHECK_FALSE(r.ok());
    REQUIRE_FALSE(r.failures.empty());
    const auto doc = nlohmann::json::parse(oracle_report_to_json(r));
    CHECK(doc["falsifiers"][0].contains("factorization"));
    CHECK(factorization_from_json(r.failures[0].falsifier).n == 2);
}

TEST_CASE("configuration validation") {
    CHECK_THROWS_AS(run_oracle(config(OracleCheck::antidiagonal, 3, 2, 1)), InvalidArgument);
    CHECK_THROWS_AS(run_oracle(config(OracleCheck::patterns, 3, 2, 1)), InvalidArgument);
    CHECK_THROWS_AS(run_oracle(config(OracleCheck::induction, 4, 2, 1)), InvalidArgument);
    auto c = config(OracleCheck::induction, 2, 3, 1);
    c.family = recursive_covering(3);
    CHECK_THROWS_AS(run_oracle(c), InvalidArgument);
    auto e = config(OracleCheck::atom_pattern, 2, 2, 1);
    e.eps = -1.0;
    CHECK_THROWS_AS(run_oracle(e), InvalidArgument);
}
