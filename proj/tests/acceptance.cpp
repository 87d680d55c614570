// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "blocksdp/bounds.hpp"
#include "blocksdp/covering.hpp"
#include "blocksdp/oracles.hpp"

using namespace blocksdp;

namespace {

constexpr double kRelTol = 1e-12;
constexpr double kWitnessEps = 1e-9;

bool rel_close(double got, double want) { return std::abs(got - want) <= kRelTol * std::abs(want); }

struct Result {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* name, double limit_s, const std::function<Result()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < limit_s;
    const bool pass = r.ok && in_time;
    if (!pass) ++failures;
    std::printf("%s %s: %s [%.3f s, limit %.0f s]%s%s\n", pass ? "PASS" : "FAIL", id, name, secs, limit_s,
                r.detail.empty() ? "" : " ", r.detail.c_str());
    if (!in_time) std::printf("     %s exceeded its time limit\n", id);
    std::fflush(stdout);
}

// Oracle runs mix both rank profiles: half the trials draw uniform ranks in
// {0..d}, half draw full rank.
OracleReport mixed_ranks(OracleConfig c) {
    const std::size_t total = c.trials;
    c.trials = total / 2;
    c.ranks = RankProfile::uniform();
    OracleReport a = run_oracle(c);
    c.seed += c.trials;
    c.trials = total - total / 2;
    c.ranks = RankProfile::full();
    const OracleReport b = run_oracle(c);
    a.trials += b.trials;
    a.passed += b.passed;
    a.u_first_trials += b.u_first_trials;
    a.v_first_trials += b.v_first_trials;
    a.max_val = std::max(a.max_val, b.max_val);
    a.shared_image_cases += b.shared_image_cases;
    for (std::size_t i = 0; i < a.pattern_counts.size(); ++i) a.pattern_counts[i] += b.pattern_counts[i];
    a.failures.insert(a.failures.end(), b.failures.begin(), b.failures.end());
    return a;
}

std::string counts(const OracleReport& r) {
    std::string s = "passed " + std::to_string(r.passed) + "/" + std::to_string(r.trials) + ", U-first " +
                    std::to_string(r.u_first_trials) + ", V-first " + std::to_string(r.v_first_trials);
    if (!r.failures.empty()) s += ", first falsifier: " + r.failures.front().message;
    return s;
}

}  // namespace

int main() {
    criterion("AC1", "val(udisj(n)) = 3^n for n = 1..8; cor_slack = UDISJ for n = 1..5", 1.0, [] {
        for (int n = 1; n <= 8; ++n)
            if (val(udisj(n)) != pow3(n)) return Result{false, "val mismatch at n = " + std::to_string(n)};
        for (int n = 1; n <= 5; ++n) {
            const auto m = udisj(n);
            for (const auto& a : all_strings(n))
                for (const auto& b : all_strings(n))
                    if (cor_slack(a, b) != m.at(a, b)) return Result{false, "cor_slack mismatch at n = " + std::to_string(n)};
        }
        return Result{};
    });

    criterion("AC2", "recursive_covering(d) is (3^d - 1)-uniform and maximal for d = 1..4", 5.0, [] {
        std::string detail;
        for (int d = 1; d <= 4; ++d) {
            const auto f = recursive_covering(d);
            if (f.k() != pow3(d) - 1) return Result{false, "wrong k at d = " + std::to_string(d)};
            for (const auto& r : f.rectangles())
                for (const auto& x : r.rows())
                    for (const auto& y : r.cols())
                        if (intersection_size(x, y) != 0) return Result{false, "non-disjoint pair in a rectangle"};
            const auto rep = verify_covering_maximal_report(f, Exec::parallel);
            std::size_t certified = 0;
            for (const auto& inst : rep.instances) {
                std::vector<BitPair> support;
                for (const auto& p : enumerate_disjoint_pairs(d))
                    if (p != BitPair{inst.alpha, inst.alpha.complement()}) support.push_back(p);
                if (inst.outcome.certificate && certifies(*inst.outcome.certificate, f, support)) ++certified;
            }
            if (!rep.ok || rep.instances.size() != (std::size_t{1} << d) || certified != rep.instances.size()) {
                return Result{false, "maximal verification failed at d = " + std::to_string(d)};
            }
            detail += (detail.empty() ? "" : ", ") + std::to_string(certified);
        }
        return Result{true, "certified instances " + detail};
    });

    criterion("AC3", "explicit_covering_d2 covers the six patterns; phi tables validate", 1.0, [] {
        const auto f = explicit_covering_d2();
        if (f.k() != 7) return Result{false, "k != 7"};
        if (!verify_patterns_d2(f)) return Result{false, "pattern matching failed"};
        const auto tables = phi_table_d2();
        for (int id = 1; id <= kPatternCount; ++id) {
            std::string why;
            const auto& cert = tables[static_cast<std::size_t>(id - 1)];
            if (!is_valid_certificate(cert, f, &why) || !certifies(cert, f, pattern_disjoint_support(id))) {
                return Result{false, "phi table " + std::to_string(id) + ": " + why};
            }
        }
        return Result{};
    });

    criterion("AC4", "10^4 atoms at n = d = 2 classify into the six patterns with val <= 7", 30.0, [] {
        OracleConfig c;
        c.check = OracleCheck::patterns;
        c.n = 2;
        c.d = 2;
        c.trials = 10000;
        const auto r = mixed_ranks(c);
        std::string freq;
        for (auto k : r.pattern_counts) freq += (freq.empty() ? "" : " ") + std::to_string(k);
        return Result{r.ok() && r.max_val <= 7 && r.u_first_trials > 0 && r.v_first_trials > 0,
                      counts(r) + ", max val " + std::to_string(r.max_val) + ", patterns " + freq};
    });

    criterion("AC5", "10^4 atoms at each of d = 2, 3 give an antidiagonal witness <= 1e-9 scale", 60.0, [] {
        std::string detail;
        bool ok = true;
        for (int d = 2; d <= 3; ++d) {
            OracleConfig c;
            c.check = OracleCheck::antidiagonal;
            c.n = d;
            c.d = d;
            c.trials = 10000;
            c.eps = kWitnessEps;
            const auto r = mixed_ranks(c);
            ok = ok && r.ok();
            detail += "d = " + std::to_string(d) + ": " + counts(r) + "; ";
        }
        return Result{ok, detail};
    });

    criterion("AC6", "10^3 atoms at n = 4, d = 2 satisfy the induction inequality; aggregates are atoms", 60.0, [] {
        OracleConfig c;
        c.check = OracleCheck::induction;
        c.n = 4;
        c.d = 2;
        c.trials = 1000;
        c.family = recursive_covering(2);
        const auto r = mixed_ranks(c);
        return Result{r.ok(), counts(r)};
    });

    criterion("AC7", "bound formulas", 1.0, [] {
        for (int n = 1; n <= 40; ++n) {
            BigInt num = 1, den = 1;
            for (int i = 0; i < n; ++i) {
                num *= 3;
                den *= 2;
            }
            if (lift_lower_exact(n, 1) != Rational(num, den)) return Result{false, "lift_lower(n, 1) != (3/2)^n"};
        }
        const auto refined = refined_d2_constants();
        if (!rel_close(refined.kappa, 1.0 / std::sqrt(7.0)) || !rel_close(refined.c, std::sqrt(9.0 / 7.0))) {
            return Result{false, "refined d = 2 constants differ from 1/sqrt(7), sqrt(9/7)"};
        }
        // The general formula at d = 2 gives 1/sqrt(8), sqrt(9/8); both are reported.
        const auto general = theorem_constants(2);
        if (!rel_close(general.kappa, 1.0 / std::sqrt(8.0)) || !rel_close(general.c, std::sqrt(9.0 / 8.0))) {
            return Result{false, "general d = 2 constants differ from 1/sqrt(8), sqrt(9/8)"};
        }
        for (int n = 2; n <= 40; ++n) {
            if (refined_d2_floor_bound(n).convert_to<double>() < refined_d2_lower(n) * (1.0 - kRelTol)) {
                return Result{false, "refined d = 2 closed form exceeds the exact bound at n = " + std::to_string(n)};
            }
        }
        for (int d = 1; d <= 6; ++d) {
            const auto k = theorem_constants(d);
            for (int n = d; n <= 40; ++n) {
                if (lift_lower(n, d) < k.kappa * std::pow(k.c, n) * (1.0 - kRelTol)) {
                    return Result{false, "lift_lower < kappa c^n at n = " + std::to_string(n) + ", d = " + std::to_string(d)};
                }
            }
        }
        return Result{true, "refined kappa(2) = 1/sqrt(7), c(2) = sqrt(9/7); general kappa(2) = 1/sqrt(8)"};
    });

    criterion("AC8", "families and certificates round-trip; equal seeds give equal reports", 1.0, [] {
        std::vector<CoveringFamily> families{base_covering_d1(), explicit_covering_d2()};
        for (int d = 1; d <= 4; ++d) families.push_back(recursive_covering(d));
        for (const auto& f : families) {
            const auto text = family_to_json(f);
            const auto back = family_from_json(text);
            if (!(back == f) || family_to_json(back) != text) return Result{false, "family " + f.label() + " changed"};
            std::vector<CoveringCertificate> certs;
            if (f.d() <= 4) {
                for (const auto& inst : verify_covering_maximal_report(back).instances)
                    if (inst.outcome.certificate) certs.push_back(*inst.outcome.certificate);
            }
            if (f.label() == "explicit-d2") {
                for (const auto& c : phi_table_d2()) certs.push_back(c);
            }
            for (const auto& c : certs) {
                const auto ctext = certificate_to_json(c);
                const auto cback = certificate_from_json(ctext, back);
                if (!(cback == c) || certificate_to_json(cback) != ctext) return Result{false, "certificate changed"};
            }
        }
        OracleConfig c;
        c.check = OracleCheck::patterns;
        c.n = 2;
        c.d = 2;
        c.trials = 200;
        c.seed = 20261014;
        const auto a = oracle_report_to_json(run_oracle(c));
        c.exec = Exec::serial;
        const auto b = oracle_report_to_json(run_oracle(c));
        if (a != b) return Result{false, "same seed produced different reports"};
        return Result{};
    });

    return failures == 0 ? 0 : 1;
}
