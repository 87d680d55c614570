#include "blocksdp/oracles.hpp"

#include <algorithm>

#include <json.hpp>

#include "blocksdp/errors.hpp"

namespace blocksdp {

namespace {

constexpr std::size_t kKeptFailures = 8;

SampleSide side_for(SideSchedule s, std::size_t index) {
    switch (s) {
        case SideSchedule::u_first:
            return SampleSide::u_first;
        case SideSchedule::v_first:
            return SampleSide::v_first;
        case SideSchedule::alternate:
        default:
            return index % 2 == 0 ? SampleSide::u_first : SampleSide::v_first;
    }
}

void validate(const OracleConfig& c) {
    if (!(c.eps >= 0.0) || c.eps >= 1.0) throw InvalidArgument("zero threshold must lie in [0, 1)");
    if (c.check == OracleCheck::antidiagonal && c.n != c.d) throw InvalidArgument("antidiagonal check needs n = d");
    if (c.check == OracleCheck::patterns && (c.n != 2 || c.d != 2)) throw InvalidArgument("pattern check needs n = d = 2");
    if (c.check == OracleCheck::induction) {
        if (!c.family) throw InvalidArgument("induction check needs a covering family");
        if (c.family->d() > c.n) throw InvalidArgument("induction check needs n >= family depth");
    }
}

}  // namespace

std::string to_string(OracleCheck check) {
    switch (check) {
        case OracleCheck::atom_pattern:
            return "atom";
        case OracleCheck::antidiagonal:
            return "antidiagonal";
        case OracleCheck::patterns:
            return "patterns";
        case OracleCheck::induction:
            return "induction";
    }
    return "unknown";
}

std::optional<OracleCheck> parse_oracle_check(const std::string& text) {
    for (auto c : {OracleCheck::atom_pattern, OracleCheck::antidiagonal, OracleCheck::patterns, OracleCheck::induction}) {
        if (to_string(c) == text) return c;
    }
    return std::nullopt;
}

TrialOutcome run_trial(const OracleConfig& config, std::size_t index) {
    SampleOptions options{config.ranks, side_for(config.sides, index)};
    const PsdFactorization f = sample_atom(config.n, config.d, options, config.seed + index);
    TrialOutcome out;
    auto fail = [&](const std::string& msg) {
        out.ok = false;
        out.failure = msg;
        out.falsifier = factorization_to_json(f);
    };
    try {
        const SupportMatrix m = evaluate(f, Exec::serial, config.eps);
        out.val = val(m);
        if (!is_atom_pattern(m)) {
            fail("sampled factorization is nonzero at an intersection-one pair");
            return out;
        }
        switch (config.check) {
            case OracleCheck::atom_pattern:
                break;
            case OracleCheck::antidiagonal: {
                const auto w = antidiagonal_witness_detail(f, config.eps);
                out.witness = w.a.str();
                if (!has_antidiagonal_zero(m)) fail("witness accepted but no antidiagonal zero found by scan");
                break;
            }
            case OracleCheck::patterns: {
                out.pattern = classify_pattern_d2(m);
                if (out.val > 7) fail("val = " + std::to_string(out.val) + " exceeds 7");
                const auto shared = shared_image_check(f, config.eps);
                out.shared_image = shared.applicable;
                if (!shared.holds) fail("images coincide but M[01,10] or M[10,01] is nonzero");
                break;
            }
            case OracleCheck::induction: {
                const auto r = check_induction_inequality(f, *config.family, config.eps);
                out.induction_lhs = r.lhs;
                out.induction_rhs = r.rhs;
                if (!r.holds) fail("val(M) = " + std::to_string(r.lhs) + " exceeds sum val(M_i) = " + std::to_string(r.rhs));
                if (!r.aggregates_are_atoms) fail("an aggregate M_i is nonzero at an intersection-one pair");
                break;
            }
        }
    } catch (const FalsificationError& e) {
        fail(e.what());
    } catch (const PreconditionError& e) {
        fail(e.what());
    }
    return out;
}

OracleReport run_oracle(const OracleConfig& config) {
    validate(config);
    const auto outcomes =
        map_indexed<TrialOutcome>(config.trials, config.exec, [&](std::size_t i) { return run_trial(config, i); });

    OracleReport report;
    report.check = config.check;
    report.n = config.n;
    report.d = config.d;
    report.seed = config.seed;
    report.trials = config.trials;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& o = outcomes[i];
        (side_for(config.sides, i) == SampleSide::u_first ? report.u_first_trials : report.v_first_trials)++;
        report.max_val = std::max(report.max_val, o.val);
        if (o.pattern >= 1) report.pattern_counts[static_cast<std::size_t>(o.pattern - 1)]++;
        if (o.shared_image) report.shared_image_cases++;
        if (o.ok) {
            report.passed++;
        } else if (report.failures.size() < kKeptFailures) {
            report.failures.push_back({i, config.seed + i, o.failure, o.falsifier});
        }
    }
    return report;
}

std::string oracle_report_to_json(const OracleReport& r) {
    nlohmann::ordered_json doc;
    doc["check"] = to_string(r.check);
    doc["seed"] = r.seed;
    doc["n"] = r.n;
    doc["d"] = r.d;
    doc["trials"] = r.trials;
    doc["passed"] = r.passed;
    doc["falsified"] = r.trials - r.passed;
    doc["u_first_trials"] = r.u_first_trials;
    doc["v_first_trials"] = r.v_first_trials;
    doc["max_val"] = r.max_val;
    if (r.check == OracleCheck::patterns) {
        doc["pattern_counts"] = r.pattern_counts;
        doc["shared_image_cases"] = r.shared_image_cases;
    }
    auto failures = nlohmann::ordered_json::array();
    for (const auto& f : r.failures) {
        nlohmann::ordered_json item;
        item["trial"] = f.trial;
        item["seed"] = f.seed;
        item["message"] = f.message;
        item["factorization"] = nlohmann::ordered_json::parse(f.falsifier);
        failures.push_back(std::move(item));
    }
    doc["falsifiers"] = failures;
    return doc.dump();
}

}  // namespace blocksdp
