// blocksdp: build, verify and sample the objects behind the block-SDP lift
// lower bound. Exit status: 0 all checks pass, 1 a check was falsified,
// 2 invalid input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "blocksdp/bounds.hpp"
#include "blocksdp/covering.hpp"
#include "blocksdp/errors.hpp"
#include "blocksdp/oracles.hpp"

using namespace blocksdp;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitInvalid = 2;

struct Globals {
    double eps = kZeroEps;
    bool serial = false;
    Exec exec() const { return serial ? Exec::serial : Exec::parallel; }
};

std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("BLOCKSDP_OUT_DIR"); dir && *dir) return std::filesystem::path(dir) / p;
    }
    return p;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    const auto path = resolve_output(out_path);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot open output file " + path.string());
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot read " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

ojson pairs_json(const std::vector<BitPair>& pairs) {
    ojson out = ojson::array();
    for (const auto& [x, y] : pairs) out.push_back({x.str(), y.str()});
    return out;
}

ojson outcome_json(const MatchingOutcome& o) {
    ojson item;
    item["support_size"] = o.support.size();
    if (o.certificate) {
        item["certificate"] = ojson::parse(certificate_to_json(*o.certificate));
    } else {
        item["certificate"] = nullptr;
        item["hall_pairs"] = pairs_json(o.hall_pairs);
        item["hall_rectangles"] = o.hall_rectangles;
    }
    return item;
}

std::string udisj_text(const SupportMatrix& m) {
    std::ostringstream s;
    for (const auto& a : all_strings(m.n())) {
        s << a.str();
        for (const auto& b : all_strings(m.n())) s << ' ' << m.at(a, b);
        s << '\n';
    }
    return s.str();
}

int cmd_udisj(int n, const std::string& format, const std::string& out) {
    if (n < 1 || n > 16) throw InvalidArgument("--n must lie in [1, 16]");
    const std::uint64_t expected = pow3(n);
    std::uint64_t v = 0;
    if (n <= kMaxDenseN) {
        const SupportMatrix m = udisj(n);
        v = val(m);
        if (format == "json") {
            emit(out, to_json(m));
        } else if (format == "csv") {
            emit(out, to_csv(m));
        } else {
            emit(out, udisj_text(m));
        }
    } else {
        if (format == "csv") throw InvalidArgument("csv output needs n <= 10; larger n reports val only");
        v = udisj_val(n);
        if (format == "json") {
            ojson doc;
            doc["n"] = n;
            doc["val"] = v;
            emit(out, doc.dump());
        } else {
            emit(out, "val " + std::to_string(v) + "\n");
        }
    }
    std::cerr << "val(UDISJ(" << n << ")) = " << v << (v == expected ? " = 3^" : " != 3^") << n << '\n';
    return v == expected ? kExitPass : kExitFalsified;
}

int cmd_covering_build(int d, bool explicit_d2, const std::string& out) {
    if (explicit_d2) {
        if (d != 0 && d != 2) throw InvalidArgument("--explicit-d2 needs --d 2");
        emit(out, family_to_json(explicit_covering_d2()));
        return kExitPass;
    }
    if (d < 1 || d > kMaxCoveringD) throw InvalidArgument("--d must lie in [1, 6]");
    emit(out, family_to_json(recursive_covering(d)));
    return kExitPass;
}

int cmd_covering_verify(const Globals& g, const std::string& family_path, const std::string& mode, const std::string& out) {
    const CoveringFamily family = family_from_json(read_file(family_path));
    ojson doc;
    doc["family"] = family.label();
    doc["d"] = family.d();
    doc["k"] = family.k();
    doc["mode"] = mode;
    ojson instances = ojson::array();
    bool ok = true;
    if (mode == "maximal") {
        const auto rep = verify_covering_maximal_report(family, g.exec());
        ok = rep.ok;
        for (const auto& inst : rep.instances) {
            ojson item;
            item["alpha"] = inst.alpha.str();
            item.update(outcome_json(inst.outcome));
            instances.push_back(std::move(item));
        }
    } else {
        const auto rep = verify_patterns_d2_report(family);
        ok = rep.ok;
        for (const auto& inst : rep.instances) {
            ojson item;
            item["pattern"] = inst.pattern;
            item.update(outcome_json(inst.outcome));
            instances.push_back(std::move(item));
        }
    }
    doc["ok"] = ok;
    doc["instances"] = instances;
    emit(out, doc.dump());
    std::cerr << (ok ? "covering verified" : "covering falsified: some instance has no saturating assignment") << '\n';
    return ok ? kExitPass : kExitFalsified;
}

int run_report(const OracleConfig& c, const std::string& out) {
    const auto report = run_oracle(c);
    emit(out, oracle_report_to_json(report));
    std::cerr << "seed " << report.seed << ": " << report.passed << "/" << report.trials << " trials passed\n";
    return report.ok() ? kExitPass : kExitFalsified;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block-diagonal SDP lift verification toolkit"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--epsilon", g.eps, "relative zero threshold")->check(CLI::Range(0.0, 0.999999));
    app.add_flag("--serial", g.serial, "run the serial reference path");

    int n = 0, d = 0;
    std::uint64_t seed = 0;
    std::size_t trials = 1;
    std::string format = "json", out, family_path, mode = "maximal", check = "atom", direction = "alternate",
                ranks = "uniform";
    bool explicit_d2 = false;

    auto* udisj_cmd = app.add_subcommand("udisj", "emit UDISJ(n) and report val");
    udisj_cmd->add_option("--n", n)->required();
    udisj_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));
    udisj_cmd->add_option("--out", out);

    auto* covering = app.add_subcommand("covering", "build or verify covering families");
    covering->require_subcommand(1);
    auto* build = covering->add_subcommand("build", "emit recursive_covering(d) or the explicit d = 2 family");
    build->add_option("--d", d);
    build->add_flag("--explicit-d2", explicit_d2);
    build->add_option("--out", out);
    auto* verify = covering->add_subcommand("verify", "certify a family by exact matching");
    verify->add_option("--family", family_path)->required();
    verify->add_option("--mode", mode)->check(CLI::IsMember({"maximal", "patterns-d2"}));
    verify->add_option("--out", out);

    auto* atom = app.add_subcommand("atom", "randomized atom oracles");
    atom->require_subcommand(1);
    auto* sample = atom->add_subcommand("sample", "sample atoms and check them");
    sample->add_option("--n", n)->required();
    sample->add_option("--d", d)->required();
    sample->add_option("--seed", seed);
    sample->add_option("--trials", trials)->required();
    sample->add_option("--check", check)->check(CLI::IsMember({"atom", "antidiagonal", "patterns", "induction"}));
    sample->add_option("--direction", direction)->check(CLI::IsMember({"u", "v", "alternate"}));
    sample->add_option("--ranks", ranks)->check(CLI::IsMember({"uniform", "full"}));
    sample->add_option("--family", family_path, "covering family for --check induction");
    sample->add_option("--out", out);

    auto* bound = app.add_subcommand("bound", "closed-form bounds");
    bound->add_option("--n", n)->required();
    bound->add_option("--d", d)->required();
    bound->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    bound->add_option("--out", out);

    auto* induction = app.add_subcommand("induction", "check val(M) <= sum val(M_i) on sampled atoms");
    induction->add_option("--n", n)->required();
    induction->add_option("--d", d)->required();
    induction->add_option("--seed", seed);
    induction->add_option("--trials", trials)->required();
    induction->add_option("--family", family_path)->required();
    induction->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitInvalid;
    }

    try {
        if (*udisj_cmd) return cmd_udisj(n, format, out);
        if (*build) return cmd_covering_build(d, explicit_d2, out);
        if (*verify) return cmd_covering_verify(g, family_path, mode, out);
        if (*bound) {
            const auto r = make_bound_report(n, d);
            emit(out, format == "text" ? bound_report_to_text(r) : bound_report_to_json(r));
            return kExitPass;
        }

        OracleConfig c;
        c.n = n;
        c.d = d;
        c.seed = seed;
        c.trials = trials;
        c.eps = g.eps;
        c.exec = g.exec();
        if (*sample) {
            c.check = *parse_oracle_check(check);
            c.sides = direction == "u" ? SideSchedule::u_first : direction == "v" ? SideSchedule::v_first : SideSchedule::alternate;
            c.ranks = ranks == "full" ? RankProfile::full() : RankProfile::uniform();
            if (c.check == OracleCheck::induction) {
                if (family_path.empty()) throw InvalidArgument("--check induction needs --family");
                c.family = family_from_json(read_file(family_path));
            }
        } else {
            c.check = OracleCheck::induction;
            c.family = family_from_json(read_file(family_path));
            if (c.family->d() != d) throw InvalidArgument("family depth differs from --d");
        }
        if (n < 1 || n > kMaxSampleN || d < 1 || d > kMaxPsdDim) throw InvalidArgument("--n and --d must lie in [1, 8]");
        return run_report(c, out);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
}
