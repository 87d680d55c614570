#include "blocksdp/covering.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "blocksdp/errors.hpp"
#include "blocksdp/matching.hpp"

namespace blocksdp {

using nlohmann::json;

Rectangle::Rectangle(int d, std::set<BitString> rows, std::set<BitString> cols)
    : d_(d), rows_(std::move(rows)), cols_(std::move(cols)) {
    if (d < 1 || d > kMaxWidth) throw InvalidArgument("rectangle width must lie in [1, 16]");
    if (rows_.empty() || cols_.empty()) throw InvalidArgument("rectangle needs at least one row and one column");
    for (const auto& x : rows_) {
        if (x.width() != d) throw InvalidArgument("rectangle row " + x.str() + " has the wrong width");
    }
    for (const auto& y : cols_) {
        if (y.width() != d) throw InvalidArgument("rectangle column " + y.str() + " has the wrong width");
    }
    for (const auto& x : rows_)
        for (const auto& y : cols_) {
            if (intersection_size(x, y) != 0) {
                throw InvalidArgument("rectangle contains the non-disjoint pair (" + x.str() + "," + y.str() + ")");
            }
        }
}

CoveringFamily::CoveringFamily(int d, std::string label, std::vector<Rectangle> rectangles)
    : d_(d), label_(std::move(label)), rectangles_(std::move(rectangles)) {
    if (d < 1 || d > kMaxWidth) throw InvalidArgument("family width must lie in [1, 16]");
    for (const auto& r : rectangles_) {
        if (r.d() != d) throw InvalidArgument("family members must all have width " + std::to_string(d));
    }
}

CoveringFamily CoveringFamily::without(std::size_t index) const {
    auto rects = rectangles_;
    rects.erase(rects.begin() + static_cast<std::ptrdiff_t>(index));
    return CoveringFamily(d_, label_ + "-without-" + std::to_string(index), std::move(rects));
}

bool is_valid_certificate(const CoveringCertificate& cert, const CoveringFamily& family, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::set<std::size_t> used;
    for (const auto& [pair, index] : cert.assignment) {
        const std::string where = "(" + pair.first.str() + "," + pair.second.str() + ")";
        if (pair.first.width() != family.d() || pair.second.width() != family.d()) return fail(where + " has the wrong width");
        if (index >= family.k()) return fail(where + " maps to out-of-range rectangle " + std::to_string(index));
        if (!family.rectangles()[index].contains(pair)) {
            return fail(where + " is not contained in rectangle " + std::to_string(index));
        }
        if (!used.insert(index).second) return fail("rectangle " + std::to_string(index) + " is used twice");
    }
    return true;
}

bool certifies(const CoveringCertificate& cert, const CoveringFamily& family, const std::vector<BitPair>& support) {
    if (!is_valid_certificate(cert, family)) return false;
    if (cert.assignment.size() != support.size()) return false;
    return std::all_of(support.begin(), support.end(), [&](const BitPair& p) { return cert.assignment.count(p) == 1; });
}

namespace {

std::set<BitString> strings(std::initializer_list<const char*> texts) {
    std::set<BitString> out;
    for (const char* t : texts) out.insert(BitString::parse(t));
    return out;
}

}  // namespace

CoveringFamily base_covering_d1() {
    std::vector<Rectangle> r;
    r.emplace_back(1, strings({"0"}), strings({"0", "1"}));
    r.emplace_back(1, strings({"0", "1"}), strings({"0"}));
    return CoveringFamily(1, "base-d1", std::move(r));
}

CoveringFamily explicit_covering_d2() {
    const Rectangle a(2, strings({"00"}), strings({"00", "01", "10", "11"}));
    const Rectangle b(2, strings({"00", "01", "10", "11"}), strings({"00"}));
    const Rectangle c(2, strings({"00", "01"}), strings({"00", "10"}));
    const Rectangle d(2, strings({"00", "10"}), strings({"00", "01"}));
    return CoveringFamily(2, "explicit-d2", {a, b, b, c, c, d, d});
}

CoveringFamily recursive_covering(int d) {
    if (d < 1 || d > kMaxCoveringD) throw InvalidArgument("recursive_covering: d must lie in [1, 6]");
    CoveringFamily level(1, "recursive-d1", base_covering_d1().rectangles());
    for (int w = 2; w <= d; ++w) {
        const BitString zero(1, 0), one(1, 1);
        std::vector<Rectangle> next;
        for (const auto& r : level.rectangles()) {
            std::set<BitString> rows, cols;
            for (const auto& x : r.rows()) rows.insert(concat(zero, x));
            for (const auto& y : r.cols()) cols.insert(concat(zero, y));
            next.emplace_back(w, std::move(rows), std::move(cols));
        }
        for (const auto& [x, y] : enumerate_disjoint_pairs(w - 1)) {
            next.emplace_back(w, std::set<BitString>{concat(zero, x)}, std::set<BitString>{concat(zero, y), concat(one, y)});
            next.emplace_back(w, std::set<BitString>{concat(zero, x), concat(one, x)}, std::set<BitString>{concat(zero, y)});
        }
        level = CoveringFamily(w, "recursive-d" + std::to_string(w), std::move(next));
    }
    return level;
}

MatchingOutcome match_support(const std::vector<BitPair>& support, const CoveringFamily& family) {
    std::set<BitPair> seen;
    std::vector<std::vector<int>> adjacency;
    adjacency.reserve(support.size());
    for (const auto& p : support) {
        if (p.first.width() != family.d() || p.second.width() != family.d()) {
            throw InvalidArgument("support pair width differs from the family width");
        }
        if (intersection_size(p.first, p.second) != 0) {
            throw InvalidArgument("support pair (" + p.first.str() + "," + p.second.str() + ") is not disjoint");
        }
        if (!seen.insert(p).second) throw InvalidArgument("support lists a pair twice");
        std::vector<int> adj;
        for (std::size_t i = 0; i < family.k(); ++i) {
            if (family.rectangles()[i].contains(p)) adj.push_back(static_cast<int>(i));
        }
        adjacency.push_back(std::move(adj));
    }

    MatchingOutcome out;
    out.support = support;
    const auto matching = max_bipartite_matching(family.k(), adjacency);
    if (matching.size == support.size()) {
        CoveringCertificate cert;
        for (std::size_t i = 0; i < support.size(); ++i) {
            cert.assignment.emplace(support[i], static_cast<std::size_t>(matching.left_to_right[i]));
        }
        out.certificate = std::move(cert);
    } else {
        const auto hall = hall_violator(family.k(), adjacency, matching);
        for (int u : hall.left) out.hall_pairs.push_back(support[static_cast<std::size_t>(u)]);
        for (int r : hall.neighbours) out.hall_rectangles.push_back(static_cast<std::size_t>(r));
    }
    return out;
}

std::optional<CoveringCertificate> find_certificate(const std::vector<BitPair>& support, const CoveringFamily& family) {
    return match_support(support, family).certificate;
}

CoveringVerification verify_covering_maximal_report(const CoveringFamily& family, Exec exec) {
    const int d = family.d();
    if (d > kMaxCoveringD) throw InvalidArgument("maximal verification is limited to d <= 6");
    const auto pairs = enumerate_disjoint_pairs(d);
    const auto alphas = all_strings(d);
    CoveringVerification report;
    report.instances = map_indexed<MaximalInstance>(alphas.size(), exec, [&](std::size_t i) {
        const BitString alpha = alphas[i];
        const BitPair removed{alpha, alpha.complement()};
        std::vector<BitPair> support;
        support.reserve(pairs.size() - 1);
        for (const auto& p : pairs)
            if (p != removed) support.push_back(p);
        return MaximalInstance{alpha, match_support(support, family)};
    });
    for (const auto& inst : report.instances) report.ok = report.ok && inst.outcome.certificate.has_value();
    return report;
}

bool verify_covering_maximal(const CoveringFamily& family, Exec exec) {
    return verify_covering_maximal_report(family, exec).ok;
}

PatternVerification verify_patterns_d2_report(const CoveringFamily& family) {
    if (family.d() != 2) throw InvalidArgument("verify_patterns_d2 requires a family over 2-bit strings");
    PatternVerification report;
    for (int id = 1; id <= kPatternCount; ++id) {
        PatternInstance inst{id, match_support(pattern_disjoint_support(id), family)};
        report.ok = report.ok && inst.outcome.certificate.has_value();
        report.instances.push_back(std::move(inst));
    }
    return report;
}

bool verify_patterns_d2(const CoveringFamily& family) { return verify_patterns_d2_report(family).ok; }

std::vector<CoveringCertificate> phi_table_d2() {
    enum : std::size_t { a = 0, b1, b2, c1, c2, d1, d2 };
    struct Entry {
        const char* x;
        const char* y;
        std::size_t rect;
    };
    const std::vector<std::vector<Entry>> tables = {
        // (1)
        {{"00", "00", b2}, {"00", "01", d2}, {"00", "10", c1}, {"00", "11", a},
         {"01", "00", c2}, {"10", "00", d1}, {"11", "00", b1}},
        // (2)
        {{"00", "00", b2}, {"00", "01", a}, {"00", "10", c1},
         {"01", "00", b1}, {"01", "10", c2}, {"10", "00", d1}, {"10", "01", d2}},
        // (3)
        {{"00", "00", c2}, {"00", "01", d1}, {"00", "10", c1}, {"00", "11", a},
         {"10", "00", b2}, {"10", "01", d2}, {"11", "00", b1}},
        // (4)
        {{"00", "00", d2}, {"00", "01", d1}, {"00", "10", c1}, {"00", "11", a},
         {"01", "00", b2}, {"01", "10", c2}, {"11", "00", b1}},
        // (5)
        {{"00", "00", d2}, {"00", "10", c1}, {"00", "11", a},
         {"01", "00", b2}, {"01", "10", c2}, {"10", "00", d1}, {"11", "00", b1}},
        // (6)
        {{"00", "00", c2}, {"00", "01", d1}, {"00", "11", a},
         {"01", "00", c1}, {"10", "00", b2}, {"10", "01", d2}, {"11", "00", b1}},
    };
    std::vector<CoveringCertificate> out;
    for (const auto& table : tables) {
        CoveringCertificate cert;
        for (const auto& e : table) cert.assignment.emplace(BitPair{BitString::parse(e.x), BitString::parse(e.y)}, e.rect);
        out.push_back(std::move(cert));
    }
    return out;
}

BlockGrid block_decompose(const SupportMatrix& m, int d) {
    if (d < 1) throw InvalidArgument("block_decompose: depth must be at least 1");
    if (m.n() < d) throw InvalidArgument("block_decompose: matrix size n is smaller than the depth");
    BlockGrid grid;
    grid.depth = d;
    grid.inner_n = m.n() - d;
    const std::size_t outer = std::size_t{1} << d;
    const std::size_t inner = std::size_t{1} << grid.inner_n;
    const double scale = m.scale();
    grid.blocks.reserve(outer * outer);
    for (std::size_t x = 0; x < outer; ++x) {
        for (std::size_t y = 0; y < outer; ++y) {
            SupportMatrix block = SupportMatrix::zeros(grid.inner_n);
            for (std::size_t a = 0; a < inner; ++a)
                for (std::size_t b = 0; b < inner; ++b) block.set(a, b, m.at(x * inner + a, y * inner + b));
            block.set_reference_scale(scale);
            block.set_epsilon(m.epsilon());
            block.set_integral(m.integral());
            grid.blocks.push_back(std::move(block));
        }
    }
    return grid;
}

SupportMatrix assemble(const BlockGrid& grid) {
    const std::size_t outer = std::size_t{1} << grid.depth;
    const std::size_t inner = std::size_t{1} << grid.inner_n;
    if (grid.blocks.size() != outer * outer) throw InvalidArgument("assemble: block count does not match depth");
    SupportMatrix m = SupportMatrix::zeros(grid.depth + grid.inner_n);
    for (std::size_t x = 0; x < outer; ++x)
        for (std::size_t y = 0; y < outer; ++y) {
            const SupportMatrix& block = grid.blocks[x * outer + y];
            for (std::size_t a = 0; a < inner; ++a)
                for (std::size_t b = 0; b < inner; ++b) m.set(x * inner + a, y * inner + b, block.at(a, b));
        }
    if (!grid.blocks.empty()) {
        m.set_epsilon(grid.blocks.front().epsilon());
        m.set_integral(grid.blocks.front().integral());
    }
    return m;
}

std::vector<SupportMatrix> aggregate(const SupportMatrix& m, const CoveringFamily& family) {
    const BlockGrid grid = block_decompose(m, family.d());
    std::vector<SupportMatrix> out;
    out.reserve(family.k());
    for (const auto& r : family.rectangles()) {
        SupportMatrix sum = SupportMatrix::zeros(grid.inner_n);
        for (const auto& x : r.rows())
            for (const auto& y : r.cols()) {
                const SupportMatrix& block = grid.at(x, y);
                for (std::size_t a = 0; a < sum.dim(); ++a)
                    for (std::size_t b = 0; b < sum.dim(); ++b) sum.add(a, b, block.at(a, b));
            }
        sum.set_reference_scale(m.scale());
        sum.set_epsilon(m.epsilon());
        sum.set_integral(m.integral());
        out.push_back(std::move(sum));
    }
    return out;
}

InductionReport check_induction_inequality(const PsdFactorization& f, const CoveringFamily& family, double eps) {
    if (f.n < family.d()) throw InvalidArgument("induction check needs n >= family depth");
    const SupportMatrix m = evaluate(f, Exec::serial, eps);
    if (!is_atom_pattern(m)) {
        throw PreconditionError("induction check: evaluated matrix is nonzero at an intersection-one pair");
    }
    InductionReport report;
    report.lhs = val(m);
    report.aggregates_are_atoms = true;
    for (const auto& mi : aggregate(m, family)) {
        report.per_rectangle.push_back(val(mi));
        report.rhs += report.per_rectangle.back();
        report.aggregates_are_atoms = report.aggregates_are_atoms && is_atom_pattern(mi);
    }
    report.holds = report.lhs <= report.rhs;
    return report;
}

std::string family_to_json(const CoveringFamily& family) {
    json rects = json::array();
    for (const auto& r : family.rectangles()) {
        json rows = json::array(), cols = json::array();
        for (const auto& x : r.rows()) rows.push_back(x.str());
        for (const auto& y : r.cols()) cols.push_back(y.str());
        rects.push_back({{"rows", rows}, {"cols", cols}});
    }
    return json{{"d", family.d()}, {"label", family.label()}, {"rectangles", rects}}.dump();
}

CoveringFamily family_from_json(const std::string& text) {
    try {
        const json doc = json::parse(text);
        const int d = doc.at("d").get<int>();
        std::vector<Rectangle> rects;
        for (const auto& r : doc.at("rectangles")) {
            std::set<BitString> rows, cols;
            for (const auto& x : r.at("rows")) {
                if (!rows.insert(BitString::parse(x.get<std::string>())).second) throw InvalidArgument("duplicate rectangle row");
            }
            for (const auto& y : r.at("cols")) {
                if (!cols.insert(BitString::parse(y.get<std::string>())).second) throw InvalidArgument("duplicate rectangle column");
            }
            rects.emplace_back(d, std::move(rows), std::move(cols));
        }
        return CoveringFamily(d, doc.value("label", std::string{}), std::move(rects));
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("family JSON: ") + e.what());
    }
}

std::string certificate_to_json(const CoveringCertificate& cert) {
    json assignment = json::array();
    for (const auto& [pair, index] : cert.assignment) {
        assignment.push_back(json::array({json::array({pair.first.str(), pair.second.str()}), index}));
    }
    return json{{"assignment", assignment}}.dump();
}

CoveringCertificate certificate_from_json(const std::string& text, const CoveringFamily& family) {
    CoveringCertificate cert;
    try {
        const json doc = json::parse(text);
        for (const auto& e : doc.at("assignment")) {
            BitPair p{BitString::parse(e.at(0).at(0).get<std::string>()), BitString::parse(e.at(0).at(1).get<std::string>())};
            if (!cert.assignment.emplace(p, e.at(1).get<std::size_t>()).second) {
                throw InvalidArgument("certificate assigns a pair twice");
            }
        }
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("certificate JSON: ") + e.what());
    }
    std::string why;
    if (!is_valid_certificate(cert, family, &why)) throw InvalidArgument("certificate does not validate: " + why);
    return cert;
}

}  // namespace blocksdp
