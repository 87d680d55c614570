#include <doctest.h>

#include <random>

#include "blocksdp/covering.hpp"
#include "blocksdp/errors.hpp"

using namespace blocksdp;

namespace {

BitString bs(const char* t) { return BitString::parse(t); }

std::set<BitString> strs(std::initializer_list<const char*> texts) {
    std::set<BitString> out;
    for (const char* t : texts) out.insert(bs(t));
    return out;
}

// Exhaustive backtracking: is there an injective assignment of `support`
// into rectangles of `family` that contain each pair?
bool brute_force_assignable(const std::vector<BitPair>& support, const CoveringFamily& family, std::size_t i,
                            std::vector<bool>& used) {
    if (i == support.size()) return true;
    for (std::size_t r = 0; r < family.k(); ++r) {
        if (used[r] || !family.rectangles()[r].contains(support[i])) continue;
        used[r] = true;
        if (brute_force_assignable(support, family, i + 1, used)) return true;
        used[r] = false;
    }
    return false;
}

bool brute_force_assignable(const std::vector<BitPair>& support, const CoveringFamily& family) {
    std::vector<bool> used(family.k(), false);
    return brute_force_assignable(support, family, 0, used);
}

std::vector<BitPair> maximal_support(int d, const BitString& alpha) {
    std::vector<BitPair> out;
    for (const auto& p : enumerate_disjoint_pairs(d))
        if (p != BitPair{alpha, alpha.complement()}) out.push_back(p);
    return out;
}

SupportMatrix random_matrix(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> entry(0, 3);
    SupportMatrix m = SupportMatrix::zeros(n);
    for (std::size_t a = 0; a < m.dim(); ++a)
        for (std::size_t b = 0; b < m.dim(); ++b) m.set(a, b, entry(rng));
    m.set_integral(true);
    return m;
}

}  // namespace

TEST_CASE("rectangles must be disjoint products") {
    CHECK_THROWS_AS(Rectangle(1, strs({"0", "1"}), strs({"1"})), InvalidArgument);  // (1,1) intersects
    CHECK_THROWS_AS(Rectangle(2, {}, strs({"00"})), InvalidArgument);
    CHECK_THROWS_AS(Rectangle(2, strs({"0"}), strs({"00"})), InvalidArgument);
    CHECK(Rectangle(2, strs({"00", "01"}), strs({"00", "10"})).size() == 4);
}

TEST_CASE("base covering at d = 1") {
    const auto f = base_covering_d1();
    REQUIRE(f.k() == 2);
    CHECK(f.rectangles()[0] == Rectangle(1, strs({"0"}), strs({"0", "1"})));
    CHECK(f.rectangles()[1] == Rectangle(1, strs({"0", "1"}), strs({"0"})));
    CHECK(verify_covering_maximal(f));
}

TEST_CASE("explicit d = 2 covering") {
    const auto f = explicit_covering_d2();
    CHECK(f.k() == 7);
    CHECK(f.rectangles()[3].size() == 4);
    CHECK(f.rectangles()[1] == f.rectangles()[2]);
    CHECK(verify_patterns_d2(f));

    const auto report = verify_covering_maximal_report(f);
    CHECK_FALSE(report.ok);
    for (const auto& inst : report.instances) {
        CHECK(inst.outcome.certificate.has_value() == brute_force_assignable(inst.outcome.support, f));
        if (!inst.outcome.certificate) {
            // Hall's condition fails on the reported set.
            CHECK(inst.outcome.hall_pairs.size() > inst.outcome.hall_rectangles.size());
            for (const auto& p : inst.outcome.hall_pairs)
                for (std::size_t r = 0; r < f.k(); ++r)
                    if (f.rectangles()[r].contains(p))
                        CHECK(std::find(inst.outcome.hall_rectangles.begin(), inst.outcome.hall_rectangles.end(), r) !=
                              inst.outcome.hall_rectangles.end());
        }
    }
}

TEST_CASE("hand-entered pattern assignments certify the six patterns") {
    const auto f = explicit_covering_d2();
    const auto tables = phi_table_d2();
    REQUIRE(tables.size() == kPatternCount);
    for (int id = 1; id <= kPatternCount; ++id) {
        std::string why;
        CHECK_MESSAGE(is_valid_certificate(tables[static_cast<std::size_t>(id - 1)], f, &why), why);
        CHECK(certifies(tables[static_cast<std::size_t>(id - 1)], f, pattern_disjoint_support(id)));
    }
}

TEST_CASE("recursive coverings are (3^d - 1)-uniform") {
    for (int d = 1; d <= kMaxCoveringD; ++d) {
        const auto f = recursive_covering(d);
        CHECK(f.k() == pow3(d) - 1);
        CHECK(f.d() == d);
        if (d >= 2) {
            const auto prev = recursive_covering(d - 1);
            for (std::size_t i = prev.k(); i < f.k(); ++i) CHECK(f.rectangles()[i].size() == 2);
        }
    }
    CHECK(recursive_covering(1) == CoveringFamily(1, "recursive-d1", base_covering_d1().rectangles()));
    for (int d = 1; d <= 4; ++d) {
        const auto f = recursive_covering(d);
        const auto serial = verify_covering_maximal_report(f, Exec::serial);
        const auto parallel = verify_covering_maximal_report(f, Exec::parallel);
        CHECK(serial.ok);
        REQUIRE(serial.instances.size() == parallel.instances.size());
        for (std::size_t i = 0; i < serial.instances.size(); ++i) {
            CHECK(serial.instances[i].alpha == parallel.instances[i].alpha);
            CHECK(serial.instances[i].outcome.certificate == parallel.instances[i].outcome.certificate);
            REQUIRE(serial.instances[i].outcome.certificate.has_value());
            CHECK(certifies(*serial.instances[i].outcome.certificate, f, maximal_support(d, serial.instances[i].alpha)));
        }
    }
    CHECK(verify_patterns_d2(recursive_covering(2)));
    CHECK_THROWS_AS(recursive_covering(7), InvalidArgument);
}

TEST_CASE("removing any rectangle breaks maximal coverage") {
    for (int d = 1; d <= 3; ++d) {
        const auto f = recursive_covering(d);
        for (std::size_t i = 0; i < f.k(); ++i) CHECK_FALSE(verify_covering_maximal(f.without(i)));
    }
    // Without `a` the pattern (1) entry (00,11) has nowhere to go.
    CHECK_FALSE(verify_patterns_d2(explicit_covering_d2().without(0)));
}

TEST_CASE("find_certificate edge cases") {
    const auto f = recursive_covering(2);
    const auto empty = find_certificate({}, f);
    REQUIRE(empty.has_value());
    CHECK(empty->assignment.empty());

    const std::vector<BitPair> one{{bs("01"), bs("10")}};
    const auto single = find_certificate(one, f);
    REQUIRE(single.has_value());
    CHECK(certifies(*single, f, one));

    // Two pairs, but only one rectangle.
    const CoveringFamily tiny(1, "tiny", {Rectangle(1, strs({"0"}), strs({"0", "1"}))});
    const std::vector<BitPair> two{{bs("0"), bs("0")}, {bs("0"), bs("1")}};
    const auto outcome = match_support(two, tiny);
    CHECK_FALSE(outcome.certificate.has_value());
    CHECK(outcome.hall_pairs.size() == 2);
    CHECK(outcome.hall_rectangles.size() == 1);

    CHECK_THROWS_AS(find_certificate({{bs("1"), bs("1")}}, base_covering_d1()), InvalidArgument);
    CHECK_THROWS_AS(find_certificate({{bs("00"), bs("00")}}, base_covering_d1()), InvalidArgument);
    CHECK_THROWS_AS(find_certificate({{bs("0"), bs("0")}, {bs("0"), bs("0")}}, base_covering_d1()), InvalidArgument);
}

TEST_CASE("matching agrees with exhaustive search and is monotone") {
    std::mt19937_64 rng(31);
    const auto explicit_f = explicit_covering_d2();
    const auto rec2 = recursive_covering(2);
    const auto all = enumerate_disjoint_pairs(2);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<BitPair> s;
        for (const auto& p : all)
            if (rng() % 2) s.push_back(p);
        for (const auto* f : {&explicit_f, &rec2}) {
            const auto cert = find_certificate(s, *f);
            CHECK(cert.has_value() == brute_force_assignable(s, *f));
            if (cert) {
                CHECK(certifies(*cert, *f, s));
                std::vector<BitPair> sub;
                for (const auto& p : s)
                    if (rng() % 2) sub.push_back(p);
                CHECK(find_certificate(sub, *f).has_value());
            }
        }
    }
}

TEST_CASE("block decomposition") {
    std::mt19937_64 rng(37);
    for (int n = 1; n <= 6; ++n) {
        for (int d = 1; d <= n; ++d) {
            const auto m = random_matrix(n, rng);
            const auto grid = block_decompose(m, d);
            CHECK(grid.blocks.size() == (std::size_t{1} << (2 * d)));
            CHECK(assemble(grid) == m);
            // Entry-level definition M^{x,y}[a,b] = M[x.a, y.b].
            for (int t = 0; t < 20; ++t) {
                const BitString x(d, static_cast<std::uint32_t>(rng() % (1u << d)));
                const BitString y(d, static_cast<std::uint32_t>(rng() % (1u << d)));
                const BitString a(n - d, n == d ? 0u : static_cast<std::uint32_t>(rng() % (1u << (n - d))));
                const BitString b(n - d, n == d ? 0u : static_cast<std::uint32_t>(rng() % (1u << (n - d))));
                CHECK(grid.at(x, y).at(a, b) == m.at(concat(x, a), concat(y, b)));
            }
            // val splits over disjoint outer pairs.
            if (n > d) {
                std::uint64_t sum = 0;
                for (const auto& [x, y] : enumerate_disjoint_pairs(d)) sum += val(grid.at(x, y));
                CHECK(sum == val(m));
            }
        }
    }
    CHECK_THROWS_AS(block_decompose(udisj(2), 3), InvalidArgument);
}

TEST_CASE("aggregates") {
    SUBCASE("single-rectangle family returns the block sum") {
        std::mt19937_64 rng(41);
        const auto m = random_matrix(3, rng);
        const CoveringFamily f(1, "one", {Rectangle(1, strs({"0"}), strs({"0", "1"}))});
        const auto agg = aggregate(m, f);
        REQUIRE(agg.size() == 1);
        const auto grid = block_decompose(m, 1);
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) CHECK(agg[0].at(a, b) == grid.blocks[0].at(a, b) + grid.blocks[1].at(a, b));
    }
    SUBCASE("udisj at d = 1") {
        const auto m = udisj(3);
        const auto agg = aggregate(m, base_covering_d1());
        const auto grid = block_decompose(m, 1);
        const auto& m00 = grid.at(bs("0"), bs("0"));
        const auto& m01 = grid.at(bs("0"), bs("1"));
        const auto& m10 = grid.at(bs("1"), bs("0"));
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) {
                CHECK(agg[0].at(a, b) == m00.at(a, b) + m01.at(a, b));
                CHECK(agg[1].at(a, b) == m00.at(a, b) + m10.at(a, b));
            }
    }
    SUBCASE("aggregates of sampled atoms are atom patterns") {
        for (std::uint64_t seed = 0; seed < 300; ++seed) {
            const auto f = sample_atom(4, 2, {RankProfile::uniform(), seed % 2 ? SampleSide::v_first : SampleSide::u_first}, seed);
            for (const auto& mi : aggregate(evaluate(f), recursive_covering(2))) CHECK(is_atom_pattern(mi));
        }
    }
}

TEST_CASE("induction inequality") {
    const auto zero = check_induction_inequality(PsdFactorization::constant(3, 2, PsdMatrix::zero(2)), recursive_covering(2));
    CHECK(zero.lhs == 0);
    CHECK(zero.rhs == 0);
    CHECK(zero.ok());

    for (const auto& family : {recursive_covering(2), explicit_covering_d2()}) {
        for (std::uint64_t seed = 0; seed < 300; ++seed) {
            const auto f = sample_atom(4, 2, {RankProfile::uniform(), seed % 2 ? SampleSide::v_first : SampleSide::u_first}, seed);
            const auto r = check_induction_inequality(f, family);
            CHECK(r.ok());
            CHECK(r.per_rectangle.size() == family.k());
            CHECK(r.lhs == val(evaluate(f)));
        }
    }

    // val is subadditive over sums of r atoms, giving 64 r at n = 4, d = 2.
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const int r = 1 + static_cast<int>(rng() % 4);
        SupportMatrix sum = SupportMatrix::zeros(4);
        for (int j = 0; j < r; ++j) {
            const auto m = evaluate(sample_atom(4, 2, {}, rng()));
            for (std::size_t a = 0; a < m.dim(); ++a)
                for (std::size_t b = 0; b < m.dim(); ++b) sum.add(a, b, m.at(a, b));
        }
        CHECK(val(sum) <= 64u * static_cast<unsigned>(r));
    }

    auto bad = PsdFactorization::constant(2, 2, PsdMatrix::identity(2));
    CHECK_THROWS_AS(check_induction_inequality(bad, recursive_covering(2)), PreconditionError);
    CHECK_THROWS_AS(check_induction_inequality(PsdFactorization::constant(1, 2, PsdMatrix::zero(2)), recursive_covering(2)),
                    InvalidArgument);
}

TEST_CASE("family and certificate JSON") {
    for (int d = 1; d <= 4; ++d) {
        const auto f = recursive_covering(d);
        const auto text = family_to_json(f);
        CHECK(family_from_json(text) == f);
        CHECK(family_to_json(family_from_json(text)) == text);
        for (const auto& inst : verify_covering_maximal_report(f).instances) {
            const auto ctext = certificate_to_json(*inst.outcome.certificate);
            CHECK(certificate_from_json(ctext, f) == *inst.outcome.certificate);
        }
    }
    CHECK(family_from_json(family_to_json(explicit_covering_d2())) == explicit_covering_d2());

    const auto f = explicit_covering_d2();
    CHECK_THROWS_AS(certificate_from_json(R"({"assignment":[[["00","11"],1]]})", f), InvalidArgument);  // b has no (00,11)
    CHECK_THROWS_AS(certificate_from_json(R"({"assignment":[[["00","11"],0],[["00","01"],0]]})", f), InvalidArgument);
    CHECK_THROWS_AS(certificate_from_json(R"({"assignment":[[["00","00"],9]]})", f), InvalidArgument);
    CHECK_THROWS_AS(family_from_json(R"({"d":1,"rectangles":[{"rows":["1"],"cols":["1"]}]})"), InvalidArgument);
    CHECK_THROWS_AS(family_from_json(R"({"d":1,"rectangles":[{"rows":["0","0"],"cols":["1"]}]})"), InvalidArgument);
    CHECK_THROWS_AS(family_from_json("[1,2"), InvalidArgument);
}
