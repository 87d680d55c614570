#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "blocksdp/atoms.hpp"
#include "blocksdp/bitstring.hpp"
#include "blocksdp/parallel.hpp"
#include "blocksdp/support_matrix.hpp"

namespace blocksdp {

inline constexpr int kMaxCoveringD = 6;

/// rows x cols over d-bit strings. Every pair in it must be disjoint; the
/// constructor throws InvalidArgument otherwise.
class Rectangle {
public:
    Rectangle(int d, std::set<BitString> rows, std::set<BitString> cols);

    int d() const { return d_; }
    const std::set<BitString>& rows() const { return rows_; }
    const std::set<BitString>& cols() const { return cols_; }
    std::size_t size() const { return rows_.size() * cols_.size(); }
    bool contains(const BitString& x, const BitString& y) const { return rows_.count(x) && cols_.count(y); }
    bool contains(const BitPair& p) const { return contains(p.first, p.second); }

    friend bool operator==(const Rectangle&, const Rectangle&) = default;

private:
    int d_;
    std::set<BitString> rows_;
    std::set<BitString> cols_;
};

/// Ordered list of rectangles; duplicates are distinct members.
class CoveringFamily {
public:
    CoveringFamily(int d, std::string label, std::vector<Rectangle> rectangles);

    int d() const { return d_; }
    const std::string& label() const { return label_; }
    const std::vector<Rectangle>& rectangles() const { return rectangles_; }
    std::size_t k() const { return rectangles_.size(); }

    /// Same family without member `index`.
    CoveringFamily without(std::size_t index) const;

    friend bool operator==(const CoveringFamily&, const CoveringFamily&) = default;

private:
    int d_;
    std::string label_;
    std::vector<Rectangle> rectangles_;
};

/// An injective assignment of disjoint pairs to rectangle indices (0-based).
struct CoveringCertificate {
    std::map<BitPair, std::size_t> assignment;
    friend bool operator==(const CoveringCertificate&, const CoveringCertificate&) = default;
};

/// Injectivity, index range and containment. On failure `why` says which.
bool is_valid_certificate(const CoveringCertificate& cert, const CoveringFamily& family, std::string* why = nullptr);

/// Valid and its domain is exactly `support`.
bool certifies(const CoveringCertificate& cert, const CoveringFamily& family, const std::vector<BitPair>& support);

CoveringFamily base_covering_d1();
/// a, b1, b2, c1, c2, d1, d2 in that order.
CoveringFamily explicit_covering_d2();
/// 3^d - 1 rectangles built level by level: lifted C_i first, then A_xy, B_xy
/// for each disjoint (x, y) of width d - 1 in lex order.
CoveringFamily recursive_covering(int d);

/// Outcome of one matching instance. Either a certificate or a Hall violator.
struct MatchingOutcome {
    std::vector<BitPair> support;
    std::optional<CoveringCertificate> certificate;
    std::vector<BitPair> hall_pairs;          // pairs that compete for too few rectangles
    std::vector<std::size_t> hall_rectangles; // every rectangle containing any of them
};

MatchingOutcome match_support(const std::vector<BitPair>& support, const CoveringFamily& family);

/// Saturating assignment of every support pair, or none.
std::optional<CoveringCertificate> find_certificate(const std::vector<BitPair>& support, const CoveringFamily& family);

struct MaximalInstance {
    BitString alpha;  // the antidiagonal pair (alpha, ~alpha) removed from the support
    MatchingOutcome outcome;
};

struct CoveringVerification {
    bool ok = true;
    std::vector<MaximalInstance> instances;
};

/// One matching per alpha in {0,1}^d over all disjoint pairs except
/// (alpha, ~alpha). Passing all 2^d certifies the covering on every matrix
/// that vanishes at intersection-one pairs and has an antidiagonal zero.
CoveringVerification verify_covering_maximal_report(const CoveringFamily& family, Exec exec = Exec::serial);
bool verify_covering_maximal(const CoveringFamily& family, Exec exec = Exec::serial);

struct PatternInstance {
    int pattern = 0;
    MatchingOutcome outcome;
};
struct PatternVerification {
    bool ok = true;
    std::vector<PatternInstance> instances;
};

/// One matching per d = 2 sparsity pattern (disjoint entries only).
PatternVerification verify_patterns_d2_report(const CoveringFamily& family);
bool verify_patterns_d2(const CoveringFamily& family);

/// Hand-entered assignments for the six patterns against explicit_covering_d2.
std::vector<CoveringCertificate> phi_table_d2();

/// Blocks M^{x,y}[a, b] = M[x.a, y.b] of size 2^(n-d), stored row-major in
/// (x, y). Blocks inherit the parent's scale and zero threshold.
struct BlockGrid {
    int depth = 0;
    int inner_n = 0;
    std::vector<SupportMatrix> blocks;

    const SupportMatrix& at(const BitString& x, const BitString& y) const {
        return blocks.at((std::size_t{x.value()} << depth) | y.value());
    }
};

BlockGrid block_decompose(const SupportMatrix& m, int d);
SupportMatrix assemble(const BlockGrid& grid);

/// M_i = sum over (x, y) in R_i of M^{x,y}.
std::vector<SupportMatrix> aggregate(const SupportMatrix& m, const CoveringFamily& family);

struct InductionReport {
    std::uint64_t lhs = 0;                 // val_n(M)
    std::vector<std::uint64_t> per_rectangle;  // val_{n-d}(M_i)
    std::uint64_t rhs = 0;
    bool holds = false;                    // lhs <= rhs
    bool aggregates_are_atoms = false;     // every M_i vanishes at intersection-one pairs
    bool ok() const { return holds && aggregates_are_atoms; }
};

/// val(M) <= sum_i val(M_i) for M = evaluate(f). Only factorizations are
/// accepted, since the inequality is only claimed for atoms; throws
/// PreconditionError if the evaluated matrix is not an atom pattern.
InductionReport check_induction_inequality(const PsdFactorization& f, const CoveringFamily& family, double eps = kZeroEps);

std::string family_to_json(const CoveringFamily& family);
CoveringFamily family_from_json(const std::string& text);
std::string certificate_to_json(const CoveringCertificate& cert);
/// Parses and re-validates against `family`.
CoveringCertificate certificate_from_json(const std::string& text, const CoveringFamily& family);

}  // namespace blocksdp
