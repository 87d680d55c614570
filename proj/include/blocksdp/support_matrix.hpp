#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blocksdp/bitstring.hpp"

namespace blocksdp {

/// Relative threshold below which a sampled entry is classified as zero.
inline constexpr double kZeroEps = 1e-9;

/// Largest n for which a 2^n x 2^n matrix is stored densely.
inline constexpr int kMaxDenseN = 10;

/// Nonnegative 2^n x 2^n matrix indexed by n-bit strings in lex order.
///
/// An entry is in the support iff it exceeds epsilon() * scale(). The scale is
/// the largest entry unless a reference scale was attached: blocks and
/// aggregates inherit the scale of the matrix they came from, so an entry that
/// counts as positive in the parent also counts as positive after summation.
class SupportMatrix {
public:
    SupportMatrix() = default;
    static SupportMatrix zeros(int n);

    int n() const { return n_; }
    std::size_t dim() const { return dim_; }

    double at(std::size_t row, std::size_t col) const { return values_[row * dim_ + col]; }
    double at(const BitString& a, const BitString& b) const;
    void set(std::size_t row, std::size_t col, double value);
    void set(const BitString& a, const BitString& b, double value);
    void add(std::size_t row, std::size_t col, double value) { set(row, col, at(row, col) + value); }

    std::span<const double> values() const { return values_; }

    double max_entry() const;
    double scale() const;
    std::optional<double> reference_scale() const { return reference_scale_; }
    void set_reference_scale(std::optional<double> s) { reference_scale_ = s; }

    double epsilon() const { return epsilon_; }
    void set_epsilon(double eps);
    double zero_threshold() const { return epsilon_ * scale(); }

    bool is_zero(std::size_t row, std::size_t col) const { return at(row, col) <= zero_threshold(); }
    bool is_zero(const BitString& a, const BitString& b) const;

    /// Marks the matrix as holding exact small integers (UDISJ and friends).
    bool integral() const { return integral_; }
    void set_integral(bool v) { integral_ = v; }

    /// All pairs classified positive, lex order.
    std::vector<BitPair> support() const;

    friend bool operator==(const SupportMatrix& x, const SupportMatrix& y) {
        return x.n_ == y.n_ && x.values_ == y.values_;
    }

private:
    int n_ = 0;
    std::size_t dim_ = 1;
    std::vector<double> values_{0.0};
    std::optional<double> reference_scale_;
    double epsilon_ = kZeroEps;
    bool integral_ = false;
};

/// (1 - a^T b)^2 for all pairs; exact integers.
SupportMatrix udisj(int n);

/// Slack of b b^T against <2 diag(a) - a a^T, x> <= 1, computed by an explicit
/// matrix inner product rather than through a^T b.
double cor_slack(const BitString& a, const BitString& b);

/// Number of disjoint pairs with a positive entry.
std::uint64_t val(const SupportMatrix& m);

/// val(UDISJ(n)) by disjoint-pair enumeration, n <= 16, without a dense matrix.
std::uint64_t udisj_val(int n);

/// True iff every intersection-one entry is (numerically) zero.
bool is_atom_pattern(const SupportMatrix& m);

/// Lex-smallest a with M[a, complement(a)] classified zero.
std::optional<BitString> has_antidiagonal_zero(const SupportMatrix& m);

/// CSV with a header row/column of lex-ordered bit strings.
std::string to_csv(const SupportMatrix& m);
/// {"n": n, "entries": [[a, b, value], ...]} listing nonzero entries only.
std::string to_json(const SupportMatrix& m);
SupportMatrix support_matrix_from_json(const std::string& text);

}  // namespace blocksdp
