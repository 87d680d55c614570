#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace blocksdp {

inline constexpr int kMaxWidth = 16;

/// Fixed-width bit string. Position 1 is the leftmost (most significant) bit,
/// so numeric order on `value` is the lexicographic order on the text form.
///
/// Width 0 (the empty string) is accepted; it indexes the 1x1 blocks that
/// appear when a matrix is decomposed at full depth.
class BitString {
public:
    BitString() = default;
    BitString(int width, std::uint32_t value);

    static BitString parse(std::string_view text);
    static BitString zeros(int width) { return BitString(width, 0); }
    static BitString ones(int width);
    /// e_i: a single 1 at position i (1-based, from the left).
    static BitString unit(int width, int position);

    int width() const { return width_; }
    std::uint32_t value() const { return value_; }

    /// Bit at position i (1-based, leftmost first).
    bool bit(int position) const;
    int popcount() const;
    BitString complement() const;
    std::string str() const;

    friend auto operator<=>(const BitString&, const BitString&) = default;
    friend bool operator==(const BitString&, const BitString&) = default;

private:
    int width_ = 0;
    std::uint32_t value_ = 0;
};

using BitPair = std::pair<BitString, BitString>;

/// a^T b, the number of positions where both strings have a 1.
int intersection_size(const BitString& a, const BitString& b);

/// x followed by a; x occupies the leading positions.
BitString concat(const BitString& x, const BitString& a);

/// Every string of the given width in lex order.
std::vector<BitString> all_strings(int width);

/// Calls fn(a, b) for each disjoint pair in lex-by-row-then-column order.
/// Works up to width 16 without materializing the 3^n list.
void for_each_disjoint_pair(int n, const std::function<void(BitString, BitString)>& fn);

std::vector<BitPair> enumerate_disjoint_pairs(int n);

std::uint64_t pow3(int n);

}  // namespace blocksdp

template <>
struct std::hash<blocksdp::BitString> {
    std::size_t operator()(const blocksdp::BitString& s) const noexcept {
        return (static_cast<std::size_t>(s.width()) << 32) ^ s.value();
    }
};
