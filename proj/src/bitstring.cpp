#include "blocksdp/bitstring.hpp"

#include <bit>

#include "blocksdp/errors.hpp"

namespace blocksdp {

namespace {

std::uint32_t mask(int width) {
    return width == 0 ? 0u : (width >= 32 ? ~0u : ((1u << width) - 1u));
}

void require_same_width(const BitString& a, const BitString& b) {
    if (a.width() != b.width()) {
        throw InvalidArgument("bit strings of different widths: " + a.str() + " vs " + b.str());
    }
}

}  // namespace

BitString::BitString(int width, std::uint32_t value) : width_(width), value_(value) {
    if (width < 0 || width > kMaxWidth) {
        throw InvalidArgument("bit string width " + std::to_string(width) + " outside [0, 16]");
    }
    if ((value & ~mask(width)) != 0) {
        throw InvalidArgument("value " + std::to_string(value) + " does not fit in width " +
                              std::to_string(width));
    }
}

BitString BitString::parse(std::string_view text) {
    if (text.size() > static_cast<std::size_t>(kMaxWidth)) {
        throw InvalidArgument("bit string longer than 16 characters: " + std::string(text));
    }
    std::uint32_t v = 0;
    for (char ch : text) {
        if (ch != '0' && ch != '1') {
            throw InvalidArgument("bit string must be 0/1 text: '" + std::string(text) + "'");
        }
        v = (v << 1) | static_cast<std::uint32_t>(ch - '0');
    }
    return BitString(static_cast<int>(text.size()), v);
}

BitString BitString::ones(int width) { return BitString(width, mask(width)); }

BitString BitString::unit(int width, int position) {
    if (position < 1 || position > width) {
        throw InvalidArgument("unit position " + std::to_string(position) + " outside [1, width]");
    }
    return BitString(width, 1u << (width - position));
}

bool BitString::bit(int position) const {
    if (position < 1 || position > width_) {
        throw InvalidArgument("bit position out of range");
    }
    return ((value_ >> (width_ - position)) & 1u) != 0;
}

int BitString::popcount() const { return std::popcount(value_); }

BitString BitString::complement() const { return BitString(width_, ~value_ & mask(width_)); }

std::string BitString::str() const {
    std::string out(static_cast<std::size_t>(width_), '0');
    for (int i = 0; i < width_; ++i) {
        if ((value_ >> (width_ - 1 - i)) & 1u) out[static_cast<std::size_t>(i)] = '1';
    }
    return out;
}

int intersection_size(const BitString& a, const BitString& b) {
    require_same_width(a, b);
    return std::popcount(a.value() & b.value());
}

BitString concat(const BitString& x, const BitString& a) {
    const int w = x.width() + a.width();
    if (w > kMaxWidth) {
        throw InvalidArgument("concatenated width " + std::to_string(w) + " exceeds 16");
    }
    return BitString(w, (x.value() << a.width()) | a.value());
}

std::vector<BitString> all_strings(int width) {
    BitString probe(width, 0);  // validates width
    std::vector<BitString> out;
    out.reserve(std::size_t{1} << width);
    for (std::uint32_t v = 0; v <= mask(width); ++v) {
        out.emplace_back(width, v);
        if (v == mask(width)) break;
    }
    return out;
}

void for_each_disjoint_pair(int n, const std::function<void(BitString, BitString)>& fn) {
    if (n < 1 || n > kMaxWidth) {
        throw InvalidArgument("n = " + std::to_string(n) + " outside [1, 16]");
    }
    const std::uint32_t full = mask(n);
    for (std::uint32_t a = 0;; ++a) {
        const std::uint32_t free = ~a & full;
        // Submasks of `free` in increasing order.
        std::uint32_t b = 0;
        while (true) {
            fn(BitString(n, a), BitString(n, b));
            if (b == free) break;
            b = ((b | ~free) + 1u) & free;
        }
        if (a == full) break;
    }
}

std::vector<BitPair> enumerate_disjoint_pairs(int n) {
    std::vector<BitPair> out;
    if (n >= 1 && n <= kMaxWidth) out.reserve(pow3(n));
    for_each_disjoint_pair(n, [&](BitString a, BitString b) { out.emplace_back(a, b); });
    return out;
}

std::uint64_t pow3(int n) {
    std::uint64_t r = 1;
    for (int i = 0; i < n; ++i) r *= 3;
    return r;
}

}  // namespace blocksdp
