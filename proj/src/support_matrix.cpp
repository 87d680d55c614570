#include "blocksdp/support_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "blocksdp/errors.hpp"

namespace blocksdp {

using nlohmann::json;

SupportMatrix SupportMatrix::zeros(int n) {
    if (n < 0 || n > kMaxDenseN) {
        throw InvalidArgument("dense matrices are limited to n <= 10 (got n = " + std::to_string(n) + ")");
    }
    SupportMatrix m;
    m.n_ = n;
    m.dim_ = std::size_t{1} << n;
    m.values_.assign(m.dim_ * m.dim_, 0.0);
    return m;
}

double SupportMatrix::at(const BitString& a, const BitString& b) const {
    if (a.width() != n_ || b.width() != n_) throw InvalidArgument("index width does not match matrix size");
    return at(a.value(), b.value());
}

void SupportMatrix::set(std::size_t row, std::size_t col, double value) {
    if (!(value >= 0.0)) {
        throw InvalidArgument("support matrix entries must be nonnegative (got " + std::to_string(value) + ")");
    }
    values_[row * dim_ + col] = value;
}

void SupportMatrix::set(const BitString& a, const BitString& b, double value) {
    if (a.width() != n_ || b.width() != n_) throw InvalidArgument("index width does not match matrix size");
    set(a.value(), b.value(), value);
}

double SupportMatrix::max_entry() const { return *std::max_element(values_.begin(), values_.end()); }

double SupportMatrix::scale() const { return reference_scale_ ? *reference_scale_ : max_entry(); }

void SupportMatrix::set_epsilon(double eps) {
    if (!(eps >= 0.0) || eps >= 1.0) throw InvalidArgument("zero threshold must lie in [0, 1)");
    epsilon_ = eps;
}

bool SupportMatrix::is_zero(const BitString& a, const BitString& b) const { return at(a, b) <= zero_threshold(); }

std::vector<BitPair> SupportMatrix::support() const {
    std::vector<BitPair> out;
    const double thr = zero_threshold();
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            if (at(i, j) > thr) {
                out.emplace_back(BitString(n_, static_cast<std::uint32_t>(i)),
                                 BitString(n_, static_cast<std::uint32_t>(j)));
            }
        }
    }
    return out;
}

SupportMatrix udisj(int n) {
    if (n < 1 || n > kMaxDenseN) throw InvalidArgument("udisj: n must lie in [1, 10]");
    SupportMatrix m = SupportMatrix::zeros(n);
    for (std::size_t a = 0; a < m.dim(); ++a) {
        for (std::size_t b = 0; b < m.dim(); ++b) {
            const int t = 1 - std::popcount(a & b);
            m.set(a, b, static_cast<double>(t * t));
        }
    }
    m.set_integral(true);
    return m;
}

double cor_slack(const BitString& a, const BitString& b) {
    if (a.width() != b.width()) throw InvalidArgument("cor_slack: width mismatch");
    const int n = a.width();
    // 1 - <2 diag(a) - a a^T, b b^T>, all integer.
    long long inner = 0;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            const int ai = a.bit(i), aj = a.bit(j);
            const int q = (i == j ? 2 * ai : 0) - ai * aj;
            inner += static_cast<long long>(q) * (b.bit(i) * b.bit(j));
        }
    }
    return static_cast<double>(1 - inner);
}

std::uint64_t val(const SupportMatrix& m) {
    std::uint64_t count = 0;
    const double thr = m.zero_threshold();
    const std::size_t full = m.dim() - 1;
    for (std::size_t a = 0; a < m.dim(); ++a) {
        const std::size_t free = ~a & full;
        std::size_t b = 0;
        while (true) {
            if (m.at(a, b) > thr) ++count;
            if (b == free) break;
            b = ((b | ~free) + 1) & free;
        }
    }
    return count;
}

std::uint64_t udisj_val(int n) {
    std::uint64_t count = 0;
    for_each_disjoint_pair(n, [&](BitString a, BitString b) {
        const int t = 1 - intersection_size(a, b);
        if (t * t > 0) ++count;
    });
    return count;
}

bool is_atom_pattern(const SupportMatrix& m) {
    const double thr = m.zero_threshold();
    for (std::size_t a = 0; a < m.dim(); ++a) {
        for (std::size_t b = 0; b < m.dim(); ++b) {
            if (std::popcount(a & b) == 1 && m.at(a, b) > thr) return false;
        }
    }
    return true;
}

std::optional<BitString> has_antidiagonal_zero(const SupportMatrix& m) {
    const std::size_t full = m.dim() - 1;
    for (std::size_t a = 0; a < m.dim(); ++a) {
        if (m.is_zero(a, ~a & full)) return BitString(m.n(), static_cast<std::uint32_t>(a));
    }
    return std::nullopt;
}

std::string to_csv(const SupportMatrix& m) {
    const auto labels = all_strings(m.n());
    std::ostringstream out;
    out.precision(17);
    out << "row";
    for (const auto& s : labels) out << ',' << s.str();
    out << '\n';
    for (std::size_t i = 0; i < m.dim(); ++i) {
        out << labels[i].str();
        for (std::size_t j = 0; j < m.dim(); ++j) {
            out << ',';
            if (m.integral()) {
                out << static_cast<long long>(m.at(i, j));
            } else {
                out << m.at(i, j);
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string to_json(const SupportMatrix& m) {
    json entries = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            const double v = m.at(i, j);
            if (v == 0.0) continue;
            json value = m.integral() ? json(static_cast<long long>(v)) : json(v);
            entries.push_back({BitString(m.n(), static_cast<std::uint32_t>(i)).str(),
                               BitString(m.n(), static_cast<std::uint32_t>(j)).str(), value});
        }
    }
    json doc = {{"n", m.n()}, {"entries", entries}};
    return doc.dump();
}

SupportMatrix support_matrix_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("matrix JSON: ") + e.what());
    }
    if (!doc.contains("n") || !doc.contains("entries")) throw InvalidArgument("matrix JSON needs n and entries");
    const int n = doc["n"].get<int>();
    SupportMatrix m = SupportMatrix::zeros(n);
    bool integral = true;
    for (const auto& e : doc["entries"]) {
        if (!e.is_array() || e.size() != 3) throw InvalidArgument("matrix JSON entry must be [a, b, value]");
        const auto a = BitString::parse(e[0].get<std::string>());
        const auto b = BitString::parse(e[1].get<std::string>());
        if (!e[2].is_number_integer()) integral = false;
        m.set(a, b, e[2].get<double>());
    }
    m.set_integral(integral);
    return m;
}

}  // namespace blocksdp
