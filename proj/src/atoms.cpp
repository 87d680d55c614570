#include "blocksdp/atoms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "blocksdp/errors.hpp"

namespace blocksdp {

using nlohmann::json;

constexpr double kScaleFloor = 1e-9;

PsdFactorization PsdFactorization::constant(int n, int d, const PsdMatrix& value) {
    if (value.dim() != d) throw InvalidArgument("constant factorization: matrix dimension differs from d");
    PsdFactorization f;
    f.n = n;
    f.d = d;
    const std::size_t count = std::size_t{1} << n;
    f.U.assign(count, value);
    f.V.assign(count, value);
    return f;
}

int RankProfile::draw(int d, std::mt19937_64& rng) const {
    switch (kind) {
        case Kind::full:
            return d;
        case Kind::fixed:
            if (rank < 0 || rank > d) throw InvalidArgument("fixed rank outside [0, d]");
            return rank;
        case Kind::uniform:
        default:
            return std::uniform_int_distribution<int>(0, d)(rng);
    }
}

namespace {

// Draws the free side, then places each vector of the other side inside the
// intersection of kernels of its intersection-one partners.
void sample_sides(int n, int d, const RankProfile& ranks, std::mt19937_64& rng, std::vector<PsdMatrix>& free_side,
                  std::vector<PsdMatrix>& constrained_side) {
    const std::size_t count = std::size_t{1} << n;
    free_side.clear();
    constrained_side.clear();
    std::vector<Subspace> kernels;
    kernels.reserve(count);
    for (std::size_t a = 0; a < count; ++a) {
        free_side.push_back(random_psd(d, ranks.draw(d, rng), rng));
        kernels.push_back(kernel(free_side.back()));
    }
    std::vector<Subspace> partners;
    for (std::size_t b = 0; b < count; ++b) {
        partners.clear();
        for (std::size_t a = 0; a < count; ++a) {
            if (std::popcount(a & b) == 1) partners.push_back(kernels[a]);
        }
        const Subspace allowed = subspace_intersect(partners, d);
        constrained_side.push_back(random_psd_in(allowed, ranks.draw(d, rng), rng));
    }
}

}  // namespace

PsdFactorization sample_atom(int n, int d, const SampleOptions& options, std::uint64_t seed) {
    if (n < 1 || n > kMaxSampleN) throw InvalidArgument("sample_atom: n must lie in [1, 8]");
    if (d < 1 || d > kMaxPsdDim) throw InvalidArgument("sample_atom: d must lie in [1, 8]");
    std::mt19937_64 rng(seed);
    PsdFactorization f;
    f.n = n;
    f.d = d;
    // The intersection-one relation is symmetric, so mirroring only swaps roles.
    if (options.side == SampleSide::u_first) {
        sample_sides(n, d, options.ranks, rng, f.U, f.V);
    } else {
        sample_sides(n, d, options.ranks, rng, f.V, f.U);
    }
    return f;
}

SupportMatrix evaluate(const PsdFactorization& f, Exec exec, double eps) {
    if (f.n < 0 || f.n > kMaxDenseN) throw InvalidArgument("evaluate: n must lie in [0, 10]");
    const std::size_t dim = std::size_t{1} << f.n;
    if (f.U.size() != dim || f.V.size() != dim) throw InvalidArgument("evaluate: factor count differs from 2^n");
    SupportMatrix m = SupportMatrix::zeros(f.n);
    m.set_epsilon(eps);
    const auto rows = static_cast<std::int64_t>(dim);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t a = 0; a < rows; ++a) {
            for (std::size_t b = 0; b < dim; ++b) m.set(static_cast<std::size_t>(a), b, inner(f.U[static_cast<std::size_t>(a)], f.V[b]));
        }
    } else {
        for (std::int64_t a = 0; a < rows; ++a) {
            for (std::size_t b = 0; b < dim; ++b) m.set(static_cast<std::size_t>(a), b, inner(f.U[static_cast<std::size_t>(a)], f.V[b]));
        }
    }
    // If every entry is a structural zero the max entry is pure rounding
    // noise, so the scale is floored by a fraction of the Cauchy-Schwarz bound.
    double u_norm = 0.0, v_norm = 0.0;
    for (const auto& u : f.U) u_norm = std::max(u_norm, inner(u, u));
    for (const auto& v : f.V) v_norm = std::max(v_norm, inner(v, v));
    const double floor = kScaleFloor * std::sqrt(u_norm * v_norm);
    if (m.max_entry() < floor) m.set_reference_scale(floor);
    return m;
}

AntidiagonalWitness antidiagonal_witness_detail(const PsdFactorization& f, double eps) {
    if (f.n != f.d) throw PreconditionError("antidiagonal_witness requires n = d");
    const int d = f.d;

    // chain[i] = F_i, chain[0] = {0}.
    std::vector<Subspace> chain{Subspace::zero(d)};
    for (int i = 1; i <= d; ++i) {
        chain.push_back(subspace_sum(chain.back(), image(f.v(BitString::unit(d, i)))));
    }

    AntidiagonalWitness w;
    if (chain[static_cast<std::size_t>(d)].dim() == d) {
        w.a = BitString::ones(d);
        w.which = AntidiagonalWitness::Case::spanning;
    } else if (chain[1].dim() == 0) {
        w.a = BitString::unit(d, 1).complement();
        w.which = AntidiagonalWitness::Case::zero_first_column;
    } else {
        int p = 0;
        for (int i = 1; i < d; ++i) {
            if (chain[static_cast<std::size_t>(i)].dim() == chain[static_cast<std::size_t>(i + 1)].dim()) {
                p = i;
                break;
            }
        }
        if (p == 0) {
            throw FalsificationError("antidiagonal witness: subspace chain never stalls below R^" + std::to_string(d));
        }
        w.a = BitString::unit(d, p + 1).complement();
        w.which = AntidiagonalWitness::Case::stalled_chain;
        w.p = p;
    }

    const SupportMatrix m = evaluate(f, Exec::serial, eps);
    w.entry = m.at(w.a, w.a.complement());
    w.scale = m.scale();
    if (!m.is_zero(w.a, w.a.complement())) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "antidiagonal witness a = " << w.a.str() << " has M[a, ~a] = " << w.entry << " above threshold "
            << m.zero_threshold();
        throw FalsificationError(msg.str());
    }
    return w;
}

BitString antidiagonal_witness(const PsdFactorization& f, double eps) { return antidiagonal_witness_detail(f, eps).a; }

namespace {

PatternTemplate make_template(const char* r0, const char* r1, const char* r2, const char* r3) {
    PatternTemplate t{};
    const char* rows[] = {r0, r1, r2, r3};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rows[i][j];
    return t;
}

const std::array<PatternTemplate, kPatternCount>& templates() {
    // Rows and columns in lex order 00, 01, 10, 11.
    static const std::array<PatternTemplate, kPatternCount> t = {
        make_template("xxxx", "x000", "x000", "x00?"),
        make_template("xxx0", "x0x0", "xx00", "000?"),
        make_template("xxxx", "0000", "xx00", "x00?"),
        make_template("xxxx", "x0x0", "0000", "x00?"),
        make_template("x0xx", "x0x0", "x000", "x00?"),
        make_template("xx0x", "x000", "xx00", "x00?"),
    };
    return t;
}

}  // namespace

const PatternTemplate& pattern_template(int id) {
    if (id < 1 || id > kPatternCount) throw InvalidArgument("pattern id must lie in [1, 6]");
    return templates()[static_cast<std::size_t>(id - 1)];
}

std::vector<BitPair> pattern_disjoint_support(int id) {
    const auto& t = pattern_template(id);
    std::vector<BitPair> out;
    for (std::uint32_t i = 0; i < 4; ++i)
        for (std::uint32_t j = 0; j < 4; ++j) {
            if (t[i][j] == 'x' && (i & j) == 0) out.emplace_back(BitString(2, i), BitString(2, j));
        }
    return out;
}

int classify_pattern_d2(const SupportMatrix& m) {
    if (m.n() != 2) throw InvalidArgument("classify_pattern_d2 requires a 4x4 matrix");
    if (!is_atom_pattern(m)) throw PreconditionError("classify_pattern_d2: matrix is nonzero at an intersection-one pair");
    for (int id = 1; id <= kPatternCount; ++id) {
        const auto& t = pattern_template(id);
        bool fits = true;
        for (std::size_t i = 0; i < 4 && fits; ++i)
            for (std::size_t j = 0; j < 4 && fits; ++j) {
                if (t[i][j] == '0' && !m.is_zero(i, j)) fits = false;
            }
        if (fits) return id;
    }
    std::ostringstream msg;
    msg << "support fits none of the six d = 2 patterns:";
    for (const auto& [a, b] : m.support()) msg << " (" << a.str() << "," << b.str() << ")";
    throw NoPatternMatches(msg.str());
}

SharedImageCheck shared_image_check(const PsdFactorization& f, double eps) {
    if (f.n != 2 || f.d != 2) throw InvalidArgument("shared_image_check requires n = d = 2");
    const BitString s01 = BitString::parse("01"), s10 = BitString::parse("10");
    SharedImageCheck out;
    out.applicable = same_subspace(image(f.u(s01)), image(f.u(s10))) || same_subspace(image(f.v(s01)), image(f.v(s10)));
    if (out.applicable) {
        const SupportMatrix m = evaluate(f, Exec::serial, eps);
        out.holds = m.is_zero(s01, s10) && m.is_zero(s10, s01);
    }
    return out;
}

namespace {

json factor_rows(const PsdMatrix& x) {
    const DenseMatrix& b = x.gram_factor();
    json rows = json::array();
    for (int i = 0; i < b.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < b.cols(); ++j) row.push_back(b(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

PsdMatrix factor_from_rows(const json& rows, int d) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != d) {
        throw InvalidArgument("gram factor must have exactly d rows");
    }
    const int r = static_cast<int>(rows[0].size());
    DenseMatrix b(d, r);
    for (int i = 0; i < d; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != r) throw InvalidArgument("gram factor rows are ragged");
        for (int j = 0; j < r; ++j) b(i, j) = row[static_cast<std::size_t>(j)].get<double>();
    }
    return PsdMatrix(std::move(b));
}

}  // namespace

std::string factorization_to_json(const PsdFactorization& f) {
    json u = json::object(), v = json::object();
    for (std::size_t i = 0; i < f.U.size(); ++i) {
        const std::string key = BitString(f.n, static_cast<std::uint32_t>(i)).str();
        u[key] = factor_rows(f.U[i]);
        v[key] = factor_rows(f.V[i]);
    }
    json doc = {{"n", f.n}, {"d", f.d}, {"U", u}, {"V", v}};
    return doc.dump();
}

PsdFactorization factorization_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("factorization JSON: ") + e.what());
    }
    PsdFactorization f;
    try {
        f.n = doc.at("n").get<int>();
        f.d = doc.at("d").get<int>();
        if (f.n < 0 || f.n > kMaxDenseN || f.d < 1 || f.d > kMaxPsdDim) throw InvalidArgument("factorization size out of range");
        for (const auto& s : all_strings(f.n)) {
            f.U.push_back(factor_from_rows(doc.at("U").at(s.str()), f.d));
            f.V.push_back(factor_from_rows(doc.at("V").at(s.str()), f.d));
        }
        if (doc.at("U").size() != f.U.size() || doc.at("V").size() != f.V.size()) {
            throw InvalidArgument("factorization JSON has extra keys");
        }
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("factorization JSON: ") + e.what());
    }
    return f;
}

}  // namespace blocksdp
