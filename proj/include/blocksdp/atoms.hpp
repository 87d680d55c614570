#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "blocksdp/bitstring.hpp"
#include "blocksdp/linalg.hpp"
#include "blocksdp/parallel.hpp"
#include "blocksdp/support_matrix.hpp"

namespace blocksdp {

inline constexpr int kMaxSampleN = 8;

/// Gram factors U_a, V_b in S^d_+ indexed by n-bit strings (vector index =
/// string value). The evaluated matrix is M[a, b] = <U_a, V_b>.
struct PsdFactorization {
    int n = 0;
    int d = 0;
    std::vector<PsdMatrix> U;
    std::vector<PsdMatrix> V;

    const PsdMatrix& u(const BitString& a) const { return U.at(a.value()); }
    const PsdMatrix& v(const BitString& b) const { return V.at(b.value()); }

    /// All-zero (or all-identity) factorization of the given size.
    static PsdFactorization constant(int n, int d, const PsdMatrix& value);

    friend bool operator==(const PsdFactorization&, const PsdFactorization&) = default;
};

/// How ranks are drawn for each sampled factor.
struct RankProfile {
    enum class Kind { uniform, full, fixed };
    Kind kind = Kind::uniform;
    int rank = 0;  // used by Kind::fixed

    static RankProfile uniform() { return {}; }
    static RankProfile full() { return {Kind::full, 0}; }
    static RankProfile fixed(int r) { return {Kind::fixed, r}; }

    int draw(int d, std::mt19937_64& rng) const;
};

/// Which side is drawn freely; the other side is placed inside the common
/// kernels so the intersection-one zeros hold by construction.
enum class SampleSide { u_first, v_first };

struct SampleOptions {
    RankProfile ranks;
    SampleSide side = SampleSide::u_first;
};

/// Random member of A_{S^d_+}(n) built by construction. n <= 8.
PsdFactorization sample_atom(int n, int d, const SampleOptions& options, std::uint64_t seed);

/// Dense matrix of pairwise inner products (n <= 10), entries clamped at 0.
/// The zero scale is the max entry, but never less than
/// 1e-9 * max ||U_a||_F * max ||V_b||_F.
SupportMatrix evaluate(const PsdFactorization& f, Exec exec = Exec::serial, double eps = kZeroEps);

struct AntidiagonalWitness {
    enum class Case { spanning, zero_first_column, stalled_chain };
    BitString a;
    Case which = Case::spanning;
    int p = 0;            // the stalled index for Case::stalled_chain
    double entry = 0.0;   // M[a, complement(a)]
    double scale = 0.0;   // max entry of M
};

/// Runs the constructive argument for an antidiagonal zero (requires n = d):
/// grow F_i = Im V_{e_1} + ... + Im V_{e_i}; if F_d is everything then U_1...1
/// vanishes; if V_{e_1} = 0 the column e_1 vanishes; otherwise the first stall
/// F_p = F_{p+1} gives a = complement(e_{p+1}).
/// Throws FalsificationError if the chosen entry is not numerically zero.
AntidiagonalWitness antidiagonal_witness_detail(const PsdFactorization& f, double eps = kZeroEps);
BitString antidiagonal_witness(const PsdFactorization& f, double eps = kZeroEps);

/// The six 4x4 support templates for n = d = 2. 'x' and '?' may be nonzero.
using PatternTemplate = std::array<std::array<char, 4>, 4>;
inline constexpr int kPatternCount = 6;
const PatternTemplate& pattern_template(int id);

/// The 'x' entries of a template that sit at disjoint positions.
std::vector<BitPair> pattern_disjoint_support(int id);

/// Lex-smallest template (by id, 1-based) containing support(M).
/// PreconditionError if M is not an atom pattern; NoPatternMatches if no
/// template fits.
int classify_pattern_d2(const SupportMatrix& m);

struct SharedImageCheck {
    bool applicable = false;  // images of U_01, U_10 or of V_01, V_10 coincide
    bool holds = true;        // then M[01,10] = M[10,01] = 0
};
SharedImageCheck shared_image_check(const PsdFactorization& f, double eps = kZeroEps);

std::string factorization_to_json(const PsdFactorization& f);
PsdFactorization factorization_from_json(const std::string& text);

}  // namespace blocksdp
