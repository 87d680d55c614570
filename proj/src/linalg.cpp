#include "blocksdp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "blocksdp/errors.hpp"

namespace blocksdp {

namespace {

constexpr double kConditionFloor = 1e-6;
constexpr int kMaxRedraws = 10000;

void require_dim(int d) {
    if (d < 1 || d > kMaxPsdDim) throw InvalidArgument("matrix dimension must lie in [1, 8]");
}

DenseMatrix gaussian(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    DenseMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
    return m;
}

SymMatrix gram(const DenseMatrix& m, bool outer) {
    // outer: M M^T (rows x rows); otherwise M^T M (cols x cols).
    const int n = outer ? m.rows() : m.cols();
    const int inner_len = outer ? m.cols() : m.rows();
    SymMatrix g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < inner_len; ++k) s += outer ? m(i, k) * m(j, k) : m(k, i) * m(k, j);
            g.set(i, j, s);
        }
    }
    return g;
}

bool well_conditioned(const DenseMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return true;
    const bool outer = m.rows() <= m.cols();
    const auto eig = eigen_sym(gram(m, outer));
    const double top = eig.values.front();
    return top > 0.0 && eig.values.back() >= kConditionFloor * top;
}

}  // namespace

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw InvalidArgument("matrix product: inner dimensions differ");
    DenseMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

SymMatrix::SymMatrix(int d) : d_(d), data_(static_cast<std::size_t>(d * (d + 1) / 2), 0.0) {}

SymMatrix SymMatrix::identity(int d) {
    SymMatrix m(d);
    for (int i = 0; i < d; ++i) m.set(i, i, 1.0);
    return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
    SymMatrix m(static_cast<int>(diag.size()));
    for (std::size_t i = 0; i < diag.size(); ++i) m.set(static_cast<int>(i), static_cast<int>(i), diag[i]);
    return m;
}

EigenDecomposition eigen_sym(const SymMatrix& s) {
    const int d = s.dim();
    DenseMatrix a(d, d), v(d, d);
    for (int i = 0; i < d; ++i) {
        v(i, i) = 1.0;
        for (int j = 0; j < d; ++j) a(i, j) = s(i, j);
    }

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, total = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                total += a(i, j) * a(i, j);
                if (i != j) off += a(i, j) * a(i, j);
            }
        if (off == 0.0 || off <= 1e-32 * total) break;

        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (int k = 0; k < d; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (int k = 0; k < d; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                for (int k = 0; k < d; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) > a(y, y); });

    EigenDecomposition out;
    out.values.resize(static_cast<std::size_t>(d));
    out.vectors = DenseMatrix(d, d);
    for (int k = 0; k < d; ++k) {
        const int src = order[static_cast<std::size_t>(k)];
        out.values[static_cast<std::size_t>(k)] = a(src, src);
        for (int i = 0; i < d; ++i) out.vectors(i, k) = v(i, src);
    }
    return out;
}

PsdMatrix::PsdMatrix(DenseMatrix gram_factor) : factor_(std::move(gram_factor)) {
    // More columns than rows is allowed; the rank stays <= d.
    require_dim(factor_.rows());
}

PsdMatrix PsdMatrix::identity(int d) {
    DenseMatrix b(d, d);
    for (int i = 0; i < d; ++i) b(i, i) = 1.0;
    return PsdMatrix(std::move(b));
}

SymMatrix PsdMatrix::full() const { return gram(factor_, true); }

Subspace from_eigenvectors(const EigenDecomposition& eig, int begin, int end) {
    const int d = eig.vectors.rows();
    DenseMatrix basis(d, end - begin);
    for (int k = begin; k < end; ++k)
        for (int i = 0; i < d; ++i) basis(i, k - begin) = eig.vectors(i, k);
    return Subspace(std::move(basis));
}

Subspace Subspace::full(int d) {
    DenseMatrix b(d, d);
    for (int i = 0; i < d; ++i) b(i, i) = 1.0;
    return Subspace(std::move(b));
}

Subspace Subspace::span(const DenseMatrix& spanning) {
    const int d = spanning.rows();
    if (spanning.cols() == 0) return zero(d);
    const auto eig = eigen_sym(gram(spanning, true));
    const double top = eig.values.front();
    int rank = 0;
    if (top > 0.0) {
        while (rank < d && eig.values[static_cast<std::size_t>(rank)] > kSpanTol * top) ++rank;
    }
    return from_eigenvectors(eig, 0, rank);
}

std::vector<double> Subspace::project(std::span<const double> v) const {
    const int d = ambient();
    if (static_cast<int>(v.size()) != d) throw InvalidArgument("project: vector length differs from ambient dimension");
    std::vector<double> out(static_cast<std::size_t>(d), 0.0);
    for (int k = 0; k < dim(); ++k) {
        double c = 0.0;
        for (int i = 0; i < d; ++i) c += basis_(i, k) * v[static_cast<std::size_t>(i)];
        for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(i)] += c * basis_(i, k);
    }
    return out;
}

double inner(const PsdMatrix& x, const PsdMatrix& y) {
    if (x.dim() != y.dim()) throw InvalidArgument("inner: dimension mismatch");
    const DenseMatrix& b = x.gram_factor();
    const DenseMatrix& c = y.gram_factor();
    double s = 0.0;
    for (int i = 0; i < b.cols(); ++i) {
        for (int j = 0; j < c.cols(); ++j) {
            double dot = 0.0;
            for (int k = 0; k < b.rows(); ++k) dot += b(k, i) * c(k, j);
            s += dot * dot;
        }
    }
    return std::max(s, 0.0);
}

namespace {

int numeric_rank(const EigenDecomposition& eig, double tol) {
    const double top = eig.values.front();
    if (!(top > 0.0)) return 0;
    int r = 0;
    const int d = static_cast<int>(eig.values.size());
    while (r < d && eig.values[static_cast<std::size_t>(r)] > tol * top) ++r;
    return r;
}

}  // namespace

Subspace image(const PsdMatrix& x, double tol) {
    if (x.factor_rank() == 0) return Subspace::zero(x.dim());
    const auto eig = eigen_sym(x.full());
    return from_eigenvectors(eig, 0, numeric_rank(eig, tol));
}

Subspace kernel(const PsdMatrix& x, double tol) {
    if (x.factor_rank() == 0) return Subspace::full(x.dim());
    const auto eig = eigen_sym(x.full());
    return from_eigenvectors(eig, numeric_rank(eig, tol), x.dim());
}

Subspace orthogonal_complement(const Subspace& a) {
    const int d = a.ambient();
    if (a.dim() == 0) return Subspace::full(d);
    if (a.dim() == d) return Subspace::zero(d);
    // Projector eigenvalues are 1 on the subspace and 0 on its complement.
    const auto eig = eigen_sym(gram(a.basis(), true));
    return from_eigenvectors(eig, a.dim(), d);
}

Subspace subspace_sum(std::span<const Subspace> parts, int ambient) {
    int cols = 0;
    for (const auto& p : parts) {
        if (p.ambient() != ambient) throw InvalidArgument("subspace_sum: ambient dimension mismatch");
        cols += p.dim();
    }
    DenseMatrix spanning(ambient, cols);
    int at = 0;
    for (const auto& p : parts) {
        for (int k = 0; k < p.dim(); ++k, ++at)
            for (int i = 0; i < ambient; ++i) spanning(i, at) = p.basis()(i, k);
    }
    return Subspace::span(spanning);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw InvalidArgument("subspace_sum: ambient dimension mismatch");
    const Subspace parts[] = {a, b};
    return subspace_sum(parts, a.ambient());
}

Subspace subspace_intersect(std::span<const Subspace> parts, int ambient) {
    std::vector<Subspace> complements;
    complements.reserve(parts.size());
    for (const auto& p : parts) {
        if (p.ambient() != ambient) throw InvalidArgument("subspace_intersect: ambient dimension mismatch");
        complements.push_back(orthogonal_complement(p));
    }
    return orthogonal_complement(subspace_sum(complements, ambient));
}

bool contains(const Subspace& a, const Subspace& b, double tol) {
    if (a.ambient() != b.ambient()) throw InvalidArgument("contains: ambient dimension mismatch");
    const int d = a.ambient();
    std::vector<double> v(static_cast<std::size_t>(d));
    for (int k = 0; k < b.dim(); ++k) {
        for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] = b.basis()(i, k);
        const auto p = a.project(v);
        double r2 = 0.0;
        for (int i = 0; i < d; ++i) {
            const double r = v[static_cast<std::size_t>(i)] - p[static_cast<std::size_t>(i)];
            r2 += r * r;
        }
        if (std::sqrt(r2) > tol) return false;
    }
    return true;
}

bool same_subspace(const Subspace& a, const Subspace& b, double tol) {
    return a.dim() == b.dim() && contains(a, b, tol) && contains(b, a, tol);
}

PsdMatrix random_psd(int d, int rank, std::mt19937_64& rng) {
    require_dim(d);
    if (rank < 0 || rank > d) throw InvalidArgument("random_psd: rank must lie in [0, d]");
    if (rank == 0) return PsdMatrix::zero(d);
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        DenseMatrix b = gaussian(d, rank, rng);
        if (well_conditioned(b)) return PsdMatrix(std::move(b));
    }
    throw std::runtime_error("random_psd: could not draw a well-conditioned factor");
}

PsdMatrix random_psd(int d, int rank, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_psd(d, rank, rng);
}

PsdMatrix random_psd_in(const Subspace& space, int count, std::mt19937_64& rng) {
    const int d = space.ambient();
    if (count < 0) throw InvalidArgument("random_psd_in: negative vector count");
    if (space.dim() == 0 || count == 0) return PsdMatrix::zero(d);
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        DenseMatrix coeff = gaussian(space.dim(), count, rng);
        if (well_conditioned(coeff)) return PsdMatrix(space.basis() * coeff);
    }
    throw std::runtime_error("random_psd_in: could not draw well-conditioned coefficients");
}

}  // namespace blocksdp
