#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace blocksdp {

inline constexpr int kMaxPsdDim = 8;

/// Relative eigenvalue threshold separating image from kernel of a PSD matrix.
inline constexpr double kRankTol = 1e-9;
/// Relative eigenvalue threshold used when orthonormalizing a spanning set.
inline constexpr double kSpanTol = 1e-12;
/// Residual norm below which a unit vector counts as lying in a subspace.
inline constexpr double kContainTol = 1e-6;

/// Small dense row-major matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), 0.0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

    DenseMatrix transpose() const;
    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// Symmetric d x d matrix; only the upper triangle is stored.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int d);
    static SymMatrix identity(int d);
    static SymMatrix diagonal(std::span<const double> diag);

    int dim() const { return d_; }
    double operator()(int i, int j) const { return data_[index(i, j)]; }
    void set(int i, int j, double v) { data_[index(i, j)] = v; }

private:
    std::size_t index(int i, int j) const {
        if (i > j) std::swap(i, j);
        return static_cast<std::size_t>(i * d_ - i * (i - 1) / 2 + (j - i));
    }
    int d_ = 0;
    std::vector<double> data_;
};

struct EigenDecomposition {
    std::vector<double> values;  // descending
    DenseMatrix vectors;         // column k pairs with values[k]
};

/// Cyclic Jacobi rotations; intended for d <= 8.
EigenDecomposition eigen_sym(const SymMatrix& a);

/// PSD matrix X = B B^T held by its d x r Gram factor B.
class PsdMatrix {
public:
    PsdMatrix() = default;
    explicit PsdMatrix(DenseMatrix gram_factor);
    static PsdMatrix zero(int d) { return PsdMatrix(DenseMatrix(d, 0)); }
    static PsdMatrix identity(int d);

    int dim() const { return factor_.rows(); }
    int factor_rank() const { return factor_.cols(); }
    const DenseMatrix& gram_factor() const { return factor_; }
    SymMatrix full() const;

    friend bool operator==(const PsdMatrix&, const PsdMatrix&) = default;

private:
    DenseMatrix factor_;
};

/// Subspace of R^d held by an orthonormal basis (d x k, k may be 0).
class Subspace {
public:
    Subspace() = default;
    /// Orthonormalizes the columns of `spanning` (rank decided at kSpanTol).
    static Subspace span(const DenseMatrix& spanning);
    static Subspace zero(int d) { return Subspace(DenseMatrix(d, 0)); }
    static Subspace full(int d);

    int ambient() const { return basis_.rows(); }
    int dim() const { return basis_.cols(); }
    const DenseMatrix& basis() const { return basis_; }

    /// Orthogonal projection of v onto the subspace.
    std::vector<double> project(std::span<const double> v) const;

private:
    explicit Subspace(DenseMatrix basis) : basis_(std::move(basis)) {}
    friend Subspace from_eigenvectors(const EigenDecomposition&, int, int);
    DenseMatrix basis_;
};

/// trace(X Y) = ||B^T C||_F^2; nonnegative by construction.
double inner(const PsdMatrix& x, const PsdMatrix& y);

Subspace image(const PsdMatrix& x, double tol = kRankTol);
Subspace kernel(const PsdMatrix& x, double tol = kRankTol);

Subspace orthogonal_complement(const Subspace& a);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_sum(std::span<const Subspace> parts, int ambient);
/// Intersection as the complement of the sum of complements; an empty list
/// yields R^ambient.
Subspace subspace_intersect(std::span<const Subspace> parts, int ambient);
/// True iff every basis vector of b lies in a (residual <= tol).
bool contains(const Subspace& a, const Subspace& b, double tol = kContainTol);
bool same_subspace(const Subspace& a, const Subspace& b, double tol = kContainTol);

/// Gram factor with `rank` independent standard-normal columns. Draws whose
/// nonzero spectrum spreads more than 1e6 are redrawn so that the rank is
/// unambiguous at kRankTol.
PsdMatrix random_psd(int d, int rank, std::mt19937_64& rng);
PsdMatrix random_psd(int d, int rank, std::uint64_t seed);

/// sum_j w_j w_j^T with `count` Gaussian vectors w_j drawn inside `space`.
PsdMatrix random_psd_in(const Subspace& space, int count, std::mt19937_64& rng);

}  // namespace blocksdp
