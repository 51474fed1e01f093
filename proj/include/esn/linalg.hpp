#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace esn {

/// Dense row-major matrix of doubles. Construction from data validates
/// that every entry is finite; in-place element writes are unchecked.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    const std::vector<double>& entries() const { return data_; }

    /// Throws if any entry is NaN or infinite.
    void check_finite(const std::string& what) const;

    bool operator==(const DenseMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Dense vector of doubles, finite-checked on construction from data.
class DenseVector {
public:
    DenseVector() = default;
    explicit DenseVector(std::size_t len);
    explicit DenseVector(std::vector<double> entries);

    std::size_t len() const { return data_.size(); }
    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::span<const double> span() const { return data_; }

    const std::vector<double>& entries() const { return data_; }

    void check_finite(const std::string& what) const;

    bool operator==(const DenseVector& other) const = default;

private:
    std::vector<double> data_;
};

/// y = m * v. Parallel over output rows; each row is a sequential dot
/// product, so results are identical for any thread count.
DenseVector matvec(const DenseMatrix& m, const DenseVector& v);

/// c = a * b.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix transpose(const DenseMatrix& m);

/// Dᵀ·D for a T×k design matrix, returned as k×k. Computed as row dots
/// of the transposed matrix so every entry is a contiguous sequential sum.
DenseMatrix gram(const DenseMatrix& d);

/// Aᵀ·B with a.rows() == b.rows().
DenseMatrix at_b(const DenseMatrix& a, const DenseMatrix& b);

/// Solves (DᵀD + λI)·B = Dᵀ·targets by Cholesky on the normal equations.
/// Minimizes ‖design·B − targets‖² + λ‖B‖². Throws a runtime error
/// mentioning "ill-conditioned" when the normal matrix is not positive
/// definite (typically λ = 0 on a rank-deficient design).
DenseMatrix ridge_solve(const DenseMatrix& design, const DenseMatrix& targets, double lambda);

/// Largest |eigenvalue| of a square matrix, computed by Householder
/// reduction to Hessenberg form followed by Francis double-shift QR.
/// Handles complex conjugate pairs; accurate to ~1e-12 relative, well
/// inside the 1e-6 contract. Throws on non-square input or if the QR
/// iteration fails to deflate an eigenvalue within the iteration cap.
double spectral_radius(const DenseMatrix& m);

/// All eigenvalues as (real, imag) pairs; exposed for diagnostics and tests.
std::vector<std::pair<double, double>> eigenvalues(const DenseMatrix& m);

// Serial reference kernels. These mirror the parallel versions above and
// are kept for correctness tests and the kernel benchmark.
namespace ref {
DenseVector matvec(const DenseMatrix& m, const DenseVector& v);
DenseMatrix gram(const DenseMatrix& d);
DenseMatrix at_b(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
}  // namespace ref

}  // namespace esn
