#include "esn/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace esn {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    require(data_.size() == rows_ * cols_, "DenseMatrix: entries length must equal rows*cols");
    check_finite("DenseMatrix");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

void DenseMatrix::check_finite(const std::string& what) const {
    for (double v : data_) {
        if (!std::isfinite(v)) throw std::invalid_argument(what + ": non-finite entry");
    }
}

DenseVector::DenseVector(std::size_t len) : data_(len, 0.0) {}

DenseVector::DenseVector(std::vector<double> entries) : data_(std::move(entries)) {
    check_finite("DenseVector");
}

void DenseVector::check_finite(const std::string& what) const {
    for (double v : data_) {
        if (!std::isfinite(v)) throw std::invalid_argument(what + ": non-finite entry");
    }
}

DenseVector matvec(const DenseMatrix& m, const DenseVector& v) {
    require(m.cols() == v.len(), "matvec: dimension mismatch");
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    DenseVector out(rows);
    const double* md = m.data();
    const double* vd = v.data();
    double* od = out.data();
#pragma omp parallel for schedule(static) if (rows * cols > 1u << 16)
    for (long long i = 0; i < static_cast<long long>(rows); ++i) {
        const double* row = md + static_cast<std::size_t>(i) * cols;
        double acc = 0.0;
        for (std::size_t j = 0; j < cols; ++j) acc += row[j] * vd[j];
        od[i] = acc;
    }
    return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.cols() == b.rows(), "matmul: dimension mismatch");
    const std::size_t n = a.rows(), k = a.cols(), p = b.cols();
    DenseMatrix c(n, p);
#pragma omp parallel for schedule(static) if (n * k * p > 1u << 18)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        double* crow = c.data() + static_cast<std::size_t>(i) * p;
        for (std::size_t t = 0; t < k; ++t) {
            const double aval = a(static_cast<std::size_t>(i), t);
            const double* brow = b.data() + t * p;
            for (std::size_t j = 0; j < p; ++j) crow[j] += aval * brow[j];
        }
    }
    return c;
}

DenseMatrix transpose(const DenseMatrix& m) {
    DenseMatrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

DenseMatrix gram(const DenseMatrix& d) {
    const std::size_t k = d.cols();
    const std::size_t t = d.rows();
    // Work on Dᵀ so each (i,j) entry is a contiguous dot product of length T.
    DenseMatrix dt = transpose(d);
    DenseMatrix g(k, k);
#pragma omp parallel for schedule(dynamic, 4) if (k * k * t > 1u << 18)
    for (long long i = 0; i < static_cast<long long>(k); ++i) {
        const double* ri = dt.data() + static_cast<std::size_t>(i) * t;
        for (std::size_t j = static_cast<std::size_t>(i); j < k; ++j) {
            const double* rj = dt.data() + j * t;
            double acc = 0.0;
            for (std::size_t s = 0; s < t; ++s) acc += ri[s] * rj[s];
            g(static_cast<std::size_t>(i), j) = acc;
            g(j, static_cast<std::size_t>(i)) = acc;
        }
    }
    return g;
}

DenseMatrix at_b(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.rows() == b.rows(), "at_b: dimension mismatch");
    const std::size_t k = a.cols(), t = a.rows(), p = b.cols();
    DenseMatrix atm = transpose(a);
    DenseMatrix btm = transpose(b);
    DenseMatrix out(k, p);
#pragma omp parallel for schedule(static) if (k * p * t > 1u << 18)
    for (long long i = 0; i < static_cast<long long>(k); ++i) {
        const double* ra = atm.data() + static_cast<std::size_t>(i) * t;
        for (std::size_t j = 0; j < p; ++j) {
            const double* rb = btm.data() + j * t;
            double acc = 0.0;
            for (std::size_t s = 0; s < t; ++s) acc += ra[s] * rb[s];
            out(static_cast<std::size_t>(i), j) = acc;
        }
    }
    return out;
}

namespace {

// In-place Cholesky factorization G = L·Lᵀ; returns false on a
// non-positive pivot.
bool cholesky(DenseMatrix& g) {
    const std::size_t n = g.rows();
    for (std::size_t j = 0; j < n; ++j) {
        double diag = g(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= g(j, k) * g(j, k);
        if (!(diag > 0.0)) return false;
        const double ljj = std::sqrt(diag);
        g(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double acc = g(i, j);
            for (std::size_t k = 0; k < j; ++k) acc -= g(i, k) * g(j, k);
            g(i, j) = acc / ljj;
        }
    }
    return true;
}

// Solves L·Lᵀ·x = rhs column-wise, overwriting rhs with the solution.
void cholesky_solve(const DenseMatrix& l, DenseMatrix& rhs) {
    const std::size_t n = l.rows();
    const std::size_t p = rhs.cols();
    for (std::size_t c = 0; c < p; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = rhs(i, c);
            for (std::size_t k = 0; k < i; ++k) acc -= l(i, k) * rhs(k, c);
            rhs(i, c) = acc / l(i, i);
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double acc = rhs(ii, c);
            for (std::size_t k = ii + 1; k < n; ++k) acc -= l(k, ii) * rhs(k, c);
            rhs(ii, c) = acc / l(ii, ii);
        }
    }
}

}  // namespace

DenseMatrix ridge_solve(const DenseMatrix& design, const DenseMatrix& targets, double lambda) {
    require(design.rows() == targets.rows(), "ridge_solve: design/target row mismatch");
    require(design.rows() >= 1, "ridge_solve: empty design");
    require(lambda >= 0.0, "ridge_solve: negative lambda");

    DenseMatrix g = gram(design);
    for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) += lambda;

    DenseMatrix rhs = at_b(design, targets);
    if (!cholesky(g)) {
        throw std::runtime_error(
            "ridge_solve: normal matrix is ill-conditioned (singular at lambda=" +
            std::to_string(lambda) + "); retry with lambda > 0");
    }
    cholesky_solve(g, rhs);
    return rhs;
}

namespace ref {

DenseVector matvec(const DenseMatrix& m, const DenseVector& v) {
    if (m.cols() != v.len()) throw std::invalid_argument("ref::matvec: dimension mismatch");
    DenseVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

DenseMatrix gram(const DenseMatrix& d) {
    const std::size_t k = d.cols(), t = d.rows();
    DenseMatrix dt = transpose(d);
    DenseMatrix g(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            double acc = 0.0;
            for (std::size_t s = 0; s < t; ++s) acc += dt(i, s) * dt(j, s);
            g(i, j) = acc;
            g(j, i) = acc;
        }
    }
    return g;
}

DenseMatrix at_b(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("ref::at_b: dimension mismatch");
    const std::size_t k = a.cols(), t = a.rows(), p = b.cols();
    DenseMatrix atm = transpose(a);
    DenseMatrix btm = transpose(b);
    DenseMatrix out(k, p);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            double acc = 0.0;
            for (std::size_t s = 0; s < t; ++s) acc += atm(i, s) * btm(j, s);
            out(i, j) = acc;
        }
    return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("ref::matmul: dimension mismatch");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t t = 0; t < a.cols(); ++t) {
            const double aval = a(i, t);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aval * b(t, j);
        }
    return c;
}

}  // namespace ref

}  // namespace esn
