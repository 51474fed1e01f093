#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "esn/linalg.hpp"
#include "esn/rng.hpp"
#include "oracles.hpp"

using esn::DenseMatrix;
using esn::DenseVector;

namespace {

DenseMatrix random_matrix(std::size_t rows, std::size_t cols, esn::Rng& rng, double scale = 1.0) {
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.next_uniform(-scale, scale);
    return m;
}

DenseVector random_vector(std::size_t len, esn::Rng& rng) {
    DenseVector v(len);
    for (std::size_t i = 0; i < len; ++i) v[i] = rng.next_uniform(-1.0, 1.0);
    return v;
}

}  // namespace

TEST_CASE("matvec basics") {
    CHECK(esn::matvec(DenseMatrix::identity(3), DenseVector({1, 2, 3})).entries() ==
          std::vector<double>{1, 2, 3});
    CHECK(esn::matvec(DenseMatrix(2, 2), DenseVector({5, 7})).entries() ==
          std::vector<double>{0, 0});
    CHECK(esn::matvec(DenseMatrix(2, 2, {1, 2, 3, 4}), DenseVector({1, 1})).entries() ==
          std::vector<double>{3, 7});
    CHECK_THROWS_AS(esn::matvec(DenseMatrix(2, 3), DenseVector({1, 1})), std::invalid_argument);
}

TEST_CASE("matvec is linear") {
    esn::Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const DenseMatrix m = random_matrix(5, 4, rng);
        const DenseVector u = random_vector(4, rng);
        const DenseVector v = random_vector(4, rng);
        const double a = rng.next_uniform(-2, 2), b = rng.next_uniform(-2, 2);
        DenseVector combo(4);
        for (std::size_t i = 0; i < 4; ++i) combo[i] = a * u[i] + b * v[i];
        const DenseVector lhs = esn::matvec(m, combo);
        const DenseVector mu = esn::matvec(m, u), mv = esn::matvec(m, v);
        for (std::size_t i = 0; i < 5; ++i)
            CHECK(lhs[i] == doctest::Approx(a * mu[i] + b * mv[i]).epsilon(1e-12));
    }
}

TEST_CASE("finite-entry construction invariant") {
    CHECK_THROWS_AS(DenseMatrix(1, 2, {1.0, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(DenseVector({1.0, INFINITY}), std::invalid_argument);
    CHECK_THROWS_AS(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("omp kernels match serial reference bitwise") {
    esn::Rng rng(7);
    const DenseMatrix m = random_matrix(37, 23, rng);
    const DenseVector v = random_vector(23, rng);
    CHECK(esn::matvec(m, v).entries() == esn::ref::matvec(m, v).entries());

    const DenseMatrix d = random_matrix(61, 17, rng);
    CHECK(esn::gram(d).entries() == esn::ref::gram(d).entries());

    const DenseMatrix b = random_matrix(61, 5, rng);
    CHECK(esn::at_b(d, b).entries() == esn::ref::at_b(d, b).entries());
}

TEST_CASE("ridge_solve identity and zero-target cases") {
    const DenseMatrix eye = DenseMatrix::identity(2);
    const DenseMatrix targets(2, 1, {3, 4});
    const DenseMatrix b = esn::ridge_solve(eye, targets, 0.0);
    CHECK(b(0, 0) == doctest::Approx(3.0));
    CHECK(b(1, 0) == doctest::Approx(4.0));

    esn::Rng rng(3);
    const DenseMatrix design = random_matrix(10, 4, rng);
    const DenseMatrix zeros(10, 2);
    const DenseMatrix bz = esn::ridge_solve(design, zeros, 0.5);
    for (double v : bz.entries()) CHECK(v == 0.0);
}

TEST_CASE("ridge_solve matches Gaussian-elimination oracle") {
    esn::Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const DenseMatrix design = random_matrix(20, 5, rng);
        const DenseMatrix targets = random_matrix(20, 2, rng);
        const double lambda = trial % 2 == 0 ? 0.0 : 0.1;
        const DenseMatrix got = esn::ridge_solve(design, targets, lambda);
        const DenseMatrix want = oracle::ridge_via_gauss(design, targets, lambda);
        for (std::size_t i = 0; i < got.rows(); ++i)
            for (std::size_t j = 0; j < got.cols(); ++j)
                CHECK(got(i, j) == doctest::Approx(want(i, j)).epsilon(1e-8));
    }
}

TEST_CASE("ridge_solve exact on well-conditioned square system") {
    esn::Rng rng(5);
    DenseMatrix a = random_matrix(6, 6, rng, 0.3);
    for (std::size_t i = 0; i < 6; ++i) a(i, i) += 3.0;  // diagonally dominant
    const DenseMatrix x_true = random_matrix(6, 1, rng);
    const DenseMatrix b = esn::ref::matmul(a, x_true);
    const DenseMatrix x = esn::ridge_solve(a, b, 0.0);
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(x(i, 0) == doctest::Approx(x_true(i, 0)).epsilon(1e-8));
}

TEST_CASE("ridge_solve residual of the regularized normal equations") {
    esn::Rng rng(13);
    const DenseMatrix design = random_matrix(30, 6, rng);
    const DenseMatrix targets = random_matrix(30, 1, rng);
    const double lambda = 1e-3;
    const DenseMatrix b = esn::ridge_solve(design, targets, lambda);

    DenseMatrix lhs = esn::ref::matmul(esn::ref::gram(design), b);
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < lhs.cols(); ++j) lhs(i, j) += lambda * b(i, j);
    const DenseMatrix rhs = esn::ref::at_b(design, targets);
    double rhs_norm = 0.0, resid = 0.0;
    for (std::size_t i = 0; i < rhs.rows(); ++i) {
        rhs_norm += rhs(i, 0) * rhs(i, 0);
        const double d = lhs(i, 0) - rhs(i, 0);
        resid += d * d;
    }
    CHECK(std::sqrt(resid) < 1e-8 * (1.0 + std::sqrt(rhs_norm)));
}

TEST_CASE("ridge_solve reports ill-conditioned singular systems") {
    // Two identical columns: DᵀD singular at lambda = 0.
    DenseMatrix design(4, 2);
    for (std::size_t i = 0; i < 4; ++i) design(i, 0) = design(i, 1) = static_cast<double>(i + 1);
    const DenseMatrix targets(4, 1, {1, 2, 3, 4});
    CHECK_THROWS_WITH_AS(esn::ridge_solve(design, targets, 0.0),
                         doctest::Contains("ill-conditioned"), std::runtime_error);
    CHECK_NOTHROW(esn::ridge_solve(design, targets, 1e-6));
}

TEST_CASE("spectral_radius closed-form cases") {
    CHECK(esn::spectral_radius(DenseMatrix::identity(4)) == doctest::Approx(1.0));
    CHECK(esn::spectral_radius(DenseMatrix(2, 2, {2.0, 0, 0, -0.5})) == doctest::Approx(2.0));
    // Rotation block: complex pair ±i.
    CHECK(esn::spectral_radius(DenseMatrix(2, 2, {0, 1, -1, 0})) == doctest::Approx(1.0));
    CHECK(esn::spectral_radius(DenseMatrix(0, 0)) == 0.0);
    CHECK(esn::spectral_radius(DenseMatrix(3, 3)) == 0.0);
    CHECK_THROWS_AS(esn::spectral_radius(DenseMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("spectral_radius agrees with characteristic-polynomial oracle") {
    esn::Rng rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 4);  // 2..5
        const DenseMatrix m = random_matrix(n, n, rng);
        const double got = esn::spectral_radius(m);
        const double want = oracle::spectral_radius_brute(m);
        CHECK(got == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("spectral_radius scales linearly") {
    esn::Rng rng(31);
    const DenseMatrix m = random_matrix(8, 8, rng);
    const double rho = esn::spectral_radius(m);
    for (double c : {0.5, -2.0, 13.0}) {
        DenseMatrix scaled(8, 8);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j) scaled(i, j) = c * m(i, j);
        CHECK(esn::spectral_radius(scaled) == doctest::Approx(std::fabs(c) * rho).epsilon(1e-6));
    }
}

TEST_CASE("spectral_radius handles larger reservoir-like matrices") {
    esn::Rng rng(99);
    const std::size_t n = 150;
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = rng.next_unit() < 0.1 ? rng.next_uniform(-0.5, 0.5) : 0.0;
    const double rho = esn::spectral_radius(m);
    CHECK(rho > 0.0);
    CHECK(std::isfinite(rho));
    // Power iteration lower bound: |v_{k+1}| / |v_k| approaches |λ_max|
    // from below for generic start vectors; after many steps it must sit
    // at or below the reported radius (tolerance for non-normality).
    DenseVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng.next_uniform(-1, 1);
    double ratio = 0.0;
    for (int it = 0; it < 600; ++it) {
        const DenseVector nv = esn::ref::matvec(m, v);
        double norm = 0.0, prev = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            norm += nv[i] * nv[i];
            prev += v[i] * v[i];
        }
        ratio = std::sqrt(norm / prev);
        const double inv = 1.0 / std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) v[i] = nv[i] * inv;
    }
    CHECK(ratio == doctest::Approx(rho).epsilon(1e-3));
}
