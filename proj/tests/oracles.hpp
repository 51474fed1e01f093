#pragma once

// Independent test oracles. These deliberately avoid the library's own
// solver paths: plain Gaussian elimination with partial pivoting, and
// eigenvalues via the characteristic polynomial (Faddeev-LeVerrier
// coefficients + Durand-Kerner root finding) for small matrices.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "esn/linalg.hpp"

namespace oracle {

/// Solves a·x = b (square, single rhs per column of b) by Gaussian
/// elimination with partial pivoting.
inline esn::DenseMatrix gauss_solve(esn::DenseMatrix a, esn::DenseMatrix b) {
    const std::size_t n = a.rows();
    if (!a.square() || b.rows() != n) throw std::invalid_argument("gauss_solve: shape mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a(r, col)) > std::fabs(a(pivot, col))) pivot = r;
        if (std::fabs(a(pivot, col)) < 1e-14) throw std::runtime_error("gauss_solve: singular");
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
            for (std::size_t c = 0; c < b.cols(); ++c) std::swap(b(col, c), b(pivot, c));
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
            for (std::size_t c = 0; c < b.cols(); ++c) b(r, c) -= f * b(col, c);
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
            double acc = b(col, c);
            for (std::size_t k = col + 1; k < n; ++k) acc -= a(col, k) * b(k, c);
            b(col, c) = acc / a(col, col);
        }
    }
    return b;
}

/// Ridge solution through the normal equations assembled by hand and
/// solved with gauss_solve.
inline esn::DenseMatrix ridge_via_gauss(const esn::DenseMatrix& design,
                                        const esn::DenseMatrix& targets, double lambda) {
    const std::size_t k = design.cols();
    esn::DenseMatrix g(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            double acc = 0.0;
            for (std::size_t t = 0; t < design.rows(); ++t) acc += design(t, i) * design(t, j);
            g(i, j) = acc;
        }
    for (std::size_t i = 0; i < k; ++i) g(i, i) += lambda;
    esn::DenseMatrix rhs(k, targets.cols());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = 0; c < targets.cols(); ++c) {
            double acc = 0.0;
            for (std::size_t t = 0; t < design.rows(); ++t) acc += design(t, i) * targets(t, c);
            rhs(i, c) = acc;
        }
    return gauss_solve(g, rhs);
}

/// Characteristic polynomial coefficients by Faddeev-LeVerrier:
/// p(λ) = λⁿ + c[1]·λⁿ⁻¹ + … + c[n].
inline std::vector<double> char_poly(const esn::DenseMatrix& a) {
    const std::size_t n = a.rows();
    esn::DenseMatrix m(n, n);  // starts at zero
    std::vector<double> coeff(n + 1, 0.0);
    coeff[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        // m ← a·(m + c_{k-1}·I)
        esn::DenseMatrix shifted = m;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) += coeff[k - 1];
        m = esn::ref::matmul(a, shifted);
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += m(i, i);
        coeff[k] = -trace / static_cast<double>(k);
    }
    return coeff;
}

/// All polynomial roots by Durand-Kerner iteration.
inline std::vector<std::complex<double>> poly_roots(const std::vector<double>& coeff) {
    const std::size_t deg = coeff.size() - 1;
    if (deg == 0) return {};
    auto eval = [&](std::complex<double> x) {
        std::complex<double> acc = coeff[0];
        for (std::size_t i = 1; i < coeff.size(); ++i) acc = acc * x + coeff[i];
        return acc;
    };
    std::vector<std::complex<double>> roots(deg);
    const std::complex<double> seed(0.4, 0.9);  // standard non-real starting point
    std::complex<double> base(1.0, 0.0);
    for (std::size_t i = 0; i < deg; ++i, base *= seed) roots[i] = base;
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (std::size_t i = 0; i < deg; ++i) {
            std::complex<double> denom(1.0, 0.0);
            for (std::size_t j = 0; j < deg; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            const std::complex<double> delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-13) break;
    }
    return roots;
}

/// Spectral radius via characteristic polynomial roots; intended for n ≤ 6.
inline double spectral_radius_brute(const esn::DenseMatrix& a) {
    double rho = 0.0;
    for (const auto& r : poly_roots(char_poly(a))) rho = std::max(rho, std::abs(r));
    return rho;
}

/// Forward-Euler integration of the Mackey-Glass equation at a fine step,
/// same constant history and sampling scheme as the library generator.
inline std::vector<double> mackey_glass_euler(double alpha, double dt, std::size_t n_samples,
                                              double sample_interval, double initial_value,
                                              double transient_time) {
    const std::size_t history = static_cast<std::size_t>(std::ceil(alpha / dt - 1e-9));
    const std::size_t transient_steps =
        static_cast<std::size_t>(std::ceil(transient_time / dt - 1e-9));
    const std::size_t per_sample =
        static_cast<std::size_t>(std::llround(sample_interval / dt));
    const std::size_t total = transient_steps + n_samples * per_sample;

    std::vector<double> traj(history + 1, initial_value);
    traj.reserve(history + 1 + total);
    const double delay_steps = alpha / dt;
    for (std::size_t s = 0; s < total; ++s) {
        const double pos = static_cast<double>(history + s) - delay_steps;
        const std::size_t lo = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(lo);
        const double delayed =
            frac == 0.0 ? traj[lo] : traj[lo] + frac * (traj[lo + 1] - traj[lo]);
        const double o = traj.back();
        traj.push_back(o + dt * (0.2 * delayed / (1.0 + std::pow(delayed, 10.0)) - 0.1 * o));
    }
    std::vector<double> out(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i)
        out[i] = traj[history + transient_steps + i * per_sample];
    return out;
}

}  // namespace oracle
