#include "esn/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

// Dense nonsymmetric eigenvalue path: Householder reduction to upper
// Hessenberg form, then Francis double-shift QR with deflation (the
// classic EISPACK ORTHES/HQR pair, eigenvalues only). Sized for
// reservoirs up to ~1000 nodes.

namespace esn {

namespace {

double sign_with(double magnitude, double sign_of) {
    return sign_of >= 0.0 ? std::fabs(magnitude) : -std::fabs(magnitude);
}

// EISPACK-style balancing. The exchange phase repeatedly pushes rows
// (resp. columns) whose off-diagonal entries are all zero to the bottom
// (resp. top), isolating their diagonal entries as eigenvalues; sparse
// reservoir graphs routinely contain such rows, and any nilpotent
// permutation-triangular part is fully resolved here, which the QR
// iteration alone handles poorly. The scaling phase then equilibrates
// row/column norms of the remaining window by powers of two (an exact
// similarity in binary floating point). Returns the active window
// [low, high] (inclusive).
std::pair<long, long> balance(DenseMatrix& a) {
    const long n = static_cast<long>(a.rows());
    long low = 0;
    long high = n - 1;

    auto swap_rows_cols = [&](long i, long j) {
        if (i == j) return;
        for (long c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
        for (long r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
    };

    bool changed = true;
    while (changed && high >= low) {
        changed = false;
        for (long j = high; j >= low; --j) {
            bool all_zero = true;
            for (long i = low; i <= high; ++i)
                if (i != j && a(j, i) != 0.0) {
                    all_zero = false;
                    break;
                }
            if (all_zero) {
                swap_rows_cols(j, high);
                --high;
                changed = true;
                break;
            }
        }
    }
    changed = true;
    while (changed && high >= low) {
        changed = false;
        for (long j = low; j <= high; ++j) {
            bool all_zero = true;
            for (long i = low; i <= high; ++i)
                if (i != j && a(i, j) != 0.0) {
                    all_zero = false;
                    break;
                }
            if (all_zero) {
                swap_rows_cols(j, low);
                ++low;
                changed = true;
                break;
            }
        }
    }

    constexpr double radix = 2.0;
    constexpr double radix_sq = radix * radix;
    bool noconv = true;
    while (noconv && high > low) {
        noconv = false;
        for (long i = low; i <= high; ++i) {
            double col = 0.0, row = 0.0;
            for (long j = low; j <= high; ++j) {
                if (j == i) continue;
                col += std::fabs(a(j, i));
                row += std::fabs(a(i, j));
            }
            if (col == 0.0 || row == 0.0) continue;
            double f = 1.0;
            const double s = col + row;
            double g = row / radix;
            while (col < g) {
                f *= radix;
                col *= radix_sq;
            }
            g = row * radix;
            while (col >= g) {
                f /= radix;
                col /= radix_sq;
            }
            if ((col + row) / f < 0.95 * s) {
                noconv = true;
                const double inv = 1.0 / f;
                for (long j = low; j <= high; ++j) a(i, j) *= inv;
                for (long j = low; j <= high; ++j) a(j, i) *= f;
            }
        }
    }
    return {low, high};
}

void hessenberg_reduce(DenseMatrix& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    std::vector<double> ort(n, 0.0);
    for (std::size_t m = 1; m + 1 < n; ++m) {
        double scale = 0.0;
        for (std::size_t i = m; i < n; ++i) scale += std::fabs(a(i, m - 1));
        if (scale == 0.0) continue;

        double h = 0.0;
        for (std::size_t i = n; i-- > m;) {
            ort[i] = a(i, m - 1) / scale;
            h += ort[i] * ort[i];
        }
        double g = -sign_with(std::sqrt(h), ort[m]);
        h -= ort[m] * g;
        ort[m] -= g;

        // Apply the reflector from the left, then the right.
        for (std::size_t j = m; j < n; ++j) {
            double f = 0.0;
            for (std::size_t i = n; i-- > m;) f += ort[i] * a(i, j);
            f /= h;
            for (std::size_t i = m; i < n; ++i) a(i, j) -= f * ort[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            double f = 0.0;
            for (std::size_t j = n; j-- > m;) f += ort[j] * a(i, j);
            f /= h;
            for (std::size_t j = m; j < n; ++j) a(i, j) -= f * ort[j];
        }
        a(m, m - 1) = scale * g;
        for (std::size_t i = m + 1; i < n; ++i) a(i, m - 1) = 0.0;
    }
}

// Francis double-shift QR on an upper Hessenberg matrix; fills wr/wi with
// the real/imaginary eigenvalue parts. Returns false when an eigenvalue
// fails to deflate within the iteration cap.
bool hessenberg_qr(DenseMatrix& a, std::vector<double>& wr, std::vector<double>& wi) {
    const double eps = std::numeric_limits<double>::epsilon();
    const long n = static_cast<long>(a.rows());
    wr.assign(a.rows(), 0.0);
    wi.assign(a.rows(), 0.0);

    double anorm = 0.0;
    for (long i = 0; i < n; ++i)
        for (long j = std::max(i - 1, 0L); j < n; ++j) anorm += std::fabs(a(i, j));
    if (anorm == 0.0) return true;  // zero matrix, all eigenvalues zero

    long nn = n - 1;
    double t = 0.0;
    double p = 0.0, q = 0.0, r = 0.0, x, y, z, w, s;
    while (nn >= 0) {
        long its = 0;
        long l;
        do {
            for (l = nn; l >= 1; --l) {
                s = std::fabs(a(l - 1, l - 1)) + std::fabs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::fabs(a(l, l - 1)) <= eps * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            x = a(nn, nn);
            if (l == nn) {  // one real eigenvalue deflated
                wr[nn] = x + t;
                wi[nn] = 0.0;
                --nn;
            } else {
                y = a(nn - 1, nn - 1);
                w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {  // 2x2 block: real pair or conjugate pair
                    p = 0.5 * (y - x);
                    q = p * p + w;
                    z = std::sqrt(std::fabs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign_with(z, p);
                        wr[nn - 1] = wr[nn] = x + z;
                        if (z != 0.0) wr[nn] = x - w / z;
                        wi[nn - 1] = wi[nn] = 0.0;
                    } else {
                        wr[nn - 1] = wr[nn] = x + p;
                        wi[nn - 1] = z;
                        wi[nn] = -z;
                    }
                    nn -= 2;
                } else {  // QR sweep
                    if (its == 120) return false;
                    if (its > 0 && its % 10 == 0) {
                        // exceptional shift to break cycling
                        t += x;
                        for (long i = 0; i <= nn; ++i) a(i, i) -= x;
                        s = std::fabs(a(nn, nn - 1)) + std::fabs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    long m;
                    for (m = nn - 2; m >= l; --m) {
                        z = a(m, m);
                        r = x - z;
                        s = y - z;
                        p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - r - s;
                        r = a(m + 2, m + 1);
                        s = std::fabs(p) + std::fabs(q) + std::fabs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const double u = std::fabs(a(m, m - 1)) * (std::fabs(q) + std::fabs(r));
                        const double v =
                            std::fabs(p) *
                            (std::fabs(a(m - 1, m - 1)) + std::fabs(z) + std::fabs(a(m + 1, m + 1)));
                        if (u <= eps * v) break;
                    }
                    for (long i = m; i < nn - 1; ++i) {
                        a(i + 2, i) = 0.0;
                        if (i != m) a(i + 2, i - 1) = 0.0;
                    }
                    for (long k = m; k < nn; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = 0.0;
                            if (k + 1 != nn) r = a(k + 2, k - 1);
                            x = std::fabs(p) + std::fabs(q) + std::fabs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        s = sign_with(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) a(k, k - 1) = -a(k, k - 1);
                        } else {
                            a(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        for (long j = k; j <= nn; ++j) {  // row modification
                            p = a(k, j) + q * a(k + 1, j);
                            if (k + 1 != nn) {
                                p += r * a(k + 2, j);
                                a(k + 2, j) -= p * z;
                            }
                            a(k + 1, j) -= p * y;
                            a(k, j) -= p * x;
                        }
                        const long mmin = nn < k + 3 ? nn : k + 3;
                        for (long i = l; i <= mmin; ++i) {  // column modification
                            p = x * a(i, k) + y * a(i, k + 1);
                            if (k + 1 != nn) {
                                p += z * a(i, k + 2);
                                a(i, k + 2) -= p * r;
                            }
                            a(i, k + 1) -= p * q;
                            a(i, k) -= p;
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }
    return true;
}

}  // namespace

std::vector<std::pair<double, double>> eigenvalues(const DenseMatrix& m) {
    if (!m.square()) throw std::invalid_argument("eigenvalues: matrix must be square");
    DenseMatrix a = m;
    const auto [low, high] = balance(a);

    std::vector<std::pair<double, double>> out;
    out.reserve(m.rows());
    for (long i = 0; i < low; ++i) out.emplace_back(a(i, i), 0.0);
    for (long i = high + 1; i < static_cast<long>(m.rows()); ++i) out.emplace_back(a(i, i), 0.0);
    if (high < low) return out;

    const std::size_t k = static_cast<std::size_t>(high - low + 1);
    DenseMatrix core(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) core(i, j) = a(low + static_cast<long>(i),
                                                           low + static_cast<long>(j));
    hessenberg_reduce(core);
    std::vector<double> wr, wi;
    if (!hessenberg_qr(core, wr, wi)) {
        double best = 0.0;
        for (std::size_t i = 0; i < wr.size(); ++i) best = std::max(best, std::hypot(wr[i], wi[i]));
        for (const auto& [re, im] : out) best = std::max(best, std::hypot(re, im));
        throw std::runtime_error(
            "eigenvalues: QR iteration did not converge; best spectral radius estimate " +
            std::to_string(best));
    }
    for (std::size_t i = 0; i < wr.size(); ++i) out.emplace_back(wr[i], wi[i]);
    return out;
}

double spectral_radius(const DenseMatrix& m) {
    if (!m.square()) throw std::invalid_argument("spectral_radius: matrix must be square");
    if (m.rows() == 0) return 0.0;
    double rho = 0.0;
    for (const auto& [re, im] : eigenvalues(m)) rho = std::max(rho, std::hypot(re, im));
    return rho;
}

}  // namespace esn
