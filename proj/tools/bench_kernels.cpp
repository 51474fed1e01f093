// Times the OpenMP kernels against their serial reference counterparts
// and reports the max deviation, which must sit at rounding noise since
// both paths sum in the same order.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include <omp.h>

#include "esn/linalg.hpp"
#include "esn/reservoir.hpp"
#include "esn/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn, int repeats) {
    fn();  // warm-up
    const auto t0 = Clock::now();
    for (int i = 0; i < repeats; ++i) fn();
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

esn::DenseMatrix random_matrix(std::size_t rows, std::size_t cols, esn::Rng& rng) {
    esn::DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.next_uniform(-1.0, 1.0);
    return m;
}

double max_abs_diff(const esn::DenseMatrix& a, const esn::DenseMatrix& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            d = std::max(d, std::fabs(a(i, j) - b(i, j)));
    return d;
}

}  // namespace

int main() {
    esn::Rng rng(7);
    std::printf("threads: %d\n\n", omp_get_max_threads());
    std::printf("%-22s %12s %12s %9s %12s\n", "kernel", "serial ms", "omp ms", "speedup",
                "max |diff|");

    for (std::size_t n : {200ul, 500ul, 1000ul}) {
        const esn::DenseMatrix m = random_matrix(n, n, rng);
        esn::DenseVector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = rng.next_uniform(-1.0, 1.0);

        esn::DenseVector y_ref = esn::ref::matvec(m, v);
        esn::DenseVector y_omp = esn::matvec(m, v);
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::fabs(y_ref[i] - y_omp[i]));
        const double t_ref = time_ms([&] { y_ref = esn::ref::matvec(m, v); }, 50);
        const double t_omp = time_ms([&] { y_omp = esn::matvec(m, v); }, 50);
        std::printf("%-22s %12.4f %12.4f %8.2fx %12.3e\n",
                    ("matvec n=" + std::to_string(n)).c_str(), t_ref, t_omp, t_ref / t_omp, diff);
    }

    for (auto [t, k] : {std::pair<std::size_t, std::size_t>{4000, 102},
                        std::pair<std::size_t, std::size_t>{8000, 202}}) {
        const esn::DenseMatrix d = random_matrix(t, k, rng);
        const esn::DenseMatrix g_ref = esn::ref::gram(d);
        const esn::DenseMatrix g_omp = esn::gram(d);
        const double diff = max_abs_diff(g_ref, g_omp);
        const double t_ref = time_ms([&] { (void)esn::ref::gram(d); }, 5);
        const double t_omp = time_ms([&] { (void)esn::gram(d); }, 5);
        std::printf("%-22s %12.4f %12.4f %8.2fx %12.3e\n",
                    ("gram " + std::to_string(t) + "x" + std::to_string(k)).c_str(), t_ref, t_omp,
                    t_ref / t_omp, diff);
    }

    // The anchor batch of the horizon evaluation: many independent
    // free-run state updates sharing one reservoir.
    {
        esn::HyperParams hp;
        hp.n_reservoir = 200;
        hp.seed = 11;
        const esn::ReservoirWeights rw = esn::generate_reservoir(hp);
        constexpr std::size_t kAnchors = 128;
        constexpr std::size_t kSteps = 84;
        std::vector<esn::EsnState> starts(kAnchors, esn::EsnState{esn::DenseVector(200)});
        for (auto& s : starts)
            for (std::size_t i = 0; i < 200; ++i) s.x[i] = rng.next_uniform(-0.9, 0.9);
        const esn::DenseVector u(std::vector<double>{0.3});

        auto run_batch = [&](bool parallel) {
            double checksum = 0.0;
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : checksum) if (parallel)
            for (long long a = 0; a < static_cast<long long>(kAnchors); ++a) {
                esn::EsnState s = starts[static_cast<std::size_t>(a)];
                for (std::size_t k = 0; k < kSteps; ++k) s = esn::update_state(rw, s, u);
                checksum += s.x[0];
            }
            return checksum;
        };
        const double c_ref = run_batch(false);
        const double c_omp = run_batch(true);
        const double t_ref = time_ms([&] { (void)run_batch(false); }, 3);
        const double t_omp = time_ms([&] { (void)run_batch(true); }, 3);
        std::printf("%-22s %12.4f %12.4f %8.2fx %12.3e\n", "free-run batch 128x84", t_ref, t_omp,
                    t_ref / t_omp, std::fabs(c_ref - c_omp));
    }
    return 0;
}
