#include "esn/reservoir.hpp"

#include <cmath>
#include <stdexcept>

#include "esn/rng.hpp"

namespace esn {

void HyperParams::validate() const {
    if (n_reservoir < 2) throw std::invalid_argument("HyperParams: n_reservoir must be >= 2");
    if (input_dim < 1) throw std::invalid_argument("HyperParams: input_dim must be >= 1");
    if (!(connectivity > 0.0 && connectivity <= 1.0))
        throw std::invalid_argument("HyperParams: connectivity must be in (0, 1]");
    if (!(spectral_radius_target > 0.0 && spectral_radius_target < 1.0))
        throw std::invalid_argument("HyperParams: spectral_radius_target must be in (0, 1)");
    if (!(input_scaling > 0.0))
        throw std::invalid_argument("HyperParams: input_scaling must be positive");
    if (ridge_lambda < 0.0)
        throw std::invalid_argument("HyperParams: ridge_lambda must be nonnegative");
    if (!(washout_fraction >= 0.0 && washout_fraction < 1.0))
        throw std::invalid_argument("HyperParams: washout_fraction must be in [0, 1)");
    if (horizon < 1) throw std::invalid_argument("HyperParams: horizon must be >= 1");
}

namespace {

// RNG substream tags, one per weight matrix.
constexpr std::uint64_t kStreamW = 1;
constexpr std::uint64_t kStreamWIn = 2;
constexpr std::uint64_t kStreamWBack = 3;

DenseMatrix dense_uniform(std::size_t rows, std::size_t cols, double scale, Rng rng) {
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.next_uniform(-scale, scale);
    return m;
}

}  // namespace

ReservoirWeights generate_reservoir(const HyperParams& hp) {
    hp.validate();
    const std::size_t n = hp.n_reservoir;
    const Rng base(hp.seed);

    Rng rng_w = base.substream(kStreamW);
    DenseMatrix w(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const bool keep = rng_w.next_unit() < hp.connectivity;
            const double value = rng_w.next_uniform(-0.5, 0.5);
            w(i, j) = keep ? value : 0.0;
        }
    }

    const double rho = spectral_radius(w);
    if (rho == 0.0)
        throw std::runtime_error(
            "generate_reservoir: degenerate reservoir (spectral radius 0); "
            "increase n_reservoir or connectivity");
    w = scale_to_radius(w, hp.spectral_radius_target);

    ReservoirWeights rw;
    rw.w = std::move(w);
    rw.w_in = dense_uniform(n, hp.input_dim, hp.input_scaling, base.substream(kStreamWIn));
    if (hp.feedback_enabled) {
        // Output dimension equals input dimension under the scalar
        // next-value convention used throughout.
        rw.w_back = dense_uniform(n, hp.input_dim, hp.input_scaling, base.substream(kStreamWBack));
    }
    return rw;
}

DenseMatrix scale_to_radius(const DenseMatrix& w, double rho) {
    if (!w.square()) throw std::invalid_argument("scale_to_radius: matrix must be square");
    if (!(rho > 0.0)) throw std::invalid_argument("scale_to_radius: target radius must be positive");
    const double current = spectral_radius(w);
    if (current == 0.0)
        throw std::runtime_error("scale_to_radius: zero spectral radius, cannot rescale");
    const double factor = rho / current;
    DenseMatrix out(w.rows(), w.cols());
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j) out(i, j) = w(i, j) * factor;
    return out;
}

EsnState update_state(const ReservoirWeights& rw, const EsnState& state, const DenseVector& u,
                      const DenseVector* y_prev) {
    const std::size_t n = rw.size();
    if (state.x.len() != n) throw std::invalid_argument("update_state: state length mismatch");
    if (u.len() != rw.input_dim()) throw std::invalid_argument("update_state: input length mismatch");
    if (rw.w_back.has_value() != (y_prev != nullptr))
        throw std::invalid_argument(
            "update_state: y_prev must be supplied exactly when W_back is present");

    DenseVector pre = matvec(rw.w, state.x);
    const DenseVector from_input = matvec(rw.w_in, u);
    for (std::size_t i = 0; i < n; ++i) pre[i] += from_input[i];
    if (y_prev != nullptr) {
        const DenseVector from_feedback = matvec(*rw.w_back, *y_prev);
        for (std::size_t i = 0; i < n; ++i) pre[i] += from_feedback[i];
    }
    EsnState next;
    next.x = DenseVector(n);
    for (std::size_t i = 0; i < n; ++i) next.x[i] = std::tanh(pre[i]);
    return next;
}

}  // namespace esn
