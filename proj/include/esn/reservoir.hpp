#pragma once

#include <cstdint>
#include <optional>

#include "esn/linalg.hpp"

namespace esn {

/// Experiment knobs for one ESN configuration. Defaults follow common
/// ESN practice: spectral radius 0.9, 10% connectivity, unit input
/// scaling, a whisper of ridge regularization.
struct HyperParams {
    std::size_t n_reservoir = 200;
    std::size_t input_dim = 1;
    double connectivity = 0.1;             // keep probability per internal weight, (0, 1]
    double spectral_radius_target = 0.9;   // must stay below 1 for the echo state property
    double input_scaling = 1.0;
    double ridge_lambda = 1e-8;
    std::uint64_t seed = 1;
    bool feedback_enabled = false;
    double washout_fraction = 0.1;
    std::size_t horizon = 84;              // prediction steps ahead
    // Readout sees [1, u, x, x²] instead of [1, u, x]. The squared block
    // is the standard augmentation for Mackey-Glass-class tasks; without
    // it a few-hundred-node reservoir cannot hold an 84-step free run.
    bool squared_states = false;

    /// Throws std::invalid_argument when any field is out of range.
    void validate() const;
};

/// The fixed random network: internal matrix W (n×n), input matrix W_in
/// (n×input_dim), optional feedback matrix W_back. Immutable by
/// convention after construction; safe to share across threads.
struct ReservoirWeights {
    DenseMatrix w;
    DenseMatrix w_in;
    std::optional<DenseMatrix> w_back;

    std::size_t size() const { return w.rows(); }
    std::size_t input_dim() const { return w_in.cols(); }
};

/// Reservoir activation vector x(n); every component lies in (−1, 1)
/// once at least one tanh update has been applied.
struct EsnState {
    DenseVector x;
};

/// Builds the random reservoir for the given hyperparameters. Internal
/// weights are uniform on [−0.5, 0.5], kept with probability
/// `connectivity`; W is then rescaled so its spectral radius equals
/// `spectral_radius_target`. W_in (and W_back when feedback is enabled)
/// are fully dense, uniform on ±input_scaling. Deterministic given the
/// seed; one RNG substream per weight matrix.
/// Throws "degenerate reservoir" when the sampled W has spectral radius 0.
ReservoirWeights generate_reservoir(const HyperParams& hp);

/// w · (rho / spectral_radius(w)). Throws when the spectral radius is zero.
DenseMatrix scale_to_radius(const DenseMatrix& w, double rho);

/// One step of the state recursion
///   x' = tanh(W·x + W_in·u [+ W_back·y_prev]).
/// y_prev must be supplied exactly when the reservoir carries W_back.
EsnState update_state(const ReservoirWeights& rw, const EsnState& state, const DenseVector& u,
                      const DenseVector* y_prev = nullptr);

}  // namespace esn
