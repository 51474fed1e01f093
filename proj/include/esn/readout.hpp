#pragma once

#include <span>
#include <vector>

#include "esn/reservoir.hpp"

namespace esn {

/// A reservoir with its trained readout. w_out is
/// output_dim × (1 + input_dim + n): bias, input, state — plus an extra
/// output_dim block of previous-output columns when feedback is enabled.
struct TrainedEsn {
    ReservoirWeights reservoir;
    DenseMatrix w_out;
    HyperParams hp;

    std::size_t output_dim() const { return w_out.rows(); }
};

/// Teacher-forced states stacked for the ridge solve: one
/// [1, u(n+1), x(n+1)] row (and matching target row) per retained step.
struct StateHarvest {
    DenseMatrix design;
    DenseMatrix targets;
};

/// Runs the state recursion from x(0) = 0 across the full input sequence
/// and collects design/target rows for steps past the washout. With
/// `squared` the rows gain an x² block after the state block; with
/// feedback enabled, targets also teacher-force y_prev and the rows gain
/// a trailing previous-output block.
StateHarvest harvest(const ReservoirWeights& rw, std::span<const DenseVector> inputs,
                     std::span<const DenseVector> targets, std::size_t washout,
                     bool squared = false);

/// w_out = ridge_solve(design, targets, lambda)ᵀ.
DenseMatrix train_readout(const StateHarvest& h, double lambda);

/// Teacher-forces the model through warmup_inputs to synchronize the
/// state, then free-runs `horizon` generative steps, feeding each
/// prediction back as the next input. Requires output_dim == input_dim.
std::vector<DenseVector> predict_free_run(const TrainedEsn& model,
                                          std::span<const DenseVector> warmup_inputs,
                                          std::size_t horizon);

/// One-step outputs y(n+1) = W_out·[1, u(n+1), x(n+1)] under true inputs,
/// starting from x(0) = 0.
std::vector<DenseVector> predict_teacher_forced(const TrainedEsn& model,
                                                std::span<const DenseVector> inputs);

/// Readout evaluation y = W_out·[1, u, x] (or the squared-augmented
/// row); shared by the prediction paths.
DenseVector readout_output(const DenseMatrix& w_out, const DenseVector& u, const DenseVector& x,
                           bool squared = false);

/// Full teacher-forced state trajectory from x(0) = 0: row i holds
/// x(i+1), the state after consuming inputs[i]. This is the shared
/// kernel behind harvest and the horizon evaluation in `eval`.
DenseMatrix run_states(const ReservoirWeights& rw, std::span<const DenseVector> inputs);

/// Iterates `horizon` generative steps from a synchronized state: each
/// prediction is fed back as the next input. `last_input` is the final
/// teacher-forced input, `state` the state after consuming it.
std::vector<DenseVector> free_run_from(const TrainedEsn& model, const DenseVector& last_input,
                                       const EsnState& state, std::size_t horizon);

}  // namespace esn
