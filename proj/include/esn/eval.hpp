#pragma once

#include <span>
#include <vector>

#include "esn/data.hpp"
#include "esn/readout.hpp"

namespace esn {

/// Variance-normalized RMSE, Eq.-(7) style: 1.0 means "as good as
/// predicting the mean".
struct Metric {
    double nrmse = 0.0;
    std::size_t n_points = 0;
};

/// Sample statistics of a metric across repeated seeds.
struct RepStats {
    double mean = 0.0;
    double std = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t n_reps = 0;
};

/// sqrt( (1/(N·σ²)) Σ (pred − target)² ). The caller supplies σ² as the
/// population variance of the target signal over the evaluation range.
Metric nrmse(std::span<const double> pred, std::span<const double> target, double sigma2);

/// Mean/std/min/max across repetitions; std uses the n−1 denominator and
/// is 0 for a single repetition.
RepStats aggregate(std::span<const Metric> reps);

/// Whether multi-step error is scored at the final horizon step only or
/// pooled across the whole predicted trajectory.
enum class HorizonMode { kFinalStep, kTrajectory };

/// How the h-step-ahead prediction is produced: a single readout trained
/// directly on o(t+h), or the one-step readout iterated generatively
/// with its own outputs fed back.
enum class MultiStepMode { kDirect, kFreeRun };

/// Rolling-origin multi-step evaluation over one split range. Anchors are
/// taken every `stride` positions; each anchor teacher-forces the model
/// through the true series up to the anchor, then free-runs `horizon`
/// steps so the full prediction window lands inside the range. The
/// anchors reuse one shared teacher-forced state pass and are processed
/// in parallel, each along the exact predict_free_run arithmetic.
Metric horizon_nrmse(const TrainedEsn& model, const std::vector<double>& series, IndexRange range,
                     std::size_t horizon, std::size_t stride = 8,
                     HorizonMode mode = HorizonMode::kFinalStep);

/// Same evaluation with a caller-supplied teacher-forced trajectory
/// (row i of `states` = state after consuming series[i]); lets one state
/// pass serve several ranges. `states` must cover range.end−1−horizon.
Metric horizon_nrmse_with_states(const TrainedEsn& model, const std::vector<double>& series,
                                 const DenseMatrix& states, IndexRange range, std::size_t horizon,
                                 std::size_t stride = 8,
                                 HorizonMode mode = HorizonMode::kFinalStep);

/// Direct-readout variant: model_h.w_out maps [1, u(t), x(t+1)(, x²)]
/// straight to o(t+horizon); one dot product per anchor, no iteration.
Metric horizon_nrmse_direct(const TrainedEsn& model_h, const std::vector<double>& series,
                            const DenseMatrix& states, IndexRange range, std::size_t horizon,
                            std::size_t stride = 1);

}  // namespace esn
