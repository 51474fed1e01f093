#pragma once

#include <string>
#include <vector>

#include "esn/centrality.hpp"
#include "esn/data.hpp"
#include "esn/eval.hpp"
#include "esn/reservoir.hpp"

namespace esn {

/// Controls one prune→retrain→evaluate sweep.
struct PruneConfig {
    Measure measure = Measure::kC2;
    std::size_t step = 0;               // nodes removed per iteration; 0 → max(1, N/100)
    double max_prune_fraction = 0.5;    // stop once this fraction of nodes is gone
    bool recompute_each_step = true;    // re-rank on the pruned graph vs one-shot ranking
    bool esp_guard = true;              // rescale W back to target if its radius reaches 1
    bool maintain_radius = false;       // rescale W to the target after every removal, keeping
                                        // the reservoir's time constants as nodes disappear;
                                        // removing nodes otherwise shrinks the radius and with
                                        // it the reservoir memory
    bool rank_by_magnitude = false;     // rank C1/C2 by |score| instead of raw value
    std::size_t eval_stride = 8;        // anchor spacing for the horizon evaluation
    HorizonMode horizon_mode = HorizonMode::kFinalStep;
    MultiStepMode multi_step = MultiStepMode::kFreeRun;

    void validate(std::size_t n_reservoir) const;
    std::size_t effective_step(std::size_t n_reservoir) const;
};

/// One point of the size-vs-error curve.
struct PruneStep {
    std::size_t n_remaining = 0;
    std::vector<std::size_t> removed_ids;  // original node indexing
    double val_nrmse = 0.0;
    double test_nrmse = 0.0;
    double rho = 0.0;                      // spectral radius after this step
    bool rescaled = false;                 // esp_guard fired
    bool ok = true;                        // readout retraining succeeded
    std::string error;
};

/// Full sweep record plus the selection summary. optimal_n minimizes
/// validation NRMSE (original N included; ties prune less); smallest_n is
/// the smallest size whose validation NRMSE is at or below baseline. Test
/// NRMSE is reported at the validation-selected optimum, never used for
/// selection.
struct PruneCurve {
    std::size_t original_n = 0;
    double baseline_val_nrmse = 0.0;
    double baseline_test_nrmse = 0.0;
    double baseline_rho = 0.0;
    std::vector<PruneStep> steps;
    std::size_t optimal_n = 0;
    double optimal_test_nrmse = 0.0;
    std::size_t smallest_n = 0;
};

/// Deletes rows and columns `ids` from W and rows `ids` from W_in (and
/// W_back when present); surviving node order is preserved. Ids must be
/// distinct and leave at least one node.
ReservoirWeights remove_nodes(const ReservoirWeights& rw, std::span<const std::size_t> ids);

/// Trains the readout on the train split and scores both evaluation
/// splits at the configured horizon; shared by the baseline and every
/// sweep step.
struct FitResult {
    Metric val;
    Metric test;
};
FitResult fit_and_score(const ReservoirWeights& rw, const SeriesDataset& data,
                        const HyperParams& hp, std::size_t eval_stride,
                        HorizonMode mode = HorizonMode::kFinalStep,
                        MultiStepMode multi_step = MultiStepMode::kFreeRun);

/// The paper's procedure: iteratively remove the lowest-centrality nodes,
/// retrain the readout on the reduced reservoir, evaluate, and record the
/// whole curve. Per-step training failures are recorded and the sweep
/// continues; a sweep where every step fails throws.
PruneCurve prune_sweep(const ReservoirWeights& rw, const SeriesDataset& data,
                       const PruneConfig& cfg, const HyperParams& hp);

/// Curve CSV: step, n_remaining, removed_count, val_nrmse, test_nrmse,
/// rho, rescaled.
void write_curve_csv(const PruneCurve& curve, const std::string& path);
PruneCurve read_curve_csv(const std::string& path);

}  // namespace esn
