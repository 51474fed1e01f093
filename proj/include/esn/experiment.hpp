#pragma once

#include <string>
#include <vector>

#include "esn/data.hpp"
#include "esn/io.hpp"
#include "esn/pruning.hpp"

namespace esn {

/// Which series the experiment runs on.
struct DatasetSpec {
    std::string kind = "mackey-glass";  // mackey-glass | csv | synth-load
    MackeyGlassParams mg;
    SynthLoadParams synth;
    std::string csv_path;
    std::string csv_column = "value";
    bool csv_has_header = true;
    bool normalize = true;
    double washout_fraction = 0.10;
    double train_fraction = 0.70;
    double validation_fraction = 0.10;
    double test_fraction = 0.10;
};

/// Full declarative description of one experiment run: dataset, base
/// hyperparameters, prune settings, and the sweep axes
/// (sizes × measures × seeds). Replica k of any configuration runs on
/// seed base_seed + k.
struct ExperimentConfig {
    DatasetSpec dataset;
    HyperParams hp;
    PruneConfig prune;
    std::vector<std::size_t> reservoir_sizes = {200, 300};
    std::vector<Measure> measures = {Measure::kC2};
    std::size_t n_reps = 10;
    std::uint64_t base_seed = 1;
    std::string output_dir = "results";
    bool emit_figures = false;

    void validate() const;
};

ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& cfg);

/// Applies a dotted-path override ("prune.step=1", "hp.seed=42") onto a
/// raw config JSON document. Values parse as JSON when possible,
/// otherwise as strings.
void apply_override(Json& config, const std::string& key_value);

/// Builds (and optionally normalizes and re-splits) the configured series.
SeriesDataset build_dataset(const DatasetSpec& spec);

/// One row of the summary table: a (size, measure) cell aggregated
/// across seeds, mirroring the headline table columns
/// Initial N (NRMSE) / Optimal N (NRMSE) / Reduced Error (%) / Smallest N.
struct SummaryRow {
    std::size_t size = 0;
    Measure measure = Measure::kC2;
    std::size_t n_reps = 0;
    RepStats baseline_test;
    RepStats optimal_test;
    double optimal_n_mean = 0.0;
    double smallest_n_mean = 0.0;
    double reduced_error_abs = 0.0;  // baseline mean − optimal mean
    double reduced_error_pct = 0.0;  // relative to baseline mean
};

struct ExperimentResult {
    std::vector<PruneCurve> curves;          // one per (size, measure, rep), task order
    std::vector<std::string> curve_files;
    std::vector<SummaryRow> summary;
    std::size_t failures = 0;
};

/// Runs the full sweep grid, writes curve CSVs,
/// summary.{csv,json} and manifest.json under output_dir, and prints the
/// summary table. Replicas run on an OpenMP worker pool; files are
/// written by a single thread afterwards.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// `generate` verb: writes the configured dataset as CSV and prints a
/// short description (length, min/max, splits).
void run_generate(const DatasetSpec& spec, const std::string& out_path);

/// `plot` verb: groups curve CSVs by reservoir size (one panel each,
/// one polyline per measure averaged across seeds, dashed baseline) and
/// writes a single SVG.
void run_plot(const std::vector<std::string>& curve_csvs, const std::string& out_svg);

/// Curve CSV filename convention: curve_<size>_<measure>_<seed>.csv.
std::string curve_filename(std::size_t size, Measure measure, std::uint64_t seed);

}  // namespace esn
