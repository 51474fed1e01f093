#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace esn {

/// Half-open index range [begin, end).
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const { return end - begin; }
};

/// Contiguous, ordered, non-overlapping ranges covering [0, T).
/// Validation and test are equal length by construction.
struct SplitIndices {
    IndexRange washout;
    IndexRange train;
    IndexRange validation;
    IndexRange test;
    std::size_t total() const { return test.end; }
};

struct Normalization {
    double shift = 0.0;
    double scale = 1.0;
    bool applied = false;
};

/// A scalar time series with its split bookkeeping. Values are finite
/// and at least 100 samples long.
struct SeriesDataset {
    std::vector<double> values;
    std::string name;
    Normalization normalization;
    SplitIndices splits;
};

/// Parameters of the Mackey-Glass delay differential equation
///   do/dt = beta·o(t−alpha) / (1 + o(t−alpha)^exponent) − gamma·o(t),
/// integrated with RK4 at step dt; one sample kept every `subsample`
/// steps (defaults give unit sampling interval). The history on
/// [−alpha, 0] is the constant initial_value; a transient of
/// `transient_time` time units is discarded before sampling starts.
struct MackeyGlassParams {
    double alpha = 17.0;
    double beta = 0.2;
    double gamma = 0.1;
    double exponent = 10.0;
    double dt = 0.1;
    std::size_t subsample = 10;
    std::size_t n_samples = 10000;
    double initial_value = 1.2;
    double transient_time = 1000.0;
};

struct SynthLoadParams {
    std::size_t n = 5000;
    std::uint64_t seed = 1;
    std::size_t daily_period = 24;
    std::size_t weekly_period = 168;
    double noise_std = 0.05;
    double trend = 0.0;        // additive slope per step
    double daily_amp = 1.0;
    double weekly_amp = 0.5;
    double level = 10.0;
};

/// Splits [0, length) into washout/train/validation/test by the given
/// fractions (must sum to 1). Validation and test get the same number of
/// samples; an odd leftover sample goes to train. Throws
/// "empty evaluation split" when validation or test would be empty.
SplitIndices make_splits(std::size_t length, double washout_fraction, double train_fraction,
                         double validation_fraction, double test_fraction);

/// Default 10/70/10/10 split.
SplitIndices make_splits(std::size_t length);

/// Generates the Mackey-Glass series. Deterministic; no randomness involved.
SeriesDataset mackey_glass(const MackeyGlassParams& p);

/// Reads one numeric column from a CSV file. `column` is a header name
/// when has_header is true, otherwise (or when no header matches) a
/// zero-based column index. Errors name the offending row.
SeriesDataset load_csv(const std::string& path, const std::string& column, bool has_header);

/// Two sinusoids plus trend plus seeded Gaussian noise; a stand-in for
/// hourly load data.
SeriesDataset synth_load(const SynthLoadParams& p);

/// Shifts/scales to zero mean, unit variance computed over the train
/// range only. Throws "zero variance" for a constant train range.
SeriesDataset normalize(const SeriesDataset& ds);

/// Undoes normalize() using the recorded (shift, scale).
SeriesDataset denormalize(const SeriesDataset& ds);

/// Replaces the splits, validating them against the series length.
SeriesDataset with_splits(SeriesDataset ds, const SplitIndices& splits);

/// Mean and population variance over values[range].
double range_mean(const std::vector<double>& values, IndexRange range);
double range_variance(const std::vector<double>& values, IndexRange range);

/// Writes the series as a one-column CSV (header "value").
void write_series_csv(const SeriesDataset& ds, const std::string& path);

}  // namespace esn
