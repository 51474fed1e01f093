#include "esn/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "esn/rng.hpp"

namespace esn {

namespace {

constexpr std::size_t kMinSeriesLength = 100;

void validate_series(const std::vector<double>& values, const std::string& origin) {
    if (values.size() < kMinSeriesLength)
        throw std::invalid_argument(origin + ": series must have at least " +
                                    std::to_string(kMinSeriesLength) + " samples, got " +
                                    std::to_string(values.size()));
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument(origin + ": non-finite sample");
}

}  // namespace

SplitIndices make_splits(std::size_t length, double washout_fraction, double train_fraction,
                         double validation_fraction, double test_fraction) {
    const double sum = washout_fraction + train_fraction + validation_fraction + test_fraction;
    if (std::fabs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("make_splits: fractions must sum to 1, got " +
                                    std::to_string(sum));
    if (washout_fraction < 0 || train_fraction < 0 || validation_fraction < 0 || test_fraction < 0)
        throw std::invalid_argument("make_splits: negative fraction");

    const auto cut = [length](double f) {
        return static_cast<std::size_t>(std::llround(f * static_cast<double>(length)));
    };
    std::size_t b_washout = cut(washout_fraction);
    std::size_t b_train = cut(washout_fraction + train_fraction);
    // Give validation and test equal shares of what is left; an odd
    // leftover sample stays with train.
    std::size_t eval_total = length - b_train;
    const std::size_t eval_each = eval_total / 2;
    b_train = length - 2 * eval_each;

    if (eval_each == 0)
        throw std::invalid_argument("make_splits: empty evaluation split");
    if (b_washout > b_train) b_washout = b_train;
    if (b_train <= b_washout)
        throw std::invalid_argument("make_splits: empty train split");

    SplitIndices s;
    s.washout = {0, b_washout};
    s.train = {b_washout, b_train};
    s.validation = {b_train, b_train + eval_each};
    s.test = {b_train + eval_each, length};
    return s;
}

SplitIndices make_splits(std::size_t length) { return make_splits(length, 0.10, 0.70, 0.10, 0.10); }

SeriesDataset with_splits(SeriesDataset ds, const SplitIndices& splits) {
    if (splits.total() != ds.values.size())
        throw std::invalid_argument("with_splits: splits do not cover the series");
    ds.splits = splits;
    return ds;
}

SeriesDataset mackey_glass(const MackeyGlassParams& p) {
    if (!(p.alpha > 0.0)) throw std::invalid_argument("mackey_glass: alpha must be positive");
    if (!(p.dt > 0.0)) throw std::invalid_argument("mackey_glass: dt must be positive");
    if (p.subsample < 1) throw std::invalid_argument("mackey_glass: subsample must be >= 1");
    if (p.n_samples < 1) throw std::invalid_argument("mackey_glass: n_samples must be >= 1");

    // Trajectory on the grid t = -H·dt + k·dt; the first H+1 entries are
    // the constant initial history covering [-alpha, 0].
    const std::size_t history = static_cast<std::size_t>(std::ceil(p.alpha / p.dt - 1e-9));
    const std::size_t transient_steps =
        static_cast<std::size_t>(std::ceil(p.transient_time / p.dt - 1e-9));
    const std::size_t total_steps = transient_steps + p.n_samples * p.subsample;

    std::vector<double> traj;
    traj.reserve(history + 1 + total_steps);
    traj.assign(history + 1, p.initial_value);

    // Delayed value at grid position `pos` steps behind index k, read by
    // linear interpolation (pos is fractional for the RK4 half steps).
    const double delay_steps = p.alpha / p.dt;
    auto delayed = [&](double grid_index) {
        const double pos = grid_index - delay_steps;
        const std::size_t lo = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(lo);
        if (frac == 0.0) return traj[lo];
        return traj[lo] + frac * (traj[lo + 1] - traj[lo]);
    };
    auto rhs = [&](double o, double o_delayed) {
        return p.beta * o_delayed / (1.0 + std::pow(o_delayed, p.exponent)) - p.gamma * o;
    };

    for (std::size_t step = 0; step < total_steps; ++step) {
        const double k_now = static_cast<double>(history + step);
        const double o = traj.back();
        const double d0 = delayed(k_now);
        const double dh = delayed(k_now + 0.5);
        const double d1 = delayed(k_now + 1.0);
        const double k1 = rhs(o, d0);
        const double k2 = rhs(o + 0.5 * p.dt * k1, dh);
        const double k3 = rhs(o + 0.5 * p.dt * k2, dh);
        const double k4 = rhs(o + p.dt * k3, d1);
        traj.push_back(o + p.dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    }

    SeriesDataset ds;
    ds.name = "mackey-glass";
    ds.values.reserve(p.n_samples);
    const std::size_t first = history + transient_steps;
    for (std::size_t i = 0; i < p.n_samples; ++i) ds.values.push_back(traj[first + i * p.subsample]);
    validate_series(ds.values, "mackey_glass");
    ds.splits = make_splits(ds.values.size());
    return ds;
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // Trim whitespace and a trailing CR from Windows line endings.
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

}  // namespace

SeriesDataset load_csv(const std::string& path, const std::string& column, bool has_header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open file: " + path);

    std::string line;
    std::size_t col_index = 0;
    std::size_t row_number = 0;

    if (has_header) {
        if (!std::getline(in, line)) throw std::runtime_error("load_csv: empty file: " + path);
        ++row_number;
        const auto header = split_csv_row(line);
        auto it = std::find(header.begin(), header.end(), column);
        if (it != header.end()) {
            col_index = static_cast<std::size_t>(it - header.begin());
        } else {
            try {
                col_index = std::stoul(column);
            } catch (const std::exception&) {
                throw std::runtime_error("load_csv: column '" + column + "' not found in header of " +
                                         path);
            }
            if (col_index >= header.size())
                throw std::runtime_error("load_csv: column index " + column + " out of range");
        }
    } else {
        try {
            col_index = column.empty() ? 0 : std::stoul(column);
        } catch (const std::exception&) {
            throw std::runtime_error("load_csv: with no header, column must be an index, got '" +
                                     column + "'");
        }
    }

    std::vector<double> values;
    while (std::getline(in, line)) {
        ++row_number;
        if (line.empty()) continue;
        const auto cells = split_csv_row(line);
        if (col_index >= cells.size())
            throw std::runtime_error("load_csv: row " + std::to_string(row_number) +
                                     " has no column " + std::to_string(col_index));
        const std::string& cell = cells[col_index];
        try {
            std::size_t consumed = 0;
            const double v = std::stod(cell, &consumed);
            if (consumed != cell.size() || !std::isfinite(v)) throw std::invalid_argument(cell);
            values.push_back(v);
        } catch (const std::exception&) {
            throw std::runtime_error("load_csv: non-numeric cell '" + cell + "' at row " +
                                     std::to_string(row_number));
        }
    }

    SeriesDataset ds;
    ds.name = path;
    ds.values = std::move(values);
    validate_series(ds.values, "load_csv(" + path + ")");
    ds.splits = make_splits(ds.values.size());
    return ds;
}

SeriesDataset synth_load(const SynthLoadParams& p) {
    if (p.n < kMinSeriesLength)
        throw std::invalid_argument("synth_load: n must be >= " + std::to_string(kMinSeriesLength));
    if (p.daily_period == 0 || p.weekly_period == 0)
        throw std::invalid_argument("synth_load: periods must be positive");
    if (p.noise_std < 0.0) throw std::invalid_argument("synth_load: noise_std must be nonnegative");

    Rng rng(p.seed);
    constexpr double two_pi = 6.283185307179586476925286766559;
    SeriesDataset ds;
    ds.name = "synth-load";
    ds.values.reserve(p.n);
    for (std::size_t t = 0; t < p.n; ++t) {
        const double td = static_cast<double>(t);
        double v = p.level;
        v += p.daily_amp * std::sin(two_pi * td / static_cast<double>(p.daily_period));
        v += p.weekly_amp * std::sin(two_pi * td / static_cast<double>(p.weekly_period));
        v += p.trend * td;
        if (p.noise_std > 0.0) v += p.noise_std * rng.next_gaussian();
        ds.values.push_back(v);
    }
    ds.splits = make_splits(ds.values.size());
    return ds;
}

double range_mean(const std::vector<double>& values, IndexRange range) {
    if (range.size() == 0 || range.end > values.size())
        throw std::invalid_argument("range_mean: bad range");
    double acc = 0.0;
    for (std::size_t i = range.begin; i < range.end; ++i) acc += values[i];
    return acc / static_cast<double>(range.size());
}

double range_variance(const std::vector<double>& values, IndexRange range) {
    const double mean = range_mean(values, range);
    double acc = 0.0;
    for (std::size_t i = range.begin; i < range.end; ++i) {
        const double d = values[i] - mean;
        acc += d * d;
    }
    return acc / static_cast<double>(range.size());
}

SeriesDataset normalize(const SeriesDataset& ds) {
    if (ds.normalization.applied) throw std::invalid_argument("normalize: already normalized");
    // Statistics over the train range only, so evaluation data never
    // influences the transform.
    const double mean = range_mean(ds.values, ds.splits.train);
    const double var = range_variance(ds.values, ds.splits.train);
    if (var <= 0.0) throw std::runtime_error("normalize: zero variance over the train range");
    const double sd = std::sqrt(var);

    SeriesDataset out = ds;
    for (double& v : out.values) v = (v - mean) / sd;
    out.normalization = {mean, sd, true};
    return out;
}

SeriesDataset denormalize(const SeriesDataset& ds) {
    if (!ds.normalization.applied) throw std::invalid_argument("denormalize: series not normalized");
    SeriesDataset out = ds;
    for (double& v : out.values) v = v * ds.normalization.scale + ds.normalization.shift;
    out.normalization = {};
    return out;
}

void write_series_csv(const SeriesDataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_series_csv: cannot open " + path);
    out << "value\n";
    out.precision(17);
    for (double v : ds.values) out << v << "\n";
    if (!out) throw std::runtime_error("write_series_csv: write failed for " + path);
}

}  // namespace esn
