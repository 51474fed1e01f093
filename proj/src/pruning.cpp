#include "esn/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace esn {

void PruneConfig::validate(std::size_t n_reservoir) const {
    if (!(max_prune_fraction > 0.0 && max_prune_fraction < 1.0))
        throw std::invalid_argument("PruneConfig: max_prune_fraction must be in (0, 1)");
    if (effective_step(n_reservoir) < 1)
        throw std::invalid_argument("PruneConfig: step must be >= 1");
    if (eval_stride < 1) throw std::invalid_argument("PruneConfig: eval_stride must be >= 1");
}

std::size_t PruneConfig::effective_step(std::size_t n_reservoir) const {
    if (step > 0) return step;
    return std::max<std::size_t>(1, n_reservoir / 100);
}

ReservoirWeights remove_nodes(const ReservoirWeights& rw, std::span<const std::size_t> ids) {
    const std::size_t n = rw.size();
    std::vector<bool> removed(n, false);
    for (std::size_t id : ids) {
        if (id >= n) throw std::invalid_argument("remove_nodes: id out of range");
        if (removed[id]) throw std::invalid_argument("remove_nodes: duplicate id");
        removed[id] = true;
    }
    if (ids.size() >= n) throw std::invalid_argument("remove_nodes: cannot remove every node");

    std::vector<std::size_t> keep;
    keep.reserve(n - ids.size());
    for (std::size_t i = 0; i < n; ++i)
        if (!removed[i]) keep.push_back(i);

    ReservoirWeights out;
    const std::size_t m = keep.size();
    out.w = DenseMatrix(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) out.w(i, j) = rw.w(keep[i], keep[j]);
    out.w_in = DenseMatrix(m, rw.w_in.cols());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < rw.w_in.cols(); ++j) out.w_in(i, j) = rw.w_in(keep[i], j);
    if (rw.w_back) {
        DenseMatrix wb(m, rw.w_back->cols());
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < rw.w_back->cols(); ++j) wb(i, j) = (*rw.w_back)(keep[i], j);
        out.w_back = std::move(wb);
    }
    return out;
}

FitResult fit_and_score(const ReservoirWeights& rw, const SeriesDataset& data,
                        const HyperParams& hp, std::size_t eval_stride, HorizonMode mode,
                        MultiStepMode multi_step) {
    const std::vector<double>& series = data.values;
    const SplitIndices& sp = data.splits;
    const std::size_t horizon = hp.horizon;
    if (sp.total() != series.size())
        throw std::invalid_argument("fit_and_score: splits inconsistent with series");
    if (sp.test.size() <= horizon || sp.validation.size() <= horizon)
        throw std::invalid_argument("fit_and_score: evaluation splits shorter than horizon");

    const bool direct = multi_step == MultiStepMode::kDirect;
    const std::size_t target_shift = direct ? horizon : 1;
    if (sp.train.end <= target_shift)
        throw std::invalid_argument("fit_and_score: train range shorter than horizon");

    // One teacher-forced pass covers both the training design rows and
    // the evaluation anchors.
    const std::size_t last_train_input = sp.train.end - 1 - target_shift;
    const std::size_t last_anchor = sp.test.end - 1 - horizon;
    const std::size_t n_inputs = std::max(last_train_input, last_anchor) + 1;
    std::vector<DenseVector> inputs;
    inputs.reserve(n_inputs);
    for (std::size_t i = 0; i < n_inputs; ++i)
        inputs.push_back(DenseVector(std::vector<double>{series[i]}));
    const DenseMatrix states = run_states(rw, inputs);

    const std::size_t n = rw.size();
    const std::size_t washout = sp.washout.size();
    const bool feedback = rw.w_back.has_value();
    const bool squared = hp.squared_states;
    const std::size_t state_cols = squared ? 2 * n : n;
    const std::size_t cols = 1 + 1 + state_cols + (feedback ? 1 : 0);
    const std::size_t t_eff = last_train_input + 1 - washout;
    if (last_train_input + 1 <= washout)
        throw std::invalid_argument("fit_and_score: washout swallows the train range");

    DenseMatrix design(t_eff, cols);
    DenseMatrix targets(t_eff, 1);
    for (std::size_t t = washout; t <= last_train_input; ++t) {
        const std::size_t r = t - washout;
        design(r, 0) = 1.0;
        design(r, 1) = series[t];
        for (std::size_t j = 0; j < n; ++j) design(r, 2 + j) = states(t, j);
        if (squared)
            for (std::size_t j = 0; j < n; ++j) design(r, 2 + n + j) = states(t, j) * states(t, j);
        if (feedback) design(r, 2 + state_cols) = t == 0 ? 0.0 : series[t];
        targets(r, 0) = series[t + target_shift];
    }

    TrainedEsn model;
    model.reservoir = rw;
    model.hp = hp;
    model.w_out = transpose(ridge_solve(design, targets, hp.ridge_lambda));

    FitResult res;
    if (direct) {
        res.val = horizon_nrmse_direct(model, series, states, sp.validation, horizon, eval_stride);
        res.test = horizon_nrmse_direct(model, series, states, sp.test, horizon, eval_stride);
    } else {
        res.val = horizon_nrmse_with_states(model, series, states, sp.validation, horizon,
                                            eval_stride, mode);
        res.test =
            horizon_nrmse_with_states(model, series, states, sp.test, horizon, eval_stride, mode);
    }
    return res;
}

namespace {

void finalize_selection(PruneCurve& curve) {
    double best_val = curve.baseline_val_nrmse;
    curve.optimal_n = curve.original_n;
    curve.optimal_test_nrmse = curve.baseline_test_nrmse;
    curve.smallest_n = curve.original_n;
    for (const PruneStep& st : curve.steps) {
        if (!st.ok) continue;
        // Strictly-better keeps ties at the larger n_remaining (prune less).
        if (st.val_nrmse < best_val) {
            best_val = st.val_nrmse;
            curve.optimal_n = st.n_remaining;
            curve.optimal_test_nrmse = st.test_nrmse;
        }
        if (st.val_nrmse <= curve.baseline_val_nrmse && st.n_remaining < curve.smallest_n)
            curve.smallest_n = st.n_remaining;
    }
}

}  // namespace

PruneCurve prune_sweep(const ReservoirWeights& rw, const SeriesDataset& data,
                       const PruneConfig& cfg, const HyperParams& hp) {
    const std::size_t n = rw.size();
    cfg.validate(n);
    const std::size_t step = cfg.effective_step(n);
    const std::size_t max_removed =
        static_cast<std::size_t>(cfg.max_prune_fraction * static_cast<double>(n));

    PruneCurve curve;
    curve.original_n = n;
    curve.baseline_rho = spectral_radius(rw.w);
    {
        const FitResult base =
            fit_and_score(rw, data, hp, cfg.eval_stride, cfg.horizon_mode, cfg.multi_step);
        curve.baseline_val_nrmse = base.val.nrmse;
        curve.baseline_test_nrmse = base.test.nrmse;
    }

    // One-shot mode ranks the original graph once; the ranked order is
    // then consumed step by step.
    std::vector<std::size_t> one_shot_order;
    if (!cfg.recompute_each_step)
        one_shot_order =
            rank_nodes(centrality(rw.w, cfg.measure), {}, cfg.rank_by_magnitude);

    ReservoirWeights current = rw;
    std::vector<std::size_t> alive(n);
    for (std::size_t i = 0; i < n; ++i) alive[i] = i;
    std::size_t removed_total = 0;
    std::size_t ok_steps = 0;

    while (removed_total + step <= max_removed) {
        // Pick this step's victims, as indices into the current matrix.
        std::vector<std::size_t> victims_current;
        if (cfg.recompute_each_step) {
            const auto order =
                rank_nodes(centrality(current.w, cfg.measure), {}, cfg.rank_by_magnitude);
            victims_current.assign(order.begin(), order.begin() + static_cast<long>(step));
        } else {
            std::vector<std::size_t> orig_to_current(n, SIZE_MAX);
            for (std::size_t c = 0; c < alive.size(); ++c) orig_to_current[alive[c]] = c;
            for (std::size_t orig : one_shot_order) {
                if (orig_to_current[orig] == SIZE_MAX) continue;
                victims_current.push_back(orig_to_current[orig]);
                if (victims_current.size() == step) break;
            }
        }

        PruneStep record;
        record.removed_ids.reserve(step);
        for (std::size_t c : victims_current) record.removed_ids.push_back(alive[c]);

        current = remove_nodes(current, victims_current);
        {
            std::vector<std::size_t> sorted = victims_current;
            std::sort(sorted.begin(), sorted.end(), std::greater<>());
            for (std::size_t c : sorted) alive.erase(alive.begin() + static_cast<long>(c));
        }
        removed_total += step;
        record.n_remaining = alive.size();

        record.rho = spectral_radius(current.w);
        if (cfg.maintain_radius && record.rho > 0.0 && record.rho != hp.spectral_radius_target) {
            current.w = scale_to_radius(current.w, hp.spectral_radius_target);
            record.rescaled = true;
            record.rho = hp.spectral_radius_target;
        } else if (cfg.esp_guard && record.rho >= 1.0) {
            current.w = scale_to_radius(current.w, hp.spectral_radius_target);
            record.rescaled = true;
            record.rho = hp.spectral_radius_target;
        }

        try {
            const FitResult fit = fit_and_score(current, data, hp, cfg.eval_stride,
                                                cfg.horizon_mode, cfg.multi_step);
            record.val_nrmse = fit.val.nrmse;
            record.test_nrmse = fit.test.nrmse;
            ++ok_steps;
        } catch (const std::exception& e) {
            record.ok = false;
            record.error = e.what();
            record.val_nrmse = std::numeric_limits<double>::quiet_NaN();
            record.test_nrmse = std::numeric_limits<double>::quiet_NaN();
        }
        curve.steps.push_back(std::move(record));
    }

    if (!curve.steps.empty() && ok_steps == 0)
        throw std::runtime_error("prune_sweep: every pruning step failed to retrain; last error: " +
                                 curve.steps.back().error);

    finalize_selection(curve);
    return curve;
}

void write_curve_csv(const PruneCurve& curve, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_curve_csv: cannot open " + path);
    out.precision(17);
    out << "step,n_remaining,removed_count,val_nrmse,test_nrmse,rho,rescaled\n";
    out << "0," << curve.original_n << ",0," << curve.baseline_val_nrmse << ","
        << curve.baseline_test_nrmse << "," << curve.baseline_rho << ",0\n";
    for (std::size_t i = 0; i < curve.steps.size(); ++i) {
        const PruneStep& st = curve.steps[i];
        out << (i + 1) << "," << st.n_remaining << "," << st.removed_ids.size() << ","
            << st.val_nrmse << "," << st.test_nrmse << "," << st.rho << ","
            << (st.rescaled ? 1 : 0) << "\n";
    }
    if (!out) throw std::runtime_error("write_curve_csv: write failed for " + path);
}

PruneCurve read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_curve_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("step,", 0) != 0)
        throw std::runtime_error("read_curve_csv: missing header in " + path);

    PruneCurve curve;
    bool saw_baseline = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 7)
            throw std::runtime_error("read_curve_csv: malformed row in " + path);
        const std::size_t step_no = std::stoul(cells[0]);
        if (step_no == 0) {
            curve.original_n = std::stoul(cells[1]);
            curve.baseline_val_nrmse = std::stod(cells[3]);
            curve.baseline_test_nrmse = std::stod(cells[4]);
            curve.baseline_rho = std::stod(cells[5]);
            saw_baseline = true;
            continue;
        }
        PruneStep st;
        st.n_remaining = std::stoul(cells[1]);
        st.removed_ids.resize(std::stoul(cells[2]));  // ids themselves are not persisted
        st.val_nrmse = std::stod(cells[3]);
        st.test_nrmse = std::stod(cells[4]);
        st.rho = std::stod(cells[5]);
        st.rescaled = cells[6] == "1";
        st.ok = std::isfinite(st.val_nrmse);
        curve.steps.push_back(std::move(st));
    }
    if (!saw_baseline) throw std::runtime_error("read_curve_csv: no baseline row in " + path);
    finalize_selection(curve);
    return curve;
}

}  // namespace esn
