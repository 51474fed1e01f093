#include "esn/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace esn {

Metric nrmse(std::span<const double> pred, std::span<const double> target, double sigma2) {
    if (pred.size() != target.size() || pred.empty())
        throw std::invalid_argument("nrmse: prediction/target length mismatch");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("nrmse: sigma2 must be positive");
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - target[i];
        acc += d * d;
    }
    return {std::sqrt(acc / (static_cast<double>(pred.size()) * sigma2)),
            pred.size()};
}

RepStats aggregate(std::span<const Metric> reps) {
    if (reps.empty()) throw std::invalid_argument("aggregate: no repetitions");
    RepStats st;
    st.n_reps = reps.size();
    st.min = reps[0].nrmse;
    st.max = reps[0].nrmse;
    double sum = 0.0;
    for (const Metric& m : reps) {
        sum += m.nrmse;
        st.min = std::min(st.min, m.nrmse);
        st.max = std::max(st.max, m.nrmse);
    }
    st.mean = sum / static_cast<double>(reps.size());
    if (reps.size() > 1) {
        double acc = 0.0;
        for (const Metric& m : reps) {
            const double d = m.nrmse - st.mean;
            acc += d * d;
        }
        st.std = std::sqrt(acc / static_cast<double>(reps.size() - 1));
    }
    return st;
}

Metric horizon_nrmse_with_states(const TrainedEsn& model, const std::vector<double>& series,
                                 const DenseMatrix& states, IndexRange range, std::size_t horizon,
                                 std::size_t stride, HorizonMode mode) {
    if (range.end > series.size() || range.size() == 0)
        throw std::invalid_argument("horizon_nrmse: range outside series");
    if (horizon < 1) throw std::invalid_argument("horizon_nrmse: horizon must be >= 1");
    if (stride < 1) stride = 1;
    if (range.size() <= horizon)
        throw std::invalid_argument("horizon_nrmse: range shorter than horizon");

    // Anchor p = index of the last true input; the predicted window
    // p+1 .. p+horizon must lie inside the range.
    const std::size_t first_anchor = range.begin == 0 ? 0 : range.begin - 1;
    const std::size_t last_anchor = range.end - 1 - horizon;
    if (states.rows() <= last_anchor)
        throw std::invalid_argument("horizon_nrmse: states do not cover the range");
    std::vector<std::size_t> anchors;
    for (std::size_t p = first_anchor; p <= last_anchor; p += stride) anchors.push_back(p);

    const std::size_t n = model.reservoir.size();

    const std::size_t per_anchor = mode == HorizonMode::kTrajectory ? horizon : 1;
    std::vector<double> pred(anchors.size() * per_anchor);
    std::vector<double> truth(anchors.size() * per_anchor);

#pragma omp parallel for schedule(dynamic, 4)
    for (long long a = 0; a < static_cast<long long>(anchors.size()); ++a) {
        const std::size_t p = anchors[static_cast<std::size_t>(a)];
        EsnState snapshot{DenseVector(n)};
        for (std::size_t j = 0; j < n; ++j) snapshot.x[j] = states(p, j);
        const DenseVector last_input(std::vector<double>{series[p]});
        const std::vector<DenseVector> run = free_run_from(model, last_input, snapshot, horizon);
        const std::size_t base = static_cast<std::size_t>(a) * per_anchor;
        if (mode == HorizonMode::kTrajectory) {
            for (std::size_t k = 0; k < horizon; ++k) {
                pred[base + k] = run[k][0];
                truth[base + k] = series[p + 1 + k];
            }
        } else {
            pred[base] = run[horizon - 1][0];
            truth[base] = series[p + horizon];
        }
    }

    const double sigma2 = range_variance(series, range);
    if (!(sigma2 > 0.0)) throw std::runtime_error("horizon_nrmse: zero variance over range");
    return nrmse(pred, truth, sigma2);
}

Metric horizon_nrmse_direct(const TrainedEsn& model_h, const std::vector<double>& series,
                            const DenseMatrix& states, IndexRange range, std::size_t horizon,
                            std::size_t stride) {
    if (range.end > series.size() || range.size() == 0)
        throw std::invalid_argument("horizon_nrmse_direct: range outside series");
    if (range.size() <= horizon)
        throw std::invalid_argument("horizon_nrmse_direct: range shorter than horizon");
    if (stride < 1) stride = 1;
    const std::size_t first_anchor = range.begin == 0 ? 0 : range.begin - 1;
    const std::size_t last_anchor = range.end - 1 - horizon;
    if (states.rows() <= last_anchor)
        throw std::invalid_argument("horizon_nrmse_direct: states do not cover the range");

    const std::size_t n = model_h.reservoir.size();
    const bool squared = model_h.hp.squared_states;
    std::vector<double> pred, truth;
    for (std::size_t p = first_anchor; p <= last_anchor; p += stride) {
        DenseVector x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = states(p, j);
        const DenseVector u(std::vector<double>{series[p]});
        pred.push_back(readout_output(model_h.w_out, u, x, squared)[0]);
        truth.push_back(series[p + horizon]);
    }
    const double sigma2 = range_variance(series, range);
    if (!(sigma2 > 0.0)) throw std::runtime_error("horizon_nrmse_direct: zero variance over range");
    return nrmse(pred, truth, sigma2);
}

Metric horizon_nrmse(const TrainedEsn& model, const std::vector<double>& series, IndexRange range,
                     std::size_t horizon, std::size_t stride, HorizonMode mode) {
    if (range.end > series.size() || range.size() <= horizon)
        throw std::invalid_argument("horizon_nrmse: bad range/horizon");
    const std::size_t last_anchor = range.end - 1 - horizon;
    std::vector<DenseVector> inputs;
    inputs.reserve(last_anchor + 1);
    for (std::size_t i = 0; i <= last_anchor; ++i)
        inputs.push_back(DenseVector(std::vector<double>{series[i]}));
    const DenseMatrix states = run_states(model.reservoir, inputs);
    return horizon_nrmse_with_states(model, series, states, range, horizon, stride, mode);
}

}  // namespace esn
