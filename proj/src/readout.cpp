#include "esn/readout.hpp"

#include <cmath>
#include <stdexcept>

namespace esn {

DenseMatrix run_states(const ReservoirWeights& rw, std::span<const DenseVector> inputs) {
    const std::size_t n = rw.size();
    const std::size_t in_dim = rw.input_dim();
    const std::size_t steps = inputs.size();
    DenseMatrix states(steps, n);

    std::vector<double> x(n, 0.0);
    const double* w = rw.w.data();
    for (std::size_t t = 0; t < steps; ++t) {
        const DenseVector& u = inputs[t];
        if (u.len() != in_dim) throw std::invalid_argument("run_states: input length mismatch");
        double* out_row = states.data() + t * n;
        for (std::size_t i = 0; i < n; ++i) {
            const double* wrow = w + i * n;
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += wrow[j] * x[j];
            double drive = 0.0;
            for (std::size_t j = 0; j < in_dim; ++j) drive += rw.w_in(i, j) * u[j];
            acc += drive;
            if (rw.w_back) {
                // Under the scalar next-value convention the previous
                // output equals the current input during teacher forcing.
                double fb = 0.0;
                for (std::size_t j = 0; j < in_dim; ++j) fb += (*rw.w_back)(i, j) * u[j];
                acc += fb;
            }
            out_row[i] = std::tanh(acc);
        }
        for (std::size_t i = 0; i < n; ++i) x[i] = out_row[i];
    }
    return states;
}

StateHarvest harvest(const ReservoirWeights& rw, std::span<const DenseVector> inputs,
                     std::span<const DenseVector> targets, std::size_t washout, bool squared) {
    if (inputs.empty()) throw std::invalid_argument("harvest: empty input sequence");
    if (inputs.size() != targets.size())
        throw std::invalid_argument("harvest: inputs and targets must have equal length");
    if (washout >= inputs.size())
        throw std::invalid_argument("harvest: washout (" + std::to_string(washout) +
                                    ") must be smaller than sequence length (" +
                                    std::to_string(inputs.size()) + ")");

    const std::size_t n = rw.size();
    const std::size_t in_dim = rw.input_dim();
    const std::size_t out_dim = targets[0].len();
    const bool feedback = rw.w_back.has_value();
    const std::size_t state_cols = squared ? 2 * n : n;
    const std::size_t cols = 1 + in_dim + state_cols + (feedback ? out_dim : 0);
    const std::size_t t_eff = inputs.size() - washout;

    StateHarvest h;
    h.design = DenseMatrix(t_eff, cols);
    h.targets = DenseMatrix(t_eff, out_dim);

    EsnState state{DenseVector(n)};
    DenseVector y_prev(out_dim);
    for (std::size_t t = 0; t < inputs.size(); ++t) {
        if (targets[t].len() != out_dim)
            throw std::invalid_argument("harvest: inconsistent target dimension");
        state = feedback ? update_state(rw, state, inputs[t], &y_prev)
                         : update_state(rw, state, inputs[t]);
        if (t >= washout) {
            const std::size_t r = t - washout;
            h.design(r, 0) = 1.0;
            for (std::size_t j = 0; j < in_dim; ++j) h.design(r, 1 + j) = inputs[t][j];
            for (std::size_t j = 0; j < n; ++j) h.design(r, 1 + in_dim + j) = state.x[j];
            if (squared)
                for (std::size_t j = 0; j < n; ++j)
                    h.design(r, 1 + in_dim + n + j) = state.x[j] * state.x[j];
            if (feedback)
                for (std::size_t j = 0; j < out_dim; ++j)
                    h.design(r, 1 + in_dim + state_cols + j) = y_prev[j];
            for (std::size_t j = 0; j < out_dim; ++j) h.targets(r, j) = targets[t][j];
        }
        if (feedback) y_prev = targets[t];
    }
    return h;
}

DenseMatrix train_readout(const StateHarvest& h, double lambda) {
    return transpose(ridge_solve(h.design, h.targets, lambda));
}

DenseVector readout_output(const DenseMatrix& w_out, const DenseVector& u, const DenseVector& x,
                           bool squared) {
    const std::size_t out_dim = w_out.rows();
    const std::size_t in_dim = u.len();
    const std::size_t n = x.len();
    if (w_out.cols() < 1 + in_dim + (squared ? 2 * n : n))
        throw std::invalid_argument("readout_output: w_out column mismatch");
    DenseVector y(out_dim);
    for (std::size_t r = 0; r < out_dim; ++r) {
        double acc = w_out(r, 0);
        for (std::size_t j = 0; j < in_dim; ++j) acc += w_out(r, 1 + j) * u[j];
        for (std::size_t j = 0; j < n; ++j) acc += w_out(r, 1 + in_dim + j) * x[j];
        if (squared)
            for (std::size_t j = 0; j < n; ++j) acc += w_out(r, 1 + in_dim + n + j) * x[j] * x[j];
        y[r] = acc;
    }
    return y;
}

namespace {

// Readout including the trailing previous-output block used in feedback mode.
DenseVector readout_output_fb(const DenseMatrix& w_out, const DenseVector& u, const DenseVector& x,
                              const DenseVector& y_prev, bool squared) {
    const std::size_t out_dim = w_out.rows();
    const std::size_t in_dim = u.len();
    const std::size_t n = x.len();
    const std::size_t state_cols = squared ? 2 * n : n;
    DenseVector y(out_dim);
    for (std::size_t r = 0; r < out_dim; ++r) {
        double acc = w_out(r, 0);
        for (std::size_t j = 0; j < in_dim; ++j) acc += w_out(r, 1 + j) * u[j];
        for (std::size_t j = 0; j < n; ++j) acc += w_out(r, 1 + in_dim + j) * x[j];
        if (squared)
            for (std::size_t j = 0; j < n; ++j) acc += w_out(r, 1 + in_dim + n + j) * x[j] * x[j];
        for (std::size_t j = 0; j < y_prev.len(); ++j)
            acc += w_out(r, 1 + in_dim + state_cols + j) * y_prev[j];
        y[r] = acc;
    }
    return y;
}

}  // namespace

std::vector<DenseVector> free_run_from(const TrainedEsn& model, const DenseVector& last_input,
                                       const EsnState& state, std::size_t horizon) {
    const ReservoirWeights& rw = model.reservoir;
    if (model.output_dim() != rw.input_dim())
        throw std::invalid_argument(
            "free_run_from: generative mode needs output_dim == input_dim");
    const bool feedback = rw.w_back.has_value();
    const bool squared = model.hp.squared_states;

    std::vector<DenseVector> predictions;
    predictions.reserve(horizon);
    DenseVector u = last_input;
    EsnState x = state;
    for (std::size_t k = 0; k < horizon; ++k) {
        DenseVector y = feedback ? readout_output_fb(model.w_out, u, x.x, u, squared)
                                 : readout_output(model.w_out, u, x.x, squared);
        predictions.push_back(y);
        if (k + 1 == horizon) break;
        x = feedback ? update_state(rw, x, y, &y) : update_state(rw, x, y);
        u = std::move(y);
    }
    return predictions;
}

std::vector<DenseVector> predict_free_run(const TrainedEsn& model,
                                          std::span<const DenseVector> warmup_inputs,
                                          std::size_t horizon) {
    if (warmup_inputs.empty()) throw std::invalid_argument("predict_free_run: empty warmup");
    if (horizon < 1) throw std::invalid_argument("predict_free_run: horizon must be >= 1");

    const DenseMatrix states = run_states(model.reservoir, warmup_inputs);
    const std::size_t n = model.reservoir.size();
    EsnState synced{DenseVector(n)};
    for (std::size_t j = 0; j < n; ++j) synced.x[j] = states(states.rows() - 1, j);
    return free_run_from(model, warmup_inputs.back(), synced, horizon);
}

std::vector<DenseVector> predict_teacher_forced(const TrainedEsn& model,
                                                std::span<const DenseVector> inputs) {
    const ReservoirWeights& rw = model.reservoir;
    const bool feedback = rw.w_back.has_value();
    const DenseMatrix states = run_states(rw, inputs);
    const std::size_t n = rw.size();

    std::vector<DenseVector> outputs;
    outputs.reserve(inputs.size());
    const bool squared = model.hp.squared_states;
    DenseVector x(n);
    for (std::size_t t = 0; t < inputs.size(); ++t) {
        for (std::size_t j = 0; j < n; ++j) x[j] = states(t, j);
        outputs.push_back(feedback
                              ? readout_output_fb(model.w_out, inputs[t], x, inputs[t], squared)
                              : readout_output(model.w_out, inputs[t], x, squared));
    }
    return outputs;
}

}  // namespace esn
