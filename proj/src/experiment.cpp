#include "esn/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "esn/svg.hpp"

namespace esn {

namespace fs = std::filesystem;

void ExperimentConfig::validate() const {
    if (n_reps < 1) throw std::invalid_argument("ExperimentConfig: n_reps must be >= 1");
    if (reservoir_sizes.empty())
        throw std::invalid_argument("ExperimentConfig: reservoir_sizes must not be empty");
    if (measures.empty()) throw std::invalid_argument("ExperimentConfig: measures must not be empty");
    if (output_dir.empty()) throw std::invalid_argument("ExperimentConfig: output_dir must be set");
    for (std::size_t n : reservoir_sizes) {
        HyperParams probe = hp;
        probe.n_reservoir = n;
        probe.validate();
        prune.validate(n);
    }
    if (dataset.kind != "mackey-glass" && dataset.kind != "csv" && dataset.kind != "synth-load")
        throw std::invalid_argument("ExperimentConfig: unknown dataset kind '" + dataset.kind + "'");
    if (dataset.kind == "csv" && dataset.csv_path.empty())
        throw std::invalid_argument("ExperimentConfig: csv dataset needs a path");
}

namespace {

DatasetSpec dataset_from_json(const Json& j) {
    DatasetSpec d;
    d.kind = j.value("kind", d.kind);
    if (j.contains("mackey_glass")) {
        const Json& m = j.at("mackey_glass");
        d.mg.alpha = m.value("alpha", d.mg.alpha);
        d.mg.beta = m.value("beta", d.mg.beta);
        d.mg.gamma = m.value("gamma", d.mg.gamma);
        d.mg.exponent = m.value("exponent", d.mg.exponent);
        d.mg.dt = m.value("dt", d.mg.dt);
        d.mg.subsample = m.value("subsample", d.mg.subsample);
        d.mg.n_samples = m.value("n_samples", d.mg.n_samples);
        d.mg.initial_value = m.value("initial_value", d.mg.initial_value);
        d.mg.transient_time = m.value("transient_time", d.mg.transient_time);
    }
    if (j.contains("synth_load")) {
        const Json& s = j.at("synth_load");
        d.synth.n = s.value("n", d.synth.n);
        d.synth.seed = s.value("seed", d.synth.seed);
        d.synth.daily_period = s.value("daily_period", d.synth.daily_period);
        d.synth.weekly_period = s.value("weekly_period", d.synth.weekly_period);
        d.synth.noise_std = s.value("noise_std", d.synth.noise_std);
        d.synth.trend = s.value("trend", d.synth.trend);
        d.synth.daily_amp = s.value("daily_amp", d.synth.daily_amp);
        d.synth.weekly_amp = s.value("weekly_amp", d.synth.weekly_amp);
        d.synth.level = s.value("level", d.synth.level);
    }
    d.csv_path = j.value("csv_path", d.csv_path);
    d.csv_column = j.value("csv_column", d.csv_column);
    d.csv_has_header = j.value("csv_has_header", d.csv_has_header);
    d.normalize = j.value("normalize", d.normalize);
    d.washout_fraction = j.value("washout_fraction", d.washout_fraction);
    d.train_fraction = j.value("train_fraction", d.train_fraction);
    d.validation_fraction = j.value("validation_fraction", d.validation_fraction);
    d.test_fraction = j.value("test_fraction", d.test_fraction);
    return d;
}

Json dataset_to_json(const DatasetSpec& d) {
    return Json{{"kind", d.kind},
                {"mackey_glass",
                 Json{{"alpha", d.mg.alpha},
                      {"beta", d.mg.beta},
                      {"gamma", d.mg.gamma},
                      {"exponent", d.mg.exponent},
                      {"dt", d.mg.dt},
                      {"subsample", d.mg.subsample},
                      {"n_samples", d.mg.n_samples},
                      {"initial_value", d.mg.initial_value},
                      {"transient_time", d.mg.transient_time}}},
                {"synth_load",
                 Json{{"n", d.synth.n},
                      {"seed", d.synth.seed},
                      {"daily_period", d.synth.daily_period},
                      {"weekly_period", d.synth.weekly_period},
                      {"noise_std", d.synth.noise_std},
                      {"trend", d.synth.trend},
                      {"daily_amp", d.synth.daily_amp},
                      {"weekly_amp", d.synth.weekly_amp},
                      {"level", d.synth.level}}},
                {"csv_path", d.csv_path},
                {"csv_column", d.csv_column},
                {"csv_has_header", d.csv_has_header},
                {"normalize", d.normalize},
                {"washout_fraction", d.washout_fraction},
                {"train_fraction", d.train_fraction},
                {"validation_fraction", d.validation_fraction},
                {"test_fraction", d.test_fraction}};
}

PruneConfig prune_from_json(const Json& j) {
    PruneConfig p;
    if (j.contains("measure")) p.measure = parse_measure(j.at("measure").get<std::string>());
    p.step = j.value("step", p.step);
    p.max_prune_fraction = j.value("max_prune_fraction", p.max_prune_fraction);
    p.recompute_each_step = j.value("recompute_each_step", p.recompute_each_step);
    p.esp_guard = j.value("esp_guard", p.esp_guard);
    p.maintain_radius = j.value("maintain_radius", p.maintain_radius);
    p.rank_by_magnitude = j.value("rank_by_magnitude", p.rank_by_magnitude);
    p.eval_stride = j.value("eval_stride", p.eval_stride);
    const std::string ms = j.value("multi_step", std::string("free_run"));
    if (ms == "direct") {
        p.multi_step = MultiStepMode::kDirect;
    } else if (ms == "free_run") {
        p.multi_step = MultiStepMode::kFreeRun;
    } else {
        throw std::invalid_argument("prune config: unknown multi_step '" + ms + "'");
    }
    const std::string mode = j.value("horizon_mode", std::string("final_step"));
    if (mode == "final_step") {
        p.horizon_mode = HorizonMode::kFinalStep;
    } else if (mode == "trajectory") {
        p.horizon_mode = HorizonMode::kTrajectory;
    } else {
        throw std::invalid_argument("prune config: unknown horizon_mode '" + mode + "'");
    }
    return p;
}

Json prune_to_json(const PruneConfig& p) {
    return Json{{"measure", measure_name(p.measure)},
                {"step", p.step},
                {"max_prune_fraction", p.max_prune_fraction},
                {"recompute_each_step", p.recompute_each_step},
                {"esp_guard", p.esp_guard},
                {"maintain_radius", p.maintain_radius},
                {"rank_by_magnitude", p.rank_by_magnitude},
                {"eval_stride", p.eval_stride},
                {"multi_step", p.multi_step == MultiStepMode::kDirect ? "direct" : "free_run"},
                {"horizon_mode",
                 p.horizon_mode == HorizonMode::kFinalStep ? "final_step" : "trajectory"}};
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
    ExperimentConfig cfg;
    if (j.contains("dataset")) cfg.dataset = dataset_from_json(j.at("dataset"));
    if (j.contains("hyperparams")) cfg.hp = hyperparams_from_json(j.at("hyperparams"));
    if (j.contains("prune")) cfg.prune = prune_from_json(j.at("prune"));
    if (j.contains("reservoir_sizes"))
        cfg.reservoir_sizes = j.at("reservoir_sizes").get<std::vector<std::size_t>>();
    if (j.contains("measures")) {
        cfg.measures.clear();
        for (const Json& m : j.at("measures")) cfg.measures.push_back(parse_measure(m.get<std::string>()));
    }
    cfg.n_reps = j.value("n_reps", cfg.n_reps);
    cfg.base_seed = j.value("base_seed", cfg.base_seed);
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    cfg.emit_figures = j.value("emit_figures", cfg.emit_figures);
    cfg.validate();
    return cfg;
}

Json config_to_json(const ExperimentConfig& cfg) {
    Json measures = Json::array();
    for (Measure m : cfg.measures) measures.push_back(measure_name(m));
    return Json{{"dataset", dataset_to_json(cfg.dataset)},
                {"hyperparams", hyperparams_to_json(cfg.hp)},
                {"prune", prune_to_json(cfg.prune)},
                {"reservoir_sizes", cfg.reservoir_sizes},
                {"measures", measures},
                {"n_reps", cfg.n_reps},
                {"base_seed", cfg.base_seed},
                {"output_dir", cfg.output_dir},
                {"emit_figures", cfg.emit_figures}};
}

void apply_override(Json& config, const std::string& key_value) {
    const auto eq = key_value.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("override must look like path.to.key=value, got '" + key_value +
                                    "'");
    const std::string path = key_value.substr(0, eq);
    const std::string raw = key_value.substr(eq + 1);

    Json* node = &config;
    std::stringstream ss(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) node = &(*node)[parts[i]];

    Json value;
    try {
        value = Json::parse(raw);
    } catch (const Json::parse_error&) {
        value = raw;  // bare strings: --set dataset.kind=csv
    }
    (*node)[parts.back()] = value;
}

SeriesDataset build_dataset(const DatasetSpec& spec) {
    SeriesDataset ds;
    if (spec.kind == "mackey-glass") {
        ds = mackey_glass(spec.mg);
    } else if (spec.kind == "synth-load") {
        ds = synth_load(spec.synth);
    } else if (spec.kind == "csv") {
        ds = load_csv(spec.csv_path, spec.csv_column, spec.csv_has_header);
    } else {
        throw std::invalid_argument("build_dataset: unknown kind '" + spec.kind + "'");
    }
    ds = with_splits(std::move(ds),
                     make_splits(ds.values.size(), spec.washout_fraction, spec.train_fraction,
                                 spec.validation_fraction, spec.test_fraction));
    if (spec.normalize) ds = normalize(ds);
    return ds;
}

std::string curve_filename(std::size_t size, Measure measure, std::uint64_t seed) {
    return "curve_" + std::to_string(size) + "_" + measure_name(measure) + "_" +
           std::to_string(seed) + ".csv";
}

namespace {

void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("run_experiment: cannot open " + path);
    out << "size,measure,n_reps,baseline_test_nrmse_mean,baseline_test_nrmse_std,"
           "optimal_n_mean,optimal_test_nrmse_mean,optimal_test_nrmse_std,"
           "reduced_error_abs,reduced_error_pct,smallest_n_mean\n";
    for (const SummaryRow& r : rows) {
        out << r.size << "," << measure_name(r.measure) << "," << r.n_reps << ","
            << format_double(r.baseline_test.mean) << "," << format_double(r.baseline_test.std)
            << "," << format_double(r.optimal_n_mean) << "," << format_double(r.optimal_test.mean)
            << "," << format_double(r.optimal_test.std) << "," << format_double(r.reduced_error_abs)
            << "," << format_double(r.reduced_error_pct) << ","
            << format_double(r.smallest_n_mean) << "\n";
    }
    if (!out) throw std::runtime_error("run_experiment: write failed for " + path);
}

Json summary_to_json(const std::vector<SummaryRow>& rows) {
    Json arr = Json::array();
    for (const SummaryRow& r : rows) {
        arr.push_back(Json{{"size", r.size},
                           {"measure", measure_name(r.measure)},
                           {"n_reps", r.n_reps},
                           {"baseline_test_nrmse",
                            Json{{"mean", r.baseline_test.mean},
                                 {"std", r.baseline_test.std},
                                 {"min", r.baseline_test.min},
                                 {"max", r.baseline_test.max}}},
                           {"optimal_test_nrmse",
                            Json{{"mean", r.optimal_test.mean},
                                 {"std", r.optimal_test.std},
                                 {"min", r.optimal_test.min},
                                 {"max", r.optimal_test.max}}},
                           {"optimal_n_mean", r.optimal_n_mean},
                           {"smallest_n_mean", r.smallest_n_mean},
                           {"reduced_error_abs", r.reduced_error_abs},
                           {"reduced_error_pct", r.reduced_error_pct}});
    }
    return arr;
}

void print_summary_table(const std::vector<SummaryRow>& rows) {
    std::cout << "\nMeasure   Initial N (NRMSE)      Optimal N (NRMSE)      Reduced Error (%)   "
                 "Smallest N\n";
    for (const SummaryRow& r : rows) {
        std::ostringstream line;
        line << measure_name(r.measure);
        while (line.str().size() < 10) line << ' ';
        line << "N=" << r.size << " (" << format_fixed(r.baseline_test.mean, 6) << ")   ";
        line << "N=" << format_fixed(r.optimal_n_mean, 1) << " ("
             << format_fixed(r.optimal_test.mean, 6) << ")   ";
        if (r.reduced_error_abs > 0.0) {
            line << format_fixed(r.reduced_error_abs, 6) << " (" << format_fixed(r.reduced_error_pct, 1)
                 << "%)   ";
        } else {
            line << "--   ";
        }
        line << "N=" << format_fixed(r.smallest_n_mean, 1);
        std::cout << line.str() << "\n";
    }
    std::cout << std::endl;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto t_start = std::chrono::steady_clock::now();
    fs::create_directories(cfg.output_dir);

    const SeriesDataset data = build_dataset(cfg.dataset);

    struct Task {
        std::size_t size;
        Measure measure;
        std::size_t rep;
    };
    std::vector<Task> tasks;
    for (std::size_t size : cfg.reservoir_sizes)
        for (Measure m : cfg.measures)
            for (std::size_t rep = 0; rep < cfg.n_reps; ++rep) tasks.push_back({size, m, rep});

    std::vector<PruneCurve> curves(tasks.size());
    std::vector<bool> ok(tasks.size(), false);
    std::vector<std::string> errors(tasks.size());

    // Replicas own all their mutable state; the loop is safe to run on a
    // worker pool and results merge in deterministic task order below.
#pragma omp parallel for schedule(dynamic)
    for (long long ti = 0; ti < static_cast<long long>(tasks.size()); ++ti) {
        const Task& task = tasks[static_cast<std::size_t>(ti)];
        try {
            HyperParams hp = cfg.hp;
            hp.n_reservoir = task.size;
            hp.seed = cfg.base_seed + task.rep;
            PruneConfig prune = cfg.prune;
            prune.measure = task.measure;
            const ReservoirWeights rw = generate_reservoir(hp);
            curves[static_cast<std::size_t>(ti)] = prune_sweep(rw, data, prune, hp);
            ok[static_cast<std::size_t>(ti)] = true;
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(ti)] = e.what();
        }
    }

    ExperimentResult result;
    for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
        if (!ok[ti]) {
            ++result.failures;
            std::cerr << "replica failed (size=" << tasks[ti].size << ", measure="
                      << measure_name(tasks[ti].measure) << ", rep=" << tasks[ti].rep
                      << "): " << errors[ti] << "\n";
        }
    }
    if (result.failures == tasks.size())
        throw std::runtime_error("run_experiment: every replica failed");

    // Persist per-replica curves.
    for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
        if (!ok[ti]) continue;
        const Task& task = tasks[ti];
        const std::string name = curve_filename(task.size, task.measure, cfg.base_seed + task.rep);
        const std::string path = (fs::path(cfg.output_dir) / name).string();
        write_curve_csv(curves[ti], path);
        result.curve_files.push_back(path);
    }
    result.curves = curves;

    // Aggregate (size, measure) cells across seeds.
    for (std::size_t size : cfg.reservoir_sizes) {
        for (Measure m : cfg.measures) {
            std::vector<Metric> base_metrics, opt_metrics;
            double opt_n_sum = 0.0, smallest_sum = 0.0;
            for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
                if (!ok[ti] || tasks[ti].size != size || tasks[ti].measure != m) continue;
                const PruneCurve& c = curves[ti];
                base_metrics.push_back({c.baseline_test_nrmse, 1});
                opt_metrics.push_back({c.optimal_test_nrmse, 1});
                opt_n_sum += static_cast<double>(c.optimal_n);
                smallest_sum += static_cast<double>(c.smallest_n);
            }
            if (base_metrics.empty()) continue;
            SummaryRow row;
            row.size = size;
            row.measure = m;
            row.n_reps = base_metrics.size();
            row.baseline_test = aggregate(base_metrics);
            row.optimal_test = aggregate(opt_metrics);
            row.optimal_n_mean = opt_n_sum / static_cast<double>(base_metrics.size());
            row.smallest_n_mean = smallest_sum / static_cast<double>(base_metrics.size());
            row.reduced_error_abs = row.baseline_test.mean - row.optimal_test.mean;
            row.reduced_error_pct =
                row.baseline_test.mean > 0.0
                    ? 100.0 * row.reduced_error_abs / row.baseline_test.mean
                    : 0.0;
            result.summary.push_back(row);
        }
    }

    write_summary_csv(result.summary, (fs::path(cfg.output_dir) / "summary.csv").string());
    save_json(summary_to_json(result.summary),
              (fs::path(cfg.output_dir) / "summary.json").string());

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    Json manifest{{"config", config_to_json(cfg)},
                  {"version", "0.1.0"},
                  {"wall_clock_seconds", wall},
                  {"curve_files", result.curve_files},
                  {"failures", result.failures}};
    save_json(manifest, (fs::path(cfg.output_dir) / "manifest.json").string());

    if (cfg.emit_figures && !result.curve_files.empty()) {
        fs::create_directories(fs::path(cfg.output_dir) / "figures");
        run_plot(result.curve_files,
                 (fs::path(cfg.output_dir) / "figures" / "curves.svg").string());
    }

    print_summary_table(result.summary);
    return result;
}

void run_generate(const DatasetSpec& spec, const std::string& out_path) {
    DatasetSpec raw = spec;
    raw.normalize = false;  // export raw signal units; normalization is a run-time step
    const SeriesDataset ds = build_dataset(raw);
    if (const fs::path parent = fs::path(out_path).parent_path(); !parent.empty())
        fs::create_directories(parent);
    write_series_csv(ds, out_path);

    double lo = ds.values[0], hi = ds.values[0];
    for (double v : ds.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::cout << "wrote " << ds.values.size() << " samples (" << ds.name << ") to " << out_path
              << "\n  min " << format_double(lo) << ", max " << format_double(hi)
              << "\n  splits: washout [" << ds.splits.washout.begin << "," << ds.splits.washout.end
              << "), train [" << ds.splits.train.begin << "," << ds.splits.train.end << "), val ["
              << ds.splits.validation.begin << "," << ds.splits.validation.end << "), test ["
              << ds.splits.test.begin << "," << ds.splits.test.end << ")\n";
}

void run_plot(const std::vector<std::string>& curve_csvs, const std::string& out_svg) {
    if (curve_csvs.empty()) throw std::invalid_argument("run_plot: no curve files");

    struct Key {
        std::size_t size;
        std::string measure;
        bool operator<(const Key& o) const {
            return size != o.size ? size < o.size : measure < o.measure;
        }
    };
    // (size, measure) → per-step test errors across seeds, indexed by step.
    std::map<Key, std::vector<std::vector<double>>> cell_curves;
    std::map<Key, std::vector<double>> cell_pruned;
    std::map<std::size_t, std::vector<double>> baselines;

    for (const std::string& file : curve_csvs) {
        const std::string stem = fs::path(file).stem().string();
        if (stem.rfind("curve_", 0) != 0)
            throw std::invalid_argument("run_plot: unexpected curve filename " + file);
        const std::string rest = stem.substr(6);  // <size>_<measure>_<seed>
        const auto first = rest.find('_');
        const auto last = rest.rfind('_');
        if (first == std::string::npos || last == first)
            throw std::invalid_argument("run_plot: unexpected curve filename " + file);
        Key key{std::stoul(rest.substr(0, first)), rest.substr(first + 1, last - first - 1)};

        const PruneCurve curve = read_curve_csv(file);
        baselines[key.size].push_back(curve.baseline_test_nrmse);
        auto& store = cell_curves[key];
        auto& pruned = cell_pruned[key];
        std::vector<double> curr_pruned{0.0};
        std::vector<double> errs{curve.baseline_test_nrmse};
        for (const PruneStep& st : curve.steps) {
            if (!st.ok) continue;
            curr_pruned.push_back(static_cast<double>(curve.original_n - st.n_remaining));
            errs.push_back(st.test_nrmse);
        }
        if (pruned.empty() || curr_pruned.size() > pruned.size()) pruned = curr_pruned;
        store.push_back(std::move(errs));
    }

    // One panel per reservoir size, one polyline per measure (seed mean).
    std::vector<std::size_t> sizes;
    for (const auto& [key, unused] : cell_curves)
        if (sizes.empty() || sizes.back() != key.size) sizes.push_back(key.size);

    std::vector<SvgPanel> panels;
    for (std::size_t size : sizes) {
        SvgPanel panel;
        panel.title = "N = " + std::to_string(size);
        panel.x_label = "pruned nodes";
        panel.y_label = "test NRMSE";
        const auto& bl = baselines[size];
        panel.has_baseline = true;
        panel.baseline = 0.0;
        for (double b : bl) panel.baseline += b;
        panel.baseline /= static_cast<double>(bl.size());

        for (const auto& [key, seed_curves] : cell_curves) {
            if (key.size != size) continue;
            SvgSeries series;
            series.label = key.measure;
            const std::vector<double>& pruned = cell_pruned[key];
            for (std::size_t i = 0; i < pruned.size(); ++i) {
                double sum = 0.0;
                std::size_t count = 0;
                for (const auto& one : seed_curves) {
                    if (i < one.size()) {
                        sum += one[i];
                        ++count;
                    }
                }
                if (count == 0) continue;
                series.x.push_back(pruned[i]);
                series.y.push_back(sum / static_cast<double>(count));
            }
            panel.series.push_back(std::move(series));
        }
        panels.push_back(std::move(panel));
    }

    if (const fs::path parent = fs::path(out_svg).parent_path(); !parent.empty())
        fs::create_directories(parent);
    write_svg_panels(panels, out_svg);
    std::cout << "wrote " << panels.size() << " panel(s) to " << out_svg << "\n";
}

}  // namespace esn
