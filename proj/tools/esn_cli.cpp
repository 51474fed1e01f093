// Experiment CLI: generate datasets, run prune sweeps, plot curves, dump
// centrality scores. Exit codes: 0 success, 1 config/validation error,
// 2 runtime failure.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "esn/experiment.hpp"
#include "esn/io.hpp"

namespace {

int run_cmd(const std::string& config_path, const std::vector<std::string>& overrides) {
    esn::Json raw = esn::load_json(config_path);
    for (const std::string& kv : overrides) esn::apply_override(raw, kv);
    esn::ExperimentConfig cfg = esn::config_from_json(raw);
    if (const char* env = std::getenv("ESN_OUTPUT_DIR"); env != nullptr && *env != '\0')
        cfg.output_dir = env;
    const esn::ExperimentResult result = esn::run_experiment(cfg);
    if (result.failures > 0) {
        std::cerr << result.failures << " replica(s) failed\n";
        return 2;
    }
    return 0;
}

int centrality_cmd(const std::string& reservoir_path, const std::string& measure,
                   const std::string& out_path) {
    const esn::Json j = esn::load_json(reservoir_path);
    auto [rw, hp] = esn::reservoir_from_json(j);
    std::vector<esn::CentralityScores> scores;
    if (measure == "all") {
        for (esn::Measure m : esn::all_measures()) scores.push_back(esn::centrality(rw.w, m));
    } else {
        scores.push_back(esn::centrality(rw.w, esn::parse_measure(measure)));
    }
    esn::write_scores_csv(scores, out_path);
    std::cout << "wrote " << scores.size() << " measure(s) x " << rw.size() << " nodes to "
              << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Echo state network pruning experiments"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a dataset and write it as CSV");
    std::string gen_kind = "mackey-glass";
    std::size_t gen_n = 10000;
    std::uint64_t gen_seed = 1;
    std::string gen_out = "dataset.csv";
    std::string gen_csv_path, gen_csv_column = "value";
    bool gen_no_header = false;
    gen->add_option("--dataset", gen_kind, "mackey-glass | synth-load | csv")
        ->check(CLI::IsMember({"mackey-glass", "synth-load", "csv"}));
    gen->add_option("-n,--samples", gen_n, "number of samples");
    gen->add_option("--seed", gen_seed, "seed (synth-load only)");
    gen->add_option("-o,--out", gen_out, "output CSV path");
    gen->add_option("--csv-path", gen_csv_path, "input file for --dataset csv");
    gen->add_option("--csv-column", gen_csv_column, "column name or index");
    gen->add_flag("--no-header", gen_no_header, "input CSV has no header row");

    // run
    auto* run = app.add_subcommand("run", "Run the prune-sweep experiment grid from a config file");
    std::string run_config;
    std::vector<std::string> run_overrides;
    run->add_option("config", run_config, "JSON experiment config")->required();
    run->add_option("--set", run_overrides, "override config values, e.g. --set prune.step=1");

    // plot
    auto* plot = app.add_subcommand("plot", "Render prune-curve CSVs as an SVG figure");
    std::vector<std::string> plot_files;
    std::string plot_out = "curves.svg";
    plot->add_option("curves", plot_files, "curve_*.csv files")->required();
    plot->add_option("-o,--out", plot_out, "output SVG path");

    // centrality
    auto* cent = app.add_subcommand("centrality", "Dump centrality scores for a serialized reservoir");
    std::string cent_reservoir, cent_measure = "all", cent_out = "scores.csv";
    cent->add_option("reservoir", cent_reservoir, "reservoir JSON file")->required();
    cent->add_option("--measure", cent_measure, "c_in | c_out | c1 | c2 | c3 | all");
    cent->add_option("-o,--out", cent_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            esn::DatasetSpec spec;
            spec.kind = gen_kind;
            spec.mg.n_samples = gen_n;
            spec.synth.n = gen_n;
            spec.synth.seed = gen_seed;
            spec.csv_path = gen_csv_path;
            spec.csv_column = gen_csv_column;
            spec.csv_has_header = !gen_no_header;
            esn::run_generate(spec, gen_out);
            return 0;
        }
        if (run->parsed()) return run_cmd(run_config, run_overrides);
        if (plot->parsed()) {
            esn::run_plot(plot_files, plot_out);
            return 0;
        }
        if (cent->parsed()) return centrality_cmd(cent_reservoir, cent_measure, cent_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
