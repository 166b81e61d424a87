#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "condorcet/complexity.hpp"
#include "condorcet/errors.hpp"
#include "condorcet/generators.hpp"
#include "condorcet/harness.hpp"
#include "condorcet/matrix.hpp"

namespace {

using namespace condorcet;

void write_or_print(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write: " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Condorcet-winner identification toolkit"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "build an instance and write its matrix JSON");
    std::string generator = "total_order";
    int k = 8;
    double delta_uniform = 0.0;
    std::vector<double> deltas;
    int sparsity_uniform = 0;
    std::vector<int> sparsities;
    double epsilon = 0.0;
    double lo = 0.05, hi = 0.25;
    std::uint64_t seed = 1;
    std::string out_path;
    gen->add_option("--generator", generator, "total_order | block_minimax | random_cw");
    gen->add_option("--k", k, "arm count");
    gen->add_option("--delta", delta_uniform, "uniform gap for all suboptimal arms");
    gen->add_option("--deltas", deltas, "explicit per-arm gaps (first entry 0)");
    gen->add_option("--sparsity", sparsity_uniform, "uniform planted sparsity (block_minimax)");
    gen->add_option("--sparsities", sparsities, "explicit per-arm sparsities");
    gen->add_option("--epsilon", epsilon, "filler gap scale (block_minimax)");
    gen->add_option("--lo", lo, "random_cw winner-gap lower bound");
    gen->add_option("--hi", hi, "random_cw gap upper bound");
    gen->add_option("--seed", seed, "random_cw seed");
    gen->add_option("--out", out_path, "output path (stdout if omitted)");

    // hardness
    auto* hard = app.add_subcommand("hardness", "hardness quantities for a matrix");
    std::string matrix_path;
    double delta = 0.1;
    double cap_fraction = 0.125;
    std::string hard_out;
    hard->add_option("--matrix", matrix_path, "matrix JSON path")->required();
    hard->add_option("--delta", delta, "confidence parameter");
    hard->add_option("--cap-fraction", cap_fraction, "sparsity cap as a fraction of K");
    hard->add_option("--out", hard_out, "output path (stdout if omitted)");

    // run
    auto* run = app.add_subcommand("run", "run a Monte Carlo experiment from a config file");
    std::string config_path;
    run->add_option("--config", config_path, "experiment config JSON")->required();

    // summarize
    auto* summ = app.add_subcommand("summarize", "aggregate a run CSV into a summary JSON");
    std::string csv_path, summ_matrix, summ_out;
    double summ_delta = 0.1;
    summ->add_option("--csv", csv_path, "run records CSV")->required();
    summ->add_option("--matrix", summ_matrix, "matrix JSON path")->required();
    summ->add_option("--delta", summ_delta, "confidence parameter");
    summ->add_option("--out", summ_out, "output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (gen->parsed()) {
        InstanceSpec spec;
        spec.generator = generator;
        spec.k = k;
        spec.deltas = deltas;
        spec.delta_uniform = delta_uniform;
        spec.sparsities = sparsities;
        spec.sparsity_uniform = sparsity_uniform;
        spec.epsilon = epsilon;
        spec.lo = lo;
        spec.hi = hi;
        spec.seed = seed;
        const GapMatrix m = build_instance(spec);
        write_or_print(matrix_to_json(m), out_path);
        return 0;
    }
    if (hard->parsed()) {
        const GapMatrix m = load_matrix_json(matrix_path);
        const auto profile = hardness_profile(m, delta, cap_fraction);
        write_or_print(hardness_profile_to_json(profile), hard_out);
        return 0;
    }
    if (run->parsed()) {
        const ExperimentConfig cfg = load_config_json(config_path);
        const RunTable table = run_experiment(cfg);
        const GapMatrix m = build_instance(cfg.instance);
        const Summary summary = summarize(table, m, cfg.delta);
        if (cfg.out_csv.empty() && cfg.out_json.empty()) {
            std::cout << table_to_csv(table);
        } else {
            emit(table, summary, cfg, cfg.out_csv, cfg.out_json);
        }
        return 0;
    }
    if (summ->parsed()) {
        std::ifstream in(csv_path);
        if (!in) throw IoError("cannot open CSV: " + csv_path);
        std::stringstream ss;
        ss << in.rdbuf();
        const RunTable table = parse_table_csv(ss.str());
        const GapMatrix m = load_matrix_json(summ_matrix);
        ExperimentConfig echo;
        echo.instance.file = summ_matrix;
        echo.algorithm = table.records.empty() ? Algorithm::FcCwi : table.records.front().algorithm;
        echo.sweep = {summ_delta};
        echo.delta = summ_delta;
        const Summary summary = summarize(table, m, summ_delta);
        write_or_print(summary_to_json(summary, echo), summ_out);
        return 0;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const condorcet::NoCondorcetWinnerError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const condorcet::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const condorcet::InvalidParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const condorcet::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
