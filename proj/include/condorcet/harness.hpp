#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "condorcet/complexity.hpp"
#include "condorcet/matrix.hpp"

namespace condorcet {

inline constexpr const char* kToolkitVersion = "condorcet 0.1.0";
inline constexpr const char* kCsvHeader =
    "instance_id,algorithm,param,replicate,seed,recommended,correct,certified,budget,wall_ms";

enum class Algorithm { FbCwi, FcCwi, BaselineRowCertify };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

enum class SweepParam { T, Delta };

struct InstanceSpec {
    // either a generator with parameters or a matrix file path
    std::string generator;          // "total_order" | "block_minimax" | "random_cw" | "" for file
    std::string file;               // matrix JSON path when generator is empty
    int k = 0;
    std::vector<double> deltas;     // explicit per-arm values (index 0 is the winner slot)
    double delta_uniform = 0.0;     // shorthand: all suboptimal gaps equal
    std::vector<int> sparsities;
    int sparsity_uniform = 0;
    double epsilon = 0.0;
    double lo = 0.0, hi = 0.0;      // random_cw range
    std::uint64_t seed = 0;         // random_cw seed
    std::string id;                 // instance label for reports
};

struct ExperimentConfig {
    InstanceSpec instance;
    Algorithm algorithm = Algorithm::FcCwi;
    SweepParam sweep_param = SweepParam::Delta;
    std::vector<double> sweep;      // T values (integral) or delta values
    int replicates = 1;
    std::uint64_t base_seed = 0;
    double delta = 0.1;             // confidence used when sweeping T, and for summaries
    double c_stop = 4.0;
    std::int64_t testcw_cap = -1;
    std::string out_csv;
    std::string out_json;

    void validate_config() const;   // throws ConfigError
};

struct RunRecord {
    std::string instance_id;
    Algorithm algorithm = Algorithm::FcCwi;
    int param_index = 0;
    double param = 0.0;
    int replicate = 0;
    std::uint64_t seed = 0;
    int recommended = 0;            // 1-based; 0 marks an error row
    bool correct = false;
    bool certified = false;
    std::int64_t budget = 0;
    double wall_ms = 0.0;
};

struct RunTable {
    std::vector<RunRecord> records;
};

struct SummaryRow {
    std::string instance_id;
    Algorithm algorithm = Algorithm::FcCwi;
    double param = 0.0;
    int n = 0;
    double error_rate = 0.0;
    double clopper_pearson_95_upper = 0.0;
    std::int64_t budget_median = 0;
    std::int64_t budget_q90 = 0;
    std::int64_t budget_quantile_1_minus_delta = 0;
    // instance-level reference values, repeated for side-by-side reading
    double h_cw = 0.0;
    double rhs_min = 0.0;
    double lb_certify = 0.0;
    double lb_explore = 0.0;
};

struct Summary {
    std::vector<SummaryRow> rows;
    HardnessProfile profile;        // instance-level reference quantities
    double delta = 0.0;
};

GapMatrix build_instance(const InstanceSpec& spec);
std::uint64_t derive_seed(std::uint64_t base_seed, int param_index, int replicate);

// Runs the full sweep x replicates grid over a worker pool (CONDORCET_THREADS
// overrides the width); the table is ordered by (param, replicate), so
// parallel and serial runs emit identical files.
RunTable run_experiment(const ExperimentConfig& config);

Summary summarize(const RunTable& table, const GapMatrix& matrix, double delta);

void emit(const RunTable& table, const Summary& summary,
          const ExperimentConfig& config, const std::string& csv_path,
          const std::string& json_path);

std::string table_to_csv(const RunTable& table);
std::string summary_to_json(const Summary& summary, const ExperimentConfig& config);

ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config_json(const std::string& path);
RunTable parse_table_csv(const std::string& text);

// exact one-sided binomial upper confidence bound at level `confidence`
double clopper_pearson_upper(int failures, int n, double confidence = 0.95);
// nearest-rank quantile of a sorted-ascending vector, q in (0, 1]
std::int64_t nearest_rank(const std::vector<std::int64_t>& sorted, double q);

// shortest round-trip decimal formatting (CSV and JSON determinism)
std::string format_double(double v);

int worker_count();
// order-preserving parallel map of f over [0, n)
void parallel_for(int n, const std::function<void(int)>& f);

std::string hardness_profile_to_json(const HardnessProfile& p);

} // namespace condorcet
