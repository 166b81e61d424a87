#include "condorcet/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <tuple>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "condorcet/errors.hpp"
#include "condorcet/generators.hpp"
#include "condorcet/identify.hpp"
#include "condorcet/oracle.hpp"

namespace condorcet {

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::FbCwi: return "fb_cwi";
        case Algorithm::FcCwi: return "fc_cwi";
        case Algorithm::BaselineRowCertify: return "baseline_row_certify";
    }
    return "unknown";
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "fb_cwi") return Algorithm::FbCwi;
    if (name == "fc_cwi") return Algorithm::FcCwi;
    if (name == "baseline_row_certify") return Algorithm::BaselineRowCertify;
    throw ConfigError("unknown algorithm: " + name);
}

std::string format_double(double v) {
    if (v == static_cast<double>(static_cast<long long>(v)) &&
        std::abs(v) < 9.0e15) {
        return std::to_string(static_cast<long long>(v));
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void ExperimentConfig::validate_config() const {
    if (replicates < 1) throw ConfigError("replicates must be >= 1");
    if (sweep.empty()) throw ConfigError("sweep must be nonempty");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
    if (sweep_param == SweepParam::T) {
        for (const double t : sweep)
            if (t < 1.0 || t != std::floor(t)) throw ConfigError("T sweep values must be positive integers");
    } else {
        for (const double d : sweep)
            if (!(d > 0.0 && d < 1.0)) throw ConfigError("delta sweep values must lie in (0, 1)");
    }
    if (algorithm == Algorithm::FbCwi && sweep_param != SweepParam::T)
        throw ConfigError("fb_cwi sweeps over T");
    if (algorithm != Algorithm::FbCwi && sweep_param != SweepParam::Delta)
        throw ConfigError("fc_cwi and baseline_row_certify sweep over delta");
    if (algorithm == Algorithm::FcCwi || algorithm == Algorithm::BaselineRowCertify) {
        for (const double d : sweep)
            if (algorithm == Algorithm::FcCwi && d >= 1.0 / 6.0)
                throw ConfigError("fc_cwi requires delta < 1/6");
    }
}

GapMatrix build_instance(const InstanceSpec& spec) {
    if (!spec.file.empty()) return load_matrix_json(spec.file);
    if (spec.generator == "total_order" || spec.generator == "block_minimax") {
        std::vector<double> deltas = spec.deltas;
        if (deltas.empty()) {
            if (spec.k < 2) throw ConfigError("instance: k must be >= 2");
            deltas.assign(spec.k, spec.delta_uniform);
            deltas[0] = 0.0;
        }
        if (spec.generator == "total_order") return gen_total_order(deltas);
        std::vector<int> sparsities = spec.sparsities;
        if (sparsities.empty()) {
            sparsities.assign(deltas.size(), spec.sparsity_uniform);
            sparsities[0] = 0;
        }
        return gen_block_minimax(deltas, sparsities, spec.epsilon);
    }
    if (spec.generator == "random_cw") {
        Rng rng(spec.seed);
        return gen_random_cw(spec.k, spec.lo, spec.hi, rng);
    }
    throw ConfigError("instance: unknown generator \"" + spec.generator + "\"");
}

std::uint64_t derive_seed(std::uint64_t base_seed, int param_index, int replicate) {
    return mix64(base_seed, static_cast<std::uint64_t>(param_index),
                 static_cast<std::uint64_t>(replicate));
}

int worker_count() {
    if (const char* env = std::getenv("CONDORCET_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(int n, const std::function<void(int)>& f) {
    const int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

RunTable run_experiment(const ExperimentConfig& config) {
    config.validate_config();
    const GapMatrix matrix = build_instance(config.instance);
    const auto report = validate(matrix);
    if (!report.cw) throw NoCondorcetWinnerError("instance has no strict Condorcet winner");
    const int true_cw = *report.cw;
    const std::string instance_id =
        config.instance.id.empty() ? (config.instance.generator.empty()
                                          ? std::string("file")
                                          : config.instance.generator)
                                   : config.instance.id;

    if (config.algorithm == Algorithm::FbCwi) {
        // fail fast instead of throwing inside a worker thread
        const int k = matrix.k();
        const double floor_t = 4.0 * k * std::log(k) / std::log(8.0 / 7.0);
        for (const double t : config.sweep)
            if (t < floor_t)
                throw ConfigError("fb_cwi sweep value " + format_double(t) +
                                  " is below the budget floor " + format_double(floor_t));
    }

    const int n_params = static_cast<int>(config.sweep.size());
    const int n_jobs = n_params * config.replicates;

    std::set<std::uint64_t> seen;
    for (int p = 0; p < n_params; ++p)
        for (int r = 0; r < config.replicates; ++r)
            if (!seen.insert(derive_seed(config.base_seed, p, r)).second)
                throw ConfigError("derived seed collision; choose another base_seed");

    RunTable table;
    table.records.resize(n_jobs);
    std::mutex failure_mutex;
    std::exception_ptr failure;
    parallel_for(n_jobs, [&](int job) {
        const int p = job / config.replicates;
        const int r = job % config.replicates;
        const double param = config.sweep[p];

        RunRecord rec;
        rec.instance_id = instance_id;
        rec.algorithm = config.algorithm;
        rec.param_index = p;
        rec.param = param;
        rec.replicate = r;
        rec.seed = derive_seed(config.base_seed, p, r);

        DuelOracle oracle(matrix);
        Rng rng(rec.seed);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            int recommended = -1;
            bool certified = false;
            if (config.algorithm == Algorithm::FbCwi) {
                FbConfig cfg;
                cfg.t_budget = static_cast<std::int64_t>(param);
                cfg.delta = config.delta;
                cfg.c_stop = config.c_stop;
                cfg.testcw_cap = config.testcw_cap;
                const auto res = fb_cwi(oracle, cfg, rng);
                recommended = res.recommended;
                certified = res.certified;
            } else if (config.algorithm == Algorithm::FcCwi) {
                const auto res = fc_cwi(oracle, param, config.c_stop, rng);
                recommended = res.final.recommended;
                certified = res.final.certified;
            } else {
                const auto res = baseline_row_certify(oracle, param, rng);
                recommended = res.recommended;
                certified = res.certified;
            }
            rec.recommended = recommended + 1;
            rec.correct = recommended == true_cw;
            rec.certified = certified;
        } catch (const NonterminationError&) {
            rec.recommended = 0;  // error row, kept so the grid stays complete
            rec.correct = false;
            rec.certified = false;
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            rec.recommended = 0;
            rec.correct = false;
            rec.certified = false;
        }
        rec.budget = static_cast<std::int64_t>(oracle.total());
        const auto t1 = std::chrono::steady_clock::now();
        rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        table.records[job] = std::move(rec);
    });
    if (failure) std::rethrow_exception(failure);

    std::sort(table.records.begin(), table.records.end(),
              [](const RunRecord& a, const RunRecord& b) {
                  if (a.param_index != b.param_index) return a.param_index < b.param_index;
                  return a.replicate < b.replicate;
              });
    return table;
}

double clopper_pearson_upper(int failures, int n, double confidence) {
    if (n <= 0) throw InvalidParameterError("clopper_pearson_upper: n must be positive");
    if (failures < 0 || failures > n)
        throw InvalidParameterError("clopper_pearson_upper: failures out of range");
    if (failures == n) return 1.0;
    const double alpha = 1.0 - confidence;

    // P(Bin(n, p) <= failures), evaluated in log space for stability
    const auto log_cdf = [&](double p) {
        if (p <= 0.0) return 0.0;
        if (p >= 1.0) return -std::numeric_limits<double>::infinity();
        const double lp = std::log(p), lq = std::log1p(-p);
        double max_term = -std::numeric_limits<double>::infinity();
        std::vector<double> terms(failures + 1);
        for (int x = 0; x <= failures; ++x) {
            const double lc = std::lgamma(n + 1.0) - std::lgamma(x + 1.0) -
                              std::lgamma(n - x + 1.0);
            terms[x] = lc + x * lp + (n - x) * lq;
            max_term = std::max(max_term, terms[x]);
        }
        double acc = 0.0;
        for (const double t : terms) acc += std::exp(t - max_term);
        return max_term + std::log(acc);
    };

    double lo = static_cast<double>(failures) / n;
    double hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (log_cdf(mid) > std::log(alpha))
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

std::int64_t nearest_rank(const std::vector<std::int64_t>& sorted, double q) {
    if (sorted.empty()) throw InvalidParameterError("nearest_rank: empty sample");
    if (!(q > 0.0 && q <= 1.0)) throw InvalidParameterError("nearest_rank: q must lie in (0, 1]");
    const auto n = static_cast<std::int64_t>(sorted.size());
    auto rank = static_cast<std::int64_t>(std::ceil(q * static_cast<double>(n)));
    rank = std::max<std::int64_t>(1, std::min(rank, n));
    return sorted[rank - 1];
}

Summary summarize(const RunTable& table, const GapMatrix& matrix, double delta) {
    if (table.records.empty()) throw InvalidParameterError("summarize: empty table");
    Summary summary;
    summary.delta = delta;
    summary.profile = hardness_profile(matrix, delta);

    // group by (instance, algorithm, param) preserving first appearance
    std::vector<std::tuple<std::string, Algorithm, double>> keys;
    for (const auto& rec : table.records) {
        const auto key = std::make_tuple(rec.instance_id, rec.algorithm, rec.param);
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    }
    for (const auto& key : keys) {
        SummaryRow row;
        row.instance_id = std::get<0>(key);
        row.algorithm = std::get<1>(key);
        row.param = std::get<2>(key);
        std::vector<std::int64_t> budgets;
        int failures = 0;
        for (const auto& rec : table.records) {
            if (std::make_tuple(rec.instance_id, rec.algorithm, rec.param) != key) continue;
            ++row.n;
            if (!rec.correct) ++failures;
            budgets.push_back(rec.budget);
        }
        std::sort(budgets.begin(), budgets.end());
        row.error_rate = static_cast<double>(failures) / row.n;
        row.clopper_pearson_95_upper = clopper_pearson_upper(failures, row.n);
        row.budget_median = nearest_rank(budgets, 0.5);
        row.budget_q90 = nearest_rank(budgets, 0.9);
        row.budget_quantile_1_minus_delta = nearest_rank(budgets, 1.0 - delta);
        row.h_cw = summary.profile.h_cw;
        row.rhs_min = summary.profile.rhs_min;
        row.lb_certify = summary.profile.lb_certify;
        row.lb_explore = summary.profile.lb_explore;
        summary.rows.push_back(std::move(row));
    }
    return summary;
}

std::string table_to_csv(const RunTable& table) {
    std::ostringstream out;
    out << kCsvHeader << "\n";
    for (const auto& r : table.records) {
        out << r.instance_id << ',' << algorithm_name(r.algorithm) << ','
            << format_double(r.param) << ',' << r.replicate << ',' << r.seed << ','
            << r.recommended << ',' << (r.correct ? 1 : 0) << ','
            << (r.certified ? 1 : 0) << ',' << r.budget << ','
            << format_double(r.wall_ms) << "\n";
    }
    return out.str();
}

RunTable parse_table_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("CSV: empty input");
    if (line != kCsvHeader) throw ConfigError("CSV: unexpected header");
    RunTable table;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 10)
            throw ConfigError("CSV: bad record on line " + std::to_string(line_no));
        RunRecord rec;
        rec.instance_id = fields[0];
        rec.algorithm = algorithm_from_name(fields[1]);
        rec.param = std::stod(fields[2]);
        rec.replicate = std::stoi(fields[3]);
        rec.seed = std::stoull(fields[4]);
        rec.recommended = std::stoi(fields[5]);
        rec.correct = fields[6] == "1";
        rec.certified = fields[7] == "1";
        rec.budget = std::stoll(fields[8]);
        rec.wall_ms = std::stod(fields[9]);
        table.records.push_back(std::move(rec));
    }
    return table;
}

namespace {

nlohmann::ordered_json instance_to_json(const InstanceSpec& spec) {
    nlohmann::ordered_json j;
    if (!spec.file.empty()) {
        j["file"] = spec.file;
    } else {
        j["generator"] = spec.generator;
        if (spec.k > 0) j["k"] = spec.k;
        if (!spec.deltas.empty()) j["deltas"] = spec.deltas;
        if (spec.delta_uniform > 0.0) j["delta"] = spec.delta_uniform;
        if (!spec.sparsities.empty()) j["sparsities"] = spec.sparsities;
        if (spec.sparsity_uniform > 0) j["sparsity"] = spec.sparsity_uniform;
        if (spec.epsilon > 0.0) j["epsilon"] = spec.epsilon;
        if (spec.hi > 0.0) {
            j["lo"] = spec.lo;
            j["hi"] = spec.hi;
            j["seed"] = spec.seed;
        }
    }
    if (!spec.id.empty()) j["id"] = spec.id;
    return j;
}

nlohmann::ordered_json profile_json(const HardnessProfile& p) {
    nlohmann::ordered_json j;
    j["h_cw"] = p.h_cw;
    nlohmann::ordered_json s = nlohmann::ordered_json::array();
    for (const int v : p.s_star) s.push_back(v);
    j["s_star"] = s;
    j["h_certify"] = p.h_certify;
    j["h_explore0"] = p.h_explore0;
    j["h_explore1"] = p.h_explore1;
    if (std::isnan(p.lb_certify))
        j["lb_certify"] = nullptr;
    else
        j["lb_certify"] = p.lb_certify;
    if (std::isnan(p.lb_explore))
        j["lb_explore"] = nullptr;
    else
        j["lb_explore"] = p.lb_explore;
    j["delta"] = p.delta;
    return j;
}

} // namespace

std::string hardness_profile_to_json(const HardnessProfile& p) {
    return profile_json(p).dump(2) + "\n";
}

std::string summary_to_json(const Summary& summary, const ExperimentConfig& config) {
    nlohmann::ordered_json j;
    j["toolkit"] = kToolkitVersion;
    nlohmann::ordered_json cfg;
    cfg["instance"] = instance_to_json(config.instance);
    cfg["algorithm"] = algorithm_name(config.algorithm);
    cfg["sweep"] = {{"param", config.sweep_param == SweepParam::T ? "T" : "delta"},
                    {"values", config.sweep}};
    cfg["replicates"] = config.replicates;
    cfg["base_seed"] = config.base_seed;
    cfg["delta"] = config.delta;
    cfg["c_stop"] = config.c_stop;
    if (config.testcw_cap > 0) cfg["testcw_cap"] = config.testcw_cap;
    j["config"] = cfg;
    nlohmann::ordered_json hardness_block = profile_json(summary.profile);
    hardness_block["rhs_min"] = summary.profile.rhs_min;
    j["hardness"] = hardness_block;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : summary.rows) {
        nlohmann::ordered_json row;
        row["instance_id"] = r.instance_id;
        row["algorithm"] = algorithm_name(r.algorithm);
        row["param"] = r.param;
        row["n"] = r.n;
        row["error_rate"] = r.error_rate;
        row["clopper_pearson_95_upper"] = r.clopper_pearson_95_upper;
        row["budget_median"] = r.budget_median;
        row["budget_q90"] = r.budget_q90;
        row["budget_quantile_1_minus_delta"] = r.budget_quantile_1_minus_delta;
        row["h_cw"] = r.h_cw;
        row["rhs_min"] = r.rhs_min;
        if (std::isnan(r.lb_certify)) row["lb_certify"] = nullptr; else row["lb_certify"] = r.lb_certify;
        if (std::isnan(r.lb_explore)) row["lb_explore"] = nullptr; else row["lb_explore"] = r.lb_explore;
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

void emit(const RunTable& table, const Summary& summary,
          const ExperimentConfig& config, const std::string& csv_path,
          const std::string& json_path) {
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw IoError("cannot write CSV: " + csv_path);
        out << table_to_csv(table);
        if (!out) throw IoError("write failed: " + csv_path);
    }
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw IoError("cannot write JSON: " + json_path);
        out << summary_to_json(summary, config);
        if (!out) throw IoError("write failed: " + json_path);
    }
}

namespace {

InstanceSpec parse_instance_json(const nlohmann::json& j) {
    InstanceSpec spec;
    if (j.contains("file")) {
        spec.file = j.at("file").get<std::string>();
    } else {
        spec.generator = j.value("generator", "");
        spec.k = j.value("k", 0);
        if (j.contains("deltas")) spec.deltas = j.at("deltas").get<std::vector<double>>();
        spec.delta_uniform = j.value("delta", 0.0);
        if (j.contains("sparsities"))
            spec.sparsities = j.at("sparsities").get<std::vector<int>>();
        spec.sparsity_uniform = j.value("sparsity", 0);
        spec.epsilon = j.value("epsilon", 0.0);
        spec.lo = j.value("lo", 0.0);
        spec.hi = j.value("hi", 0.0);
        spec.seed = j.value("seed", 0ULL);
    }
    spec.id = j.value("id", "");
    return spec;
}

} // namespace

ExperimentConfig parse_config_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config JSON parse error: ") + e.what());
    }
    try {
        ExperimentConfig cfg;
        cfg.instance = parse_instance_json(j.at("instance"));
        cfg.algorithm = algorithm_from_name(j.at("algorithm").get<std::string>());
        const auto& sweep = j.at("sweep");
        const std::string param = sweep.at("param").get<std::string>();
        if (param == "T")
            cfg.sweep_param = SweepParam::T;
        else if (param == "delta")
            cfg.sweep_param = SweepParam::Delta;
        else
            throw ConfigError("sweep.param must be \"T\" or \"delta\"");
        cfg.sweep = sweep.at("values").get<std::vector<double>>();
        cfg.replicates = j.value("replicates", 1);
        cfg.base_seed = j.value("base_seed", 0ULL);
        cfg.delta = j.value("delta", 0.1);
        cfg.c_stop = j.value("c_stop", 4.0);
        cfg.testcw_cap = j.value("testcw_cap", -1LL);
        cfg.out_csv = j.value("out_csv", "");
        cfg.out_json = j.value("out_json", "");
        cfg.validate_config();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config JSON: ") + e.what());
    }
}

ExperimentConfig load_config_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

} // namespace condorcet
