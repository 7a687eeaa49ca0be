/*
 * Copyright 2026 the motune authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// motune command-line front end: tune / rank / benchmark / report.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 runtime failure
// (evaluator abort, IO error).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "motune/dataset.hpp"
#include "motune/evaluator.hpp"
#include "motune/importance.hpp"
#include "motune/pareto.hpp"
#include "motune/space.hpp"
#include "motune/tuner.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

motune::ParameterSpace load_space_checked(const std::string& path) {
    if (!fs::exists(path)) {
        throw UsageError("space file '" + path + "' does not exist");
    }
    motune::ParameterSpace space = motune::load_space(path);
    const std::vector<std::string> violations = motune::validate(space);
    if (!violations.empty()) {
        std::string message = "space file '" + path + "' is invalid:";
        for (const std::string& v : violations) {
            message += "\n  - " + v;
        }
        throw UsageError(message);
    }
    return space;
}

std::vector<double> parse_reference(const std::string& text, std::size_t m) {
    std::vector<double> ref;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        ref.push_back(std::stod(item));
    }
    if (ref.size() == 1) {
        ref.assign(m, ref.front());
    }
    if (ref.size() != m) {
        throw UsageError("reference point needs " + std::to_string(m) + " components");
    }
    return ref;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << content;
    out.flush();
    if (!out) {
        throw std::runtime_error("write to '" + path.string() + "' failed");
    }
}

std::string hv_trace_csv(const motune::ObservationDataset& ds, const std::vector<double>& trace) {
    std::ostringstream out;
    out << "iteration,hv\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        out << ds.row(i).iteration << ',' << motune::format_double(trace[i]) << '\n';
    }
    return out.str();
}

std::string front_csv(const motune::ObservationDataset& ds, const motune::ParetoArchive& archive) {
    std::ostringstream out;
    motune::write_front_csv(out, ds.space(), ds.objective_names(), archive.entries());
    return out.str();
}

motune::ParetoArchive archive_of(const motune::ObservationDataset& ds) {
    motune::ParetoArchive archive;
    for (const motune::Observation& obs : ds.rows()) {
        archive.insert(obs.config, obs.objectives);
    }
    return archive;
}

/// Normalized hypervolume of a dataset's Pareto front under explicit bounds
/// (benchmark mode uses the union over all runs).
double final_hv(const motune::ObservationDataset& ds,
                const std::vector<std::pair<double, double>>& bounds,
                const std::vector<double>& reference) {
    const std::size_t m = ds.objective_count();
    std::vector<std::vector<double>> points;
    points.reserve(ds.size());
    for (const motune::Observation& obs : ds.rows()) {
        std::vector<double> p(m);
        for (std::size_t j = 0; j < m; ++j) {
            const double range = bounds[j].second - bounds[j].first;
            p[j] = range > 0.0 ? (obs.objectives[j] - bounds[j].first) / range : 0.5;
        }
        points.push_back(std::move(p));
    }
    const std::vector<std::size_t> idx = motune::pareto_front_indices(points);
    if (m == 2) {
        std::vector<std::array<double, 2>> front;
        front.reserve(idx.size());
        for (std::size_t i : idx) {
            front.push_back({points[i][0], points[i][1]});
        }
        return motune::hypervolume_2d(std::move(front), {reference[0], reference[1]});
    }
    std::vector<std::vector<double>> front;
    front.reserve(idx.size());
    for (std::size_t i : idx) {
        front.push_back(points[i]);
    }
    return motune::hypervolume_mc(front, reference);
}

// -------------------------------------------------------------------------
// tune

struct TuneOptions {
    std::string space_path;
    std::string algo = "adumbo";
    int max_iters = 70;
    int init = 10;
    std::uint64_t seed = 0;
    double delta = 0.1;
    std::string evaluator;
    int reps = 1;
    std::string out_dir;
    std::string adu_mean_direction = "verbatim";
    bool resume = false;
    std::optional<std::uint64_t> noise_seed;
    int bo_objective = 0;
    int population = 100;
    int generations = 50;
    double timeout_s = 300.0;
    int retries = 1;
};

motune::EvaluatorSpec make_evaluator(const TuneOptions& opt) {
    motune::EvaluatorSpec spec;
    try {
        spec = motune::parse_evaluator_spec(opt.evaluator);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    spec.repetitions = opt.reps;
    spec.noise_seed = opt.noise_seed;
    if (auto* cmd = std::get_if<motune::CommandEvaluator>(&spec.backend)) {
        cmd->timeout_s = opt.timeout_s;
        cmd->retries = opt.retries;
    }
    return spec;
}

motune::TunerConfig make_tuner_config(const TuneOptions& opt) {
    motune::TunerConfig config;
    try {
        config.algorithm = motune::parse_algorithm(opt.algo);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    config.max_iterations = opt.max_iters;
    config.init_samples = opt.init;
    config.seed = opt.seed;
    config.delta = opt.delta;
    config.inner.population = opt.population;
    config.inner.generations = opt.generations;
    config.bo_objective_index = opt.bo_objective;
    if (opt.adu_mean_direction == "verbatim") {
        config.adu_mean_direction = motune::AduMeanDirection::verbatim;
    } else if (opt.adu_mean_direction == "negated") {
        config.adu_mean_direction = motune::AduMeanDirection::negated;
    } else {
        throw UsageError("--adu-mean-direction must be verbatim or negated");
    }
    return config;
}

/// Runs one tuning session with an incremental JSONL sink. Shared by the
/// tune and benchmark commands.
motune::TunerResult run_tune_session(const motune::ParameterSpace& space,
                                     const motune::EvaluatorSpec& evaluator,
                                     const motune::TunerConfig& config, const fs::path& out_dir,
                                     bool resume) {
    fs::create_directories(out_dir);
    const fs::path obs_path = out_dir / "observations.jsonl";

    std::optional<motune::ObservationDataset> previous;
    if (resume && fs::exists(obs_path)) {
        auto [loaded, valid_bytes] = motune::load_jsonl_recover(obs_path.string(), space);
        if (fs::file_size(obs_path) != valid_bytes) {
            fs::resize_file(obs_path, valid_bytes); // drop a partial final line
        }
        if (!loaded.empty()) {
            previous.emplace(std::move(loaded));
        }
    }

    std::ofstream obs_out(obs_path, previous ? std::ios::app : std::ios::trunc);
    if (!obs_out) {
        throw std::runtime_error("cannot write '" + obs_path.string() + "'");
    }
    const motune::ObservationSink sink = [&](const motune::Observation& obs) {
        const std::string line = motune::observation_to_jsonl(space, obs) + "\n";
        obs_out.write(line.data(), static_cast<std::streamsize>(line.size()));
        obs_out.flush();
    };
    return motune::run_tuner(space, evaluator, config, sink,
                             previous ? &*previous : nullptr);
}

void write_tune_outputs(const fs::path& out_dir, const motune::TunerConfig& config,
                        const motune::TunerResult& result, double wall_time_s) {
    write_text_file(out_dir / "front.csv", front_csv(result.dataset, result.archive));
    write_text_file(out_dir / "hv_trace.csv", hv_trace_csv(result.dataset, result.hv_trace));

    auto [x, y] = result.dataset.training_matrices();
    auto [y_norm, bounds] = motune::normalize_objectives(y);
    json summary;
    summary["algorithm"] = motune::algorithm_name(config.algorithm);
    summary["seed"] = config.seed;
    summary["T_max"] = config.max_iterations;
    summary["final_hv"] = result.hv_trace.empty() ? 0.0 : result.hv_trace.back();
    json bounds_json = json::array();
    for (const auto& [lo, hi] : bounds) {
        bounds_json.push_back(json::array({lo, hi}));
    }
    summary["bounds"] = std::move(bounds_json);
    summary["wall_time_s"] = wall_time_s;
    summary["random_fallbacks"] = result.random_fallbacks;
    write_text_file(out_dir / "summary.json", summary.dump(2) + "\n");
}

int cmd_tune(const TuneOptions& opt) {
    const motune::ParameterSpace space = load_space_checked(opt.space_path);
    const motune::EvaluatorSpec evaluator = make_evaluator(opt);
    const motune::TunerConfig config = make_tuner_config(opt);

    const auto start = std::chrono::steady_clock::now();
    try {
        const motune::TunerResult result =
            run_tune_session(space, evaluator, config, opt.out_dir, opt.resume);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_tune_outputs(opt.out_dir, config, result, wall);
    } catch (const motune::TunerAbort& e) {
        std::cerr << "evaluator abort: " << e.what() << "\n"
                  << "completed evaluations are persisted in "
                  << (fs::path(opt.out_dir) / "observations.jsonl").string() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

// -------------------------------------------------------------------------
// rank

struct RankOptions {
    std::string dataset_path;
    std::string space_path;
    int top = 1;
    std::uint64_t seed = 0;
    std::string out_path;
};

int cmd_rank(const RankOptions& opt) {
    const motune::ParameterSpace space = load_space_checked(opt.space_path);
    if (!fs::exists(opt.dataset_path)) {
        throw UsageError("dataset file '" + opt.dataset_path + "' does not exist");
    }
    motune::ObservationDataset ds = [&] {
        try {
            return motune::load_jsonl(opt.dataset_path, space);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }();
    if (ds.size() < 20) {
        throw UsageError("insufficient data: need >= 20 rows, have " + std::to_string(ds.size()));
    }
    const auto d = ds.space().dimension();
    if (opt.top < 1 || static_cast<std::size_t>(opt.top) > d) {
        throw UsageError("--top must lie in [1, " + std::to_string(d) + "]");
    }

    const motune::ForestConfig forest{100, 8, 2, opt.seed};
    const motune::ImportanceTable table = motune::rank_importance(ds, forest);
    const std::vector<int> ranks = motune::pareto_rank_parameters(table);
    const std::vector<std::string> selected =
        motune::select_top(table, ranks, static_cast<std::size_t>(opt.top));

    json out;
    out["objectives"] = table.objective_names;
    json params = json::array();
    for (std::size_t i = 0; i < table.param_names.size(); ++i) {
        json p;
        p["name"] = table.param_names[i];
        std::vector<double> gini(static_cast<std::size_t>(table.gini.cols()));
        for (Eigen::Index j = 0; j < table.gini.cols(); ++j) {
            gini[static_cast<std::size_t>(j)] = table.gini(static_cast<Eigen::Index>(i), j);
        }
        p["gini"] = gini;
        p["rank"] = ranks[i];
        params.push_back(std::move(p));
    }
    out["params"] = std::move(params);
    out["selected"] = selected;
    out["forest"] = {{"trees", forest.trees},
                     {"max_depth", forest.max_depth},
                     {"min_samples_leaf", forest.min_samples_leaf},
                     {"seed", forest.seed}};
    write_text_file(opt.out_path, out.dump(2) + "\n");

    // Rank-ordered table on stdout.
    std::vector<std::size_t> order(table.param_names.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (ranks[a] != ranks[b]) {
            return ranks[a] < ranks[b];
        }
        const double ga = table.gini.row(static_cast<Eigen::Index>(a)).maxCoeff();
        const double gb = table.gini.row(static_cast<Eigen::Index>(b)).maxCoeff();
        if (ga != gb) {
            return ga > gb;
        }
        return table.param_names[a] < table.param_names[b];
    });
    std::cout << std::left << std::setw(32) << "parameter" << std::setw(6) << "rank";
    for (const std::string& name : table.objective_names) {
        std::cout << std::setw(14) << ("gini(" + name + ")");
    }
    std::cout << "selected\n";
    for (std::size_t i : order) {
        std::cout << std::left << std::setw(32) << table.param_names[i] << std::setw(6) << ranks[i];
        for (Eigen::Index j = 0; j < table.gini.cols(); ++j) {
            std::cout << std::setw(14) << std::setprecision(4) << std::fixed
                      << table.gini(static_cast<Eigen::Index>(i), j);
        }
        std::cout.unsetf(std::ios::fixed);
        const bool is_selected =
            std::find(selected.begin(), selected.end(), table.param_names[i]) != selected.end();
        std::cout << (is_selected ? "*" : "") << "\n";
    }
    return kExitOk;
}

// -------------------------------------------------------------------------
// benchmark

struct BenchmarkOptions {
    std::string space_path;
    std::string evaluator;
    std::string algos;
    std::string seeds;
    int max_iters = 70;
    int init = 10;
    double delta = 0.1;
    int reps = 1;
    std::string out_dir;
    std::string adu_mean_direction = "verbatim";
    std::optional<std::uint64_t> noise_seed;
    int population = 100;
    int generations = 50;
    double timeout_s = 300.0;
    int retries = 1;
    int jobs = 1;
};

std::vector<std::string> split_csv_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            items.push_back(item);
        }
    }
    return items;
}

struct BenchmarkRun {
    std::string algorithm;
    std::uint64_t seed = 0;
    bool ok = false;
    double wall_time_s = 0.0;
    std::optional<motune::ObservationDataset> dataset;
    std::string error;
};

int cmd_benchmark(const BenchmarkOptions& opt) {
    const motune::ParameterSpace space = load_space_checked(opt.space_path);
    const std::vector<std::string> algos = split_csv_list(opt.algos);
    const std::vector<std::string> seed_items = split_csv_list(opt.seeds);
    if (algos.empty() || seed_items.empty()) {
        throw UsageError("--algos and --seeds must be non-empty comma lists");
    }
    std::vector<std::uint64_t> seeds;
    for (const std::string& s : seed_items) {
        seeds.push_back(std::stoull(s));
    }
    for (const std::string& algo : algos) {
        motune::parse_algorithm(algo); // validates early
    }

    TuneOptions base;
    base.space_path = opt.space_path;
    base.evaluator = opt.evaluator;
    base.max_iters = opt.max_iters;
    base.init = opt.init;
    base.delta = opt.delta;
    base.reps = opt.reps;
    base.adu_mean_direction = opt.adu_mean_direction;
    base.noise_seed = opt.noise_seed;
    base.population = opt.population;
    base.generations = opt.generations;
    base.timeout_s = opt.timeout_s;
    base.retries = opt.retries;
    make_evaluator(base); // validates the evaluator string early

    fs::create_directories(opt.out_dir);
    std::vector<BenchmarkRun> runs;
    for (const std::string& algo : algos) {
        for (std::uint64_t seed : seeds) {
            BenchmarkRun run;
            run.algorithm = algo;
            run.seed = seed;
            runs.push_back(std::move(run));
        }
    }

    const auto execute = [&](BenchmarkRun& run) {
        TuneOptions tune_opt = base;
        tune_opt.algo = run.algorithm;
        tune_opt.seed = run.seed;
        const fs::path run_dir =
            fs::path(opt.out_dir) / (run.algorithm + "_seed" + std::to_string(run.seed));
        const auto start = std::chrono::steady_clock::now();
        try {
            const motune::EvaluatorSpec evaluator = make_evaluator(tune_opt);
            const motune::TunerConfig config = make_tuner_config(tune_opt);
            motune::TunerResult result =
                run_tune_session(space, evaluator, config, run_dir, false);
            run.dataset.emplace(std::move(result.dataset));
            run.ok = true;
        } catch (const std::exception& e) {
            run.error = e.what();
        }
        run.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    if (opt.jobs <= 1) {
        for (BenchmarkRun& run : runs) {
            execute(run);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::future<void>> workers;
        const int worker_count = std::min<int>(opt.jobs, static_cast<int>(runs.size()));
        for (int w = 0; w < worker_count; ++w) {
            workers.push_back(std::async(std::launch::async, [&] {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= runs.size()) {
                        return;
                    }
                    execute(runs[i]);
                }
            }));
        }
        for (auto& w : workers) {
            w.get();
        }
    }

    // Union normalization bounds across every successful run.
    std::size_t m = 0;
    std::vector<std::pair<double, double>> union_bounds;
    for (const BenchmarkRun& run : runs) {
        if (!run.ok) {
            continue;
        }
        const std::size_t run_m = run.dataset->objective_count();
        if (m == 0) {
            m = run_m;
            union_bounds.assign(m, {std::numeric_limits<double>::infinity(),
                                    -std::numeric_limits<double>::infinity()});
        }
        for (const motune::Observation& obs : run.dataset->rows()) {
            for (std::size_t j = 0; j < m; ++j) {
                union_bounds[j].first = std::min(union_bounds[j].first, obs.objectives[j]);
                union_bounds[j].second = std::max(union_bounds[j].second, obs.objectives[j]);
            }
        }
    }
    const std::vector<double> reference(m, 1.2);

    std::ostringstream csv;
    csv << "algorithm,seed,final_hv,wall_time_s,status\n";
    std::map<std::string, std::vector<double>> per_algo_hv;
    for (BenchmarkRun& run : runs) {
        double hv = std::numeric_limits<double>::quiet_NaN();
        if (run.ok) {
            hv = final_hv(*run.dataset, union_bounds, reference);
            per_algo_hv[run.algorithm].push_back(hv);
        }
        csv << run.algorithm << ',' << run.seed << ','
            << (run.ok ? motune::format_double(hv) : "nan") << ','
            << motune::format_double(run.wall_time_s) << ',' << (run.ok ? "ok" : "failed") << '\n';
    }
    write_text_file(fs::path(opt.out_dir) / "benchmark.csv", csv.str());

    if (m == 0) {
        std::cerr << "benchmark: every run failed\n";
        for (const BenchmarkRun& run : runs) {
            std::cerr << "  " << run.algorithm << " seed " << run.seed << ": " << run.error << "\n";
        }
        return kExitRuntime;
    }

    const auto quantile = [](std::vector<double> values, double q) {
        std::sort(values.begin(), values.end());
        const double pos = q * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = static_cast<std::size_t>(std::ceil(pos));
        const double frac = pos - std::floor(pos);
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };

    json summary;
    summary["max_iters"] = opt.max_iters;
    summary["seeds"] = seeds;
    json union_json = json::array();
    for (const auto& [lo, hi] : union_bounds) {
        union_json.push_back(json::array({lo, hi}));
    }
    summary["union_bounds"] = std::move(union_json);
    json algos_json = json::object();
    for (const std::string& algo : algos) {
        json entry;
        const auto it = per_algo_hv.find(algo);
        if (it == per_algo_hv.end() || it->second.empty()) {
            entry["runs"] = 0;
        } else {
            const std::vector<double>& hvs = it->second;
            entry["runs"] = hvs.size();
            entry["median"] = quantile(hvs, 0.5);
            entry["q1"] = quantile(hvs, 0.25);
            entry["q3"] = quantile(hvs, 0.75);
            entry["iqr"] = quantile(hvs, 0.75) - quantile(hvs, 0.25);
        }
        algos_json[algo] = std::move(entry);
    }
    summary["algorithms"] = std::move(algos_json);
    write_text_file(fs::path(opt.out_dir) / "benchmark_summary.json", summary.dump(2) + "\n");
    return kExitOk;
}

// -------------------------------------------------------------------------
// report

struct ReportOptions {
    std::string dataset_path;
    std::string space_path;
    std::string ref = "1.2";
    std::string out_dir;
};

int cmd_report(const ReportOptions& opt) {
    const motune::ParameterSpace space = load_space_checked(opt.space_path);
    if (!fs::exists(opt.dataset_path)) {
        throw UsageError("dataset file '" + opt.dataset_path + "' does not exist");
    }
    motune::ObservationDataset ds = [&] {
        try {
            return motune::load_jsonl(opt.dataset_path, space);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }();
    if (ds.empty()) {
        throw UsageError("dataset '" + opt.dataset_path + "' is empty");
    }
    const std::vector<double> reference = parse_reference(opt.ref, ds.objective_count());

    fs::create_directories(opt.out_dir);
    const motune::ParetoArchive archive = archive_of(ds);
    const std::vector<double> trace = motune::hv_trace(ds, reference);
    write_text_file(fs::path(opt.out_dir) / "front.csv", front_csv(ds, archive));
    write_text_file(fs::path(opt.out_dir) / "hv_trace.csv", hv_trace_csv(ds, trace));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-objective black-box configuration tuning"};
    app.require_subcommand(1);

    TuneOptions tune;
    CLI::App* tune_cmd = app.add_subcommand("tune", "Run one tuning session");
    tune_cmd->add_option("--space", tune.space_path, "Parameter space JSON file")->required();
    tune_cmd->add_option("--algo", tune.algo, "adumbo | usemo | random | bo-single");
    tune_cmd->add_option("--max-iters", tune.max_iters, "Total evaluation budget");
    tune_cmd->add_option("--init", tune.init, "Random initialization samples");
    tune_cmd->add_option("--seed", tune.seed, "Random seed");
    tune_cmd->add_option("--delta", tune.delta, "Confidence parameter of the beta schedule");
    tune_cmd->add_option("--evaluator", tune.evaluator, "builtin:NAME or cmd:\"ARGV\"")->required();
    tune_cmd->add_option("--reps", tune.reps, "Repetitions per evaluation (mean-aggregated)");
    tune_cmd->add_option("--out", tune.out_dir, "Output directory")->required();
    tune_cmd->add_option("--adu-mean-direction", tune.adu_mean_direction, "verbatim | negated");
    tune_cmd->add_flag("--resume", tune.resume, "Continue an interrupted run in --out");
    tune_cmd->add_option("--noise-seed", tune.noise_seed, "Enable builtin noise with this seed");
    tune_cmd->add_option("--bo-objective", tune.bo_objective, "Objective index for bo-single");
    tune_cmd->add_option("--pop", tune.population, "Inner NSGA-II population");
    tune_cmd->add_option("--gens", tune.generations, "Inner NSGA-II generations");
    tune_cmd->add_option("--timeout-s", tune.timeout_s, "Command evaluator timeout per attempt");
    tune_cmd->add_option("--retries", tune.retries, "Command evaluator retries per repetition");

    RankOptions rank;
    CLI::App* rank_cmd = app.add_subcommand("rank", "Rank parameter importance (MOPIR)");
    rank_cmd->add_option("--dataset", rank.dataset_path, "Observations JSONL file")->required();
    rank_cmd->add_option("--space", rank.space_path, "Parameter space JSON file")->required();
    rank_cmd->add_option("--top", rank.top, "Number of parameters to select")->required();
    rank_cmd->add_option("--seed", rank.seed, "Forest seed");
    rank_cmd->add_option("--out", rank.out_path, "Output JSON file")->required();

    BenchmarkOptions bench;
    CLI::App* bench_cmd = app.add_subcommand("benchmark", "Compare algorithms across seeds");
    bench_cmd->add_option("--space", bench.space_path, "Parameter space JSON file")->required();
    bench_cmd->add_option("--evaluator", bench.evaluator, "builtin:NAME or cmd:\"ARGV\"")->required();
    bench_cmd->add_option("--algos", bench.algos, "Comma list of algorithms")->required();
    bench_cmd->add_option("--seeds", bench.seeds, "Comma list of seeds")->required();
    bench_cmd->add_option("--max-iters", bench.max_iters, "Total evaluation budget per run");
    bench_cmd->add_option("--init", bench.init, "Random initialization samples");
    bench_cmd->add_option("--delta", bench.delta, "Confidence parameter of the beta schedule");
    bench_cmd->add_option("--reps", bench.reps, "Repetitions per evaluation");
    bench_cmd->add_option("--out", bench.out_dir, "Output directory")->required();
    bench_cmd->add_option("--adu-mean-direction", bench.adu_mean_direction, "verbatim | negated");
    bench_cmd->add_option("--noise-seed", bench.noise_seed, "Enable builtin noise with this seed");
    bench_cmd->add_option("--pop", bench.population, "Inner NSGA-II population");
    bench_cmd->add_option("--gens", bench.generations, "Inner NSGA-II generations");
    bench_cmd->add_option("--timeout-s", bench.timeout_s, "Command evaluator timeout per attempt");
    bench_cmd->add_option("--retries", bench.retries, "Command evaluator retries per repetition");
    bench_cmd->add_option("--jobs", bench.jobs, "Parallel (algorithm, seed) runs");

    ReportOptions report;
    CLI::App* report_cmd = app.add_subcommand("report", "Recompute front and HV trace");
    report_cmd->add_option("--dataset", report.dataset_path, "Observations JSONL file")->required();
    report_cmd->add_option("--space", report.space_path, "Parameter space JSON file")->required();
    report_cmd->add_option("--ref", report.ref, "Reference point, e.g. 1.2,1.2");
    report_cmd->add_option("--out", report.out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return kExitUsage;
    }

    try {
        if (tune_cmd->parsed()) {
            return cmd_tune(tune);
        }
        if (rank_cmd->parsed()) {
            return cmd_rank(rank);
        }
        if (bench_cmd->parsed()) {
            return cmd_benchmark(bench);
        }
        if (report_cmd->parsed()) {
            return cmd_report(report);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
