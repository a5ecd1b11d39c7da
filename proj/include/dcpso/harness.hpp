#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dcpso/abs.hpp"
#include "dcpso/analysis.hpp"
#include "dcpso/baseline.hpp"
#include "dcpso/benchmarks.hpp"

namespace dcpso {

/// One optimizer entry of an experiment. `standard_pso` selects the plain
/// baseline; otherwise `config.variant` picks the dual-channel flavor.
struct AlgorithmSpec {
    std::string id;
    bool standard_pso = false;
    AbsConfig config;
};

/// What the per-trial curve files carry beyond (fes, error).
struct RecordFlags {
    bool diversity = true;
    bool channel_usage = true;
    bool cap_trace = false; ///< include the per-iteration channel caps in summaries
    int stride = 1;         ///< keep every stride-th iteration (the last is always kept)
};

struct ExperimentConfig {
    std::vector<std::string> functions;     ///< registry ids
    std::vector<AlgorithmSpec> algorithms;  ///< resolved specs, ids unique
    std::size_t dimension = 10;
    int trials = 30;
    std::uint64_t seed = 1;      ///< trial t runs with seed + t
    double alpha = 0.05;         ///< significance level of the report
    std::string reference;       ///< defaults to the first algorithm id
    std::filesystem::path output_dir = "out";
    RecordFlags record;
    unsigned workers = 0;        ///< 0 = hardware concurrency
    bool keep_records = false;   ///< retain full trial records in the result

    void validate() const;
};

/// Parse an experiment config from a JSON file / JSON text. Error messages
/// name the offending field.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
ExperimentConfig parse_experiment_config(const std::string& json_text);

/// Resolve an algorithm id ("dcpso-abs", "dcpso-abs-p", "pso-abs-non-g",
/// "pso-abs-g", "pso") into a spec carrying the experiment-level defaults.
AlgorithmSpec resolve_algorithm(const std::string& id);

/// Dispatch one trial.
TrialRecord run_algorithm(const AlgorithmSpec& algorithm, const ObjectiveFunction& objective,
                          std::uint64_t seed);

struct ExperimentResult {
    ComparisonReport report;
    std::vector<TrialRecord> records; ///< only when config.keep_records
};

/// Run the full grid (functions x algorithms x trials), write per-trial
/// curve CSVs, per-cell summary JSONs, report.json / report.csv and
/// meta.json under config.output_dir, and return the comparison report.
/// Workers share nothing but the objective; outputs are deterministic for
/// a fixed config regardless of worker count.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct MSweepRow {
    std::string function;
    std::string algorithm;
    int m = 0;
    double mean = 0.0;
    double stddev = 0.0;
};

/// Re-run the experiment once per refreshing-gap value (artifacts under
/// output_dir/m<k>/) and tabulate mean final error per (function, M,
/// algorithm) into sweep_m.csv / sweep_m.json.
std::vector<MSweepRow> sweep_m(const ExperimentConfig& config, std::span<const int> m_values);

/// Run the four-variant ablation (full, P-only, non-G-only, G-only) with
/// the experiment's functions and budget; the full variant is the report
/// reference.
ExperimentResult run_ablation(const ExperimentConfig& config);

/// Rebuild the comparison report from the summary files a previous
/// run_experiment left in a directory.
ComparisonReport report_from_dir(const std::filesystem::path& dir);

/// Serialize a report the way run_experiment writes it.
std::string report_to_json(const ComparisonReport& report);
std::string report_to_csv(const ComparisonReport& report);

/// Human-readable comparison table for terminal output.
std::string report_to_text(const ComparisonReport& report);

/// Turn a registry id into a safe filename stem.
std::string sanitize_id(const std::string& id);

/// Run fn(0..count-1) on a small thread pool; index order of results is
/// the caller's concern. The first exception (if any) is rethrown.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

} // namespace dcpso
