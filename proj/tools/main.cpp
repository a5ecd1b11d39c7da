#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dcpso/errors.hpp"
#include "dcpso/harness.hpp"

namespace {

void write_file_or_throw(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out)
        throw dcpso::IoError("cannot write " + path.string());
    out << content;
    if (!out)
        throw dcpso::IoError("failed while writing " + path.string());
}

void cmd_run(const std::string& config_path) {
    const dcpso::ExperimentConfig cfg = dcpso::load_experiment_config(config_path);
    const dcpso::ExperimentResult res = dcpso::run_experiment(cfg);
    std::cout << dcpso::report_to_text(res.report);
    std::cout << "\nartifacts written to " << cfg.output_dir.string() << "\n";
}

void cmd_sweep(const std::string& config_path, const std::vector<int>& m_values) {
    const dcpso::ExperimentConfig cfg = dcpso::load_experiment_config(config_path);
    const std::vector<dcpso::MSweepRow> rows = dcpso::sweep_m(cfg, m_values);
    std::printf("%-28s %-16s %4s  %-12s %-12s\n", "function", "algorithm", "m", "mean", "std");
    for (const dcpso::MSweepRow& r : rows)
        std::printf("%-28s %-16s %4d  %-12.3e %-12.3e\n", r.function.c_str(),
                    r.algorithm.c_str(), r.m, r.mean, r.stddev);
    std::cout << "\nartifacts written to " << cfg.output_dir.string() << "\n";
}

void cmd_ablation(const std::string& config_path) {
    const dcpso::ExperimentConfig cfg = dcpso::load_experiment_config(config_path);
    const dcpso::ExperimentResult res = dcpso::run_ablation(cfg);
    std::cout << dcpso::report_to_text(res.report);
    std::cout << "\nartifacts written to " << cfg.output_dir.string() << "\n";
}

void cmd_list_functions() {
    std::printf("%-28s %-20s %s\n", "id", "category", "notes");
    for (const dcpso::FunctionInfo& info : dcpso::list_functions())
        std::printf("%-28s %-20s %s\n", info.id.c_str(), dcpso::category_name(info.category),
                    info.summary.c_str());
}

void cmd_report(const std::string& dir) {
    const dcpso::ComparisonReport rep = dcpso::report_from_dir(dir);
    const std::filesystem::path base(dir);
    write_file_or_throw(base / "report.json", dcpso::report_to_json(rep));
    write_file_or_throw(base / "report.csv", dcpso::report_to_csv(rep));
    std::cout << dcpso::report_to_text(rep);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual-channel particle swarm optimizer experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string report_dir;
    std::vector<int> m_values{2, 4, 6, 8, 10};

    CLI::App* run = app.add_subcommand("run", "run an experiment from a JSON config");
    run->add_option("config", config_path, "experiment config (JSON)")->required();

    CLI::App* sweep = app.add_subcommand("sweep-m", "re-run the experiment per refreshing-gap value");
    sweep->add_option("config", config_path, "experiment config (JSON)")->required();
    sweep->add_option("--m", m_values, "refreshing-gap values (comma separated)")->delimiter(',');

    CLI::App* ablation = app.add_subcommand("ablation", "compare the four optimizer variants");
    ablation->add_option("config", config_path, "experiment config (JSON)")->required();

    app.add_subcommand("list-functions", "print the benchmark function registry");

    CLI::App* report = app.add_subcommand("report", "rebuild the report from a run directory");
    report->add_option("dir", report_dir, "directory a previous run wrote")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage problems are config problems
    }

    try {
        if (run->parsed())
            cmd_run(config_path);
        else if (sweep->parsed())
            cmd_sweep(config_path, m_values);
        else if (ablation->parsed())
            cmd_ablation(config_path);
        else if (report->parsed())
            cmd_report(report_dir);
        else
            cmd_list_functions();
    } catch (const dcpso::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const dcpso::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
