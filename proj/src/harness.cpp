#include "dcpso/harness.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dcpso/errors.hpp"

namespace dcpso {

using nlohmann::json;

namespace {

[[noreturn]] void bad_field(const std::string& path, const char* expected) {
    throw ConfigError("config." + path + ": expected " + std::string(expected));
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number())
        bad_field(path, "a number");
    return v.get<double>();
}

long long as_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer())
        bad_field(path, "an integer");
    return v.get<long long>();
}

bool as_boolean(const json& v, const std::string& path) {
    if (!v.is_boolean())
        bad_field(path, "a boolean");
    return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string())
        bad_field(path, "a string");
    return v.get<std::string>();
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path.string());
    return out;
}

} // namespace

std::string sanitize_id(const std::string& id) {
    std::string out;
    out.reserve(id.size());
    bool last_was_mark = false;
    for (const char c : id) {
        const bool ok = std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '.' || c == '-' || c == '_';
        if (ok) {
            out += c;
            last_was_mark = false;
        } else if (!last_was_mark) {
            out += '_';
            last_was_mark = true;
        }
    }
    while (!out.empty() && out.back() == '_')
        out.pop_back();
    return out;
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
    if (count == 0)
        return;
    unsigned w = workers != 0 ? workers : std::max(1u, std::thread::hardware_concurrency());
    w = static_cast<unsigned>(std::min<std::size_t>(w, count));
    if (w <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    std::vector<std::thread> pool;
    pool.reserve(w);
    for (unsigned t = 0; t < w; ++t) {
        pool.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= count)
                    return;
                try {
                    fn(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                }
            }
        });
    }
    for (std::thread& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

AlgorithmSpec resolve_algorithm(const std::string& id) {
    AlgorithmSpec spec;
    spec.id = id;
    if (id == "pso") {
        spec.standard_pso = true;
        return spec;
    }
    for (const Variant v : {Variant::Full, Variant::POnly, Variant::NonGOnly, Variant::GOnly}) {
        if (id == variant_id(v)) {
            spec.config.variant = v;
            return spec;
        }
    }
    throw ConfigError("config.algorithms: unknown algorithm id '" + id +
                      "' (known: dcpso-abs, dcpso-abs-p, pso-abs-non-g, pso-abs-g, pso)");
}

void ExperimentConfig::validate() const {
    if (functions.empty())
        throw ConfigError("config.functions: need at least one function id");
    if (algorithms.empty())
        throw ConfigError("config.algorithms: need at least one algorithm");
    if (dimension < 1)
        throw ConfigError("config.dimension: must be at least 1");
    if (trials < 1)
        throw ConfigError("config.trials: must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ConfigError("config.alpha: must lie strictly between 0 and 1");
    if (record.stride < 1)
        throw ConfigError("config.record.stride: must be at least 1");
    for (std::size_t i = 0; i < algorithms.size(); ++i)
        for (std::size_t j = i + 1; j < algorithms.size(); ++j)
            if (algorithms[i].id == algorithms[j].id)
                throw ConfigError("config.algorithms: duplicate id '" + algorithms[i].id + "'");
    if (!reference.empty()) {
        bool found = false;
        for (const AlgorithmSpec& a : algorithms)
            found = found || a.id == reference;
        if (!found)
            throw ConfigError("config.reference: '" + reference + "' is not a configured algorithm");
    }
    for (const AlgorithmSpec& a : algorithms) {
        if (a.standard_pso) {
            if (a.config.population < 1)
                throw ConfigError("config.algorithms." + a.id + ": population must be at least 1");
        } else {
            try {
                a.config.validate(dimension);
            } catch (const ConfigError& e) {
                throw ConfigError("config.algorithms." + a.id + ": " + e.what());
            }
        }
    }
}

namespace {

void apply_algorithm_overrides(AbsConfig& cfg, const json& obj, const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        const std::string field = path + "." + key;
        if (key == "id")
            continue;
        if (key == "m" || key == "refreshing_gap")
            cfg.refreshing_gap = static_cast<int>(as_integer(value, field));
        else if (key == "population")
            cfg.population = static_cast<std::size_t>(as_integer(value, field));
        else if (key == "max_evaluations")
            cfg.max_evaluations = as_integer(value, field);
        else if (key == "pc_min")
            cfg.pc_min = as_number(value, field);
        else if (key == "pc_max")
            cfg.pc_max = as_number(value, field);
        else if (key == "w_start")
            cfg.schedule.w_start = as_number(value, field);
        else if (key == "w_end")
            cfg.schedule.w_end = as_number(value, field);
        else if (key == "c1_start")
            cfg.schedule.c1_start = as_number(value, field);
        else if (key == "c1_end")
            cfg.schedule.c1_end = as_number(value, field);
        else if (key == "c2_start")
            cfg.schedule.c2_start = as_number(value, field);
        else if (key == "c2_end")
            cfg.schedule.c2_end = as_number(value, field);
        else
            throw ConfigError("config: unknown key '" + field + "'");
    }
}

} // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw ConfigError("config: top level must be a JSON object");

    ExperimentConfig cfg;
    AbsConfig defaults; // experiment-wide algorithm settings
    const json* algorithms_node = nullptr;

    for (const auto& [key, value] : root.items()) {
        if (key == "functions") {
            if (!value.is_array() || value.empty())
                bad_field("functions", "a non-empty array of function ids");
            for (std::size_t i = 0; i < value.size(); ++i)
                cfg.functions.push_back(as_string(value[i], "functions[" + std::to_string(i) + "]"));
        } else if (key == "algorithms") {
            algorithms_node = &value;
        } else if (key == "dimension") {
            cfg.dimension = static_cast<std::size_t>(as_integer(value, "dimension"));
        } else if (key == "trials") {
            cfg.trials = static_cast<int>(as_integer(value, "trials"));
        } else if (key == "seed") {
            const long long s = as_integer(value, "seed");
            if (s < 0)
                throw ConfigError("config.seed: must be non-negative");
            cfg.seed = static_cast<std::uint64_t>(s);
        } else if (key == "alpha") {
            cfg.alpha = as_number(value, "alpha");
        } else if (key == "reference") {
            cfg.reference = as_string(value, "reference");
        } else if (key == "output_dir") {
            cfg.output_dir = as_string(value, "output_dir");
        } else if (key == "workers") {
            cfg.workers = static_cast<unsigned>(as_integer(value, "workers"));
        } else if (key == "record") {
            if (!value.is_object())
                bad_field("record", "an object");
            for (const auto& [rkey, rvalue] : value.items()) {
                const std::string field = "record." + rkey;
                if (rkey == "diversity")
                    cfg.record.diversity = as_boolean(rvalue, field);
                else if (rkey == "channel_usage")
                    cfg.record.channel_usage = as_boolean(rvalue, field);
                else if (rkey == "cap_trace")
                    cfg.record.cap_trace = as_boolean(rvalue, field);
                else if (rkey == "stride")
                    cfg.record.stride = static_cast<int>(as_integer(rvalue, field));
                else
                    throw ConfigError("config: unknown key '" + field + "'");
            }
        } else if (key == "m" || key == "refreshing_gap" || key == "population" ||
                   key == "max_evaluations" || key == "pc_min" || key == "pc_max" ||
                   key == "w_start" || key == "w_end" || key == "c1_start" || key == "c1_end" ||
                   key == "c2_start" || key == "c2_end") {
            json wrapper;
            wrapper[key] = value;
            apply_algorithm_overrides(defaults, wrapper, "");
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }

    if (cfg.functions.empty())
        throw ConfigError("config.functions: required");

    if (algorithms_node == nullptr) {
        AlgorithmSpec spec = resolve_algorithm("dcpso-abs");
        const Variant v = spec.config.variant;
        spec.config = defaults;
        spec.config.variant = v;
        cfg.algorithms.push_back(std::move(spec));
    } else {
        if (!algorithms_node->is_array() || algorithms_node->empty())
            bad_field("algorithms", "a non-empty array");
        for (std::size_t i = 0; i < algorithms_node->size(); ++i) {
            const json& entry = (*algorithms_node)[i];
            const std::string path = "algorithms[" + std::to_string(i) + "]";
            std::string id;
            if (entry.is_string())
                id = entry.get<std::string>();
            else if (entry.is_object() && entry.contains("id"))
                id = as_string(entry["id"], path + ".id");
            else
                bad_field(path, "an algorithm id string or an object with an 'id'");
            AlgorithmSpec spec = resolve_algorithm(id);
            const Variant v = spec.config.variant;
            spec.config = defaults;
            spec.config.variant = v;
            if (entry.is_object())
                apply_algorithm_overrides(spec.config, entry, path);
            cfg.algorithms.push_back(std::move(spec));
        }
    }

    if (cfg.reference.empty() && !cfg.algorithms.empty())
        cfg.reference = cfg.algorithms.front().id;
    cfg.validate();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_config(buffer.str());
}

TrialRecord run_algorithm(const AlgorithmSpec& algorithm, const ObjectiveFunction& objective,
                          std::uint64_t seed) {
    TrialRecord rec = algorithm.standard_pso ? run_standard_pso(objective, algorithm.config, seed)
                                             : run_dcpso_abs(objective, algorithm.config, seed);
    rec.algorithm = algorithm.id;
    return rec;
}

namespace {

// Rows with the same evaluation count collapse into one (usage counts sum),
// so curve files are strictly increasing in fes.
std::vector<IterationSample> merged_samples(const TrialRecord& rec) {
    std::vector<IterationSample> rows;
    rows.reserve(rec.samples.size());
    for (const IterationSample& s : rec.samples) {
        if (!rows.empty() && rows.back().fes == s.fes) {
            IterationSample& back = rows.back();
            const int non_g = back.non_g_steps + s.non_g_steps;
            const int g = back.g_steps + s.g_steps;
            const int pdg = back.pdg_events + s.pdg_events;
            back = s;
            back.non_g_steps = non_g;
            back.g_steps = g;
            back.pdg_events = pdg;
        } else {
            rows.push_back(s);
        }
    }
    return rows;
}

std::vector<IterationSample> strided_samples(std::vector<IterationSample> rows, int stride) {
    if (stride <= 1 || rows.size() <= 1)
        return rows;
    std::vector<IterationSample> kept;
    kept.reserve(rows.size() / static_cast<std::size_t>(stride) + 2);
    for (std::size_t i = 0; i < rows.size(); i += static_cast<std::size_t>(stride))
        kept.push_back(rows[i]);
    if (kept.back().fes != rows.back().fes)
        kept.push_back(rows.back());
    return kept;
}

void write_trial_csv(const std::filesystem::path& path, const TrialRecord& rec,
                     const RecordFlags& flags) {
    std::ofstream out = open_for_write(path);
    out << "fes,error";
    if (flags.diversity)
        out << ",diversity";
    if (flags.channel_usage)
        out << ",non_g_steps,g_steps,pdg_events";
    out << "\n";
    for (const IterationSample& s : strided_samples(merged_samples(rec), flags.stride)) {
        out << s.fes << ',' << format_double(s.error);
        if (flags.diversity)
            out << ',' << format_double(s.diversity);
        if (flags.channel_usage)
            out << ',' << s.non_g_steps << ',' << s.g_steps << ',' << s.pdg_events;
        out << "\n";
    }
    if (!out)
        throw IoError("failed while writing " + path.string());
}

json cell_summary_json(const ExperimentConfig& cfg, const std::string& function_id,
                       const AlgorithmSpec& algo, std::span<const TrialRecord> cell) {
    std::vector<double> finals;
    finals.reserve(cell.size());
    for (const TrialRecord& r : cell)
        finals.push_back(r.final_error);
    double mean = 0.0;
    for (double v : finals)
        mean += v;
    mean /= static_cast<double>(finals.size());
    double ss = 0.0;
    for (double v : finals)
        ss += (v - mean) * (v - mean);
    const double stddev =
        finals.size() > 1 ? std::sqrt(ss / static_cast<double>(finals.size() - 1)) : 0.0;

    json s;
    s["function"] = function_id;
    s["algorithm"] = algo.id;
    s["dimension"] = cfg.dimension;
    s["trials"] = cfg.trials;
    s["seed_base"] = cfg.seed;
    s["evaluations_per_trial"] = cell.front().evaluations;
    s["mean"] = mean;
    s["std"] = stddev;
    s["min"] = *std::min_element(finals.begin(), finals.end());
    s["max"] = *std::max_element(finals.begin(), finals.end());
    s["final_errors"] = finals;
    if (cfg.record.cap_trace) {
        json trace = json::array();
        for (const IterationSample& it : strided_samples(merged_samples(cell.front()),
                                                         cfg.record.stride))
            trace.push_back({it.fes, it.cap_non_g, it.cap_g});
        s["cap_trace"] = std::move(trace);
    }
    return s;
}

json algorithm_meta(const AlgorithmSpec& a, std::size_t dimension) {
    json m;
    m["id"] = a.id;
    m["kind"] = a.standard_pso ? "pso" : "dcpso-abs";
    if (!a.standard_pso) {
        m["variant"] = variant_id(a.config.variant);
        m["refreshing_gap"] = a.config.refreshing_gap;
        m["pc_min"] = a.config.pc_min;
        m["pc_max"] = a.config.pc_max;
    }
    m["population"] = a.config.population;
    m["max_evaluations"] = a.config.budget(dimension);
    m["schedule"] = {{"w_start", a.config.schedule.w_start},
                     {"w_end", a.config.schedule.w_end},
                     {"c1_start", a.config.schedule.c1_start},
                     {"c1_end", a.config.schedule.c1_end},
                     {"c2_start", a.config.schedule.c2_start},
                     {"c2_end", a.config.schedule.c2_end}};
    return m;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out = open_for_write(path);
    out << content;
    if (!out)
        throw IoError("failed while writing " + path.string());
}

std::string summary_name(const std::string& function_id, const std::string& algorithm_id) {
    return sanitize_id(function_id) + "__" + sanitize_id(algorithm_id) + ".json";
}

} // namespace

std::string report_to_json(const ComparisonReport& report) {
    json j;
    j["alpha"] = report.alpha;
    j["reference"] = report.reference;
    j["trials_per_cell"] = report.trials_per_cell;
    j["algorithms"] = report.algorithms;

    json functions = json::array();
    for (const ReportRow& row : report.rows) {
        json cells;
        for (std::size_t ai = 0; ai < report.algorithms.size(); ++ai) {
            const CellStats& c = row.cells[ai];
            json cell;
            cell["mean"] = c.mean;
            cell["std"] = c.stddev;
            cell["min"] = c.min;
            cell["max"] = c.max;
            cell["rank"] = row.ranks[ai];
            if (report.algorithms[ai] == report.reference) {
                cell["verdict"] = "ref";
            } else {
                cell["verdict"] = std::string(1, verdict_symbol(row.verdicts[ai]));
                cell["p_value"] = row.p_values[ai];
            }
            cells[report.algorithms[ai]] = std::move(cell);
        }
        functions.push_back({{"function", row.function}, {"cells", std::move(cells)}});
    }
    j["functions"] = std::move(functions);

    json agg;
    for (std::size_t ai = 0; ai < report.algorithms.size(); ++ai) {
        const std::string& id = report.algorithms[ai];
        agg["average_rank"][id] = report.average_rank[ai];
        agg["best_mean"][id] = report.best_mean_count[ai];
        agg["worst_mean"][id] = report.worst_mean_count[ai];
        if (id != report.reference) {
            agg["wins"][id] = report.wins[ai];
            agg["ties"][id] = report.ties[ai];
            agg["losses"][id] = report.losses[ai];
        }
    }
    j["aggregate"] = std::move(agg);
    return j.dump(2) + "\n";
}

std::string report_to_csv(const ComparisonReport& report) {
    std::string out = "function,algorithm,mean,std,min,max,rank,verdict,p_value\n";
    for (const ReportRow& row : report.rows) {
        for (std::size_t ai = 0; ai < report.algorithms.size(); ++ai) {
            const CellStats& c = row.cells[ai];
            out += row.function;
            out += ',';
            out += report.algorithms[ai];
            out += ',';
            out += format_double(c.mean);
            out += ',';
            out += format_double(c.stddev);
            out += ',';
            out += format_double(c.min);
            out += ',';
            out += format_double(c.max);
            out += ',';
            out += format_double(row.ranks[ai]);
            out += ',';
            if (report.algorithms[ai] == report.reference) {
                out += "ref,";
            } else {
                out += verdict_symbol(row.verdicts[ai]);
                out += ',';
                out += format_double(row.p_values[ai]);
            }
            out += '\n';
        }
    }
    return out;
}

std::string report_to_text(const ComparisonReport& report) {
    std::string out;
    out += "reference: " + report.reference + "  (alpha " + format_short(report.alpha) + ", " +
           std::to_string(report.trials_per_cell) + " trials per cell)\n\n";
    for (const ReportRow& row : report.rows) {
        out += row.function + "\n";
        for (std::size_t ai = 0; ai < report.algorithms.size(); ++ai) {
            const CellStats& c = row.cells[ai];
            char line[160];
            std::snprintf(line, sizeof line, "  %-16s mean %s  std %s  rank %.1f  %c\n",
                          report.algorithms[ai].c_str(), format_short(c.mean).c_str(),
                          format_short(c.stddev).c_str(), row.ranks[ai],
                          report.algorithms[ai] == report.reference
                              ? 'r'
                              : verdict_symbol(row.verdicts[ai]));
            out += line;
        }
    }
    out += "\naverage rank:";
    for (std::size_t ai = 0; ai < report.algorithms.size(); ++ai) {
        char chunk[96];
        std::snprintf(chunk, sizeof chunk, "  %s %.2f", report.algorithms[ai].c_str(),
                      report.average_rank[ai]);
        out += chunk;
    }
    out += "\n";
    for (std::size_t ai = 0; ai < report.algorithms.size(); ++ai) {
        if (report.algorithms[ai] == report.reference)
            continue;
        char chunk[128];
        std::snprintf(chunk, sizeof chunk, "vs %s: +%d =%d -%d\n", report.algorithms[ai].c_str(),
                      report.wins[ai], report.ties[ai], report.losses[ai]);
        out += chunk;
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    ExperimentConfig cfg = config;
    if (cfg.reference.empty() && !cfg.algorithms.empty())
        cfg.reference = cfg.algorithms.front().id;
    cfg.validate();

    std::vector<ObjectiveFunction> objectives;
    objectives.reserve(cfg.functions.size());
    for (const std::string& id : cfg.functions)
        objectives.push_back(make_function(id, cfg.dimension));

    // fail on an unwritable output directory before burning compute
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir / "trials", ec);
    if (!ec)
        std::filesystem::create_directories(cfg.output_dir / "summary", ec);
    if (ec)
        throw IoError("cannot create output directory " + cfg.output_dir.string() + ": " +
                      ec.message());

    const std::size_t n_fn = cfg.functions.size();
    const std::size_t n_algo = cfg.algorithms.size();
    const std::size_t n_trials = static_cast<std::size_t>(cfg.trials);
    const std::size_t n_jobs = n_fn * n_algo * n_trials;

    std::vector<TrialRecord> records(n_jobs);
    parallel_for(n_jobs, cfg.workers, [&](std::size_t j) {
        const std::size_t t = j % n_trials;
        const std::size_t ai = (j / n_trials) % n_algo;
        const std::size_t fi = j / (n_trials * n_algo);
        records[j] = run_algorithm(cfg.algorithms[ai], objectives[fi],
                                   cfg.seed + static_cast<std::uint64_t>(t));
    });

    for (std::size_t fi = 0; fi < n_fn; ++fi) {
        for (std::size_t ai = 0; ai < n_algo; ++ai) {
            const std::size_t base = (fi * n_algo + ai) * n_trials;
            const std::span<const TrialRecord> cell(records.data() + base, n_trials);
            const std::string stem =
                sanitize_id(cfg.functions[fi]) + "__" + sanitize_id(cfg.algorithms[ai].id);
            for (std::size_t t = 0; t < n_trials; ++t) {
                char name[64];
                std::snprintf(name, sizeof name, "__t%03zu.csv", t);
                write_trial_csv(cfg.output_dir / "trials" / (stem + name), cell[t], cfg.record);
            }
            const json summary =
                cell_summary_json(cfg, cfg.functions[fi], cfg.algorithms[ai], cell);
            write_text_file(cfg.output_dir / "summary" /
                                summary_name(cfg.functions[fi], cfg.algorithms[ai].id),
                            summary.dump(2) + "\n");
        }
    }

    ExperimentResult result;
    result.report = aggregate_report(records, cfg.reference, cfg.alpha);

    json meta;
    meta["alpha"] = cfg.alpha;
    meta["dimension"] = cfg.dimension;
    meta["functions"] = cfg.functions;
    meta["reference"] = cfg.reference;
    meta["seed"] = cfg.seed;
    meta["trials"] = cfg.trials;
    meta["record"] = {{"diversity", cfg.record.diversity},
                      {"channel_usage", cfg.record.channel_usage},
                      {"cap_trace", cfg.record.cap_trace},
                      {"stride", cfg.record.stride}};
    json algos = json::array();
    for (const AlgorithmSpec& a : cfg.algorithms)
        algos.push_back(algorithm_meta(a, cfg.dimension));
    meta["algorithms"] = std::move(algos);

    write_text_file(cfg.output_dir / "meta.json", meta.dump(2) + "\n");
    write_text_file(cfg.output_dir / "report.json", report_to_json(result.report));
    write_text_file(cfg.output_dir / "report.csv", report_to_csv(result.report));

    if (cfg.keep_records)
        result.records = std::move(records);
    return result;
}

std::vector<MSweepRow> sweep_m(const ExperimentConfig& config, std::span<const int> m_values) {
    if (m_values.empty())
        throw ConfigError("sweep: need at least one refreshing-gap value");
    for (const int m : m_values)
        if (m < 1)
            throw ConfigError("sweep: refreshing-gap values must be at least 1");

    std::vector<MSweepRow> rows;
    for (const int m : m_values) {
        ExperimentConfig sub = config;
        sub.output_dir = config.output_dir / ("m" + std::to_string(m));
        for (AlgorithmSpec& a : sub.algorithms)
            a.config.refreshing_gap = m;
        const ExperimentResult res = run_experiment(sub);
        for (const ReportRow& row : res.report.rows) {
            for (std::size_t ai = 0; ai < res.report.algorithms.size(); ++ai) {
                MSweepRow out;
                out.function = row.function;
                out.algorithm = res.report.algorithms[ai];
                out.m = m;
                out.mean = row.cells[ai].mean;
                out.stddev = row.cells[ai].stddev;
                rows.push_back(std::move(out));
            }
        }
    }

    std::string csv = "function,algorithm,m,mean,std\n";
    json arr = json::array();
    for (const MSweepRow& r : rows) {
        csv += r.function + "," + r.algorithm + "," + std::to_string(r.m) + "," +
               format_double(r.mean) + "," + format_double(r.stddev) + "\n";
        arr.push_back({{"function", r.function},
                       {"algorithm", r.algorithm},
                       {"m", r.m},
                       {"mean", r.mean},
                       {"std", r.stddev}});
    }
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + config.output_dir.string() + ": " +
                      ec.message());
    write_text_file(config.output_dir / "sweep_m.csv", csv);
    write_text_file(config.output_dir / "sweep_m.json", json{{"rows", std::move(arr)}}.dump(2) + "\n");
    return rows;
}

ExperimentResult run_ablation(const ExperimentConfig& config) {
    if (config.algorithms.empty())
        throw ConfigError("config.algorithms: need at least one algorithm as the template");
    ExperimentConfig cfg = config;
    const AbsConfig tmpl = config.algorithms.front().config;
    cfg.algorithms.clear();
    for (const Variant v : {Variant::Full, Variant::POnly, Variant::NonGOnly, Variant::GOnly}) {
        AlgorithmSpec spec;
        spec.id = variant_id(v);
        spec.config = tmpl;
        spec.config.variant = v;
        cfg.algorithms.push_back(std::move(spec));
    }
    cfg.reference = variant_id(Variant::Full);
    return run_experiment(cfg);
}

ComparisonReport report_from_dir(const std::filesystem::path& dir) {
    const std::filesystem::path meta_path = dir / "meta.json";
    std::ifstream in(meta_path);
    if (!in)
        throw IoError("no meta.json in " + dir.string() + " (is this a run directory?)");
    json meta;
    try {
        in >> meta;
    } catch (const json::parse_error& e) {
        throw IoError("unreadable meta.json in " + dir.string() + ": " + e.what());
    }

    const double alpha = meta.value("alpha", 0.05);
    const std::string reference = meta.value("reference", std::string{});
    const std::uint64_t seed_base = meta.value("seed", std::uint64_t{0});
    if (!meta.contains("functions") || !meta.contains("algorithms"))
        throw IoError("meta.json in " + dir.string() + " lacks functions/algorithms");

    std::vector<TrialRecord> trials;
    for (const json& fn : meta["functions"]) {
        const std::string function_id = fn.get<std::string>();
        for (const json& am : meta["algorithms"]) {
            const std::string algo_id = am.at("id").get<std::string>();
            const std::filesystem::path spath =
                dir / "summary" / summary_name(function_id, algo_id);
            std::ifstream sin(spath);
            if (!sin)
                throw IoError("missing summary " + spath.string());
            json s;
            try {
                sin >> s;
            } catch (const json::parse_error& e) {
                throw IoError("unreadable summary " + spath.string() + ": " + e.what());
            }
            if (!s.contains("final_errors") || !s["final_errors"].is_array())
                throw IoError("summary " + spath.string() + " lacks final_errors");
            std::uint64_t t = 0;
            for (const json& e : s["final_errors"]) {
                TrialRecord rec;
                rec.function = function_id;
                rec.algorithm = algo_id;
                rec.seed = seed_base + t;
                rec.final_error = e.get<double>();
                trials.push_back(std::move(rec));
                ++t;
            }
        }
    }
    return aggregate_report(trials, reference, alpha);
}

} // namespace dcpso
