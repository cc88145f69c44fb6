#include "rtplan/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace rtplan {

std::uint64_t derive_run_seed(std::uint64_t base_seed, int experiment, Env env, PlannerKind planner,
                              int samples, int repeat) {
    std::uint64_t s = mix_seed(base_seed, static_cast<std::uint64_t>(experiment));
    s = mix_seed(s, static_cast<std::uint64_t>(env) + 11);
    s = mix_seed(s, static_cast<std::uint64_t>(planner) + 23);
    s = mix_seed(s, static_cast<std::uint64_t>(samples));
    s = mix_seed(s, static_cast<std::uint64_t>(repeat) + 101);
    return s;
}

SimMode experiment_mode(int experiment) {
    return experiment == 1 ? SimMode::NonRealTime : SimMode::RealTime;
}

bool experiment_has_dynamic_obstacles(int experiment) { return experiment == 3; }

namespace {

std::string format_metric(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

MetricStat stat_of(std::vector<double> values) {
    MetricStat stat;
    stat.count = static_cast<int>(values.size());
    if (values.empty()) return stat;
    double sum = 0.0;
    for (double v : values) sum += v;
    stat.mean = sum / stat.count;
    if (stat.count > 1) {
        double sq = 0.0;
        for (double v : values) sq += (v - stat.mean) * (v - stat.mean);
        stat.stddev = std::sqrt(sq / (stat.count - 1));
    }
    return stat;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

std::string aggregate_row_to_csv(const AggregateRow& a) {
    std::ostringstream os;
    os << a.experiment << ',' << to_string(a.env) << ',' << to_string(a.planner) << ',' << a.samples
       << ',' << a.runs << ',' << a.successes << ',' << format_metric(a.success_rate) << ','
       << format_metric(a.planning_time.mean) << ',' << format_metric(a.planning_time.stddev) << ','
       << format_metric(a.executed_cost.mean) << ',' << format_metric(a.executed_cost.stddev) << ','
       << format_metric(a.arrival_time.mean) << ',' << format_metric(a.arrival_time.stddev);
    return os.str();
}

constexpr const char* kAggregateCsvHeader =
    "experiment,env,planner,samples,runs,successes,success_rate,planning_time_mean,"
    "planning_time_std,executed_cost_mean,executed_cost_std,arrival_time_mean,arrival_time_std";

}  // namespace

std::string run_row_to_csv(const RunRow& row) {
    std::ostringstream os;
    os << row.experiment << ',' << to_string(row.env) << ',' << to_string(row.planner) << ','
       << row.samples << ',' << row.repeat << ',' << row.seed << ',' << (row.metrics.success ? 1 : 0)
       << ',' << to_string(row.metrics.failure_reason) << ','
       << format_metric(row.metrics.planning_time_s) << ','
       << format_metric(row.metrics.executed_cost_m) << ','
       << format_metric(row.metrics.arrival_time_s);
    return os.str();
}

std::vector<AggregateRow> compute_aggregates(const std::vector<RunRow>& rows) {
    std::vector<AggregateRow> out;
    std::vector<int> sample_counts;
    for (const auto& row : rows) {
        if (std::find(sample_counts.begin(), sample_counts.end(), row.samples) == sample_counts.end()) {
            sample_counts.push_back(row.samples);
        }
    }
    std::sort(sample_counts.begin(), sample_counts.end());
    for (int n : sample_counts) {
        AggregateRow agg;
        std::vector<double> planning, cost, arrival;
        for (const auto& row : rows) {
            if (row.samples != n) continue;
            agg.experiment = row.experiment;
            agg.env = row.env;
            agg.planner = row.planner;
            agg.samples = n;
            ++agg.runs;
            if (row.metrics.success) {
                ++agg.successes;
                if (std::isfinite(row.metrics.planning_time_s)) {
                    planning.push_back(row.metrics.planning_time_s);
                }
                cost.push_back(row.metrics.executed_cost_m);
                arrival.push_back(row.metrics.arrival_time_s);
            }
        }
        agg.success_rate = agg.runs > 0 ? static_cast<double>(agg.successes) / agg.runs : 0.0;
        agg.planning_time = stat_of(std::move(planning));
        agg.executed_cost = stat_of(std::move(cost));
        agg.arrival_time = stat_of(std::move(arrival));
        out.push_back(agg);
    }
    return out;
}

ExperimentResult run_experiment_in_memory(const ExperimentSpec& spec) {
    if (spec.experiment < 1 || spec.experiment > 3) throw std::invalid_argument("experiment must be 1, 2 or 3");
    if (spec.samples.empty()) throw std::invalid_argument("sample count list must not be empty");
    if (!std::is_sorted(spec.samples.begin(), spec.samples.end())) {
        throw std::invalid_argument("sample counts must be ascending");
    }
    if (spec.repeats < 1) throw std::invalid_argument("repeats must be >= 1");

    const SimMode mode = experiment_mode(spec.experiment);
    const bool dynamics = experiment_has_dynamic_obstacles(spec.experiment);
    const Scenario prototype = make_scenario(spec.env, spec.env_seed, 0, dynamics, 0);

    std::vector<RunRow> rows;
    for (int n : spec.samples) {
        for (int repeat = 0; repeat < spec.repeats; ++repeat) {
            RunRow row;
            row.experiment = spec.experiment;
            row.env = spec.env;
            row.planner = spec.planner;
            row.samples = n;
            row.repeat = repeat;
            row.seed = derive_run_seed(spec.base_seed, spec.experiment, spec.env, spec.planner, n, repeat);
            rows.push_back(row);
        }
    }

    const int workers = std::max(1, std::min<int>(spec.workers, static_cast<int>(rows.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= rows.size()) return;
            Scenario scenario = prototype;
            scenario.planner.samples = rows[i].samples;
            scenario.seed = rows[i].seed;
            rows[i].metrics = run_simulation(scenario, spec.planner, mode, spec.clock);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    ExperimentResult result;
    result.runs = std::move(rows);
    result.aggregates = compute_aggregates(result.runs);
    return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    namespace fs = std::filesystem;
    if (spec.out_dir.empty()) throw std::invalid_argument("output directory must be set");
    const fs::path dir(spec.out_dir);
    if (fs::exists(dir) && !spec.force) {
        throw std::runtime_error("output directory exists; pass force to overwrite: " + spec.out_dir);
    }
    fs::create_directories(dir);

    ExperimentResult result = run_experiment_in_memory(spec);

    {
        std::ofstream runs(dir / "runs.csv");
        runs << kRunCsvHeader << "\n";
        for (const auto& row : result.runs) runs << run_row_to_csv(row) << "\n";
    }
    {
        std::ofstream agg(dir / "aggregate.csv");
        agg << kAggregateCsvHeader << "\n";
        for (const auto& row : result.aggregates) agg << aggregate_row_to_csv(row) << "\n";
    }
    {
        std::ofstream meta(dir / "meta.json");
        meta << "{\n"
             << "  \"experiment\": " << spec.experiment << ",\n"
             << "  \"env\": \"" << to_string(spec.env) << "\",\n"
             << "  \"planner\": \"" << to_string(spec.planner) << "\",\n"
             << "  \"repeats\": " << spec.repeats << ",\n"
             << "  \"base_seed\": " << spec.base_seed << ",\n"
             << "  \"env_seed\": " << spec.env_seed << ",\n"
             << "  \"clock\": \"" << (spec.clock == ClockMode::Virtual ? "virtual" : "wall") << "\",\n"
             << "  \"notes\": \"samples means free-space sample count for rtfmt and expansion "
                "attempts for rtrrt; failed runs are excluded from metric means and only enter the "
                "success rate\"\n"
             << "}\n";
    }
    return result;
}

std::vector<AggregateRow> load_aggregates(const std::string& dir) {
    const std::filesystem::path path = std::filesystem::path(dir) / "aggregate.csv";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty aggregate file: " + path.string());
    std::vector<AggregateRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 13) throw std::runtime_error("malformed aggregate row: " + line);
        AggregateRow a;
        a.experiment = std::stoi(f[0]);
        a.env = env_from_string(f[1]);
        a.planner = planner_from_string(f[2]);
        a.samples = std::stoi(f[3]);
        a.runs = std::stoi(f[4]);
        a.successes = std::stoi(f[5]);
        a.success_rate = std::stod(f[6]);
        a.planning_time.mean = std::stod(f[7]);
        a.planning_time.stddev = std::stod(f[8]);
        a.executed_cost.mean = std::stod(f[9]);
        a.executed_cost.stddev = std::stod(f[10]);
        a.arrival_time.mean = std::stod(f[11]);
        a.arrival_time.stddev = std::stod(f[12]);
        rows.push_back(a);
    }
    return rows;
}

std::string compare_report(const std::vector<AggregateRow>& a, const std::vector<AggregateRow>& b) {
    std::ostringstream os;
    os << "experiment,env,samples,planner_a,planner_b,planning_time_diff,executed_cost_diff,"
          "arrival_time_diff,success_rate_diff,planning_time_winner,executed_cost_winner,"
          "arrival_time_winner\n";
    int a_planning = 0, a_cost = 0, a_arrival = 0, cells = 0;
    for (const auto& ra : a) {
        const AggregateRow* rb = nullptr;
        for (const auto& cand : b) {
            if (cand.experiment == ra.experiment && cand.env == ra.env && cand.samples == ra.samples) {
                rb = &cand;
                break;
            }
        }
        if (rb == nullptr) continue;
        ++cells;
        const double dp = ra.planning_time.mean - rb->planning_time.mean;
        const double dc = ra.executed_cost.mean - rb->executed_cost.mean;
        const double da = ra.arrival_time.mean - rb->arrival_time.mean;
        const double ds = ra.success_rate - rb->success_rate;
        auto winner = [](double diff) { return diff < 0.0 ? "a" : (diff > 0.0 ? "b" : "tie"); };
        if (dp < 0.0) ++a_planning;
        if (dc < 0.0) ++a_cost;
        if (da < 0.0) ++a_arrival;
        os << ra.experiment << ',' << to_string(ra.env) << ',' << ra.samples << ','
           << to_string(ra.planner) << ',' << to_string(rb->planner) << ',' << format_metric(dp)
           << ',' << format_metric(dc) << ',' << format_metric(da) << ',' << format_metric(ds)
           << ',' << winner(dp) << ',' << winner(dc) << ',' << winner(da) << "\n";
    }
    os << "# summary: a wins planning_time in " << a_planning << "/" << cells
       << " cells, executed_cost in " << a_cost << "/" << cells << ", arrival_time in " << a_arrival
       << "/" << cells << "\n";
    return os.str();
}

}  // namespace rtplan
