#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rtplan/simulator.hpp"

namespace rtplan {

/// One benchmark invocation: a single (experiment, environment, planner)
/// triple swept over sample counts and repeats.
struct ExperimentSpec {
    int experiment = 1;  // 1: plan-then-execute, 2: real-time, 3: real-time + dynamic obstacles
    Env env = Env::Maze;
    PlannerKind planner = PlannerKind::RtFmt;
    std::vector<int> samples;
    int repeats = 1;
    std::uint64_t base_seed = 0;
    std::uint64_t env_seed = 0;  // layout seed, fixed across the sweep
    ClockMode clock = ClockMode::Virtual;
    int workers = 1;
    std::string out_dir;
    bool force = false;
};

struct RunRow {
    int experiment = 1;
    Env env = Env::Maze;
    PlannerKind planner = PlannerKind::RtFmt;
    int samples = 0;
    int repeat = 0;
    std::uint64_t seed = 0;
    RunMetrics metrics;
};

struct MetricStat {
    double mean = std::numeric_limits<double>::quiet_NaN();
    double stddev = 0.0;
    int count = 0;
};

/// Aggregate of one (experiment, env, planner, N) cell. Means and deviations
/// are computed over successful runs only; failures count into the success
/// rate.
struct AggregateRow {
    int experiment = 1;
    Env env = Env::Maze;
    PlannerKind planner = PlannerKind::RtFmt;
    int samples = 0;
    int runs = 0;
    int successes = 0;
    double success_rate = 0.0;
    MetricStat planning_time;
    MetricStat executed_cost;
    MetricStat arrival_time;
};

struct ExperimentResult {
    std::vector<RunRow> runs;
    std::vector<AggregateRow> aggregates;
};

/// Pure function deriving one run's seed from the cell coordinates.
std::uint64_t derive_run_seed(std::uint64_t base_seed, int experiment, Env env, PlannerKind planner,
                              int samples, int repeat);

/// Simulation mode and dynamic-obstacle presence implied by the experiment id.
SimMode experiment_mode(int experiment);
bool experiment_has_dynamic_obstacles(int experiment);

constexpr const char* kRunCsvHeader =
    "experiment,env,planner,samples,repeat,seed,success,failure_reason,planning_time_s,"
    "executed_cost_m,arrival_time_s";

std::string run_row_to_csv(const RunRow& row);
std::vector<AggregateRow> compute_aggregates(const std::vector<RunRow>& rows);

/// Runs the whole sweep and writes runs.csv, aggregate.csv and meta.json into
/// spec.out_dir (refusing to reuse an existing directory unless spec.force).
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// In-memory variant without any file output (used by tests and acceptance).
ExperimentResult run_experiment_in_memory(const ExperimentSpec& spec);

std::vector<AggregateRow> load_aggregates(const std::string& dir);

/// Per-cell mean differences (A - B) and a sign summary of which side wins
/// each metric; cells are matched on (experiment, env, samples).
std::string compare_report(const std::vector<AggregateRow>& a, const std::vector<AggregateRow>& b);

}  // namespace rtplan
