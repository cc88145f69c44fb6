// plan-bench: benchmark harness around the rtplan planners.
//
// Subcommands:
//   run       sweep one (experiment, env, planner) cell grid and write CSVs
//   compare   diff the aggregates of two output directories
//   simulate  run a single scenario file, optionally tracing the trajectory
//   scenario  export a built-in environment as a scenario JSON file

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rtplan/experiments.hpp"
#include "rtplan/scenario_io.hpp"
#include "rtplan/simulator.hpp"

namespace {

int run_command(const std::string& env, const std::string& planner, int experiment,
                std::vector<int> samples, int repeats, std::uint64_t seed, std::uint64_t env_seed,
                const std::string& clock, int workers, const std::string& out, bool force) {
    rtplan::ExperimentSpec spec;
    spec.experiment = experiment;
    spec.env = rtplan::env_from_string(env);
    spec.planner = rtplan::planner_from_string(planner);
    spec.samples = std::move(samples);
    spec.repeats = repeats;
    spec.base_seed = seed;
    spec.env_seed = env_seed;
    spec.clock = clock == "wall" ? rtplan::ClockMode::Wall : rtplan::ClockMode::Virtual;
    spec.workers = workers;
    spec.out_dir = out;
    spec.force = force;

    const rtplan::ExperimentResult result = rtplan::run_experiment(spec);
    int successes = 0;
    for (const auto& row : result.runs) successes += row.metrics.success ? 1 : 0;
    std::printf("wrote %zu runs (%d successful) to %s\n", result.runs.size(), successes, out.c_str());
    return 0;
}

int compare_command(const std::string& dir_a, const std::string& dir_b, const std::string& out) {
    const auto a = rtplan::load_aggregates(dir_a);
    const auto b = rtplan::load_aggregates(dir_b);
    const std::string report = rtplan::compare_report(a, b);
    if (out.empty()) {
        std::cout << report;
    } else {
        std::ofstream file(out);
        if (!file) throw std::runtime_error("cannot open " + out);
        file << report;
        std::printf("wrote comparison to %s\n", out.c_str());
    }
    return 0;
}

int simulate_command(const std::string& scenario_path, const std::string& planner,
                     const std::string& mode, const std::string& clock, std::uint64_t seed,
                     bool seed_set, const std::string& trace_path, const std::string& events_path) {
    rtplan::Scenario scenario = rtplan::load_scenario(scenario_path);
    if (seed_set) scenario.seed = seed;

    std::ofstream trace_file, events_file;
    rtplan::SimHooks hooks;
    if (!trace_path.empty()) {
        trace_file.open(trace_path);
        if (!trace_file) throw std::runtime_error("cannot open " + trace_path);
        hooks.trajectory = &trace_file;
    }
    if (!events_path.empty()) {
        events_file.open(events_path);
        if (!events_file) throw std::runtime_error("cannot open " + events_path);
        hooks.events = &events_file;
    }

    const rtplan::RunMetrics metrics = rtplan::run_simulation(
        scenario, rtplan::planner_from_string(planner),
        mode == "nonrealtime" ? rtplan::SimMode::NonRealTime : rtplan::SimMode::RealTime,
        clock == "wall" ? rtplan::ClockMode::Wall : rtplan::ClockMode::Virtual,
        (hooks.trajectory || hooks.events) ? &hooks : nullptr);

    std::printf("success=%d failure_reason=%s planning_time_s=%.6f executed_cost_m=%.6f "
                "arrival_time_s=%.6f ticks=%ld\n",
                metrics.success ? 1 : 0, rtplan::to_string(metrics.failure_reason).c_str(),
                metrics.planning_time_s, metrics.executed_cost_m, metrics.arrival_time_s,
                metrics.ticks);
    return metrics.success ? 0 : 2;
}

int scenario_command(const std::string& env, std::uint64_t env_seed, int samples, int experiment,
                     std::uint64_t seed, const std::string& out) {
    const rtplan::Scenario scenario =
        rtplan::make_scenario(rtplan::env_from_string(env), env_seed, samples,
                              rtplan::experiment_has_dynamic_obstacles(experiment), seed);
    rtplan::save_scenario(scenario, out);
    std::printf("wrote %s scenario to %s\n", env.c_str(), out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Real-time sampling-based planner benchmark"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run one experiment sweep and write CSV output");
    int experiment = 1;
    std::string env = "maze", planner = "rtfmt", clock = "virtual", out;
    std::vector<int> samples{500, 1500, 2500, 3500, 4500};
    int repeats = 50, workers = 1;
    std::uint64_t seed = 0, env_seed = 0;
    bool force = false;
    run->add_option("--experiment", experiment, "Experiment id")->required()->check(CLI::Range(1, 3));
    run->add_option("--env", env, "Environment")->check(CLI::IsMember({"maze", "mine"}));
    run->add_option("--planner", planner, "Planner")->check(CLI::IsMember({"rtfmt", "rtrrt"}));
    run->add_option("--samples", samples, "Sample counts (planner-specific meaning)")->delimiter(',');
    run->add_option("--repeats", repeats, "Repeats per sample count");
    run->add_option("--seed", seed, "Base seed");
    run->add_option("--env-seed", env_seed, "Environment layout seed");
    run->add_option("--clock", clock, "Clock mode")->check(CLI::IsMember({"virtual", "wall"}));
    run->add_option("--workers", workers, "Concurrent runs");
    run->add_option("--out", out, "Output directory")->required();
    run->add_flag("--force", force, "Overwrite an existing output directory");

    // compare
    auto* compare = app.add_subcommand("compare", "Compare the aggregates of two run directories");
    std::string dir_a, dir_b, compare_out;
    compare->add_option("dir_a", dir_a, "First output directory")->required();
    compare->add_option("dir_b", dir_b, "Second output directory")->required();
    compare->add_option("--out", compare_out, "Write the report to a file instead of stdout");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Run one scenario file");
    std::string scenario_path, sim_planner = "rtfmt", sim_mode = "realtime", sim_clock = "virtual";
    std::string trace_path, events_path;
    std::uint64_t sim_seed = 0;
    simulate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    simulate->add_option("--planner", sim_planner, "Planner")->check(CLI::IsMember({"rtfmt", "rtrrt"}));
    simulate->add_option("--mode", sim_mode, "Simulation mode")
        ->check(CLI::IsMember({"realtime", "nonrealtime"}));
    simulate->add_option("--clock", sim_clock, "Clock mode")->check(CLI::IsMember({"virtual", "wall"}));
    auto* seed_opt = simulate->add_option("--seed", sim_seed, "Override the scenario seed");
    simulate->add_option("--trace", trace_path, "Write a trajectory CSV");
    simulate->add_option("--events", events_path, "Write a planner event-log CSV");

    // scenario
    auto* scenario = app.add_subcommand("scenario", "Export a built-in environment as JSON");
    std::string scen_env = "maze", scen_out;
    std::uint64_t scen_env_seed = 0, scen_seed = 0;
    int scen_samples = 2500, scen_experiment = 3;
    scenario->add_option("--env", scen_env, "Environment")->check(CLI::IsMember({"maze", "mine"}));
    scenario->add_option("--env-seed", scen_env_seed, "Environment layout seed");
    scenario->add_option("--samples", scen_samples, "Sample budget stored in the scenario");
    scenario->add_option("--experiment", scen_experiment, "Experiment shape (3 keeps dynamic obstacles)")
        ->check(CLI::Range(1, 3));
    scenario->add_option("--seed", scen_seed, "Run seed stored in the scenario");
    scenario->add_option("--out", scen_out, "Output JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return run_command(env, planner, experiment, samples, repeats, seed, env_seed, clock,
                               workers, out, force);
        }
        if (compare->parsed()) return compare_command(dir_a, dir_b, compare_out);
        if (simulate->parsed()) {
            return simulate_command(scenario_path, sim_planner, sim_mode, sim_clock, sim_seed,
                                    seed_opt->count() > 0, trace_path, events_path);
        }
        if (scenario->parsed()) {
            return scenario_command(scen_env, scen_env_seed, scen_samples, scen_experiment,
                                    scen_seed, scen_out);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
