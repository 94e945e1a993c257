#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "airs/acr.hpp"
#include "airs/generator.hpp"
#include "airs/paxr.hpp"

namespace airs {

// One benchmarked recovery run.  Field groups mirror the three result tables:
// per-iteration sub-step averages, evolution figures, and the run summary.
struct BenchRun {
    std::string instance; // shape label, e.g. "small"
    std::uint64_t seed = 0;

    // run summary
    double full_tts_seconds = 0;
    int acr_iterations = 0;
    double initial_paxr_cost = 0;
    double final_paxr_cost = 0;

    // per ACR iteration averages
    double prox_seconds = 0;
    double space_gen_seconds = 0;
    double tsn_const_ms = 0;
    double tsn_optim_seconds = 0;
    double iteration_seconds = 0;

    // schedule improvement (the evolutionary pass), per run
    double sched_improv_seconds = 0;
    int generations = 0;

    double acr_objective = 0;
    std::string status;   // last solve status
    int violations = 0;   // feasibility re-audit of the final plan
};

struct BenchReport {
    std::vector<BenchRun> runs;
};

struct BenchConfig {
    GeneratorConfig shape;
    std::string label = "custom";
    std::vector<std::uint64_t> seeds{1};
    double wall_seconds = 600; // full per-run budget
    double acr_fraction = 0.6; // remainder goes to the evolutionary pass
    std::string backend_cmd;   // empty = built-in engine
    int threads = 0;
};

// Named instance shapes used by the harness and the CLI, smallest to largest.
// The largest mirrors the published benchmark scale and is meant for runs
// with an external backend.
GeneratorConfig tier_config(const std::string& tier); // small|medium|large|xlarge
std::vector<std::string> tier_names();

// Fills one row from the two stage results.  `pax_seconds` is the wall time
// of the evolutionary pass, `full_seconds` the whole run.  The final plan is
// re-audited from scratch into `violations`.
BenchRun measure_row(const std::string& label, std::uint64_t seed, const DisruptedState& st,
                     const AcrResult& acr, const PaxResult& pax, double pax_seconds,
                     double full_seconds);

// Generate, recover, re-accommodate, measure. One row per seed.
BenchRun bench_one(const BenchConfig& cfg, std::uint64_t seed);
BenchReport run_bench(const BenchConfig& cfg);

// One row per run with a header line; stable column order.
std::string report_csv(const BenchReport& r);
// The three aligned summary tables, averaged per instance label.
std::string report_tables(const BenchReport& r);

} // namespace airs
