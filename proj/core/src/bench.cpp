#include "airs/bench.hpp"

#include "airs/acr.hpp"
#include "airs/paxr.hpp"
#include "airs/schedule.hpp"
#include "airs/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace airs {
namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v, int prec = 1) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

} // namespace

GeneratorConfig tier_config(const std::string& tier) {
    GeneratorConfig c;
    if (tier == "small") {
        c.airports = 7;
        c.slotted_airports = 2;
        c.aircraft = 4;
        c.crews = 7;
        c.flights = 16;
        c.passenger_tickets = 120;
        c.multileg_connections = 1;
        c.flight_disruptions = 3;
        c.maintenances = 1;
        c.slots = 30;
    } else if (tier == "medium") {
        c.airports = 14;
        c.slotted_airports = 6;
        c.aircraft = 10;
        c.crews = 18;
        c.flights = 48;
        c.passenger_tickets = 700;
        c.multileg_connections = 2;
        c.flight_disruptions = 6;
        c.maintenances = 2;
        c.slots = 120;
    } else if (tier == "large") {
        c.airports = 20;
        c.slotted_airports = 12;
        c.aircraft = 24;
        c.crews = 46;
        c.flights = 130;
        c.passenger_tickets = 2500;
        c.multileg_connections = 3;
        c.flight_disruptions = 14;
        c.maintenances = 2;
        c.slots = 400;
    } else if (tier == "xlarge") {
        // the published benchmark scale
        c.airports = 35;
        c.slotted_airports = 25;
        c.aircraft = 85;
        c.crews = 162;
        c.flights = 608;
        c.passenger_tickets = 43964;
        c.multileg_connections = 4;
        c.flight_disruptions = 63;
        c.maintenances = 3;
        c.slots = 1478;
    } else {
        throw std::runtime_error("unknown tier: " + tier);
    }
    return c;
}

std::vector<std::string> tier_names() { return {"small", "medium", "large", "xlarge"}; }

BenchRun measure_row(const std::string& label, std::uint64_t seed, const DisruptedState& st,
                     const AcrResult& acr, const PaxResult& pax, double pax_seconds,
                     double full_seconds) {
    BenchRun row;
    row.instance = label;
    row.seed = seed;
    row.acr_iterations = (int)acr.iterations.size();
    row.acr_objective = acr.objective;
    row.status = solve_status_name(acr.status);
    for (const AcrIterationRow& it : acr.iterations) {
        row.prox_seconds += it.prox_seconds;
        row.space_gen_seconds += it.space_seconds;
        row.tsn_const_ms += it.tsn_seconds * 1000.0;
        row.tsn_optim_seconds += it.solve_seconds;
        row.iteration_seconds += it.total_seconds;
    }
    if (row.acr_iterations > 0) {
        row.prox_seconds /= row.acr_iterations;
        row.space_gen_seconds /= row.acr_iterations;
        row.tsn_const_ms /= row.acr_iterations;
        row.tsn_optim_seconds /= row.acr_iterations;
        row.iteration_seconds /= row.acr_iterations;
    }

    row.sched_improv_seconds = pax_seconds;
    row.generations = pax.generations;
    row.initial_paxr_cost = pax.trace.empty() ? pax.total_cost : pax.trace.front();
    row.final_paxr_cost = pax.total_cost;

    row.violations = (int)check_feasibility(st, pax.schedule).size() +
                     (int)check_assignment(st, pax.schedule, pax.assignment).size();
    row.full_tts_seconds = full_seconds;
    return row;
}

BenchRun bench_one(const BenchConfig& cfg, std::uint64_t seed) {
    GeneratorConfig gc = cfg.shape;
    gc.seed = seed;
    auto t0 = Clock::now();
    DisruptedState st = apply_disruptions(generate_instance(gc));

    AcrBudget ab;
    ab.wall_seconds = cfg.wall_seconds * cfg.acr_fraction;
    ab.backend_cmd = cfg.backend_cmd;
    AcrResult acr = run_acr(st, ab);

    PaxParams pp;
    pp.wall_seconds = cfg.wall_seconds * (1.0 - cfg.acr_fraction);
    pp.seed = seed;
    pp.threads = cfg.threads;
    auto tp = Clock::now();
    PaxResult pr = evolve(st, acr.schedule, pp);

    return measure_row(cfg.label, seed, st, acr, pr, since(tp), since(t0));
}

BenchReport run_bench(const BenchConfig& cfg) {
    BenchReport rep;
    for (std::uint64_t s : cfg.seeds) rep.runs.push_back(bench_one(cfg, s));
    return rep;
}

std::string report_csv(const BenchReport& r) {
    std::ostringstream out;
    out << "instance,seed,full_tts_s,acr_iters,prox_s,space_gen_s,tsn_const_ms,tsn_optim_s,"
           "iteration_s,sched_improv_s,generations,initial_paxr_cost,final_paxr_cost,"
           "acr_objective,status,violations\n";
    for (const BenchRun& b : r.runs) {
        out << b.instance << ',' << b.seed << ',' << num(b.full_tts_seconds, 3) << ','
            << b.acr_iterations << ',' << num(b.prox_seconds, 3) << ','
            << num(b.space_gen_seconds, 3) << ',' << num(b.tsn_const_ms, 3) << ','
            << num(b.tsn_optim_seconds, 3) << ',' << num(b.iteration_seconds, 3) << ','
            << num(b.sched_improv_seconds, 3) << ',' << b.generations << ','
            << num(b.initial_paxr_cost, 1) << ',' << num(b.final_paxr_cost, 1) << ','
            << num(b.acr_objective, 1) << ',' << b.status << ',' << b.violations << '\n';
    }
    return out.str();
}

namespace {

struct Agg {
    int runs = 0;
    double full = 0, iters = 0, prox = 0, space = 0, tsn_ms = 0, optim = 0, iter_s = 0;
    double improv = 0, gens = 0, ini = 0, fin = 0;
};

void pad(std::ostringstream& out, const std::string& s, int w) {
    out << s;
    for (int i = (int)s.size(); i < w; ++i) out << ' ';
}

} // namespace

std::string report_tables(const BenchReport& r) {
    std::map<std::string, Agg> by;
    std::vector<std::string> order;
    for (const BenchRun& b : r.runs) {
        if (!by.count(b.instance)) order.push_back(b.instance);
        Agg& a = by[b.instance];
        ++a.runs;
        a.full += b.full_tts_seconds;
        a.iters += b.acr_iterations;
        a.prox += b.prox_seconds;
        a.space += b.space_gen_seconds;
        a.tsn_ms += b.tsn_const_ms;
        a.optim += b.tsn_optim_seconds;
        a.iter_s += b.iteration_seconds;
        a.improv += b.sched_improv_seconds;
        a.gens += b.generations;
        a.ini += b.initial_paxr_cost;
        a.fin += b.final_paxr_cost;
    }
    std::ostringstream out;
    out << "ACR performance averages (sub-step times are per iteration)\n";
    out << "Instance    Prox. (s)  S.S. Gen. (s)  TSN Const. (ms)  TSN Optim. (s)  "
           "Entire Iteration (s)\n";
    for (const std::string& k : order) {
        const Agg& a = by[k];
        pad(out, k, 12);
        pad(out, num(a.prox / a.runs), 11);
        pad(out, num(a.space / a.runs), 15);
        pad(out, num(a.tsn_ms / a.runs), 17);
        pad(out, num(a.optim / a.runs), 16);
        out << num(a.iter_s / a.runs) << '\n';
    }
    out << "\nPaxR performance averages (times are per run)\n";
    out << "Instance    Sched. Improv. TTS (s)  Evolution Generations\n";
    for (const std::string& k : order) {
        const Agg& a = by[k];
        pad(out, k, 12);
        pad(out, num(a.improv / a.runs), 24);
        out << num(a.gens / a.runs) << '\n';
    }
    out << "\nBenchmark summary (averages are per run)\n";
    out << "Instance    Runs  Full TTS (s)  ACR Iters/Run  Initial PaxR Cost  Final PaxR Cost\n";
    for (const std::string& k : order) {
        const Agg& a = by[k];
        pad(out, k, 12);
        pad(out, std::to_string(a.runs), 6);
        pad(out, num(a.full / a.runs), 14);
        pad(out, num(a.iters / a.runs), 15);
        pad(out, num(a.ini / a.runs), 19);
        out << num(a.fin / a.runs) << '\n';
    }
    return out.str();
}

} // namespace airs
