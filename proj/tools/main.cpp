#include <airs/acr.hpp>
#include <airs/bench.hpp>
#include <airs/change_orders.hpp>
#include <airs/generator.hpp>
#include <airs/io.hpp>
#include <airs/model.hpp>
#include <airs/paxr.hpp>
#include <airs/plot.hpp>
#include <airs/schedule.hpp>
#include <airs/search_space.hpp>
#include <airs/solver.hpp>
#include <airs/tsn.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace airs;

namespace {

// Bad command line. Caught in main: message, the command's usage, exit 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* kUsage =
    "usage: airs <command> [options]\n"
    "\n"
    "commands:\n"
    "  gen-instance  write a synthetic problem instance\n"
    "  validate      check an instance file and report diagnostics\n"
    "  solve         recover an instance and write the change orders\n"
    "  plot          render an instance, a plan, or network segments as SVG\n"
    "  bench         run the benchmark harness on generated instance tiers\n"
    "\n"
    "run `airs <command> --help` for one command's options.\n";

const char* kGenUsage =
    "usage: airs gen-instance [options] -o PATH\n"
    "\n"
    "  -o, --out PATH     instance file (.json) or table directory to write\n"
    "  --tier NAME        small | medium | large | xlarge  (default small)\n"
    "  --seed N           generator seed  (default 1)\n"
    "  --format KIND      json | tables  (default: by PATH, .json means json)\n";

const char* kValidateUsage =
    "usage: airs validate INSTANCE\n"
    "\n"
    "Prints one line per problem found. A clean instance prints nothing.\n"
    "Exit 0 clean, 1 diagnostics, 2 unreadable input.\n";

const char* kSolveUsage =
    "usage: airs solve INSTANCE -o PLAN [options]\n"
    "\n"
    "  -o, --out PLAN       change-order file to write (json)\n"
    "  --budget SECONDS     full wall-time budget  (default 600)\n"
    "  --acr-share F        budget share of the aircraft/crew stage, 0..1  (default 0.6)\n"
    "  --max-iterations N   aircraft/crew iteration cap  (default 12)\n"
    "  --seed N             evolution seed  (default 1)\n"
    "  --threads N          evolution workers, 0 = hardware  (default 0)\n"
    "  --backend CMD        external MILP backend command  (default: built-in)\n"
    "  --granularity MIN    re-timing grid in minutes  (default 15)\n"
    "  --svg DIR            also render problem.svg and solution.svg into DIR\n"
    "  --report FILE        append one benchmark report row (csv) to FILE\n"
    "\n"
    "The plan is only written when the recovered schedule and the passenger\n"
    "assignment pass the from-scratch audits; otherwise exit 1.\n";

const char* kPlotUsage =
    "usage: airs plot INSTANCE [-o DIR] [options]\n"
    "\n"
    "  -o, --out DIR        output directory  (default .)\n"
    "  --plan FILE          replay a change-order file and render solution.svg\n"
    "  --aircraft ID        network segment for one aircraft (repeatable)\n"
    "  --crew ID            network segment for one crew (repeatable)\n"
    "  --all-segments       network segments for every aircraft and crew\n"
    "  --granularity MIN    option grid for the network views  (default 15)\n"
    "\n"
    "Always writes problem.svg.\n";

const char* kBenchUsage =
    "usage: airs bench [options]\n"
    "\n"
    "  --tier NAME          small | medium | large | xlarge, repeatable  (default small)\n"
    "  --seeds SPEC         7 | 1..10 | 2,4,8  (default 1)\n"
    "  --budget SECONDS     per-run wall-time budget  (default 600)\n"
    "  --acr-share F        budget share of the aircraft/crew stage  (default 0.6)\n"
    "  --threads N          evolution workers, 0 = hardware  (default 0)\n"
    "  --backend CMD        external MILP backend command  (default: built-in)\n"
    "  -o, --out FILE       write per-run rows as csv\n"
    "\n"
    "Summary tables go to stdout. Exit 1 when any run ends infeasible or\n"
    "fails the final audit.\n";

const char* usage_for(const std::string& cmd) {
    if (cmd == "gen-instance") return kGenUsage;
    if (cmd == "validate") return kValidateUsage;
    if (cmd == "solve") return kSolveUsage;
    if (cmd == "plot") return kPlotUsage;
    if (cmd == "bench") return kBenchUsage;
    return kUsage;
}

std::string value(const std::vector<std::string>& a, std::size_t& i) {
    if (i + 1 >= a.size()) throw UsageError("missing value after " + a[i]);
    return a[++i];
}

std::uint64_t parse_u64(const std::string& flag, const std::string& v) {
    try {
        std::size_t pos = 0;
        std::uint64_t r = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw UsageError("bad value for " + flag + ": '" + v + "'");
    }
}

long parse_int(const std::string& flag, const std::string& v, long lo, long hi) {
    long r;
    try {
        std::size_t pos = 0;
        r = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
    } catch (const std::exception&) {
        throw UsageError("bad value for " + flag + ": '" + v + "'");
    }
    if (r < lo || r > hi)
        throw UsageError(flag + " must be between " + std::to_string(lo) + " and " +
                         std::to_string(hi));
    return r;
}

double parse_double(const std::string& flag, const std::string& v, double lo, double hi) {
    double r;
    try {
        std::size_t pos = 0;
        r = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
    } catch (const std::exception&) {
        throw UsageError("bad value for " + flag + ": '" + v + "'");
    }
    if (!(r >= lo && r <= hi))
        throw UsageError(flag + " must be between " + std::to_string(lo) + " and " +
                         std::to_string(hi));
    return r;
}

// "7", "1..10" (inclusive) or "2,4,8".
std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
    std::vector<std::uint64_t> out;
    auto dots = spec.find("..");
    if (dots != std::string::npos) {
        std::uint64_t a = parse_u64("--seeds", spec.substr(0, dots));
        std::uint64_t b = parse_u64("--seeds", spec.substr(dots + 2));
        if (b < a) throw UsageError("--seeds range runs backwards: " + spec);
        if (b - a >= 10000) throw UsageError("--seeds range too large: " + spec);
        for (std::uint64_t s = a; s <= b; ++s) out.push_back(s);
        return out;
    }
    std::size_t start = 0;
    while (start <= spec.size()) {
        std::size_t comma = spec.find(',', start);
        std::string part = spec.substr(start, comma == std::string::npos ? comma : comma - start);
        out.push_back(parse_u64("--seeds", part));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

bool known_tier(const std::string& t) {
    for (const std::string& n : tier_names())
        if (n == t) return true;
    return false;
}

std::string num(double v, int prec = 1) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

void write_text(const fs::path& p, const std::string& body) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw IoError("cannot write " + p.string());
    f << body;
}

std::string safe_name(const std::string& id) {
    std::string out = id;
    for (char& c : out)
        if (!std::isalnum((unsigned char)c) && c != '.' && c != '_' && c != '-') c = '_';
    return out;
}

int report_diagnostics(const std::vector<Diagnostic>& diags) {
    for (const Diagnostic& d : diags)
        std::printf("%s %s: %s: %s\n", d.entity_kind.c_str(), d.entity_id.c_str(),
                    d.rule.c_str(), d.message.c_str());
    if (!diags.empty())
        std::fprintf(stderr, "%zu problem%s found\n", diags.size(), diags.size() == 1 ? "" : "s");
    return diags.empty() ? 0 : 1;
}

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Header once per file, rows forever after.
void append_report(const std::string& path, const BenchRun& row) {
    BenchReport one;
    one.runs.push_back(row);
    std::string csv = report_csv(one);
    std::error_code ec;
    bool fresh = !fs::exists(path, ec) || fs::file_size(path, ec) == 0;
    std::ofstream f(path, std::ios::app);
    if (!f) throw IoError("cannot write " + path);
    f << (fresh ? csv : csv.substr(csv.find('\n') + 1));
}

int cmd_gen(const std::vector<std::string>& a) {
    std::string tier = "small", out, format;
    std::uint64_t seed = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string& f = a[i];
        if (f == "--help" || f == "-h") {
            std::fputs(kGenUsage, stdout);
            return 0;
        } else if (f == "--tier") {
            tier = value(a, i);
        } else if (f == "--seed") {
            seed = parse_u64("--seed", value(a, i));
        } else if (f == "-o" || f == "--out") {
            out = value(a, i);
        } else if (f == "--format") {
            format = value(a, i);
        } else {
            throw UsageError("unexpected argument '" + f + "'");
        }
    }
    if (out.empty()) throw UsageError("missing -o PATH");
    if (!known_tier(tier)) throw UsageError("unknown tier '" + tier + "'");
    InstanceFormat fmt = InstanceFormat::Auto;
    if (format == "json")
        fmt = InstanceFormat::Json;
    else if (format == "tables")
        fmt = InstanceFormat::Tables;
    else if (!format.empty())
        throw UsageError("unknown format '" + format + "'");

    GeneratorConfig gc = tier_config(tier);
    gc.seed = seed;
    ProblemInstance pi = generate_instance(gc);
    write_instance(pi, out, fmt);
    std::printf("wrote %s: %zu airports, %zu aircraft, %zu crews, %zu flights, %zu itineraries\n",
                out.c_str(), pi.airports.size(), pi.aircraft.size(), pi.crews.size(),
                pi.flights.size(), pi.itineraries.size());
    return 0;
}

int cmd_validate(const std::vector<std::string>& a) {
    std::string input;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string& f = a[i];
        if (f == "--help" || f == "-h") {
            std::fputs(kValidateUsage, stdout);
            return 0;
        } else if (!f.empty() && f[0] == '-') {
            throw UsageError("unexpected argument '" + f + "'");
        } else if (input.empty()) {
            input = f;
        } else {
            throw UsageError("more than one INSTANCE given");
        }
    }
    if (input.empty()) throw UsageError("missing INSTANCE");
    return report_diagnostics(validate_instance(read_instance(input)));
}

int cmd_solve(const std::vector<std::string>& a) {
    std::string input, out, backend, svg_dir, report_path;
    double budget = 600.0, acr_share = 0.6;
    long max_iterations = 12, threads = 0, granularity = 15;
    std::uint64_t seed = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string& f = a[i];
        if (f == "--help" || f == "-h") {
            std::fputs(kSolveUsage, stdout);
            return 0;
        } else if (f == "-o" || f == "--out") {
            out = value(a, i);
        } else if (f == "--budget") {
            budget = parse_double("--budget", value(a, i), 0.0, 86400.0);
        } else if (f == "--acr-share") {
            acr_share = parse_double("--acr-share", value(a, i), 0.0, 1.0);
        } else if (f == "--max-iterations") {
            max_iterations = parse_int("--max-iterations", value(a, i), 1, 1000);
        } else if (f == "--seed") {
            seed = parse_u64("--seed", value(a, i));
        } else if (f == "--threads") {
            threads = parse_int("--threads", value(a, i), 0, 1024);
        } else if (f == "--backend") {
            backend = value(a, i);
        } else if (f == "--granularity") {
            granularity = parse_int("--granularity", value(a, i), 1, 1440);
        } else if (f == "--svg") {
            svg_dir = value(a, i);
        } else if (f == "--report") {
            report_path = value(a, i);
        } else if (!f.empty() && f[0] == '-') {
            throw UsageError("unexpected argument '" + f + "'");
        } else if (input.empty()) {
            input = f;
        } else {
            throw UsageError("more than one INSTANCE given");
        }
    }
    if (input.empty()) throw UsageError("missing INSTANCE");
    if (out.empty()) throw UsageError("missing -o PLAN");

    auto t0 = std::chrono::steady_clock::now();
    ProblemInstance pi = read_instance(input);
    std::vector<Diagnostic> diags = validate_instance(pi);
    if (!diags.empty()) return report_diagnostics(diags);
    DisruptedState st = apply_disruptions(pi);

    AcrBudget ab;
    ab.wall_seconds = budget * acr_share;
    ab.max_iterations = (int)max_iterations;
    ab.backend_cmd = backend;
    ab.space.granularity = granularity;
    AcrResult acr = run_acr(st, ab);

    PaxParams pp;
    pp.wall_seconds = budget * (1.0 - acr_share);
    pp.seed = seed;
    pp.threads = (int)threads;
    pp.granularity = granularity;
    auto tp = std::chrono::steady_clock::now();
    PaxResult pax = evolve(st, acr.schedule, pp);
    double pax_seconds = since(tp);

    // never ship a plan the audits reject
    std::vector<std::string> bad = check_feasibility(st, pax.schedule);
    for (const std::string& m : check_assignment(st, pax.schedule, pax.assignment))
        bad.push_back(m);
    if (!bad.empty()) {
        for (const std::string& m : bad) std::fprintf(stderr, "%s\n", m.c_str());
        std::fprintf(stderr, "final plan failed the audit, nothing written\n");
        return 1;
    }

    std::vector<ChangeOrder> orders = diff_orders(st, pax.schedule, pax.assignment);
    write_plan_file(orders, out);

    if (!svg_dir.empty()) {
        fs::create_directories(svg_dir);
        write_text(fs::path(svg_dir) / "problem.svg", plot_problem(st));
        write_text(fs::path(svg_dir) / "solution.svg", plot_solution(st, pax.schedule));
    }
    if (!report_path.empty()) {
        std::string label = fs::path(input).stem().string();
        append_report(report_path,
                      measure_row(label, seed, st, acr, pax, pax_seconds, since(t0)));
    }

    std::map<std::string, int> kinds;
    for (const ChangeOrder& o : orders) ++kinds[order_kind_name(o.kind)];
    std::string breakdown;
    for (const auto& [name, n] : kinds)
        breakdown += (breakdown.empty() ? "" : ", ") + name + " x" + std::to_string(n);

    std::printf("status: %s\n", solve_status_name(acr.status));
    std::printf("aircraft/crew: %zu iterations, objective %s\n", acr.iterations.size(),
                num(acr.objective).c_str());
    std::printf("evolution: %d generations, cost %s -> %s\n", pax.generations,
                num(pax.trace.empty() ? pax.total_cost : pax.trace.front()).c_str(),
                num(pax.total_cost).c_str());
    std::printf("schedule cost %s, passenger cost %s, total %s\n",
                num(pax.schedule_cost).c_str(), num(pax.passenger_cost).c_str(),
                num(pax.total_cost).c_str());
    std::printf("orders: %zu%s%s%s\n", orders.size(), breakdown.empty() ? "" : " (",
                breakdown.c_str(), breakdown.empty() ? "" : ")");
    std::printf("wrote %s in %s s\n", out.c_str(), num(since(t0)).c_str());
    return 0;
}

int cmd_plot(const std::vector<std::string>& a) {
    std::string input, out_dir = ".", plan_path;
    std::vector<std::string> want_aircraft, want_crews;
    bool all_segments = false;
    long granularity = 15;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string& f = a[i];
        if (f == "--help" || f == "-h") {
            std::fputs(kPlotUsage, stdout);
            return 0;
        } else if (f == "-o" || f == "--out") {
            out_dir = value(a, i);
        } else if (f == "--plan") {
            plan_path = value(a, i);
        } else if (f == "--aircraft") {
            want_aircraft.push_back(value(a, i));
        } else if (f == "--crew") {
            want_crews.push_back(value(a, i));
        } else if (f == "--all-segments") {
            all_segments = true;
        } else if (f == "--granularity") {
            granularity = parse_int("--granularity", value(a, i), 1, 1440);
        } else if (!f.empty() && f[0] == '-') {
            throw UsageError("unexpected argument '" + f + "'");
        } else if (input.empty()) {
            input = f;
        } else {
            throw UsageError("more than one INSTANCE given");
        }
    }
    if (input.empty()) throw UsageError("missing INSTANCE");

    ProblemInstance pi = read_instance(input);
    std::vector<Diagnostic> diags = validate_instance(pi);
    if (!diags.empty()) return report_diagnostics(diags);
    DisruptedState st = apply_disruptions(pi);

    fs::create_directories(out_dir);
    fs::path dir(out_dir);
    write_text(dir / "problem.svg", plot_problem(st));
    std::printf("wrote %s\n", (dir / "problem.svg").string().c_str());

    int rc = 0;
    if (!plan_path.empty()) {
        std::vector<ChangeOrder> orders = read_plan_file(plan_path);
        RecoverySchedule s;
        PassengerAssignment pa;
        apply_orders(st, orders, s, pa);
        std::vector<std::string> bad = check_feasibility(st, s);
        for (const std::string& m : check_assignment(st, s, pa)) bad.push_back(m);
        for (const std::string& m : bad) std::fprintf(stderr, "%s\n", m.c_str());
        if (!bad.empty()) rc = 1; // draw it anyway, broken plans need eyes most
        write_text(dir / "solution.svg", plot_solution(st, s));
        std::printf("wrote %s\n", (dir / "solution.svg").string().c_str());
    }

    if (all_segments) {
        want_aircraft.clear();
        want_crews.clear();
        for (const Aircraft& ac : pi.aircraft) want_aircraft.push_back(ac.id);
        for (const CrewGroup& cg : pi.crews) want_crews.push_back(cg.id);
    }
    if (!want_aircraft.empty() || !want_crews.empty()) {
        SpaceParams sp_par;
        sp_par.granularity = granularity;
        SearchSpace sp = build_initial_space(st, sp_par);
        TimeSpaceNetwork tsn = build_tsn(sp, st);
        for (const std::string& id : want_aircraft) {
            auto it = st.index.aircraft.find(id);
            if (it == st.index.aircraft.end()) throw UsageError("unknown aircraft id '" + id + "'");
            fs::path p = dir / ("segment_aircraft_" + safe_name(id) + ".svg");
            write_text(p, plot_tsn(tsn, sp, st, false, it->second));
            std::printf("wrote %s\n", p.string().c_str());
        }
        for (const std::string& id : want_crews) {
            auto it = st.index.crew.find(id);
            if (it == st.index.crew.end()) throw UsageError("unknown crew id '" + id + "'");
            fs::path p = dir / ("segment_crew_" + safe_name(id) + ".svg");
            write_text(p, plot_tsn(tsn, sp, st, true, it->second));
            std::printf("wrote %s\n", p.string().c_str());
        }
    }
    return rc;
}

int cmd_bench(const std::vector<std::string>& a) {
    std::vector<std::string> tiers;
    std::vector<std::uint64_t> seeds{1};
    std::string backend, out;
    double budget = 600.0, acr_share = 0.6;
    long threads = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string& f = a[i];
        if (f == "--help" || f == "-h") {
            std::fputs(kBenchUsage, stdout);
            return 0;
        } else if (f == "--tier") {
            std::string t = value(a, i);
            if (!known_tier(t)) throw UsageError("unknown tier '" + t + "'");
            tiers.push_back(t);
        } else if (f == "--seeds") {
            seeds = parse_seeds(value(a, i));
        } else if (f == "--budget") {
            budget = parse_double("--budget", value(a, i), 0.0, 86400.0);
        } else if (f == "--acr-share") {
            acr_share = parse_double("--acr-share", value(a, i), 0.0, 1.0);
        } else if (f == "--threads") {
            threads = parse_int("--threads", value(a, i), 0, 1024);
        } else if (f == "--backend") {
            backend = value(a, i);
        } else if (f == "-o" || f == "--out") {
            out = value(a, i);
        } else {
            throw UsageError("unexpected argument '" + f + "'");
        }
    }
    if (tiers.empty()) tiers.push_back("small");

    BenchReport rep;
    for (const std::string& tier : tiers) {
        BenchConfig cfg;
        cfg.shape = tier_config(tier);
        cfg.label = tier;
        cfg.wall_seconds = budget;
        cfg.acr_fraction = acr_share;
        cfg.backend_cmd = backend;
        cfg.threads = (int)threads;
        for (std::uint64_t s : seeds) {
            BenchRun row = bench_one(cfg, s);
            std::fprintf(stderr, "%s seed %llu: %s, %d iterations, final cost %s, %s s\n",
                         tier.c_str(), (unsigned long long)s, row.status.c_str(),
                         row.acr_iterations, num(row.final_paxr_cost).c_str(),
                         num(row.full_tts_seconds).c_str());
            rep.runs.push_back(row);
        }
    }

    std::fputs(report_tables(rep).c_str(), stdout);
    if (!out.empty()) write_text(out, report_csv(rep));

    for (const BenchRun& r : rep.runs)
        if (r.violations > 0 || r.status == "error" || r.status == "infeasible") return 1;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty()) {
        std::fputs(kUsage, stderr);
        return 2;
    }
    std::string cmd = args.front();
    std::vector<std::string> rest(args.begin() + 1, args.end());
    if (cmd == "--help" || cmd == "-h" || cmd == "help") {
        std::fputs(kUsage, stdout);
        return 0;
    }
    try {
        if (cmd == "gen-instance") return cmd_gen(rest);
        if (cmd == "validate") return cmd_validate(rest);
        if (cmd == "solve") return cmd_solve(rest);
        if (cmd == "plot") return cmd_plot(rest);
        if (cmd == "bench") return cmd_bench(rest);
        std::fprintf(stderr, "airs: unknown command '%s'\n\n%s", cmd.c_str(), kUsage);
        return 2;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "airs %s: %s\n\n%s", cmd.c_str(), e.what(), usage_for(cmd));
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "airs %s: %s\n", cmd.c_str(), e.what());
        return 2;
    }
}
