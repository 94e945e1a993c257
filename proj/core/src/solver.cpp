#include <airs/solver.hpp>

#include <airs/simplex.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <queue>
#include <sstream>

#include <unistd.h>

namespace airs {

const char* solve_status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::FeasibleTimeLimit: return "feasible-time-limit";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Error: return "error";
    }
    return "?";
}

bool assignment_feasible(const MilpModel& model, const std::vector<double>& x, double tol) {
    if (x.size() != model.vars.size()) return false;
    for (int v = 0; v < (int)model.vars.size(); ++v) {
        const MilpVar& mv = model.vars[v];
        if (x[v] < mv.lower - tol || x[v] > mv.upper + tol) return false;
        if (mv.integral && std::fabs(x[v] - std::round(x[v])) > tol) return false;
    }
    for (const LinConstraint& c : model.constraints) {
        double lhs = 0;
        for (const LinTerm& t : c.terms) lhs += t.coef * x[t.var];
        double band = tol * std::max(1.0, std::fabs(c.rhs));
        if (c.equality ? std::fabs(lhs - c.rhs) > band : lhs - c.rhs > band) return false;
    }
    return true;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// round the binaries, rebuild each slot's nonuse from its own row
std::vector<double> snap(const MilpModel& m, const std::vector<double>& x) {
    std::vector<double> out = x;
    for (int v = 0; v < (int)m.vars.size(); ++v)
        if (m.vars[v].integral) out[v] = std::round(out[v]);
    for (const LinConstraint& c : m.constraints) {
        if (c.tag != ConstraintTag::SlotCapacity) continue;
        int uvar = -1;
        double used = 0;
        for (const LinTerm& t : c.terms) {
            if (m.vars[t.var].integral)
                used += t.coef * out[t.var];
            else
                uvar = t.var;
        }
        if (uvar >= 0) out[uvar] = std::max(0.0, c.rhs - used);
    }
    return out;
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i] - 1e-9) return true;
        if (a[i] > b[i] + 1e-9) return false;
    }
    return false;
}

struct BackendTry {
    bool ok = false;
    SolveOutcome out;
    std::string why;
};

BackendTry run_backend(const MilpModel& model, const std::string& cmd) {
    namespace fs = std::filesystem;
    static int serial = 0;
    BackendTry bt;
    std::string base;
    try {
        base = (fs::temp_directory_path() /
                ("recovery_milp_" + std::to_string((long)::getpid()) + "_" +
                 std::to_string(serial++)))
                   .string();
    } catch (const std::exception& e) {
        bt.why = e.what();
        return bt;
    }
    std::string lp = base + ".lp", sol = base + ".sol";
    {
        std::ofstream f(lp);
        f << export_model(model);
        if (!f) {
            bt.why = "cannot write " + lp;
            return bt;
        }
    }
    int rc = std::system((cmd + " " + lp + " " + sol).c_str());
    if (rc != 0) {
        bt.why = "exit code " + std::to_string(rc);
    } else {
        std::ifstream f(sol);
        if (!f) {
            bt.why = "no solution file";
        } else {
            std::map<std::string, int> ix;
            for (int v = 0; v < (int)model.vars.size(); ++v) ix[model.vars[v].name] = v;
            std::vector<double> x(model.vars.size(), 0.0);
            std::string line;
            bool bad = false;
            while (std::getline(f, line)) {
                if (line.empty() || line[0] == '#') continue;
                std::istringstream is(line);
                std::string name;
                double val;
                if (!(is >> name >> val)) {
                    bt.why = "unparsable line: " + line;
                    bad = true;
                    break;
                }
                auto it = ix.find(name);
                if (it == ix.end()) {
                    bt.why = "unknown variable " + name;
                    bad = true;
                    break;
                }
                x[it->second] = val;
            }
            if (!bad) {
                if (assignment_feasible(model, x, 1e-6)) {
                    bt.ok = true;
                    bt.out.status = SolveStatus::Optimal;
                    bt.out.assignment = snap(model, x);
                    bt.out.objective = objective_value(model, bt.out.assignment);
                    bt.out.bound = bt.out.objective;
                    bt.out.log.push_back("external backend solution accepted");
                } else {
                    bt.why = "solution violates the model";
                }
            }
        }
    }
    std::error_code ec;
    fs::remove(lp, ec);
    fs::remove(sol, ec);
    return bt;
}

} // namespace

SolveOutcome solve(const MilpModel& model, const SolveLimits& limits) {
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    SolveOutcome out;
    if (!limits.backend_cmd.empty()) {
        BackendTry bt = run_backend(model, limits.backend_cmd);
        if (bt.ok) {
            bt.out.wall_seconds = elapsed();
            return bt.out;
        }
        out.log.push_back("external backend unusable (" + bt.why +
                          "), falling back to the built-in engine");
    }

    const int nv = (int)model.vars.size();
    std::vector<double> lo(nv), hi(nv);
    for (int v = 0; v < nv; ++v) {
        lo[v] = model.vars[v].lower;
        hi[v] = model.vars[v].upper;
    }
    std::vector<char> group_var(nv, 0);
    for (const auto& c : model.constraints)
        if (c.tag == ConstraintTag::UniqueDecision)
            for (const auto& t : c.terms) group_var[t.var] = 1;

    bool have_inc = false;
    std::vector<double> inc;
    double inc_obj = kInf;
    bool warm_complete = (int)model.warm_start.size() == nv &&
                         std::none_of(model.warm_start.begin(), model.warm_start.end(),
                                      [](double v) { return v < 0.0; });
    if (warm_complete) {
        if (assignment_feasible(model, model.warm_start, 1e-6)) {
            inc = snap(model, model.warm_start);
            inc_obj = objective_value(model, inc);
            have_inc = true;
        } else {
            out.log.push_back("warm start rejected: violates the model");
        }
    }

    struct Node {
        double bound;
        long id;
        std::vector<std::pair<int, int>> fixes; // (variable, 0 or 1)
    };
    struct Worse {
        bool operator()(const Node& a, const Node& b) const {
            if (a.bound != b.bound) return a.bound > b.bound;
            return a.id > b.id;
        }
    };
    std::priority_queue<Node, std::vector<Node>, Worse> open;
    long next_id = 0;
    open.push({-kInf, next_id++, {}});

    auto tol_gap = [&] { return std::max(1e-9, limits.gap * std::max(1.0, std::fabs(inc_obj))); };
    bool timed_out = false, root_infeasible = false, proven = false;
    double open_bound = -kInf; // best bound still open when stopping early

    while (!open.empty()) {
        if (elapsed() > limits.time_seconds) {
            timed_out = true;
            open_bound = open.top().bound;
            break;
        }
        Node nd = open.top();
        open.pop();
        if (have_inc && nd.bound >= inc_obj - tol_gap()) {
            proven = true; // nothing open can beat the incumbent
            break;
        }
        std::vector<double> l = lo, h = hi;
        for (auto [v, b] : nd.fixes) {
            if (b)
                l[v] = 1.0;
            else
                h[v] = 0.0;
        }
        ++out.nodes;
        LpResult lp = solve_relaxation(model, l, h);
        if (lp.status == LpStatus::Infeasible) {
            if (nd.id == 0) root_infeasible = true;
            continue;
        }
        if (lp.status != LpStatus::Optimal) {
            out.log.push_back("relaxation trouble at node " + std::to_string(nd.id) + ", pruned");
            continue;
        }
        if (have_inc && lp.objective >= inc_obj - tol_gap()) continue;

        auto pick = [&](bool groups_only) {
            int best = -1;
            double bs = 1e-6;
            for (int v = 0; v < nv; ++v) {
                if (!model.vars[v].integral) continue;
                if (groups_only && !group_var[v]) continue;
                double frac = lp.x[v] - std::floor(lp.x[v]);
                double sc = std::min(frac, 1.0 - frac);
                if (sc > bs + 1e-12) {
                    bs = sc;
                    best = v;
                }
            }
            return best;
        };
        int bv = pick(true);
        if (bv < 0) bv = pick(false);
        if (bv < 0) {
            std::vector<double> cand = snap(model, lp.x);
            if (!assignment_feasible(model, cand, 1e-6)) continue;
            double obj = objective_value(model, cand);
            if (!have_inc || obj < inc_obj - 1e-9 ||
                (obj <= inc_obj + 1e-9 && lex_less(cand, inc))) {
                inc = std::move(cand);
                inc_obj = obj;
                have_inc = true;
            }
            continue;
        }
        Node down{lp.objective, next_id++, nd.fixes};
        down.fixes.emplace_back(bv, 0);
        Node up{lp.objective, next_id++, nd.fixes};
        up.fixes.emplace_back(bv, 1);
        open.push(std::move(down));
        open.push(std::move(up));
    }

    out.wall_seconds = elapsed();
    if (have_inc) {
        out.assignment = inc;
        out.objective = inc_obj;
        if (timed_out) {
            out.status = SolveStatus::FeasibleTimeLimit;
            out.bound = std::min(inc_obj, open_bound);
        } else {
            out.status = SolveStatus::Optimal;
            out.bound = inc_obj;
            (void)proven;
        }
    } else if (timed_out) {
        out.status = SolveStatus::Error;
        out.log.push_back("time limit hit before any feasible solution");
    } else if (root_infeasible) {
        out.status = SolveStatus::Infeasible;
    } else {
        out.status = SolveStatus::Infeasible;
        out.log.push_back("search exhausted without a feasible leaf");
    }
    return out;
}

SolveOutcome enumerate_oracle(const MilpModel& model, const TimeSpaceNetwork& tsn,
                              const SearchSpace& sp, const DisruptedState& st,
                              std::uint64_t cap) {
    auto t0 = std::chrono::steady_clock::now();
    SolveOutcome out;
    const ProblemInstance& pi = st.instance;

    struct G {
        bool maint;
        int e;
    };
    std::vector<G> gs;
    double combos = 1;
    for (int f = 0; f < (int)sp.flights.size(); ++f)
        if (!sp.flights[f].empty()) {
            gs.push_back({false, f});
            combos *= (double)sp.flights[f].size();
        }
    for (int e = 0; e < (int)sp.maints.size(); ++e)
        if (!sp.maints[e].empty()) {
            gs.push_back({true, e});
            combos *= (double)sp.maints[e].size();
        }
    if (combos > (double)cap) {
        out.status = SolveStatus::Error;
        out.log.push_back("refusing to enumerate beyond the cap of " + std::to_string(cap) +
                          " selections");
        return out;
    }

    Selection sel;
    sel.flight_opt.assign(sp.flights.size(), -1);
    sel.maint_opt.assign(sp.maints.size(), -1);
    std::vector<double> best;
    double best_obj = kInf;

    std::function<void(std::size_t, double)> rec = [&](std::size_t gi, double part) {
        if (!best.empty() && part > best_obj + 1e-9) return; // option costs only grow
        if (gi == gs.size()) {
            ++out.nodes;
            RoutedFlows r = route_flows(tsn, sp, st, sel);
            if (!r.feasible) return;
            for (const SlotChoice& sc : tsn.slot_choices) {
                int live = 0;
                for (auto [f, k] : sc.members)
                    if (sel.flight_opt[f] == k) ++live;
                if (live > sc.capacity) return;
            }
            std::vector<double> duty(pi.crews.size(), 0.0);
            for (int f = 0; f < (int)sp.flights.size(); ++f) {
                if (sel.flight_opt[f] < 0) continue;
                const OptionChoice& o = sp.flights[f][sel.flight_opt[f]];
                if (o.kind == OptionKind::Scheduled) duty[o.crew] += pi.flights[f].duration;
            }
            for (int c = 0; c < (int)pi.crews.size(); ++c)
                if (duty[c] > pi.crews[c].flight_time_limit) return;

            std::vector<double> x = r.values;
            x.resize(model.vars.size(), 0.0);
            for (int i = 0; i < (int)tsn.slot_choices.size(); ++i) {
                const SlotChoice& sc = tsn.slot_choices[i];
                int live = 0;
                for (auto [f, k] : sc.members)
                    if (sel.flight_opt[f] == k) ++live;
                x[model.slot_nonuse[i]] = double(sc.capacity - live);
            }
            double obj = objective_value(model, x);
            if (best.empty() || obj < best_obj - 1e-9 ||
                (obj <= best_obj + 1e-9 && lex_less(x, best))) {
                best = std::move(x);
                best_obj = obj;
            }
            return;
        }
        const auto& group = gs[gi].maint ? sp.maints[gs[gi].e] : sp.flights[gs[gi].e];
        int& pickv = gs[gi].maint ? sel.maint_opt[gs[gi].e] : sel.flight_opt[gs[gi].e];
        for (int k = 0; k < (int)group.size(); ++k) {
            pickv = k;
            rec(gi + 1, part + group[k].cost);
        }
        pickv = -1;
    };
    rec(0, 0.0);

    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (best.empty()) {
        out.status = SolveStatus::Error;
        out.log.push_back("no feasible selection exists, which the cancel slack should prevent");
        return out;
    }
    out.status = SolveStatus::Optimal;
    out.assignment = std::move(best);
    out.objective = best_obj;
    out.bound = best_obj;
    return out;
}

} // namespace airs
