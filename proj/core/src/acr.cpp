#include <airs/acr.hpp>

#include <airs/disruption.hpp>

#include <chrono>
#include <stdexcept>

namespace airs {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point from) {
    return std::chrono::duration<double>(Clock::now() - from).count();
}

// Cancel every flight, fail every maintenance: always routable, never good.
Selection full_stop(const SearchSpace& sp) {
    Selection sel;
    sel.flight_opt.assign(sp.flights.size(), -1);
    sel.maint_opt.assign(sp.maints.size(), -1);
    for (int f = 0; f < (int)sp.flights.size(); ++f)
        for (int k = 0; k < (int)sp.flights[f].size(); ++k)
            if (sp.flights[f][k].kind == OptionKind::Canceled) sel.flight_opt[f] = k;
    for (int m = 0; m < (int)sp.maints.size(); ++m)
        for (int k = 0; k < (int)sp.maints[m].size(); ++k)
            if (sp.maints[m][k].kind == OptionKind::FailingMaintenance) sel.maint_opt[m] = k;
    return sel;
}

} // namespace

SolutionFeedback derive_feedback(const DisruptedState& st, const RecoverySchedule& s,
                                 Minutes big_delay) {
    const ProblemInstance& pi = st.instance;
    SolutionFeedback fb;
    for (int f = 0; f < (int)pi.flights.size(); ++f) {
        const FlightState& fs = st.fs(f);
        if (fs.fixed_past || fs.fixed_future) continue;
        if (s.flights[f].cancelled) {
            if (!fs.forced_cancel) fb.cancelled_flights.push_back(f);
        } else if (s.flights[f].departure - pi.flights[f].sched_departure >= big_delay) {
            fb.heavily_delayed.push_back(f);
        }
    }
    for (int m = 0; m < (int)pi.maintenances.size(); ++m)
        if (!s.maints[m].performed) fb.failed_maintenances.push_back(m);
    return fb;
}

std::pair<RecoverySchedule, SolutionFeedback> interpret_solution(
    const SolveOutcome& outcome, const TimeSpaceNetwork& tsn, const SearchSpace& sp,
    const DisruptedState& st, Minutes big_delay) {
    if (outcome.status != SolveStatus::Optimal &&
        outcome.status != SolveStatus::FeasibleTimeLimit)
        throw std::runtime_error("no assignment to interpret: solve ended as " +
                                 std::string(solve_status_name(outcome.status)));
    Selection sel;
    if (!selection_from_values(tsn, sp, outcome.assignment, sel))
        throw std::runtime_error("assignment breaks a unique-choice group; solver bug");
    RecoverySchedule s = schedule_from_selection(st, sp, sel);
    return {s, derive_feedback(st, s, big_delay)};
}

AcrResult run_acr(const DisruptedState& st, const AcrBudget& budget) {
    auto t0 = Clock::now();
    AcrResult res;
    SearchSpace sp;
    SolutionFeedback fb;
    bool have = false;
    int no_improve = 0;

    for (int it = 1;; ++it) {
        AcrIterationRow row;
        row.iteration = it;
        auto it0 = Clock::now();

        auto p0 = Clock::now();
        if (have) fb = derive_feedback(st, res.schedule, budget.space.big_delay);
        row.prox_seconds = since(p0);
        if (have && fb.empty()) break; // nothing left to concentrate on

        auto s0 = Clock::now();
        bool grown = true;
        if (it == 1)
            sp = build_initial_space(st, budget.space);
        else
            grown = expand_space(sp, st, fb, budget.space);
        row.space_seconds = since(s0);
        if (!grown) break; // same space would resolve to the same schedule
        row.options = sp.option_count();

        auto n0 = Clock::now();
        TimeSpaceNetwork tsn = build_tsn(sp, st);
        MilpModel model = encode(tsn, sp, st);
        if (have) warm_start_from(res.schedule, tsn, sp, st, model);
        row.tsn_seconds = since(n0);

        SolveLimits lim;
        lim.time_seconds = std::max(0.0, budget.wall_seconds - since(t0));
        lim.gap = budget.gap;
        lim.backend_cmd = budget.backend_cmd;
        auto v0 = Clock::now();
        SolveOutcome out = solve(model, lim);
        row.solve_seconds = since(v0);
        row.status = out.status;
        res.status = out.status;

        if (out.status != SolveStatus::Optimal &&
            out.status != SolveStatus::FeasibleTimeLimit) {
            if (!have) {
                res.schedule = schedule_from_selection(st, sp, full_stop(sp));
                res.objective = schedule_cost(st, res.schedule);
                have = true;
            }
            row.objective = res.objective;
            row.total_seconds = since(it0);
            res.iterations.push_back(row);
            break;
        }

        bool improved = !have || out.objective < res.objective - 1e-6;
        res.schedule = interpret_solution(out, tsn, sp, st, budget.space.big_delay).first;
        res.objective = out.objective;
        have = true;
        row.objective = out.objective;
        row.total_seconds = since(it0);
        res.iterations.push_back(row);

        if (improved)
            no_improve = 0;
        else if (++no_improve >= 2)
            break;
        if (it >= budget.max_iterations) break;
        if (since(t0) >= budget.wall_seconds) break;
    }

    res.feedback = derive_feedback(st, res.schedule, budget.space.big_delay);
    return res;
}

} // namespace airs
