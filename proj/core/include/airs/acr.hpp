#pragma once

#include <airs/milp.hpp>
#include <airs/schedule.hpp>
#include <airs/search_space.hpp>
#include <airs/solver.hpp>
#include <airs/tsn.hpp>

#include <utility>
#include <vector>

namespace airs {

// Budget for one aircraft/crew recovery run.  The option budget and the
// heavy-delay feedback threshold live inside `space` so the loop and the
// option generator cannot disagree.
struct AcrBudget {
    double wall_seconds = 360.0;
    int max_iterations = 12;
    double gap = 1e-6;
    std::string backend_cmd; // external MILP backend, empty = built-in
    SpaceParams space;
};

// One row per iteration, timings in seconds.
struct AcrIterationRow {
    int iteration = 0;
    std::size_t options = 0; // search space size when solved
    double objective = 0.0;
    SolveStatus status = SolveStatus::Error;
    double prox_seconds = 0.0;  // feedback scan picking the targets
    double space_seconds = 0.0; // option generation
    double tsn_seconds = 0.0;   // network build plus encoding
    double solve_seconds = 0.0;
    double total_seconds = 0.0;
};

struct AcrResult {
    RecoverySchedule schedule;
    double objective = 0.0;
    SolveStatus status = SolveStatus::Error; // last solve's status
    std::vector<AcrIterationRow> iterations;
    SolutionFeedback feedback; // from the final schedule
};

// Flights the solver cancelled or pushed past the heavy-delay threshold and
// maintenances left failing: the targets the next iteration concentrates on.
SolutionFeedback derive_feedback(const DisruptedState& st, const RecoverySchedule& s,
                                 Minutes big_delay);

// Decodes a solve outcome into a schedule plus expansion feedback.  Throws
// std::runtime_error when the assignment breaks a unique-choice group, which
// means a solver bug rather than a bad instance.
std::pair<RecoverySchedule, SolutionFeedback> interpret_solution(
    const SolveOutcome& outcome, const TimeSpaceNetwork& tsn, const SearchSpace& sp,
    const DisruptedState& st, Minutes big_delay);

// The iterative loop: build space, network, model, solve with the previous
// schedule as warm start, expand around what still hurts.  Stops on the wall
// clock, the iteration cap, two iterations without improvement, or an
// unchanged space.  Always returns a feasible schedule; if the very first
// solve fails it falls back to cancelling everything.
AcrResult run_acr(const DisruptedState& st, const AcrBudget& budget);

} // namespace airs
