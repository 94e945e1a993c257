#pragma once

#include <cstdint>

#include "airs/milp.hpp"

namespace airs {

struct SolveLimits {
    double time_seconds = 60.0;
    double gap = 1e-6;       // relative optimality gap
    std::uint64_t seed = 1;  // recorded; both engines are deterministic
    std::string backend_cmd; // external engine, empty = built-in
};

enum class SolveStatus { Optimal, FeasibleTimeLimit, Infeasible, Error };

const char* solve_status_name(SolveStatus s);

struct SolveOutcome {
    SolveStatus status = SolveStatus::Error;
    std::vector<double> assignment; // per model variable when a solution exists
    double objective = std::numeric_limits<double>::infinity();
    double bound = -std::numeric_limits<double>::infinity();
    long nodes = 0;
    double wall_seconds = 0.0;
    std::vector<std::string> log;
};

// True when the assignment respects bounds, every row within tol, and every
// integral variable sits on an integer.
bool assignment_feasible(const MilpModel& model, const std::vector<double>& x, double tol);

// Best-first branch and bound on the LP relaxation, branching the most
// fractional group variable, warm start as first incumbent.  Equal-cost optima
// resolve to the lexicographically smallest assignment in variable order.
// With backend_cmd set the exported model goes to that command first; an
// unusable answer falls back to the built-in engine with a logged warning.
SolveOutcome solve(const MilpModel& model, const SolveLimits& limits);

// Provable optimum by exhausting every per-group choice: flow routing settles
// balance, slots and duty are checked arithmetically.  Refuses (Error) when
// the number of selections exceeds cap.
SolveOutcome enumerate_oracle(const MilpModel& model, const TimeSpaceNetwork& tsn,
                              const SearchSpace& sp, const DisruptedState& st,
                              std::uint64_t cap = 1000000);

} // namespace airs
