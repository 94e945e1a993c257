#pragma once

#include "airs/milp.hpp"

namespace airs {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
    LpStatus status = LpStatus::IterationLimit;
    double objective = 0.0;
    std::vector<double> x; // one value per model variable
    int iterations = 0;
};

// Continuous relaxation of the model under overriding variable bounds (the
// branch fixings), solved by a self-contained bounded-variable two-phase
// primal simplex.  Deterministic: Dantzig pricing with index tie-breaks and
// a Bland fallback once the objective stalls.
LpResult solve_relaxation(const MilpModel& model, const std::vector<double>& lower,
                          const std::vector<double>& upper, int iteration_limit = 0);

} // namespace airs
