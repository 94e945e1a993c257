#pragma once

#include <string>
#include <vector>

#include "airs/disruption.hpp"

namespace airs {

// Final word on one flight in a recovery plan.
struct FlightDisposition {
    bool cancelled = false;
    Minutes departure = 0;
    int aircraft = -1;
    int crew = -1;
};

// Final word on one maintenance task.
struct MaintDisposition {
    bool performed = false;
    int airport = -1;
    Minutes start = 0;
};

// A complete aircraft/crew recovery plan over a disrupted state.
struct RecoverySchedule {
    std::vector<FlightDisposition> flights; // by flight index
    std::vector<MaintDisposition> maints;   // by maintenance index

    Minutes arrival(const ProblemInstance& pi, int f) const {
        return flights[f].departure + pi.flights[f].duration;
    }
};

// The disrupted baseline as a schedule: every non-cancelled flight at its
// disrupted departure with original resources, maintenances unplaced.
RecoverySchedule baseline_schedule(const DisruptedState& st);

struct Violation {
    std::string rule;   // machine tag, e.g. "rotation-gap"
    std::string entity; // offending entity id
    std::string detail;
};

// Re-derives every operational rule from scratch: rotation continuity and
// ground times, crew connections and duty limits, multi-leg integrity, slot
// capacity, closure/grounding windows, commitment of fixed flights, and the
// delay bracket.  Deliberately independent of the network/MILP encoding.
std::vector<Violation> check_feasibility(const DisruptedState& st, const RecoverySchedule& s);

// Schedule-side objective recomputed semantically: total delay minutes vs the
// published schedule, cancellation charges, maintenance failure penalties and
// penalized slot nonuse.  Matches the MILP objective on decodable solutions.
double schedule_cost(const DisruptedState& st, const RecoverySchedule& s);

// What the next search-space expansion should concentrate on.
struct SolutionFeedback {
    std::vector<int> cancelled_flights;     // cancelled by the solver
    std::vector<int> heavily_delayed;       // delay >= threshold
    std::vector<int> failed_maintenances;
    bool empty() const {
        return cancelled_flights.empty() && heavily_delayed.empty() && failed_maintenances.empty();
    }
};

SolutionFeedback collect_feedback(const DisruptedState& st, const RecoverySchedule& s,
                                  Minutes delay_threshold);

} // namespace airs
