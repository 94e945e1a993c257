#pragma once

#include <string>

#include "airs/disruption.hpp"
#include "airs/schedule.hpp"
#include "airs/tsn.hpp"

namespace airs {

// All three renderers return a complete standalone SVG document and lay the
// same input out byte-identically run to run.

// The disrupted problem: published bars per original aircraft and crew group,
// delayed copies overlaid, disruption cancellations crossed out.
std::string plot_problem(const DisruptedState& st);

// A recovery plan: bars per recovered aircraft and crew, each delayed flight
// showing its published position as a ghost behind the shifted bar.
std::string plot_solution(const DisruptedState& st, const RecoverySchedule& s);

// One resource's time-space subnetwork: positions stacked vertically, time on
// the horizontal axis, option arcs colour-coded by flight and partner with a
// legend, connector and input arcs in a single "others" grey.
std::string plot_tsn(const TimeSpaceNetwork& tsn, const SearchSpace& sp,
                     const DisruptedState& st, bool crew_side, int owner);

} // namespace airs
