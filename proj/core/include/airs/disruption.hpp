#pragma once

#include <vector>

#include "airs/model.hpp"

namespace airs {

// Where a resource enters the recovery horizon.  Flights finished before
// current_time are history: the resource is placed at the end of its last
// such flight (crews stay aboard that aircraft).
struct ResourceStart {
    int airport = -1;
    Minutes ready = 0;
    int aboard_aircraft = -1; // crews only; -1 = on the ground
};

// Per-flight view after disruptions are folded into the baseline.
struct FlightState {
    Minutes departure = 0;      // disrupted-baseline departure
    bool forced_cancel = false; // cancelled by a disruption (sunk decision)
    bool fixed_past = false;    // finished/started before current_time
    bool fixed_future = false;  // departs after recovery_finish
    bool disrupted = false;     // needs attention: targeted or timing broken
};

// Immutable snapshot the whole pipeline works from.  Owns a copy of the
// instance so it can be shared freely.
struct DisruptedState {
    ProblemInstance instance;
    InstanceIndex index; // points into `instance`
    std::vector<FlightState> flights;
    std::vector<Slot> slots; // capacities after slot_change / closures
    std::vector<std::vector<Interval>> aircraft_down; // per aircraft
    std::vector<std::vector<Interval>> airport_closed; // per airport
    std::vector<ResourceStart> aircraft_start;
    std::vector<ResourceStart> crew_start;

    const FlightState& fs(int f) const { return flights[f]; }
    // True when a scheduled copy of flight f at [dep, dep+dur] on aircraft a
    // collides with a grounding window or an airport closure.
    bool placement_blocked(int f, Minutes dep, int a) const;
};

// Pure fold of the disruption list onto the baseline.  Delays shift
// departures, cancellations mark flights, groundings/closures are collected
// as windows, slot changes rewrite capacities.  Also computes resource entry
// points and flags flights whose current plan is broken.
DisruptedState apply_disruptions(const ProblemInstance& pi);

} // namespace airs
