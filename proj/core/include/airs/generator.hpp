#pragma once

#include <cstdint>

#include "airs/model.hpp"

namespace airs {

// Shape of a synthetic instance.  Counts mirror the benchmark tier tables;
// everything else tunes how much slack the schedule carries.
struct GeneratorConfig {
    std::uint64_t seed = 1;

    int airports = 7;
    int slotted_airports = 2;
    int aircraft = 3;
    int crews = 5;
    int flights = 14;
    int passenger_tickets = 300;
    int multileg_connections = 1;
    int flight_disruptions = 2;
    int maintenances = 1;
    int slots = 20;

    // Extra disruption kinds beyond the delay/cancel mix.
    int groundings = 0;
    int slot_changes = 0;
    int closures = 0;

    double cancel_fraction = 0.15; // of flight_disruptions
    double load_factor = 0.70;     // cap on generated seat occupancy
    int slot_headroom = 2;         // spare departures per unpenalized slot
    double seat_scale = 1.0;       // >1 widens cabins, leaving room to reroute
    Minutes max_delay = 180;
    Minutes current_time = 240;    // 04:00
    Minutes horizon_cut = -1;      // forces recovery_finish when >= 0
};

// Deterministic hub-and-spoke builder.  Rotations are closed aircraft tours
// laid out with real ground times, crews ride whole duty blocks, slot
// capacities are sized off the undisrupted schedule, so the baseline is
// feasible by construction.  Throws std::invalid_argument on shapes that
// cannot be built (e.g. fewer crews than aircraft that fly).
ProblemInstance generate_instance(const GeneratorConfig& cfg);

} // namespace airs
