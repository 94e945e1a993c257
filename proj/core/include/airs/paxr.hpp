#pragma once

#include <airs/disruption.hpp>
#include <airs/paxr_types.hpp>
#include <airs/schedule.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace airs {

struct PaxParams {
    int max_transfers = 3;     // extra legs allowed beyond the first
    int population = 50;
    int parents = 30;
    int survivors = 50;
    int mutation_attempts = 20; // resamples before giving up on an offspring
    Minutes granularity = 15;   // re-timing grid used by the delay mutation
    double wall_seconds = 240.0;
    std::uint64_t seed = 1;
    int threads = 0; // 0 = hardware concurrency
};

// Passenger-side cost of an assignment on a schedule: arrival delay and
// downgrades per completed journey, cancellation for everyone else.
double assignment_cost(const DisruptedState& st, const RecoverySchedule& s,
                       const PassengerAssignment& pa);

// The greedy three-pass re-accommodation: keep committed prefixes, keep
// whole original paths while seats last, reroute the rest on earliest
// arrival paths.  Never fails; unplaced passengers stay unassigned.
PassengerAssignment assign_itineraries(const DisruptedState& st, const RecoverySchedule& s,
                                       int max_transfers = 3);

// Structural audit of an assignment against a schedule: seat loads recomputed
// from scratch, segment chains, per-itinerary headcounts.  Empty means clean.
std::vector<std::string> check_assignment(const DisruptedState& st, const RecoverySchedule& s,
                                          const PassengerAssignment& pa);

struct PaxResult {
    RecoverySchedule schedule; // baseline, possibly improved by mutations
    PassengerAssignment assignment;
    double schedule_cost = 0.0;  // aircraft/crew side
    double passenger_cost = 0.0; // assignment side
    double total_cost = 0.0;
    int generations = 0;
    std::vector<double> trace; // best total cost after each generation
};

// The non-crossover GA: population seeded with the baseline plus mutants,
// cost-biased parent selection, feasibility-preserving mutations, best-of
// survival.  A non-positive wall budget returns the baseline untouched with
// its greedy assignment.
PaxResult evolve(const DisruptedState& st, const RecoverySchedule& baseline,
                 const PaxParams& params);

} // namespace airs
