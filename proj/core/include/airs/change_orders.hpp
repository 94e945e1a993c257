#pragma once

#include <string>
#include <vector>

#include "airs/paxr_types.hpp"
#include "airs/schedule.hpp"

namespace airs {

enum class OrderKind {
    Delay,
    Cancel,
    AircraftSwap,
    CrewSwap,
    MaintenancePlacement,
    ItineraryRebooking,
};

const char* order_kind_name(OrderKind k);

// One rebooked journey: `count` passengers over the listed (flight, cabin)
// segments.  An itinerary may split into several journeys.
struct RebookedJourney {
    int count = 0;
    std::vector<std::pair<std::string, CabinClass>> segments;
};

// One prescribed change against the disrupted baseline.
struct ChangeOrder {
    OrderKind kind = OrderKind::Delay;
    std::string target;
    Minutes effective_time = 0;
    Minutes new_departure = 0;            // Delay
    std::string new_aircraft;             // AircraftSwap
    std::string new_crew;                 // CrewSwap
    std::string airport;                  // MaintenancePlacement
    Minutes start = 0;                    // MaintenancePlacement
    std::vector<RebookedJourney> journeys; // ItineraryRebooking
    int unassigned = 0;                   // ItineraryRebooking
};

// Diff of (schedule, passenger assignment) against the disrupted baseline,
// sorted by effective time (ties: kind, then target id).
std::vector<ChangeOrder> diff_orders(const DisruptedState& st, const RecoverySchedule& s,
                                     const PassengerAssignment& pax);

// Replays orders on top of the baseline; used to prove the diff is lossless.
void apply_orders(const DisruptedState& st, const std::vector<ChangeOrder>& orders,
                  RecoverySchedule& s_out, PassengerAssignment& pax_out);

// Plan file round-trip (JSON, deterministic key and order layout).
std::string plan_to_json(const std::vector<ChangeOrder>& orders);
std::vector<ChangeOrder> plan_from_json(const std::string& text);
void write_plan_file(const std::vector<ChangeOrder>& orders, const std::string& path);
std::vector<ChangeOrder> read_plan_file(const std::string& path);

} // namespace airs
