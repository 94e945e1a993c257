#pragma once

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "airs/time_model.hpp"

namespace airs {

enum class CabinClass : int { Economy = 0, Premium = 1, Business = 2 };

constexpr int kCabinCount = 3;

const char* cabin_name(CabinClass c);
std::optional<CabinClass> cabin_from_name(const std::string& name);

// Seats per cabin class on one flight.
struct SeatCapacity {
    std::array<int, kCabinCount> seats{0, 0, 0};

    int& operator[](CabinClass c) { return seats[static_cast<int>(c)]; }
    int operator[](CabinClass c) const { return seats[static_cast<int>(c)]; }
    int total() const { return seats[0] + seats[1] + seats[2]; }
};

struct TimeAnchors {
    Minutes current_time = 0;
    Minutes recovery_start = 0;
    Minutes recovery_finish = 0;
    Minutes max_delay = 0; // cap on departure delay vs the published time
};

struct Airport {
    std::string id;
    Minutes min_turnaround = 0;      // aircraft, between consecutive flights
    Minutes min_transit = 0;         // aircraft, between legs of a multi-leg flight
    Minutes min_crew_connection = 0; // crew changing aircraft; must be > 0
};

struct Flight {
    std::string id;
    std::string origin;
    std::string destination;
    Minutes sched_departure = 0; // published departure
    Minutes duration = 0;        // fixed block time
    std::string original_aircraft;
    std::string original_crew;
    std::string multileg_group; // empty when the flight is a standalone leg
    int leg_index = 0;          // position inside the multi-leg group
    SeatCapacity seat_capacity;

    bool in_multileg() const { return !multileg_group.empty(); }
};

struct Aircraft {
    std::string id;
    std::string initial_position;
    Minutes available_from = 0;
};

struct CrewGroup {
    std::string id;
    std::string initial_position;
    Minutes available_from = 0;
    Minutes flight_time_limit = 0; // total block minutes inside the horizon
};

struct MaintenanceWindow {
    std::string airport;
    Minutes earliest_start = 0;
    Minutes latest_start = 0;
};

struct Maintenance {
    std::string id;
    std::string aircraft;
    Minutes duration = 0;
    std::vector<MaintenanceWindow> allowed_windows;
    double fail_penalty = 0; // must exceed any single cancellation cost
};

struct Slot {
    std::string id;
    std::string airport;
    Minutes window_start = 0;
    Minutes window_end = 0;
    int capacity = 0;
    double nonuse_penalty = 0; // > 0 marks a slot the airline is pushed to use
};

struct ItineraryLeg {
    std::string flight;
    CabinClass cabin = CabinClass::Economy;
};

struct Itinerary {
    std::string id;
    int passenger_count = 0;
    std::vector<ItineraryLeg> legs;
    double cancellation_cost = 0; // per passenger
    double downgrade_cost = 0;    // per passenger per class step per leg
    double delay_cost = 0;        // per passenger per arrival-delay minute
};

enum class DisruptionKind {
    FlightDelay,
    FlightCancellation,
    AircraftUnavailability,
    SlotChange,
    AirportClosure,
};

const char* disruption_kind_name(DisruptionKind k);
std::optional<DisruptionKind> disruption_kind_from_name(const std::string& name);

struct Disruption {
    DisruptionKind kind = DisruptionKind::FlightDelay;
    std::string target;       // flight / aircraft / slot / airport id by kind
    Minutes delay_minutes = 0; // FlightDelay
    Interval window;           // AircraftUnavailability, AirportClosure
    int new_capacity = 0;      // SlotChange
};

struct CostCoefficients {
    double delay_per_minute = 10.0;         // schedule-side delay cost
    double cancellation_per_flight = 50000; // schedule-side cancellation cost
};

struct ProblemInstance {
    TimeAnchors anchors;
    CostCoefficients cost;
    std::vector<Airport> airports;
    std::vector<Aircraft> aircraft;
    std::vector<CrewGroup> crews;
    std::vector<Flight> flights;
    std::vector<Maintenance> maintenances;
    std::vector<Slot> slots;
    std::vector<Itinerary> itineraries;
    std::vector<Disruption> disruptions;
};

// Id -> index lookups plus baseline rotations, built once per instance.
// Holds values only (no back-pointer) so owners can be copied freely.
struct InstanceIndex {
    std::unordered_map<std::string, int> airport;
    std::unordered_map<std::string, int> aircraft;
    std::unordered_map<std::string, int> crew;
    std::unordered_map<std::string, int> flight;
    std::unordered_map<std::string, int> maintenance;
    std::unordered_map<std::string, int> slot;
    std::unordered_map<std::string, int> itinerary;
    // flight indices sorted by published departure (ties by id)
    std::vector<std::vector<int>> aircraft_rotation;
    std::vector<std::vector<int>> crew_rotation;
    // multi-leg group id -> member flight indices sorted by leg_index
    std::unordered_map<std::string, std::vector<int>> multileg;

    int airport_of(const std::string& id) const { return at(airport, id); }
    int flight_of(const std::string& id) const { return at(flight, id); }

private:
    static int at(const std::unordered_map<std::string, int>& m, const std::string& id) {
        auto it = m.find(id);
        return it == m.end() ? -1 : it->second;
    }
};

InstanceIndex build_index(const ProblemInstance& pi);

// One validation finding. `rule` is a short machine-readable tag.  Severity
// "error" marks unusable input; "note" marks conflicts the recovery run is
// expected to untangle (e.g. a grounding window sitting on top of a flight).
struct Diagnostic {
    std::string entity_kind;
    std::string entity_id;
    std::string rule;
    std::string message;
    std::string severity = "error";
};

// Structural and referential checks; no "error" entries means the instance is
// usable (notes may still be present on disrupted instances).
std::vector<Diagnostic> validate_instance(const ProblemInstance& pi);

bool has_errors(const std::vector<Diagnostic>& diags);

} // namespace airs
