#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "airs/search_space.hpp"

namespace airs {

// Where a unit of aircraft or crew flow can stand.
//  aircraft: Airport, or Transit inside a multi-leg service
//  crew:     Ground at an airport, Aboard an aircraft at an airport, or Transit
enum class PlaceKind { Airport, Ground, Aboard, Transit, Void };

struct Position {
    int owner_kind = 0; // 0 aircraft, 1 crew, 2 void
    int owner = -1;     // aircraft or crew index
    PlaceKind place = PlaceKind::Void;
    int a = -1; // Airport/Ground: airport; Aboard: aircraft; Transit: multileg ordinal
    int b = -1; // Aboard: airport; Transit: leg index (transit follows this leg)
};

struct TsnNode {
    int position = -1;
    Minutes time = 0;
    bool strict = false; // sub-thread balance: out == in instead of out <= in
    int serial = 0;      // creation index, tie-break for ground ordering
};

enum class ArcKind { Flight, CrewFlight, Embark, Disembark, Ground, Maintenance, Sink, Input };

struct TsnArc {
    ArcKind kind = ArcKind::Ground;
    int from = -1;
    int to = -1;
    int var = -1;    // decision variable; -1 for input arcs (fixed flow 1)
    int entity = -1; // owning flight/maintenance for option arcs
    int ordinal = -1;
};

enum class VarKind { Option, Embark, Disembark, Ground, Sink };

struct VarInfo {
    VarKind kind = VarKind::Option;
    bool maint = false; // Option vars: flight or maintenance group
    int entity = -1;    // Option/Sink: owning group entity
    int ordinal = -1;   // Option: ordinal within its group
    int arc = -1;       // connector vars and sinks: the arc carrying it
};

// How one option maps onto arcs and variables: every option owns `var`
// except FailingMaintenance, which owns a sink-arc set instead.
struct OptionBinding {
    int var = -1;
    int aircraft_arc = -1; // Flight or Maintenance arc
    int crew_arc = -1;     // CrewFlight arc, Scheduled only
    std::vector<int> sink_arcs;
};

struct SlotChoice {
    int slot = -1;       // index into DisruptedState::slots
    int capacity = 0;    // remaining after departures already flown
    double penalty = 0;  // nonuse cost per unit
    std::vector<std::pair<int, int>> members; // (flight, ordinal) of Scheduled options inside
};

struct TimeSpaceNetwork {
    std::vector<Position> positions;
    std::vector<TsnNode> nodes;
    std::vector<TsnArc> arcs;
    std::vector<VarInfo> vars;
    std::vector<std::vector<OptionBinding>> flight_bind; // [flight][ordinal]
    std::vector<std::vector<OptionBinding>> maint_bind;  // [maint][ordinal]
    std::vector<SlotChoice> slot_choices;
    std::vector<std::string> multileg_ids; // ordinal -> group id
    std::vector<int> input_node_aircraft;  // per aircraft
    std::vector<int> input_node_crew;
    std::vector<int> ground_next; // per node: the ground arc leaving it, -1 at chain ends

    std::size_t node_count() const { return nodes.size(); }
    std::size_t arc_count() const { return arcs.size(); }
};

// Materializes every arc rule: shared-variable flight arc pairs with
// turnaround/transit tail extensions, embark/disembark connectors, strict
// sub-thread chains, single-arc maintenances, failing sinks, fixed inputs,
// and the closing ground pass.
TimeSpaceNetwork build_tsn(const SearchSpace& sp, const DisruptedState& st);

// Structural self-checks, empty when sound: variable sharing counts, strict
// flags confined to sub-threads, ground arcs forming per-position chains,
// every subnetwork fed by an input, and the linear size bound
// |arcs| <= 4*options + 2*nodes + resources.
std::vector<std::string> validate_tsn(const TimeSpaceNetwork& tsn, const SearchSpace& sp,
                                      const DisruptedState& st);

// One chosen ordinal per group; -1 where a group is empty (already-flown
// flights keep -1).
struct Selection {
    std::vector<int> flight_opt;
    std::vector<int> maint_opt;
};

struct RoutedFlows {
    bool feasible = false;
    std::string reason; // first failure, for diagnostics
    std::vector<double> values; // per variable
};

// Routes one unit per resource along its selected arcs, switching the
// connector variables (ground/embark/disembark/sink) needed to satisfy every
// balance constraint.  Infeasible selections report the first broken hop.
// This is the semantic ground truth the oracle and warm starts rely on.
RoutedFlows route_flows(const TimeSpaceNetwork& tsn, const SearchSpace& sp,
                        const DisruptedState& st, const Selection& sel);

// Reads a selection back out of variable values (nearest-integer on option
// variables).  Values outside the 1e-6 integrality band report failure.
bool selection_from_values(const TimeSpaceNetwork& tsn, const SearchSpace& sp,
                           const std::vector<double>& values, Selection& out);

// Turns a selection into a schedule: Scheduled options become dispositions,
// Canceled options cancellations, Succeeding options placements.
RecoverySchedule schedule_from_selection(const DisruptedState& st, const SearchSpace& sp,
                                         const Selection& sel);

} // namespace airs
