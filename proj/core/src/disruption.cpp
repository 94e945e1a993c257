#include "airs/disruption.hpp"

#include <algorithm>

namespace airs {

bool DisruptedState::placement_blocked(int f, Minutes dep, int a) const {
    const Flight& fl = instance.flights[f];
    Minutes arr = dep + fl.duration;
    if (a >= 0)
        for (const Interval& w : aircraft_down[a])
            if (w.overlaps({dep, arr})) return true;
    int orig = index.airport_of(fl.origin);
    int dest = index.airport_of(fl.destination);
    if (orig >= 0)
        for (const Interval& w : airport_closed[orig])
            if (w.contains(dep)) return true;
    if (dest >= 0)
        for (const Interval& w : airport_closed[dest])
            if (w.contains(arr)) return true;
    return false;
}

namespace {

// Ground time the aircraft needs after flight f before its next departure:
// transit when the next leg of the same multi-leg group follows, else
// turnaround.
Minutes ground_after(const ProblemInstance& pi, const InstanceIndex& ix, int f, int next_f) {
    const Flight& fl = pi.flights[f];
    int dest = ix.airport_of(fl.destination);
    const Airport& ap = pi.airports[dest];
    if (next_f >= 0) {
        const Flight& nx = pi.flights[next_f];
        if (fl.in_multileg() && nx.multileg_group == fl.multileg_group && nx.leg_index == fl.leg_index + 1)
            return ap.min_transit;
    }
    return ap.min_turnaround;
}

} // namespace

DisruptedState apply_disruptions(const ProblemInstance& pi) {
    DisruptedState st;
    st.instance = pi;
    st.index = build_index(st.instance);
    const ProblemInstance& in = st.instance;
    const InstanceIndex& ix = st.index;
    const TimeAnchors& an = in.anchors;

    st.flights.resize(in.flights.size());
    for (int f = 0; f < (int)in.flights.size(); ++f)
        st.flights[f].departure = in.flights[f].sched_departure;
    st.slots = in.slots;
    st.aircraft_down.resize(in.aircraft.size());
    st.airport_closed.resize(in.airports.size());

    for (const Disruption& d : in.disruptions) {
        switch (d.kind) {
        case DisruptionKind::FlightDelay: {
            int f = ix.flight_of(d.target);
            if (f >= 0) st.flights[f].departure += d.delay_minutes;
            break;
        }
        case DisruptionKind::FlightCancellation: {
            int f = ix.flight_of(d.target);
            if (f >= 0) st.flights[f].forced_cancel = true;
            break;
        }
        case DisruptionKind::AircraftUnavailability: {
            auto it = ix.aircraft.find(d.target);
            if (it != ix.aircraft.end()) st.aircraft_down[it->second].push_back(d.window);
            break;
        }
        case DisruptionKind::SlotChange: {
            auto it = ix.slot.find(d.target);
            if (it != ix.slot.end()) st.slots[it->second].capacity = d.new_capacity;
            break;
        }
        case DisruptionKind::AirportClosure: {
            int a = ix.airport_of(d.target);
            if (a >= 0) {
                st.airport_closed[a].push_back(d.window);
                // A closed airport also loses its slot capacity for the window.
                for (auto& s : st.slots)
                    if (s.airport == d.target && Interval{s.window_start, s.window_end}.overlaps(d.window))
                        s.capacity = 0;
            }
            break;
        }
        }
    }

    // Commitment flags come after the delay fold: a delay can push a flight
    // across current_time and back into play.
    for (int f = 0; f < (int)in.flights.size(); ++f) {
        FlightState& fs = st.flights[f];
        if (fs.forced_cancel) continue;
        if (fs.departure < an.current_time)
            fs.fixed_past = true;
        else if (fs.departure >= an.recovery_finish)
            fs.fixed_future = true;
    }

    // A multi-leg service is one through service: cancelling a leg cancels
    // every leg that has not already flown.
    for (const auto& [gid, legs] : ix.multileg) {
        bool any = false;
        for (int f : legs) any = any || st.flights[f].forced_cancel;
        if (!any) continue;
        for (int f : legs)
            if (!st.flights[f].fixed_past) st.flights[f].forced_cancel = true;
    }

    // Resource entry points: chain each resource through its committed history.
    st.aircraft_start.resize(in.aircraft.size());
    for (int a = 0; a < (int)in.aircraft.size(); ++a) {
        ResourceStart rs;
        rs.airport = ix.airport_of(in.aircraft[a].initial_position);
        rs.ready = in.aircraft[a].available_from;
        const auto& rot = ix.aircraft_rotation[a];
        for (int k = 0; k < (int)rot.size(); ++k) {
            int f = rot[k];
            if (!st.flights[f].fixed_past) continue;
            const Flight& fl = in.flights[f];
            int next_f = k + 1 < (int)rot.size() ? rot[k + 1] : -1;
            rs.airport = ix.airport_of(fl.destination);
            rs.ready = st.flights[f].departure + fl.duration + ground_after(in, ix, f, next_f);
        }
        st.aircraft_start[a] = rs;
    }
    st.crew_start.resize(in.crews.size());
    for (int c = 0; c < (int)in.crews.size(); ++c) {
        ResourceStart rs;
        rs.airport = ix.airport_of(in.crews[c].initial_position);
        rs.ready = in.crews[c].available_from;
        for (int f : ix.crew_rotation[c]) {
            if (!st.flights[f].fixed_past) continue;
            const Flight& fl = in.flights[f];
            rs.airport = ix.airport_of(fl.destination);
            rs.ready = st.flights[f].departure + fl.duration;
            rs.aboard_aircraft = ix.aircraft.at(fl.original_aircraft);
        }
        st.crew_start[c] = rs;
    }

    // Flag flights whose current plan no longer works.  Once a rotation is
    // broken everything downstream on that resource is flagged too; those are
    // the flights the option generator concentrates on.
    for (const Disruption& d : in.disruptions) {
        if (d.kind != DisruptionKind::FlightDelay) continue;
        int f = ix.flight_of(d.target);
        if (f >= 0 && !st.flights[f].fixed_past && !st.flights[f].forced_cancel)
            st.flights[f].disrupted = true;
    }
    for (int a = 0; a < (int)in.aircraft.size(); ++a) {
        int pos = st.aircraft_start[a].airport;
        Minutes ready = st.aircraft_start[a].ready;
        bool broken = false;
        const auto& rot = ix.aircraft_rotation[a];
        for (int k = 0; k < (int)rot.size(); ++k) {
            int f = rot[k];
            const FlightState& fs = st.flights[f];
            if (fs.fixed_past) continue;
            if (fs.fixed_future) break;
            if (fs.forced_cancel) { broken = true; continue; }
            const Flight& fl = in.flights[f];
            if (broken) { st.flights[f].disrupted = true; continue; }
            bool bad = ix.airport_of(fl.origin) != pos || fs.departure < ready ||
                       st.placement_blocked(f, fs.departure, a);
            if (bad) {
                st.flights[f].disrupted = true;
                broken = true;
                continue;
            }
            int next_f = k + 1 < (int)rot.size() ? rot[k + 1] : -1;
            pos = ix.airport_of(fl.destination);
            ready = fs.departure + fl.duration + ground_after(in, ix, f, next_f);
        }
    }
    for (int c = 0; c < (int)in.crews.size(); ++c) {
        int pos = st.crew_start[c].airport;
        int aboard = st.crew_start[c].aboard_aircraft;
        Minutes ready = st.crew_start[c].ready;
        bool broken = false;
        for (int f : ix.crew_rotation[c]) {
            const FlightState& fs = st.flights[f];
            if (fs.fixed_past) continue;
            if (fs.fixed_future) break;
            if (fs.forced_cancel) { broken = true; continue; }
            const Flight& fl = in.flights[f];
            if (broken) { st.flights[f].disrupted = true; continue; }
            int ac = ix.aircraft.at(fl.original_aircraft);
            int orig = ix.airport_of(fl.origin);
            Minutes need = ready;
            if (aboard != ac) // boarding a different aircraft costs connection time
                need += in.airports[orig].min_crew_connection;
            bool bad = orig != pos || fs.departure < need;
            if (bad) {
                st.flights[f].disrupted = true;
                broken = true;
                continue;
            }
            pos = ix.airport_of(fl.destination);
            aboard = ac;
            ready = fs.departure + fl.duration;
        }
    }

    return st;
}

} // namespace airs
