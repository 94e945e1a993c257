#include "airs/model.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace airs {

std::string format_minutes(Minutes t) {
    char buf[32];
    Minutes day = t / 1440;
    Minutes rem = t % 1440;
    if (rem < 0) { rem += 1440; day -= 1; }
    if (day != 0)
        std::snprintf(buf, sizeof buf, "d%lld %02lld:%02lld", (long long)day, (long long)(rem / 60), (long long)(rem % 60));
    else
        std::snprintf(buf, sizeof buf, "%02lld:%02lld", (long long)(rem / 60), (long long)(rem % 60));
    return buf;
}

const char* cabin_name(CabinClass c) {
    switch (c) {
    case CabinClass::Economy: return "economy";
    case CabinClass::Premium: return "premium";
    case CabinClass::Business: return "business";
    }
    return "economy";
}

std::optional<CabinClass> cabin_from_name(const std::string& name) {
    if (name == "economy") return CabinClass::Economy;
    if (name == "premium") return CabinClass::Premium;
    if (name == "business") return CabinClass::Business;
    return std::nullopt;
}

const char* disruption_kind_name(DisruptionKind k) {
    switch (k) {
    case DisruptionKind::FlightDelay: return "flight_delay";
    case DisruptionKind::FlightCancellation: return "flight_cancellation";
    case DisruptionKind::AircraftUnavailability: return "aircraft_unavailability";
    case DisruptionKind::SlotChange: return "slot_change";
    case DisruptionKind::AirportClosure: return "airport_closure";
    }
    return "flight_delay";
}

std::optional<DisruptionKind> disruption_kind_from_name(const std::string& name) {
    if (name == "flight_delay") return DisruptionKind::FlightDelay;
    if (name == "flight_cancellation") return DisruptionKind::FlightCancellation;
    if (name == "aircraft_unavailability") return DisruptionKind::AircraftUnavailability;
    if (name == "slot_change") return DisruptionKind::SlotChange;
    if (name == "airport_closure") return DisruptionKind::AirportClosure;
    return std::nullopt;
}

InstanceIndex build_index(const ProblemInstance& pi) {
    InstanceIndex ix;
    for (int i = 0; i < (int)pi.airports.size(); ++i) ix.airport.emplace(pi.airports[i].id, i);
    for (int i = 0; i < (int)pi.aircraft.size(); ++i) ix.aircraft.emplace(pi.aircraft[i].id, i);
    for (int i = 0; i < (int)pi.crews.size(); ++i) ix.crew.emplace(pi.crews[i].id, i);
    for (int i = 0; i < (int)pi.flights.size(); ++i) ix.flight.emplace(pi.flights[i].id, i);
    for (int i = 0; i < (int)pi.maintenances.size(); ++i) ix.maintenance.emplace(pi.maintenances[i].id, i);
    for (int i = 0; i < (int)pi.slots.size(); ++i) ix.slot.emplace(pi.slots[i].id, i);
    for (int i = 0; i < (int)pi.itineraries.size(); ++i) ix.itinerary.emplace(pi.itineraries[i].id, i);

    ix.aircraft_rotation.resize(pi.aircraft.size());
    ix.crew_rotation.resize(pi.crews.size());
    for (int f = 0; f < (int)pi.flights.size(); ++f) {
        auto a = ix.aircraft.find(pi.flights[f].original_aircraft);
        if (a != ix.aircraft.end()) ix.aircraft_rotation[a->second].push_back(f);
        auto c = ix.crew.find(pi.flights[f].original_crew);
        if (c != ix.crew.end()) ix.crew_rotation[c->second].push_back(f);
        if (pi.flights[f].in_multileg()) ix.multileg[pi.flights[f].multileg_group].push_back(f);
    }
    auto by_departure = [&pi](int a, int b) {
        if (pi.flights[a].sched_departure != pi.flights[b].sched_departure)
            return pi.flights[a].sched_departure < pi.flights[b].sched_departure;
        return pi.flights[a].id < pi.flights[b].id;
    };
    for (auto& rot : ix.aircraft_rotation) std::sort(rot.begin(), rot.end(), by_departure);
    for (auto& rot : ix.crew_rotation) std::sort(rot.begin(), rot.end(), by_departure);
    for (auto& [_, legs] : ix.multileg)
        std::sort(legs.begin(), legs.end(), [&pi](int a, int b) { return pi.flights[a].leg_index < pi.flights[b].leg_index; });
    return ix;
}

namespace {

struct Collector {
    std::vector<Diagnostic> out;
    void add(std::string kind, std::string id, std::string rule, std::string msg, std::string sev = "error") {
        out.push_back({std::move(kind), std::move(id), std::move(rule), std::move(msg), std::move(sev)});
    }
};

template <typename T>
void check_unique_ids(Collector& c, const std::vector<T>& v, const char* kind) {
    std::set<std::string> seen;
    for (const auto& e : v)
        if (!seen.insert(e.id).second)
            c.add(kind, e.id, "duplicate-id", "id appears more than once");
}

} // namespace

std::vector<Diagnostic> validate_instance(const ProblemInstance& pi) {
    Collector c;
    const auto& an = pi.anchors;
    if (an.current_time > an.recovery_start)
        c.add("anchors", "", "anchor-order", "current_time must be <= recovery_start");
    if (an.recovery_start >= an.recovery_finish)
        c.add("anchors", "", "anchor-order", "recovery_start must be < recovery_finish");
    if (an.max_delay < 0)
        c.add("anchors", "", "max-delay-negative", "max_delay must be >= 0");
    if (pi.cost.delay_per_minute < 0 || pi.cost.cancellation_per_flight < 0)
        c.add("cost", "", "negative-coefficient", "cost coefficients must be >= 0");

    check_unique_ids(c, pi.airports, "airport");
    check_unique_ids(c, pi.aircraft, "aircraft");
    check_unique_ids(c, pi.crews, "crew");
    check_unique_ids(c, pi.flights, "flight");
    check_unique_ids(c, pi.maintenances, "maintenance");
    check_unique_ids(c, pi.slots, "slot");
    check_unique_ids(c, pi.itineraries, "itinerary");

    InstanceIndex ix = build_index(pi);

    for (const auto& ap : pi.airports) {
        if (ap.min_crew_connection <= 0)
            c.add("airport", ap.id, "crew-connection-nonpositive",
                  "min_crew_connection must be > 0 (vertical disembark arcs rely on it)");
        if (ap.min_turnaround < 0 || ap.min_transit < 0)
            c.add("airport", ap.id, "negative-ground-time", "ground times must be >= 0");
    }

    for (const auto& ac : pi.aircraft)
        if (ix.airport.find(ac.initial_position) == ix.airport.end())
            c.add("aircraft", ac.id, "unknown-airport", "initial_position references unknown airport " + ac.initial_position);
    for (const auto& cr : pi.crews) {
        if (ix.airport.find(cr.initial_position) == ix.airport.end())
            c.add("crew", cr.id, "unknown-airport", "initial_position references unknown airport " + cr.initial_position);
        if (cr.flight_time_limit <= 0)
            c.add("crew", cr.id, "duty-limit-nonpositive", "flight_time_limit must be > 0");
    }

    for (const auto& f : pi.flights) {
        if (ix.airport.find(f.origin) == ix.airport.end())
            c.add("flight", f.id, "unknown-airport", "origin references unknown airport " + f.origin);
        if (ix.airport.find(f.destination) == ix.airport.end())
            c.add("flight", f.id, "unknown-airport", "destination references unknown airport " + f.destination);
        if (f.origin == f.destination)
            c.add("flight", f.id, "degenerate-route", "origin equals destination");
        if (f.duration <= 0)
            c.add("flight", f.id, "duration-nonpositive", "duration must be > 0");
        if (ix.aircraft.find(f.original_aircraft) == ix.aircraft.end())
            c.add("flight", f.id, "unknown-aircraft", "original_aircraft references unknown aircraft " + f.original_aircraft);
        if (ix.crew.find(f.original_crew) == ix.crew.end())
            c.add("flight", f.id, "unknown-crew", "original_crew references unknown crew " + f.original_crew);
    }

    // Multi-leg groups: contiguous leg indexes, geographic chaining, time order,
    // one aircraft and one crew across the group.
    for (const auto& [gid, legs] : ix.multileg) {
        bool shape_ok = true;
        for (int k = 0; k < (int)legs.size(); ++k)
            if (pi.flights[legs[k]].leg_index != k) shape_ok = false;
        if ((int)legs.size() < 2) shape_ok = false;
        if (!shape_ok) {
            c.add("multileg", gid, "bad-leg-indexing", "legs must number 0..n-1 with n >= 2");
            continue;
        }
        for (int k = 0; k + 1 < (int)legs.size(); ++k) {
            const Flight& a = pi.flights[legs[k]];
            const Flight& b = pi.flights[legs[k + 1]];
            if (a.destination != b.origin)
                c.add("multileg", gid, "broken-chain",
                      "leg " + a.id + " lands at " + a.destination + " but leg " + b.id + " departs " + b.origin);
            if (b.sched_departure < a.sched_departure + a.duration)
                c.add("multileg", gid, "out-of-time-order",
                      "leg " + b.id + " departs before leg " + a.id + " arrives");
            if (a.original_aircraft != b.original_aircraft || a.original_crew != b.original_crew)
                c.add("multileg", gid, "split-resources", "all legs must share one aircraft and one crew");
        }
    }

    for (const auto& m : pi.maintenances) {
        if (ix.aircraft.find(m.aircraft) == ix.aircraft.end())
            c.add("maintenance", m.id, "unknown-aircraft", "references unknown aircraft " + m.aircraft);
        if (m.duration <= 0)
            c.add("maintenance", m.id, "duration-nonpositive", "duration must be > 0");
        if (m.allowed_windows.empty())
            c.add("maintenance", m.id, "no-windows", "at least one allowed window is required");
        for (const auto& w : m.allowed_windows) {
            if (ix.airport.find(w.airport) == ix.airport.end())
                c.add("maintenance", m.id, "unknown-airport", "window references unknown airport " + w.airport);
            if (w.latest_start < w.earliest_start)
                c.add("maintenance", m.id, "window-inverted", "latest_start before earliest_start");
        }
        if (m.fail_penalty <= pi.cost.cancellation_per_flight)
            c.add("maintenance", m.id, "penalty-too-low",
                  "fail_penalty must strictly exceed a single flight cancellation cost");
    }

    for (const auto& s : pi.slots) {
        if (ix.airport.find(s.airport) == ix.airport.end())
            c.add("slot", s.id, "unknown-airport", "references unknown airport " + s.airport);
        if (s.window_start >= s.window_end)
            c.add("slot", s.id, "window-inverted", "window_start must be < window_end");
        if (s.capacity < 0)
            c.add("slot", s.id, "capacity-negative", "capacity must be >= 0");
        if (s.nonuse_penalty < 0)
            c.add("slot", s.id, "penalty-negative", "nonuse_penalty must be >= 0");
    }

    for (const auto& it : pi.itineraries) {
        if (it.passenger_count <= 0)
            c.add("itinerary", it.id, "count-nonpositive", "passenger_count must be > 0");
        if (it.legs.empty()) {
            c.add("itinerary", it.id, "no-legs", "itinerary has no legs");
            continue;
        }
        const Flight* prev = nullptr;
        for (const auto& leg : it.legs) {
            int fi = ix.flight_of(leg.flight);
            if (fi < 0) {
                c.add("itinerary", it.id, "unknown-flight", "leg references unknown flight " + leg.flight);
                prev = nullptr;
                continue;
            }
            const Flight& f = pi.flights[fi];
            if (prev) {
                if (prev->destination != f.origin)
                    c.add("itinerary", it.id, "broken-chain",
                          "leg " + f.id + " departs " + f.origin + " but previous leg lands at " + prev->destination);
                if (f.sched_departure < prev->sched_departure + prev->duration)
                    c.add("itinerary", it.id, "out-of-time-order", "legs overlap in the published schedule");
            }
            prev = &f;
        }
        if (it.cancellation_cost < 0 || it.downgrade_cost < 0 || it.delay_cost < 0)
            c.add("itinerary", it.id, "negative-cost", "itinerary costs must be >= 0");
    }

    for (const auto& d : pi.disruptions) {
        switch (d.kind) {
        case DisruptionKind::FlightDelay:
            if (ix.flight.find(d.target) == ix.flight.end())
                c.add("disruption", d.target, "unknown-flight", "flight_delay targets unknown flight");
            if (d.delay_minutes <= 0)
                c.add("disruption", d.target, "delay-nonpositive", "flight_delay needs delay_minutes > 0");
            break;
        case DisruptionKind::FlightCancellation:
            if (ix.flight.find(d.target) == ix.flight.end())
                c.add("disruption", d.target, "unknown-flight", "flight_cancellation targets unknown flight");
            break;
        case DisruptionKind::AircraftUnavailability: {
            auto it = ix.aircraft.find(d.target);
            if (it == ix.aircraft.end()) {
                c.add("disruption", d.target, "unknown-aircraft", "aircraft_unavailability targets unknown aircraft");
                break;
            }
            if (d.window.start >= d.window.end) {
                c.add("disruption", d.target, "window-inverted", "unavailability window is empty");
                break;
            }
            // Not an input error, but worth surfacing: baseline flights the
            // window collides with (what the solver will have to untangle).
            for (int fi : ix.aircraft_rotation[it->second]) {
                const Flight& f = pi.flights[fi];
                Interval span{f.sched_departure, f.sched_departure + f.duration};
                if (span.overlaps(d.window))
                    c.add("disruption", d.target, "unavailability-conflict",
                          "window " + std::to_string(d.window.start) + ".." + std::to_string(d.window.end) +
                              " overlaps flight " + f.id,
                          "note");
            }
            break;
        }
        case DisruptionKind::SlotChange:
            if (ix.slot.find(d.target) == ix.slot.end())
                c.add("disruption", d.target, "unknown-slot", "slot_change targets unknown slot");
            if (d.new_capacity < 0)
                c.add("disruption", d.target, "capacity-negative", "slot_change capacity must be >= 0");
            break;
        case DisruptionKind::AirportClosure:
            if (ix.airport.find(d.target) == ix.airport.end())
                c.add("disruption", d.target, "unknown-airport", "airport_closure targets unknown airport");
            if (d.window.start >= d.window.end)
                c.add("disruption", d.target, "window-inverted", "closure window is empty");
            break;
        }
    }

    return c.out;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == "error") return true;
    return false;
}

} // namespace airs
