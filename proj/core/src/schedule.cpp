#include "airs/schedule.hpp"

#include <algorithm>

namespace airs {

RecoverySchedule baseline_schedule(const DisruptedState& st) {
    RecoverySchedule s;
    s.flights.resize(st.instance.flights.size());
    s.maints.resize(st.instance.maintenances.size());
    for (int f = 0; f < (int)st.instance.flights.size(); ++f) {
        FlightDisposition& d = s.flights[f];
        d.cancelled = st.flights[f].forced_cancel;
        d.departure = st.flights[f].departure;
        d.aircraft = st.index.aircraft.at(st.instance.flights[f].original_aircraft);
        d.crew = st.index.crew.at(st.instance.flights[f].original_crew);
    }
    return s;
}

namespace {

struct ChainEvent {
    Minutes start;
    Minutes end;   // resource busy until here (ground time excluded)
    int flight;    // -1 for maintenance
    int maint;     // -1 for flight
    int from_airport;
    int to_airport;
};

// Aircraft ground time after a flight: transit when the very next event is the
// following leg of the same multi-leg group, else turnaround.
Minutes ground_needed(const ProblemInstance& pi, const ChainEvent& cur, const ChainEvent* next) {
    if (cur.flight < 0) return 0; // maintenance ends ready to go
    const Airport& ap = pi.airports[cur.to_airport];
    if (next && next->flight >= 0) {
        const Flight& a = pi.flights[cur.flight];
        const Flight& b = pi.flights[next->flight];
        if (a.in_multileg() && b.multileg_group == a.multileg_group && b.leg_index == a.leg_index + 1)
            return ap.min_transit;
    }
    return ap.min_turnaround;
}

} // namespace

std::vector<Violation> check_feasibility(const DisruptedState& st, const RecoverySchedule& s) {
    std::vector<Violation> out;
    const ProblemInstance& pi = st.instance;
    const InstanceIndex& ix = st.index;
    const TimeAnchors& an = pi.anchors;
    auto bad = [&out](std::string rule, std::string entity, std::string detail) {
        out.push_back({std::move(rule), std::move(entity), std::move(detail)});
    };

    // Per-flight commitment and delay-bracket rules.
    for (int f = 0; f < (int)pi.flights.size(); ++f) {
        const Flight& fl = pi.flights[f];
        const FlightState& fs = st.flights[f];
        const FlightDisposition& d = s.flights[f];
        if (fs.forced_cancel) {
            if (!d.cancelled) bad("forced-cancel-revived", fl.id, "disruption-cancelled flight is scheduled");
            continue;
        }
        if (fs.fixed_past || fs.fixed_future) {
            const char* rule = fs.fixed_past ? "fixed-past-changed" : "fixed-horizon-changed";
            if (d.cancelled || d.departure != fs.departure ||
                d.aircraft != ix.aircraft.at(fl.original_aircraft) || d.crew != ix.crew.at(fl.original_crew))
                bad(rule, fl.id, "flight outside the recovery window was modified");
            continue;
        }
        if (d.cancelled) continue;
        Minutes t = d.departure;
        if (t < fs.departure)
            bad("advanced-departure", fl.id, "departs before the disrupted baseline time");
        if (t != fs.departure) { // a delayed copy must sit in the legal bracket
            if (t < an.recovery_start)
                bad("moved-into-frozen-gap", fl.id, "re-timed departure before recovery_start");
            if (t > fl.sched_departure + an.max_delay)
                bad("max-delay-exceeded", fl.id, "departure beyond published time + max_delay");
            if (t > an.recovery_finish)
                bad("beyond-horizon", fl.id, "re-timed past recovery_finish");
        }
        if (st.placement_blocked(f, t, d.aircraft))
            bad("window-blocked", fl.id, "overlaps an unavailability or closure window");
        if (d.aircraft < 0 || d.crew < 0)
            bad("unassigned-resources", fl.id, "scheduled flight lacks aircraft or crew");
    }

    // Aircraft rotations: position continuity, ground times, maintenance fit.
    std::vector<std::vector<ChainEvent>> per_aircraft(pi.aircraft.size());
    for (int f = 0; f < (int)pi.flights.size(); ++f) {
        const FlightDisposition& d = s.flights[f];
        if (d.cancelled || st.flights[f].fixed_past || d.aircraft < 0) continue;
        per_aircraft[d.aircraft].push_back({d.departure, d.departure + pi.flights[f].duration, f, -1,
                                            ix.airport_of(pi.flights[f].origin),
                                            ix.airport_of(pi.flights[f].destination)});
    }
    for (int m = 0; m < (int)pi.maintenances.size(); ++m) {
        const MaintDisposition& md = s.maints[m];
        if (!md.performed) continue;
        int a = (int)ix.aircraft.at(pi.maintenances[m].aircraft);
        per_aircraft[a].push_back({md.start, md.start + pi.maintenances[m].duration, -1, m,
                                   md.airport, md.airport});
        bool in_window = false;
        for (const auto& w : pi.maintenances[m].allowed_windows)
            if (ix.airport_of(w.airport) == md.airport && md.start >= w.earliest_start && md.start <= w.latest_start)
                in_window = true;
        if (!in_window)
            bad("maintenance-window", pi.maintenances[m].id, "placement outside every allowed window");
    }
    std::vector<Minutes> released_at(pi.aircraft.size());
    for (int a = 0; a < (int)pi.aircraft.size(); ++a) {
        auto& ev = per_aircraft[a];
        std::sort(ev.begin(), ev.end(), [](const ChainEvent& x, const ChainEvent& y) {
            if (x.start != y.start) return x.start < y.start;
            if ((x.flight < 0) != (y.flight < 0)) return (x.flight < 0) < (y.flight < 0);
            return x.flight != y.flight ? x.flight < y.flight : x.maint < y.maint;
        });
        int pos = st.aircraft_start[a].airport;
        Minutes ready = st.aircraft_start[a].ready;
        for (std::size_t k = 0; k < ev.size(); ++k) {
            const ChainEvent& e = ev[k];
            std::string id = e.flight >= 0 ? pi.flights[e.flight].id : pi.maintenances[e.maint].id;
            if (e.from_airport != pos)
                bad("rotation-gap", pi.aircraft[a].id, id + " starts at a different airport than the aircraft");
            if (e.start < ready)
                bad("rotation-overlap", pi.aircraft[a].id, id + " starts before the aircraft is ready");
            pos = e.to_airport;
            const ChainEvent* next = k + 1 < ev.size() ? &ev[k + 1] : nullptr;
            ready = e.end + ground_needed(pi, e, next);
        }
        released_at[a] = ready;
    }

    // A skipped maintenance withdraws its aircraft from service: nothing may
    // keep it busy past the last moment the maintenance could have started.
    for (int m = 0; m < (int)pi.maintenances.size(); ++m) {
        if (s.maints[m].performed) continue;
        int a = (int)ix.aircraft.at(pi.maintenances[m].aircraft);
        if (per_aircraft[a].empty()) continue;
        Minutes deadline = 0;
        for (const auto& w : pi.maintenances[m].allowed_windows)
            deadline = std::max(deadline, w.latest_start);
        if (released_at[a] > deadline)
            bad("maintenance-deadline", pi.maintenances[m].id,
                pi.aircraft[a].id + " is still in use past the latest start of a skipped maintenance");
    }

    // Crew chains: continuity, connection time when changing aircraft, duty.
    std::vector<std::vector<int>> per_crew(pi.crews.size());
    for (int f = 0; f < (int)pi.flights.size(); ++f) {
        const FlightDisposition& d = s.flights[f];
        if (d.cancelled || st.flights[f].fixed_past || d.crew < 0) continue;
        per_crew[d.crew].push_back(f);
    }
    for (int c = 0; c < (int)pi.crews.size(); ++c) {
        auto& fs = per_crew[c];
        std::sort(fs.begin(), fs.end(), [&s](int x, int y) {
            if (s.flights[x].departure != s.flights[y].departure)
                return s.flights[x].departure < s.flights[y].departure;
            return x < y;
        });
        int pos = st.crew_start[c].airport;
        int aboard = st.crew_start[c].aboard_aircraft;
        Minutes ready = st.crew_start[c].ready;
        Minutes duty = 0;
        for (int f : fs) {
            const FlightDisposition& d = s.flights[f];
            int orig = ix.airport_of(pi.flights[f].origin);
            if (orig != pos)
                bad("crew-teleport", pi.crews[c].id, pi.flights[f].id + " departs where the crew is not");
            Minutes need = ready + (aboard != d.aircraft ? pi.airports[orig].min_crew_connection : 0);
            if (d.departure < need)
                bad("crew-connection", pi.crews[c].id, pi.flights[f].id + " departs before the crew can connect");
            pos = ix.airport_of(pi.flights[f].destination);
            aboard = d.aircraft;
            ready = d.departure + pi.flights[f].duration;
            duty += pi.flights[f].duration;
        }
        if (duty > pi.crews[c].flight_time_limit)
            bad("duty-limit", pi.crews[c].id, "assigned block minutes exceed flight_time_limit");
    }

    // Multi-leg integrity over the in-model legs: all cancelled, or all flown
    // by one (aircraft, crew) pair with transit respected between legs.
    for (const auto& [gid, legs] : ix.multileg) {
        std::vector<int> live;
        for (int f : legs)
            if (!st.flights[f].fixed_past && !st.flights[f].forced_cancel) live.push_back(f);
        if (live.empty()) continue;
        int n_cancelled = 0;
        for (int f : live)
            if (s.flights[f].cancelled) ++n_cancelled;
        if (n_cancelled == (int)live.size()) continue;
        if (n_cancelled > 0) {
            bad("multileg-split", gid, "some legs operate while others are cancelled");
            continue;
        }
        for (std::size_t k = 0; k + 1 < live.size(); ++k) {
            const FlightDisposition& a = s.flights[live[k]];
            const FlightDisposition& b = s.flights[live[k + 1]];
            if (a.aircraft != b.aircraft || a.crew != b.crew)
                bad("multileg-split", gid, "legs operated by different aircraft or crews");
            int mid = ix.airport_of(pi.flights[live[k]].destination);
            if (b.departure < a.departure + pi.flights[live[k]].duration + pi.airports[mid].min_transit)
                bad("multileg-transit", gid, "next leg departs before transit is complete");
        }
    }

    // Slot capacity.  Departures that already happened eat into the window
    // but are sunk: only the live share can be blamed on the schedule.
    for (const Slot& sl : st.slots) {
        int flown = 0, live = 0;
        for (int f = 0; f < (int)pi.flights.size(); ++f) {
            if (s.flights[f].cancelled) continue;
            if (pi.flights[f].origin != sl.airport) continue;
            Minutes dep = st.flights[f].fixed_past ? st.flights[f].departure : s.flights[f].departure;
            if (!Interval{sl.window_start, sl.window_end}.contains(dep)) continue;
            st.flights[f].fixed_past ? ++flown : ++live;
        }
        if (live > std::max(0, sl.capacity - flown))
            bad("slot-capacity", sl.id, std::to_string(flown + live) +
                                            " departures in a window of capacity " +
                                            std::to_string(sl.capacity));
    }

    return out;
}

double schedule_cost(const DisruptedState& st, const RecoverySchedule& s) {
    const ProblemInstance& pi = st.instance;
    double cost = 0;
    for (int f = 0; f < (int)pi.flights.size(); ++f) {
        const FlightState& fs = st.flights[f];
        if (fs.forced_cancel || fs.fixed_past) continue; // sunk
        const FlightDisposition& d = s.flights[f];
        if (d.cancelled)
            cost += pi.cost.cancellation_per_flight;
        else
            cost += pi.cost.delay_per_minute * double(d.departure - pi.flights[f].sched_departure);
    }
    for (int m = 0; m < (int)pi.maintenances.size(); ++m)
        if (!s.maints[m].performed) cost += pi.maintenances[m].fail_penalty;
    for (const Slot& sl : st.slots) {
        if (sl.nonuse_penalty <= 0) continue;
        int used = 0;
        for (int f = 0; f < (int)pi.flights.size(); ++f) {
            if (s.flights[f].cancelled) continue;
            if (pi.flights[f].origin != sl.airport) continue;
            Minutes dep = st.flights[f].fixed_past ? st.flights[f].departure : s.flights[f].departure;
            if (Interval{sl.window_start, sl.window_end}.contains(dep)) ++used;
        }
        if (used < sl.capacity) cost += sl.nonuse_penalty * double(sl.capacity - used);
    }
    return cost;
}

SolutionFeedback collect_feedback(const DisruptedState& st, const RecoverySchedule& s,
                                  Minutes delay_threshold) {
    SolutionFeedback fb;
    const ProblemInstance& pi = st.instance;
    for (int f = 0; f < (int)pi.flights.size(); ++f) {
        const FlightState& fs = st.flights[f];
        if (fs.forced_cancel || fs.fixed_past || fs.fixed_future) continue;
        const FlightDisposition& d = s.flights[f];
        if (d.cancelled)
            fb.cancelled_flights.push_back(f);
        else if (d.departure - pi.flights[f].sched_departure >= delay_threshold)
            fb.heavily_delayed.push_back(f);
    }
    for (int m = 0; m < (int)s.maints.size(); ++m)
        if (!s.maints[m].performed) fb.failed_maintenances.push_back(m);
    return fb;
}

} // namespace airs
