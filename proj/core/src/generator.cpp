#include "airs/generator.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "airs/rng.hpp"

namespace airs {

namespace {

std::string tag(const char* prefix, int n, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%0*d", prefix, width & 15, n + 1);
    return buf;
}

int id_width(int count) {
    int w = 1, c = count;
    while (c >= 10) { c /= 10; ++w; }
    return w;
}

Minutes round5(Minutes t) { return (t + 2) / 5 * 5; }

struct TourLeg {
    int from = 0;
    int to = 0;
    bool through = false; // second leg keeps the cabin, i.e. multi-leg service
};

} // namespace

ProblemInstance generate_instance(const GeneratorConfig& cfg) {
    if (cfg.airports < 2) throw std::invalid_argument("generator: need at least 2 airports");
    if (cfg.aircraft < 1) throw std::invalid_argument("generator: need at least 1 aircraft");
    if (cfg.flights < 0 || cfg.crews < 0) throw std::invalid_argument("generator: negative counts");
    if (cfg.slotted_airports > cfg.airports)
        throw std::invalid_argument("generator: more slotted airports than airports");
    if (cfg.flights > 0 && cfg.crews < std::min(cfg.aircraft, cfg.flights))
        throw std::invalid_argument("generator: not enough crews to man the aircraft");
    if (cfg.load_factor <= 0 || cfg.load_factor > 1)
        throw std::invalid_argument("generator: load_factor must be in (0, 1]");

    Rng rng(cfg.seed);
    ProblemInstance pi;

    const int hubs = std::max(1, cfg.airports / 12);
    const int aw = id_width(cfg.airports);

    // Airports.  Hubs come first and turn aircraft around a little slower.
    for (int i = 0; i < cfg.airports; ++i) {
        Airport ap;
        ap.id = tag("AP", i, aw);
        bool hub = i < hubs;
        ap.min_turnaround = hub ? rng.range(35, 45) : rng.range(25, 40);
        ap.min_transit = rng.range(15, 25);
        ap.min_crew_connection = rng.range(20, 30);
        pi.airports.push_back(ap);
    }

    // Spoke flying times from each hub, fixed per (hub, spoke) pair.
    std::vector<std::vector<Minutes>> leg_time(hubs, std::vector<Minutes>(cfg.airports, 0));
    for (int h = 0; h < hubs; ++h)
        for (int s = 0; s < cfg.airports; ++s)
            leg_time[h][s] = round5(rng.range(45, 150));

    const int acw = id_width(cfg.aircraft);
    std::vector<int> home(cfg.aircraft);
    for (int a = 0; a < cfg.aircraft; ++a) {
        home[a] = static_cast<int>(rng.below(hubs));
        Aircraft ac;
        ac.id = tag("AC", a, acw);
        ac.initial_position = pi.airports[home[a]].id;
        ac.available_from = 0;
        pi.aircraft.push_back(ac);
    }

    // Cabin layout per aircraft, shared by all its flights.
    std::vector<SeatCapacity> cabin(cfg.aircraft);
    for (int a = 0; a < cfg.aircraft; ++a) {
        cabin[a].seats[0] = static_cast<int>(rng.range(110, 186) * cfg.seat_scale);
        cabin[a].seats[1] = static_cast<int>(rng.range(8, 24) * cfg.seat_scale);
        cabin[a].seats[2] = static_cast<int>(rng.range(4, 12) * cfg.seat_scale);
    }

    // Flights per aircraft, remainder spread from the front.
    std::vector<int> quota(cfg.aircraft, cfg.aircraft ? cfg.flights / cfg.aircraft : 0);
    for (int r = 0; r < cfg.flights % std::max(1, cfg.aircraft); ++r) quota[r] += 1;

    // Tours: hub, spoke, hub, spoke...  A through connection replaces the
    // hub turnaround with a transit, producing a spoke-hub-spoke service.
    std::vector<std::vector<TourLeg>> tour(cfg.aircraft);
    for (int a = 0; a < cfg.aircraft; ++a) {
        int at = home[a];
        for (int k = 0; k < quota[a]; ++k) {
            TourLeg leg;
            leg.from = at;
            if (at < hubs) {
                leg.to = static_cast<int>(hubs + rng.below(cfg.airports - hubs));
            } else {
                leg.to = home[a];
            }
            tour[a].push_back(leg);
            at = leg.to;
        }
    }
    // Through services: inbound legs whose tour continues afterwards.
    {
        std::vector<std::pair<int, int>> eligible;
        for (int a = 0; a < cfg.aircraft; ++a)
            for (int k = 0; k + 1 < static_cast<int>(tour[a].size()); ++k)
                if (tour[a][k].from >= hubs) eligible.push_back({a, k});
        if (static_cast<int>(eligible.size()) < cfg.multileg_connections)
            throw std::invalid_argument("generator: not enough rotation length for multileg connections");
        rng.shuffle(eligible);
        for (int m = 0; m < cfg.multileg_connections; ++m)
            tour[eligible[m].first][eligible[m].second].through = true;
    }

    // Lay the tours out in time.
    const int fw = id_width(std::max(1, cfg.flights));
    int fseq = 0, mseq = 0;
    std::vector<std::vector<int>> rota(cfg.aircraft); // flight indices per aircraft
    for (int a = 0; a < cfg.aircraft; ++a) {
        Minutes t = cfg.current_time + 90 + round5(rng.range(0, 360));
        for (size_t k = 0; k < tour[a].size(); ++k) {
            const TourLeg& leg = tour[a][k];
            int hub = leg.from < hubs ? leg.from : leg.to;
            Flight f;
            f.id = tag("F", fseq++, fw);
            f.origin = pi.airports[leg.from].id;
            f.destination = pi.airports[leg.to].id;
            f.sched_departure = t;
            f.duration = leg_time[hub][leg.from < hubs ? leg.to : leg.from];
            f.original_aircraft = pi.aircraft[a].id;
            f.seat_capacity = cabin[a];
            if (leg.through) {
                std::string gid = "G" + std::to_string(++mseq);
                f.multileg_group = gid;
                f.leg_index = 0;
                // Mark the next leg when it gets built.
            }
            if (k > 0 && tour[a][k - 1].through) {
                f.multileg_group = pi.flights.back().multileg_group;
                f.leg_index = 1;
            }
            rota[a].push_back(static_cast<int>(pi.flights.size()));
            pi.flights.push_back(f);

            Minutes arr = t + pi.flights.back().duration;
            Minutes ground = leg.through ? pi.airports[leg.to].min_transit
                                         : pi.airports[leg.to].min_turnaround;
            t = round5(arr + ground + rng.range(10, 50));
        }
    }

    // Crews: one block per aircraft, extra crews either split long rotations
    // or sit spare at a hub.  available_from 0 keeps first departures legal.
    int flying = 0;
    for (int a = 0; a < cfg.aircraft; ++a)
        if (!rota[a].empty()) ++flying;
    int extra = cfg.crews - flying;
    if (extra < 0) throw std::invalid_argument("generator: not enough crews to man the aircraft");
    int spares = extra / 4 + (extra % 4 ? 1 : 0);
    int splits = extra - spares;

    // Duty boundaries: aircraft with the most flights get split first.
    std::vector<int> by_len;
    for (int a = 0; a < cfg.aircraft; ++a)
        if (rota[a].size() >= 4) by_len.push_back(a);
    std::sort(by_len.begin(), by_len.end(), [&](int x, int y) {
        if (rota[x].size() != rota[y].size()) return rota[x].size() > rota[y].size();
        return x < y;
    });
    std::vector<int> cuts(cfg.aircraft, 0);
    for (int i = 0; i < splits; ++i) {
        if (by_len.empty()) { spares += splits - i; break; }
        int a = by_len[i % by_len.size()];
        if (cuts[a] + 2 <= static_cast<int>(rota[a].size()) / 2) cuts[a] += 1;
        else ++spares;
    }

    const int crw = id_width(std::max(1, cfg.crews));
    int cseq = 0;
    auto add_duty = [&](int a, size_t lo, size_t hi) { // [lo, hi)
        CrewGroup cr;
        cr.id = tag("CR", cseq++, crw);
        cr.initial_position = pi.flights[rota[a][lo]].origin;
        cr.available_from = 0;
        Minutes duty = 0;
        for (size_t k = lo; k < hi; ++k) {
            pi.flights[rota[a][k]].original_crew = cr.id;
            duty += pi.flights[rota[a][k]].duration;
        }
        cr.flight_time_limit = (duty * rng.range(120, 160) + 99) / 100;
        pi.crews.push_back(cr);
    };
    for (int a = 0; a < cfg.aircraft; ++a) {
        if (rota[a].empty()) continue;
        size_t n = rota[a].size();
        int parts = cuts[a] + 1;
        // Duty boundaries must not land inside a through service.
        size_t lo = 0;
        for (int p = 0; p < parts; ++p) {
            size_t hi = p + 1 == parts ? n : n * (p + 1) / parts;
            while (hi < n && hi > lo && !pi.flights[rota[a][hi - 1]].multileg_group.empty() &&
                   pi.flights[rota[a][hi - 1]].leg_index == 0)
                ++hi;
            if (hi <= lo) continue;
            add_duty(a, lo, hi);
            lo = hi;
        }
    }
    while (cseq < cfg.crews) {
        CrewGroup cr;
        cr.id = tag("CR", cseq++, crw);
        cr.initial_position = pi.airports[rng.below(hubs)].id;
        cr.available_from = 0;
        cr.flight_time_limit = round5(rng.range(360, 600));
        pi.crews.push_back(cr);
    }

    // Anchors.
    Minutes last_arrival = cfg.current_time;
    for (const Flight& f : pi.flights)
        last_arrival = std::max(last_arrival, f.sched_departure + f.duration);
    pi.anchors.current_time = cfg.current_time;
    pi.anchors.recovery_start = cfg.current_time + 60;
    pi.anchors.max_delay = cfg.max_delay;
    pi.anchors.recovery_finish =
        cfg.horizon_cut >= 0 ? cfg.horizon_cut : last_arrival + cfg.max_delay + 120;
    pi.cost.delay_per_minute = 10;
    pi.cost.cancellation_per_flight = 50000;

    // Maintenance: parked after the rotation ends, where the aircraft sits
    // anyway, so at least one placement is always schedulable.
    if (cfg.maintenances > cfg.aircraft)
        throw std::invalid_argument("generator: at most one maintenance per aircraft");
    std::vector<int> maint_ac;
    for (int a = 0; a < cfg.aircraft; ++a)
        if (!rota[a].empty()) maint_ac.push_back(a);
    rng.shuffle(maint_ac);
    const int mw = id_width(std::max(1, cfg.maintenances));
    for (int m = 0; m < cfg.maintenances; ++m) {
        if (m >= static_cast<int>(maint_ac.size()))
            throw std::invalid_argument("generator: not enough flying aircraft for maintenances");
        int a = maint_ac[m];
        const Flight& last = pi.flights[rota[a].back()];
        int dest = 0;
        while (pi.airports[dest].id != last.destination) ++dest;
        Maintenance mx;
        mx.id = tag("MX", m, mw);
        mx.aircraft = pi.aircraft[a].id;
        mx.duration = round5(rng.range(60, 180));
        Minutes open = last.sched_departure + last.duration + pi.airports[dest].min_turnaround;
        Minutes close = std::min(open + 360, pi.anchors.recovery_finish - mx.duration);
        if (close < open) close = open;
        mx.allowed_windows.push_back({last.destination, open, close});
        // A second, tighter option at the home hub when the tour passes it.
        if (dest != home[a]) {
            Minutes h_open = pi.anchors.recovery_start + 120;
            Minutes h_close = std::max(h_open, pi.anchors.recovery_finish - mx.duration - 120);
            mx.allowed_windows.push_back({pi.airports[home[a]].id, h_open, h_close});
        }
        mx.fail_penalty = pi.cost.cancellation_per_flight * rng.range(2, 4);
        pi.maintenances.push_back(mx);
    }

    // Slots.  Busiest airports are the regulated ones; windows tile each
    // airport's active day and capacity is sized off the undisrupted plan.
    std::vector<int> departures(cfg.airports, 0);
    for (const Flight& f : pi.flights) {
        int o = 0;
        while (pi.airports[o].id != f.origin) ++o;
        departures[o] += 1;
    }
    std::vector<int> by_traffic;
    for (int i = 0; i < cfg.airports; ++i) by_traffic.push_back(i);
    std::sort(by_traffic.begin(), by_traffic.end(), [&](int x, int y) {
        if (departures[x] != departures[y]) return departures[x] > departures[y];
        return x < y;
    });
    int slotted = std::min(cfg.slotted_airports, cfg.airports);
    const int sw = id_width(std::max(1, cfg.slots));
    int sseq = 0;
    if (cfg.slots > 0 && slotted > 0) {
        int per = cfg.slots / slotted, rem = cfg.slots % slotted;
        for (int i = 0; i < slotted; ++i) {
            int ap = by_traffic[i];
            int windows = per + (i < rem ? 1 : 0);
            if (windows == 0) continue;
            Minutes lo = pi.anchors.current_time;
            Minutes hi = pi.anchors.recovery_finish;
            Minutes width = std::max<Minutes>(15, (hi - lo + windows - 1) / windows);
            for (int wdx = 0; wdx < windows; ++wdx) {
                Slot s;
                s.id = tag("SL", sseq++, sw);
                s.airport = pi.airports[ap].id;
                s.window_start = lo + wdx * width;
                s.window_end = wdx + 1 == windows ? std::max(hi, s.window_start + width)
                                                  : s.window_start + width;
                int used = 0;
                for (const Flight& f : pi.flights)
                    if (f.origin == s.airport && f.sched_departure >= s.window_start &&
                        f.sched_departure < s.window_end)
                        ++used;
                if (used > 0 && rng.chance(0.15)) {
                    s.capacity = used;
                    s.nonuse_penalty = rng.range(50, 200);
                } else {
                    s.capacity = used + cfg.slot_headroom;
                    s.nonuse_penalty = 0;
                }
                pi.slots.push_back(s);
            }
        }
    }

    // Itineraries: mostly nonstop, the rest one-stop over an actually
    // flyable connection.  Occupancy stays under the load factor cap.
    struct Load { int used[3] = {0, 0, 0}; };
    std::vector<Load> load(pi.flights.size());
    auto budget = [&](int f, int c) {
        int cap = static_cast<int>(pi.flights[f].seat_capacity.seats[c] * cfg.load_factor);
        return cap - load[f].used[c];
    };
    std::vector<std::vector<int>> conns(pi.flights.size());
    {
        std::vector<int> by_dep;
        for (size_t f = 0; f < pi.flights.size(); ++f) by_dep.push_back(static_cast<int>(f));
        std::sort(by_dep.begin(), by_dep.end(), [&](int x, int y) {
            if (pi.flights[x].sched_departure != pi.flights[y].sched_departure)
                return pi.flights[x].sched_departure < pi.flights[y].sched_departure;
            return pi.flights[x].id < pi.flights[y].id;
        });
        for (size_t f = 0; f < pi.flights.size(); ++f) {
            const Flight& a = pi.flights[f];
            Minutes arr = a.sched_departure + a.duration;
            int apx = 0;
            while (pi.airports[apx].id != a.destination) ++apx;
            Minutes mct = pi.airports[apx].min_crew_connection;
            for (int g : by_dep) {
                const Flight& b = pi.flights[g];
                if (b.origin != a.destination) continue;
                if (b.sched_departure < arr + mct) continue;
                if (b.sched_departure > arr + mct + 240) break;
                if (b.destination == a.origin) continue; // pointless round trip
                conns[f].push_back(g);
            }
        }
    }
    const int iw = id_width(std::max(1, cfg.passenger_tickets / 2));
    int iseq = 0, sold = 0, dry = 0;
    while (sold < cfg.passenger_tickets && dry < 4 * cfg.passenger_tickets + 64) {
        ++dry;
        if (pi.flights.empty()) break;
        int f = static_cast<int>(rng.below(pi.flights.size()));
        double roll = rng.real();
        int c = roll < 0.85 ? 0 : roll < 0.95 ? 1 : 2;
        if (budget(f, c) <= 0) {
            if (budget(f, 0) > 0) c = 0; else continue;
        }
        Itinerary it;
        it.id = tag("IT", iseq, iw);
        int count = static_cast<int>(rng.range(1, 5));
        count = std::min(count, cfg.passenger_tickets - sold);
        count = std::min(count, budget(f, c));
        if (count <= 0) continue;
        bool connect = !conns[f].empty() && rng.chance(0.4);
        int g = -1;
        if (connect) {
            g = conns[f][rng.below(conns[f].size())];
            count = std::min(count, budget(g, c));
            if (count <= 0) continue;
        }
        it.legs.push_back({pi.flights[f].id, static_cast<CabinClass>(c)});
        load[f].used[c] += count;
        if (g >= 0) {
            it.legs.push_back({pi.flights[g].id, static_cast<CabinClass>(c)});
            load[g].used[c] += count;
        }
        it.passenger_count = count;
        it.cancellation_cost = rng.range(200, 800);
        it.downgrade_cost = rng.range(30, 120);
        it.delay_cost = rng.range(1, 3);
        pi.itineraries.push_back(it);
        ++iseq;
        sold += count;
    }

    // Disruptions.  Targets sit inside the recovery horizon with room to
    // react; a minority of delays bursts past max_delay on purpose.
    std::vector<int> hittable;
    for (size_t f = 0; f < pi.flights.size(); ++f) {
        Minutes dep = pi.flights[f].sched_departure;
        if (dep >= pi.anchors.recovery_start + 30 &&
            dep + cfg.max_delay + 60 <= pi.anchors.recovery_finish)
            hittable.push_back(static_cast<int>(f));
    }
    if (cfg.flight_disruptions > 0 && hittable.empty())
        throw std::invalid_argument("generator: no flights available to disrupt");
    int cancels = static_cast<int>(cfg.flight_disruptions * cfg.cancel_fraction);
    for (int d = 0; d < cfg.flight_disruptions; ++d) {
        int f = hittable[rng.below(hittable.size())];
        Disruption dis;
        dis.target = pi.flights[f].id;
        if (d < cancels) {
            dis.kind = DisruptionKind::FlightCancellation;
        } else {
            dis.kind = DisruptionKind::FlightDelay;
            dis.delay_minutes = rng.chance(0.15)
                                    ? cfg.max_delay + round5(rng.range(15, 120))
                                    : round5(rng.range(30, cfg.max_delay));
        }
        pi.disruptions.push_back(dis);
    }
    for (int d = 0; d < cfg.groundings; ++d) {
        int a = static_cast<int>(rng.below(cfg.aircraft));
        Disruption dis;
        dis.kind = DisruptionKind::AircraftUnavailability;
        dis.target = pi.aircraft[a].id;
        Minutes at = pi.anchors.recovery_start + round5(rng.range(60, 600));
        dis.window = {at, at + round5(rng.range(120, 360))};
        pi.disruptions.push_back(dis);
    }
    for (int d = 0; d < cfg.slot_changes && !pi.slots.empty(); ++d) {
        std::vector<int> eligible;
        for (size_t s = 0; s < pi.slots.size(); ++s)
            if (pi.slots[s].window_end > pi.anchors.recovery_start && pi.slots[s].capacity > 0)
                eligible.push_back(static_cast<int>(s));
        if (eligible.empty()) break;
        int s = eligible[rng.below(eligible.size())];
        Disruption dis;
        dis.kind = DisruptionKind::SlotChange;
        dis.target = pi.slots[s].id;
        dis.new_capacity = static_cast<int>(rng.below(pi.slots[s].capacity));
        pi.disruptions.push_back(dis);
    }
    for (int d = 0; d < cfg.closures; ++d) {
        int ap = hubs + static_cast<int>(rng.below(std::max(1, cfg.airports - hubs)));
        Disruption dis;
        dis.kind = DisruptionKind::AirportClosure;
        dis.target = pi.airports[ap % cfg.airports].id;
        Minutes at = pi.anchors.recovery_start + round5(rng.range(60, 480));
        dis.window = {at, at + round5(rng.range(60, 150))};
        pi.disruptions.push_back(dis);
    }

    return pi;
}

} // namespace airs
