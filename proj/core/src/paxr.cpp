#include "airs/paxr.hpp"

#include "airs/rng.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <thread>
#include <utility>

namespace airs {
namespace {

constexpr Minutes kFar = std::numeric_limits<Minutes>::max() / 4;

int rank(CabinClass c) { return static_cast<int>(c); }

CabinClass ref_cabin(const Itinerary& it) {
    int r = 0;
    for (const auto& l : it.legs) r = std::max(r, rank(l.cabin));
    return static_cast<CabinClass>(r);
}

// Seats still open per flight and cabin under one schedule.
struct SeatLedger {
    std::vector<SeatCapacity> left;

    SeatLedger(const ProblemInstance& pi, const RecoverySchedule& s) {
        left.resize(pi.flights.size());
        for (int f = 0; f < (int)pi.flights.size(); ++f)
            if (!s.flights[f].cancelled) left[f] = pi.flights[f].seat_capacity;
    }
    int avail(int f, CabinClass c) const { return left[f][c]; }
    void take(int f, CabinClass c, int n) { left[f][c] -= n; }
};

// Booking cabin for a reference class: cheapest class at or above it with a
// seat, otherwise the closest one below (a downgrade).
int choose_cabin(const SeatLedger& led, int f, int ref) {
    for (int c = ref; c < kCabinCount; ++c)
        if (led.avail(f, static_cast<CabinClass>(c)) > 0) return c;
    for (int c = ref - 1; c >= 0; --c)
        if (led.avail(f, static_cast<CabinClass>(c)) > 0) return c;
    return -1;
}

struct Path {
    std::vector<JourneySegment> steps;
    Minutes arrive = kFar;
    int cap = 0;
};

// Earliest-arrival search over the recovered timetable.  One scan over the
// flights in departure order with per-airport labels split by legs used, so
// the transfer cap is exact.  Ties fall to fewer downgrades, then fewer legs.
struct Router {
    const ProblemInstance& pi;
    const RecoverySchedule& s;
    Minutes ct = 0;           // rerouted passengers can only board from here on
    std::vector<int> order;   // live flights sorted by recovered departure
    std::vector<int> org, dst; // airport indices per flight
    std::vector<Minutes> transit; // per airport

    Router(const DisruptedState& st, const RecoverySchedule& sched)
        : pi(st.instance), s(sched), ct(st.instance.anchors.current_time) {
        org.resize(pi.flights.size());
        dst.resize(pi.flights.size());
        for (int f = 0; f < (int)pi.flights.size(); ++f) {
            org[f] = st.index.airport_of(pi.flights[f].origin);
            dst[f] = st.index.airport_of(pi.flights[f].destination);
            if (!s.flights[f].cancelled) order.push_back(f);
        }
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (s.flights[a].departure != s.flights[b].departure)
                return s.flights[a].departure < s.flights[b].departure;
            return a < b;
        });
        transit.resize(pi.airports.size());
        for (int a = 0; a < (int)pi.airports.size(); ++a)
            transit[a] = pi.airports[a].min_transit;
    }

    struct Lab {
        Minutes t = kFar;
        int down = std::numeric_limits<int>::max();
        int via = -1;   // flight that produced the label
        int via_k = -1; // legs used before boarding it
    };

    std::optional<Path> find(const SeatLedger& led, int src, Minutes ready, CabinClass ref,
                             int target, int max_legs) const {
        if (src == target) return std::nullopt; // already there, nothing to fly
        const int K = max_legs;
        const int A = (int)pi.airports.size();
        std::vector<Lab> lab(A * (K + 1));
        lab[src * (K + 1)] = {ready, 0, -1, -1};
        for (int f : order) {
            Minutes dep = s.flights[f].departure;
            if (dep < ready || dep < ct) continue;
            int cab = choose_cabin(led, f, rank(ref));
            if (cab < 0) continue;
            int dg = std::max(0, rank(ref) - cab);
            Minutes arr = dep + pi.flights[f].duration;
            for (int k = 0; k < K; ++k) {
                const Lab& L = lab[org[f] * (K + 1) + k];
                if (L.t == kFar) continue;
                Minutes need = L.t + (k > 0 ? transit[org[f]] : 0);
                if (dep < need) continue;
                Lab& N = lab[dst[f] * (K + 1) + k + 1];
                int nd = L.down + dg;
                if (arr < N.t || (arr == N.t && nd < N.down)) N = {arr, nd, f, k};
            }
        }
        int best_k = -1;
        for (int k = 1; k <= K; ++k) {
            const Lab& L = lab[target * (K + 1) + k];
            if (L.t == kFar) continue;
            if (best_k < 0) { best_k = k; continue; }
            const Lab& B = lab[target * (K + 1) + best_k];
            if (L.t < B.t || (L.t == B.t && L.down < B.down)) best_k = k;
        }
        if (best_k < 0) return std::nullopt;
        Path p;
        p.arrive = lab[target * (K + 1) + best_k].t;
        p.cap = std::numeric_limits<int>::max();
        int at = target, k = best_k;
        while (k > 0) {
            const Lab& L = lab[at * (K + 1) + k];
            int cab = choose_cabin(led, L.via, rank(ref));
            p.steps.push_back({L.via, static_cast<CabinClass>(cab)});
            p.cap = std::min(p.cap, led.avail(L.via, static_cast<CabinClass>(cab)));
            at = org[L.via];
            k = L.via_k;
        }
        std::reverse(p.steps.begin(), p.steps.end());
        return p;
    }
};

// One block of passengers waiting somewhere mid-journey (or at the origin).
// `ready` already includes the connection slack when they came off a flight.
struct Wave {
    int count = 0;
    int airport = -1;
    Minutes ready = 0;
    std::vector<JourneySegment> flown;
};

} // namespace

PassengerAssignment assign_itineraries(const DisruptedState& st, const RecoverySchedule& s,
                                       int max_transfers) {
    const ProblemInstance& pi = st.instance;
    const InstanceIndex& ix = st.index;
    const int K = max_transfers + 1;
    const Minutes ct = pi.anchors.current_time;
    const Minutes rs = pi.anchors.recovery_start;

    PassengerAssignment out;
    out.itins.resize(pi.itineraries.size());
    SeatLedger led(pi, s);
    Router router(st, s);

    auto leg_flight = [&](const Itinerary& it, int j) { return ix.flight_of(it.legs[j].flight); };
    auto reroute_waves = [&](int i, std::vector<Wave>& waves, CabinClass ref, int target) {
        for (Wave& w : waves) {
            while (w.count > 0) {
                auto p = router.find(led, w.airport, w.ready, ref, target, K);
                if (!p) break;
                int q = std::min(w.count, p->cap);
                if (q <= 0) break;
                Booking b{q, w.flown};
                b.segments.insert(b.segments.end(), p->steps.begin(), p->steps.end());
                for (const auto& sgm : p->steps) led.take(sgm.flight, sgm.cabin, q);
                out.itins[i].bookings.push_back(std::move(b));
                w.count -= q;
            }
            if (w.count > 0) {
                if (w.flown.empty()) out.itins[i].unassigned += w.count;
                else out.itins[i].bookings.push_back({w.count, w.flown});
            }
        }
    };

    std::vector<char> treated(pi.itineraries.size(), 0);

    // Pass 1: itineraries already under way.  Their flown (or committed)
    // prefix stands; everyone continues from wherever that prefix ends.
    struct Partial {
        int itin = 0;
        Minutes est = 0; // remaining trip time from the stranding point
        int prefix = 0;
        std::vector<Wave> waves;
        std::vector<std::pair<int, std::vector<JourneySegment>>> done;
    };
    std::vector<Partial> partials;
    for (int i = 0; i < (int)pi.itineraries.size(); ++i) {
        const Itinerary& it = pi.itineraries[i];
        const int n = (int)it.legs.size();
        if (n == 0 || it.passenger_count <= 0) { treated[i] = 1; continue; }
        int f0 = leg_flight(it, 0);
        if (s.flights[f0].cancelled || s.flights[f0].departure >= rs) continue;
        // longest committed chain on the original legs and cabins
        int j = 0;
        Minutes prev_arr = 0;
        int prev_dst = -1;
        int mincap = std::numeric_limits<int>::max();
        while (j < n) {
            int f = leg_flight(it, j);
            const FlightDisposition& d = s.flights[f];
            if (d.cancelled || d.departure >= rs) break;
            if (j > 0) {
                if (router.org[f] != prev_dst) break;
                if (d.departure < prev_arr + router.transit[router.org[f]]) break;
            }
            if (led.avail(f, it.legs[j].cabin) <= 0) break;
            mincap = std::min(mincap, led.avail(f, it.legs[j].cabin));
            prev_arr = d.departure + pi.flights[f].duration;
            prev_dst = router.dst[f];
            ++j;
        }
        if (j == 0) continue;
        treated[i] = 1;
        int q = std::min(it.passenger_count, mincap);
        std::vector<JourneySegment> prefix;
        for (int k = 0; k < j; ++k) {
            int f = leg_flight(it, k);
            led.take(f, it.legs[k].cabin, q);
            prefix.push_back({f, it.legs[k].cabin});
        }
        Partial part;
        part.itin = i;
        part.prefix = j;
        int fl_last = leg_flight(it, n - 1);
        Minutes pub_arr = pi.flights[fl_last].sched_departure + pi.flights[fl_last].duration;
        part.est = std::max<Minutes>(0, pub_arr - prev_arr);
        if (j == n) {
            part.done.push_back({q, std::move(prefix)});
        } else {
            part.waves.push_back({q, prev_dst, prev_arr + router.transit[prev_dst], std::move(prefix)});
        }
        if (q < it.passenger_count) // seats ran short on their own legs
            part.waves.push_back({it.passenger_count - q, router.org[f0], ct, {}});
        partials.push_back(std::move(part));
    }
    std::stable_sort(partials.begin(), partials.end(),
                     [](const Partial& a, const Partial& b) { return a.est < b.est; });
    for (Partial& part : partials) {
        const Itinerary& it = pi.itineraries[part.itin];
        const int n = (int)it.legs.size();
        for (auto& d : part.done) out.itins[part.itin].bookings.push_back({d.first, std::move(d.second)});
        // try the original continuation first, at original cabins
        if (!part.waves.empty() && part.prefix < n && part.waves.front().count > 0 &&
            !part.waves.front().flown.empty()) {
            Wave& mw = part.waves.front();
            int j = part.prefix;
            Minutes at = mw.ready; // includes the transfer slack already
            int pos = mw.airport;
            int jend = j;
            Minutes prev_arr = 0;
            int mincap = std::numeric_limits<int>::max();
            while (jend < n) {
                int f = leg_flight(it, jend);
                const FlightDisposition& d = s.flights[f];
                if (d.cancelled || router.org[f] != pos) break;
                Minutes need = jend == j ? at : prev_arr + router.transit[router.org[f]];
                if (d.departure < need) break;
                if (led.avail(f, it.legs[jend].cabin) <= 0) break;
                mincap = std::min(mincap, led.avail(f, it.legs[jend].cabin));
                prev_arr = d.departure + pi.flights[f].duration;
                pos = router.dst[f];
                ++jend;
            }
            if (jend > j) {
                int q = std::min(mw.count, mincap);
                std::vector<JourneySegment> path = mw.flown;
                for (int k = j; k < jend; ++k) {
                    int f = leg_flight(it, k);
                    led.take(f, it.legs[k].cabin, q);
                    path.push_back({f, it.legs[k].cabin});
                }
                mw.count -= q;
                if (jend == n) {
                    out.itins[part.itin].bookings.push_back({q, std::move(path)});
                } else {
                    part.waves.push_back({q, pos, prev_arr + router.transit[pos], std::move(path)});
                }
            }
        }
        reroute_waves(part.itin, part.waves, ref_cabin(it), router.dst[leg_flight(it, n - 1)]);
    }

    // Pass 2: untouched itineraries keep their whole original path while the
    // times still chain and seats remain, most expensive bookings first.
    struct Claim {
        int itin = 0;
        int count = 0;
        double est = 0;
    };
    std::vector<Claim> pool;
    std::vector<int> order2;
    for (int i = 0; i < (int)pi.itineraries.size(); ++i)
        if (!treated[i]) order2.push_back(i);
    std::stable_sort(order2.begin(), order2.end(), [&](int a, int b) {
        double ea = pi.itineraries[a].passenger_count * pi.itineraries[a].cancellation_cost;
        double eb = pi.itineraries[b].passenger_count * pi.itineraries[b].cancellation_cost;
        return ea > eb;
    });
    for (int i : order2) {
        const Itinerary& it = pi.itineraries[i];
        const int n = (int)it.legs.size();
        bool ok = true;
        Minutes prev_arr = 0;
        int prev_dst = -1;
        int mincap = std::numeric_limits<int>::max();
        for (int j = 0; j < n && ok; ++j) {
            int f = leg_flight(it, j);
            const FlightDisposition& d = s.flights[f];
            if (d.cancelled) { ok = false; break; }
            if (j == 0) {
                if (d.departure < ct) { ok = false; break; }
            } else {
                if (router.org[f] != prev_dst ||
                    d.departure < prev_arr + router.transit[router.org[f]]) { ok = false; break; }
            }
            mincap = std::min(mincap, led.avail(f, it.legs[j].cabin));
            prev_arr = d.departure + pi.flights[f].duration;
            prev_dst = router.dst[f];
        }
        int q = ok ? std::min(it.passenger_count, std::max(0, mincap)) : 0;
        if (q > 0) {
            Booking b{q, {}};
            for (int j = 0; j < n; ++j) {
                int f = leg_flight(it, j);
                led.take(f, it.legs[j].cabin, q);
                b.segments.push_back({f, it.legs[j].cabin});
            }
            out.itins[i].bookings.push_back(std::move(b));
        }
        if (q < it.passenger_count)
            pool.push_back({i, it.passenger_count - q,
                            (double)(it.passenger_count - q) * it.cancellation_cost});
    }

    // Pass 3: whatever is left travels on the best available path from the
    // origin, or stays grounded and is charged as cancelled.
    std::stable_sort(pool.begin(), pool.end(),
                     [](const Claim& a, const Claim& b) { return a.est > b.est; });
    for (const Claim& c : pool) {
        const Itinerary& it = pi.itineraries[c.itin];
        const int n = (int)it.legs.size();
        if (n == 0) continue;
        std::vector<Wave> waves{{c.count, router.org[leg_flight(it, 0)], ct, {}}};
        reroute_waves(c.itin, waves, ref_cabin(it), router.dst[leg_flight(it, n - 1)]);
    }

    out.normalize();
    return out;
}

double assignment_cost(const DisruptedState& st, const RecoverySchedule& s,
                       const PassengerAssignment& pa) {
    const ProblemInstance& pi = st.instance;
    const InstanceIndex& ix = st.index;
    double total = 0;
    for (int i = 0; i < (int)pi.itineraries.size() && i < (int)pa.itins.size(); ++i) {
        const Itinerary& it = pi.itineraries[i];
        const ItineraryAssignment& ia = pa.itins[i];
        if (it.legs.empty()) continue;
        int fl_last = ix.flight_of(it.legs.back().flight);
        const std::string& want = pi.flights[fl_last].destination;
        Minutes pub_arr = pi.flights[fl_last].sched_departure + pi.flights[fl_last].duration;
        int ref = rank(ref_cabin(it));
        for (const Booking& b : ia.bookings) {
            if (b.count <= 0) continue;
            bool complete = !b.segments.empty();
            for (const auto& sgm : b.segments)
                if (s.flights[sgm.flight].cancelled) complete = false;
            if (complete)
                complete = pi.flights[b.segments.back().flight].destination == want;
            if (!complete) {
                total += b.count * it.cancellation_cost;
                continue;
            }
            int last = b.segments.back().flight;
            Minutes arr = s.flights[last].departure + pi.flights[last].duration;
            Minutes delay = std::max<Minutes>(0, arr - pub_arr);
            // downgrade steps: against the original leg where the path still
            // follows it, against the best original class once it diverges
            int ptr = 0, downs = 0;
            for (const auto& sgm : b.segments) {
                int base = ref;
                if (ptr < (int)it.legs.size() && ix.flight_of(it.legs[ptr].flight) == sgm.flight) {
                    base = rank(it.legs[ptr].cabin);
                    ++ptr;
                }
                downs += std::max(0, base - rank(sgm.cabin));
            }
            total += b.count * (delay * it.delay_cost + downs * it.downgrade_cost);
        }
        total += ia.unassigned * it.cancellation_cost;
    }
    return total;
}

std::vector<std::string> check_assignment(const DisruptedState& st, const RecoverySchedule& s,
                                          const PassengerAssignment& pa) {
    const ProblemInstance& pi = st.instance;
    const InstanceIndex& ix = st.index;
    std::vector<std::string> out;
    if (pa.itins.size() != pi.itineraries.size()) {
        out.push_back("assignment covers " + std::to_string(pa.itins.size()) + " itineraries, instance has " +
                      std::to_string(pi.itineraries.size()));
        return out;
    }
    std::vector<SeatCapacity> load(pi.flights.size());
    for (int i = 0; i < (int)pi.itineraries.size(); ++i) {
        const Itinerary& it = pi.itineraries[i];
        const ItineraryAssignment& ia = pa.itins[i];
        int placed = 0;
        for (const Booking& b : ia.bookings) {
            if (b.count <= 0) {
                out.push_back(it.id + ": booking with nonpositive count");
                continue;
            }
            placed += b.count;
            if (b.segments.empty()) {
                out.push_back(it.id + ": empty booking path");
                continue;
            }
            Minutes prev_arr = 0;
            int prev_dst = -1;
            for (int k = 0; k < (int)b.segments.size(); ++k) {
                int f = b.segments[k].flight;
                if (f < 0 || f >= (int)pi.flights.size()) {
                    out.push_back(it.id + ": segment points at no flight");
                    break;
                }
                const FlightDisposition& d = s.flights[f];
                if (d.cancelled) out.push_back(it.id + ": booked on cancelled " + pi.flights[f].id);
                if (d.departure < pi.anchors.current_time) {
                    // only their own already-flown legs may sit in the past
                    bool own = k < (int)it.legs.size() && ix.flight_of(it.legs[k].flight) == f;
                    if (!own)
                        out.push_back(it.id + ": boards " + pi.flights[f].id + " which departed before current_time");
                }
                if (k > 0) {
                    int o = ix.airport_of(pi.flights[f].origin);
                    if (o != prev_dst)
                        out.push_back(it.id + ": connection breaks at " + pi.flights[f].id + " (wrong airport)");
                    else if (d.departure < prev_arr + pi.airports[o].min_transit)
                        out.push_back(it.id + ": connection onto " + pi.flights[f].id + " is too tight");
                }
                load[f][b.segments[k].cabin] += b.count;
                prev_arr = d.departure + pi.flights[f].duration;
                prev_dst = ix.airport_of(pi.flights[f].destination);
            }
        }
        if (ia.unassigned < 0) out.push_back(it.id + ": negative unassigned count");
        if (placed + ia.unassigned != it.passenger_count)
            out.push_back(it.id + ": headcount " + std::to_string(placed + ia.unassigned) + " of " +
                          std::to_string(it.passenger_count));
    }
    for (int f = 0; f < (int)pi.flights.size(); ++f)
        for (int c = 0; c < kCabinCount; ++c)
            if (load[f].seats[c] > pi.flights[f].seat_capacity.seats[c])
                out.push_back(pi.flights[f].id + ": cabin " + std::to_string(c) + " load " +
                              std::to_string(load[f].seats[c]) + " over capacity " +
                              std::to_string(pi.flights[f].seat_capacity.seats[c]));
    return out;
}

namespace {

// ---- mutation operators ----------------------------------------------------

// departure times flight f may legally take: the disrupted baseline, then
// grid steps at or after recovery_start up to the delay cap
std::vector<Minutes> allowed_times(const DisruptedState& st, int f, Minutes gran) {
    const Flight& fl = st.instance.flights[f];
    const TimeAnchors& an = st.instance.anchors;
    Minutes base = st.fs(f).departure;
    Minutes lim = std::min(fl.sched_departure + an.max_delay, an.recovery_finish);
    std::vector<Minutes> ts;
    for (Minutes t = base; t <= lim; t += gran)
        if (t == base || t >= an.recovery_start) ts.push_back(t);
    return ts;
}

std::vector<int> group_members(const DisruptedState& st, int f) {
    const Flight& fl = st.instance.flights[f];
    if (!fl.in_multileg()) return {f};
    return st.index.multileg.at(fl.multileg_group);
}

bool flight_mutable(const DisruptedState& st, int f) {
    const FlightState& fs = st.fs(f);
    return !fs.fixed_past && !fs.fixed_future && !fs.forced_cancel;
}

// Apply one random structural change.  The caller validates with the full
// schedule checker and resamples on rejection.
bool mutate(Rng& rng, const DisruptedState& st, RecoverySchedule& s,
            const std::vector<int>& pax_load, Minutes gran) {
    const ProblemInstance& pi = st.instance;
    std::vector<int> live, dead;
    for (int f = 0; f < (int)pi.flights.size(); ++f) {
        if (!flight_mutable(st, f)) continue;
        (s.flights[f].cancelled ? dead : live).push_back(f);
    }
    std::vector<int> ops;
    if (!live.empty()) ops.push_back(0);             // re-time
    if (live.size() >= 2) ops.push_back(1);          // aircraft tail swap
    if (live.size() >= 2) ops.push_back(2);          // crew tail swap
    if (!live.empty()) ops.push_back(3);             // cancel a light flight
    if (!dead.empty()) ops.push_back(4);             // restore a cancellation
    if (ops.empty()) return false;
    int op = rng.pick(ops);
    switch (op) {
    case 0: {
        int f = rng.pick(live);
        std::vector<Minutes> ts = allowed_times(st, f, gran);
        std::erase(ts, s.flights[f].departure);
        if (ts.empty()) return false;
        Minutes delta = rng.pick(ts) - s.flights[f].departure;
        for (int g : group_members(st, f))
            if (flight_mutable(st, g) && !s.flights[g].cancelled)
                s.flights[g].departure += delta;
        return true;
    }
    case 1:
    case 2: {
        // swap the remaining rotations of two resources that sit at the same
        // airport around the same time
        bool on_crew = op == 2;
        auto res = [&](int h) -> int& { return on_crew ? s.flights[h].crew : s.flights[h].aircraft; };
        int f = rng.pick(live);
        std::vector<int> partners;
        for (int g : live) {
            if (g == f || res(g) == res(f)) continue;
            if (pi.flights[g].origin != pi.flights[f].origin) continue;
            if (std::abs(s.flights[g].departure - s.flights[f].departure) > 360) continue;
            partners.push_back(g);
        }
        if (partners.empty()) return false;
        int g = rng.pick(partners);
        int ra = res(f), rb = res(g);
        Minutes tf = s.flights[f].departure, tg = s.flights[g].departure;
        for (int h : live) {
            int& r = res(h);
            if (r == ra && s.flights[h].departure >= tf) r = rb;
            else if (r == rb && s.flights[h].departure >= tg) r = ra;
        }
        return true;
    }
    case 3: {
        // prefer lightly loaded flights so the cancellation is cheap
        std::vector<int> by_load = live;
        std::stable_sort(by_load.begin(), by_load.end(),
                         [&](int a, int b) { return pax_load[a] < pax_load[b]; });
        int span = std::max<int>(1, (int)by_load.size() / 2);
        int f = by_load[rng.below(span)];
        for (int g : group_members(st, f))
            if (flight_mutable(st, g)) s.flights[g].cancelled = true;
        return true;
    }
    case 4: {
        int f = rng.pick(dead);
        int k = (int)rng.below(4);
        for (int g : group_members(st, f)) {
            if (!flight_mutable(st, g) || !s.flights[g].cancelled) continue;
            std::vector<Minutes> ts = allowed_times(st, g, gran);
            if (ts.empty()) return false;
            s.flights[g].cancelled = false;
            s.flights[g].departure = ts[std::min<int>(k, (int)ts.size() - 1)];
            s.flights[g].aircraft = (int)st.index.aircraft.at(pi.flights[g].original_aircraft);
            s.flights[g].crew = (int)st.index.crew.at(pi.flights[g].original_crew);
        }
        return true;
    }
    default: return false;
    }
}

struct Individual {
    RecoverySchedule sched;
    PassengerAssignment pax;
    double fit = 0;
    long seq = 0; // creation order, the deterministic tie-break
};

std::vector<int> flight_loads(const ProblemInstance& pi, const PassengerAssignment& pa) {
    std::vector<int> load(pi.flights.size(), 0);
    for (const auto& ia : pa.itins)
        for (const auto& b : ia.bookings)
            for (const auto& sgm : b.segments) load[sgm.flight] += b.count;
    return load;
}

// Run the worker over [0, n) slots; each slot writes only its own output, so
// the result is identical for any worker count.
template <typename Fn>
void parallel_slots(int n, int threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (int j = 0; j < n; ++j) fn(j);
        return;
    }
    std::atomic<int> next{0};
    auto drain = [&] {
        for (int j = next.fetch_add(1); j < n; j = next.fetch_add(1)) fn(j);
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < std::min(threads, n); ++t) pool.emplace_back(drain);
    drain();
    for (auto& th : pool) th.join();
}

} // namespace

PaxResult evolve(const DisruptedState& st, const RecoverySchedule& baseline,
                 const PaxParams& p) {
    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

    auto finish = [&](const Individual& best, int generations, std::vector<double> trace) {
        PaxResult r;
        r.schedule = best.sched;
        r.assignment = best.pax;
        r.schedule_cost = airs::schedule_cost(st, best.sched);
        r.passenger_cost = assignment_cost(st, best.sched, best.pax);
        r.total_cost = r.schedule_cost + r.passenger_cost;
        r.generations = generations;
        r.trace = std::move(trace);
        return r;
    };

    Individual base;
    base.sched = baseline;
    base.pax = assign_itineraries(st, baseline, p.max_transfers);
    base.fit = airs::schedule_cost(st, base.sched) + assignment_cost(st, base.sched, base.pax);
    std::vector<double> trace{base.fit};
    if (p.wall_seconds <= 0) return finish(base, 0, std::move(trace));

    const int threads = p.threads > 0 ? p.threads
                                      : std::max(1u, std::thread::hardware_concurrency());

    // one offspring: mutate until the checker accepts, else clone the parent
    auto make_child = [&](const Individual& par, Rng rng) {
        std::vector<int> load = flight_loads(st.instance, par.pax);
        for (int attempt = 0; attempt < p.mutation_attempts; ++attempt) {
            RecoverySchedule cand = par.sched;
            if (!mutate(rng, st, cand, load, p.granularity)) continue;
            if (!check_feasibility(st, cand).empty()) continue;
            Individual kid;
            kid.sched = std::move(cand);
            kid.pax = assign_itineraries(st, kid.sched, p.max_transfers);
            kid.fit = airs::schedule_cost(st, kid.sched) + assignment_cost(st, kid.sched, kid.pax);
            return kid;
        }
        return par;
    };

    std::vector<Individual> pop(std::max(1, p.population));
    pop[0] = base;
    parallel_slots((int)pop.size() - 1, threads, [&](int j) {
        pop[j + 1] = make_child(base, Rng::derive(p.seed, 0, j + 1));
    });
    long seq = 0;
    for (auto& ind : pop) ind.seq = seq++;
    auto by_fit = [](const Individual& a, const Individual& b) {
        if (a.fit != b.fit) return a.fit < b.fit;
        return a.seq < b.seq;
    };
    std::sort(pop.begin(), pop.end(), by_fit);

    int gen = 0;
    while (elapsed() < p.wall_seconds && pop[0].fit > 0) {
        ++gen;
        // linear rank selection, best rank weighted highest
        Rng sel = Rng::derive(p.seed, gen, 0);
        const int n = (int)pop.size();
        std::vector<int> parents(std::max(1, p.parents));
        for (int& pk : parents) {
            std::uint64_t r = sel.below((std::uint64_t)n * (n + 1) / 2);
            int i = 0;
            for (std::uint64_t acc = n; acc <= r; acc += n - i) ++i;
            pk = i;
        }
        std::vector<Individual> kids(parents.size());
        parallel_slots((int)parents.size(), threads, [&](int k) {
            kids[k] = make_child(pop[parents[k]], Rng::derive(p.seed, gen, k + 1));
        });
        for (auto& kid : kids) {
            kid.seq = seq++;
            pop.push_back(std::move(kid));
        }
        std::sort(pop.begin(), pop.end(), by_fit);
        if ((int)pop.size() > std::max(1, p.survivors)) pop.resize(std::max(1, p.survivors));
        trace.push_back(pop[0].fit);
    }
    return finish(pop[0], gen, std::move(trace));
}

} // namespace airs
