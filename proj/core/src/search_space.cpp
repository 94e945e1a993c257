#include "airs/search_space.hpp"

#include <algorithm>
#include <tuple>

namespace airs {

namespace {

int rank(OptionKind k) {
    switch (k) {
    case OptionKind::Scheduled: return 0;
    case OptionKind::SucceedingMaintenance: return 1;
    case OptionKind::FailingMaintenance: return 2;
    case OptionKind::Canceled: return 3;
    }
    return 4;
}

auto key(const OptionChoice& c) {
    return std::make_tuple(rank(c.kind), c.time, c.aircraft, c.crew, c.airport);
}

// Budgeted option sink with identity dedupe.  Mandatory adds always land.
struct Emitter {
    SearchSpace& sp;
    const DisruptedState& st;
    std::size_t cap;
    std::size_t added = 0;

    std::vector<OptionChoice>& group(const OptionChoice& c) {
        bool maint = c.kind == OptionKind::SucceedingMaintenance ||
                     c.kind == OptionKind::FailingMaintenance;
        return maint ? sp.maints[c.entity] : sp.flights[c.entity];
    }

    bool has(const OptionChoice& c) {
        auto& g = group(c);
        for (const auto& o : g)
            if (key(o) == key(c)) return true;
        return false;
    }

    bool add(OptionChoice c, bool mandatory = false) {
        if (has(c)) return false;
        if (!mandatory && sp.option_count() >= cap) return false;
        c.cost = option_cost(st, c);
        group(c).push_back(c);
        ++added;
        return true;
    }
};

Minutes ceil_to_grid(Minutes t, Minutes base, Minutes g) {
    if (t <= base) return base;
    return base + (t - base + g - 1) / g * g;
}

void sort_groups(SearchSpace& sp) {
    for (auto& g : sp.flights)
        std::sort(g.begin(), g.end(), [](const OptionChoice& a, const OptionChoice& b) {
            return key(a) < key(b);
        });
    for (auto& g : sp.maints)
        std::sort(g.begin(), g.end(), [](const OptionChoice& a, const OptionChoice& b) {
            return key(a) < key(b);
        });
}

struct SwapCandidate {
    int id = -1;       // partner aircraft or crew index
    Minutes ready = 0; // earliest presence at the flight's origin
};

// Partner aircraft that can plausibly stand at `origin` near `when`.
std::vector<SwapCandidate> aircraft_partners(const DisruptedState& st, int f, Minutes radius,
                                             int limit) {
    const ProblemInstance& pi = st.instance;
    const Flight& fl = pi.flights[f];
    int origin = st.index.airport_of(fl.origin);
    int self = st.index.aircraft.at(fl.original_aircraft);
    Minutes base = st.fs(f).departure;
    Minutes latest = std::min(fl.sched_departure + pi.anchors.max_delay,
                              pi.anchors.recovery_finish);
    std::vector<SwapCandidate> out;
    for (int a = 0; a < static_cast<int>(pi.aircraft.size()); ++a) {
        if (a == self) continue;
        Minutes best = kNoTime;
        if (st.aircraft_start[a].airport == origin)
            best = st.aircraft_start[a].ready;
        for (int g : st.index.aircraft_rotation[a]) {
            const FlightState& gs = st.fs(g);
            if (gs.forced_cancel) continue;
            if (pi.flights[g].destination != fl.origin) continue;
            Minutes t = gs.departure + pi.flights[g].duration +
                        pi.airports[origin].min_turnaround;
            if (best == kNoTime || t < best) best = t;
        }
        if (best == kNoTime) continue;
        if (best > latest) continue;
        if (best < base - radius) continue;
        out.push_back({a, best});
    }
    std::sort(out.begin(), out.end(), [&](const SwapCandidate& x, const SwapCandidate& y) {
        Minutes dx = x.ready > base ? x.ready - base : base - x.ready;
        Minutes dy = y.ready > base ? y.ready - base : base - y.ready;
        if (dx != dy) return dx < dy;
        return x.id < y.id;
    });
    if (static_cast<int>(out.size()) > limit) out.resize(limit);
    return out;
}

std::vector<SwapCandidate> crew_partners(const DisruptedState& st, int f, Minutes radius,
                                         int limit) {
    const ProblemInstance& pi = st.instance;
    const Flight& fl = pi.flights[f];
    int origin = st.index.airport_of(fl.origin);
    int self = st.index.crew.at(fl.original_crew);
    int ac = st.index.aircraft.at(fl.original_aircraft);
    Minutes base = st.fs(f).departure;
    Minutes mcc = pi.airports[origin].min_crew_connection;
    Minutes latest = std::min(fl.sched_departure + pi.anchors.max_delay,
                              pi.anchors.recovery_finish);
    std::vector<SwapCandidate> out;
    for (int c = 0; c < static_cast<int>(pi.crews.size()); ++c) {
        if (c == self) continue;
        Minutes best = kNoTime;
        if (st.crew_start[c].airport == origin)
            best = st.crew_start[c].ready +
                   (st.crew_start[c].aboard_aircraft == ac ? 0 : mcc);
        for (int g : st.index.crew_rotation[c]) {
            const FlightState& gs = st.fs(g);
            if (gs.forced_cancel) continue;
            if (pi.flights[g].destination != fl.origin) continue;
            Minutes t = gs.departure + pi.flights[g].duration + mcc;
            if (best == kNoTime || t < best) best = t;
        }
        if (best == kNoTime) continue;
        if (best > latest) continue;
        if (best < base - radius) continue;
        out.push_back({c, best});
    }
    std::sort(out.begin(), out.end(), [&](const SwapCandidate& x, const SwapCandidate& y) {
        Minutes dx = x.ready > base ? x.ready - base : base - x.ready;
        Minutes dy = y.ready > base ? y.ready - base : base - y.ready;
        if (dx != dy) return dx < dy;
        return x.id < y.id;
    });
    if (static_cast<int>(out.size()) > limit) out.resize(limit);
    return out;
}

// The whole multi-leg service a flight belongs to, or just the flight.
std::vector<int> service_legs(const DisruptedState& st, int f) {
    const Flight& fl = st.instance.flights[f];
    if (!fl.in_multileg()) return {f};
    return st.index.multileg.at(fl.multileg_group);
}

void emit_delay_grid(Emitter& em, int f, const SpaceParams& p) {
    const DisruptedState& st = em.st;
    const ProblemInstance& pi = st.instance;
    const FlightState& fs = st.fs(f);
    if (fs.fixed_past || fs.fixed_future || fs.forced_cancel) return;
    const Flight& fl = pi.flights[f];
    int ac = st.index.aircraft.at(fl.original_aircraft);
    int cr = st.index.crew.at(fl.original_crew);
    Minutes lim = std::min(fl.sched_departure + pi.anchors.max_delay,
                           pi.anchors.recovery_finish);
    Minutes start = ceil_to_grid(std::max(fs.departure + p.granularity,
                                          pi.anchors.recovery_start),
                                 fs.departure, p.granularity);
    for (Minutes t = start; t <= lim; t += p.granularity) {
        if (st.placement_blocked(f, t, ac)) continue;
        OptionChoice c;
        c.kind = OptionKind::Scheduled;
        c.entity = f;
        c.time = t;
        c.aircraft = ac;
        c.crew = cr;
        em.add(c);
    }
}

// Swap options keep every leg of a through service on the partner, shifted
// in lockstep so the transit spacing survives.
void emit_swaps(Emitter& em, int f, Minutes radius, int partners, const SpaceParams& p) {
    const DisruptedState& st = em.st;
    const ProblemInstance& pi = st.instance;
    if (st.fs(f).fixed_past || st.fs(f).fixed_future || st.fs(f).forced_cancel) return;
    std::vector<int> legs = service_legs(st, f);
    if (legs[0] != f) return; // emit once, from the lead leg
    Minutes base0 = st.fs(f).departure;

    auto emit_on_legs = [&](int aircraft, int crew, Minutes lead_time) {
        for (int leg : legs) {
            const Flight& lf = pi.flights[leg];
            const FlightState& ls = st.fs(leg);
            if (ls.fixed_past || ls.forced_cancel) return;
            Minutes t = std::max(ls.departure, lead_time + (ls.departure - base0));
            t = ceil_to_grid(t, ls.departure, p.granularity);
            Minutes lim = std::min(lf.sched_departure + pi.anchors.max_delay,
                                   pi.anchors.recovery_finish);
            if (t > lim) return;
            int ac = aircraft >= 0 ? aircraft : st.index.aircraft.at(lf.original_aircraft);
            int cr = crew >= 0 ? crew : st.index.crew.at(lf.original_crew);
            if (st.placement_blocked(leg, t, ac)) return;
            OptionChoice c;
            c.kind = OptionKind::Scheduled;
            c.entity = leg;
            c.time = t;
            c.aircraft = ac;
            c.crew = cr;
            em.add(c);
            if (t + p.granularity <= lim && !st.placement_blocked(leg, t + p.granularity, ac)) {
                c.time = t + p.granularity;
                em.add(c);
            }
        }
    };

    for (const SwapCandidate& cand : aircraft_partners(st, f, radius, partners))
        emit_on_legs(cand.id, -1, std::max(base0, cand.ready));
    for (const SwapCandidate& cand : crew_partners(st, f, radius, partners))
        emit_on_legs(-1, cand.id, std::max(base0, cand.ready));
}

// Candidate start times for one maintenance inside its allowed windows.
std::vector<OptionChoice> maint_candidates(const DisruptedState& st, int m, int extra_per_window) {
    const ProblemInstance& pi = st.instance;
    const Maintenance& mx = pi.maintenances[m];
    int a = st.index.aircraft.at(mx.aircraft);
    std::vector<OptionChoice> out;
    auto push = [&](int airport, Minutes t) {
        OptionChoice c;
        c.kind = OptionKind::SucceedingMaintenance;
        c.entity = m;
        c.airport = airport;
        c.time = t;
        out.push_back(c);
    };
    for (const MaintenanceWindow& w : mx.allowed_windows) {
        int ap = st.index.airport_of(w.airport);
        push(ap, w.earliest_start);
        if (st.aircraft_start[a].airport == ap) {
            Minutes t = std::max(st.aircraft_start[a].ready, w.earliest_start);
            if (t <= w.latest_start) push(ap, t);
        }
        for (int g : st.index.aircraft_rotation[a]) {
            const FlightState& gs = st.fs(g);
            if (gs.forced_cancel) continue;
            if (pi.flights[g].destination != w.airport) continue;
            Minutes t = gs.departure + pi.flights[g].duration + pi.airports[ap].min_turnaround;
            t = std::max(t, w.earliest_start);
            if (t <= w.latest_start) push(ap, t);
        }
        for (int j = 1; j <= extra_per_window; ++j) {
            Minutes t = w.earliest_start +
                        (w.latest_start - w.earliest_start) * j / (extra_per_window + 1);
            push(ap, t);
        }
    }
    std::sort(out.begin(), out.end(), [](const OptionChoice& x, const OptionChoice& y) {
        return key(x) < key(y);
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const OptionChoice& x, const OptionChoice& y) {
                              return key(x) == key(y);
                          }),
              out.end());
    return out;
}

void emit_mandatory(Emitter& em) {
    const DisruptedState& st = em.st;
    const ProblemInstance& pi = st.instance;
    for (int f = 0; f < static_cast<int>(pi.flights.size()); ++f) {
        const FlightState& fs = st.fs(f);
        if (fs.fixed_past) continue;
        OptionChoice cancel;
        cancel.kind = OptionKind::Canceled;
        cancel.entity = f;
        em.add(cancel, true);
        if (fs.forced_cancel) continue;
        int ac = st.index.aircraft.at(pi.flights[f].original_aircraft);
        if (!st.placement_blocked(f, fs.departure, ac)) {
            OptionChoice plan;
            plan.kind = OptionKind::Scheduled;
            plan.entity = f;
            plan.time = fs.departure;
            plan.aircraft = ac;
            plan.crew = st.index.crew.at(pi.flights[f].original_crew);
            em.add(plan, true);
        }
    }
    for (int m = 0; m < static_cast<int>(pi.maintenances.size()); ++m) {
        OptionChoice fail;
        fail.kind = OptionKind::FailingMaintenance;
        fail.entity = m;
        em.add(fail, true);
        auto cands = maint_candidates(st, m, 0);
        if (!cands.empty()) em.add(cands.front(), true);
    }
}

} // namespace

const char* option_kind_name(OptionKind k) {
    switch (k) {
    case OptionKind::Scheduled: return "scheduled";
    case OptionKind::Canceled: return "canceled";
    case OptionKind::SucceedingMaintenance: return "succeeding-maintenance";
    case OptionKind::FailingMaintenance: return "failing-maintenance";
    }
    return "?";
}

double option_cost(const DisruptedState& st, const OptionChoice& c) {
    const ProblemInstance& pi = st.instance;
    switch (c.kind) {
    case OptionKind::Scheduled:
        return static_cast<double>(c.time - pi.flights[c.entity].sched_departure) *
               pi.cost.delay_per_minute;
    case OptionKind::Canceled:
        return st.fs(c.entity).forced_cancel ? 0.0 : pi.cost.cancellation_per_flight;
    case OptionKind::SucceedingMaintenance:
        return 0.0;
    case OptionKind::FailingMaintenance:
        return pi.maintenances[c.entity].fail_penalty;
    }
    return 0.0;
}

int default_budget(const DisruptedState& st) {
    int in_model = 0, disrupted = 0;
    for (const FlightState& fs : st.flights) {
        if (!fs.fixed_past) ++in_model;
        if (fs.disrupted && !fs.fixed_past) ++disrupted;
    }
    int m = static_cast<int>(st.instance.maintenances.size());
    return std::max(96, 4 * in_model + 24 * disrupted + 12 * m);
}

SearchSpace build_initial_space(const DisruptedState& st, const SpaceParams& p) {
    SearchSpace sp;
    sp.flights.resize(st.instance.flights.size());
    sp.maints.resize(st.instance.maintenances.size());
    sp.iteration = 1;

    Emitter em{sp, st, static_cast<std::size_t>(p.budget > 0 ? p.budget : default_budget(st))};
    emit_mandatory(em);

    for (int f = 0; f < static_cast<int>(st.flights.size()); ++f)
        if (st.fs(f).disrupted) emit_delay_grid(em, f, p);
    for (int f = 0; f < static_cast<int>(st.flights.size()); ++f)
        if (st.fs(f).disrupted) emit_swaps(em, f, p.swap_radius, p.max_swap_partners, p);
    for (int m = 0; m < static_cast<int>(sp.maints.size()); ++m)
        for (const OptionChoice& c : maint_candidates(st, m, 0)) {
            if (static_cast<int>(sp.maints[m].size()) >= p.maint_places + 1) break;
            em.add(c);
        }

    sort_groups(sp);
    return sp;
}

bool expand_space(SearchSpace& sp, const DisruptedState& st, const SolutionFeedback& fb,
                  const SpaceParams& p) {
    std::size_t extra = std::max<std::size_t>(
        32, static_cast<std::size_t>((p.budget > 0 ? p.budget : default_budget(st)) / 4));
    Emitter em{sp, st, sp.option_count() + extra};
    int scale = sp.iteration + 1;
    Minutes radius = p.swap_radius * scale;
    int partners = p.max_swap_partners + 2 * scale;

    for (int f : fb.cancelled_flights) {
        emit_delay_grid(em, f, p);
        emit_swaps(em, f, radius, partners, p);
    }
    for (int f : fb.heavily_delayed) {
        emit_delay_grid(em, f, p);
        emit_swaps(em, f, radius, partners, p);
    }
    for (int m : fb.failed_maintenances)
        for (const OptionChoice& c : maint_candidates(st, m, p.maint_places * scale)) {
            if (static_cast<int>(sp.maints[m].size()) >= p.maint_places * (scale + 1)) break;
            em.add(c);
        }

    sp.iteration += 1;
    if (em.added > 0) sort_groups(sp);
    return em.added > 0;
}

} // namespace airs
