#include "airs/tsn.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace airs {

namespace {

constexpr int kOwnerAircraft = 0;
constexpr int kOwnerCrew = 1;
constexpr int kOwnerVoid = 2;

struct Builder {
    const SearchSpace& sp;
    const DisruptedState& st;
    TimeSpaceNetwork out;

    std::map<std::tuple<int, int, int, int, int>, int> pos_ix;
    std::map<std::pair<int, Minutes>, int> node_ix;
    std::map<std::tuple<int, int, int>, int> conn_ix; // (kind, from, to) -> arc
    int void_node = -1;

    // in-model legs form a contiguous suffix of each multi-leg group; these
    // give the neighbouring in-model leg or -1
    std::vector<int> prev_leg, next_leg, group_ord;

    explicit Builder(const SearchSpace& s, const DisruptedState& d) : sp(s), st(d) {}

    int position(int okind, int owner, PlaceKind place, int a, int b) {
        auto key = std::make_tuple(okind, owner, (int)place, a, b);
        auto it = pos_ix.find(key);
        if (it != pos_ix.end()) return it->second;
        int id = (int)out.positions.size();
        out.positions.push_back({okind, owner, place, a, b});
        pos_ix.emplace(key, id);
        return id;
    }

    int node(int pos, Minutes t) {
        auto key = std::make_pair(pos, t);
        auto it = node_ix.find(key);
        if (it != node_ix.end()) return it->second;
        int id = (int)out.nodes.size();
        out.nodes.push_back({pos, t, out.positions[pos].place == PlaceKind::Transit, id});
        node_ix.emplace(key, id);
        return id;
    }

    int make_var(VarKind k, bool maint, int entity, int ordinal, int arc) {
        out.vars.push_back({k, maint, entity, ordinal, arc});
        return (int)out.vars.size() - 1;
    }

    int arc(ArcKind k, int from, int to, int var, int entity, int ordinal) {
        out.arcs.push_back({k, from, to, var, entity, ordinal});
        return (int)out.arcs.size() - 1;
    }

    // embark/disembark arcs collapse when several options need the same hop
    int connector(ArcKind k, int from, int to) {
        auto key = std::make_tuple((int)k, from, to);
        auto it = conn_ix.find(key);
        if (it != conn_ix.end()) return it->second;
        int id = arc(k, from, to, -1, -1, -1);
        int v = make_var(k == ArcKind::Embark ? VarKind::Embark : VarKind::Disembark, false, -1, -1, id);
        out.arcs[id].var = v;
        conn_ix.emplace(key, id);
        return id;
    }

    void map_multilegs() {
        const auto& ix = st.index;
        int nf = (int)st.instance.flights.size();
        prev_leg.assign(nf, -1);
        next_leg.assign(nf, -1);
        group_ord.assign(nf, -1);
        std::vector<std::string> gids;
        for (const auto& [gid, legs] : ix.multileg) gids.push_back(gid);
        std::sort(gids.begin(), gids.end());
        for (const std::string& gid : gids) {
            std::vector<int> live;
            for (int f : ix.multileg.at(gid))
                if (!sp.flights[f].empty()) live.push_back(f);
            if (live.size() < 2) continue; // a lone in-model leg needs no sub-thread
            int ord = (int)out.multileg_ids.size();
            out.multileg_ids.push_back(gid);
            for (std::size_t i = 0; i < live.size(); ++i) {
                group_ord[live[i]] = ord;
                if (i > 0) prev_leg[live[i]] = live[i - 1];
                if (i + 1 < live.size()) next_leg[live[i]] = live[i + 1];
            }
        }
    }

    void emit_flight_option(int f, int k) {
        const OptionChoice& o = sp.flights[f][k];
        OptionBinding& bind = out.flight_bind[f][k];
        if (o.kind == OptionKind::Canceled) {
            bind.var = make_var(VarKind::Option, false, f, k, -1);
            return;
        }
        const Flight& fl = st.instance.flights[f];
        int orig = st.index.airport_of(fl.origin);
        int dest = st.index.airport_of(fl.destination);
        const Airport& dap = st.instance.airports[dest];
        Minutes dep = o.time;
        Minutes arr = dep + fl.duration;
        int ac = o.aircraft;
        int cw = o.crew;
        int v = make_var(VarKind::Option, false, f, k, -1);
        bind.var = v;

        int a_from = prev_leg[f] >= 0
                         ? node(position(kOwnerAircraft, ac, PlaceKind::Transit, group_ord[f], prev_leg[f]), dep)
                         : node(position(kOwnerAircraft, ac, PlaceKind::Airport, orig, -1), dep);
        int a_to = next_leg[f] >= 0
                       ? node(position(kOwnerAircraft, ac, PlaceKind::Transit, group_ord[f], f),
                              arr + dap.min_transit)
                       : node(position(kOwnerAircraft, ac, PlaceKind::Airport, dest, -1),
                              arr + dap.min_turnaround);
        bind.aircraft_arc = arc(ArcKind::Flight, a_from, a_to, v, f, k);

        int c_from = prev_leg[f] >= 0
                         ? node(position(kOwnerCrew, cw, PlaceKind::Transit, group_ord[f], prev_leg[f]), dep)
                         : node(position(kOwnerCrew, cw, PlaceKind::Aboard, ac, orig), dep);
        int c_to = next_leg[f] >= 0
                       ? node(position(kOwnerCrew, cw, PlaceKind::Transit, group_ord[f], f), arr)
                       : node(position(kOwnerCrew, cw, PlaceKind::Aboard, ac, dest), arr);
        bind.crew_arc = arc(ArcKind::CrewFlight, c_from, c_to, v, f, k);

        if (prev_leg[f] < 0) {
            Minutes mcc = st.instance.airports[orig].min_crew_connection;
            int g = node(position(kOwnerCrew, cw, PlaceKind::Ground, orig, -1), dep - mcc);
            connector(ArcKind::Embark, g, c_from);
        }
        if (next_leg[f] < 0) {
            int g = node(position(kOwnerCrew, cw, PlaceKind::Ground, dest, -1), arr);
            connector(ArcKind::Disembark, c_to, g);
        }
    }

    void emit_maint_option(int m, int k, std::vector<std::pair<int, int>>& failing) {
        const OptionChoice& o = sp.maints[m][k];
        OptionBinding& bind = out.maint_bind[m][k];
        if (o.kind == OptionKind::FailingMaintenance) {
            failing.emplace_back(m, k); // sinks need the finished node set
            return;
        }
        int a = st.index.aircraft.at(st.instance.maintenances[m].aircraft);
        int p = position(kOwnerAircraft, a, PlaceKind::Airport, o.airport, -1);
        Minutes d = st.instance.maintenances[m].duration;
        int v = make_var(VarKind::Option, true, m, k, -1);
        bind.var = v;
        bind.aircraft_arc = arc(ArcKind::Maintenance, node(p, o.time), node(p, o.time + d), v, m, k);
    }

    void emit_inputs() {
        out.input_node_aircraft.assign(st.instance.aircraft.size(), -1);
        out.input_node_crew.assign(st.instance.crews.size(), -1);
        for (int a = 0; a < (int)st.instance.aircraft.size(); ++a) {
            const ResourceStart& rs = st.aircraft_start[a];
            int n = node(position(kOwnerAircraft, a, PlaceKind::Airport, rs.airport, -1), rs.ready);
            arc(ArcKind::Input, void_node, n, -1, -1, -1);
            out.input_node_aircraft[a] = n;
        }
        for (int c = 0; c < (int)st.instance.crews.size(); ++c) {
            const ResourceStart& rs = st.crew_start[c];
            int n;
            if (rs.aboard_aircraft >= 0) {
                n = node(position(kOwnerCrew, c, PlaceKind::Aboard, rs.aboard_aircraft, rs.airport), rs.ready);
                int g = node(position(kOwnerCrew, c, PlaceKind::Ground, rs.airport, -1), rs.ready);
                connector(ArcKind::Disembark, n, g);
            } else {
                n = node(position(kOwnerCrew, c, PlaceKind::Ground, rs.airport, -1), rs.ready);
            }
            arc(ArcKind::Input, void_node, n, -1, -1, -1);
            out.input_node_crew[c] = n;
        }
    }

    void emit_sinks(const std::vector<std::pair<int, int>>& failing) {
        for (auto [m, k] : failing) {
            int a = st.index.aircraft.at(st.instance.maintenances[m].aircraft);
            Minutes deadline = 0;
            for (const auto& w : st.instance.maintenances[m].allowed_windows)
                deadline = std::max(deadline, w.latest_start);
            std::vector<int> from;
            for (int n = 0; n < (int)out.nodes.size(); ++n) {
                const Position& p = out.positions[out.nodes[n].position];
                if (p.owner_kind == kOwnerAircraft && p.owner == a &&
                    p.place == PlaceKind::Airport && out.nodes[n].time <= deadline)
                    from.push_back(n);
            }
            if (from.empty()) from.push_back(out.input_node_aircraft[a]);
            std::sort(from.begin(), from.end(), [this](int x, int y) {
                if (out.nodes[x].time != out.nodes[y].time) return out.nodes[x].time < out.nodes[y].time;
                return x < y;
            });
            OptionBinding& bind = out.maint_bind[m][k];
            for (int n : from) {
                int id = arc(ArcKind::Sink, n, void_node, -1, m, k);
                out.arcs[id].var = make_var(VarKind::Sink, true, m, k, id);
                bind.sink_arcs.push_back(id);
            }
        }
    }

    void ground_pass() {
        std::vector<std::vector<int>> by_pos(out.positions.size());
        for (int n = 0; n < (int)out.nodes.size(); ++n)
            if (n != void_node) by_pos[out.nodes[n].position].push_back(n);
        out.ground_next.assign(out.nodes.size(), -1);
        for (auto& chain : by_pos) {
            std::sort(chain.begin(), chain.end(), [this](int x, int y) {
                if (out.nodes[x].time != out.nodes[y].time) return out.nodes[x].time < out.nodes[y].time;
                return out.nodes[x].serial < out.nodes[y].serial;
            });
            for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
                int id = arc(ArcKind::Ground, chain[i], chain[i + 1], -1, -1, -1);
                out.arcs[id].var = make_var(VarKind::Ground, false, -1, -1, id);
                out.ground_next[chain[i]] = id;
            }
        }
    }

    void slot_pass() {
        for (int si = 0; si < (int)st.slots.size(); ++si) {
            const Slot& sl = st.slots[si];
            Interval w{sl.window_start, sl.window_end};
            int flown = 0;
            for (int f = 0; f < (int)st.instance.flights.size(); ++f)
                if (st.flights[f].fixed_past && !st.flights[f].forced_cancel &&
                    st.instance.flights[f].origin == sl.airport && w.contains(st.flights[f].departure))
                    ++flown;
            SlotChoice sc;
            sc.slot = si;
            sc.capacity = std::max(0, sl.capacity - flown);
            sc.penalty = sl.nonuse_penalty;
            for (int f = 0; f < (int)sp.flights.size(); ++f) {
                if (st.instance.flights[f].origin != sl.airport) continue;
                for (int k = 0; k < (int)sp.flights[f].size(); ++k)
                    if (sp.flights[f][k].kind == OptionKind::Scheduled && w.contains(sp.flights[f][k].time))
                        sc.members.emplace_back(f, k);
            }
            out.slot_choices.push_back(std::move(sc));
        }
    }

    TimeSpaceNetwork build() {
        int vp = position(kOwnerVoid, -1, PlaceKind::Void, -1, -1);
        void_node = node(vp, 0);
        map_multilegs();
        out.flight_bind.resize(sp.flights.size());
        for (std::size_t f = 0; f < sp.flights.size(); ++f) out.flight_bind[f].resize(sp.flights[f].size());
        out.maint_bind.resize(sp.maints.size());
        for (std::size_t m = 0; m < sp.maints.size(); ++m) out.maint_bind[m].resize(sp.maints[m].size());

        std::vector<std::pair<int, int>> failing;
        for (int f = 0; f < (int)sp.flights.size(); ++f)
            for (int k = 0; k < (int)sp.flights[f].size(); ++k) emit_flight_option(f, k);
        for (int m = 0; m < (int)sp.maints.size(); ++m)
            for (int k = 0; k < (int)sp.maints[m].size(); ++k) emit_maint_option(m, k, failing);
        emit_inputs();
        emit_sinks(failing);
        ground_pass();
        slot_pass();
        return std::move(out);
    }
};

} // namespace

TimeSpaceNetwork build_tsn(const SearchSpace& sp, const DisruptedState& st) {
    return Builder(sp, st).build();
}

std::vector<std::string> validate_tsn(const TimeSpaceNetwork& tsn, const SearchSpace& sp,
                                      const DisruptedState& st) {
    std::vector<std::string> bad;
    auto flag = [&bad](std::string s) { bad.push_back(std::move(s)); };

    // strict balance only inside sub-threads
    for (const TsnNode& n : tsn.nodes)
        if (n.strict != (tsn.positions[n.position].place == PlaceKind::Transit))
            flag("strict flag does not match sub-thread membership");

    // every Scheduled variable must sit on exactly one aircraft and one crew arc
    std::vector<int> on_flight(tsn.vars.size(), 0), on_crew(tsn.vars.size(), 0);
    for (const TsnArc& a : tsn.arcs) {
        if (a.kind == ArcKind::Flight && a.var >= 0) ++on_flight[a.var];
        if (a.kind == ArcKind::CrewFlight && a.var >= 0) ++on_crew[a.var];
    }
    for (int f = 0; f < (int)sp.flights.size(); ++f)
        for (int k = 0; k < (int)sp.flights[f].size(); ++k) {
            const OptionChoice& o = sp.flights[f][k];
            const OptionBinding& b = tsn.flight_bind[f][k];
            if (b.var < 0) {
                flag("flight option without a variable");
                continue;
            }
            int want = o.kind == OptionKind::Scheduled ? 1 : 0;
            if (on_flight[b.var] != want || on_crew[b.var] != want)
                flag("option variable is not shared by exactly the right arc pair: " +
                     st.instance.flights[f].id);
        }

    // embark consumes connection time, disembark is instantaneous
    for (const TsnArc& a : tsn.arcs) {
        if (a.kind == ArcKind::Embark && tsn.nodes[a.from].time >= tsn.nodes[a.to].time)
            flag("embark arc without a positive connection time");
        if (a.kind == ArcKind::Disembark && tsn.nodes[a.from].time != tsn.nodes[a.to].time)
            flag("disembark arc is not vertical");
        if (a.kind == ArcKind::Ground && tsn.nodes[a.from].time > tsn.nodes[a.to].time)
            flag("ground arc runs backwards");
    }

    // ground arcs chain k nodes with exactly k-1 links per position
    std::map<int, int> nodes_per_pos, grounds_per_pos;
    for (const TsnNode& n : tsn.nodes)
        if (tsn.positions[n.position].place != PlaceKind::Void) ++nodes_per_pos[n.position];
    for (const TsnArc& a : tsn.arcs)
        if (a.kind == ArcKind::Ground) ++grounds_per_pos[tsn.nodes[a.from].position];
    for (const auto& [p, cnt] : nodes_per_pos)
        if (grounds_per_pos[p] != cnt - 1) flag("ground chain is not a simple path");

    // every subnetwork enters through an input arc
    for (int n : tsn.input_node_aircraft)
        if (n < 0) flag("aircraft without an input arc");
    for (int n : tsn.input_node_crew)
        if (n < 0) flag("crew without an input arc");

    std::size_t resources = st.instance.aircraft.size() + st.instance.crews.size();
    if (tsn.arcs.size() > 4 * sp.option_count() + 2 * tsn.nodes.size() + resources)
        flag("arc count exceeds the linear size bound");

    return bad;
}

namespace {

// walks one unit along its position chain, switching ground arcs on
bool ground_advance(const TimeSpaceNetwork& tsn, std::vector<double>& vals, int& cur, int target,
                    std::string& why) {
    if (cur == target) return true;
    if (tsn.nodes[cur].position != tsn.nodes[target].position) {
        why = "resource is in the wrong place";
        return false;
    }
    if (tsn.nodes[cur].time > tsn.nodes[target].time) {
        why = "connection time runs out before the departure";
        return false;
    }
    while (cur != target) {
        int g = tsn.ground_next[cur];
        if (g < 0) {
            why = "ground chain ends before the departure node";
            return false;
        }
        vals[tsn.arcs[g].var] = 1.0;
        cur = tsn.arcs[g].to;
    }
    return true;
}

} // namespace

RoutedFlows route_flows(const TimeSpaceNetwork& tsn, const SearchSpace& sp,
                        const DisruptedState& st, const Selection& sel) {
    RoutedFlows r;
    r.values.assign(tsn.vars.size(), 0.0);
    auto fail = [&r](std::string why) {
        r.feasible = false;
        r.reason = std::move(why);
    };

    int na = (int)st.instance.aircraft.size();
    int nc = (int)st.instance.crews.size();
    std::vector<std::vector<int>> ac_arcs(na), cw_arcs(nc);
    std::vector<std::pair<int, int>> ac_fail(na, {-1, -1});

    for (int f = 0; f < (int)sp.flights.size(); ++f) {
        if (sp.flights[f].empty()) continue;
        int k = f < (int)sel.flight_opt.size() ? sel.flight_opt[f] : -1;
        if (k < 0 || k >= (int)sp.flights[f].size()) {
            fail("missing choice for " + st.instance.flights[f].id);
            return r;
        }
        const OptionChoice& o = sp.flights[f][k];
        const OptionBinding& b = tsn.flight_bind[f][k];
        r.values[b.var] = 1.0;
        if (o.kind != OptionKind::Scheduled) continue;
        ac_arcs[o.aircraft].push_back(b.aircraft_arc);
        cw_arcs[o.crew].push_back(b.crew_arc);
    }
    for (int m = 0; m < (int)sp.maints.size(); ++m) {
        if (sp.maints[m].empty()) continue;
        int k = m < (int)sel.maint_opt.size() ? sel.maint_opt[m] : -1;
        if (k < 0 || k >= (int)sp.maints[m].size()) {
            fail("missing choice for " + st.instance.maintenances[m].id);
            return r;
        }
        int a = st.index.aircraft.at(st.instance.maintenances[m].aircraft);
        if (sp.maints[m][k].kind == OptionKind::SucceedingMaintenance) {
            r.values[tsn.maint_bind[m][k].var] = 1.0;
            ac_arcs[a].push_back(tsn.maint_bind[m][k].aircraft_arc);
        } else {
            if (ac_fail[a].first >= 0) {
                fail("two skipped maintenances cannot both idle " + st.instance.aircraft[a].id);
                return r;
            }
            ac_fail[a] = {m, k};
        }
    }

    auto by_tail = [&tsn](std::vector<int>& arcs) {
        std::sort(arcs.begin(), arcs.end(), [&tsn](int x, int y) {
            Minutes tx = tsn.nodes[tsn.arcs[x].from].time, ty = tsn.nodes[tsn.arcs[y].from].time;
            if (tx != ty) return tx < ty;
            return x < y;
        });
    };

    std::string why;
    for (int a = 0; a < na; ++a) {
        by_tail(ac_arcs[a]);
        int cur = tsn.input_node_aircraft[a];
        for (int id : ac_arcs[a]) {
            if (!ground_advance(tsn, r.values, cur, tsn.arcs[id].from, why)) {
                fail(st.instance.aircraft[a].id + ": " + why);
                return r;
            }
            cur = tsn.arcs[id].to;
        }
        if (tsn.positions[tsn.nodes[cur].position].place == PlaceKind::Transit) {
            fail(st.instance.aircraft[a].id + " stops inside a multi-leg service");
            return r;
        }
        if (ac_fail[a].first >= 0) {
            auto [m, k] = ac_fail[a];
            const OptionBinding& b = tsn.maint_bind[m][k];
            std::map<int, int> sink_at; // from-node -> sink arc
            for (int s : b.sink_arcs) sink_at.emplace(tsn.arcs[s].from, s);
            int found = -1;
            for (int n = cur; n >= 0;) {
                auto it = sink_at.find(n);
                if (it != sink_at.end()) {
                    found = it->second;
                    break;
                }
                int g = tsn.ground_next[n];
                n = g < 0 ? -1 : tsn.arcs[g].to;
            }
            if (found < 0) {
                fail(st.instance.aircraft[a].id +
                     " is still in use past the deadline of a skipped maintenance");
                return r;
            }
            if (!ground_advance(tsn, r.values, cur, tsn.arcs[found].from, why)) {
                fail(st.instance.aircraft[a].id + ": " + why);
                return r;
            }
            r.values[tsn.arcs[found].var] = 1.0;
        }
    }

    std::map<int, int> disembark_from, embark_to;
    for (int i = 0; i < (int)tsn.arcs.size(); ++i) {
        if (tsn.arcs[i].kind == ArcKind::Disembark) disembark_from.emplace(tsn.arcs[i].from, i);
        if (tsn.arcs[i].kind == ArcKind::Embark) embark_to.emplace(tsn.arcs[i].to, i);
    }

    for (int c = 0; c < nc; ++c) {
        by_tail(cw_arcs[c]);
        int cur = tsn.input_node_crew[c];
        for (int id : cw_arcs[c]) {
            int F = tsn.arcs[id].from;
            if (tsn.nodes[cur].position != tsn.nodes[F].position) {
                const Position& fp = tsn.positions[tsn.nodes[F].position];
                if (fp.place != PlaceKind::Aboard) {
                    fail(st.instance.crews[c].id + " enters a multi-leg service sideways");
                    return r;
                }
                if (tsn.positions[tsn.nodes[cur].position].place == PlaceKind::Aboard) {
                    auto it = disembark_from.find(cur);
                    if (it == disembark_from.end()) {
                        fail(st.instance.crews[c].id + " has no disembark at its arrival node");
                        return r;
                    }
                    r.values[tsn.arcs[it->second].var] = 1.0;
                    cur = tsn.arcs[it->second].to;
                }
                auto em = embark_to.find(F);
                if (em == embark_to.end()) {
                    fail(st.instance.crews[c].id + " has no embark arc for its next flight");
                    return r;
                }
                if (!ground_advance(tsn, r.values, cur, tsn.arcs[em->second].from, why)) {
                    fail(st.instance.crews[c].id + ": " + why);
                    return r;
                }
                r.values[tsn.arcs[em->second].var] = 1.0;
                cur = F;
            } else if (!ground_advance(tsn, r.values, cur, F, why)) {
                fail(st.instance.crews[c].id + ": " + why);
                return r;
            }
            cur = tsn.arcs[id].to;
        }
        if (tsn.positions[tsn.nodes[cur].position].place == PlaceKind::Transit) {
            fail(st.instance.crews[c].id + " stops inside a multi-leg service");
            return r;
        }
    }

    r.feasible = true;
    return r;
}

bool selection_from_values(const TimeSpaceNetwork& tsn, const SearchSpace& sp,
                           const std::vector<double>& values, Selection& out) {
    const double tol = 1e-6;
    auto integral = [&](double v) { return v < tol || v > 1.0 - tol; };
    auto is_one = [&](double v) { return v > 1.0 - tol; };

    out.flight_opt.assign(sp.flights.size(), -1);
    out.maint_opt.assign(sp.maints.size(), -1);
    for (int f = 0; f < (int)sp.flights.size(); ++f) {
        int chosen = -1;
        for (int k = 0; k < (int)sp.flights[f].size(); ++k) {
            double v = values[tsn.flight_bind[f][k].var];
            if (!integral(v)) return false;
            if (is_one(v)) {
                if (chosen >= 0) return false;
                chosen = k;
            }
        }
        if (!sp.flights[f].empty() && chosen < 0) return false;
        out.flight_opt[f] = chosen;
    }
    for (int m = 0; m < (int)sp.maints.size(); ++m) {
        int chosen = -1;
        for (int k = 0; k < (int)sp.maints[m].size(); ++k) {
            const OptionBinding& b = tsn.maint_bind[m][k];
            double v = 0;
            if (b.var >= 0) {
                v = values[b.var];
                if (!integral(v)) return false;
            } else {
                for (int s : b.sink_arcs) {
                    double sv = values[tsn.arcs[s].var];
                    if (!integral(sv)) return false;
                    v += sv;
                }
            }
            if (is_one(v)) {
                if (chosen >= 0) return false;
                chosen = k;
            }
        }
        if (!sp.maints[m].empty() && chosen < 0) return false;
        out.maint_opt[m] = chosen;
    }
    return true;
}

RecoverySchedule schedule_from_selection(const DisruptedState& st, const SearchSpace& sp,
                                         const Selection& sel) {
    RecoverySchedule s = baseline_schedule(st);
    for (int f = 0; f < (int)sp.flights.size(); ++f) {
        if (sp.flights[f].empty()) continue;
        int k = sel.flight_opt[f];
        if (k < 0) continue;
        const OptionChoice& o = sp.flights[f][k];
        if (o.kind == OptionKind::Canceled) {
            s.flights[f].cancelled = true;
        } else {
            s.flights[f].cancelled = false;
            s.flights[f].departure = o.time;
            s.flights[f].aircraft = o.aircraft;
            s.flights[f].crew = o.crew;
        }
    }
    for (int m = 0; m < (int)sp.maints.size(); ++m) {
        if (sp.maints[m].empty()) continue;
        int k = sel.maint_opt[m];
        if (k < 0) continue;
        const OptionChoice& o = sp.maints[m][k];
        if (o.kind == OptionKind::SucceedingMaintenance) {
            s.maints[m].performed = true;
            s.maints[m].airport = o.airport;
            s.maints[m].start = o.time;
        } else {
            s.maints[m].performed = false;
        }
    }
    return s;
}

} // namespace airs
