#include <airs/milp.hpp>

#include <cctype>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace airs {

const char* constraint_tag_name(ConstraintTag t) {
    switch (t) {
        case ConstraintTag::FlowBalance: return "flow-balance";
        case ConstraintTag::UniqueDecision: return "unique-decision";
        case ConstraintTag::SlotCapacity: return "slot-capacity";
        case ConstraintTag::CrewDuty: return "crew-duty";
    }
    return "?";
}

namespace {

std::string clean(const std::string& id) {
    std::string r;
    for (char c : id) r.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    return r;
}

std::string num(double v) {
    double r = std::round(v);
    if (std::fabs(v - r) < 1e-9 && std::fabs(r) < 9e15) return std::to_string((long long)r);
    std::ostringstream o;
    o.precision(17);
    o << v;
    return o.str();
}

} // namespace

MilpModel encode(const TimeSpaceNetwork& tsn, const SearchSpace& sp, const DisruptedState& st) {
    const ProblemInstance& pi = st.instance;
    MilpModel m;
    m.decision_count = (int)tsn.vars.size();
    m.vars.resize(tsn.vars.size());
    for (int v = 0; v < (int)tsn.vars.size(); ++v) {
        const VarInfo& vi = tsn.vars[v];
        MilpVar& mv = m.vars[v];
        switch (vi.kind) {
            case VarKind::Option:
                mv.name = "x_" +
                          clean(vi.maint ? pi.maintenances[vi.entity].id : pi.flights[vi.entity].id) +
                          "_" + std::to_string(vi.ordinal);
                mv.cost = (vi.maint ? sp.maints[vi.entity] : sp.flights[vi.entity])[vi.ordinal].cost;
                break;
            case VarKind::Sink:
                // one sink carries the whole failing choice, so each copy
                // bears the full penalty
                mv.name = "snk_" + clean(pi.maintenances[vi.entity].id) + "_n" +
                          std::to_string(tsn.arcs[vi.arc].from);
                mv.cost = sp.maints[vi.entity][vi.ordinal].cost;
                break;
            case VarKind::Embark:
            case VarKind::Disembark: {
                const TsnArc& a = tsn.arcs[vi.arc];
                int crew = tsn.positions[tsn.nodes[a.from].position].owner;
                mv.name = std::string(vi.kind == VarKind::Embark ? "emb_" : "dis_") +
                          clean(pi.crews[crew].id) + "_n" + std::to_string(a.from) + "_n" +
                          std::to_string(a.to);
                break;
            }
            case VarKind::Ground:
                mv.name = "gnd_n" + std::to_string(tsn.arcs[vi.arc].from);
                break;
        }
    }
    for (int i = 0; i < (int)tsn.slot_choices.size(); ++i) {
        const SlotChoice& sc = tsn.slot_choices[i];
        MilpVar mv;
        mv.name = "u_" + clean(st.slots[sc.slot].id);
        mv.integral = false;
        mv.upper = sc.capacity;
        mv.cost = sc.penalty;
        m.slot_nonuse.push_back((int)m.vars.size());
        m.vars.push_back(std::move(mv));
    }

    // flow balance, fixed unit inputs on the right-hand side
    std::vector<std::map<int, double>> bal(tsn.nodes.size());
    std::vector<double> inflow(tsn.nodes.size(), 0.0);
    for (const TsnArc& a : tsn.arcs) {
        if (a.var < 0) {
            inflow[a.to] += 1.0;
            continue;
        }
        bal[a.from][a.var] += 1.0;
        bal[a.to][a.var] -= 1.0;
    }
    for (int n = 0; n < (int)tsn.nodes.size(); ++n) {
        if (tsn.positions[tsn.nodes[n].position].place == PlaceKind::Void) continue;
        LinConstraint c;
        c.tag = ConstraintTag::FlowBalance;
        c.equality = tsn.nodes[n].strict;
        for (auto& [v, k] : bal[n])
            if (k != 0.0) c.terms.push_back({v, k});
        if (c.terms.empty()) continue;
        c.rhs = inflow[n];
        c.name = "fb_n" + std::to_string(n);
        m.constraints.push_back(std::move(c));
    }

    // one decision per live group
    auto group_row = [&](bool maint, int e) {
        const auto& group = maint ? sp.maints[e] : sp.flights[e];
        const auto& binds = maint ? tsn.maint_bind[e] : tsn.flight_bind[e];
        LinConstraint c;
        c.tag = ConstraintTag::UniqueDecision;
        c.equality = true;
        c.rhs = 1.0;
        for (int k = 0; k < (int)group.size(); ++k) {
            if (group[k].kind == OptionKind::FailingMaintenance)
                for (int aid : binds[k].sink_arcs) c.terms.push_back({tsn.arcs[aid].var, 1.0});
            else
                c.terms.push_back({binds[k].var, 1.0});
        }
        const std::string& id = maint ? pi.maintenances[e].id : pi.flights[e].id;
        if (c.terms.empty())
            throw std::runtime_error("option group for " + id + " has an empty decision expression");
        c.name = "ud_" + clean(id);
        m.constraints.push_back(std::move(c));
    };
    for (int f = 0; f < (int)sp.flights.size(); ++f)
        if (!sp.flights[f].empty()) group_row(false, f);
    for (int e = 0; e < (int)sp.maints.size(); ++e)
        if (!sp.maints[e].empty()) group_row(true, e);

    for (int i = 0; i < (int)tsn.slot_choices.size(); ++i) {
        const SlotChoice& sc = tsn.slot_choices[i];
        LinConstraint c;
        c.tag = ConstraintTag::SlotCapacity;
        c.equality = true;
        for (auto [f, k] : sc.members) c.terms.push_back({tsn.flight_bind[f][k].var, 1.0});
        c.terms.push_back({m.slot_nonuse[i], 1.0});
        c.rhs = sc.capacity;
        c.name = "slot_" + clean(st.slots[sc.slot].id);
        m.constraints.push_back(std::move(c));
    }

    for (int cw = 0; cw < (int)pi.crews.size(); ++cw) {
        LinConstraint c;
        c.tag = ConstraintTag::CrewDuty;
        for (int f = 0; f < (int)sp.flights.size(); ++f)
            for (int k = 0; k < (int)sp.flights[f].size(); ++k) {
                const OptionChoice& o = sp.flights[f][k];
                if (o.kind == OptionKind::Scheduled && o.crew == cw)
                    c.terms.push_back({tsn.flight_bind[f][k].var, double(pi.flights[f].duration)});
            }
        if (c.terms.empty()) continue;
        c.rhs = pi.crews[cw].flight_time_limit;
        c.name = "duty_" + clean(pi.crews[cw].id);
        m.constraints.push_back(std::move(c));
    }
    return m;
}

double objective_value(const MilpModel& model, const std::vector<double>& values) {
    double obj = 0.0;
    for (int v = 0; v < (int)values.size() && v < (int)model.vars.size(); ++v)
        if (values[v] > 0.0) obj += model.vars[v].cost * values[v];
    return obj;
}

void warm_start_from(const RecoverySchedule& schedule, const TimeSpaceNetwork& tsn,
                     const SearchSpace& sp, const DisruptedState& st, MilpModel& model) {
    const ProblemInstance& pi = st.instance;
    if (schedule.flights.size() != pi.flights.size() ||
        schedule.maints.size() != pi.maintenances.size())
        return; // nothing to map

    Selection sel;
    sel.flight_opt.assign(sp.flights.size(), -1);
    sel.maint_opt.assign(sp.maints.size(), -1);
    bool complete = true;
    for (int f = 0; f < (int)sp.flights.size(); ++f) {
        if (sp.flights[f].empty()) continue;
        const FlightDisposition& d = schedule.flights[f];
        for (int k = 0; k < (int)sp.flights[f].size(); ++k) {
            const OptionChoice& o = sp.flights[f][k];
            bool hit = d.cancelled ? o.kind == OptionKind::Canceled
                                   : (o.kind == OptionKind::Scheduled && o.time == d.departure &&
                                      o.aircraft == d.aircraft && o.crew == d.crew);
            if (hit) {
                sel.flight_opt[f] = k;
                break;
            }
        }
        if (sel.flight_opt[f] < 0) {
            model.warm_notes.push_back(pi.flights[f].id + ": disposition has no matching option");
            complete = false;
        }
    }
    for (int e = 0; e < (int)sp.maints.size(); ++e) {
        if (sp.maints[e].empty()) continue;
        const MaintDisposition& d = schedule.maints[e];
        for (int k = 0; k < (int)sp.maints[e].size(); ++k) {
            const OptionChoice& o = sp.maints[e][k];
            bool hit = d.performed ? (o.kind == OptionKind::SucceedingMaintenance &&
                                      o.time == d.start && o.airport == d.airport)
                                   : o.kind == OptionKind::FailingMaintenance;
            if (hit) {
                sel.maint_opt[e] = k;
                break;
            }
        }
        if (sel.maint_opt[e] < 0) {
            model.warm_notes.push_back(pi.maintenances[e].id + ": disposition has no matching option");
            complete = false;
        }
    }

    // option-variable hints: chosen to one, complements to zero, failing
    // sinks left to the solver
    model.warm_start.assign(model.vars.size(), -1.0);
    for (int f = 0; f < (int)sp.flights.size(); ++f) {
        if (sel.flight_opt[f] < 0) continue;
        for (int k = 0; k < (int)sp.flights[f].size(); ++k)
            model.warm_start[tsn.flight_bind[f][k].var] = k == sel.flight_opt[f] ? 1.0 : 0.0;
    }
    for (int e = 0; e < (int)sp.maints.size(); ++e) {
        if (sel.maint_opt[e] < 0) continue;
        for (int k = 0; k < (int)sp.maints[e].size(); ++k) {
            const OptionBinding& b = tsn.maint_bind[e][k];
            if (sp.maints[e][k].kind == OptionKind::FailingMaintenance) {
                if (k != sel.maint_opt[e])
                    for (int aid : b.sink_arcs) model.warm_start[tsn.arcs[aid].var] = 0.0;
            } else {
                model.warm_start[b.var] = k == sel.maint_opt[e] ? 1.0 : 0.0;
            }
        }
    }
    if (!complete) return;

    RoutedFlows r = route_flows(tsn, sp, st, sel);
    if (!r.feasible) {
        model.warm_notes.push_back("selected options do not route: " + r.reason);
        return;
    }
    std::vector<double> full = r.values;
    full.resize(model.vars.size(), 0.0);
    for (int i = 0; i < (int)tsn.slot_choices.size(); ++i) {
        const SlotChoice& sc = tsn.slot_choices[i];
        int live = 0;
        for (auto [f, k] : sc.members)
            if (sel.flight_opt[f] == k) ++live;
        if (live > sc.capacity) {
            model.warm_notes.push_back(st.slots[sc.slot].id + ": start overfills the slot");
            return;
        }
        full[model.slot_nonuse[i]] = double(sc.capacity - live);
    }
    model.warm_start = std::move(full);
    model.warm_objective = objective_value(model, model.warm_start);
}

std::string export_model(const MilpModel& model) {
    std::string doc;
    doc += "\\ " + std::to_string(model.vars.size()) + " variables, " +
           std::to_string(model.constraints.size()) + " constraints\n";
    if (std::isfinite(model.warm_objective))
        doc += "\\ incumbent " + num(model.warm_objective) + "\n";

    auto flush = [&doc](const std::string& head, const std::vector<std::string>& toks,
                        const std::string& tail) {
        std::string line = head;
        for (const std::string& t : toks) {
            if (line.size() + t.size() + 1 > 200) {
                doc += line + "\n";
                line = "  ";
            }
            line += " " + t;
        }
        doc += line + tail + "\n";
    };
    auto tokens = [&model](const std::vector<LinTerm>& terms) {
        std::vector<std::string> toks;
        bool first = true;
        for (const LinTerm& t : terms) {
            std::string a;
            double c = t.coef;
            if (c < 0) {
                a = "- ";
                c = -c;
            } else if (!first) {
                a = "+ ";
            }
            if (std::fabs(c - 1.0) > 1e-12) a += num(c) + " ";
            a += model.vars[t.var].name;
            toks.push_back(std::move(a));
            first = false;
        }
        return toks;
    };

    doc += "Minimize\n";
    std::vector<LinTerm> obj;
    for (int v = 0; v < (int)model.vars.size(); ++v)
        if (model.vars[v].cost != 0.0) obj.push_back({v, model.vars[v].cost});
    if (obj.empty() && !model.vars.empty()) obj.push_back({0, 0.0});
    flush(" obj:", tokens(obj), "");

    doc += "Subject To\n";
    for (const LinConstraint& c : model.constraints)
        flush(" " + c.name + ":", tokens(c.terms), (c.equality ? " = " : " <= ") + num(c.rhs));

    std::string bounds, bins;
    for (const MilpVar& v : model.vars) {
        if (v.integral && v.lower == 0.0 && v.upper == 1.0) {
            bins += " " + v.name + "\n";
            continue;
        }
        bounds += " " + num(v.lower) + " <= " + v.name + " <= " + num(v.upper) + "\n";
        if (v.integral) bins += " " + v.name + "\n";
    }
    if (!bounds.empty()) doc += "Bounds\n" + bounds;
    if (!bins.empty()) doc += "Binaries\n" + bins;
    doc += "End\n";
    return doc;
}

} // namespace airs
