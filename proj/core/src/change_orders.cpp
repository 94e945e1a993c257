#include "airs/change_orders.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "airs/io.hpp"

namespace airs {

using json = nlohmann::ordered_json;

const char* order_kind_name(OrderKind k) {
    switch (k) {
    case OrderKind::Delay: return "delay";
    case OrderKind::Cancel: return "cancel";
    case OrderKind::AircraftSwap: return "aircraft_swap";
    case OrderKind::CrewSwap: return "crew_swap";
    case OrderKind::MaintenancePlacement: return "maintenance_placement";
    case OrderKind::ItineraryRebooking: return "itinerary_rebooking";
    }
    return "delay";
}

namespace {

int kind_rank(OrderKind k) { return (int)k; }

std::optional<OrderKind> kind_from_name(const std::string& s) {
    for (int k = 0; k <= (int)OrderKind::ItineraryRebooking; ++k)
        if (s == order_kind_name((OrderKind)k)) return (OrderKind)k;
    return std::nullopt;
}

} // namespace

std::vector<ChangeOrder> diff_orders(const DisruptedState& st, const RecoverySchedule& s,
                                     const PassengerAssignment& pax) {
    std::vector<ChangeOrder> out;
    const ProblemInstance& pi = st.instance;

    for (int f = 0; f < (int)pi.flights.size(); ++f) {
        const FlightState& fs = st.flights[f];
        if (fs.forced_cancel || fs.fixed_past) continue;
        const FlightDisposition& d = s.flights[f];
        const Flight& fl = pi.flights[f];
        if (d.cancelled) {
            ChangeOrder o;
            o.kind = OrderKind::Cancel;
            o.target = fl.id;
            o.effective_time = fs.departure;
            out.push_back(std::move(o));
            continue;
        }
        if (d.departure != fs.departure) {
            ChangeOrder o;
            o.kind = OrderKind::Delay;
            o.target = fl.id;
            o.effective_time = d.departure;
            o.new_departure = d.departure;
            out.push_back(std::move(o));
        }
        if (d.aircraft != (int)st.index.aircraft.at(fl.original_aircraft)) {
            ChangeOrder o;
            o.kind = OrderKind::AircraftSwap;
            o.target = fl.id;
            o.effective_time = d.departure;
            o.new_aircraft = pi.aircraft[d.aircraft].id;
            out.push_back(std::move(o));
        }
        if (d.crew != (int)st.index.crew.at(fl.original_crew)) {
            ChangeOrder o;
            o.kind = OrderKind::CrewSwap;
            o.target = fl.id;
            o.effective_time = d.departure;
            o.new_crew = pi.crews[d.crew].id;
            out.push_back(std::move(o));
        }
    }

    // Placements are instructions: the disrupted baseline carries none, so
    // every performed maintenance is an order (a failed one emits nothing).
    for (int m = 0; m < (int)s.maints.size(); ++m) {
        if (!s.maints[m].performed) continue;
        ChangeOrder o;
        o.kind = OrderKind::MaintenancePlacement;
        o.target = pi.maintenances[m].id;
        o.effective_time = s.maints[m].start;
        o.airport = pi.airports[s.maints[m].airport].id;
        o.start = s.maints[m].start;
        out.push_back(std::move(o));
    }

    PassengerAssignment orig = original_assignment(pi, st.index);
    for (int i = 0; i < (int)pi.itineraries.size(); ++i) {
        PassengerAssignment a, b;
        a.itins.push_back(pax.itins[i]);
        b.itins.push_back(orig.itins[i]);
        if (same_assignment(a, b)) continue;
        ChangeOrder o;
        o.kind = OrderKind::ItineraryRebooking;
        o.target = pi.itineraries[i].id;
        ItineraryAssignment norm = pax.itins[i];
        {
            PassengerAssignment tmp;
            tmp.itins.push_back(norm);
            tmp.normalize();
            norm = tmp.itins[0];
        }
        // Effective when the first rebooked journey departs; a fully dropped
        // itinerary anchors at its original first departure.
        Minutes eff = kNoTime;
        for (const Booking& bk : norm.bookings) {
            RebookedJourney j;
            j.count = bk.count;
            for (const auto& seg : bk.segments)
                j.segments.emplace_back(pi.flights[seg.flight].id, seg.cabin);
            if (!bk.segments.empty()) {
                Minutes dep = s.flights[bk.segments[0].flight].departure;
                if (eff == kNoTime || dep < eff) eff = dep;
            }
            o.journeys.push_back(std::move(j));
        }
        if (eff == kNoTime) {
            int f0 = st.index.flight_of(pi.itineraries[i].legs.front().flight);
            eff = f0 >= 0 ? st.flights[f0].departure : pi.anchors.recovery_start;
        }
        o.unassigned = norm.unassigned;
        o.effective_time = eff;
        out.push_back(std::move(o));
    }

    std::sort(out.begin(), out.end(), [](const ChangeOrder& a, const ChangeOrder& b) {
        if (a.effective_time != b.effective_time) return a.effective_time < b.effective_time;
        if (kind_rank(a.kind) != kind_rank(b.kind)) return kind_rank(a.kind) < kind_rank(b.kind);
        return a.target < b.target;
    });
    return out;
}

void apply_orders(const DisruptedState& st, const std::vector<ChangeOrder>& orders,
                  RecoverySchedule& s_out, PassengerAssignment& pax_out) {
    const ProblemInstance& pi = st.instance;
    s_out = baseline_schedule(st);
    s_out.maints.assign(pi.maintenances.size(), MaintDisposition{});
    pax_out = original_assignment(pi, st.index);

    for (const ChangeOrder& o : orders) {
        switch (o.kind) {
        case OrderKind::Delay: {
            int f = st.index.flight_of(o.target);
            if (f < 0) throw IoError("order targets unknown flight " + o.target);
            s_out.flights[f].departure = o.new_departure;
            break;
        }
        case OrderKind::Cancel: {
            int f = st.index.flight_of(o.target);
            if (f < 0) throw IoError("order targets unknown flight " + o.target);
            s_out.flights[f].cancelled = true;
            break;
        }
        case OrderKind::AircraftSwap: {
            int f = st.index.flight_of(o.target);
            auto a = st.index.aircraft.find(o.new_aircraft);
            if (f < 0 || a == st.index.aircraft.end())
                throw IoError("aircraft_swap references unknown ids");
            s_out.flights[f].aircraft = a->second;
            break;
        }
        case OrderKind::CrewSwap: {
            int f = st.index.flight_of(o.target);
            auto c = st.index.crew.find(o.new_crew);
            if (f < 0 || c == st.index.crew.end()) throw IoError("crew_swap references unknown ids");
            s_out.flights[f].crew = c->second;
            break;
        }
        case OrderKind::MaintenancePlacement: {
            auto m = st.index.maintenance.find(o.target);
            int ap = st.index.airport_of(o.airport);
            if (m == st.index.maintenance.end() || ap < 0)
                throw IoError("maintenance_placement references unknown ids");
            s_out.maints[m->second] = {true, ap, o.start};
            break;
        }
        case OrderKind::ItineraryRebooking: {
            auto it = st.index.itinerary.find(o.target);
            if (it == st.index.itinerary.end())
                throw IoError("rebooking targets unknown itinerary " + o.target);
            ItineraryAssignment ia;
            for (const RebookedJourney& j : o.journeys) {
                Booking b;
                b.count = j.count;
                for (const auto& [fid, cabin] : j.segments) {
                    int f = st.index.flight_of(fid);
                    if (f < 0) throw IoError("rebooking references unknown flight " + fid);
                    b.segments.push_back({f, cabin});
                }
                ia.bookings.push_back(std::move(b));
            }
            ia.unassigned = o.unassigned;
            pax_out.itins[it->second] = std::move(ia);
            break;
        }
        }
    }
}

std::string plan_to_json(const std::vector<ChangeOrder>& orders) {
    json root;
    root["format"] = "airs-plan";
    root["version"] = 1;
    json arr = json::array();
    for (const ChangeOrder& o : orders) {
        json e;
        e["kind"] = order_kind_name(o.kind);
        e["target"] = o.target;
        e["effective_time"] = o.effective_time;
        switch (o.kind) {
        case OrderKind::Delay: e["new_departure"] = o.new_departure; break;
        case OrderKind::Cancel: break;
        case OrderKind::AircraftSwap: e["new_aircraft"] = o.new_aircraft; break;
        case OrderKind::CrewSwap: e["new_crew"] = o.new_crew; break;
        case OrderKind::MaintenancePlacement:
            e["airport"] = o.airport;
            e["start"] = o.start;
            break;
        case OrderKind::ItineraryRebooking: {
            json js = json::array();
            for (const RebookedJourney& j : o.journeys) {
                json seg = json::array();
                for (const auto& [fid, cabin] : j.segments)
                    seg.push_back({{"flight", fid}, {"cabin", cabin_name(cabin)}});
                js.push_back({{"count", j.count}, {"segments", std::move(seg)}});
            }
            e["journeys"] = std::move(js);
            e["unassigned"] = o.unassigned;
            break;
        }
        }
        arr.push_back(std::move(e));
    }
    root["orders"] = std::move(arr);
    return root.dump(2) + "\n";
}

std::vector<ChangeOrder> plan_from_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("plan parse: ") + e.what());
    }
    if (root.value("format", "") != "airs-plan") throw IoError("not an airs-plan document");
    std::vector<ChangeOrder> out;
    for (const json& e : root.value("orders", json::array())) {
        ChangeOrder o;
        auto kind = kind_from_name(e.at("kind").get<std::string>());
        if (!kind) throw IoError("unknown order kind");
        o.kind = *kind;
        o.target = e.at("target").get<std::string>();
        o.effective_time = e.value("effective_time", Minutes{0});
        switch (o.kind) {
        case OrderKind::Delay: o.new_departure = e.at("new_departure").get<Minutes>(); break;
        case OrderKind::Cancel: break;
        case OrderKind::AircraftSwap: o.new_aircraft = e.at("new_aircraft").get<std::string>(); break;
        case OrderKind::CrewSwap: o.new_crew = e.at("new_crew").get<std::string>(); break;
        case OrderKind::MaintenancePlacement:
            o.airport = e.at("airport").get<std::string>();
            o.start = e.at("start").get<Minutes>();
            break;
        case OrderKind::ItineraryRebooking: {
            for (const json& jj : e.value("journeys", json::array())) {
                RebookedJourney j;
                j.count = jj.at("count").get<int>();
                for (const json& seg : jj.at("segments")) {
                    auto cabin = cabin_from_name(seg.at("cabin").get<std::string>());
                    if (!cabin) throw IoError("unknown cabin in plan");
                    j.segments.emplace_back(seg.at("flight").get<std::string>(), *cabin);
                }
                o.journeys.push_back(std::move(j));
            }
            o.unassigned = e.value("unassigned", 0);
            break;
        }
        }
        out.push_back(std::move(o));
    }
    return out;
}

void write_plan_file(const std::vector<ChangeOrder>& orders, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << plan_to_json(orders);
}

std::vector<ChangeOrder> read_plan_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return plan_from_json(ss.str());
}

} // namespace airs
