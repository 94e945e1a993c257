#include <fstream>
#include <sstream>

#include <json.hpp>

#include "airs/io.hpp"

namespace airs {

using json = nlohmann::ordered_json;

namespace {

json interval_to_json(const Interval& w) {
    return json{{"start", w.start}, {"end", w.end}};
}

Interval interval_from_json(const json& j) {
    return {j.at("start").get<Minutes>(), j.at("end").get<Minutes>()};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
}

} // namespace

ProblemInstance read_instance_json(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    try {
        ProblemInstance pi;
        if (j.value("format", "") != "airs-instance")
            throw IoError(path + ": not an airs-instance document");
        const json& an = j.at("anchors");
        pi.anchors.current_time = an.at("current_time").get<Minutes>();
        pi.anchors.recovery_start = an.at("recovery_start").get<Minutes>();
        pi.anchors.recovery_finish = an.at("recovery_finish").get<Minutes>();
        pi.anchors.max_delay = an.at("max_delay").get<Minutes>();
        const json& cc = j.at("cost_coefficients");
        pi.cost.delay_per_minute = cc.at("delay_per_minute").get<double>();
        pi.cost.cancellation_per_flight = cc.at("cancellation_per_flight").get<double>();
        for (const json& e : j.value("airports", json::array())) {
            Airport a;
            a.id = e.at("id").get<std::string>();
            a.min_turnaround = e.at("min_turnaround").get<Minutes>();
            a.min_transit = e.at("min_transit").get<Minutes>();
            a.min_crew_connection = e.at("min_crew_connection").get<Minutes>();
            pi.airports.push_back(std::move(a));
        }
        for (const json& e : j.value("aircraft", json::array())) {
            Aircraft a;
            a.id = e.at("id").get<std::string>();
            a.initial_position = e.at("initial_position").get<std::string>();
            a.available_from = e.at("available_from").get<Minutes>();
            pi.aircraft.push_back(std::move(a));
        }
        for (const json& e : j.value("crew_groups", json::array())) {
            CrewGroup c;
            c.id = e.at("id").get<std::string>();
            c.initial_position = e.at("initial_position").get<std::string>();
            c.available_from = e.at("available_from").get<Minutes>();
            c.flight_time_limit = e.at("flight_time_limit").get<Minutes>();
            pi.crews.push_back(std::move(c));
        }
        for (const json& e : j.value("flights", json::array())) {
            Flight f;
            f.id = e.at("id").get<std::string>();
            f.origin = e.at("origin").get<std::string>();
            f.destination = e.at("destination").get<std::string>();
            f.sched_departure = e.at("sched_departure").get<Minutes>();
            f.duration = e.at("duration").get<Minutes>();
            f.original_aircraft = e.at("original_aircraft").get<std::string>();
            f.original_crew = e.at("original_crew").get<std::string>();
            f.multileg_group = e.value("multileg_group", "");
            f.leg_index = e.value("leg_index", 0);
            const json& sc = e.at("seat_capacity");
            f.seat_capacity[CabinClass::Economy] = sc.at("economy").get<int>();
            f.seat_capacity[CabinClass::Premium] = sc.at("premium").get<int>();
            f.seat_capacity[CabinClass::Business] = sc.at("business").get<int>();
            pi.flights.push_back(std::move(f));
        }
        for (const json& e : j.value("maintenances", json::array())) {
            Maintenance m;
            m.id = e.at("id").get<std::string>();
            m.aircraft = e.at("aircraft").get<std::string>();
            m.duration = e.at("duration").get<Minutes>();
            for (const json& w : e.at("allowed_windows"))
                m.allowed_windows.push_back({w.at("airport").get<std::string>(),
                                             w.at("earliest_start").get<Minutes>(),
                                             w.at("latest_start").get<Minutes>()});
            m.fail_penalty = e.at("fail_penalty").get<double>();
            pi.maintenances.push_back(std::move(m));
        }
        for (const json& e : j.value("slots", json::array())) {
            Slot s;
            s.id = e.at("id").get<std::string>();
            s.airport = e.at("airport").get<std::string>();
            s.window_start = e.at("window_start").get<Minutes>();
            s.window_end = e.at("window_end").get<Minutes>();
            s.capacity = e.at("capacity").get<int>();
            s.nonuse_penalty = e.value("nonuse_penalty", 0.0);
            pi.slots.push_back(std::move(s));
        }
        for (const json& e : j.value("itineraries", json::array())) {
            Itinerary it;
            it.id = e.at("id").get<std::string>();
            it.passenger_count = e.at("passenger_count").get<int>();
            for (const json& l : e.at("legs")) {
                ItineraryLeg leg;
                leg.flight = l.at("flight").get<std::string>();
                auto cabin = cabin_from_name(l.at("cabin").get<std::string>());
                if (!cabin) throw IoError(path + ": unknown cabin class in itinerary " + it.id);
                leg.cabin = *cabin;
                it.legs.push_back(std::move(leg));
            }
            it.cancellation_cost = e.at("cancellation_cost").get<double>();
            it.downgrade_cost = e.at("downgrade_cost").get<double>();
            it.delay_cost = e.at("delay_cost").get<double>();
            pi.itineraries.push_back(std::move(it));
        }
        for (const json& e : j.value("disruptions", json::array())) {
            Disruption d;
            auto kind = disruption_kind_from_name(e.at("kind").get<std::string>());
            if (!kind) throw IoError(path + ": unknown disruption kind");
            d.kind = *kind;
            d.target = e.at("target").get<std::string>();
            d.delay_minutes = e.value("delay_minutes", Minutes{0});
            if (e.contains("window")) d.window = interval_from_json(e.at("window"));
            d.new_capacity = e.value("new_capacity", 0);
            pi.disruptions.push_back(std::move(d));
        }
        return pi;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

void write_instance_json(const ProblemInstance& pi, const std::string& path) {
    json j;
    j["format"] = "airs-instance";
    j["version"] = 1;
    j["anchors"] = {{"current_time", pi.anchors.current_time},
                    {"recovery_start", pi.anchors.recovery_start},
                    {"recovery_finish", pi.anchors.recovery_finish},
                    {"max_delay", pi.anchors.max_delay}};
    j["cost_coefficients"] = {{"delay_per_minute", pi.cost.delay_per_minute},
                              {"cancellation_per_flight", pi.cost.cancellation_per_flight}};
    j["airports"] = json::array();
    for (const auto& a : pi.airports)
        j["airports"].push_back({{"id", a.id},
                                 {"min_turnaround", a.min_turnaround},
                                 {"min_transit", a.min_transit},
                                 {"min_crew_connection", a.min_crew_connection}});
    j["aircraft"] = json::array();
    for (const auto& a : pi.aircraft)
        j["aircraft"].push_back(
            {{"id", a.id}, {"initial_position", a.initial_position}, {"available_from", a.available_from}});
    j["crew_groups"] = json::array();
    for (const auto& c : pi.crews)
        j["crew_groups"].push_back({{"id", c.id},
                                    {"initial_position", c.initial_position},
                                    {"available_from", c.available_from},
                                    {"flight_time_limit", c.flight_time_limit}});
    j["flights"] = json::array();
    for (const auto& f : pi.flights) {
        json e = {{"id", f.id},
                  {"origin", f.origin},
                  {"destination", f.destination},
                  {"sched_departure", f.sched_departure},
                  {"duration", f.duration},
                  {"original_aircraft", f.original_aircraft},
                  {"original_crew", f.original_crew}};
        if (f.in_multileg()) {
            e["multileg_group"] = f.multileg_group;
            e["leg_index"] = f.leg_index;
        }
        e["seat_capacity"] = {{"economy", f.seat_capacity[CabinClass::Economy]},
                              {"premium", f.seat_capacity[CabinClass::Premium]},
                              {"business", f.seat_capacity[CabinClass::Business]}};
        j["flights"].push_back(std::move(e));
    }
    j["maintenances"] = json::array();
    for (const auto& m : pi.maintenances) {
        json ws = json::array();
        for (const auto& w : m.allowed_windows)
            ws.push_back({{"airport", w.airport},
                          {"earliest_start", w.earliest_start},
                          {"latest_start", w.latest_start}});
        j["maintenances"].push_back({{"id", m.id},
                                     {"aircraft", m.aircraft},
                                     {"duration", m.duration},
                                     {"allowed_windows", std::move(ws)},
                                     {"fail_penalty", m.fail_penalty}});
    }
    j["slots"] = json::array();
    for (const auto& s : pi.slots)
        j["slots"].push_back({{"id", s.id},
                              {"airport", s.airport},
                              {"window_start", s.window_start},
                              {"window_end", s.window_end},
                              {"capacity", s.capacity},
                              {"nonuse_penalty", s.nonuse_penalty}});
    j["itineraries"] = json::array();
    for (const auto& it : pi.itineraries) {
        json legs = json::array();
        for (const auto& l : it.legs)
            legs.push_back({{"flight", l.flight}, {"cabin", cabin_name(l.cabin)}});
        j["itineraries"].push_back({{"id", it.id},
                                    {"passenger_count", it.passenger_count},
                                    {"legs", std::move(legs)},
                                    {"cancellation_cost", it.cancellation_cost},
                                    {"downgrade_cost", it.downgrade_cost},
                                    {"delay_cost", it.delay_cost}});
    }
    j["disruptions"] = json::array();
    for (const auto& d : pi.disruptions) {
        json e = {{"kind", disruption_kind_name(d.kind)}, {"target", d.target}};
        switch (d.kind) {
        case DisruptionKind::FlightDelay: e["delay_minutes"] = d.delay_minutes; break;
        case DisruptionKind::FlightCancellation: break;
        case DisruptionKind::AircraftUnavailability:
        case DisruptionKind::AirportClosure: e["window"] = interval_to_json(d.window); break;
        case DisruptionKind::SlotChange: e["new_capacity"] = d.new_capacity; break;
        }
        j["disruptions"].push_back(std::move(e));
    }
    write_file(path, j.dump(2) + "\n");
}

} // namespace airs
