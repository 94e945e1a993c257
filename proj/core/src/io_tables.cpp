#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "airs/io.hpp"

namespace fs = std::filesystem;

namespace airs {

namespace {

// Plain comma-separated tables, header row first.  Ids in this format never
// contain commas or quotes, so no quoting dialect is implemented.
struct Csv {
    std::string path;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int col(const std::string& name, bool required = true) const {
        for (int i = 0; i < (int)header.size(); ++i)
            if (header[i] == name) return i;
        if (required) throw IoError(path + ": missing column '" + name + "'");
        return -1;
    }
    const std::string& cell(const std::vector<std::string>& row, int c) const {
        static const std::string empty;
        if (c < 0 || c >= (int)row.size()) return empty;
        return row[c];
    }
};

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

Csv read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    Csv t;
    t.path = path;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto cells = split_line(line);
        if (first) {
            t.header = std::move(cells);
            first = false;
        } else {
            t.rows.push_back(std::move(cells));
        }
    }
    if (first) throw IoError(path + ": empty table");
    return t;
}

Minutes to_minutes(const Csv& t, const std::string& s) {
    try {
        return std::stoll(s);
    } catch (...) {
        throw IoError(t.path + ": bad integer '" + s + "'");
    }
}

int to_int(const Csv& t, const std::string& s) { return (int)to_minutes(t, s); }

double to_double(const Csv& t, const std::string& s) {
    try {
        return std::stod(s);
    } catch (...) {
        throw IoError(t.path + ": bad number '" + s + "'");
    }
}

// Stable float rendering for writers; %.17g survives a double round-trip.
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* kTableNames[] = {"anchors",    "coefficients",        "airports",       "aircraft",
                             "crews",      "flights",             "maintenances",   "maintenance_windows",
                             "slots",      "itineraries",         "itinerary_legs", "disruptions"};

} // namespace

ProblemInstance read_instance_tables(const std::string& dir) {
    fs::path root(dir);
    std::ifstream mf(root / "manifest.json");
    if (!mf) throw IoError(dir + ": missing manifest.json");
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(mf);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(dir + "/manifest.json: " + e.what());
    }
    if (manifest.value("format", "") != "airs-instance-tables")
        throw IoError(dir + ": manifest is not airs-instance-tables");
    auto tables = manifest.value("tables", nlohmann::json::object());
    auto table_path = [&](const std::string& name) -> std::string {
        if (!tables.contains(name)) return {};
        return (root / tables[name].get<std::string>()).string();
    };
    auto require = [&](const std::string& name) {
        std::string p = table_path(name);
        if (p.empty()) throw IoError(dir + ": manifest lists no '" + name + "' table");
        return read_csv(p);
    };

    ProblemInstance pi;
    {
        Csv t = require("anchors");
        if (t.rows.size() != 1) throw IoError(t.path + ": expected exactly one row");
        const auto& r = t.rows[0];
        pi.anchors.current_time = to_minutes(t, t.cell(r, t.col("current_time")));
        pi.anchors.recovery_start = to_minutes(t, t.cell(r, t.col("recovery_start")));
        pi.anchors.recovery_finish = to_minutes(t, t.cell(r, t.col("recovery_finish")));
        pi.anchors.max_delay = to_minutes(t, t.cell(r, t.col("max_delay")));
    }
    {
        Csv t = require("coefficients");
        if (t.rows.size() != 1) throw IoError(t.path + ": expected exactly one row");
        const auto& r = t.rows[0];
        pi.cost.delay_per_minute = to_double(t, t.cell(r, t.col("delay_per_minute")));
        pi.cost.cancellation_per_flight = to_double(t, t.cell(r, t.col("cancellation_per_flight")));
    }
    {
        Csv t = require("airports");
        int c_id = t.col("id"), c_tu = t.col("min_turnaround"), c_tr = t.col("min_transit"),
            c_cc = t.col("min_crew_connection");
        for (const auto& r : t.rows)
            pi.airports.push_back({t.cell(r, c_id), to_minutes(t, t.cell(r, c_tu)),
                                   to_minutes(t, t.cell(r, c_tr)), to_minutes(t, t.cell(r, c_cc))});
    }
    {
        Csv t = require("aircraft");
        int c_id = t.col("id"), c_pos = t.col("initial_position"), c_av = t.col("available_from");
        for (const auto& r : t.rows)
            pi.aircraft.push_back({t.cell(r, c_id), t.cell(r, c_pos), to_minutes(t, t.cell(r, c_av))});
    }
    {
        Csv t = require("crews");
        int c_id = t.col("id"), c_pos = t.col("initial_position"), c_av = t.col("available_from"),
            c_lim = t.col("flight_time_limit");
        for (const auto& r : t.rows)
            pi.crews.push_back({t.cell(r, c_id), t.cell(r, c_pos), to_minutes(t, t.cell(r, c_av)),
                                to_minutes(t, t.cell(r, c_lim))});
    }
    {
        Csv t = require("flights");
        int c_id = t.col("id"), c_o = t.col("origin"), c_d = t.col("destination"),
            c_dep = t.col("sched_departure"), c_dur = t.col("duration"),
            c_ac = t.col("original_aircraft"), c_cr = t.col("original_crew"),
            c_ml = t.col("multileg_group"), c_li = t.col("leg_index"),
            c_e = t.col("cap_economy"), c_p = t.col("cap_premium"), c_b = t.col("cap_business");
        for (const auto& r : t.rows) {
            Flight f;
            f.id = t.cell(r, c_id);
            f.origin = t.cell(r, c_o);
            f.destination = t.cell(r, c_d);
            f.sched_departure = to_minutes(t, t.cell(r, c_dep));
            f.duration = to_minutes(t, t.cell(r, c_dur));
            f.original_aircraft = t.cell(r, c_ac);
            f.original_crew = t.cell(r, c_cr);
            f.multileg_group = t.cell(r, c_ml);
            f.leg_index = f.multileg_group.empty() ? 0 : to_int(t, t.cell(r, c_li));
            f.seat_capacity[CabinClass::Economy] = to_int(t, t.cell(r, c_e));
            f.seat_capacity[CabinClass::Premium] = to_int(t, t.cell(r, c_p));
            f.seat_capacity[CabinClass::Business] = to_int(t, t.cell(r, c_b));
            pi.flights.push_back(std::move(f));
        }
    }
    if (std::string p = table_path("maintenances"); !p.empty()) {
        Csv t = read_csv(p);
        int c_id = t.col("id"), c_ac = t.col("aircraft"), c_dur = t.col("duration"),
            c_pen = t.col("fail_penalty");
        for (const auto& r : t.rows) {
            Maintenance m;
            m.id = t.cell(r, c_id);
            m.aircraft = t.cell(r, c_ac);
            m.duration = to_minutes(t, t.cell(r, c_dur));
            m.fail_penalty = to_double(t, t.cell(r, c_pen));
            pi.maintenances.push_back(std::move(m));
        }
        if (std::string wp = table_path("maintenance_windows"); !wp.empty()) {
            Csv wt = read_csv(wp);
            int c_m = wt.col("maintenance"), c_ap = wt.col("airport"), c_e = wt.col("earliest_start"),
                c_l = wt.col("latest_start");
            for (const auto& r : wt.rows) {
                const std::string& mid = wt.cell(r, c_m);
                bool found = false;
                for (auto& m : pi.maintenances)
                    if (m.id == mid) {
                        m.allowed_windows.push_back({wt.cell(r, c_ap), to_minutes(wt, wt.cell(r, c_e)),
                                                     to_minutes(wt, wt.cell(r, c_l))});
                        found = true;
                    }
                if (!found) throw IoError(wt.path + ": window for unknown maintenance " + mid);
            }
        }
    }
    if (std::string p = table_path("slots"); !p.empty()) {
        Csv t = read_csv(p);
        int c_id = t.col("id"), c_ap = t.col("airport"), c_s = t.col("window_start"),
            c_e = t.col("window_end"), c_c = t.col("capacity"), c_pen = t.col("nonuse_penalty");
        for (const auto& r : t.rows)
            pi.slots.push_back({t.cell(r, c_id), t.cell(r, c_ap), to_minutes(t, t.cell(r, c_s)),
                                to_minutes(t, t.cell(r, c_e)), to_int(t, t.cell(r, c_c)),
                                to_double(t, t.cell(r, c_pen))});
    }
    if (std::string p = table_path("itineraries"); !p.empty()) {
        Csv t = read_csv(p);
        int c_id = t.col("id"), c_n = t.col("passenger_count"), c_cc = t.col("cancellation_cost"),
            c_dg = t.col("downgrade_cost"), c_dl = t.col("delay_cost");
        for (const auto& r : t.rows) {
            Itinerary it;
            it.id = t.cell(r, c_id);
            it.passenger_count = to_int(t, t.cell(r, c_n));
            it.cancellation_cost = to_double(t, t.cell(r, c_cc));
            it.downgrade_cost = to_double(t, t.cell(r, c_dg));
            it.delay_cost = to_double(t, t.cell(r, c_dl));
            pi.itineraries.push_back(std::move(it));
        }
        if (std::string lp = table_path("itinerary_legs"); !lp.empty()) {
            Csv lt = read_csv(lp);
            int c_it = lt.col("itinerary"), c_seq = lt.col("seq"), c_f = lt.col("flight"),
                c_cab = lt.col("cabin");
            // seq orders legs within an itinerary; rows may arrive unsorted
            std::vector<std::tuple<std::string, int, ItineraryLeg>> legs;
            for (const auto& r : lt.rows) {
                auto cabin = cabin_from_name(lt.cell(r, c_cab));
                if (!cabin) throw IoError(lt.path + ": unknown cabin '" + lt.cell(r, c_cab) + "'");
                legs.emplace_back(lt.cell(r, c_it), to_int(lt, lt.cell(r, c_seq)),
                                  ItineraryLeg{lt.cell(r, c_f), *cabin});
            }
            std::stable_sort(legs.begin(), legs.end(),
                             [](const auto& a, const auto& b) { return std::get<1>(a) < std::get<1>(b); });
            for (auto& [iid, seq, leg] : legs) {
                bool found = false;
                for (auto& it : pi.itineraries)
                    if (it.id == iid) {
                        it.legs.push_back(leg);
                        found = true;
                        break;
                    }
                if (!found) throw IoError(lt.path + ": leg for unknown itinerary " + iid);
            }
        }
    }
    if (std::string p = table_path("disruptions"); !p.empty()) {
        Csv t = read_csv(p);
        int c_k = t.col("kind"), c_t = t.col("target"), c_d = t.col("delay_minutes"),
            c_ws = t.col("window_start"), c_we = t.col("window_end"), c_nc = t.col("new_capacity");
        for (const auto& r : t.rows) {
            Disruption d;
            auto kind = disruption_kind_from_name(t.cell(r, c_k));
            if (!kind) throw IoError(t.path + ": unknown disruption kind '" + t.cell(r, c_k) + "'");
            d.kind = *kind;
            d.target = t.cell(r, c_t);
            if (!t.cell(r, c_d).empty()) d.delay_minutes = to_minutes(t, t.cell(r, c_d));
            if (!t.cell(r, c_ws).empty())
                d.window = {to_minutes(t, t.cell(r, c_ws)), to_minutes(t, t.cell(r, c_we))};
            if (!t.cell(r, c_nc).empty()) d.new_capacity = to_int(t, t.cell(r, c_nc));
            pi.disruptions.push_back(std::move(d));
        }
    }
    return pi;
}

void write_instance_tables(const ProblemInstance& pi, const std::string& dir) {
    fs::path root(dir);
    std::error_code ec;
    fs::create_directories(root, ec);

    auto open = [&](const char* name) {
        std::ofstream out(root / (std::string(name) + ".csv"));
        if (!out) throw IoError("cannot write " + (root / name).string());
        return out;
    };

    {
        auto out = open("anchors");
        out << "current_time,recovery_start,recovery_finish,max_delay\n";
        out << pi.anchors.current_time << ',' << pi.anchors.recovery_start << ','
            << pi.anchors.recovery_finish << ',' << pi.anchors.max_delay << '\n';
    }
    {
        auto out = open("coefficients");
        out << "delay_per_minute,cancellation_per_flight\n";
        out << num(pi.cost.delay_per_minute) << ',' << num(pi.cost.cancellation_per_flight) << '\n';
    }
    {
        auto out = open("airports");
        out << "id,min_turnaround,min_transit,min_crew_connection\n";
        for (const auto& a : pi.airports)
            out << a.id << ',' << a.min_turnaround << ',' << a.min_transit << ',' << a.min_crew_connection
                << '\n';
    }
    {
        auto out = open("aircraft");
        out << "id,initial_position,available_from\n";
        for (const auto& a : pi.aircraft)
            out << a.id << ',' << a.initial_position << ',' << a.available_from << '\n';
    }
    {
        auto out = open("crews");
        out << "id,initial_position,available_from,flight_time_limit\n";
        for (const auto& c : pi.crews)
            out << c.id << ',' << c.initial_position << ',' << c.available_from << ',' << c.flight_time_limit
                << '\n';
    }
    {
        auto out = open("flights");
        out << "id,origin,destination,sched_departure,duration,original_aircraft,original_crew,"
               "multileg_group,leg_index,cap_economy,cap_premium,cap_business\n";
        for (const auto& f : pi.flights)
            out << f.id << ',' << f.origin << ',' << f.destination << ',' << f.sched_departure << ','
                << f.duration << ',' << f.original_aircraft << ',' << f.original_crew << ','
                << f.multileg_group << ',' << f.leg_index << ',' << f.seat_capacity[CabinClass::Economy]
                << ',' << f.seat_capacity[CabinClass::Premium] << ','
                << f.seat_capacity[CabinClass::Business] << '\n';
    }
    {
        auto out = open("maintenances");
        out << "id,aircraft,duration,fail_penalty\n";
        for (const auto& m : pi.maintenances)
            out << m.id << ',' << m.aircraft << ',' << m.duration << ',' << num(m.fail_penalty) << '\n';
    }
    {
        auto out = open("maintenance_windows");
        out << "maintenance,airport,earliest_start,latest_start\n";
        for (const auto& m : pi.maintenances)
            for (const auto& w : m.allowed_windows)
                out << m.id << ',' << w.airport << ',' << w.earliest_start << ',' << w.latest_start << '\n';
    }
    {
        auto out = open("slots");
        out << "id,airport,window_start,window_end,capacity,nonuse_penalty\n";
        for (const auto& s : pi.slots)
            out << s.id << ',' << s.airport << ',' << s.window_start << ',' << s.window_end << ','
                << s.capacity << ',' << num(s.nonuse_penalty) << '\n';
    }
    {
        auto out = open("itineraries");
        out << "id,passenger_count,cancellation_cost,downgrade_cost,delay_cost\n";
        for (const auto& it : pi.itineraries)
            out << it.id << ',' << it.passenger_count << ',' << num(it.cancellation_cost) << ','
                << num(it.downgrade_cost) << ',' << num(it.delay_cost) << '\n';
    }
    {
        auto out = open("itinerary_legs");
        out << "itinerary,seq,flight,cabin\n";
        for (const auto& it : pi.itineraries)
            for (int k = 0; k < (int)it.legs.size(); ++k)
                out << it.id << ',' << k << ',' << it.legs[k].flight << ',' << cabin_name(it.legs[k].cabin)
                    << '\n';
    }
    {
        auto out = open("disruptions");
        out << "kind,target,delay_minutes,window_start,window_end,new_capacity\n";
        for (const auto& d : pi.disruptions) {
            out << disruption_kind_name(d.kind) << ',' << d.target << ',';
            switch (d.kind) {
            case DisruptionKind::FlightDelay: out << d.delay_minutes << ",,,"; break;
            case DisruptionKind::FlightCancellation: out << ",,,"; break;
            case DisruptionKind::AircraftUnavailability:
            case DisruptionKind::AirportClosure:
                out << ',' << d.window.start << ',' << d.window.end << ',';
                break;
            case DisruptionKind::SlotChange: out << ",,," << d.new_capacity; break;
            }
            out << '\n';
        }
    }

    nlohmann::ordered_json manifest;
    manifest["format"] = "airs-instance-tables";
    manifest["version"] = 1;
    nlohmann::ordered_json tables;
    for (const char* name : kTableNames) tables[name] = std::string(name) + ".csv";
    manifest["tables"] = std::move(tables);
    std::ofstream mf(root / "manifest.json");
    if (!mf) throw IoError("cannot write " + (root / "manifest.json").string());
    mf << manifest.dump(2) << "\n";
}

ProblemInstance read_instance(const std::string& path, InstanceFormat fmt) {
    if (fmt == InstanceFormat::Auto) {
        if (fs::is_directory(path))
            fmt = InstanceFormat::Tables;
        else
            fmt = InstanceFormat::Json;
    }
    return fmt == InstanceFormat::Json ? read_instance_json(path) : read_instance_tables(path);
}

void write_instance(const ProblemInstance& pi, const std::string& path, InstanceFormat fmt) {
    if (fmt == InstanceFormat::Auto) {
        std::string p = path;
        fmt = p.size() > 5 && p.substr(p.size() - 5) == ".json" ? InstanceFormat::Json
                                                                : InstanceFormat::Tables;
    }
    if (fmt == InstanceFormat::Json)
        write_instance_json(pi, path);
    else
        write_instance_tables(pi, path);
}

} // namespace airs
