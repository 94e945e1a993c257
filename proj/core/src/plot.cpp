#include "airs/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>
#include <vector>

namespace airs {
namespace {

// fixed categorical palette; grey is reserved for the "others" arcs
const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#bcbd22", "#17becf", "#aec7e8",
                          "#ffbb78", "#98df8a"};
constexpr int kPaletteSize = 12;
constexpr const char* kGrey = "#9a9a9a";

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

// tiny builder; every emitter goes through here so output stays canonical
struct Svg {
    std::ostringstream out;
    double width = 0, height = 0;

    void open(double w, double h) {
        width = w;
        height = h;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\""
            << fmt(h) << "\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h) << "\">\n";
        out << "<rect x=\"0\" y=\"0\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
            << "\" fill=\"#ffffff\"/>\n";
    }
    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double sw = 1.0, const char* dash = nullptr) {
        out << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2)
            << "\" y2=\"" << fmt(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
            << fmt(sw) << "\"";
        if (dash) out << " stroke-dasharray=\"" << dash << "\"";
        out << "/>\n";
    }
    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& stroke = "", double opacity = 1.0, const char* dash = nullptr) {
        out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(w)
            << "\" height=\"" << fmt(h) << "\" fill=\"" << fill << "\"";
        if (opacity < 1.0) out << " fill-opacity=\"" << fmt(opacity) << "\"";
        if (!stroke.empty()) out << " stroke=\"" << stroke << "\"";
        if (dash) out << " stroke-dasharray=\"" << dash << "\"";
        out << "/>\n";
    }
    void text(double x, double y, const std::string& s, double size = 11,
              const char* anchor = "start", const char* fill = "#222222") {
        out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" font-family=\"sans-serif\""
            << " font-size=\"" << fmt(size) << "\" text-anchor=\"" << anchor << "\" fill=\""
            << fill << "\">" << s << "</text>\n";
    }
    void circle(double x, double y, double r, const std::string& fill) {
        out << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << fmt(r)
            << "\" fill=\"" << fill << "\"/>\n";
    }
    // straight arrow with a manual head so no marker defs are needed
    void arrow(double x1, double y1, double x2, double y2, const std::string& stroke,
               double sw = 1.4) {
        line(x1, y1, x2, y2, stroke, sw);
        double dx = x2 - x1, dy = y2 - y1;
        double len = std::max(1.0, std::sqrt(dx * dx + dy * dy));
        dx /= len;
        dy /= len;
        double hx = x2 - 6 * dx, hy = y2 - 6 * dy;
        out << "<polygon points=\"" << fmt(x2) << "," << fmt(y2) << " " << fmt(hx - 2.5 * dy)
            << "," << fmt(hy + 2.5 * dx) << " " << fmt(hx + 2.5 * dy) << "," << fmt(hy - 2.5 * dx)
            << "\" fill=\"" << stroke << "\"/>\n";
    }
    std::string close() {
        out << "</svg>\n";
        return out.str();
    }
};

struct TimeScale {
    Minutes t0 = 0, t1 = 1;
    double x0 = 0, px = 1; // px per minute

    double x(Minutes t) const { return x0 + (double)(t - t0) * px; }
};

// bottom axis with hour ticks
void draw_axis(Svg& g, const TimeScale& ts, double y) {
    g.line(ts.x(ts.t0), y, ts.x(ts.t1), y, "#444444", 1.2);
    Minutes step = 60;
    while ((ts.t1 - ts.t0) / step > 24) step *= 2;
    Minutes first = ((ts.t0 + step - 1) / step) * step;
    for (Minutes t = first; t <= ts.t1; t += step) {
        g.line(ts.x(t), y, ts.x(t), y + 4, "#444444", 1.0);
        g.text(ts.x(t), y + 15, std::to_string(t), 10, "middle", "#444444");
    }
    g.text(ts.x(ts.t1), y + 28, "minutes", 10, "end", "#666666");
}

void draw_anchor_lines(Svg& g, const DisruptedState& st, const TimeScale& ts, double y_top,
                       double y_bot) {
    const TimeAnchors& an = st.instance.anchors;
    struct Mark {
        Minutes t;
        const char* label;
    } marks[] = {{an.current_time, "CT"}, {an.recovery_start, "RS"}, {an.recovery_finish, "RF"}};
    for (const auto& m : marks) {
        if (m.t < ts.t0 || m.t > ts.t1) continue; // horizon often far right, as in the source figures
        g.line(ts.x(m.t), y_top, ts.x(m.t), y_bot, "#b05050", 1.0, "5,4");
        g.text(ts.x(m.t) + 3, y_top + 10, m.label, 10, "start", "#b05050");
    }
}

struct GanttRow {
    std::string label;
    std::vector<int> flights; // indices, drawn in departure order
    int aircraft = -1;        // recovered-schedule rows: maintenance host
};

constexpr double kRowH = 26, kBarH = 14, kMarginL = 96, kMarginT = 34, kAxisH = 36;
constexpr double kLegendW = 150;

TimeScale fit_scale(Minutes lo, Minutes hi, double x0) {
    TimeScale ts;
    ts.t0 = lo;
    ts.t1 = std::max(hi, lo + 1);
    ts.x0 = x0;
    double span = (double)(ts.t1 - ts.t0);
    ts.px = std::min(2.0, std::max(0.25, 900.0 / span));
    return ts;
}

std::string gantt(const DisruptedState& st, const RecoverySchedule* sol) {
    const ProblemInstance& pi = st.instance;
    const InstanceIndex& ix = st.index;

    // rows: aircraft block first, then crew block, both in instance order.
    // the problem view groups by the original resources, the solution view by
    // the recovered ones
    std::vector<GanttRow> rows;
    std::vector<std::vector<int>> by_ac(pi.aircraft.size()), by_cr(pi.crews.size());
    std::vector<int> cancelled_unhosted; // solution view: cancelled flights keep original rows
    for (int f = 0; f < (int)pi.flights.size(); ++f) {
        int a, c;
        if (sol) {
            const FlightDisposition& d = sol->flights[f];
            if (d.cancelled || d.aircraft < 0 || d.crew < 0) {
                a = (int)ix.aircraft.at(pi.flights[f].original_aircraft);
                c = (int)ix.crew.at(pi.flights[f].original_crew);
            } else {
                a = d.aircraft;
                c = d.crew;
            }
        } else {
            a = (int)ix.aircraft.at(pi.flights[f].original_aircraft);
            c = (int)ix.crew.at(pi.flights[f].original_crew);
        }
        by_ac[a].push_back(f);
        by_cr[c].push_back(f);
    }
    for (int a = 0; a < (int)pi.aircraft.size(); ++a)
        rows.push_back({pi.aircraft[a].id, by_ac[a], a});
    for (int c = 0; c < (int)pi.crews.size(); ++c) rows.push_back({pi.crews[c].id, by_cr[c], -1});

    Minutes lo = pi.anchors.current_time, hi = pi.anchors.current_time + 60;
    for (int f = 0; f < (int)pi.flights.size(); ++f) {
        const Flight& fl = pi.flights[f];
        lo = std::min(lo, fl.sched_departure);
        hi = std::max(hi, fl.sched_departure + fl.duration);
        Minutes d = sol && !sol->flights[f].cancelled ? sol->flights[f].departure
                                                      : st.fs(f).departure;
        hi = std::max(hi, d + fl.duration);
    }
    if (pi.anchors.recovery_start <= hi) lo = std::min(lo, pi.anchors.recovery_start);
    TimeScale ts = fit_scale(lo - 15, hi + 15, kMarginL);

    double body_h = rows.size() * kRowH + 2 * 18; // two section headers
    Svg g;
    g.open(ts.x(ts.t1) + 20, kMarginT + body_h + kAxisH);
    g.text(kMarginL, 18, sol ? "recovered schedule" : "disrupted problem", 13, "start");

    double y = kMarginT;
    auto draw_block = [&](size_t lo_row, size_t hi_row, const char* header) {
        g.text(8, y + 12, header, 11, "start", "#666666");
        y += 18;
        for (size_t r = lo_row; r < hi_row; ++r) {
            const GanttRow& row = rows[r];
            double cy = y + kRowH / 2;
            g.text(8, cy + 4, row.label, 11);
            g.line(ts.x(ts.t0), cy, ts.x(ts.t1), cy, "#e3e3e3", 0.8);
            std::vector<int> fs = row.flights;
            std::sort(fs.begin(), fs.end(), [&](int a, int b) {
                return pi.flights[a].sched_departure != pi.flights[b].sched_departure
                           ? pi.flights[a].sched_departure < pi.flights[b].sched_departure
                           : a < b;
            });
            for (int f : fs) {
                const Flight& fl = pi.flights[f];
                double wbar = (double)fl.duration * ts.px;
                double yb = cy - kBarH / 2;
                bool cancelled = sol ? sol->flights[f].cancelled : st.fs(f).forced_cancel;
                Minutes shifted = sol ? sol->flights[f].departure : st.fs(f).departure;
                if (cancelled) {
                    g.rect(ts.x(fl.sched_departure), yb, wbar, kBarH, "none", "#d62728", 1.0,
                           "3,3");
                    g.line(ts.x(fl.sched_departure), yb, ts.x(fl.sched_departure) + wbar,
                           yb + kBarH, "#d62728", 1.2);
                    g.line(ts.x(fl.sched_departure), yb + kBarH, ts.x(fl.sched_departure) + wbar,
                           yb, "#d62728", 1.2);
                    g.text(ts.x(fl.sched_departure) + wbar / 2, yb - 2, fl.id, 9, "middle",
                           "#d62728");
                    continue;
                }
                if (shifted != fl.sched_departure) {
                    // ghost at the published position, solid bar where it flies now
                    g.rect(ts.x(fl.sched_departure), yb, wbar, kBarH, "#d9d9d9", "#aaaaaa", 0.6);
                    g.rect(ts.x(shifted), yb, wbar, kBarH, "#ff7f0e", "#b35900", 0.9);
                    g.text(ts.x(shifted) + wbar / 2, cy + 4, fl.id, 9, "middle");
                } else {
                    g.rect(ts.x(fl.sched_departure), yb, wbar, kBarH, "#7fb3d5", "#41729f", 0.9);
                    g.text(ts.x(fl.sched_departure) + wbar / 2, cy + 4, fl.id, 9, "middle");
                }
            }
            if (sol && row.aircraft >= 0) {
                for (int m = 0; m < (int)pi.maintenances.size(); ++m) {
                    const MaintDisposition& md = sol->maints[m];
                    if (!md.performed) continue;
                    if ((int)ix.aircraft.at(pi.maintenances[m].aircraft) != row.aircraft) continue;
                    double wbar = (double)pi.maintenances[m].duration * ts.px;
                    g.rect(ts.x(md.start), cy - kBarH / 2, wbar, kBarH, "#9467bd", "#5e3f82",
                           0.85);
                    g.text(ts.x(md.start) + wbar / 2, cy + 4, pi.maintenances[m].id, 9, "middle",
                           "#ffffff");
                }
            }
            y += kRowH;
        }
    };
    draw_block(0, pi.aircraft.size(), "aircraft");
    draw_block(pi.aircraft.size(), rows.size(), "crew groups");

    draw_anchor_lines(g, st, ts, kMarginT, y);
    draw_axis(g, ts, y + 8);
    return g.close();
}

} // namespace

std::string plot_problem(const DisruptedState& st) { return gantt(st, nullptr); }

std::string plot_solution(const DisruptedState& st, const RecoverySchedule& s) {
    return gantt(st, &s);
}

std::string plot_tsn(const TimeSpaceNetwork& tsn, const SearchSpace& sp,
                     const DisruptedState& st, bool crew_side, int owner) {
    const ProblemInstance& pi = st.instance;
    const int want_kind = crew_side ? 1 : 0;

    // vertical bands: one per owned position, grouped under each airport so
    // aboard-aircraft sub-rows sit below their airport row
    std::vector<int> bands;
    for (int p = 0; p < (int)tsn.positions.size(); ++p) {
        const Position& pos = tsn.positions[p];
        if (pos.owner_kind != want_kind || pos.owner != owner) continue;
        bands.push_back(p);
    }
    auto band_key = [&](int p) {
        const Position& pos = tsn.positions[p];
        switch (pos.place) {
        case PlaceKind::Airport: return std::tuple<int, int, int>(pos.a, 0, 0);
        case PlaceKind::Ground: return std::tuple<int, int, int>(pos.a, 0, 0);
        case PlaceKind::Aboard: return std::tuple<int, int, int>(pos.b, 1, pos.a);
        case PlaceKind::Transit: return std::tuple<int, int, int>(1 << 20, pos.a, pos.b);
        default: return std::tuple<int, int, int>(1 << 21, 0, 0);
        }
    };
    std::sort(bands.begin(), bands.end(),
              [&](int a, int b) { return band_key(a) < band_key(b); });
    std::vector<int> band_of(tsn.positions.size(), -1);
    for (int i = 0; i < (int)bands.size(); ++i) band_of[bands[i]] = i;

    Minutes lo = pi.anchors.current_time, hi = pi.anchors.current_time + 60;
    bool any_node = false;
    for (const TsnNode& n : tsn.nodes) {
        if (n.position < 0 || n.position >= (int)tsn.positions.size()) continue;
        if (band_of[n.position] < 0) continue;
        lo = any_node ? std::min(lo, n.time) : n.time;
        hi = any_node ? std::max(hi, n.time) : n.time + 1;
        any_node = true;
    }
    TimeScale ts = fit_scale(lo - 30, hi + 30, kMarginL);

    double body_h = std::max<double>(1, bands.size()) * kRowH;
    Svg g;
    g.open(ts.x(ts.t1) + kLegendW + 30, kMarginT + body_h + kAxisH);
    std::string title = crew_side ? ("crew " + (owner >= 0 && owner < (int)pi.crews.size()
                                                   ? pi.crews[owner].id
                                                   : std::to_string(owner)))
                                  : ("aircraft " + (owner >= 0 && owner < (int)pi.aircraft.size()
                                                        ? pi.aircraft[owner].id
                                                        : std::to_string(owner)));
    g.text(kMarginL, 18, "time-space network, " + title + ", iteration " +
                             std::to_string(sp.iteration), 13);

    auto band_y = [&](int band) { return kMarginT + band * kRowH + kRowH / 2; };
    for (int i = 0; i < (int)bands.size(); ++i) {
        const Position& pos = tsn.positions[bands[i]];
        std::string label;
        switch (pos.place) {
        case PlaceKind::Airport:
        case PlaceKind::Ground: label = pi.airports[pos.a].id; break;
        case PlaceKind::Aboard: label = "on " + pi.aircraft[pos.a].id; break;
        case PlaceKind::Transit:
            label = "transit " + (pos.a >= 0 && pos.a < (int)tsn.multileg_ids.size()
                                      ? tsn.multileg_ids[pos.a]
                                      : std::to_string(pos.a));
            break;
        default: label = "void"; break;
        }
        double cy = band_y(i);
        g.text(8, cy + 4, label, 10);
        g.line(ts.x(ts.t0), cy, ts.x(ts.t1), cy, "#eeeeee", 0.8);
    }

    // legend keys: option arcs coloured by (flight, partner), maintenance by
    // task; everything else is one grey class
    std::map<std::pair<int, int>, int> colour_of; // key -> palette index
    std::vector<std::string> legend;
    auto arc_key = [&](const TsnArc& a) -> std::pair<int, int> {
        if (a.kind == ArcKind::Maintenance) return {1 << 20, a.entity};
        const OptionChoice& oc = sp.flights[a.entity][a.ordinal];
        return {a.entity, crew_side ? oc.aircraft : oc.crew};
    };
    std::vector<std::pair<std::pair<int, int>, const TsnArc*>> option_arcs;
    for (const TsnArc& a : tsn.arcs) {
        bool option = (!crew_side && (a.kind == ArcKind::Flight || a.kind == ArcKind::Maintenance)) ||
                      (crew_side && a.kind == ArcKind::CrewFlight);
        if (!option) continue;
        int bf = a.from >= 0 ? band_of[tsn.nodes[a.from].position] : -1;
        int bt = a.to >= 0 ? band_of[tsn.nodes[a.to].position] : -1;
        if (bf < 0 && bt < 0) continue;
        option_arcs.push_back({arc_key(a), &a});
    }
    std::sort(option_arcs.begin(), option_arcs.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [key, arc] : option_arcs) {
        if (colour_of.count(key)) continue;
        int idx = (int)colour_of.size();
        colour_of[key] = idx % kPaletteSize;
        if (key.first >= (1 << 20)) {
            legend.push_back(pi.maintenances[key.second].id);
        } else {
            std::string partner =
                crew_side ? (key.second >= 0 ? pi.aircraft[key.second].id : "?")
                          : (key.second >= 0 ? pi.crews[key.second].id : "?");
            legend.push_back(pi.flights[key.first].id + " / " + partner);
        }
    }

    // non-option arcs first so the coloured ones draw on top
    for (const TsnArc& a : tsn.arcs) {
        bool option = (!crew_side && (a.kind == ArcKind::Flight || a.kind == ArcKind::Maintenance)) ||
                      (crew_side && a.kind == ArcKind::CrewFlight);
        if (option) continue;
        if (!crew_side && a.kind == ArcKind::CrewFlight) continue;
        if (crew_side && a.kind == ArcKind::Flight) continue;
        int bf = a.from >= 0 ? band_of[tsn.nodes[a.from].position] : -1;
        int bt = a.to >= 0 ? band_of[tsn.nodes[a.to].position] : -1;
        if (bf < 0 && bt < 0) continue;
        double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
        if (bf >= 0) {
            x1 = ts.x(tsn.nodes[a.from].time);
            y1 = band_y(bf);
        } else { // input from the void: enter from the lower left
            x2 = ts.x(tsn.nodes[a.to].time);
            x1 = x2 - 26;
            y1 = band_y(bt) + 14;
        }
        if (bt >= 0) {
            x2 = ts.x(tsn.nodes[a.to].time);
            y2 = band_y(bt);
        } else { // sink into the void: fall off to the right
            x2 = x1 + 26;
            y2 = y1 + 14;
        }
        if (a.kind == ArcKind::Sink) g.line(x1, y1, x2, y2, kGrey, 1.0, "3,3");
        else g.arrow(x1, y1, x2, y2, kGrey, 1.0);
    }
    for (const auto& [key, arc] : option_arcs) {
        const TsnArc& a = *arc;
        int bf = band_of[tsn.nodes[a.from].position];
        int bt = band_of[tsn.nodes[a.to].position];
        if (bf < 0 || bt < 0) continue;
        g.arrow(ts.x(tsn.nodes[a.from].time), band_y(bf), ts.x(tsn.nodes[a.to].time), band_y(bt),
                kPalette[colour_of[key]], 1.6);
    }
    for (const TsnNode& n : tsn.nodes) {
        if (n.position < 0 || band_of[n.position] < 0) continue;
        g.circle(ts.x(n.time), band_y(band_of[n.position]), 2.2, "#333333");
    }

    double ly = kMarginT + 4;
    double lx = ts.x(ts.t1) + 24;
    for (int i = 0; i < (int)legend.size(); ++i) {
        g.line(lx, ly + 4, lx + 18, ly + 4, kPalette[i % kPaletteSize], 2.0);
        g.text(lx + 24, ly + 8, legend[i], 10);
        ly += 16;
    }
    g.line(lx, ly + 4, lx + 18, ly + 4, kGrey, 2.0);
    g.text(lx + 24, ly + 8, "others", 10);

    draw_anchor_lines(g, st, ts, kMarginT, kMarginT + body_h);
    draw_axis(g, ts, kMarginT + body_h + 8);
    return g.close();
}

} // namespace airs
