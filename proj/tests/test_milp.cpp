#include <doctest.h>

#include <airs/disruption.hpp>
#include <airs/generator.hpp>
#include <airs/milp.hpp>
#include <airs/schedule.hpp>
#include <airs/search_space.hpp>
#include <airs/tsn.hpp>

#include <cmath>

using namespace airs;

namespace {

ProblemInstance base_shell() {
  ProblemInstance pi;
  pi.anchors.current_time = 0;
  pi.anchors.recovery_start = 60;
  pi.anchors.recovery_finish = 2000;
  pi.anchors.max_delay = 180;
  pi.cost.delay_per_minute = 10;
  pi.cost.cancellation_per_flight = 50000;
  pi.airports.push_back({"HUB", 30, 20, 25});
  pi.airports.push_back({"BBB", 30, 20, 25});
  pi.airports.push_back({"CCC", 30, 20, 25});
  pi.aircraft.push_back({"AC1", "HUB", 0});
  pi.crews.push_back({"CW1", "HUB", 0, 600});
  return pi;
}

SeatCapacity seats() {
  SeatCapacity cap;
  cap.seats = {100, 0, 0};
  return cap;
}

Slot slot(const std::string& id, const std::string& ap, Minutes a, Minutes b, int cap,
          double penalty) {
  Slot s;
  s.id = id;
  s.airport = ap;
  s.window_start = a;
  s.window_end = b;
  s.capacity = cap;
  s.nonuse_penalty = penalty;
  return s;
}

int count_tag(const MilpModel& m, ConstraintTag t) {
  int n = 0;
  for (const auto& c : m.constraints)
    if (c.tag == t) ++n;
  return n;
}

const LinConstraint* row(const MilpModel& m, const std::string& name) {
  for (const auto& c : m.constraints)
    if (c.name == name) return &c;
  return nullptr;
}

// worst signed violation over all rows and bounds; <= 0 means feasible
double worst_violation(const MilpModel& m, const std::vector<double>& x) {
  double worst = -1e30;
  for (const auto& c : m.constraints) {
    double lhs = 0;
    for (const auto& t : c.terms) lhs += t.coef * x[t.var];
    worst = std::max(worst, c.equality ? std::fabs(lhs - c.rhs) : lhs - c.rhs);
  }
  for (int v = 0; v < (int)m.vars.size(); ++v) {
    worst = std::max(worst, m.vars[v].lower - x[v]);
    worst = std::max(worst, x[v] - m.vars[v].upper);
  }
  return worst;
}

}  // namespace

TEST_CASE("a single flight yields all four constraint families with exact rows") {
  ProblemInstance pi = base_shell();
  pi.flights.push_back({"F1", "HUB", "BBB", 300, 60, "AC1", "CW1", "", 0, seats()});
  pi.slots.push_back(slot("S1", "HUB", 250, 400, 1, 5));
  auto st = apply_disruptions(pi);
  auto sp = build_initial_space(st, {});
  auto tsn = build_tsn(sp, st);
  auto m = encode(tsn, sp, st);

  CHECK(m.decision_count == 6);
  CHECK(m.vars.size() == 7);  // + one slot nonuse
  CHECK(count_tag(m, ConstraintTag::FlowBalance) == 8);
  CHECK(count_tag(m, ConstraintTag::UniqueDecision) == 1);
  CHECK(count_tag(m, ConstraintTag::SlotCapacity) == 1);
  CHECK(count_tag(m, ConstraintTag::CrewDuty) == 1);
  for (const auto& c : m.constraints)
    for (const auto& t : c.terms) {
      CHECK(t.var >= 0);
      CHECK(t.var < (int)m.vars.size());
    }

  const LinConstraint* ud = row(m, "ud_F1");
  REQUIRE(ud);
  CHECK(ud->equality);
  CHECK(ud->terms.size() == 2);
  CHECK(ud->rhs == 1.0);

  const LinConstraint* duty = row(m, "duty_CW1");
  REQUIRE(duty);
  CHECK_FALSE(duty->equality);
  CHECK(duty->terms.size() == 1);
  CHECK(duty->terms[0].coef == 60.0);
  CHECK(duty->rhs == 600.0);

  const LinConstraint* sl = row(m, "slot_S1");
  REQUIRE(sl);
  CHECK(sl->equality);
  CHECK(sl->terms.size() == 2);  // the in-window option plus nonuse
  CHECK(sl->rhs == 1.0);
  CHECK_FALSE(m.vars[m.slot_nonuse[0]].integral);
  CHECK(m.vars[m.slot_nonuse[0]].cost == 5.0);

  auto text = export_model(m);
  for (const char* needle : {"Minimize", "Subject To", "fb_n", "ud_F1:", "slot_S1:", "duty_CW1:",
                             "Bounds", "Binaries", "End"})
    CHECK(text.find(needle) != std::string::npos);
  // a second build from the same inputs prints the same bytes
  CHECK(text == export_model(encode(build_tsn(sp, st), sp, st)));
}

TEST_CASE("slot equality fixes nonuse to capacity minus live usage") {
  ProblemInstance pi = base_shell();
  pi.aircraft.push_back({"AC2", "HUB", 0});
  pi.crews.push_back({"CW2", "HUB", 0, 600});
  pi.flights.push_back({"F1", "HUB", "BBB", 300, 60, "AC1", "CW1", "", 0, seats()});
  pi.flights.push_back({"F2", "HUB", "CCC", 320, 60, "AC2", "CW2", "", 0, seats()});
  pi.slots.push_back(slot("S1", "HUB", 250, 400, 3, 7));
  pi.slots.push_back(slot("S2", "HUB", 250, 310, 1, 9));
  auto st = apply_disruptions(pi);
  auto sp = build_initial_space(st, {});
  auto tsn = build_tsn(sp, st);
  auto m = encode(tsn, sp, st);

  auto base = baseline_schedule(st);
  warm_start_from(base, tsn, sp, st, m);
  REQUIRE(m.warm_notes.empty());
  REQUIRE(!m.warm_start.empty());
  // three departures possible, two flown as planned: one stays unused
  CHECK(m.warm_start[m.slot_nonuse[0]] == doctest::Approx(1.0));
  // the tight window holds only F1 and F1 uses it fully
  CHECK(m.warm_start[m.slot_nonuse[1]] == doctest::Approx(0.0));
  CHECK(m.warm_objective == doctest::Approx(schedule_cost(st, base)));
  CHECK(m.warm_objective == doctest::Approx(7.0));
}

TEST_CASE("crew duty rows mirror block minutes and cap subsets at the limit") {
  ProblemInstance pi = base_shell();
  pi.crews[0].flight_time_limit = 480;
  pi.flights.push_back({"F1", "HUB", "BBB", 100, 200, "AC1", "CW1", "", 0, seats()});
  pi.flights.push_back({"F2", "BBB", "HUB", 330, 200, "AC1", "CW1", "", 0, seats()});
  pi.flights.push_back({"F3", "HUB", "BBB", 560, 200, "AC1", "CW1", "", 0, seats()});
  auto st = apply_disruptions(pi);
  auto sp = build_initial_space(st, {});
  auto tsn = build_tsn(sp, st);
  auto m = encode(tsn, sp, st);

  const LinConstraint* duty = row(m, "duty_CW1");
  REQUIRE(duty);
  REQUIRE(duty->terms.size() == 3);
  for (const auto& t : duty->terms) CHECK(t.coef == 200.0);
  CHECK(duty->rhs == 480.0);

  // of the eight fly/skip subsets exactly those flying at most two legs fit
  int fits = 0;
  for (int mask = 0; mask < 8; ++mask) {
    double block = 0;
    for (int i = 0; i < 3; ++i)
      if (mask & (1 << i)) block += duty->terms[i].coef;
    if (block <= duty->rhs) ++fits;
  }
  CHECK(fits == 7);
}

TEST_CASE("warm starts map the baseline, survive growth, and flag strangers") {
  ProblemInstance pi = base_shell();
  pi.flights.push_back({"F1", "HUB", "BBB", 300, 60, "AC1", "CW1", "", 0, seats()});
  pi.flights.push_back({"F2", "BBB", "HUB", 450, 60, "AC1", "CW1", "", 0, seats()});
  Disruption d;
  d.kind = DisruptionKind::FlightDelay;
  d.target = "F1";
  d.delay_minutes = 45;
  pi.disruptions.push_back(d);
  auto st = apply_disruptions(pi);
  auto sp = build_initial_space(st, {});
  auto base = baseline_schedule(st);

  {
    auto tsn = build_tsn(sp, st);
    auto m = encode(tsn, sp, st);
    warm_start_from(base, tsn, sp, st, m);
    CHECK(m.warm_notes.empty());
    CHECK(m.warm_objective == doctest::Approx(schedule_cost(st, base)));
    CHECK(m.warm_objective == doctest::Approx(450.0));
  }

  SolutionFeedback fb;
  fb.cancelled_flights.push_back(0);
  expand_space(sp, st, fb, {});
  {
    auto tsn = build_tsn(sp, st);
    auto m = encode(tsn, sp, st);
    warm_start_from(base, tsn, sp, st, m);
    CHECK(m.warm_notes.empty());
    // the grown space reproduces the same start at the same objective
    CHECK(m.warm_objective == doctest::Approx(450.0));

    auto odd = base;
    odd.flights[0].departure += 7;  // between grid points: no such option
    auto m2 = encode(tsn, sp, st);
    warm_start_from(odd, tsn, sp, st, m2);
    REQUIRE(m2.warm_notes.size() == 1);
    CHECK(m2.warm_notes[0].find("F1") != std::string::npos);
    CHECK(m2.warm_objective == std::numeric_limits<double>::infinity());
    // the mapped group still carries hints, the odd one stays open
    bool f1_unset = true;
    for (int k = 0; k < (int)sp.flights[0].size(); ++k)
      if (m2.warm_start[tsn.flight_bind[0][k].var] >= 0) f1_unset = false;
    CHECK(f1_unset);
    bool f2_set = false;
    for (int k = 0; k < (int)sp.flights[1].size(); ++k)
      if (m2.warm_start[tsn.flight_bind[1][k].var] >= 0) f2_set = true;
    CHECK(f2_set);
  }
}

TEST_CASE("full-stop assignments satisfy every row on generated instances") {
  for (unsigned seed : {1u, 2u}) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.flight_disruptions = 3;
    cfg.maintenances = 1;
    auto st = apply_disruptions(generate_instance(cfg));
    auto sp = build_initial_space(st, {});
    auto tsn = build_tsn(sp, st);
    auto m = encode(tsn, sp, st);

    int live_groups = 0, crews_used = 0;
    for (const auto& g : sp.flights) live_groups += !g.empty();
    for (const auto& g : sp.maints) live_groups += !g.empty();
    CHECK(count_tag(m, ConstraintTag::UniqueDecision) == live_groups);
    CHECK(count_tag(m, ConstraintTag::SlotCapacity) == (int)tsn.slot_choices.size());
    crews_used = count_tag(m, ConstraintTag::CrewDuty);
    CHECK(crews_used <= (int)st.instance.crews.size());

    Selection sel;
    sel.flight_opt.assign(sp.flights.size(), -1);
    sel.maint_opt.assign(sp.maints.size(), -1);
    for (int f = 0; f < (int)sp.flights.size(); ++f)
      for (int k = 0; k < (int)sp.flights[f].size(); ++k)
        if (sp.flights[f][k].kind == OptionKind::Canceled) sel.flight_opt[f] = k;
    for (int e = 0; e < (int)sp.maints.size(); ++e)
      for (int k = 0; k < (int)sp.maints[e].size(); ++k)
        if (sp.maints[e][k].kind == OptionKind::FailingMaintenance) sel.maint_opt[e] = k;
    auto r = route_flows(tsn, sp, st, sel);
    REQUIRE(r.feasible);
    std::vector<double> x = r.values;
    x.resize(m.vars.size(), 0.0);
    for (int i = 0; i < (int)tsn.slot_choices.size(); ++i)
      x[m.slot_nonuse[i]] = tsn.slot_choices[i].capacity;
    CHECK(worst_violation(m, x) <= 1e-9);
    CHECK(objective_value(m, x) ==
          doctest::Approx(schedule_cost(st, schedule_from_selection(st, sp, sel))));
  }
}

TEST_CASE("a one-variable model exports a minimal document") {
  MilpModel m;
  m.vars.push_back({"z", true, 0.0, 1.0, 0.0});
  m.decision_count = 1;
  CHECK(export_model(m) ==
        "\\ 1 variables, 0 constraints\n"
        "Minimize\n"
        " obj: 0 z\n"
        "Subject To\n"
        "Binaries\n"
        " z\n"
        "End\n");
}
