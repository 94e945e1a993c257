#include <doctest.h>

#include <airs/disruption.hpp>
#include <airs/milp.hpp>
#include <airs/search_space.hpp>
#include <airs/simplex.hpp>
#include <airs/tsn.hpp>

#include <cmath>
#include <limits>

using namespace airs;

namespace {

MilpVar var(const std::string& name, double lo, double hi, double cost) {
  MilpVar v;
  v.name = name;
  v.integral = false;
  v.lower = lo;
  v.upper = hi;
  v.cost = cost;
  return v;
}

LinConstraint rowc(bool eq, std::vector<LinTerm> terms, double rhs) {
  LinConstraint c;
  c.tag = ConstraintTag::FlowBalance;
  c.equality = eq;
  c.terms = std::move(terms);
  c.rhs = rhs;
  c.name = "r";
  return c;
}

std::pair<std::vector<double>, std::vector<double>> bounds_of(const MilpModel& m) {
  std::vector<double> lo, hi;
  for (const auto& v : m.vars) {
    lo.push_back(v.lower);
    hi.push_back(v.upper);
  }
  return {lo, hi};
}

ProblemInstance one_flight(Minutes max_delay) {
  ProblemInstance pi;
  pi.anchors.current_time = 0;
  pi.anchors.recovery_start = 60;
  pi.anchors.recovery_finish = 2000;
  pi.anchors.max_delay = max_delay;
  pi.cost.delay_per_minute = 10;
  pi.cost.cancellation_per_flight = 50000;
  pi.airports.push_back({"HUB", 30, 20, 25});
  pi.airports.push_back({"BBB", 30, 20, 25});
  pi.aircraft.push_back({"AC1", "HUB", 0});
  pi.crews.push_back({"CW1", "HUB", 0, 600});
  SeatCapacity cap;
  cap.seats = {100, 0, 0};
  pi.flights.push_back({"F1", "HUB", "BBB", 300, 60, "AC1", "CW1", "", 0, cap});
  return pi;
}

}  // namespace

TEST_CASE("a bounded knapsack relaxation lands on the fractional vertex") {
  // min -x - 2y subject to x + y <= 1.5 over the unit box
  MilpModel m;
  m.vars.push_back(var("x", 0, 1, -1));
  m.vars.push_back(var("y", 0, 1, -2));
  m.constraints.push_back(rowc(false, {{0, 1.0}, {1, 1.0}}, 1.5));
  auto [lo, hi] = bounds_of(m);
  LpResult r = solve_relaxation(m, lo, hi);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(-2.5).epsilon(1e-9));
  CHECK(r.x[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.iterations > 0);
}

TEST_CASE("an equality row forces the cheap variable up to the residual") {
  // min x subject to x + y = 1 with y capped at 0.4
  MilpModel m;
  m.vars.push_back(var("x", 0, 1, 1));
  m.vars.push_back(var("y", 0, 0.4, 0));
  m.constraints.push_back(rowc(true, {{0, 1.0}, {1, 1.0}}, 1.0));
  auto [lo, hi] = bounds_of(m);
  LpResult r = solve_relaxation(m, lo, hi);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(r.x[0] == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(r.x[1] == doctest::Approx(0.4).epsilon(1e-9));
}

TEST_CASE("an unreachable equality reports infeasible") {
  MilpModel m;
  m.vars.push_back(var("x", 0, 1, 0));
  m.vars.push_back(var("y", 0, 1, 0));
  m.constraints.push_back(rowc(true, {{0, 1.0}, {1, 1.0}}, 3.0));
  auto [lo, hi] = bounds_of(m);
  LpResult r = solve_relaxation(m, lo, hi);
  CHECK(r.status == LpStatus::Infeasible);
}

TEST_CASE("a free improving ray reports unbounded") {
  MilpModel m;
  m.vars.push_back(var("x", 0, std::numeric_limits<double>::infinity(), -1));
  auto [lo, hi] = bounds_of(m);
  LpResult r = solve_relaxation(m, lo, hi);
  CHECK(r.status == LpStatus::Unbounded);
}

TEST_CASE("the undisrupted relaxation keeps the published plan at cost zero") {
  auto st = apply_disruptions(one_flight(180));
  auto sp = build_initial_space(st, {});
  auto tsn = build_tsn(sp, st);
  auto m = encode(tsn, sp, st);
  auto [lo, hi] = bounds_of(m);
  LpResult r = solve_relaxation(m, lo, hi);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(0.0).epsilon(1e-9));

  int planned = -1;
  for (int k = 0; k < (int)sp.flights[0].size(); ++k)
    if (sp.flights[0][k].kind == OptionKind::Scheduled &&
        sp.flights[0][k].time == st.instance.flights[0].sched_departure)
      planned = k;
  REQUIRE(planned >= 0);
  int pv = -1;
  for (int v = 0; v < (int)tsn.vars.size(); ++v)
    if (tsn.vars[v].kind == VarKind::Option && !tsn.vars[v].maint &&
        tsn.vars[v].entity == 0 && tsn.vars[v].ordinal == planned)
      pv = v;
  REQUIRE(pv >= 0);
  CHECK(r.x[pv] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("forbidding the published departure falls back to the cheapest option") {
  auto st = apply_disruptions(one_flight(0));
  auto sp = build_initial_space(st, {});
  auto tsn = build_tsn(sp, st);
  auto m = encode(tsn, sp, st);

  int planned = -1;
  for (int k = 0; k < (int)sp.flights[0].size(); ++k)
    if (sp.flights[0][k].kind == OptionKind::Scheduled) planned = k;
  REQUIRE(planned >= 0);
  int pv = -1;
  for (int v = 0; v < (int)tsn.vars.size(); ++v)
    if (tsn.vars[v].kind == VarKind::Option && !tsn.vars[v].maint &&
        tsn.vars[v].entity == 0 && tsn.vars[v].ordinal == planned)
      pv = v;
  REQUIRE(pv >= 0);

  double expect = std::numeric_limits<double>::infinity();
  for (int k = 0; k < (int)sp.flights[0].size(); ++k)
    if (k != planned) expect = std::min(expect, sp.flights[0][k].cost);
  REQUIRE(expect > 0.0);
  REQUIRE(std::isfinite(expect));

  auto [lo, hi] = bounds_of(m);
  hi[pv] = 0.0;
  LpResult r = solve_relaxation(m, lo, hi);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(expect).epsilon(1e-9));
  CHECK(r.x[pv] == doctest::Approx(0.0).epsilon(1e-9));
}
