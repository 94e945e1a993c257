#include <doctest.h>

#include <airs/disruption.hpp>
#include <airs/schedule.hpp>

using namespace airs;

namespace {

// Single aircraft flying AAA -> BBB -> AAA -> CCC with one crew.
ProblemInstance chain_instance() {
  ProblemInstance pi;
  pi.anchors.current_time = 0;
  pi.anchors.recovery_start = 30;
  pi.anchors.recovery_finish = 2000;
  pi.anchors.max_delay = 180;
  pi.cost.delay_per_minute = 10;
  pi.cost.cancellation_per_flight = 50000;

  pi.airports.push_back({"AAA", 30, 20, 25});
  pi.airports.push_back({"BBB", 30, 20, 25});
  pi.airports.push_back({"CCC", 30, 20, 25});

  pi.aircraft.push_back({"AC1", "AAA", 0});
  pi.crews.push_back({"CR1", "AAA", 0, 600});

  SeatCapacity cap;
  cap.seats = {100, 0, 0};
  pi.flights.push_back({"F1", "AAA", "BBB", 100, 80, "AC1", "CR1", "", 0, cap});
  pi.flights.push_back({"F2", "BBB", "AAA", 240, 80, "AC1", "CR1", "", 0, cap});
  pi.flights.push_back({"F3", "AAA", "CCC", 380, 80, "AC1", "CR1", "", 0, cap});
  return pi;
}

Disruption delay(const std::string& f, Minutes m) {
  Disruption d;
  d.kind = DisruptionKind::FlightDelay;
  d.target = f;
  d.delay_minutes = m;
  return d;
}

}  // namespace

TEST_CASE("no disruptions leaves flights untouched and nothing flagged") {
  auto st = apply_disruptions(chain_instance());
  for (int f = 0; f < 3; ++f) {
    CHECK(st.fs(f).departure == st.instance.flights[f].sched_departure);
    CHECK_FALSE(st.fs(f).disrupted);
    CHECK_FALSE(st.fs(f).forced_cancel);
  }
  CHECK(st.aircraft_start[0].airport == 0);
  CHECK(st.aircraft_start[0].ready == 0);
}

TEST_CASE("delay shifts its flight and flags the broken successors") {
  ProblemInstance pi = chain_instance();
  pi.disruptions.push_back(delay("F1", 90));
  auto st = apply_disruptions(pi);

  CHECK(st.fs(0).departure == 190);
  CHECK(st.fs(0).disrupted);
  // F1 now lands 270, needs 30 turnaround: F2 at 240 is broken.
  CHECK(st.fs(1).disrupted);
  // Once the rotation is broken everything downstream needs attention too.
  CHECK(st.fs(2).disrupted);
  // Baseline departures of the successors are not shifted by the fold itself.
  CHECK(st.fs(1).departure == 240);
  CHECK(st.fs(2).departure == 380);
}

TEST_CASE("small delay that still fits flags only the target") {
  ProblemInstance pi = chain_instance();
  pi.disruptions.push_back(delay("F1", 20));
  auto st = apply_disruptions(pi);
  CHECK(st.fs(0).departure == 120);
  CHECK(st.fs(0).disrupted);
  // Lands 200, ready 230 <= 240: the rest of the rotation still works.
  CHECK_FALSE(st.fs(1).disrupted);
  CHECK_FALSE(st.fs(2).disrupted);
}

TEST_CASE("stacked delays on one flight accumulate") {
  ProblemInstance pi = chain_instance();
  pi.disruptions.push_back(delay("F1", 20));
  pi.disruptions.push_back(delay("F1", 15));
  auto st = apply_disruptions(pi);
  CHECK(st.fs(0).departure == 135);
}

TEST_CASE("cancellation is a sunk decision and breaks the chain") {
  ProblemInstance pi = chain_instance();
  Disruption d;
  d.kind = DisruptionKind::FlightCancellation;
  d.target = "F2";
  pi.disruptions.push_back(d);
  auto st = apply_disruptions(pi);
  CHECK(st.fs(1).forced_cancel);
  CHECK_FALSE(st.fs(0).disrupted);
  // Aircraft never gets back to AAA, so F3 is stranded.
  CHECK(st.fs(2).disrupted);
}

TEST_CASE("grounding window marks overlapped flights") {
  ProblemInstance pi = chain_instance();
  Disruption d;
  d.kind = DisruptionKind::AircraftUnavailability;
  d.target = "AC1";
  d.window = {220, 300};  // collides with F2 at [240, 320]
  pi.disruptions.push_back(d);
  auto st = apply_disruptions(pi);
  REQUIRE(st.aircraft_down[0].size() == 1);
  CHECK_FALSE(st.fs(0).disrupted);
  CHECK(st.fs(1).disrupted);
  CHECK(st.fs(2).disrupted);
  CHECK(st.placement_blocked(1, 240, 0));
  CHECK_FALSE(st.placement_blocked(1, 310, 0));
}

TEST_CASE("airport closure blocks departures and arrivals in the window") {
  ProblemInstance pi = chain_instance();
  Disruption d;
  d.kind = DisruptionKind::AirportClosure;
  d.target = "BBB";
  d.window = {150, 200};  // F1 arrives BBB at 180
  pi.disruptions.push_back(d);
  auto st = apply_disruptions(pi);
  CHECK(st.fs(0).disrupted);
  CHECK(st.placement_blocked(0, 100, 0));
  // Departing 40 later lands at 220, outside the closure.
  CHECK_FALSE(st.placement_blocked(0, 140, 0));
}

TEST_CASE("flights finished before current_time fold into the resource start") {
  ProblemInstance pi = chain_instance();
  pi.anchors.current_time = 200;
  pi.anchors.recovery_start = 230;
  auto st = apply_disruptions(pi);

  CHECK(st.fs(0).fixed_past);
  CHECK_FALSE(st.fs(1).fixed_past);
  // Aircraft re-enters at BBB once F1's turnaround is done.
  CHECK(st.aircraft_start[0].airport == 1);
  CHECK(st.aircraft_start[0].ready == 100 + 80 + 30);
  // Crew re-enters aboard AC1 at BBB when the flight lands.
  CHECK(st.crew_start[0].airport == 1);
  CHECK(st.crew_start[0].aboard_aircraft == 0);
  CHECK(st.crew_start[0].ready == 180);
}

TEST_CASE("a delay can push a not-yet-departed flight past current_time") {
  ProblemInstance pi = chain_instance();
  pi.anchors.current_time = 110;
  pi.anchors.recovery_start = 140;
  pi.disruptions.push_back(delay("F1", 30));
  auto st = apply_disruptions(pi);
  // Published 100 < 110, but the disruption moves it to 130: still ours.
  CHECK_FALSE(st.fs(0).fixed_past);
  CHECK(st.fs(0).departure == 130);
}

TEST_CASE("flights beyond the horizon are fixed_future") {
  ProblemInstance pi = chain_instance();
  pi.anchors.recovery_finish = 350;
  auto st = apply_disruptions(pi);
  CHECK_FALSE(st.fs(1).fixed_future);
  CHECK(st.fs(2).fixed_future);
}

TEST_CASE("slot change rewrites capacity") {
  ProblemInstance pi = chain_instance();
  Slot s;
  s.id = "S1";
  s.airport = "AAA";
  s.window_start = 0;
  s.window_end = 500;
  s.capacity = 10;
  s.nonuse_penalty = 0;
  pi.slots.push_back(s);
  Disruption d;
  d.kind = DisruptionKind::SlotChange;
  d.target = "S1";
  d.new_capacity = 3;
  pi.disruptions.push_back(d);
  auto st = apply_disruptions(pi);
  CHECK(st.slots[0].capacity == 3);
  CHECK(st.instance.slots[0].capacity == 10);
}

TEST_CASE("baseline schedule reflects the disrupted state") {
  ProblemInstance pi = chain_instance();
  pi.disruptions.push_back(delay("F1", 90));
  auto st = apply_disruptions(pi);
  auto s = baseline_schedule(st);
  CHECK(s.flights[0].departure == 190);
  CHECK(s.flights[1].departure == 240);
  CHECK_FALSE(s.flights[0].cancelled);
  CHECK(s.flights[0].aircraft == 0);
  CHECK(s.flights[0].crew == 0);
}

TEST_CASE("checker rejects the broken baseline and accepts the repaired plan") {
  ProblemInstance pi = chain_instance();
  pi.disruptions.push_back(delay("F1", 90));
  auto st = apply_disruptions(pi);
  auto s = baseline_schedule(st);

  auto vs = check_feasibility(st, s);
  bool saw_gap = false;
  for (const auto& v : vs) {
    if (v.rule == "rotation-overlap" || v.rule == "rotation-gap") saw_gap = true;
  }
  CHECK(saw_gap);

  // Push F2 and F3 back far enough and it is a legal plan again.
  s.flights[1].departure = 300;  // F1 lands 270 + 30 turnaround
  s.flights[2].departure = 440;  // F2 lands 380 + 30
  CHECK(check_feasibility(st, s).empty());

  // 90 + 60 + 60 minutes of delay at 10 per minute.
  CHECK(schedule_cost(st, s) == doctest::Approx(2100.0));
}

TEST_CASE("checker flags advanced departures and the delay bracket") {
  ProblemInstance pi = chain_instance();
  auto st = apply_disruptions(pi);
  auto s = baseline_schedule(st);

  s.flights[2].departure = 370;  // earlier than published
  bool advanced = false;
  for (const auto& v : check_feasibility(st, s))
    if (v.rule == "advanced-departure") advanced = true;
  CHECK(advanced);

  s = baseline_schedule(st);
  s.flights[2].departure = 380 + 200;  // beyond max_delay
  bool bracket = false;
  for (const auto& v : check_feasibility(st, s))
    if (v.rule == "max-delay-exceeded") bracket = true;
  CHECK(bracket);
}

TEST_CASE("cancelling a flight costs the flat charge") {
  ProblemInstance pi = chain_instance();
  auto st = apply_disruptions(pi);
  auto s = baseline_schedule(st);
  s.flights[2].cancelled = true;
  CHECK(check_feasibility(st, s).empty());
  CHECK(schedule_cost(st, s) == doctest::Approx(50000.0));
}

TEST_CASE("forced cancellations cost nothing") {
  ProblemInstance pi = chain_instance();
  Disruption d;
  d.kind = DisruptionKind::FlightCancellation;
  d.target = "F3";
  pi.disruptions.push_back(d);
  auto st = apply_disruptions(pi);
  auto s = baseline_schedule(st);
  CHECK(s.flights[2].cancelled);
  CHECK(check_feasibility(st, s).empty());
  CHECK(schedule_cost(st, s) == doctest::Approx(0.0));
}

TEST_CASE("duty limit counts scheduled minutes only") {
  ProblemInstance pi = chain_instance();
  pi.crews[0].flight_time_limit = 200;  // three 80 minute legs exceed this
  auto st = apply_disruptions(pi);
  auto s = baseline_schedule(st);
  bool duty = false;
  for (const auto& v : check_feasibility(st, s))
    if (v.rule == "duty-limit") duty = true;
  CHECK(duty);

  s.flights[2].cancelled = true;  // 160 minutes flown, inside the limit
  CHECK(check_feasibility(st, s).empty());
}

TEST_CASE("feedback lists solver cancellations and heavy delays") {
  ProblemInstance pi = chain_instance();
  pi.disruptions.push_back(delay("F1", 90));
  auto st = apply_disruptions(pi);
  auto s = baseline_schedule(st);
  s.flights[1].departure = 300;
  s.flights[2].cancelled = true;
  auto fb = collect_feedback(st, s, 60);
  CHECK(fb.cancelled_flights == std::vector<int>{2});
  // F1 is 90 late, F2 is 60 late.
  CHECK(fb.heavily_delayed == std::vector<int>{0, 1});
}

TEST_CASE("cancelling one leg of a through service cancels the rest") {
  ProblemInstance pi = chain_instance();
  pi.flights[0].multileg_group = "M1";
  pi.flights[1].multileg_group = "M1";
  pi.flights[1].leg_index = 1;
  Disruption d;
  d.kind = DisruptionKind::FlightCancellation;
  d.target = "F2";
  pi.disruptions.push_back(d);
  auto st = apply_disruptions(pi);
  CHECK(st.fs(0).forced_cancel);
  CHECK(st.fs(1).forced_cancel);
  // The standalone tail flight is stranded but not cancelled.
  CHECK_FALSE(st.fs(2).forced_cancel);
  CHECK(st.fs(2).disrupted);
}

TEST_CASE("skipped maintenance pulls the aircraft out of service at its deadline") {
  ProblemInstance pi = chain_instance();
  Maintenance mx;
  mx.id = "MX1";
  mx.aircraft = "AC1";
  mx.duration = 120;
  mx.allowed_windows.push_back({"AAA", 200, 330});
  mx.fail_penalty = 120000;
  pi.maintenances.push_back(mx);
  auto st = apply_disruptions(pi);

  auto s = baseline_schedule(st);
  s.maints[0].performed = false;
  bool hit = false;
  for (const auto& v : check_feasibility(st, s))
    if (v.rule == "maintenance-deadline") hit = true;
  CHECK(hit);

  // Keeping only F1 releases the aircraft at 210, inside the deadline.
  s.flights[1].cancelled = true;
  s.flights[2].cancelled = true;
  CHECK(check_feasibility(st, s).empty());
  CHECK(schedule_cost(st, s) == doctest::Approx(2 * 50000 + 120000));

  // Performing it instead: keep the aircraft at AAA until the work is done.
  auto s2 = baseline_schedule(st);
  s2.flights[0].cancelled = true;
  s2.flights[1].cancelled = true;
  s2.maints[0].performed = true;
  s2.maints[0].airport = 0;
  s2.maints[0].start = 200;
  CHECK(check_feasibility(st, s2).empty());
}

TEST_CASE("slot overflow from already-flown departures is sunk, not a violation") {
  ProblemInstance pi = chain_instance();
  pi.anchors.current_time = 200;  // F1 (dep 100) has flown
  pi.anchors.recovery_start = 230;
  Slot sl;
  sl.id = "S1";
  sl.airport = "AAA";
  sl.window_start = 50;
  sl.window_end = 450;
  sl.capacity = 2;
  pi.slots.push_back(sl);
  Disruption d;
  d.kind = DisruptionKind::SlotChange;
  d.target = "S1";
  d.new_capacity = 0;
  pi.disruptions.push_back(d);
  auto st = apply_disruptions(pi);

  auto has_cap = [&](const RecoverySchedule& s) {
    for (const auto& v : check_feasibility(st, s))
      if (v.rule == "slot-capacity") return true;
    return false;
  };
  auto s = baseline_schedule(st);
  // F3 still wants to leave AAA at 380 inside the dead window: that is live.
  CHECK(has_cap(s));
  s.flights[2].cancelled = true;  // only the flown departure remains
  CHECK_FALSE(has_cap(s));
}
