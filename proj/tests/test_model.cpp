#include <doctest.h>

#include <airs/model.hpp>
#include <airs/time_model.hpp>

#include <algorithm>

using namespace airs;

namespace {

// Small two-aircraft instance used across the checks here. Built by hand so
// each test can break exactly one thing.
ProblemInstance base_instance() {
  ProblemInstance pi;
  pi.anchors.current_time = 0;
  pi.anchors.recovery_start = 60;
  pi.anchors.recovery_finish = 1440;
  pi.anchors.max_delay = 180;
  pi.cost.delay_per_minute = 10;
  pi.cost.cancellation_per_flight = 50000;

  pi.airports.push_back({"AAA", 30, 20, 25});
  pi.airports.push_back({"BBB", 30, 20, 25});
  pi.airports.push_back({"CCC", 30, 20, 25});

  pi.aircraft.push_back({"AC1", "AAA", 0});
  pi.aircraft.push_back({"AC2", "BBB", 0});

  pi.crews.push_back({"CR1", "AAA", 0, 600});
  pi.crews.push_back({"CR2", "BBB", 0, 600});

  SeatCapacity cap;
  cap.seats = {100, 20, 8};
  pi.flights.push_back({"F1", "AAA", "BBB", 120, 90, "AC1", "CR1", "", 0, cap});
  pi.flights.push_back({"F2", "BBB", "AAA", 260, 90, "AC1", "CR1", "", 0, cap});
  pi.flights.push_back({"F3", "BBB", "CCC", 150, 60, "AC2", "CR2", "", 0, cap});
  pi.flights.push_back({"F4", "CCC", "BBB", 300, 60, "AC2", "CR2", "", 0, cap});
  return pi;
}

bool has_rule(const std::vector<Diagnostic>& ds, const std::string& rule) {
  return std::any_of(ds.begin(), ds.end(),
                     [&](const Diagnostic& d) { return d.rule == rule; });
}

}  // namespace

TEST_CASE("clean instance validates without diagnostics") {
  ProblemInstance pi = base_instance();
  auto ds = validate_instance(pi);
  CHECK(ds.empty());
}

TEST_CASE("index maps ids and builds rotations in departure order") {
  ProblemInstance pi = base_instance();
  InstanceIndex ix = build_index(pi);
  CHECK(ix.flight.at("F2") == 1);
  CHECK(ix.aircraft_rotation[ix.aircraft.at("AC1")] == std::vector<int>{0, 1});
  CHECK(ix.aircraft_rotation[ix.aircraft.at("AC2")] == std::vector<int>{2, 3});
  CHECK(ix.crew_rotation[ix.crew.at("CR1")] == std::vector<int>{0, 1});
  CHECK(ix.airport_of("AAA") == 0);
  CHECK(ix.airport_of("ZZZ") == -1);
}

TEST_CASE("anchor ordering is enforced") {
  ProblemInstance pi = base_instance();
  pi.anchors.recovery_start = pi.anchors.recovery_finish + 1;
  auto ds = validate_instance(pi);
  CHECK(has_rule(ds, "anchor-order"));
}

TEST_CASE("duplicate ids are reported per entity type") {
  ProblemInstance pi = base_instance();
  pi.flights.push_back(pi.flights[0]);
  auto ds = validate_instance(pi);
  CHECK(has_rule(ds, "duplicate-id"));
}

TEST_CASE("unknown references are reported") {
  ProblemInstance pi = base_instance();
  pi.flights[0].original_aircraft = "NOPE";
  auto ds = validate_instance(pi);
  CHECK(has_rule(ds, "unknown-aircraft"));

  pi = base_instance();
  pi.flights[0].origin = "ZZZ";
  ds = validate_instance(pi);
  CHECK(has_rule(ds, "unknown-airport"));
}

TEST_CASE("degenerate route and nonpositive duration are reported") {
  ProblemInstance pi = base_instance();
  pi.flights[0].destination = pi.flights[0].origin;
  auto ds = validate_instance(pi);
  CHECK(has_rule(ds, "degenerate-route"));

  pi = base_instance();
  pi.flights[0].duration = 0;
  ds = validate_instance(pi);
  CHECK(has_rule(ds, "duration-nonpositive"));
}

TEST_CASE("multileg groups must be dense, ordered and on one resource pair") {
  ProblemInstance pi = base_instance();
  // Make F3/F4 a two-leg service.
  pi.flights[2].multileg_group = "M1";
  pi.flights[2].leg_index = 0;
  pi.flights[3].multileg_group = "M1";
  pi.flights[3].leg_index = 1;
  CHECK(validate_instance(pi).empty());

  InstanceIndex ix = build_index(pi);
  CHECK(ix.multileg.at("M1") == std::vector<int>{2, 3});

  SUBCASE("gap in leg indices") {
    pi.flights[3].leg_index = 2;
    CHECK(has_rule(validate_instance(pi), "bad-leg-indexing"));
  }
  SUBCASE("single leg group") {
    pi.flights[3].multileg_group = "";
    pi.flights[3].leg_index = 0;
    CHECK(has_rule(validate_instance(pi), "bad-leg-indexing"));
  }
  SUBCASE("legs out of time order") {
    pi.flights[3].sched_departure = 100;
    CHECK(has_rule(validate_instance(pi), "out-of-time-order"));
  }
  SUBCASE("broken airport chain") {
    pi.flights[3].origin = "AAA";
    CHECK(has_rule(validate_instance(pi), "broken-chain"));
  }
  SUBCASE("legs split across aircraft") {
    pi.flights[3].original_aircraft = "AC1";
    CHECK(has_rule(validate_instance(pi), "split-resources"));
  }
}

TEST_CASE("maintenance checks") {
  ProblemInstance pi = base_instance();
  Maintenance m;
  m.id = "MX1";
  m.aircraft = "AC1";
  m.duration = 120;
  m.allowed_windows.push_back({"AAA", 400, 900});
  m.fail_penalty = 80000;
  pi.maintenances.push_back(m);
  CHECK(validate_instance(pi).empty());

  SUBCASE("window at unknown airport") {
    pi.maintenances[0].allowed_windows[0].airport = "ZZZ";
    CHECK(has_rule(validate_instance(pi), "unknown-airport"));
  }
  SUBCASE("inverted window") {
    pi.maintenances[0].allowed_windows[0].latest_start = 100;
    CHECK(has_rule(validate_instance(pi), "window-inverted"));
  }
  SUBCASE("penalty below cancellation cost") {
    pi.maintenances[0].fail_penalty = 10;
    CHECK(has_rule(validate_instance(pi), "penalty-too-low"));
  }
}

TEST_CASE("itinerary legs must chain in space and time") {
  ProblemInstance pi = base_instance();
  Itinerary it;
  it.id = "I1";
  it.passenger_count = 5;
  it.legs.push_back({"F1", CabinClass::Economy});
  it.legs.push_back({"F4", CabinClass::Economy});  // BBB arrival, CCC departure
  it.cancellation_cost = 300;
  it.downgrade_cost = 50;
  it.delay_cost = 1;
  pi.itineraries.push_back(it);
  CHECK(has_rule(validate_instance(pi), "broken-chain"));

  pi.itineraries[0].legs[1] = {"F2", CabinClass::Economy};
  CHECK(validate_instance(pi).empty());

  pi.flights[1].sched_departure = 130;  // departs before F1 lands
  CHECK(has_rule(validate_instance(pi), "out-of-time-order"));
}

TEST_CASE("aircraft grounding overlapping a flight is a note, not an error") {
  ProblemInstance pi = base_instance();
  Disruption d;
  d.kind = DisruptionKind::AircraftUnavailability;
  d.target = "AC1";
  d.window = {100, 200};
  pi.disruptions.push_back(d);
  auto ds = validate_instance(pi);
  REQUIRE(has_rule(ds, "unavailability-conflict"));
  for (const auto& diag : ds) {
    if (diag.rule == "unavailability-conflict") CHECK(diag.severity == "note");
  }
  CHECK_FALSE(has_errors(ds));
}

TEST_CASE("disruption targets must exist") {
  ProblemInstance pi = base_instance();
  Disruption d;
  d.kind = DisruptionKind::FlightDelay;
  d.target = "F9";
  d.delay_minutes = 30;
  pi.disruptions.push_back(d);
  CHECK(has_rule(validate_instance(pi), "unknown-flight"));
}

TEST_CASE("minute formatting uses day prefix") {
  CHECK(format_minutes(0) == "00:00");
  CHECK(format_minutes(455) == "07:35");
  CHECK(format_minutes(1440 + 61) == "d1 01:01");
}
