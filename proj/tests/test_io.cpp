#include <doctest.h>

#include <airs/change_orders.hpp>
#include <airs/disruption.hpp>
#include <airs/io.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

using namespace airs;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("airs_io_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

ProblemInstance rich_instance() {
  ProblemInstance pi;
  pi.anchors.current_time = 50;
  pi.anchors.recovery_start = 80;
  pi.anchors.recovery_finish = 1600;
  pi.anchors.max_delay = 180;
  pi.cost.delay_per_minute = 10;
  pi.cost.cancellation_per_flight = 50000;

  pi.airports.push_back({"HUB", 35, 20, 25});
  pi.airports.push_back({"AAA", 30, 20, 25});
  pi.airports.push_back({"BBB", 30, 20, 25});

  pi.aircraft.push_back({"AC1", "HUB", 0});
  pi.aircraft.push_back({"AC2", "AAA", 10});

  pi.crews.push_back({"CR1", "HUB", 0, 540});
  pi.crews.push_back({"CR2", "AAA", 0, 480});

  SeatCapacity cap;
  cap.seats = {120, 16, 8};
  pi.flights.push_back({"F1", "HUB", "AAA", 100, 90, "AC1", "CR1", "", 0, cap});
  pi.flights.push_back({"F2", "AAA", "BBB", 240, 60, "AC1", "CR1", "M1", 0, cap});
  pi.flights.push_back({"F3", "BBB", "HUB", 330, 70, "AC1", "CR1", "M1", 1, cap});
  pi.flights.push_back({"F4", "AAA", "HUB", 200, 90, "AC2", "CR2", "", 0, cap});

  Maintenance m;
  m.id = "MX1";
  m.aircraft = "AC2";
  m.duration = 100;
  m.allowed_windows.push_back({"HUB", 300, 1200});
  m.allowed_windows.push_back({"AAA", 400, 900});
  m.fail_penalty = 90000;
  pi.maintenances.push_back(m);

  Slot s;
  s.id = "S1";
  s.airport = "HUB";
  s.window_start = 60;
  s.window_end = 400;
  s.capacity = 4;
  s.nonuse_penalty = 120.5;
  pi.slots.push_back(s);

  Itinerary it;
  it.id = "I1";
  it.passenger_count = 17;
  it.legs.push_back({"F1", CabinClass::Business});
  it.legs.push_back({"F2", CabinClass::Economy});
  it.cancellation_cost = 410.25;
  it.downgrade_cost = 60;
  it.delay_cost = 1.5;
  pi.itineraries.push_back(it);

  Disruption d1;
  d1.kind = DisruptionKind::FlightDelay;
  d1.target = "F1";
  d1.delay_minutes = 45;
  pi.disruptions.push_back(d1);
  Disruption d2;
  d2.kind = DisruptionKind::AircraftUnavailability;
  d2.target = "AC2";
  d2.window = {500, 650};
  pi.disruptions.push_back(d2);
  Disruption d3;
  d3.kind = DisruptionKind::SlotChange;
  d3.target = "S1";
  d3.new_capacity = 2;
  pi.disruptions.push_back(d3);

  return pi;
}

bool same_instance(const ProblemInstance& a, const ProblemInstance& b) {
  // Equality through the canonical JSON dump keeps this test honest about
  // every field without a hand-written operator==.
  TempDir t;
  write_instance_json(a, t.file("a.json"));
  write_instance_json(b, t.file("b.json"));
  std::ifstream fa(t.file("a.json")), fb(t.file("b.json"));
  std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
  return !sa.empty() && sa == sb;
}

}  // namespace

TEST_CASE("json round trip preserves every field") {
  TempDir t;
  ProblemInstance pi = rich_instance();
  write_instance_json(pi, t.file("inst.json"));
  ProblemInstance back = read_instance_json(t.file("inst.json"));
  CHECK(same_instance(pi, back));
  CHECK(validate_instance(back).size() == validate_instance(pi).size());
}

TEST_CASE("table round trip preserves every field") {
  TempDir t;
  ProblemInstance pi = rich_instance();
  std::string dir = t.file("tables");
  write_instance_tables(pi, dir);
  CHECK(fs::exists(fs::path(dir) / "manifest.json"));
  CHECK(fs::exists(fs::path(dir) / "flights.csv"));
  ProblemInstance back = read_instance_tables(dir);
  CHECK(same_instance(pi, back));
}

TEST_CASE("auto format keys off path shape") {
  TempDir t;
  ProblemInstance pi = rich_instance();
  write_instance(pi, t.file("x.json"));
  CHECK(same_instance(pi, read_instance(t.file("x.json"))));
  std::string dir = t.file("tdir");
  write_instance(pi, dir, InstanceFormat::Tables);
  CHECK(same_instance(pi, read_instance(dir)));
}

TEST_CASE("malformed input raises IoError") {
  TempDir t;
  {
    std::ofstream out(t.file("bad.json"));
    out << "{ not json";
  }
  CHECK_THROWS_AS((void)read_instance_json(t.file("bad.json")), IoError);
  CHECK_THROWS_AS((void)read_instance_json(t.file("missing.json")), IoError);
  CHECK_THROWS_AS((void)read_instance_tables(t.file("nodir")), IoError);

  {
    std::ofstream out(t.file("wrong.json"));
    out << "{\"format\": \"something-else\"}";
  }
  CHECK_THROWS_AS((void)read_instance_json(t.file("wrong.json")), IoError);
}

TEST_CASE("plan diff covers schedule and passenger changes and replays losslessly") {
  ProblemInstance pi = rich_instance();
  auto st = apply_disruptions(pi);
  auto s = baseline_schedule(st);
  auto pax = original_assignment(st.instance, st.index);

  // Hand-modify the plan: delay F2, move F4 to AC1's crew, place MX1,
  // cancel nothing, rebook I1's tail onto F4.
  s.flights[1].departure = 300;
  s.flights[2].departure = 395;
  s.flights[3].crew = 0;
  s.maints[0].performed = true;
  s.maints[0].airport = 1;
  s.maints[0].start = 450;
  pax.itins[0].bookings[0].segments.resize(1);
  Booking moved;
  moved.count = pi.itineraries[0].passenger_count;
  moved.segments.push_back({3, CabinClass::Economy});
  pax.itins[0].bookings.push_back(moved);

  auto orders = diff_orders(st, s, pax);
  REQUIRE_FALSE(orders.empty());

  int delays = 0, crew_swaps = 0, maint = 0, rebook = 0;
  for (const auto& o : orders) {
    if (o.kind == OrderKind::Delay) ++delays;
    if (o.kind == OrderKind::CrewSwap) ++crew_swaps;
    if (o.kind == OrderKind::MaintenancePlacement) ++maint;
    if (o.kind == OrderKind::ItineraryRebooking) ++rebook;
  }
  CHECK(delays == 2);
  CHECK(crew_swaps == 1);
  CHECK(maint == 1);
  CHECK(rebook == 1);

  for (size_t i = 1; i < orders.size(); ++i)
    CHECK(orders[i - 1].effective_time <= orders[i].effective_time);

  RecoverySchedule s2;
  PassengerAssignment pax2;
  apply_orders(st, orders, s2, pax2);
  CHECK(s2.flights[1].departure == 300);
  CHECK(s2.flights[3].crew == 0);
  CHECK(s2.maints[0].performed);
  CHECK(s2.maints[0].airport == 1);
  CHECK(same_assignment(pax, pax2));
}

TEST_CASE("identical plan diffs to an empty order list") {
  ProblemInstance pi = rich_instance();
  auto st = apply_disruptions(pi);
  auto s = baseline_schedule(st);
  auto pax = original_assignment(st.instance, st.index);
  auto orders = diff_orders(st, s, pax);
  // Maintenance is unplaced in the baseline, so the only orders allowed here
  // would be its placement; an unperformed maintenance emits nothing.
  CHECK(orders.empty());
}

TEST_CASE("plan file round trip is byte stable") {
  ProblemInstance pi = rich_instance();
  auto st = apply_disruptions(pi);
  auto s = baseline_schedule(st);
  auto pax = original_assignment(st.instance, st.index);
  s.flights[0].cancelled = true;
  s.maints[0].performed = true;
  s.maints[0].airport = 0;
  s.maints[0].start = 400;
  auto orders = diff_orders(st, s, pax);

  std::string one = plan_to_json(orders);
  auto back = plan_from_json(one);
  std::string two = plan_to_json(back);
  CHECK(one == two);
  CHECK(back.size() == orders.size());

  TempDir t;
  write_plan_file(orders, t.file("plan.json"));
  auto from_file = read_plan_file(t.file("plan.json"));
  CHECK(plan_to_json(from_file) == one);
}
