#pragma once

#include <vector>

#include "airs/model.hpp"

namespace airs {

struct JourneySegment {
    int flight = -1;
    CabinClass cabin = CabinClass::Economy;
    bool operator==(const JourneySegment&) const = default;
};

// A block of passengers from one itinerary travelling the same way.
struct Booking {
    int count = 0;
    std::vector<JourneySegment> segments;
};

struct ItineraryAssignment {
    std::vector<Booking> bookings;
    int unassigned = 0; // passengers left without a journey (counted cancelled)
};

// Full passenger re-accommodation for one recovered schedule.
struct PassengerAssignment {
    std::vector<ItineraryAssignment> itins; // by itinerary index

    // Merge same-path bookings, drop empties, order deterministically.
    void normalize();
};

// The untouched plan: everyone on their original legs and cabins.
PassengerAssignment original_assignment(const ProblemInstance& pi, const InstanceIndex& ix);

bool same_assignment(const PassengerAssignment& a, const PassengerAssignment& b);

} // namespace airs
