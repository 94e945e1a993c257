#include "airs/paxr_types.hpp"

#include <algorithm>
#include <map>

namespace airs {

void PassengerAssignment::normalize() {
    for (auto& ia : itins) {
        std::map<std::vector<std::pair<int, int>>, int> merged;
        for (const auto& b : ia.bookings) {
            if (b.count <= 0) continue;
            std::vector<std::pair<int, int>> key;
            key.reserve(b.segments.size());
            for (const auto& s : b.segments) key.emplace_back(s.flight, (int)s.cabin);
            merged[key] += b.count;
        }
        ia.bookings.clear();
        for (const auto& [key, count] : merged) {
            Booking b;
            b.count = count;
            for (const auto& [f, c] : key) b.segments.push_back({f, (CabinClass)c});
            ia.bookings.push_back(std::move(b));
        }
    }
}

PassengerAssignment original_assignment(const ProblemInstance& pi, const InstanceIndex& ix) {
    PassengerAssignment pax;
    pax.itins.resize(pi.itineraries.size());
    for (int i = 0; i < (int)pi.itineraries.size(); ++i) {
        const Itinerary& it = pi.itineraries[i];
        Booking b;
        b.count = it.passenger_count;
        for (const auto& leg : it.legs) {
            int f = ix.flight_of(leg.flight);
            b.segments.push_back({f, leg.cabin});
        }
        pax.itins[i].bookings.push_back(std::move(b));
    }
    return pax;
}

bool same_assignment(const PassengerAssignment& a, const PassengerAssignment& b) {
    if (a.itins.size() != b.itins.size()) return false;
    PassengerAssignment x = a, y = b;
    x.normalize();
    y.normalize();
    for (std::size_t i = 0; i < x.itins.size(); ++i) {
        if (x.itins[i].unassigned != y.itins[i].unassigned) return false;
        if (x.itins[i].bookings.size() != y.itins[i].bookings.size()) return false;
        for (std::size_t k = 0; k < x.itins[i].bookings.size(); ++k) {
            const Booking& p = x.itins[i].bookings[k];
            const Booking& q = y.itins[i].bookings[k];
            if (p.count != q.count || p.segments != q.segments) return false;
        }
    }
    return true;
}

} // namespace airs
