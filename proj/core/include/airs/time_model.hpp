#pragma once

#include <cstdint>
#include <string>

namespace airs {

// All schedule times are integer minutes since the instance epoch.
using Minutes = std::int64_t;

constexpr Minutes kNoTime = -1;

// Half-open interval [start, end).
struct Interval {
    Minutes start = 0;
    Minutes end = 0;

    bool contains(Minutes t) const { return t >= start && t < end; }
    bool overlaps(const Interval& o) const { return start < o.end && o.start < end; }
    Minutes length() const { return end - start; }
};

// "d2 07:35" style rendering for plots and logs.
std::string format_minutes(Minutes t);

} // namespace airs
