#pragma once

#include <cstddef>
#include <vector>

#include "airs/disruption.hpp"
#include "airs/schedule.hpp"

namespace airs {

enum class OptionKind {
    Scheduled,
    Canceled,
    SucceedingMaintenance,
    FailingMaintenance,
};

const char* option_kind_name(OptionKind k);

// One selectable choice for a flight or maintenance group.  `cost` is the
// objective coefficient on this option's binary decision variable.
struct OptionChoice {
    OptionKind kind = OptionKind::Scheduled;
    int entity = -1;   // flight index, or maintenance index for the two
                       // maintenance kinds
    Minutes time = kNoTime; // Scheduled departure / maintenance start
    int aircraft = -1;      // Scheduled only
    int crew = -1;          // Scheduled only
    int airport = -1;       // SucceedingMaintenance placement
    double cost = 0.0;
};

// Tuning for option emission.
struct SpaceParams {
    Minutes granularity = 15;   // delay grid step
    int budget = 0;             // 0 = derive from instance size
    Minutes swap_radius = 240;  // how far back to look for swap partners
    int max_swap_partners = 4;  // per disrupted flight and resource kind
    int maint_places = 6;       // Succeeding placements per maintenance
    Minutes big_delay = 60;     // feedback threshold: delay that counts as heavy
};

// All options the MILP may select from, grouped per entity.  A flight with an
// empty group is out of the model (already flown).  Groups are kept sorted by
// a canonical key so option ordinals are stable run to run.
struct SearchSpace {
    std::vector<std::vector<OptionChoice>> flights; // by flight index
    std::vector<std::vector<OptionChoice>> maints;  // by maintenance index
    int iteration = 0;

    std::size_t option_count() const {
        std::size_t n = 0;
        for (const auto& g : flights) n += g.size();
        for (const auto& g : maints) n += g.size();
        return n;
    }
};

// Objective coefficient of one option: total delay minutes against the
// published departure, the cancellation charge, or the failure penalty.
double option_cost(const DisruptedState& st, const OptionChoice& c);

int default_budget(const DisruptedState& st);

// First-iteration space: every in-model flight gets Canceled plus the
// as-planned copy when it is physically operable; disrupted flights and
// their rotation successors get delayed copies on the grid; swaps are
// emitted only around disruptions; each maintenance gets placements plus
// its Failing slack.
SearchSpace build_initial_space(const DisruptedState& st, const SpaceParams& p);

// Grows the space where the last solution hurt: delay grids and wider swap
// rings for cancelled flights, extra partners for heavy delays, more
// placements for failed maintenances.  Never removes an option.  Returns
// true when anything was added.
bool expand_space(SearchSpace& sp, const DisruptedState& st, const SolutionFeedback& fb,
                  const SpaceParams& p);

} // namespace airs
