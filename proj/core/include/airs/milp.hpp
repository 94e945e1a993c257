#pragma once

#include <limits>
#include <string>
#include <vector>

#include "airs/tsn.hpp"

namespace airs {

enum class ConstraintTag { FlowBalance, UniqueDecision, SlotCapacity, CrewDuty };

const char* constraint_tag_name(ConstraintTag t);

struct LinTerm {
    int var = -1;
    double coef = 0.0;
};

struct LinConstraint {
    ConstraintTag tag = ConstraintTag::FlowBalance;
    bool equality = false; // otherwise sum <= rhs
    std::vector<LinTerm> terms;
    double rhs = 0.0;
    std::string name;
};

struct MilpVar {
    std::string name;
    bool integral = true;
    double lower = 0.0;
    double upper = 1.0;
    double cost = 0.0; // objective coefficient, minimized
};

// Solver-agnostic model.  Variable indices below decision_count coincide with
// TimeSpaceNetwork::vars; slot nonuse variables are appended after them.
struct MilpModel {
    std::vector<MilpVar> vars;
    std::vector<LinConstraint> constraints;
    int decision_count = 0;
    std::vector<int> slot_nonuse; // per SlotChoice, index into vars

    // Partial assignment: empty, or one entry per variable with -1 = unset.
    std::vector<double> warm_start;
    double warm_objective = std::numeric_limits<double>::infinity();
    std::vector<std::string> warm_notes; // selections that could not be mapped
};

// Builds the four constraint families over the network:
//   flow balance per node (equality on strict sub-thread nodes),
//   one decision per option group,
//   slot usage + nonuse = remaining capacity,
//   block minutes per crew within its limit.
// Throws std::runtime_error on a group whose decision expression is empty.
MilpModel encode(const TimeSpaceNetwork& tsn, const SearchSpace& sp, const DisruptedState& st);

// Maps a schedule onto option variables: matched selections enter warm_start
// (chosen 1, group complements 0) and, when every group maps and the flows
// route, the start is completed to a full assignment with its objective.
// Unmatched selections are skipped and listed in warm_notes.
void warm_start_from(const RecoverySchedule& schedule, const TimeSpaceNetwork& tsn,
                     const SearchSpace& sp, const DisruptedState& st, MilpModel& model);

// Objective of an assignment; entries < 0 (unset) contribute nothing.
double objective_value(const MilpModel& model, const std::vector<double>& values);

// LP interchange text: Minimize / Subject To / Bounds / Binaries / End.
// Variable names and ordering are deterministic, see docs/lp-format.md.
std::string export_model(const MilpModel& model);

} // namespace airs
