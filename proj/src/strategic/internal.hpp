#pragma once

#include <optional>
#include <vector>

#include "kemja/strategic/strategic.hpp"

namespace kemja::detail {

void check_deadline(const EngineConfig& cfg);

// What a new outcome set has to satisfy, independent of the problem type.
struct Goal {
    std::optional<Mode> mode;  // distance modes
    JudgmentSet ref;
    WeightFunction w;
    std::uint64_t min_old = 0, max_old = 0;

    std::optional<Attitude> att;  // exact variants
    Conclusions target;
};

// Search for a set T such that the profile rest + mult copies of T satisfies
// the goal with T among its own outcomes. Returns T when one exists.
std::optional<JudgmentSet> self_report_search(const AgendaPtr& agenda, const Formula& gamma, const PositionCosts& rest,
                                              std::uint64_t mult, const Goal& goal, const EngineConfig& cfg,
                                              Diagnostics& diag);

// Oracle control search; returns the selection when one exists.
std::optional<std::pair<std::vector<std::size_t>, JudgmentSet>> control_search(const ControlInstance& inst,
                                                                               Attitude att,
                                                                               const EngineConfig& cfg,
                                                                               Diagnostics& diag);

}  // namespace kemja::detail
