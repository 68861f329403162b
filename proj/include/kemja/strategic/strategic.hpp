#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kemja/ja/agenda.hpp"
#include "kemja/kemeny/kemeny.hpp"

namespace kemja {

enum class Mode { Cautious, Optimistic, Pessimistic, Superoptimistic, Safe };
enum class Attitude { CautiousAll, BraveSome };
enum class ControlDirection { Add, Delete };

const char* mode_name(Mode m);
const char* attitude_name(Attitude a);
std::optional<Mode> parse_mode(const std::string& s);
std::optional<Attitude> parse_attitude(const std::string& s);
inline constexpr Mode kAllModes[] = {Mode::Cautious, Mode::Optimistic, Mode::Pessimistic, Mode::Superoptimistic,
                                     Mode::Safe};

// Quantifier pattern on the weighted distances of new and old outcomes.
bool mode_holds(Mode m, std::uint64_t min_new, std::uint64_t max_new, std::uint64_t min_old, std::uint64_t max_old);

// The manipulator is row 0.
struct ManipulationInstance {
    Formula gamma;
    Profile profile;
    WeightFunction weights;
    std::vector<Formula> target;  // exact variant
};

struct BriberyInstance {
    Formula gamma;
    Profile profile;
    WeightFunction weights;
    JudgmentSet desired;
    std::size_t budget = 0;
    std::vector<Formula> target;  // exact variant
};

struct ControlInstance {
    Formula gamma;
    Profile profile;
    std::vector<std::size_t> fixed;  // pre-agenda positions of the fixed part
    std::vector<Formula> target;
    ControlDirection direction = ControlDirection::Add;
};

struct Witness {
    std::optional<JudgmentSet> reported;   // manipulation
    std::vector<std::size_t> rows;         // bribery: bribed row indices
    std::vector<JudgmentSet> replacements;  // bribery: one per bribed row
    std::vector<std::size_t> selection;    // control: chosen pre-agenda positions
    std::optional<JudgmentSet> outcome;    // an achieved new Kemeny outcome
};

struct Diagnostics {
    std::optional<std::uint64_t> d_win_old, d_min_old, d_max_old, d_win_new;
    std::uint64_t sat_calls = 0;
    std::uint64_t candidates = 0;
    Engine engine = Engine::Oracle;
    double elapsed_ms = 0;
};

struct Verdict {
    bool answer = false;
    std::string problem;
    std::string mode;
    std::optional<Witness> witness;
    Diagnostics diag;
    std::string reason;
};

Verdict decide_manipulation(const ManipulationInstance& inst, Mode mode, const EngineConfig& cfg = {});
Verdict decide_exact_manipulation(const ManipulationInstance& inst, Attitude att, const EngineConfig& cfg = {});
Verdict decide_bribery(const BriberyInstance& inst, Mode mode, const EngineConfig& cfg = {});
Verdict decide_exact_bribery(const BriberyInstance& inst, Attitude att, const EngineConfig& cfg = {});
Verdict decide_control(const ControlInstance& inst, Attitude att, const EngineConfig& cfg = {});

// Recompute the outcome sets for a witness and re-evaluate the condition.
bool certify_manipulation(const ManipulationInstance& inst, Mode mode, const JudgmentSet& reported,
                          const EngineConfig& cfg = {});
bool certify_exact_manipulation(const ManipulationInstance& inst, Attitude att, const JudgmentSet& reported,
                                const EngineConfig& cfg = {});
bool certify_bribery(const BriberyInstance& inst, Mode mode, const Witness& w, const EngineConfig& cfg = {});
bool certify_exact_bribery(const BriberyInstance& inst, Attitude att, const Witness& w,
                           const EngineConfig& cfg = {});
bool certify_control(const ControlInstance& inst, Attitude att, const std::vector<std::size_t>& selection,
                     const EngineConfig& cfg = {});

}  // namespace kemja
