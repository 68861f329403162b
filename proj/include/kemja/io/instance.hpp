#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kemja/io/random.hpp"
#include "kemja/logic/qbf.hpp"
#include "kemja/reductions/reductions.hpp"
#include "kemja/strategic/strategic.hpp"

namespace kemja {

// Malformed instance file.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Framework { Formula, Constraint, ConstraintExtended };
const char* framework_name(Framework f);

// Everything an instance file can carry. Constraint instances keep their
// issues as the (atomic) pre-agenda.
struct Instance {
    Framework framework = Framework::Formula;
    Formula gamma = Formula::top();
    Profile profile;
    WeightFunction weights;
    std::optional<JudgmentSet> desired;
    std::optional<std::size_t> budget;
    std::optional<std::vector<std::size_t>> fixed;
    std::vector<Formula> target;  // may name formulas outside the agenda
    std::string metadata;         // JSON object text, kept verbatim

    const AgendaPtr& agenda() const { return profile.agenda(); }

    ManipulationInstance manipulation() const;
    BriberyInstance bribery() const;  // needs desired_set and budget_k
    ControlInstance control(ControlDirection d) const;  // needs fixed_agenda
};

Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
// Byte-stable: same instance, same text.
std::string write_instance(const Instance& inst);

Instance instance_of(const GadgetInstance& g);
Instance instance_of(const ManipulationInstance& m);
Instance instance_of(const RandomInstance& r);

struct Provenance {
    std::string command;
    Engine engine = Engine::Oracle;
    std::string solver;  // "internal" or the external path
    std::size_t cap = 0;
    std::optional<double> timeout_s;
    std::uint64_t seed = 0;
    bool timing = false;
};

// JSON object text for a verdict; timings only with prov.timing.
std::string verdict_json(const Verdict& v, const Instance& inst, const Provenance& prov);
std::string verdict_human(const Verdict& v, const Instance& inst, const Provenance& prov);

}  // namespace kemja
