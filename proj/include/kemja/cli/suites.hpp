#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kemja/io/random.hpp"
#include "kemja/reductions/reductions.hpp"

namespace kemja {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    bool pass() const;
    std::string str() const;   // one line per check, then a summary
    std::string json() const;
};

struct SuiteConfig {
    EngineConfig engine;
    std::optional<double> timeout_s;  // per case
    std::uint64_t seed = 0;
    std::size_t count = 20;           // random instances
    RandomParams params;
};

// The sixteen decider runs on one random instance: five manipulation modes,
// five bribery modes, both attitudes of exact manipulation, exact bribery and
// control by adding.
std::vector<std::string> battery_names();
std::vector<Verdict> decider_battery(const RandomInstance& ri, const EngineConfig& cfg);

// ledger: every proof claim for (n,m) in {1,2,3} x {1,2} and the three gadgets.
SuiteReport ledger_suite(const SuiteConfig& cfg);
// equivalence: built-in exists-forall corpus through the three reductions.
SuiteReport equivalence_suite(const SuiteConfig& cfg);
// engines: brute and oracle agree on Kemeny and every decider.
SuiteReport engines_suite(const SuiteConfig& cfg);
// lattice: the mode implications on decider outputs.
SuiteReport lattice_suite(const SuiteConfig& cfg);

std::vector<QbfInstance> builtin_qbf_corpus();

}  // namespace kemja
