#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kemja/logic/qbf.hpp"
#include "kemja/strategic/strategic.hpp"

namespace kemja {

enum class GadgetKind { Manipulation, Bribery, Control };
const char* gadget_name(GadgetKind k);
std::optional<GadgetKind> parse_gadget(const std::string& s);

struct GadgetOptions {
    std::optional<std::size_t> u;  // overriding taints the instance
    std::size_t dnf_guard = 512;   // control: term limit for the matrix DNF
};

struct GadgetInstance {
    GadgetKind kind = GadgetKind::Manipulation;
    QbfInstance qbf;  // renamed to x_i / y_j, padded
    std::size_t n = 0, m = 0, u = 0;
    std::size_t padding = 0;  // dummy existential variables appended
    bool tainted = false;

    // exactly one of these is set; target carries the exact-variant L
    std::optional<ManipulationInstance> manipulation;
    std::optional<BriberyInstance> bribery;
    std::optional<ControlInstance> control;

    std::map<std::string, std::vector<std::string>> families;

    const AgendaPtr& agenda() const;
    const Formula& gamma() const;
    const Profile& profile() const;
};

GadgetInstance build_manipulation_gadget(const QbfInstance& q, const GadgetOptions& opt = {});
GadgetInstance build_bribery_gadget(const QbfInstance& q, const GadgetOptions& opt = {});
GadgetInstance build_control_gadget(const QbfInstance& q, const GadgetOptions& opt = {});
GadgetInstance build_gadget(GadgetKind k, const QbfInstance& q, const GadgetOptions& opt = {});

// Replaces the integrity constraint by clause agenda items: `variants` copies
// of gamma are Tseitin encoded with their own auxiliaries and every row
// accepts every clause. The default count is floor(p*N/(p-2))+1 for p >= 3
// agents and N pre-agenda formulas, which keeps the Kemeny outcomes on the
// original positions unchanged.
ManipulationInstance three_clause_transform(const ManipulationInstance& inst,
                                            std::optional<std::size_t> variants = std::nullopt);
std::size_t default_variant_count(const ManipulationInstance& inst);

struct LedgerEntry {
    std::string label;
    std::string claim;       // closed form or statement
    bool distance = false;   // numeric distance claim
    std::string expected;    // instantiated claim
    std::string observed;    // recomputed
    bool pass = false;
};

struct ProofLedger {
    std::vector<LedgerEntry> entries;
    bool all_pass() const;
    bool distances_pass() const;
    std::string str() const;  // one line per entry
};

// Rebuilds the named judgment sets of the proof for one alpha and beta and
// re-derives every claim. Throws InvalidInstance on a tainted gadget.
ProofLedger verify_proof_ledger(const GadgetInstance& g, const SolverConfig& cfg = {});

// Every consistent set satisfies one of the four listed conditions
// (manipulation and bribery gadgets). One SAT call; valid for any u.
bool check_case_analysis(const GadgetInstance& g, const SolverConfig& cfg = {});

struct EquivalenceResult {
    bool consistent = false;
    bool qbf = false;
    std::vector<bool> answers;  // one per decider run
    std::string detail;
};

EquivalenceResult reduction_equivalence_check(const QbfInstance& q, GadgetKind which, const EngineConfig& cfg = {});

}  // namespace kemja
