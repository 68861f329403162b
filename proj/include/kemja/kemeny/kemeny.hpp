#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kemja/ja/agenda.hpp"
#include "kemja/ja/ops.hpp"
#include "kemja/logic/cnf.hpp"
#include "kemja/logic/pb.hpp"
#include "kemja/logic/sat.hpp"

namespace kemja {

enum class Engine { Brute, Oracle };
const char* engine_name(Engine e);

struct EngineConfig {
    Engine engine = Engine::Oracle;
    SolverConfig solver;
    std::size_t outcome_cap = 1024;  // materialised Kemeny outcomes
    std::size_t enum_cap = kDefaultEnumerationCap;  // brute-force judgment sets
};

// Cost of judging phi_i true / false, summed over the positions. For a
// profile these are the numbers of rows that disagree.
struct PositionCosts {
    std::vector<std::uint64_t> if_true, if_false;

    static PositionCosts of(const Profile& p);
    PositionCosts& add(const JudgmentSet& j, std::uint64_t times = 1);
    PositionCosts& remove(const JudgmentSet& j, std::uint64_t times = 1);
    // zero the cost of every position with mask[i] == false
    PositionCosts masked(const std::vector<bool>& mask) const;

    std::uint64_t of(const BitVec& b) const;
    std::uint64_t base() const;  // sum of per-position minima
};

struct KemenyResult {
    std::vector<JudgmentSet> outcomes;  // lexicographic
    std::uint64_t d_win = 0;
    bool truncated = false;
    std::uint64_t sat_calls = 0;
};

enum class Extreme { Min, Max };

struct OutcomePredicate {
    enum class Kind { WeightedDistGeq, WeightedDistLt, MissingConclusion, IncludesConclusions };
    Kind kind;
    JudgmentSet ref;
    WeightFunction w;
    std::uint64_t threshold = 0;
    Conclusions target;

    static OutcomePredicate weighted_dist_geq(JudgmentSet ref, WeightFunction w, std::uint64_t t) {
        return {Kind::WeightedDistGeq, std::move(ref), std::move(w), t, {}};
    }
    static OutcomePredicate weighted_dist_lt(JudgmentSet ref, WeightFunction w, std::uint64_t t) {
        return {Kind::WeightedDistLt, std::move(ref), std::move(w), t, {}};
    }
    static OutcomePredicate missing_conclusion(Conclusions l) {
        return {Kind::MissingConclusion, {}, {}, 0, std::move(l)};
    }
    static OutcomePredicate includes_conclusions(Conclusions l) {
        return {Kind::IncludesConclusions, {}, {}, 0, std::move(l)};
    }

    bool holds(const JudgmentSet& j) const;
};

// Incremental SAT view of one aggregation problem: the consistent judgment
// sets over an agenda under gamma, scored by position costs.
class KemenyOracle {
public:
    KemenyOracle(AgendaPtr agenda, const Formula& gamma, PositionCosts costs, const SolverConfig& cfg = {});

    std::uint64_t min_distance();  // throws Infeasible
    JudgmentSet some_outcome();
    KemenyResult outcomes(std::size_t cap);
    std::uint64_t extreme(const JudgmentSet& ref, const WeightFunction& w, Extreme e);
    std::optional<JudgmentSet> find_outcome(const OutcomePredicate& p);

    std::uint64_t sat_calls() const { return solver_->calls(); }
    const PositionCosts& costs() const { return costs_; }
    const AgendaPtr& agenda() const { return agenda_; }

private:
    JudgmentSet model_set() const;
    std::optional<JudgmentSet> solve_with(std::vector<int> assumptions);
    // smallest value of the counted sum among outcomes; counter covers [0, hi]
    std::uint64_t minimise(const std::vector<std::pair<int, std::uint64_t>>& terms, std::uint64_t hi,
                           const std::function<std::uint64_t(const BitVec&)>& value);

    AgendaPtr agenda_;
    PositionCosts costs_;
    std::unique_ptr<SatOracle> solver_;
    TseitinEncoder enc_;
    std::vector<int> lits_;
    std::optional<std::uint64_t> d_win_;
    std::optional<JudgmentSet> best_;
    std::unique_ptr<WeightedCounter> dist_;
    int win_lit_ = 0;  // assumption enforcing distance == d_win
};

// Brute-force view: every consistent set is materialised.
class KemenyTable {
public:
    KemenyTable(AgendaPtr agenda, const Formula& gamma, std::size_t cap = kDefaultEnumerationCap);
    explicit KemenyTable(std::vector<JudgmentSet> sets);

    const std::vector<JudgmentSet>& sets() const { return sets_; }
    KemenyResult outcomes(const PositionCosts& c) const;
    std::vector<std::size_t> outcome_indices(const PositionCosts& c, std::uint64_t* d_win = nullptr) const;

private:
    std::vector<JudgmentSet> sets_;
};

KemenyResult kemeny(const Profile& p, const Formula& gamma, const EngineConfig& cfg = {});
std::uint64_t min_distance_to_profile(const Profile& p, const Formula& gamma, const EngineConfig& cfg = {});
std::uint64_t extreme_weighted_distance(const Profile& p, const Formula& gamma, const JudgmentSet& ref,
                                        const WeightFunction& w, Extreme e, const EngineConfig& cfg = {});
bool exists_outcome_with(const Profile& p, const Formula& gamma, const OutcomePredicate& pred,
                         const EngineConfig& cfg = {});

}  // namespace kemja
