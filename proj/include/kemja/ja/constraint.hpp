#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kemja/ja/agenda.hpp"
#include "kemja/logic/sat.hpp"

namespace kemja {

// Constraint-based framework: issues are propositional variables, ballots
// are 0/1 vectors over them, and gamma is the integrity constraint.
class IssueSet {
public:
    explicit IssueSet(std::vector<std::string> issues);
    std::size_t size() const { return issues_.size(); }
    const std::string& operator[](std::size_t i) const { return issues_[i]; }
    const std::vector<std::string>& names() const { return issues_; }

private:
    std::vector<std::string> issues_;
};

using IssueSetPtr = std::shared_ptr<const IssueSet>;

struct Ballot {
    IssueSetPtr issues;
    BitVec bits;

    Assignment assignment() const;
};

// -1 for an unset issue
struct PartialBallot {
    IssueSetPtr issues;
    std::vector<int> values;
};

// With extended = false, gamma may only mention issues and the ballot has to
// satisfy it. With extended = true, gamma may use further variables and the
// ballot is rational when gamma restricted by it is satisfiable.
bool is_rational(const Ballot& r, const Formula& gamma, bool extended, const SolverConfig& cfg = {});

Ballot majority(const IssueSetPtr& issues, const std::vector<Ballot>& profile);
std::uint64_t hamming(const Ballot& a, const Ballot& b);

// Issues become atomic pre-agenda formulas; ballots map bit for bit.
AgendaPtr issue_agenda(const IssueSet& issues);
JudgmentSet to_judgment_set(const Ballot& r, const AgendaPtr& agenda);
Ballot to_ballot(const JudgmentSet& j, const IssueSetPtr& issues);

}  // namespace kemja
