#include "kemja/ja/constraint.hpp"

#include <set>

namespace kemja {

IssueSet::IssueSet(std::vector<std::string> issues) : issues_(std::move(issues)) {
    std::set<std::string> seen;
    for (const auto& i : issues_) {
        if (!valid_var_name(i)) throw InvalidInstance("bad issue name: " + i);
        if (!seen.insert(i).second) throw InvalidInstance("repeated issue: " + i);
    }
}

Assignment Ballot::assignment() const {
    Assignment a;
    for (std::size_t i = 0; i < issues->size(); ++i) a[(*issues)[i]] = bits[i];
    return a;
}

bool is_rational(const Ballot& r, const Formula& gamma, bool extended, const SolverConfig& cfg) {
    Assignment a = r.assignment();
    if (!extended) {
        for (const auto& v : variables(gamma))
            if (!a.count(v)) throw InvalidInstance("constraint mentions non-issue variable " + v);
        return evaluate(gamma, a);
    }
    Formula rest = substitute(gamma, a);
    if (rest.is_const()) return rest.op() == Op::Top;
    return is_satisfiable(rest, cfg);
}

Ballot majority(const IssueSetPtr& issues, const std::vector<Ballot>& profile) {
    Ballot m{issues, BitVec(issues->size())};
    for (std::size_t i = 0; i < issues->size(); ++i) {
        std::size_t ones = 0;
        for (const auto& b : profile) ones += b.bits[i];
        m.bits.set(i, 2 * ones > profile.size());
    }
    return m;
}

std::uint64_t hamming(const Ballot& a, const Ballot& b) {
    if (a.issues != b.issues && a.issues->names() != b.issues->names()) throw AgendaMismatch();
    return a.bits.distance(b.bits);
}

AgendaPtr issue_agenda(const IssueSet& issues) {
    std::vector<Formula> fs;
    for (const auto& i : issues.names()) fs.push_back(Formula::var(i));
    return make_agenda(std::move(fs));
}

JudgmentSet to_judgment_set(const Ballot& r, const AgendaPtr& agenda) { return JudgmentSet(agenda, r.bits); }

Ballot to_ballot(const JudgmentSet& j, const IssueSetPtr& issues) { return Ballot{issues, j.bits()}; }

}  // namespace kemja
