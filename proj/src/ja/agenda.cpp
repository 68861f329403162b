#include "kemja/ja/agenda.hpp"

#include <algorithm>
#include <set>

#include "kemja/logic/parser.hpp"

namespace kemja {

Agenda::Agenda(std::vector<Formula> pre) : pre_(std::move(pre)) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < pre_.size(); ++i) {
        const Formula& f = pre_[i];
        if (f.op() == Op::Not && f.kid(0).op() == Op::Not)
            throw InvalidInstance("doubly negated pre-agenda formula: " + f.str());
        std::string pos = f.str(), neg = complement(f).str();
        if (!member_.emplace(pos, std::make_pair(i, true)).second ||
            !member_.emplace(neg, std::make_pair(i, false)).second)
            throw InvalidInstance("pre-agenda formula repeats or complements another: " + pos);
    }
    std::set<std::string> vs;
    for (const auto& f : pre_) collect_variables(f, vars_, vs);
}

std::optional<std::size_t> Agenda::index_of(const Formula& f) const {
    auto m = member(f);
    if (m && m->second) return m->first;
    return std::nullopt;
}

std::optional<std::pair<std::size_t, bool>> Agenda::member(const Formula& f) const {
    auto it = member_.find(f.str());
    if (it == member_.end()) return std::nullopt;
    return it->second;
}

bool Agenda::variables_only() const {
    return std::all_of(pre_.begin(), pre_.end(), [](const Formula& f) { return f.is_var(); });
}

AgendaPtr make_agenda(std::vector<Formula> pre) { return std::make_shared<const Agenda>(std::move(pre)); }

AgendaPtr parse_agenda(const std::vector<std::string>& pre) {
    std::vector<Formula> fs;
    for (const auto& s : pre) fs.push_back(parse_formula(s));
    return make_agenda(std::move(fs));
}

JudgmentSet::JudgmentSet(AgendaPtr a, BitVec bits) : agenda_(std::move(a)), bits_(std::move(bits)) {
    if (bits_.size() != agenda_->size()) throw InvalidInstance("judgment set length does not match agenda");
}

std::vector<Formula> JudgmentSet::formulas() const {
    std::vector<Formula> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(agenda_->judgment(i, bits_[i]));
    return out;
}

bool JudgmentSet::contains(const Formula& f) const {
    auto m = agenda_->member(f);
    if (!m) throw InvalidInstance("not an agenda member: " + f.str());
    return bits_[m->first] == m->second;
}

JudgmentSet judgment_set(const AgendaPtr& a, const std::string& bits) {
    for (char c : bits)
        if (c != '0' && c != '1') throw InvalidInstance("judgment set must be a 0/1 string");
    return JudgmentSet(a, BitVec::from_string(bits));
}

Profile::Profile(AgendaPtr a, std::vector<JudgmentSet> rows) : agenda_(std::move(a)), rows_(std::move(rows)) {
    for (const auto& r : rows_)
        if (!r.agenda()->same_as(*agenda_)) throw AgendaMismatch();
}

Profile Profile::without(std::size_t i) const {
    auto rows = rows_;
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
    return Profile(agenda_, std::move(rows));
}

Profile Profile::replaced(std::size_t i, const JudgmentSet& j) const {
    auto rows = rows_;
    rows.at(i) = j;
    return Profile(agenda_, std::move(rows));
}

Profile Profile::with(const JudgmentSet& j) const {
    auto rows = rows_;
    rows.push_back(j);
    return Profile(agenda_, std::move(rows));
}

WeightFunction::WeightFunction(std::vector<std::uint64_t> w) : w_(std::move(w)) {
    constexpr std::uint64_t kLimit = std::uint64_t(1) << 40;
    for (auto x : w_) {
        if (x > kLimit) throw InvalidInstance("weight too large");
        total_ += x;
    }
}

Conclusions conclusions(const Agenda& a, const std::vector<Formula>& members) {
    Conclusions c;
    for (const auto& f : members) {
        auto m = a.member(f);
        if (!m) throw InvalidInstance("not an agenda member: " + f.str());
        c.items.push_back(*m);
    }
    std::sort(c.items.begin(), c.items.end());
    c.items.erase(std::unique(c.items.begin(), c.items.end()), c.items.end());
    return c;
}

}  // namespace kemja
