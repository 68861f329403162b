#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kemja/errors.hpp"
#include "kemja/ja/bitvec.hpp"
#include "kemja/logic/formula.hpp"

namespace kemja {

// A pre-agenda: distinct formulas, none doubly negated. The agenda is the
// pre-agenda closed under complement; a judgment set picks one of phi, ~phi
// per position.
class Agenda {
public:
    explicit Agenda(std::vector<Formula> pre);

    std::size_t size() const { return pre_.size(); }
    const Formula& operator[](std::size_t i) const { return pre_[i]; }
    const std::vector<Formula>& formulas() const { return pre_; }

    std::optional<std::size_t> index_of(const Formula& f) const;
    // (position, polarity) of an agenda member phi_i (true) or ~phi_i (false).
    std::optional<std::pair<std::size_t, bool>> member(const Formula& f) const;
    Formula judgment(std::size_t i, bool positive) const {
        return positive ? pre_[i] : complement(pre_[i]);
    }

    const std::vector<std::string>& variables() const { return vars_; }
    bool variables_only() const;  // every pre-agenda formula is an atom

    bool same_as(const Agenda& o) const { return this == &o || pre_ == o.pre_; }

private:
    std::vector<Formula> pre_;
    std::map<std::string, std::pair<std::size_t, bool>> member_;
    std::vector<std::string> vars_;
};

using AgendaPtr = std::shared_ptr<const Agenda>;

AgendaPtr make_agenda(std::vector<Formula> pre);
AgendaPtr parse_agenda(const std::vector<std::string>& pre);

class JudgmentSet {
public:
    JudgmentSet() = default;
    JudgmentSet(AgendaPtr a, BitVec bits);
    explicit JudgmentSet(AgendaPtr a) : JudgmentSet(a, BitVec(a->size())) {}

    const AgendaPtr& agenda() const { return agenda_; }
    const BitVec& bits() const { return bits_; }
    std::size_t size() const { return bits_.size(); }
    bool operator[](std::size_t i) const { return bits_[i]; }
    void set(std::size_t i, bool v) { bits_.set(i, v); }

    std::vector<Formula> formulas() const;
    bool contains(const Formula& f) const;  // f must be an agenda member
    std::string str() const { return bits_.str(); }

    friend bool operator==(const JudgmentSet& a, const JudgmentSet& b) { return a.bits_ == b.bits_; }
    friend bool operator!=(const JudgmentSet& a, const JudgmentSet& b) { return !(a == b); }
    friend bool operator<(const JudgmentSet& a, const JudgmentSet& b) { return a.bits_ < b.bits_; }

private:
    AgendaPtr agenda_;
    BitVec bits_;
};

JudgmentSet judgment_set(const AgendaPtr& a, const std::string& bits);

class Profile {
public:
    Profile() = default;
    Profile(AgendaPtr a, std::vector<JudgmentSet> rows);

    const AgendaPtr& agenda() const { return agenda_; }
    std::size_t size() const { return rows_.size(); }
    const JudgmentSet& operator[](std::size_t i) const { return rows_[i]; }
    const std::vector<JudgmentSet>& rows() const { return rows_; }

    Profile without(std::size_t i) const;
    Profile replaced(std::size_t i, const JudgmentSet& j) const;
    Profile with(const JudgmentSet& j) const;  // appended

private:
    AgendaPtr agenda_;
    std::vector<JudgmentSet> rows_;
};

class WeightFunction {
public:
    WeightFunction() = default;
    explicit WeightFunction(std::vector<std::uint64_t> w);
    static WeightFunction uniform(std::size_t n, std::uint64_t v = 1) {
        return WeightFunction(std::vector<std::uint64_t>(n, v));
    }

    std::size_t size() const { return w_.size(); }
    std::uint64_t operator[](std::size_t i) const { return w_[i]; }
    const std::vector<std::uint64_t>& values() const { return w_; }
    std::uint64_t total() const { return total_; }

private:
    std::vector<std::uint64_t> w_;
    std::uint64_t total_ = 0;
};

// A set of agenda members, stored as (position, polarity) pairs.
struct Conclusions {
    std::vector<std::pair<std::size_t, bool>> items;

    bool subset_of(const JudgmentSet& j) const {
        for (auto [i, b] : items)
            if (j[i] != b) return false;
        return true;
    }
    bool empty() const { return items.empty(); }
};

Conclusions conclusions(const Agenda& a, const std::vector<Formula>& members);

}  // namespace kemja
