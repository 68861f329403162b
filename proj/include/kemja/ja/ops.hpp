#pragma once

#include <vector>

#include "kemja/ja/agenda.hpp"
#include "kemja/logic/sat.hpp"

namespace kemja {

bool is_consistent(const std::vector<Formula>& fs, const SolverConfig& cfg = {});
// One SAT call on the conjunction of J and gamma.
bool is_gamma_consistent(const JudgmentSet& j, const Formula& gamma, const SolverConfig& cfg = {});

constexpr std::size_t kDefaultEnumerationCap = 1u << 16;

// All complete gamma-consistent judgment sets, lexicographically ordered.
// Enumerates assignments over Var(agenda) and Var(gamma); throws CapExceeded
// when there are more than cap sets or more than max_vars variables.
std::vector<JudgmentSet> enumerate_consistent_sets(const AgendaPtr& a, const Formula& gamma,
                                                   std::size_t cap = kDefaultEnumerationCap,
                                                   std::size_t max_vars = 24);

std::uint64_t hamming(const JudgmentSet& a, const JudgmentSet& b);
std::uint64_t weighted_hamming(const JudgmentSet& a, const JudgmentSet& b, const WeightFunction& w);
std::uint64_t cumulative_distance(const JudgmentSet& j, const Profile& p);

// ideal strictly prefers a to b
bool prefers(const JudgmentSet& ideal, const JudgmentSet& a, const JudgmentSet& b, const WeightFunction& w);

// Strict majority per position; ties go to the complement.
JudgmentSet majority(const Profile& p);

struct SubAgenda {
    AgendaPtr agenda;
    std::vector<std::size_t> positions;  // into the parent pre-agenda, ascending
};

SubAgenda sub_agenda(const Agenda& parent, std::vector<std::size_t> positions);
JudgmentSet restrict(const JudgmentSet& j, const SubAgenda& s);
Profile restrict(const Profile& p, const SubAgenda& s);
WeightFunction restrict(const WeightFunction& w, const SubAgenda& s);

// Fast evaluator over a fixed variable order, used by the enumerators.
class CompiledFormula {
public:
    CompiledFormula(const Formula& f, const std::vector<std::string>& order);
    bool operator()(std::uint64_t assignment) const;  // bit k = variable order[k]

private:
    struct Ins {
        Op op;
        std::uint32_t arg;
    };
    std::vector<Ins> code_;
    mutable std::vector<std::uint8_t> stack_;
};

}  // namespace kemja
