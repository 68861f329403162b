#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kemja/ja/agenda.hpp"

namespace kemja {

struct RandomParams {
    std::size_t max_formulas = 8;
    std::size_t max_vars = 6;
    std::size_t max_agents = 4;
    std::size_t max_budget = 2;
    std::size_t max_depth = 2;
    bool variables_only = false;  // atomic pre-agenda (constraint-style)
    bool clause_agenda = false;   // pre-agenda of literals and clauses
    std::size_t min_agents = 1;
};

struct RandomInstance {
    AgendaPtr agenda;
    Formula gamma;
    Profile profile;
    WeightFunction weights;
    JudgmentSet desired;
    std::size_t budget = 0;
    std::vector<Formula> target;   // agenda members
    std::vector<std::size_t> fixed;  // pre-agenda positions that stay in control problems
    std::uint64_t seed = 0;
};

// Deterministic for a given seed. Profiles are drawn from the consistent
// judgment sets, so every instance is well formed.
RandomInstance random_instance(std::uint64_t seed, const RandomParams& params = {});

Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& pool, std::size_t depth);

}  // namespace kemja
