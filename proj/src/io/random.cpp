#include "kemja/io/random.hpp"

#include <algorithm>
#include <set>

#include "kemja/ja/ops.hpp"

namespace kemja {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

const std::vector<std::string> kNames{"p", "q", "r", "s", "t", "u", "v", "w"};

}  // namespace

Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& pool, std::size_t depth) {
    if (depth == 0 || pick(rng, 3) == 0) {
        Formula v = Formula::var(pool[pick(rng, pool.size())]);
        return pick(rng, 4) == 0 ? !v : v;
    }
    Formula a = random_formula(rng, pool, depth - 1);
    Formula b = random_formula(rng, pool, depth - 1);
    switch (pick(rng, 6)) {
    case 0: return a & b;
    case 1: return a | b;
    case 2: return Formula::make_implies(a, b);
    case 3: return a ^ b;
    case 4: return Formula::make_iff(a, b);
    default: return !(a & b);
    }
}

RandomInstance random_instance(std::uint64_t seed, const RandomParams& params) {
    std::mt19937_64 rng(seed);
    for (;;) {
        RandomInstance ri;
        ri.seed = seed;
        const std::size_t nv = 2 + pick(rng, params.max_vars - 1);
        std::vector<std::string> pool(kNames.begin(), kNames.begin() + static_cast<std::ptrdiff_t>(nv));

        std::vector<Formula> pre;
        std::set<std::string> used;
        auto try_add = [&](const Formula& f) {
            if (f.op() == Op::Not && f.kid(0).op() == Op::Not) return;
            if (used.count(f.str()) || used.count(complement(f).str())) return;
            used.insert(f.str());
            pre.push_back(f);
        };
        if (params.variables_only) {
            const std::size_t n = 1 + pick(rng, std::min(nv, params.max_formulas));
            for (std::size_t i = 0; i < n; ++i) try_add(Formula::var(pool[i]));
        } else {
            const std::size_t n = 1 + pick(rng, params.max_formulas);
            for (std::size_t tries = 0; pre.size() < n && tries < 50; ++tries) {
                Formula f;
                if (params.clause_agenda) {
                    std::vector<Formula> lits;
                    const std::size_t len = 1 + pick(rng, 3);
                    std::set<std::string> vs;
                    for (std::size_t k = 0; k < len; ++k) {
                        const std::string& v = pool[pick(rng, pool.size())];
                        if (!vs.insert(v).second) continue;
                        lits.push_back(pick(rng, 2) ? Formula::var(v) : !Formula::var(v));
                    }
                    f = Formula::make_or(lits);
                } else {
                    f = random_formula(rng, pool, params.max_depth);
                }
                try_add(f);
            }
        }
        ri.agenda = make_agenda(pre);

        if (pick(rng, 3) == 0)
            ri.gamma = Formula::top();
        else
            ri.gamma = random_formula(rng, pool, params.max_depth);

        auto sets = enumerate_consistent_sets(ri.agenda, ri.gamma);
        if (sets.empty()) continue;

        const std::size_t span = params.max_agents - params.min_agents + 1;
        const std::size_t agents = params.min_agents + pick(rng, span);
        std::vector<JudgmentSet> rows;
        for (std::size_t i = 0; i < agents; ++i) rows.push_back(sets[pick(rng, sets.size())]);
        ri.profile = Profile(ri.agenda, rows);

        std::vector<std::uint64_t> w;
        for (std::size_t i = 0; i < pre.size(); ++i) w.push_back(pick(rng, 3));
        ri.weights = WeightFunction(w);
        ri.desired = sets[pick(rng, sets.size())];
        ri.budget = pick(rng, std::min(params.max_budget, agents) + 1);

        const std::size_t nl = pick(rng, 3);
        std::set<std::size_t> taken;
        for (std::size_t k = 0; k < nl; ++k) {
            std::size_t i = pick(rng, pre.size());
            if (!taken.insert(i).second) continue;
            ri.target.push_back(ri.agenda->judgment(i, pick(rng, 2) == 1));
        }
        for (std::size_t i = 0; i < pre.size(); ++i)
            if (pick(rng, 2)) ri.fixed.push_back(i);
        return ri;
    }
}

}  // namespace kemja
