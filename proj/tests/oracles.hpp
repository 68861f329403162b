#pragma once
// Reference implementations used only by the tests. Everything here is
// plain enumeration so it shares no code path with the library.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "kemja/logic/formula.hpp"

namespace oracle {

inline bool truth(const kemja::Formula& f, const std::map<std::string, bool, std::less<>>& a) {
    using kemja::Op;
    switch (f.op()) {
    case Op::Var: return a.at(f.name());
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::Not: return !truth(f.kid(0), a);
    case Op::And: {
        bool r = true;
        for (const auto& k : f.kids()) r = r && truth(k, a);
        return r;
    }
    case Op::Or: {
        bool r = false;
        for (const auto& k : f.kids()) r = r || truth(k, a);
        return r;
    }
    case Op::Xor: {
        int c = 0;
        for (const auto& k : f.kids()) c += truth(k, a);
        return c % 2 == 1;
    }
    case Op::Implies: return !truth(f.kid(0), a) || truth(f.kid(1), a);
    case Op::Iff: return truth(f.kid(0), a) == truth(f.kid(1), a);
    }
    return false;
}

inline void for_each_assignment(const std::vector<std::string>& vs,
                                const std::function<void(const std::map<std::string, bool, std::less<>>&)>& fn) {
    const std::uint64_t n = 1ull << vs.size();
    for (std::uint64_t i = 0; i < n; ++i) {
        std::map<std::string, bool, std::less<>> a;
        for (std::size_t k = 0; k < vs.size(); ++k) a[vs[k]] = (i >> k) & 1u;
        fn(a);
    }
}

inline bool satisfiable(const kemja::Formula& f) {
    bool any = false;
    std::vector<std::string> vs = kemja::variables(f);
    for_each_assignment(vs, [&](const auto& a) { any = any || truth(f, a); });
    return any;
}

inline bool cnf_satisfiable(int nvars, const std::vector<std::vector<int>>& clauses) {
    for (std::uint64_t m = 0; m < (1ull << nvars); ++m) {
        bool all = true;
        for (const auto& c : clauses) {
            bool sat = false;
            for (int l : c) {
                bool v = (m >> (std::abs(l) - 1)) & 1u;
                if ((l > 0) == v) sat = true;
            }
            if (!sat) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

inline kemja::Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& pool, int depth) {
    using kemja::Formula;
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    if (depth <= 0 || pick(4) == 0) {
        std::size_t r = pick(pool.size() + 1);
        if (r == pool.size()) return pick(2) ? Formula::top() : Formula::bot();
        return Formula::var(pool[r]);
    }
    switch (pick(7)) {
    case 0: return !random_formula(rng, pool, depth - 1);
    case 1: return Formula::make_and({random_formula(rng, pool, depth - 1), random_formula(rng, pool, depth - 1),
                                      random_formula(rng, pool, depth - 1)});
    case 2: return random_formula(rng, pool, depth - 1) & random_formula(rng, pool, depth - 1);
    case 3: return random_formula(rng, pool, depth - 1) | random_formula(rng, pool, depth - 1);
    case 4: return random_formula(rng, pool, depth - 1) ^ random_formula(rng, pool, depth - 1);
    case 5: return Formula::make_implies(random_formula(rng, pool, depth - 1), random_formula(rng, pool, depth - 1));
    default: return Formula::make_iff(random_formula(rng, pool, depth - 1), random_formula(rng, pool, depth - 1));
    }
}

}  // namespace oracle
