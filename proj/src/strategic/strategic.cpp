#include "kemja/strategic/strategic.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "internal.hpp"

namespace kemja {

const char* mode_name(Mode m) {
    switch (m) {
    case Mode::Cautious: return "CAUTIOUS";
    case Mode::Optimistic: return "OPTIMISTIC";
    case Mode::Pessimistic: return "PESSIMISTIC";
    case Mode::Superoptimistic: return "SUPEROPTIMISTIC";
    case Mode::Safe: return "SAFE";
    }
    return "?";
}

const char* attitude_name(Attitude a) { return a == Attitude::CautiousAll ? "CAUTIOUS_ALL" : "BRAVE_SOME"; }

namespace {

std::string upper(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    std::replace(s.begin(), s.end(), '-', '_');
    return s;
}

}  // namespace

std::optional<Mode> parse_mode(const std::string& s) {
    for (Mode m : kAllModes)
        if (upper(s) == mode_name(m)) return m;
    return std::nullopt;
}

std::optional<Attitude> parse_attitude(const std::string& s) {
    for (Attitude a : {Attitude::CautiousAll, Attitude::BraveSome})
        if (upper(s) == attitude_name(a)) return a;
    return std::nullopt;
}

bool mode_holds(Mode m, std::uint64_t min_new, std::uint64_t max_new, std::uint64_t min_old, std::uint64_t max_old) {
    switch (m) {
    case Mode::Cautious: return max_new < min_old;
    case Mode::Optimistic: return min_new < min_old;
    case Mode::Pessimistic: return max_new < max_old;
    case Mode::Superoptimistic: return min_new < max_old;
    case Mode::Safe: return max_new <= min_old && min_new < max_old;
    }
    return false;
}

namespace detail {

void check_deadline(const EngineConfig& cfg) {
    if (cfg.solver.deadline && Clock::now() > *cfg.solver.deadline) throw Timeout();
}

}  // namespace detail

namespace {

using detail::Goal;

struct Timer {
    Clock::time_point start = Clock::now();
    double ms() const { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); }
};

void validate_profile(const Profile& p, const Formula& gamma, const SolverConfig& cfg) {
    if (!p.agenda()) throw InvalidInstance("profile has no agenda");
    if (p.size() == 0) throw InvalidInstance("profile is empty");
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!is_gamma_consistent(p[i], gamma, cfg))
            throw InvalidInstance("profile row " + std::to_string(i + 1) + " is not consistent");
}

void validate_weights(const Profile& p, const WeightFunction& w) {
    if (w.size() != p.agenda()->size()) throw InvalidInstance("weight function length does not match agenda");
}

void validate_bribery(const BriberyInstance& inst, const SolverConfig& cfg) {
    validate_profile(inst.profile, inst.gamma, cfg);
    validate_weights(inst.profile, inst.weights);
    if (!inst.desired.agenda() || !inst.desired.agenda()->same_as(*inst.profile.agenda())) throw AgendaMismatch();
    if (!is_gamma_consistent(inst.desired, inst.gamma, cfg)) throw InvalidInstance("desired set is not consistent");
    if (inst.budget > inst.profile.size()) throw InvalidInstance("budget exceeds the number of agents");
}

// Old outcome statistics, filled according to the engine.
void old_stats(const Profile& p, const Formula& gamma, Goal& g, Diagnostics& diag, const EngineConfig& cfg) {
    if (cfg.engine == Engine::Brute) {
        KemenyResult r = KemenyTable(p.agenda(), gamma, cfg.enum_cap).outcomes(PositionCosts::of(p));
        diag.d_win_old = r.d_win;
        if (g.mode) {
            std::uint64_t lo = UINT64_MAX, hi = 0;
            for (const auto& x : r.outcomes) {
                lo = std::min(lo, weighted_hamming(x, g.ref, g.w));
                hi = std::max(hi, weighted_hamming(x, g.ref, g.w));
            }
            g.min_old = lo;
            g.max_old = hi;
        }
        return;
    }
    KemenyOracle o(p.agenda(), gamma, PositionCosts::of(p), cfg.solver);
    diag.d_win_old = o.min_distance();
    if (g.mode) {
        g.min_old = o.extreme(g.ref, g.w, Extreme::Min);
        g.max_old = o.extreme(g.ref, g.w, Extreme::Max);
    }
    diag.sat_calls += o.sat_calls();
}

void record_old(const Goal& g, Diagnostics& diag) {
    if (!g.mode) return;
    diag.d_min_old = g.min_old;
    diag.d_max_old = g.max_old;
}

bool goal_on_profile(const Profile& p, const Formula& gamma, const Goal& g, const EngineConfig& cfg) {
    if (g.att) {
        if (*g.att == Attitude::CautiousAll)
            return !exists_outcome_with(p, gamma, OutcomePredicate::missing_conclusion(g.target), cfg);
        return exists_outcome_with(p, gamma, OutcomePredicate::includes_conclusions(g.target), cfg);
    }
    const std::uint64_t lo = extreme_weighted_distance(p, gamma, g.ref, g.w, Extreme::Min, cfg);
    const std::uint64_t hi = extreme_weighted_distance(p, gamma, g.ref, g.w, Extreme::Max, cfg);
    return mode_holds(*g.mode, lo, hi, g.min_old, g.max_old);
}

Goal old_goal(const Profile& p, const Formula& gamma, Goal g, const EngineConfig& cfg) {
    if (g.mode) {
        g.min_old = extreme_weighted_distance(p, gamma, g.ref, g.w, Extreme::Min, cfg);
        g.max_old = extreme_weighted_distance(p, gamma, g.ref, g.w, Extreme::Max, cfg);
    }
    return g;
}

// Brute-force evaluation over a table of every consistent set. Per-set
// distances to the reference and target inclusion are precomputed.
struct BruteJudge {
    const Goal& g;
    const std::vector<JudgmentSet>& sets;
    std::vector<std::uint64_t> dref;
    std::vector<char> incl;

    BruteJudge(const Goal& goal, const std::vector<JudgmentSet>& s) : g(goal), sets(s) {
        for (const auto& x : sets) {
            dref.push_back(g.mode ? weighted_hamming(x, g.ref, g.w) : 0);
            incl.push_back(g.att ? g.target.subset_of(x) : 0);
        }
    }

    // cost[x] for every set; returns the index of an evidence outcome when the goal holds
    std::optional<std::size_t> judge(const std::vector<std::uint64_t>& cost) const {
        const std::uint64_t best = *std::min_element(cost.begin(), cost.end());
        std::uint64_t lo = UINT64_MAX, hi = 0;
        bool all = true, some = false;
        std::size_t lo_at = 0, some_at = 0;
        for (std::size_t x = 0; x < cost.size(); ++x) {
            if (cost[x] != best) continue;
            if (dref[x] < lo) {
                lo = dref[x];
                lo_at = x;
            }
            hi = std::max(hi, dref[x]);
            if (incl[x] && !some) some_at = x;
            some = some || incl[x];
            all = all && incl[x];
        }
        if (g.att) {
            if (*g.att == Attitude::CautiousAll ? all : some) return some_at;
            return std::nullopt;
        }
        if (mode_holds(*g.mode, lo, hi, g.min_old, g.max_old)) return lo_at;
        return std::nullopt;
    }
};

std::vector<std::uint64_t> costs_over(const std::vector<JudgmentSet>& sets, const PositionCosts& c) {
    std::vector<std::uint64_t> out;
    out.reserve(sets.size());
    for (const auto& x : sets) out.push_back(c.of(x.bits()));
    return out;
}

Verdict start(std::string problem, std::string mode, const EngineConfig& cfg) {
    Verdict v;
    v.problem = std::move(problem);
    v.mode = std::move(mode);
    v.diag.engine = cfg.engine;
    return v;
}

// Manipulation and its exact variant share everything but the goal.
Verdict manipulation(const ManipulationInstance& inst, Goal g, Verdict v, const EngineConfig& cfg) {
    Timer timer;
    const Profile& p = inst.profile;
    const AgendaPtr& a = p.agenda();
    PositionCosts rest = PositionCosts::of(p);
    rest.remove(p[0]);

    if (cfg.engine == Engine::Brute) {
        KemenyTable tab(a, inst.gamma, cfg.enum_cap);
        old_stats(p, inst.gamma, g, v.diag, cfg);
        record_old(g, v.diag);
        BruteJudge judge(g, tab.sets());
        const auto base = costs_over(tab.sets(), rest);
        std::vector<std::uint64_t> cost(base.size());
        for (const auto& r : tab.sets()) {
            detail::check_deadline(cfg);
            ++v.diag.candidates;
            for (std::size_t x = 0; x < cost.size(); ++x) cost[x] = base[x] + hamming(tab.sets()[x], r);
            if (auto e = judge.judge(cost)) {
                v.answer = true;
                v.witness = Witness{};
                v.witness->reported = r;
                v.witness->outcome = tab.sets()[*e];
                v.diag.d_win_new = cost[*e];
                break;
            }
        }
    } else {
        old_stats(p, inst.gamma, g, v.diag, cfg);
        record_old(g, v.diag);
        if (auto t = detail::self_report_search(a, inst.gamma, rest, 1, g, cfg, v.diag)) {
            v.answer = true;
            v.witness = Witness{};
            v.witness->reported = *t;
            v.witness->outcome = *t;
        }
    }
    if (!v.answer) v.reason = "no report achieves the goal";
    v.diag.elapsed_ms = timer.ms();
    return v;
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    if (k > n) return;
    for (;;) {
        if (f(c)) return;
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}


// The bribed rows: every subset of exactly k rows (or none when k == 0).
Verdict bribery(const BriberyInstance& inst, Goal g, Verdict v, const EngineConfig& cfg) {
    Timer timer;
    const Profile& p = inst.profile;
    const AgendaPtr& a = p.agenda();
    const std::size_t k = inst.budget;

    auto yes = [&](std::vector<std::size_t> rows, std::vector<JudgmentSet> repl, JudgmentSet outcome) {
        v.answer = true;
        v.witness = Witness{};
        v.witness->rows = std::move(rows);
        v.witness->replacements = std::move(repl);
        v.witness->outcome = std::move(outcome);
    };

    if (cfg.engine == Engine::Brute) {
        // every subset of at most k rows and every multiset of replacements
        KemenyTable tab(a, inst.gamma, cfg.enum_cap);
        old_stats(p, inst.gamma, g, v.diag, cfg);
        record_old(g, v.diag);
        const auto& sets = tab.sets();
        const std::size_t n = sets.size();
        BruteJudge judge(g, sets);
        std::vector<std::vector<std::uint32_t>> dist(n, std::vector<std::uint32_t>(n));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) dist[x][y] = static_cast<std::uint32_t>(hamming(sets[x], sets[y]));
        const auto full = costs_over(sets, PositionCosts::of(p));
        std::vector<std::uint64_t> base(n), cost(n);
        for (std::size_t j = 0; j <= k && !v.answer; ++j) {
            for_each_subset(p.size(), j, [&](const std::vector<std::size_t>& rows) {
                for (std::size_t x = 0; x < n; ++x) {
                    base[x] = full[x];
                    for (auto r : rows) base[x] -= hamming(sets[x], p[r]);
                }
                std::vector<std::size_t> t(j, 0);
                for (;;) {
                    detail::check_deadline(cfg);
                    ++v.diag.candidates;
                    for (std::size_t x = 0; x < n; ++x) {
                        cost[x] = base[x];
                        for (auto y : t) cost[x] += dist[x][y];
                    }
                    if (auto e = judge.judge(cost)) {
                        std::vector<JudgmentSet> repl;
                        for (auto y : t) repl.push_back(sets[y]);
                        yes(rows, std::move(repl), sets[*e]);
                        v.diag.d_win_new = cost[*e];
                        return true;
                    }
                    std::size_t i = j;
                    while (i > 0 && t[i - 1] == n - 1) --i;
                    if (i == 0) return false;
                    ++t[i - 1];
                    for (std::size_t q = i; q < j; ++q) t[q] = t[i - 1];
                }
            });
        }
    } else {
        old_stats(p, inst.gamma, g, v.diag, cfg);
        record_old(g, v.diag);
        if (k == 0) {
            if (goal_on_profile(p, inst.gamma, g, cfg)) {
                KemenyOracle o(a, inst.gamma, PositionCosts::of(p), cfg.solver);
                yes({}, {}, o.some_outcome());
                v.diag.d_win_new = v.diag.d_win_old;
            }
        } else {
            // removing rows with equal ballots gives the same search
            std::set<std::vector<BitVec>> seen;
            for_each_subset(p.size(), k, [&](const std::vector<std::size_t>& rows) {
                std::vector<BitVec> key;
                PositionCosts rest = PositionCosts::of(p);
                for (auto r : rows) {
                    rest.remove(p[r]);
                    key.push_back(p[r].bits());
                }
                std::sort(key.begin(), key.end());
                if (!seen.insert(key).second) return false;
                auto t = detail::self_report_search(a, inst.gamma, rest, k, g, cfg, v.diag);
                if (!t) return false;
                yes(rows, std::vector<JudgmentSet>(k, *t), *t);
                return true;
            });
        }
    }
    if (!v.answer) v.reason = k == 0 ? "budget is zero and the profile does not achieve the goal"
                                     : "no bribe within the budget achieves the goal";
    v.diag.elapsed_ms = timer.ms();
    return v;
}

struct ControlPlan {
    Conclusions target;
    std::vector<bool> forced;
    std::vector<std::size_t> optional;
};

// nullopt when the target is not over the agenda
std::optional<ControlPlan> control_plan(const ControlInstance& inst) {
    const Agenda& a = *inst.profile.agenda();
    for (const auto& f : inst.target)
        if (!a.member(f)) return std::nullopt;
    ControlPlan plan;
    plan.target = conclusions(a, inst.target);
    plan.forced.assign(a.size(), false);
    for (auto i : inst.fixed) {
        if (i >= a.size()) throw InvalidInstance("fixed agenda position out of range");
        plan.forced[i] = true;
    }
    for (auto [i, b] : plan.target.items) plan.forced[i] = true;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!plan.forced[i]) plan.optional.push_back(i);
    return plan;
}

std::vector<std::size_t> forced_positions(const ControlPlan& plan) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < plan.forced.size(); ++i)
        if (plan.forced[i]) out.push_back(i);
    return out;
}

// Kemeny outcomes on the restricted profile against the target, one engine call.
std::optional<JudgmentSet> control_check(const ControlInstance& inst, Attitude att,
                                         const std::vector<std::size_t>& selection, const EngineConfig& cfg,
                                         Diagnostics& diag) {
    SubAgenda sub = sub_agenda(*inst.profile.agenda(), selection);
    Profile rp = restrict(inst.profile, sub);
    const Conclusions l = conclusions(*sub.agenda, inst.target);
    if (cfg.engine == Engine::Brute) {
        KemenyResult r = KemenyTable(sub.agenda, inst.gamma, cfg.enum_cap).outcomes(PositionCosts::of(rp));
        diag.d_win_new = r.d_win;
        bool all = true;
        std::optional<JudgmentSet> some;
        for (const auto& x : r.outcomes) {
            bool in = l.subset_of(x);
            all = all && in;
            if (in && !some) some = x;
        }
        if (att == Attitude::CautiousAll && !all) return std::nullopt;
        return some;
    }
    KemenyOracle o(sub.agenda, inst.gamma, PositionCosts::of(rp), cfg.solver);
    diag.d_win_new = o.min_distance();
    std::optional<JudgmentSet> r;
    if (att == Attitude::CautiousAll) {
        if (!o.find_outcome(OutcomePredicate::missing_conclusion(l))) r = o.some_outcome();
    } else {
        r = o.find_outcome(OutcomePredicate::includes_conclusions(l));
    }
    diag.sat_calls += o.sat_calls();
    return r;
}

}  // namespace

Verdict decide_manipulation(const ManipulationInstance& inst, Mode mode, const EngineConfig& cfg) {
    validate_profile(inst.profile, inst.gamma, cfg.solver);
    validate_weights(inst.profile, inst.weights);
    Goal g;
    g.mode = mode;
    g.ref = inst.profile[0];
    g.w = inst.weights;
    return manipulation(inst, g, start("manipulation", mode_name(mode), cfg), cfg);
}

Verdict decide_exact_manipulation(const ManipulationInstance& inst, Attitude att, const EngineConfig& cfg) {
    validate_profile(inst.profile, inst.gamma, cfg.solver);
    Goal g;
    g.att = att;
    g.target = conclusions(*inst.profile.agenda(), inst.target);
    return manipulation(inst, g, start("exact-manipulation", attitude_name(att), cfg), cfg);
}

Verdict decide_bribery(const BriberyInstance& inst, Mode mode, const EngineConfig& cfg) {
    validate_bribery(inst, cfg.solver);
    Goal g;
    g.mode = mode;
    g.ref = inst.desired;
    g.w = inst.weights;
    return bribery(inst, g, start("bribery", mode_name(mode), cfg), cfg);
}

Verdict decide_exact_bribery(const BriberyInstance& inst, Attitude att, const EngineConfig& cfg) {
    validate_profile(inst.profile, inst.gamma, cfg.solver);
    if (inst.budget > inst.profile.size()) throw InvalidInstance("budget exceeds the number of agents");
    Goal g;
    g.att = att;
    g.target = conclusions(*inst.profile.agenda(), inst.target);
    return bribery(inst, g, start("exact-bribery", attitude_name(att), cfg), cfg);
}

Verdict decide_control(const ControlInstance& inst, Attitude att, const EngineConfig& cfg) {
    Timer timer;
    Verdict v = start("control", attitude_name(att), cfg);
    validate_profile(inst.profile, inst.gamma, cfg.solver);
    auto plan = control_plan(inst);
    if (!plan) {
        v.reason = "target outside agenda";
        return v;
    }
    const AgendaPtr& a = inst.profile.agenda();
    {
        // the agenda the chair starts from
        std::vector<std::size_t> current = inst.fixed;
        if (inst.direction == ControlDirection::Delete) {
            current.clear();
            for (std::size_t i = 0; i < a->size(); ++i) current.push_back(i);
        }
        SubAgenda sub = sub_agenda(*a, current);
        v.diag.d_win_old = min_distance_to_profile(restrict(inst.profile, sub), inst.gamma, cfg);
    }
    auto yes = [&](std::vector<std::size_t> sel, JudgmentSet outcome) {
        v.answer = true;
        v.witness = Witness{};
        v.witness->selection = std::move(sel);
        v.witness->outcome = std::move(outcome);
    };
    const std::vector<std::size_t> base = forced_positions(*plan);
    if (cfg.engine == Engine::Brute || plan->optional.empty()) {
        const std::size_t q = plan->optional.size();
        if (q >= 63) throw CapExceeded("too many optional agenda positions for enumeration");
        for (std::uint64_t m = 0; m < (std::uint64_t(1) << q); ++m) {
            detail::check_deadline(cfg);
            ++v.diag.candidates;
            std::vector<std::size_t> sel = base;
            for (std::size_t b = 0; b < q; ++b)
                if ((m >> b) & 1u) sel.push_back(plan->optional[b]);
            std::sort(sel.begin(), sel.end());
            if (auto e = control_check(inst, att, sel, cfg, v.diag)) {
                yes(sel, *e);
                break;
            }
        }
    } else if (auto r = detail::control_search(inst, att, cfg, v.diag)) {
        yes(r->first, r->second);
    }
    if (!v.answer) v.reason = "no agenda between the fixed part and the full agenda achieves the goal";
    v.diag.elapsed_ms = timer.ms();
    return v;
}

bool certify_manipulation(const ManipulationInstance& inst, Mode mode, const JudgmentSet& reported,
                          const EngineConfig& cfg) {
    if (!reported.agenda() || !reported.agenda()->same_as(*inst.profile.agenda())) return false;
    if (!is_gamma_consistent(reported, inst.gamma, cfg.solver)) return false;
    Goal g;
    g.mode = mode;
    g.ref = inst.profile[0];
    g.w = inst.weights;
    g = old_goal(inst.profile, inst.gamma, g, cfg);
    return goal_on_profile(inst.profile.replaced(0, reported), inst.gamma, g, cfg);
}

bool certify_exact_manipulation(const ManipulationInstance& inst, Attitude att, const JudgmentSet& reported,
                                const EngineConfig& cfg) {
    if (!reported.agenda() || !reported.agenda()->same_as(*inst.profile.agenda())) return false;
    if (!is_gamma_consistent(reported, inst.gamma, cfg.solver)) return false;
    Goal g;
    g.att = att;
    g.target = conclusions(*inst.profile.agenda(), inst.target);
    return goal_on_profile(inst.profile.replaced(0, reported), inst.gamma, g, cfg);
}

namespace {

std::optional<Profile> bribed(const BriberyInstance& inst, const Witness& w, const SolverConfig& cfg) {
    if (w.rows.size() != w.replacements.size() || w.rows.size() > inst.budget) return std::nullopt;
    std::set<std::size_t> distinct(w.rows.begin(), w.rows.end());
    if (distinct.size() != w.rows.size()) return std::nullopt;
    Profile p = inst.profile;
    for (std::size_t i = 0; i < w.rows.size(); ++i) {
        const JudgmentSet& r = w.replacements[i];
        if (w.rows[i] >= p.size() || !r.agenda() || !r.agenda()->same_as(*p.agenda())) return std::nullopt;
        if (!is_gamma_consistent(r, inst.gamma, cfg)) return std::nullopt;
        p = p.replaced(w.rows[i], r);
    }
    return p;
}

}  // namespace

bool certify_bribery(const BriberyInstance& inst, Mode mode, const Witness& w, const EngineConfig& cfg) {
    auto p = bribed(inst, w, cfg.solver);
    if (!p) return false;
    Goal g;
    g.mode = mode;
    g.ref = inst.desired;
    g.w = inst.weights;
    g = old_goal(inst.profile, inst.gamma, g, cfg);
    return goal_on_profile(*p, inst.gamma, g, cfg);
}

bool certify_exact_bribery(const BriberyInstance& inst, Attitude att, const Witness& w, const EngineConfig& cfg) {
    auto p = bribed(inst, w, cfg.solver);
    if (!p) return false;
    Goal g;
    g.att = att;
    g.target = conclusions(*inst.profile.agenda(), inst.target);
    return goal_on_profile(*p, inst.gamma, g, cfg);
}

bool certify_control(const ControlInstance& inst, Attitude att, const std::vector<std::size_t>& selection,
                     const EngineConfig& cfg) {
    auto plan = control_plan(inst);
    if (!plan) return false;
    std::set<std::size_t> sel(selection.begin(), selection.end());
    for (auto i : sel)
        if (i >= plan->forced.size()) return false;
    for (auto i : forced_positions(*plan))
        if (!sel.count(i)) return false;
    Diagnostics scratch;
    return control_check(inst, att, {sel.begin(), sel.end()}, cfg, scratch).has_value();
}

}  // namespace kemja
