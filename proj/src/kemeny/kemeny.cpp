#include "kemja/kemeny/kemeny.hpp"

#include <algorithm>
#include <functional>

namespace kemja {

const char* engine_name(Engine e) { return e == Engine::Brute ? "brute" : "oracle"; }

PositionCosts PositionCosts::of(const Profile& p) {
    PositionCosts c;
    c.if_true.assign(p.agenda()->size(), 0);
    c.if_false.assign(p.agenda()->size(), 0);
    for (const auto& r : p.rows()) c.add(r);
    return c;
}

PositionCosts& PositionCosts::add(const JudgmentSet& j, std::uint64_t times) {
    for (std::size_t i = 0; i < j.size(); ++i) (j[i] ? if_false : if_true)[i] += times;
    return *this;
}

PositionCosts& PositionCosts::remove(const JudgmentSet& j, std::uint64_t times) {
    for (std::size_t i = 0; i < j.size(); ++i) (j[i] ? if_false : if_true)[i] -= times;
    return *this;
}

PositionCosts PositionCosts::masked(const std::vector<bool>& mask) const {
    PositionCosts c = *this;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (!mask[i]) c.if_true[i] = c.if_false[i] = 0;
    return c;
}

std::uint64_t PositionCosts::of(const BitVec& b) const {
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < b.size(); ++i) d += b[i] ? if_true[i] : if_false[i];
    return d;
}

std::uint64_t PositionCosts::base() const {
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < if_true.size(); ++i) d += std::min(if_true[i], if_false[i]);
    return d;
}

bool OutcomePredicate::holds(const JudgmentSet& j) const {
    switch (kind) {
    case Kind::WeightedDistGeq: return weighted_hamming(j, ref, w) >= threshold;
    case Kind::WeightedDistLt: return weighted_hamming(j, ref, w) < threshold;
    case Kind::MissingConclusion: return !target.subset_of(j);
    case Kind::IncludesConclusions: return target.subset_of(j);
    }
    return false;
}

KemenyOracle::KemenyOracle(AgendaPtr agenda, const Formula& gamma, PositionCosts costs, const SolverConfig& cfg)
    : agenda_(std::move(agenda)), costs_(std::move(costs)), solver_(make_solver(cfg)), enc_(*solver_) {
    for (const auto& f : agenda_->formulas()) lits_.push_back(enc_.literal(f));
    enc_.assert_formula(gamma);
    for (std::size_t i = 0; i < lits_.size(); ++i) {
        const bool want_true = costs_.if_true[i] < costs_.if_false[i];
        const int l = lits_[i];
        solver_->set_phase(std::abs(l), (l > 0) == want_true);
    }
}

JudgmentSet KemenyOracle::model_set() const {
    JudgmentSet j(agenda_);
    for (std::size_t i = 0; i < lits_.size(); ++i) j.set(i, solver_->lit_value(lits_[i]));
    return j;
}

std::optional<JudgmentSet> KemenyOracle::solve_with(std::vector<int> assumptions) {
    assumptions.erase(std::remove(assumptions.begin(), assumptions.end(), 0), assumptions.end());
    if (!solver_->check(assumptions)) return std::nullopt;
    return model_set();
}

std::uint64_t KemenyOracle::min_distance() {
    if (d_win_) return *d_win_;
    auto first = solve_with({});
    if (!first) throw Infeasible("no consistent judgment set exists");
    std::uint64_t hi = costs_.of(first->bits());
    const std::uint64_t base = costs_.base();
    best_ = first;
    std::vector<std::pair<int, std::uint64_t>> terms;
    for (std::size_t i = 0; i < lits_.size(); ++i) {
        std::uint64_t t = costs_.if_true[i], f = costs_.if_false[i];
        if (t > f) terms.emplace_back(lits_[i], t - f);
        if (f > t) terms.emplace_back(-lits_[i], f - t);
    }
    dist_ = std::make_unique<WeightedCounter>(*solver_, std::move(terms), hi - base);
    std::uint64_t lo = base;
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (auto m = solve_with({dist_->at_most(mid - base)})) {
            hi = costs_.of(m->bits());
            best_ = m;
        } else {
            lo = mid + 1;
        }
    }
    d_win_ = hi;
    win_lit_ = dist_->at_most(hi - base);
    return hi;
}

JudgmentSet KemenyOracle::some_outcome() {
    min_distance();
    return *best_;
}

KemenyResult KemenyOracle::outcomes(std::size_t cap) {
    KemenyResult r;
    r.d_win = min_distance();
    const int sel = solver_->new_var();
    for (;;) {
        auto m = solve_with({win_lit_, sel});
        if (!m) break;
        if (r.outcomes.size() == cap) {
            r.truncated = true;
            break;
        }
        std::vector<int> block{-sel};
        for (std::size_t i = 0; i < lits_.size(); ++i) block.push_back((*m)[i] ? -lits_[i] : lits_[i]);
        solver_->add_clause(block);
        r.outcomes.push_back(std::move(*m));
    }
    solver_->add_clause({-sel});
    std::sort(r.outcomes.begin(), r.outcomes.end());
    r.sat_calls = sat_calls();
    return r;
}

std::uint64_t KemenyOracle::minimise(const std::vector<std::pair<int, std::uint64_t>>& terms, std::uint64_t hi,
                                     const std::function<std::uint64_t(const BitVec&)>& value) {
    WeightedCounter c(*solver_, terms, hi);
    std::uint64_t lo = 0;
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (auto m = solve_with({win_lit_, c.at_most(mid)}))
            hi = value(m->bits());
        else
            lo = mid + 1;
    }
    return hi;
}

namespace {

std::vector<std::pair<int, std::uint64_t>> disagreement(const std::vector<int>& lits, const JudgmentSet& ref,
                                                        const WeightFunction& w, bool agree) {
    std::vector<std::pair<int, std::uint64_t>> t;
    for (std::size_t i = 0; i < lits.size(); ++i) {
        if (!w[i]) continue;
        const bool off_is_true = !ref[i];  // disagreeing means taking the other value
        const bool count_true = agree ? !off_is_true : off_is_true;
        t.emplace_back(count_true ? lits[i] : -lits[i], w[i]);
    }
    return t;
}

}  // namespace

std::uint64_t KemenyOracle::extreme(const JudgmentSet& ref, const WeightFunction& w, Extreme e) {
    min_distance();
    if (w.size() != agenda_->size()) throw InvalidInstance("weight function length does not match agenda");
    const std::uint64_t d0 = weighted_hamming(*best_, ref, w);
    if (e == Extreme::Min)
        return minimise(disagreement(lits_, ref, w, false), d0,
                        [&](const BitVec& b) { return weighted_hamming(JudgmentSet(agenda_, b), ref, w); });
    const std::uint64_t W = w.total();
    std::uint64_t agree = minimise(disagreement(lits_, ref, w, true), W - d0, [&](const BitVec& b) {
        return W - weighted_hamming(JudgmentSet(agenda_, b), ref, w);
    });
    return W - agree;
}

std::optional<JudgmentSet> KemenyOracle::find_outcome(const OutcomePredicate& p) {
    min_distance();
    std::vector<int> as{win_lit_};
    switch (p.kind) {
    case OutcomePredicate::Kind::WeightedDistGeq: {
        const std::uint64_t W = p.w.total();
        if (p.threshold > W) return std::nullopt;
        if (p.threshold > 0) {
            WeightedCounter c(*solver_, disagreement(lits_, p.ref, p.w, true), W - p.threshold);
            as.push_back(c.at_most(W - p.threshold));
        }
        break;
    }
    case OutcomePredicate::Kind::WeightedDistLt: {
        if (p.threshold == 0) return std::nullopt;
        WeightedCounter c(*solver_, disagreement(lits_, p.ref, p.w, false), p.threshold - 1);
        as.push_back(c.at_most(p.threshold - 1));
        break;
    }
    case OutcomePredicate::Kind::MissingConclusion: {
        if (p.target.empty()) return std::nullopt;
        const int s = solver_->new_var();
        std::vector<int> c{-s};
        for (auto [i, b] : p.target.items) c.push_back(b ? -lits_[i] : lits_[i]);
        solver_->add_clause(c);
        as.push_back(s);
        auto r = solve_with(as);
        solver_->add_clause({-s});
        return r;
    }
    case OutcomePredicate::Kind::IncludesConclusions:
        for (auto [i, b] : p.target.items) as.push_back(b ? lits_[i] : -lits_[i]);
        break;
    }
    return solve_with(as);
}

KemenyTable::KemenyTable(AgendaPtr agenda, const Formula& gamma, std::size_t cap)
    : sets_(enumerate_consistent_sets(agenda, gamma, cap)) {}

KemenyTable::KemenyTable(std::vector<JudgmentSet> sets) : sets_(std::move(sets)) {}

std::vector<std::size_t> KemenyTable::outcome_indices(const PositionCosts& c, std::uint64_t* d_win) const {
    if (sets_.empty()) throw Infeasible("no consistent judgment set exists");
    std::uint64_t best = UINT64_MAX;
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < sets_.size(); ++k) {
        std::uint64_t d = c.of(sets_[k].bits());
        if (d < best) {
            best = d;
            out.clear();
        }
        if (d == best) out.push_back(k);
    }
    if (d_win) *d_win = best;
    return out;
}

KemenyResult KemenyTable::outcomes(const PositionCosts& c) const {
    KemenyResult r;
    for (auto k : outcome_indices(c, &r.d_win)) r.outcomes.push_back(sets_[k]);
    return r;
}

KemenyResult kemeny(const Profile& p, const Formula& gamma, const EngineConfig& cfg) {
    if (cfg.engine == Engine::Brute) return KemenyTable(p.agenda(), gamma, cfg.enum_cap).outcomes(PositionCosts::of(p));
    KemenyOracle o(p.agenda(), gamma, PositionCosts::of(p), cfg.solver);
    return o.outcomes(cfg.outcome_cap);
}

std::uint64_t min_distance_to_profile(const Profile& p, const Formula& gamma, const EngineConfig& cfg) {
    if (cfg.engine == Engine::Brute) return kemeny(p, gamma, cfg).d_win;
    return KemenyOracle(p.agenda(), gamma, PositionCosts::of(p), cfg.solver).min_distance();
}

std::uint64_t extreme_weighted_distance(const Profile& p, const Formula& gamma, const JudgmentSet& ref,
                                        const WeightFunction& w, Extreme e, const EngineConfig& cfg) {
    if (cfg.engine == Engine::Oracle)
        return KemenyOracle(p.agenda(), gamma, PositionCosts::of(p), cfg.solver).extreme(ref, w, e);
    auto r = kemeny(p, gamma, cfg);
    std::uint64_t best = e == Extreme::Min ? UINT64_MAX : 0;
    for (const auto& x : r.outcomes) {
        std::uint64_t d = weighted_hamming(x, ref, w);
        best = e == Extreme::Min ? std::min(best, d) : std::max(best, d);
    }
    return best;
}

bool exists_outcome_with(const Profile& p, const Formula& gamma, const OutcomePredicate& pred,
                         const EngineConfig& cfg) {
    if (cfg.engine == Engine::Oracle)
        return KemenyOracle(p.agenda(), gamma, PositionCosts::of(p), cfg.solver).find_outcome(pred).has_value();
    auto r = kemeny(p, gamma, cfg);
    return std::any_of(r.outcomes.begin(), r.outcomes.end(), [&](const JudgmentSet& j) { return pred.holds(j); });
}

}  // namespace kemja
