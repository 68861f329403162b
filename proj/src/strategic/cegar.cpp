// Oracle-guided deciders. A single outer SAT instance guesses the report (and
// for control the selection); every guess is checked with a fresh Kemeny
// oracle and, when it fails, a linear lemma that rules it out together with
// every guess failing for the same reason is added to the outer instance.
//
// Only reports T that are Kemeny outcomes of their own new profile are
// searched. If some report J' works and T is in Kemeny(rest, J'), the report T
// also works: T stays an outcome and the outcome set can only shrink. For
// existential modes T is taken to be the best new outcome.
//
// On agendas of plain variables two cheaper lemma shapes are used first. If
// flipping one position of T keeps it consistent and the other rows prefer the
// flipped value by more than mult, T is no outcome of its own profile; the
// lemma "that position keeps the preferred value or the flip is inconsistent"
// holds for every later guess. Likewise an improving outcome X is copied onto
// the positions where it differs from T only, guarded by consistency of the
// copy, which leaves the remaining positions free.

#include <algorithm>

#include "internal.hpp"

namespace kemja::detail {

namespace {

struct Outer {
    std::unique_ptr<SatOracle> solver;
    TseitinEncoder enc;
    std::vector<int> lits;

    Outer(const AgendaPtr& agenda, const Formula& gamma, const SolverConfig& cfg)
        : solver(make_solver(cfg)), enc(*solver) {
        for (const auto& f : agenda->formulas()) lits.push_back(enc.literal(f));
        enc.assert_formula(gamma);
    }

    JudgmentSet model(const AgendaPtr& agenda) const {
        JudgmentSet j(agenda);
        for (std::size_t i = 0; i < lits.size(); ++i) j.set(i, solver->lit_value(lits[i]));
        return j;
    }

    Assignment assignment() const {
        Assignment a;
        for (const auto& [name, v] : enc.vars()) a[name] = solver->value(v);
        return a;
    }

    // literal for gamma with some variables fixed; nullopt when that is bot
    std::optional<int> guard(const Formula& gamma, const Assignment& fixed) {
        Formula g = substitute(gamma, fixed);
        if (g.op() == Op::Top) return 0;
        if (g.op() == Op::Bot) return std::nullopt;
        return enc.literal(g);
    }

    void require(const Conclusions& l) {
        for (auto [i, b] : l.items) solver->add_clause({b ? lits[i] : -lits[i]});
    }
};

std::int64_t as_signed(std::uint64_t v) { return static_cast<std::int64_t>(v); }

}  // namespace

std::optional<JudgmentSet> self_report_search(const AgendaPtr& agenda, const Formula& gamma, const PositionCosts& rest,
                                              std::uint64_t mult, const Goal& goal, const EngineConfig& cfg,
                                              Diagnostics& diag) {
    Outer outer(agenda, gamma, cfg.solver);
    std::optional<OutcomePredicate> bad;

    if (goal.att) {
        outer.require(goal.target);
        if (*goal.att == Attitude::CautiousAll) bad = OutcomePredicate::missing_conclusion(goal.target);
    } else {
        std::uint64_t theta = 0;
        bool possible = true;
        switch (*goal.mode) {
        case Mode::Cautious:
        case Mode::Optimistic:
            possible = goal.min_old > 0;
            theta = goal.min_old - 1;
            break;
        case Mode::Pessimistic:
        case Mode::Superoptimistic:
            possible = goal.max_old > 0;
            theta = goal.max_old - 1;
            break;
        case Mode::Safe:
            possible = goal.max_old > 0;
            theta = std::min(goal.max_old - 1, goal.min_old);
            break;
        }
        if (!possible) return std::nullopt;
        switch (*goal.mode) {
        case Mode::Cautious: bad = OutcomePredicate::weighted_dist_geq(goal.ref, goal.w, goal.min_old); break;
        case Mode::Pessimistic: bad = OutcomePredicate::weighted_dist_geq(goal.ref, goal.w, goal.max_old); break;
        case Mode::Safe: bad = OutcomePredicate::weighted_dist_geq(goal.ref, goal.w, goal.min_old + 1); break;
        default: break;
        }
        std::vector<PbTerm> terms;
        for (std::size_t i = 0; i < agenda->size(); ++i)
            if (goal.w[i]) terms.push_back({goal.ref[i] ? -outer.lits[i] : outer.lits[i], as_signed(goal.w[i])});
        add_pb_at_most(*outer.solver, std::move(terms), as_signed(theta));
    }

    const std::int64_t m = as_signed(mult);
    auto lemma = [&](const JudgmentSet& x, std::int64_t strict) {
        // Dist(T, rest) - mult * d(X, T) <= Dist(X, rest) - strict
        std::vector<PbTerm> terms;
        std::int64_t constant = 0;
        for (std::size_t i = 0; i < agenda->size(); ++i) {
            std::int64_t c1 = as_signed(rest.if_true[i]) - (x[i] ? 0 : m);
            std::int64_t c0 = as_signed(rest.if_false[i]) - (x[i] ? m : 0);
            constant += c0;
            if (c1 != c0) terms.push_back({outer.lits[i], c1 - c0});
        }
        add_pb_at_most(*outer.solver, std::move(terms), as_signed(rest.of(x.bits())) - strict - constant);
    };

    const bool plain = agenda->variables_only();
    auto cost = [&](std::size_t i, bool v) { return as_signed(v ? rest.if_true[i] : rest.if_false[i]); };
    auto name = [&](std::size_t i) { return agenda->formulas()[i].name(); };

    // all improving single flips of t; false when there is none
    auto flip_lemmas = [&](const JudgmentSet& t) {
        const Assignment sigma = outer.assignment();
        bool any = false;
        for (std::size_t i = 0; i < agenda->size(); ++i) {
            const bool b = !t[i];
            if (cost(i, t[i]) - cost(i, b) <= m) continue;
            Assignment flipped = sigma;
            flipped[name(i)] = b;
            if (!evaluate(gamma, flipped)) continue;
            const auto g = outer.guard(gamma, {{name(i), b}});
            const int keep = b ? outer.lits[i] : -outer.lits[i];
            if (*g)
                outer.solver->add_clause({keep, -*g});
            else
                outer.solver->add_clause({keep});
            any = true;
        }
        return any;
    };

    // x copied onto the differing positions only; false when the copy is
    // not consistent under the current guess
    auto partial_lemma = [&](const JudgmentSet& t, const JudgmentSet& x) {
        Assignment fixed, sigma = outer.assignment();
        std::vector<PbTerm> terms;
        for (std::size_t i = 0; i < agenda->size(); ++i) {
            if (x[i] == t[i]) continue;
            fixed[name(i)] = x[i];
            sigma[name(i)] = x[i];
            const std::int64_t a = cost(i, !x[i]) - cost(i, x[i]) - m;
            if (a) terms.push_back({x[i] ? -outer.lits[i] : outer.lits[i], a});
        }
        if (!evaluate(gamma, sigma)) return false;
        add_pb_at_most(*outer.solver, std::move(terms), 0, *outer.guard(gamma, fixed));
        return true;
    };

    std::uint64_t calls = 0;
    std::optional<JudgmentSet> found;
    while (outer.solver->check()) {
        check_deadline(cfg);
        ++diag.candidates;
        JudgmentSet t = outer.model(agenda);
        if (plain && flip_lemmas(t)) continue;
        PositionCosts costs = rest;
        costs.add(t, mult);
        KemenyOracle inner(agenda, gamma, costs, cfg.solver);
        const std::uint64_t dn = inner.min_distance();
        if (costs.of(t.bits()) > dn) {
            const JudgmentSet x = inner.some_outcome();
            if (!plain || !partial_lemma(t, x)) lemma(x, 0);
        } else if (auto x = bad ? inner.find_outcome(*bad) : std::nullopt) {
            lemma(*x, 1);
        } else {
            diag.d_win_new = dn;
            found = t;
        }
        calls += inner.sat_calls();
        if (found) break;
    }
    diag.sat_calls += calls + outer.solver->calls();
    return found;
}

std::optional<std::pair<std::vector<std::size_t>, JudgmentSet>> control_search(const ControlInstance& inst,
                                                                               Attitude att,
                                                                               const EngineConfig& cfg,
                                                                               Diagnostics& diag) {
    const AgendaPtr& agenda = inst.profile.agenda();
    const std::size_t n = agenda->size();
    const Conclusions target = conclusions(*agenda, inst.target);
    const PositionCosts full = PositionCosts::of(inst.profile);

    std::vector<bool> forced(n, false);
    for (auto i : inst.fixed) forced[i] = true;
    for (auto [i, b] : target.items) forced[i] = true;

    Outer outer(agenda, inst.gamma, cfg.solver);
    outer.require(target);
    SatOracle& s = *outer.solver;
    std::vector<int> sel(n, 0), e1(n, 0), e0(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (forced[i]) continue;
        sel[i] = s.new_var();
        e1[i] = s.new_var();
        e0[i] = s.new_var();
        const int t = outer.lits[i];
        // e1 <-> sel & t, e0 <-> sel & ~t
        s.add_clause({-e1[i], sel[i]});
        s.add_clause({-e1[i], t});
        s.add_clause({e1[i], -sel[i], -t});
        s.add_clause({-e0[i], sel[i]});
        s.add_clause({-e0[i], -t});
        s.add_clause({e0[i], -sel[i], t});
        s.set_phase(sel[i], false);
    }

    std::optional<OutcomePredicate> bad;
    if (att == Attitude::CautiousAll) bad = OutcomePredicate::missing_conclusion(target);

    auto lemma = [&](const JudgmentSet& x, std::int64_t strict) {
        // sum over selected positions of cost(T_i) - cost(X_i) <= -strict
        std::vector<PbTerm> terms;
        std::int64_t constant = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::int64_t cx = as_signed(x[i] ? full.if_true[i] : full.if_false[i]);
            const std::int64_t a1 = as_signed(full.if_true[i]) - cx, a0 = as_signed(full.if_false[i]) - cx;
            if (forced[i]) {
                constant += a0;
                if (a1 != a0) terms.push_back({outer.lits[i], a1 - a0});
            } else {
                if (a1) terms.push_back({e1[i], a1});
                if (a0) terms.push_back({e0[i], a0});
            }
        }
        add_pb_at_most(s, std::move(terms), -strict - constant);
    };

    std::uint64_t calls = 0;
    std::optional<std::pair<std::vector<std::size_t>, JudgmentSet>> found;
    while (s.check()) {
        check_deadline(cfg);
        ++diag.candidates;
        JudgmentSet t = outer.model(agenda);
        std::vector<bool> mask(n);
        std::vector<std::size_t> chosen;
        for (std::size_t i = 0; i < n; ++i) {
            mask[i] = forced[i] || s.value(sel[i]);
            if (mask[i]) chosen.push_back(i);
        }
        PositionCosts costs = full.masked(mask);
        KemenyOracle inner(agenda, inst.gamma, costs, cfg.solver);
        const std::uint64_t dn = inner.min_distance();
        if (costs.of(t.bits()) > dn) {
            lemma(inner.some_outcome(), 0);
        } else if (auto x = bad ? inner.find_outcome(*bad) : std::nullopt) {
            lemma(*x, 1);
        } else {
            diag.d_win_new = dn;
            found.emplace(chosen, restrict(t, sub_agenda(*agenda, chosen)));
        }
        calls += inner.sat_calls();
        if (found) break;
    }
    diag.sat_calls += calls + s.calls();
    return found;
}

}  // namespace kemja::detail
