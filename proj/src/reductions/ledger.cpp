#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "kemja/kemeny/kemeny.hpp"
#include "kemja/reductions/reductions.hpp"

namespace kemja {

bool ProofLedger::all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const LedgerEntry& e) { return e.pass; });
}

bool ProofLedger::distances_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const LedgerEntry& e) { return !e.distance || e.pass; });
}

std::string ProofLedger::str() const {
    std::ostringstream os;
    for (const auto& e : entries)
        os << e.label << '\t' << e.claim << '\t' << e.expected << '\t' << e.observed << '\t'
           << (e.pass ? "PASS" : "FAIL") << '\n';
    return os.str();
}

namespace {

using Fill = std::function<bool(const std::string&)>;

struct Ctx {
    const GadgetInstance& g;
    const SolverConfig& cfg;
    ProofLedger out;

    // set from per-variable values; names absent from the agenda are skipped
    JudgmentSet make(const AgendaPtr& a, const Fill& f) const {
        JudgmentSet j(a);
        for (std::size_t i = 0; i < a->size(); ++i) j.set(i, f(a->formulas()[i].name()));
        return j;
    }

    void distance(const std::string& label, const std::string& claim, std::uint64_t expected, std::uint64_t seen) {
        out.entries.push_back({label, claim, true, std::to_string(expected), std::to_string(seen), expected == seen});
    }

    void fact(const std::string& label, const std::string& claim, bool expected, bool seen) {
        auto s = [](bool b) { return std::string(b ? "true" : "false"); };
        out.entries.push_back({label, claim, false, s(expected), s(seen), expected == seen});
    }

    void consistent(const std::string& label, const JudgmentSet& j, bool expected) {
        fact(label, "consistent(" + label.substr(label.find(' ') + 1) + ")", expected,
             is_gamma_consistent(j, g.gamma(), cfg));
    }

    // Kemeny(p) equals exactly the named sets
    void outcomes(const std::string& label, const std::string& claim, const Profile& p,
                  const std::vector<std::pair<std::string, JudgmentSet>>& named) {
        EngineConfig ec;
        ec.solver = cfg;
        ec.outcome_cap = 256;
        KemenyResult r = kemeny(p, g.gamma(), ec);
        std::set<std::string> want, got;
        for (const auto& [n, j] : named) want.insert(j.str());
        for (const auto& j : r.outcomes) got.insert(j.str());
        std::ostringstream exp, obs;
        exp << named.size() << " outcomes:";
        for (const auto& [n, j] : named) exp << ' ' << n;
        obs << (r.truncated ? ">" : "") << r.outcomes.size() << " outcomes at " << r.d_win << ':';
        std::size_t hit = 0;
        for (const auto& [n, j] : named)
            if (got.count(j.str())) {
                obs << ' ' << n;
                ++hit;
            }
        if (hit < r.outcomes.size()) obs << " +" << r.outcomes.size() - hit << " others";
        out.entries.push_back({label, claim, false, exp.str(), obs.str(), !r.truncated && want == got});
    }
};

Assignment pick_alpha(const QbfInstance& q, const SolverConfig& cfg) {
    if (auto a = qbf_witness(q, cfg)) return *a;
    return counting_assignment(q.exists, 0);
}

// first beta falsifying psi under alpha
std::optional<Assignment> pick_beta(const QbfInstance& q, const Assignment& alpha) {
    for (std::uint64_t i = 0; i < (1ull << q.forall.size()); ++i) {
        Assignment ab = alpha, b = counting_assignment(q.forall, i);
        ab.insert(b.begin(), b.end());
        if (!evaluate(q.matrix, ab)) return b;
    }
    return std::nullopt;
}

bool in_family(const GadgetInstance& g, const std::string& fam, const std::string& v) {
    const auto& f = g.families.at(fam);
    return std::find(f.begin(), f.end(), v) != f.end();
}

// value of x_i / xp_i style names under alpha; the control gadget uses x_i_j
std::optional<bool> x_value(const GadgetInstance& g, const Assignment& alpha, const std::string& v) {
    const bool primed = v.rfind("xp_", 0) == 0;
    if (!primed && v.rfind("x_", 0) != 0) return std::nullopt;
    std::string rest = v.substr(primed ? 3 : 2);
    rest = rest.substr(0, rest.find('_'));
    const bool val = alpha.at("x_" + rest);
    (void)g;
    return primed ? !val : val;
}

std::optional<bool> y_value(const Assignment& beta, const std::string& v) {
    if (v.rfind("yp_", 0) == 0) return !beta.at("y_" + v.substr(3));
    if (v.rfind("y_", 0) == 0) return beta.at(v);
    return std::nullopt;
}

void manipulation_ledger(Ctx& c) {
    const GadgetInstance& g = c.g;
    const auto n = g.n, m = g.m, u = g.u;
    const Profile& prof = g.profile();
    const AgendaPtr& a = prof.agenda();
    const Assignment alpha = pick_alpha(g.qbf, c.cfg);
    const auto beta_false = pick_beta(g.qbf, alpha);
    const Assignment beta = beta_false ? *beta_false : counting_assignment(g.qbf.forall, 0);
    const bool valid = !beta_false;

    auto fam = [&](const std::string& f, const std::string& v) { return in_family(g, f, v); };
    auto old = [&](const char* w) {
        return c.make(a, [&](const std::string& v) { return fam("z", v) || fam("t", v) || fam(w, v); });
    };
    const JudgmentSet old1 = old("w2"), old2 = old("w3");
    auto alpha_set = [&](bool u1) {
        return c.make(a, [&](const std::string& v) {
            if (auto x = x_value(g, alpha, v)) return *x;
            return fam("t", v) || fam("w1", v) || (u1 && fam("u1", v));
        });
    };
    const JudgmentSet j_alpha = alpha_set(true), js_alpha = alpha_set(false);
    const JudgmentSet js_beta = c.make(a, [&](const std::string& v) {
        if (auto x = x_value(g, alpha, v)) return *x;
        if (auto y = y_value(beta, v)) return *y;
        return fam("w2", v);
    });

    for (std::size_t i = 0; i < 3; ++i) c.consistent("M.row J" + std::to_string(i + 1), prof[i], true);
    c.consistent("M.cons J*_old,1", old1, true);
    c.consistent("M.cons J*_old,2", old2, true);
    c.consistent("M.cons J_alpha", j_alpha, true);
    c.consistent("M.cons J*_alpha", js_alpha, true);
    c.consistent("M.cons J*_beta", js_beta, !valid);

    c.distance("M1 Dist(J*_old,1, J)", "7n+3m+1+3u", 7 * n + 3 * m + 1 + 3 * u, cumulative_distance(old1, prof));
    c.distance("M1 Dist(J*_old,2, J)", "7n+3m+1+3u", 7 * n + 3 * m + 1 + 3 * u, cumulative_distance(old2, prof));
    c.distance("M2 Dist(J*_alpha, J)", "7n+3m+2+3u", 7 * n + 3 * m + 2 + 3 * u, cumulative_distance(js_alpha, prof));
    std::vector<JudgmentSet> rows = prof.rows();
    rows[0] = js_alpha;
    const Profile after(a, rows);
    c.distance("M3 Dist(J*_alpha, J')", "6n+3m+2+2u", 6 * n + 3 * m + 2 + 2 * u, cumulative_distance(js_alpha, after));
    c.distance("M4 Dist(J*_beta, J')", "6n+3m+1+2u", 6 * n + 3 * m + 1 + 2 * u, cumulative_distance(js_beta, after));

    const WeightFunction& w = g.manipulation->weights;
    c.fact("M.pref d(J1,J*_alpha) < d(J1,J*_old)", "strictly_less", true,
           weighted_hamming(prof[0], js_alpha, w) < weighted_hamming(prof[0], old1, w) &&
               weighted_hamming(prof[0], js_alpha, w) < weighted_hamming(prof[0], old2, w));
    c.outcomes("M.kemeny Kemeny(J)", "Kemeny(J) = {J*_old,1, J*_old,2}", prof,
               {{"J*_old,1", old1}, {"J*_old,2", old2}});
    if (valid) {
        rows[0] = j_alpha;
        c.outcomes("M.kemeny Kemeny(J-1, J_alpha)", "Kemeny(J-1, J_alpha) = {J*_alpha}", Profile(a, rows),
                   {{"J*_alpha", js_alpha}});
    }
}

void bribery_ledger(Ctx& c) {
    const GadgetInstance& g = c.g;
    const auto n = g.n, m = g.m, u = g.u;
    const Profile& prof = g.profile();
    const AgendaPtr& a = prof.agenda();
    const Assignment alpha = pick_alpha(g.qbf, c.cfg);
    const auto beta_false = pick_beta(g.qbf, alpha);
    const Assignment beta = beta_false ? *beta_false : counting_assignment(g.qbf.forall, 0);
    const bool valid = !beta_false;

    auto fam = [&](const std::string& f, const std::string& v) { return in_family(g, f, v); };
    const JudgmentSet old = c.make(a, [&](const std::string& v) { return fam("z", v) || fam("t", v) || v == "a"; });
    const JudgmentSet js_alpha = c.make(a, [&](const std::string& v) {
        if (auto x = x_value(g, alpha, v)) return *x;
        return fam("t", v) || fam("b", v);
    });
    const JudgmentSet js_beta = c.make(a, [&](const std::string& v) {
        if (auto x = x_value(g, alpha, v)) return *x;
        if (auto y = y_value(beta, v)) return *y;
        return v == "a";
    });

    for (std::size_t i = 0; i < 3; ++i) c.consistent("B.row J" + std::to_string(i + 1), prof[i], true);
    c.consistent("B.cons J*_old", old, true);
    c.consistent("B.cons J*_alpha", js_alpha, true);
    c.consistent("B.cons J*_beta", js_beta, !valid);

    const auto& br = *g.bribery;
    c.distance("B0 d(J0, J*_old, w)", "2m+4", 2 * m + 4, weighted_hamming(br.desired, old, br.weights));
    c.distance("B1 Dist(J*_old, J)", "6n+3+3u", 6 * n + 3 + 3 * u, cumulative_distance(old, prof));
    std::vector<JudgmentSet> rows = prof.rows();
    rows[0] = js_alpha;
    const Profile after(a, rows);
    c.distance("B2 Dist(J*_alpha, J')", "2n+6m+8+2u", 2 * n + 6 * m + 8 + 2 * u, cumulative_distance(js_alpha, after));
    c.distance("B3 Dist(J*_beta, J')", "2n+6m+7+2u", 2 * n + 6 * m + 7 + 2 * u, cumulative_distance(js_beta, after));

    c.fact("B.pref d(J0,J*_alpha,w) < d(J0,J*_old,w)", "strictly_less", true,
           weighted_hamming(br.desired, js_alpha, br.weights) < weighted_hamming(br.desired, old, br.weights));
    c.outcomes("B.kemeny Kemeny(J)", "Kemeny(J) = {J*_old}", prof, {{"J*_old", old}});
    if (valid)
        c.outcomes("B.kemeny Kemeny(J')", "Kemeny(J') = {J*_alpha}", after, {{"J*_alpha", js_alpha}});
}

void control_ledger(Ctx& c) {
    const GadgetInstance& g = c.g;
    const auto m = g.m, u = g.u;
    const auto& ci = *g.control;
    const AgendaPtr& full = ci.profile.agenda();
    const Assignment alpha = pick_alpha(g.qbf, c.cfg);
    const auto beta_false = pick_beta(g.qbf, alpha);
    const Assignment beta = beta_false ? *beta_false : counting_assignment(g.qbf.forall, 0);
    const bool valid = !beta_false;
    auto fam = [&](const std::string& f, const std::string& v) { return in_family(g, f, v); };

    for (std::size_t i = 0; i < 3; ++i) c.consistent("C.row J" + std::to_string(i + 1), ci.profile[i], true);

    const SubAgenda base = sub_agenda(*full, ci.fixed);
    const Profile on_base = restrict(ci.profile, base);
    const JudgmentSet old0 = c.make(base.agenda, [&](const std::string& v) { return fam("t", v) || v == "a"; });
    std::vector<std::pair<std::string, JudgmentSet>> olds{{"J*_old,0", old0}};
    for (std::uint64_t i = 0; i < (1ull << m); ++i) {
        const Assignment b = counting_assignment(g.qbf.forall, i);
        olds.emplace_back("J*_old,beta" + std::to_string(i), c.make(base.agenda, [&](const std::string& v) {
            if (auto y = y_value(b, v)) return *y;
            return v == "a";
        }));
    }
    c.consistent("C.cons J*_old,0", old0, true);
    c.distance("C1 Dist(J*_old,0, J|Phi')", "3m+2+3u", 3 * m + 2 + 3 * u, cumulative_distance(old0, on_base));
    c.distance("C1 Dist(J*_old,beta, J|Phi')", "3m+2+3u", 3 * m + 2 + 3 * u,
               cumulative_distance(olds[1].second, on_base));
    c.outcomes("C.kemeny Kemeny(J|Phi')", "Kemeny(J|Phi') = {J*_old,0} + {J*_old,beta}", on_base, olds);

    // Phi'': x_i_j where alpha(x_i) = 1, xp_i_j otherwise
    std::vector<std::size_t> pos = ci.fixed;
    for (std::size_t i = 0; i < full->size(); ++i) {
        auto x = x_value(g, alpha, full->formulas()[i].name());
        if (x && *x) pos.push_back(i);
    }
    std::sort(pos.begin(), pos.end());
    const SubAgenda chosen = sub_agenda(*full, pos);
    const Profile on_chosen = restrict(ci.profile, chosen);
    const JudgmentSet js_alpha = c.make(chosen.agenda, [&](const std::string& v) {
        return fam("x", v) || fam("xp", v) || fam("t", v) || v == "b";
    });
    const JudgmentSet js_beta = c.make(chosen.agenda, [&](const std::string& v) {
        if (auto y = y_value(beta, v)) return *y;
        return fam("x", v) || fam("xp", v) || v == "a";
    });
    c.consistent("C.cons J*_alpha", js_alpha, true);
    c.consistent("C.cons J*_beta", js_beta, !valid);
    c.distance("C2 Dist(J*_alpha, J|Phi'')", "3m+3+3u", 3 * m + 3 + 3 * u, cumulative_distance(js_alpha, on_chosen));
    c.distance("C3 Dist(J*_beta, J|Phi'')", "3m+2+3u", 3 * m + 2 + 3 * u, cumulative_distance(js_beta, on_chosen));
    if (valid)
        c.outcomes("C.kemeny Kemeny(J|Phi'')", "Kemeny(J|Phi'') = {J*_alpha}", on_chosen, {{"J*_alpha", js_alpha}});
}

}  // namespace

ProofLedger verify_proof_ledger(const GadgetInstance& g, const SolverConfig& cfg) {
    if (g.tainted) throw InvalidInstance("gadget built with an overridden u; distance claims do not apply");
    Ctx c{g, cfg, {}};
    switch (g.kind) {
    case GadgetKind::Manipulation: manipulation_ledger(c); break;
    case GadgetKind::Bribery: bribery_ledger(c); break;
    case GadgetKind::Control: control_ledger(c); break;
    }
    return c.out;
}

EquivalenceResult reduction_equivalence_check(const QbfInstance& q, GadgetKind which, const EngineConfig& cfg) {
    EquivalenceResult r;
    std::ostringstream detail;
    detail << gadget_name(which);
    try {
        r.qbf = qbf_truth(q, cfg.solver);
        detail << " qbf=" << (r.qbf ? "true" : "false");
        const GadgetInstance g = build_gadget(which, q);
        if (which == GadgetKind::Manipulation) {
            r.answers.push_back(decide_manipulation(*g.manipulation, Mode::Cautious, cfg).answer);
        } else if (which == GadgetKind::Bribery) {
            r.answers.push_back(decide_bribery(*g.bribery, Mode::Cautious, cfg).answer);
        } else {
            for (Attitude a : {Attitude::CautiousAll, Attitude::BraveSome})
                r.answers.push_back(decide_control(*g.control, a, cfg).answer);
        }
    } catch (const Timeout&) {
        detail << " timeout";
        r.detail = detail.str();
        return r;
    }
    detail << " decider=";
    for (bool b : r.answers) detail << (b ? 'y' : 'n');
    r.consistent = std::all_of(r.answers.begin(), r.answers.end(), [&](bool b) { return b == r.qbf; });
    if (!r.consistent) detail << " mismatch";
    r.detail = detail.str();
    return r;
}

}  // namespace kemja
