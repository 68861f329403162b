// Acceptance run: one PASS/FAIL line per criterion 1-9. Thresholds and
// counts are fixed here. Pass criterion numbers as arguments to run a subset.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "instances.hpp"
#include "kemja/ja/constraint.hpp"
#include "kemja/ja/ops.hpp"
#include "kemja/logic/parser.hpp"
#include "kemja/reductions/reductions.hpp"
#include "oracles.hpp"
#include "qbf_corpus.hpp"
#include "reference.hpp"

using namespace kemja;

namespace {

using Ms = std::chrono::duration<double, std::milli>;

constexpr double kLimit1 = 1000, kLimit2 = 1000;        // ms
constexpr double kLimit3 = 30'000;                      // ms, whole ledger
constexpr double kLimit4Each = 300'000, kLimit4 = 7'200'000;
constexpr double kLimit5 = 600'000;
constexpr std::size_t kRandom = 200, kPermutations = 50, kTransform = 50, kFrameworks = 50;
constexpr std::uint64_t kSeed5 = 5000, kSeed8 = 8000, kSeed9 = 9000, kSeed7 = 7000;

struct Result {
    bool pass = true;
    std::string summary;
    std::vector<std::string> problems;

    void fail(const std::string& why) {
        pass = false;
        if (problems.size() < 12) problems.push_back(why);
    }
};

const std::vector<Formula>& dilemma_pre() {
    static const std::vector<Formula> pre{parse_formula("p"), parse_formula("q"), parse_formula("p -> q")};
    return pre;
}

Profile dilemma_profile() {
    AgendaPtr a = make_agenda(dilemma_pre());
    return Profile(a, {judgment_set(a, "111"), judgment_set(a, "100"), judgment_set(a, "001")});
}

Result c1() {
    Result r;
    const auto t0 = std::chrono::steady_clock::now();
    const Profile p = dilemma_profile();
    const JudgmentSet m = majority(p);
    if (m.str() != "101") r.fail("formula majority is " + m.str());
    if (is_gamma_consistent(m, Formula::top())) r.fail("majority flagged consistent");

    auto issues = std::make_shared<const IssueSet>(std::vector<std::string>{"x1", "x2", "x3"});
    const Formula gamma = parse_formula("x3 <-> (x1 -> x2)");
    std::vector<Ballot> prof;
    for (const char* b : {"111", "100", "001"}) prof.push_back({issues, BitVec::from_string(b)});
    const Ballot mb = majority(issues, prof);
    if (mb.bits.str() != "101") r.fail("ballot majority is " + mb.bits.str());
    if (is_rational(mb, gamma, false)) r.fail("(1,0,1) flagged rational");
    for (const auto& b : prof)
        if (!is_rational(b, gamma, false)) r.fail("profile ballot " + b.bits.str() + " not rational");

    const double ms = Ms(std::chrono::steady_clock::now() - t0).count();
    if (ms >= kLimit1) r.fail("took " + std::to_string(ms) + " ms");
    r.summary = "majority {p, ~q, p -> q} inconsistent; ballot (1,0,1) not rational";
    return r;
}

Result c2() {
    Result r;
    const auto t0 = std::chrono::steady_clock::now();
    const Profile p = dilemma_profile();
    const auto sets = ref::consistent(dilemma_pre(), Formula::top());
    if (sets.size() != 4) r.fail("reference found " + std::to_string(sets.size()) + " consistent sets");
    const auto expect = ref::kemeny(sets, ref::of(p));
    for (Engine e : {Engine::Brute, Engine::Oracle}) {
        EngineConfig cfg;
        cfg.engine = e;
        const KemenyResult k = kemeny(p, Formula::top(), cfg);
        std::set<ref::Set> got, want(expect.begin(), expect.end());
        for (const auto& o : k.outcomes) got.insert(ref::of(o));
        if (k.outcomes.size() != 3 || got != want) r.fail(std::string(engine_name(e)) + " outcomes differ");
        if (k.d_win != 4) r.fail(std::string(engine_name(e)) + " distance " + std::to_string(k.d_win));
    }
    const double ms = Ms(std::chrono::steady_clock::now() - t0).count();
    if (ms >= kLimit2) r.fail("took " + std::to_string(ms) + " ms");
    r.summary = "3 outcomes at distance 4 under both engines";
    return r;
}

QbfInstance sized(std::size_t n, std::size_t m) {
    QbfInstance q;
    for (std::size_t i = 1; i <= n; ++i) q.exists.push_back("a" + std::to_string(i));
    for (std::size_t j = 1; j <= m; ++j) q.forall.push_back("b" + std::to_string(j));
    q.matrix = parse_formula("a1 | b1");
    return q;
}

Result c3() {
    Result r;
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t claims = 0, bad = 0;
    std::vector<std::pair<GadgetKind, QbfInstance>> cases;
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t m = 1; m <= 2; ++m)
            for (GadgetKind k : {GadgetKind::Manipulation, GadgetKind::Bribery, GadgetKind::Control})
                cases.emplace_back(k, sized(n, m));
    cases.emplace_back(GadgetKind::Manipulation, sized(4, 1));  // pads to n = 6
    cases.emplace_back(GadgetKind::Manipulation, sized(5, 2));
    for (const auto& [k, q] : cases) {
        const GadgetInstance g = build_gadget(k, q);
        for (const auto& e : verify_proof_ledger(g).entries) {
            if (!e.distance) continue;
            ++claims;
            if (e.expected != e.observed) {
                ++bad;
                r.fail(std::string(gadget_name(k)) + " n=" + std::to_string(g.n) + " m=" + std::to_string(g.m) +
                       " " + e.label + ": claim " + e.claim + " = " + e.expected + ", observed " + e.observed);
            }
        }
    }
    const double ms = Ms(std::chrono::steady_clock::now() - t0).count();
    if (ms >= kLimit3) r.fail("took " + std::to_string(ms) + " ms");
    r.summary = std::to_string(claims - bad) + "/" + std::to_string(claims) + " distance claims match";
    return r;
}

Result c4() {
    Result r;
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t runs = 0, agree = 0;
    double slowest = 0;
    for (const auto& e : corpus::entries()) {
        const QbfInstance q = corpus::qbf(e);
        if (qbf_truth(q) != e.truth) r.fail(std::string("corpus truth wrong for ") + e.matrix);
        for (GadgetKind k : {GadgetKind::Manipulation, GadgetKind::Bribery, GadgetKind::Control}) {
            EngineConfig cfg;
            const auto s = std::chrono::steady_clock::now();
            cfg.solver.deadline = s + std::chrono::milliseconds(static_cast<long>(kLimit4Each));
            const EquivalenceResult x = reduction_equivalence_check(q, k, cfg);
            slowest = std::max(slowest, Ms(std::chrono::steady_clock::now() - s).count());
            ++runs;
            if (x.consistent)
                ++agree;
            else
                r.fail(std::string(e.matrix) + ": " + x.detail);
        }
    }
    const double ms = Ms(std::chrono::steady_clock::now() - t0).count();
    if (ms >= kLimit4) r.fail("took " + std::to_string(ms) + " ms");
    std::ostringstream s;
    s << agree << "/" << runs << " decider answers equal the QBF value; slowest " << static_cast<long>(slowest) << " ms";
    r.summary = s.str();
    return r;
}

struct RandomRuns {
    std::vector<RandomInstance> inst;
    std::vector<std::vector<Verdict>> brute, oracle;
    std::vector<KemenyResult> kb, ko;
    double ms = 0;
};

const RandomRuns& random_runs() {
    static RandomRuns rr = [] {
        RandomRuns out;
        const auto t0 = std::chrono::steady_clock::now();
        EngineConfig b, o;
        b.engine = Engine::Brute;
        o.engine = Engine::Oracle;
        for (std::uint64_t s = kSeed5; s < kSeed5 + kRandom; ++s) {
            const RandomInstance ri = random_instance(s);
            out.inst.push_back(ri);
            out.kb.push_back(kemeny(ri.profile, ri.gamma, b));
            out.ko.push_back(kemeny(ri.profile, ri.gamma, o));
            out.brute.push_back(fixture::verdicts(ri, b));
            out.oracle.push_back(fixture::verdicts(ri, o));
        }
        out.ms = Ms(std::chrono::steady_clock::now() - t0).count();
        return out;
    }();
    return rr;
}

Result c5() {
    Result r;
    const RandomRuns& rr = random_runs();
    std::size_t answers = 0;
    for (std::size_t i = 0; i < rr.inst.size(); ++i) {
        const auto& ri = rr.inst[i];
        const std::string tag = "seed " + std::to_string(ri.seed);
        if (ri.agenda->size() > 8) r.fail(tag + " has more than 8 formulas");
        if (rr.kb[i].d_win != rr.ko[i].d_win) r.fail(tag + " kemeny distance differs");
        if (rr.kb[i].outcomes != rr.ko[i].outcomes) r.fail(tag + " kemeny outcomes differ");
        if (rr.brute[i].size() != 16) r.fail(tag + " battery size");
        for (std::size_t k = 0; k < rr.brute[i].size(); ++k) {
            ++answers;
            if (rr.brute[i][k].answer != rr.oracle[i][k].answer) r.fail(tag + " decider " + std::to_string(k));
        }
    }
    if (rr.ms >= kLimit5) r.fail("took " + std::to_string(rr.ms) + " ms");
    r.summary = std::to_string(rr.inst.size()) + " instances, " + std::to_string(answers) +
                " decider answers compared, " + std::to_string(static_cast<long>(rr.ms)) + " ms";
    return r;
}

Result c6() {
    Result r;
    const RandomRuns& rr = random_runs();
    const std::pair<int, int> imp[] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {4, 3}};
    std::size_t checked = 0;
    for (std::size_t i = 0; i < rr.inst.size(); ++i)
        for (const auto* vs : {&rr.brute[i], &rr.oracle[i]})
            for (std::size_t base : {0u, 5u})
                for (auto [a, b] : imp) {
                    ++checked;
                    if ((*vs)[base + a].answer && !(*vs)[base + b].answer)
                        r.fail("seed " + std::to_string(rr.inst[i].seed) + (base ? " bribery " : " manipulation ") +
                               mode_name(kAllModes[a]) + " without " + mode_name(kAllModes[b]));
                }
    r.summary = std::to_string(checked) + " implications checked";
    return r;
}

Result c7() {
    Result r;
    std::mt19937_64 rng(kSeed7);
    std::size_t checks = 0;
    for (std::uint64_t s = kSeed7; s < kSeed7 + kRandom; ++s) {
        const RandomInstance ri = random_instance(s);
        const AgendaPtr& a = ri.agenda;
        const std::string tag = "seed " + std::to_string(s);
        auto random_set = [&] {
            JudgmentSet j(a);
            for (std::size_t i = 0; i < a->size(); ++i) j.set(i, rng() & 1u);
            return j;
        };
        const JudgmentSet x = random_set(), y = random_set(), z = random_set();
        const auto rx = ref::of(x), ry = ref::of(y);
        checks += 5;
        if (hamming(x, x) != 0) r.fail(tag + " d(x,x) != 0");
        if ((hamming(x, y) == 0) != (x == y)) r.fail(tag + " identity of indiscernibles");
        if (hamming(x, y) != hamming(y, x)) r.fail(tag + " symmetry");
        if (hamming(x, z) > hamming(x, y) + hamming(y, z)) r.fail(tag + " triangle");
        if (hamming(x, y) != ref::dist(rx, ry)) r.fail(tag + " hamming disagrees with counting");
        ++checks;
        if (weighted_hamming(x, y, WeightFunction::uniform(a->size())) != hamming(x, y)) r.fail(tag + " w = 1");
        ++checks;
        if (weighted_hamming(x, y, ri.weights) != ref::dist(rx, ry, &ri.weights.values()))
            r.fail(tag + " weighted hamming disagrees with counting");

        const KemenyResult k = kemeny(ri.profile, ri.gamma);
        const auto sets = ref::consistent(a->formulas(), ri.gamma);
        const auto want = ref::kemeny(sets, ref::of(ri.profile));
        std::set<ref::Set> got;
        for (const auto& o : k.outcomes) {
            got.insert(ref::of(o));
            checks += 3;
            if (o.size() != a->size()) r.fail(tag + " incomplete outcome");
            if (!is_gamma_consistent(o, ri.gamma)) r.fail(tag + " inconsistent outcome");
            if (cumulative_distance(o, ri.profile) != k.d_win) r.fail(tag + " outcome off the minimum");
        }
        ++checks;
        if (got != std::set<ref::Set>(want.begin(), want.end())) r.fail(tag + " outcomes differ from enumeration");

        if (s - kSeed7 < kPermutations) {
            std::vector<JudgmentSet> rows = ri.profile.rows();
            std::shuffle(rows.begin(), rows.end(), rng);
            const KemenyResult kp = kemeny(Profile(a, rows), ri.gamma);
            ++checks;
            if (kp.outcomes != k.outcomes || kp.d_win != k.d_win) r.fail(tag + " not anonymous");
        }
    }
    r.summary = std::to_string(checks) + " metric and rule checks";
    return r;
}

bool short_clause(const Formula& f) {
    auto lit = [](const Formula& g) { return g.is_var() || (g.op() == Op::Not && g.kid(0).is_var()); };
    if (lit(f)) return true;
    if (f.op() != Op::Or || f.kids().size() > 3) return false;
    return std::all_of(f.kids().begin(), f.kids().end(), lit);
}

Result c8() {
    Result r;
    RandomParams p;
    p.clause_agenda = true;
    p.min_agents = 3;
    p.max_agents = 4;
    p.max_formulas = 4;
    p.max_vars = 4;
    EngineConfig brute, oracle;
    brute.engine = Engine::Brute;
    std::size_t answers = 0;
    for (std::uint64_t s = kSeed8; s < kSeed8 + kTransform; ++s) {
        const RandomInstance ri = random_instance(s, p);
        const std::string tag = "seed " + std::to_string(s);
        const ManipulationInstance src = fixture::manip(ri);
        if (src.profile.size() < 3 || src.profile.size() > 4) r.fail(tag + " agent count");
        const ManipulationInstance out = three_clause_transform(src);
        if (out.gamma.op() != Op::Top) r.fail(tag + " gamma is not top");
        for (const auto& f : out.profile.agenda()->formulas())
            if (!short_clause(f)) r.fail(tag + " " + f.str() + " is not a clause of at most 3 literals");
        for (Mode m : kAllModes) {
            ++answers;
            if (decide_manipulation(src, m, brute).answer != decide_manipulation(out, m, oracle).answer)
                r.fail(tag + " " + mode_name(m) + " changed");
        }
    }
    r.summary = std::to_string(answers) + " manipulation answers unchanged by the transform";
    return r;
}

Result c9() {
    Result r;
    RandomParams p;
    p.variables_only = true;
    std::size_t compared = 0;
    for (std::uint64_t s = kSeed9; s < kSeed9 + kFrameworks; ++s) {
        const RandomInstance ri = random_instance(s, p);
        const std::string tag = "seed " + std::to_string(s);
        std::vector<std::string> names;
        for (const auto& f : ri.agenda->formulas()) names.push_back(f.name());
        auto issues = std::make_shared<const IssueSet>(names);
        std::vector<Ballot> ballots;
        for (const auto& j : ri.profile.rows()) ballots.push_back(to_ballot(j, issues));

        // constraint side: issue agenda and ballots mapped bit for bit
        RandomInstance ci = ri;
        ci.agenda = issue_agenda(*issues);
        std::vector<JudgmentSet> rows;
        for (const auto& b : ballots) rows.push_back(to_judgment_set(b, ci.agenda));
        ci.profile = Profile(ci.agenda, rows);
        ci.desired = to_judgment_set(to_ballot(ri.desired, issues), ci.agenda);

        const KemenyResult kf = kemeny(ri.profile, ri.gamma), kc = kemeny(ci.profile, ci.gamma);
        std::set<std::string> bf, bc, want;
        for (const auto& o : kf.outcomes) bf.insert(o.str());
        for (const auto& o : kc.outcomes) bc.insert(to_ballot(o, issues).bits.str());
        // ballot-level enumeration: rational ballots at minimal summed distance
        std::uint64_t best = UINT64_MAX;
        for (std::uint64_t m = 0; m < (1ull << names.size()); ++m) {
            Ballot b{issues, BitVec(names.size())};
            for (std::size_t i = 0; i < names.size(); ++i) b.bits.set(i, (m >> i) & 1u);
            if (!is_rational(b, ri.gamma, true)) continue;
            std::uint64_t d = 0;
            for (const auto& x : ballots) d += hamming(b, x);
            if (d < best) {
                best = d;
                want.clear();
            }
            if (d == best) want.insert(b.bits.str());
        }
        ++compared;
        if (bf != bc || kf.d_win != kc.d_win) r.fail(tag + " kemeny differs between encodings");
        if (bc != want || kc.d_win != best) r.fail(tag + " kemeny differs from ballot enumeration");
        if (majority(ri.profile).str() != majority(issues, ballots).bits.str()) r.fail(tag + " majority differs");

        const auto vf = fixture::answers(fixture::verdicts(ri, {})), vc = fixture::answers(fixture::verdicts(ci, {}));
        compared += vf.size();
        if (vf != vc) r.fail(tag + " decider answers differ between encodings");
    }
    r.summary = std::to_string(kFrameworks) + " instances, " + std::to_string(compared) + " comparisons";
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Result()>> all{c1, c2, c3, c4, c5, c6, c7, c8, c9};
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    bool ok = true;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Result r;
        try {
            r = all[i]();
        } catch (const std::exception& e) {
            r.fail(std::string("exception: ") + e.what());
        }
        const double ms = Ms(std::chrono::steady_clock::now() - t0).count();
        ok = ok && r.pass;
        std::printf("criterion %d: %s  %s (%.0f ms)\n", id, r.pass ? "PASS" : "FAIL", r.summary.c_str(), ms);
        for (const auto& p : r.problems) std::printf("    %s\n", p.c_str());
        std::fflush(stdout);
    }
    return ok ? 0 : 1;
}
