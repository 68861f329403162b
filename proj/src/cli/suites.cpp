#include "kemja/cli/suites.hpp"

#include <sstream>

#include <json.hpp>

#include "kemja/logic/parser.hpp"

namespace kemja {

bool SuiteReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string SuiteReport::str() const {
    std::ostringstream o;
    std::size_t ok = 0;
    for (const auto& c : checks) {
        ok += c.pass;
        o << (c.pass ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) o << "  " << c.detail;
        o << "\n";
    }
    o << suite << ": " << ok << "/" << checks.size() << " passed\n";
    return o.str();
}

std::string SuiteReport::json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["pass"] = pass();
    auto& cs = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) cs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return j.dump(1) + "\n";
}

namespace {

EngineConfig with_deadline(const SuiteConfig& cfg) {
    EngineConfig e = cfg.engine;
    if (cfg.timeout_s)
        e.solver.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                               std::chrono::duration<double>(*cfg.timeout_s));
    return e;
}

QbfInstance sized_qbf(std::size_t n, std::size_t m) {
    QbfInstance q;
    for (std::size_t i = 1; i <= n; ++i) q.exists.push_back("x" + std::to_string(i));
    for (std::size_t j = 1; j <= m; ++j) q.forall.push_back("y" + std::to_string(j));
    q.matrix = parse_formula("x1 | y1");
    return q;
}

}  // namespace

std::vector<std::string> battery_names() {
    std::vector<std::string> out;
    for (Mode m : kAllModes) out.push_back(std::string("manip/") + mode_name(m));
    for (Mode m : kAllModes) out.push_back(std::string("bribe/") + mode_name(m));
    for (Attitude a : {Attitude::CautiousAll, Attitude::BraveSome})
        out.push_back(std::string("manip-exact/") + attitude_name(a));
    for (Attitude a : {Attitude::CautiousAll, Attitude::BraveSome})
        out.push_back(std::string("bribe-exact/") + attitude_name(a));
    for (Attitude a : {Attitude::CautiousAll, Attitude::BraveSome})
        out.push_back(std::string("control-add/") + attitude_name(a));
    return out;
}

std::vector<Verdict> decider_battery(const RandomInstance& ri, const EngineConfig& cfg) {
    const ManipulationInstance mi{ri.gamma, ri.profile, ri.weights, ri.target};
    const BriberyInstance bi{ri.gamma, ri.profile, ri.weights, ri.desired, ri.budget, ri.target};
    const ControlInstance ci{ri.gamma, ri.profile, ri.fixed, ri.target, ControlDirection::Add};
    std::vector<Verdict> out;
    for (Mode m : kAllModes) out.push_back(decide_manipulation(mi, m, cfg));
    for (Mode m : kAllModes) out.push_back(decide_bribery(bi, m, cfg));
    for (Attitude a : {Attitude::CautiousAll, Attitude::BraveSome}) out.push_back(decide_exact_manipulation(mi, a, cfg));
    for (Attitude a : {Attitude::CautiousAll, Attitude::BraveSome}) out.push_back(decide_exact_bribery(bi, a, cfg));
    for (Attitude a : {Attitude::CautiousAll, Attitude::BraveSome}) out.push_back(decide_control(ci, a, cfg));
    return out;
}

SuiteReport ledger_suite(const SuiteConfig& cfg) {
    SuiteReport r{"ledger", {}};
    std::vector<std::pair<GadgetKind, QbfInstance>> cases;
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t m = 1; m <= 2; ++m)
            for (GadgetKind k : {GadgetKind::Manipulation, GadgetKind::Bribery, GadgetKind::Control})
                cases.emplace_back(k, sized_qbf(n, m));
    // four existentials pad to six
    cases.emplace_back(GadgetKind::Manipulation, sized_qbf(4, 1));
    for (const auto& [k, q] : cases) {
        const std::string tag = std::string(gadget_name(k)) + " n=" + std::to_string(q.exists.size()) +
                                " m=" + std::to_string(q.forall.size()) + " ";
        try {
            const GadgetInstance g = build_gadget(k, q);
            const ProofLedger l = verify_proof_ledger(g, with_deadline(cfg).solver);
            for (const auto& e : l.entries)
                r.checks.push_back({tag + e.label, e.pass, "claim " + e.expected + ", observed " + e.observed});
        } catch (const Timeout&) {
            r.checks.push_back({tag + "ledger", false, "timeout"});
        }
    }
    return r;
}

std::vector<QbfInstance> builtin_qbf_corpus() {
    const std::vector<std::tuple<std::size_t, std::size_t, const char*>> raw{
        {1, 1, "x1 | y1"},
        {1, 1, "x1 & y1"},
        {1, 1, "x1 ^ y1"},
        {1, 1, "~x1"},
        {1, 2, "x1 | (y1 & y2)"},
        {1, 2, "(x1 | y1) & (~x1 | y2)"},
        {2, 1, "(x1 & ~x2) | y1"},
        {2, 1, "(x1 ^ x2) & y1"},
        {2, 1, "(x1 | y1) & (x2 | ~y1)"},
        {2, 2, "(x1 | y1) & (x2 | y2)"},
        {2, 2, "(x1 ^ y1) | (x2 & y2)"},
        {2, 2, "(x1 <-> y1) | (x2 <-> y2)"},
        {3, 1, "(x1 | x2 | x3) & y1"},
        {3, 1, "x1 -> y1"},
        {3, 1, "(x1 ^ x2 ^ x3) <-> y1"},
        {3, 2, "(x1 & ~x2) | (x3 & y1 & y2)"},
        {3, 2, "(y1 -> x1) & (y2 -> ~x1) & x3"},
        {3, 2, "(x1 & x2) | y1 | y2"},
        {3, 2, "(x1 | y1) & (x2 | y2) & (x3 | ~y1)"},
        {2, 1, "x1 & ~x1 & x2"},
    };
    std::vector<QbfInstance> out;
    for (const auto& [n, m, text] : raw) {
        QbfInstance q = sized_qbf(n, m);
        q.matrix = parse_formula(text);
        out.push_back(q);
    }
    return out;
}

SuiteReport equivalence_suite(const SuiteConfig& cfg) {
    SuiteReport r{"equivalence", {}};
    for (const auto& q : builtin_qbf_corpus())
        for (GadgetKind k : {GadgetKind::Manipulation, GadgetKind::Bribery, GadgetKind::Control}) {
            const EquivalenceResult e = reduction_equivalence_check(q, k, with_deadline(cfg));
            r.checks.push_back({std::string(gadget_name(k)) + " " + q.matrix.str(), e.consistent, e.detail});
        }
    return r;
}

SuiteReport engines_suite(const SuiteConfig& cfg) {
    SuiteReport r{"engines", {}};
    const auto names = battery_names();
    for (std::uint64_t s = cfg.seed; s < cfg.seed + cfg.count; ++s) {
        const RandomInstance ri = random_instance(s, cfg.params);
        const std::string tag = "seed " + std::to_string(s) + " ";
        EngineConfig brute = with_deadline(cfg), oracle = brute;
        brute.engine = Engine::Brute;
        oracle.engine = Engine::Oracle;
        try {
            const KemenyResult kb = kemeny(ri.profile, ri.gamma, brute), ko = kemeny(ri.profile, ri.gamma, oracle);
            r.checks.push_back({tag + "kemeny", kb.d_win == ko.d_win && kb.outcomes == ko.outcomes,
                                "d_win " + std::to_string(kb.d_win) + "/" + std::to_string(ko.d_win)});
            const auto vb = decider_battery(ri, brute), vo = decider_battery(ri, oracle);
            for (std::size_t k = 0; k < vb.size(); ++k)
                r.checks.push_back({tag + names[k], vb[k].answer == vo[k].answer,
                                    std::string(vb[k].answer ? "y" : "n") + "/" + (vo[k].answer ? "y" : "n")});
        } catch (const Timeout&) {
            r.checks.push_back({tag + "run", false, "timeout"});
        }
    }
    return r;
}

SuiteReport lattice_suite(const SuiteConfig& cfg) {
    SuiteReport r{"lattice", {}};
    // indices into kAllModes
    const std::pair<int, int> imp[] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {4, 3}};
    for (std::uint64_t s = cfg.seed; s < cfg.seed + cfg.count; ++s) {
        const RandomInstance ri = random_instance(s, cfg.params);
        const std::string tag = "seed " + std::to_string(s) + " ";
        try {
            const auto v = decider_battery(ri, with_deadline(cfg));
            for (std::size_t base : {0u, 5u})
                for (auto [a, b] : imp) {
                    const bool ok = !v[base + a].answer || v[base + b].answer;
                    r.checks.push_back({tag + (base ? "bribe " : "manip ") + mode_name(kAllModes[a]) + " => " +
                                            mode_name(kAllModes[b]),
                                        ok, ""});
                }
        } catch (const Timeout&) {
            r.checks.push_back({tag + "run", false, "timeout"});
        }
    }
    return r;
}

}  // namespace kemja
