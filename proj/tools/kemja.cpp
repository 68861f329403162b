// kemja: aggregate, decide, reduce, verify, gen-random.
// Exit codes: 0 yes/ok, 1 no/failed check, 2 parse or invalid input,
// 3 infeasible, 4 timeout, 5 other errors (caps, solver failures).

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kemja/cli/suites.hpp"
#include "kemja/io/instance.hpp"
#include "kemja/ja/constraint.hpp"
#include "kemja/logic/dimacs.hpp"
#include "kemja/ja/ops.hpp"
#include "kemja/logic/parser.hpp"

using namespace kemja;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { kYes = 0, kNo = 1, kParse = 2, kInfeasible = 3, kTimeout = 4, kOther = 5 };

struct Run {
    std::string engine = "oracle";
    std::string solver_path;
    std::size_t cap = 1024;
    std::optional<double> timeout_s;
    std::string format = "human";
    std::uint64_t seed = 0;
    bool timing = false;

    EngineConfig config() const {
        EngineConfig c;
        c.engine = engine == "brute" ? Engine::Brute : Engine::Oracle;
        c.solver.external_path = solver_path;
        c.outcome_cap = cap;
        c.enum_cap = std::max<std::size_t>(cap, kDefaultEnumerationCap);
        if (timeout_s)
            c.solver.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                                   std::chrono::duration<double>(*timeout_s));
        return c;
    }
    Provenance provenance(const std::string& command) const {
        return {command, config().engine, solver_path, cap, timeout_s, seed, timing};
    }
    bool json() const { return format == "json"; }
};

ojson provenance_json(const Provenance& p) {
    ojson j;
    j["command"] = p.command;
    j["engine"] = engine_name(p.engine);
    j["solver"] = p.solver.empty() ? "internal" : p.solver;
    j["cap"] = p.cap;
    if (p.timeout_s) j["timeout_s"] = *p.timeout_s;
    j["seed"] = p.seed;
    return j;
}

std::string show(const JudgmentSet& j) {
    if (j.size() > 24) return j.str();  // large gadgets: bit string
    std::string s;
    for (const auto& f : j.formulas()) s += (s.empty() ? "" : ", ") + f.str();
    return "{" + s + "}";
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw FormatError("cannot write " + out);
    f << text;
}

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int aggregate(const Run& run, const std::string& path, const std::string& rule) {
    const Instance inst = load_instance(path);
    const EngineConfig cfg = run.config();
    const bool constraint = inst.framework != Framework::Formula;
    const auto t0 = Clock::now();
    ojson j;
    j["rule"] = rule;
    std::ostringstream h;
    if (rule == "majority") {
        const JudgmentSet maj = majority(inst.profile);
        bool ok;
        if (constraint) {
            std::vector<std::string> names;
            for (const auto& f : inst.agenda()->formulas()) names.push_back(f.name());
            auto issues = std::make_shared<const IssueSet>(names);
            ok = is_rational(to_ballot(maj, issues), inst.gamma, inst.framework == Framework::ConstraintExtended,
                             cfg.solver);
        } else {
            ok = is_gamma_consistent(maj, inst.gamma, cfg.solver);
        }
        j["outcome"] = maj.str();
        j[constraint ? "rational" : "consistent"] = ok;
        h << "majority: " << (constraint ? maj.str() : show(maj)) << "\n  "
          << (constraint ? (ok ? "rational" : "not rational") : (ok ? "consistent" : "inconsistent")) << "\n";
    } else {
        const KemenyResult r = kemeny(inst.profile, inst.gamma, cfg);
        ojson outs = ojson::array();
        for (const auto& o : r.outcomes) outs.push_back(o.str());
        j["outcomes"] = outs;
        j["min_distance"] = r.d_win;
        j["truncated"] = r.truncated;
        j["sat_calls"] = r.sat_calls;
        h << "kemeny: " << r.outcomes.size() << " outcome(s) at distance " << r.d_win
          << (r.truncated ? " (truncated)" : "") << "\n";
        for (const auto& o : r.outcomes) h << "  " << (constraint ? o.str() : show(o)) << "\n";
    }
    if (run.timing) {
        j["elapsed_ms"] = ms_since(t0);
        h << "  elapsed " << ms_since(t0) << " ms\n";
    }
    j["provenance"] = provenance_json(run.provenance("aggregate"));
    std::cout << (run.json() ? j.dump(1) + "\n" : h.str());
    return kYes;
}

int decide(const Run& run, const std::string& path, const std::string& problem, const std::string& mode_s) {
    const Instance inst = load_instance(path);
    const EngineConfig cfg = run.config();
    const bool exact = problem == "manip-exact" || problem == "bribe-exact" || problem.rfind("control", 0) == 0;
    const std::string ms = mode_s.empty() ? "cautious" : mode_s;
    Verdict v;
    if (exact) {
        const auto att = parse_attitude(ms == "cautious" ? "cautious-all" : ms == "brave" ? "brave-some" : ms);
        if (!att) throw FormatError("unknown attitude " + ms);
        if (problem == "manip-exact")
            v = decide_exact_manipulation(inst.manipulation(), *att, cfg);
        else if (problem == "bribe-exact")
            v = decide_exact_bribery(inst.bribery(), *att, cfg);
        else
            v = decide_control(inst.control(problem == "control-add" ? ControlDirection::Add : ControlDirection::Delete),
                               *att, cfg);
    } else {
        const auto m = parse_mode(ms);
        if (!m) throw FormatError("unknown mode " + ms);
        v = problem == "manip" ? decide_manipulation(inst.manipulation(), *m, cfg)
                               : decide_bribery(inst.bribery(), *m, cfg);
    }
    const Provenance prov = run.provenance("decide");
    std::cout << (run.json() ? verdict_json(v, inst, prov) : verdict_human(v, inst, prov));
    return v.answer ? kYes : kNo;
}

int reduce(const Run& run, const std::string& path, const std::string& which, bool clauses,
           std::optional<std::size_t> u, const std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path);
    const QbfInstance q = read_qdimacs(in);
    const auto kind = parse_gadget(which);
    if (!kind) throw FormatError("unknown reduction " + which);
    if (clauses && *kind != GadgetKind::Manipulation) throw FormatError("--clause-transform needs --which manip");
    const GadgetInstance g = build_gadget(*kind, q, {u});
    Instance inst = instance_of(g);
    if (clauses) {
        auto meta = ojson::parse(inst.metadata);
        inst = instance_of(three_clause_transform(*g.manipulation, g.u));
        meta["clause_transform"] = true;
        meta["variant_count"] = g.u;  // one variant per u copy, not the default bound
        inst.metadata = meta.dump();
    }
    emit(write_instance(inst), out);
    if (!out.empty() && out != "-" && !run.json())
        std::cerr << "wrote " << out << " (" << inst.agenda()->size() << " pre-agenda formulas)\n";
    return kYes;
}

int verify(const Run& run, const std::string& suite, std::size_t count) {
    SuiteConfig sc;
    sc.engine = run.config();
    sc.engine.solver.deadline.reset();
    sc.timeout_s = run.timeout_s;
    sc.seed = run.seed;
    sc.count = count;
    SuiteReport r;
    if (suite == "ledger")
        r = ledger_suite(sc);
    else if (suite == "equivalence")
        r = equivalence_suite(sc);
    else if (suite == "engines")
        r = engines_suite(sc);
    else if (suite == "lattice")
        r = lattice_suite(sc);
    else
        throw FormatError("unknown suite " + suite);
    std::cout << (run.json() ? r.json() : r.str());
    return r.pass() ? kYes : kNo;
}

int gen_random(const Run& run, const RandomParams& p, const std::string& out) {
    emit(write_instance(instance_of(random_instance(run.seed, p))), out);
    return kYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"judgment aggregation: Kemeny rule, strategic deciders and hardness gadgets"};
    app.require_subcommand(1);
    app.fallthrough();
    Run run;
    const auto t0 = Clock::now();
    app.add_option("--engine", run.engine, "brute or oracle")->check(CLI::IsMember({"brute", "oracle"}));
    app.add_option("--solver-path", run.solver_path, "external DIMACS solver binary");
    app.add_option("--cap", run.cap, "outcome and candidate cap")->check(CLI::PositiveNumber);
    app.add_option("--timeout-s", run.timeout_s, "time budget in seconds")->check(CLI::PositiveNumber);
    app.add_option("--format", run.format, "human or json")->check(CLI::IsMember({"human", "json"}));
    app.add_option("--seed", run.seed, "seed for random instances");
    app.add_flag("--timing", run.timing, "include wall-clock times (reports are no longer byte-stable)");

    std::string path, rule = "kemeny", problem, mode, which = "manip", out, suite;
    bool clauses = false;
    std::optional<std::size_t> u;
    std::size_t count = 20;
    RandomParams rp;

    auto* agg = app.add_subcommand("aggregate", "run majority or Kemeny on an instance");
    agg->add_option("instance", path)->required();
    agg->add_option("--rule", rule)->check(CLI::IsMember({"majority", "kemeny"}));

    auto* dec = app.add_subcommand("decide", "decide a manipulation, bribery or control problem");
    dec->add_option("instance", path)->required();
    dec->add_option("--problem", problem)
        ->required()
        ->check(CLI::IsMember({"manip", "manip-exact", "bribe", "bribe-exact", "control-add", "control-del"}));
    dec->add_option("--mode,--attitude", mode, "mode (cautious ... safe) or attitude (cautious, brave)");

    auto* red = app.add_subcommand("reduce", "build a hardness gadget from an exists-forall QDIMACS file");
    red->add_option("qdimacs", path)->required();
    red->add_option("--which", which)->check(CLI::IsMember({"manip", "bribe", "control"}));
    red->add_flag("--clause-transform", clauses, "replace gamma by clause agenda items (manip only)");
    red->add_option("--u", u, "override u (the instance is marked tainted)");
    red->add_option("-o,--out", out);

    auto* ver = app.add_subcommand("verify", "run a property suite");
    ver->add_option("--suite", suite)->required()->check(CLI::IsMember({"ledger", "equivalence", "engines", "lattice"}));
    ver->add_option("--count", count, "random instances for engines and lattice");

    auto* gen = app.add_subcommand("gen-random", "write a seeded random instance");
    gen->add_option("--formulas", rp.max_formulas);
    gen->add_option("--vars", rp.max_vars)->check(CLI::Range(2, 8));
    gen->add_option("--agents", rp.max_agents)->check(CLI::PositiveNumber);
    gen->add_option("--budget", rp.max_budget);
    gen->add_flag("--variables-only", rp.variables_only);
    gen->add_flag("--clause-agenda", rp.clause_agenda);
    gen->add_option("-o,--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kParse;
    }

    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (*agg) return aggregate(run, path, rule);
        if (*dec) return decide(run, path, problem, mode);
        if (*red) return reduce(run, path, which, clauses, u, out);
        if (*ver) return verify(run, suite, count);
        return gen_random(run, rp, out);
    } catch (const Timeout& e) {
        ojson j;
        j["error"] = "timeout";
        j["command"] = command;
        if (!path.empty()) j["input"] = path;
        if (!problem.empty()) j["problem"] = problem;
        if (run.timing) j["elapsed_ms"] = ms_since(t0);
        j["provenance"] = provenance_json(run.provenance(command));
        if (run.json())
            std::cout << j.dump(1) << "\n";
        else
            std::cerr << "timeout: " << command << (problem.empty() ? "" : " " + problem) << " exceeded "
                      << run.timeout_s.value_or(0) << " s\n";
        return kTimeout;
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const InvalidInstance& e) {
        std::cerr << "invalid instance: " << e.what() << "\n";
        return kParse;
    } catch (const AgendaMismatch& e) {
        std::cerr << "invalid instance: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOther;
    }
}
