#include "kemja/io/instance.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "kemja/ja/constraint.hpp"
#include "kemja/logic/parser.hpp"

namespace kemja {

using json = nlohmann::ordered_json;

const char* framework_name(Framework f) {
    switch (f) {
    case Framework::Formula: return "formula";
    case Framework::Constraint: return "constraint";
    case Framework::ConstraintExtended: return "constraint-extended";
    }
    return "?";
}

ManipulationInstance Instance::manipulation() const { return {gamma, profile, weights, target}; }

BriberyInstance Instance::bribery() const {
    if (!desired) throw FormatError("bribery needs desired_set");
    if (!budget) throw FormatError("bribery needs budget_k");
    return {gamma, profile, weights, *desired, *budget, target};
}

ControlInstance Instance::control(ControlDirection d) const {
    if (!fixed) throw FormatError("control needs fixed_agenda");
    return {gamma, profile, *fixed, target, d};
}

namespace {

[[noreturn]] void fail(const std::string& what) { throw FormatError(what); }

Formula formula_at(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where + ": expected formula text");
    try {
        return parse_formula(j.get<std::string>());
    } catch (const ParseError& e) {
        fail(where + ": " + e.what());
    }
}

std::uint64_t natural(const json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        fail(where + ": expected a non-negative integer");
    return j.get<std::uint64_t>();
}

// 0/1 list, bit string, or the list of accepted agenda members.
JudgmentSet judgment(const json& j, const AgendaPtr& a, const std::string& where) {
    JudgmentSet out(a);
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.size() != a->size() || s.find_first_not_of("01") != std::string::npos)
            fail(where + ": bit string must have one 0/1 per pre-agenda formula");
        return judgment_set(a, s);
    }
    if (!j.is_array()) fail(where + ": expected a judgment list");
    if (!j.empty() && j[0].is_string()) {
        std::vector<bool> seen(a->size());
        for (const auto& e : j) {
            const Formula f = formula_at(e, where);
            const auto m = a->member(f);
            if (!m) fail(where + ": " + f.str() + " is not an agenda member");
            if (seen[m->first]) fail(where + ": position " + std::to_string(m->first) + " judged twice");
            seen[m->first] = true;
            out.set(m->first, m->second);
        }
        for (std::size_t i = 0; i < a->size(); ++i)
            if (!seen[i]) fail(where + ": no judgment on " + (*a)[i].str());
        return out;
    }
    if (j.size() != a->size()) fail(where + ": row length differs from the pre-agenda");
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& b = j[i];
        if (b.is_boolean())
            out.set(i, b.get<bool>());
        else if (b.is_number_integer() && (b.get<int>() == 0 || b.get<int>() == 1))
            out.set(i, b.get<int>() == 1);
        else
            fail(where + ": entries must be 0 or 1");
    }
    return out;
}

const json& field(const json& doc, const char* key) {
    if (!doc.contains(key)) fail(std::string("missing field ") + key);
    return doc[key];
}

}  // namespace

Instance parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string("not JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("instance must be a JSON object");

    Instance inst;
    const std::string fw = doc.value("framework", "formula");
    if (fw == "formula")
        inst.framework = Framework::Formula;
    else if (fw == "constraint")
        inst.framework = Framework::Constraint;
    else if (fw == "constraint-extended")
        inst.framework = Framework::ConstraintExtended;
    else
        fail("unknown framework " + fw);

    AgendaPtr agenda;
    try {
        if (inst.framework == Framework::Formula) {
            const json& pre = field(doc, "pre_agenda");
            if (!pre.is_array()) fail("pre_agenda must be a list");
            std::vector<Formula> fs;
            for (std::size_t i = 0; i < pre.size(); ++i)
                fs.push_back(formula_at(pre[i], "pre_agenda[" + std::to_string(i) + "]"));
            agenda = make_agenda(fs);
        } else {
            const json& is = field(doc, "issues");
            if (!is.is_array()) fail("issues must be a list");
            std::vector<std::string> names;
            for (const auto& e : is) {
                const Formula f = formula_at(e, "issues");
                if (!f.is_var()) fail("issue " + f.str() + " is not a variable");
                names.push_back(f.name());
            }
            agenda = issue_agenda(IssueSet(names));
        }
    } catch (const InvalidInstance& e) {
        fail(e.what());
    }

    if (doc.contains("gamma")) inst.gamma = formula_at(doc["gamma"], "gamma");
    if (inst.framework == Framework::Constraint) {
        const auto& own = agenda->variables();
        for (const auto& v : variables(inst.gamma))
            if (std::find(own.begin(), own.end(), v) == own.end())
                fail("gamma mentions " + v + ", which is not an issue (use constraint-extended)");
    }

    const json& rows = field(doc, "profile");
    if (!rows.is_array() || rows.empty()) fail("profile must be a non-empty list");
    std::vector<JudgmentSet> js;
    for (std::size_t r = 0; r < rows.size(); ++r) js.push_back(judgment(rows[r], agenda, "profile[" + std::to_string(r) + "]"));
    inst.profile = Profile(agenda, js);

    if (doc.contains("weights")) {
        const json& w = doc["weights"];
        if (!w.is_array() || w.size() != agenda->size()) fail("weights must have one entry per pre-agenda formula");
        std::vector<std::uint64_t> ws;
        std::uint64_t sum = 0;
        for (const auto& e : w) {
            const std::uint64_t x = natural(e, "weights");
            if (x > std::numeric_limits<std::uint64_t>::max() - sum) fail("weights overflow");
            sum += x;
            ws.push_back(x);
        }
        try {
            inst.weights = WeightFunction(ws);
        } catch (const InvalidInstance& e) {
            fail(e.what());
        }
    } else {
        inst.weights = WeightFunction::uniform(agenda->size());
    }
    const std::uint64_t p = std::max<std::uint64_t>(js.size(), agenda->size());
    if (inst.weights.total() > std::numeric_limits<std::uint64_t>::max() / (p + 1))
        fail("total weight times profile size overflows 64 bits");

    if (doc.contains("desired_set")) inst.desired = judgment(doc["desired_set"], agenda, "desired_set");
    if (doc.contains("budget_k")) inst.budget = natural(doc["budget_k"], "budget_k");
    if (doc.contains("fixed_agenda")) {
        const json& f = doc["fixed_agenda"];
        if (!f.is_array()) fail("fixed_agenda must be a list");
        std::set<std::size_t> pos;
        for (const auto& e : f) {
            if (e.is_string()) {
                const auto i = agenda->index_of(formula_at(e, "fixed_agenda"));
                if (!i) fail("fixed_agenda: " + e.get<std::string>() + " is not in the pre-agenda");
                pos.insert(*i);
            } else {
                const auto i = natural(e, "fixed_agenda");
                if (i >= agenda->size()) fail("fixed_agenda: position out of range");
                pos.insert(i);
            }
        }
        inst.fixed = std::vector<std::size_t>(pos.begin(), pos.end());
    }
    if (doc.contains("target_L")) {
        const json& t = doc["target_L"];
        if (!t.is_array()) fail("target_L must be a list");
        for (const auto& e : t) inst.target.push_back(formula_at(e, "target_L"));
    }
    if (doc.contains("metadata")) {
        if (!doc["metadata"].is_object()) fail("metadata must be an object");
        inst.metadata = doc["metadata"].dump();
    }
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return parse_instance(s.str());
}

std::string write_instance(const Instance& inst) {
    json doc;
    doc["framework"] = framework_name(inst.framework);
    json pre = json::array();
    for (const auto& f : inst.agenda()->formulas()) pre.push_back(f.str());
    doc[inst.framework == Framework::Formula ? "pre_agenda" : "issues"] = pre;
    doc["gamma"] = inst.gamma.str();
    json rows = json::array();
    for (const auto& r : inst.profile.rows()) rows.push_back(r.str());
    doc["profile"] = rows;
    doc["weights"] = inst.weights.values();
    if (inst.desired) doc["desired_set"] = inst.desired->str();
    if (inst.budget) doc["budget_k"] = *inst.budget;
    if (inst.fixed) doc["fixed_agenda"] = *inst.fixed;
    if (!inst.target.empty()) {
        json t = json::array();
        for (const auto& f : inst.target) t.push_back(f.str());
        doc["target_L"] = t;
    }
    if (!inst.metadata.empty()) doc["metadata"] = json::parse(inst.metadata);
    return doc.dump(1) + "\n";
}

Instance instance_of(const GadgetInstance& g) {
    Instance inst;
    json meta;
    meta["reduction"] = gadget_name(g.kind);
    meta["qbf"] = g.qbf.str();
    meta["n"] = g.n;
    meta["m"] = g.m;
    meta["u"] = g.u;
    meta["padding"] = g.padding;
    if (g.tainted) meta["tainted"] = true;
    if (g.manipulation) {
        inst = instance_of(*g.manipulation);
    } else if (g.bribery) {
        const auto& b = *g.bribery;
        inst.gamma = b.gamma;
        inst.profile = b.profile;
        inst.weights = b.weights;
        inst.desired = b.desired;
        inst.budget = b.budget;
        inst.target = b.target;
        meta["k"] = b.budget;
    } else {
        const auto& c = *g.control;
        inst.gamma = c.gamma;
        inst.profile = c.profile;
        inst.weights = WeightFunction::uniform(c.profile.agenda()->size());
        inst.fixed = c.fixed;
        inst.target = c.target;
    }
    inst.metadata = meta.dump();
    return inst;
}

Instance instance_of(const ManipulationInstance& m) {
    Instance inst;
    inst.gamma = m.gamma;
    inst.profile = m.profile;
    inst.weights = m.weights;
    inst.target = m.target;
    return inst;
}

Instance instance_of(const RandomInstance& r) {
    Instance inst;
    inst.framework = r.agenda->variables_only() ? Framework::ConstraintExtended : Framework::Formula;
    inst.gamma = r.gamma;
    inst.profile = r.profile;
    inst.weights = r.weights;
    inst.desired = r.desired;
    inst.budget = r.budget;
    inst.fixed = r.fixed;
    inst.target = r.target;
    json meta;
    meta["seed"] = r.seed;
    inst.metadata = meta.dump();
    return inst;
}

namespace {

json provenance(const Provenance& p) {
    json j;
    j["command"] = p.command;
    j["engine"] = engine_name(p.engine);
    j["solver"] = p.solver.empty() ? "internal" : p.solver;
    j["cap"] = p.cap;
    if (p.timeout_s) j["timeout_s"] = *p.timeout_s;
    j["seed"] = p.seed;
    return j;
}

template <class T>
void put(json& j, const char* k, const std::optional<T>& v) {
    if (v) j[k] = *v;
}

}  // namespace

std::string verdict_json(const Verdict& v, const Instance& inst, const Provenance& prov) {
    json j;
    j["problem"] = v.problem;
    j["mode"] = v.mode;
    j["answer"] = v.answer ? "yes" : "no";
    if (!v.reason.empty()) j["reason"] = v.reason;
    json d;
    put(d, "d_win_old", v.diag.d_win_old);
    put(d, "d_min_old", v.diag.d_min_old);
    put(d, "d_max_old", v.diag.d_max_old);
    put(d, "d_win_new", v.diag.d_win_new);
    d["sat_calls"] = v.diag.sat_calls;
    d["candidates"] = v.diag.candidates;
    if (prov.timing) d["elapsed_ms"] = v.diag.elapsed_ms;
    j["diagnostics"] = d;
    if (v.witness) {
        const Witness& w = *v.witness;
        json o;
        if (w.reported) o["reported"] = w.reported->str();
        if (!w.rows.empty()) o["rows"] = w.rows;
        if (!w.replacements.empty()) {
            json r = json::array();
            for (const auto& s : w.replacements) r.push_back(s.str());
            o["replacements"] = r;
        }
        if (!w.selection.empty()) o["selection"] = w.selection;
        if (w.outcome) o["outcome"] = w.outcome->str();
        j["witness"] = o;
    }
    j["pre_agenda_size"] = inst.agenda()->size();
    j["provenance"] = provenance(prov);
    return j.dump(1) + "\n";
}

std::string verdict_human(const Verdict& v, const Instance& inst, const Provenance& prov) {
    std::ostringstream o;
    o << v.problem << " (" << v.mode << "): " << (v.answer ? "yes" : "no") << "\n";
    if (!v.reason.empty()) o << "  reason: " << v.reason << "\n";
    auto line = [&](const char* k, const std::optional<std::uint64_t>& x) {
        if (x) o << "  " << k << " = " << *x << "\n";
    };
    line("d_win_old", v.diag.d_win_old);
    line("d_min_old", v.diag.d_min_old);
    line("d_max_old", v.diag.d_max_old);
    line("d_win_new", v.diag.d_win_new);
    auto show = [&](const JudgmentSet& j) {
        if (j.size() > 24) return j.str();
        std::string s;
        for (const auto& f : j.formulas()) s += (s.empty() ? "" : ", ") + f.str();
        return "{" + s + "}";
    };
    if (v.witness) {
        const Witness& w = *v.witness;
        if (w.reported) o << "  reported: " << show(*w.reported) << "\n";
        for (std::size_t k = 0; k < w.rows.size(); ++k)
            o << "  row " << w.rows[k] << " -> " << show(w.replacements.at(k)) << "\n";
        if (!w.selection.empty()) {
            o << "  selection:";
            for (auto i : w.selection) o << " " << (*inst.agenda())[i].str() << ";";
            o << "\n";
        }
        if (w.outcome) o << "  outcome: " << show(*w.outcome) << "\n";
    }
    o << "  engine " << engine_name(prov.engine) << ", sat calls " << v.diag.sat_calls << ", candidates "
      << v.diag.candidates << ", seed " << prov.seed << "\n";
    if (prov.timing) o << "  elapsed " << v.diag.elapsed_ms << " ms\n";
    return o.str();
}

}  // namespace kemja
