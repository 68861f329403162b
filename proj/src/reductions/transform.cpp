#include <algorithm>
#include <set>

#include "kemja/logic/cnf.hpp"
#include "kemja/reductions/reductions.hpp"

namespace kemja {

std::size_t default_variant_count(const ManipulationInstance& inst) {
    const std::size_t p = inst.profile.size(), n = inst.profile.agenda()->size();
    if (p < 3) throw InvalidInstance("the clause transform needs at least three agents");
    return p * n / (p - 2) + 1;
}

namespace {

// Prefix that starts no existing variable name.
std::string fresh_prefix(const std::set<std::string>& taken) {
    std::string pre = "chi";
    auto clash = [&] {
        auto it = taken.lower_bound(pre);
        return it != taken.end() && it->compare(0, pre.size(), pre) == 0;
    };
    while (clash()) pre += "_";
    return pre;
}

}  // namespace

ManipulationInstance three_clause_transform(const ManipulationInstance& inst, std::optional<std::size_t> variants) {
    const std::size_t count = variants ? *variants : default_variant_count(inst);
    const AgendaPtr& src = inst.profile.agenda();

    std::set<std::string> taken;
    for (const auto& f : src->formulas())
        for (auto& v : variables(f)) taken.insert(v);
    for (auto& v : variables(inst.gamma)) taken.insert(v);
    const std::string prefix = fresh_prefix(taken);

    std::vector<Formula> pre = src->formulas();
    std::set<Formula> seen(pre.begin(), pre.end());
    for (std::size_t i = 1; i <= count; ++i) {
        // chi_i: gamma under 2i negations, encoded on its own
        Formula chi = inst.gamma;
        for (std::size_t k = 0; k < 2 * i; ++k) chi = Formula::make_not(chi);
        CnfFormula cnf;
        TseitinEncoder enc(cnf);
        for (const auto& v : variables(inst.gamma)) enc.bind(v, cnf.var(v));
        const int root = enc.defined(chi);
        cnf.add_clause({root});

        auto atom = [&](int v) {
            const std::string& nm = cnf.name(v);
            return Formula::var(nm.empty() ? prefix + std::to_string(i) + "_" + std::to_string(v) : nm);
        };
        std::set<std::vector<int>> clauses;
        for (auto c : cnf.clauses()) {
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
            bool taut = false;
            for (int l : c) taut = taut || std::binary_search(c.begin(), c.end(), -l);
            if (!taut) clauses.insert(c);
        }
        for (const auto& c : clauses) {
            std::vector<Formula> lits;
            for (int l : c) lits.push_back(l > 0 ? atom(l) : !atom(-l));
            Formula f = Formula::make_or(lits);
            if (seen.insert(f).second) pre.push_back(f);
        }
    }

    AgendaPtr dst = make_agenda(pre);
    std::vector<JudgmentSet> rows;
    for (const auto& r : inst.profile.rows()) {
        JudgmentSet j(dst);
        for (std::size_t k = 0; k < dst->size(); ++k) j.set(k, k < src->size() ? r[k] : true);
        rows.push_back(j);
    }
    std::vector<std::uint64_t> w = inst.weights.values();
    w.resize(dst->size(), 1);
    return ManipulationInstance{Formula::top(), Profile(dst, rows), WeightFunction(w), inst.target};
}

}  // namespace kemja
