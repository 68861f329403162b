#include "kemja/ja/ops.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "kemja/logic/cnf.hpp"

namespace kemja {

bool is_consistent(const std::vector<Formula>& fs, const SolverConfig& cfg) {
    return is_satisfiable(Formula::make_and(fs), cfg);
}

bool is_gamma_consistent(const JudgmentSet& j, const Formula& gamma, const SolverConfig& cfg) {
    auto fs = j.formulas();
    fs.push_back(gamma);
    return is_consistent(fs, cfg);
}

CompiledFormula::CompiledFormula(const Formula& f, const std::vector<std::string>& order) {
    std::map<std::string, std::uint32_t> idx;
    for (std::size_t i = 0; i < order.size(); ++i) idx[order[i]] = static_cast<std::uint32_t>(i);
    std::function<void(const Formula&)> emit = [&](const Formula& g) {
        if (g.is_var()) {
            auto it = idx.find(g.name());
            if (it == idx.end()) throw UnboundVariable(g.name());
            code_.push_back({Op::Var, it->second});
            return;
        }
        for (const auto& k : g.kids()) emit(k);
        code_.push_back({g.op(), static_cast<std::uint32_t>(g.kids().size())});
    };
    emit(f);
    stack_.reserve(code_.size());
}

bool CompiledFormula::operator()(std::uint64_t a) const {
    auto& st = stack_;
    st.clear();
    for (const auto& in : code_) {
        switch (in.op) {
        case Op::Var: st.push_back((a >> in.arg) & 1u); break;
        case Op::Top: st.push_back(1); break;
        case Op::Bot: st.push_back(0); break;
        case Op::Not: st.back() ^= 1u; break;
        case Op::And:
        case Op::Or:
        case Op::Xor: {
            std::uint8_t r = in.op == Op::And ? 1 : 0;
            for (std::uint32_t k = 0; k < in.arg; ++k) {
                std::uint8_t v = st.back();
                st.pop_back();
                if (in.op == Op::And) r &= v;
                else if (in.op == Op::Or) r |= v;
                else r ^= v;
            }
            st.push_back(r);
            break;
        }
        case Op::Implies:
        case Op::Iff: {
            std::uint8_t b = st.back();
            st.pop_back();
            std::uint8_t x = st.back();
            st.back() = in.op == Op::Implies ? std::uint8_t(!x || b) : std::uint8_t(x == b);
            break;
        }
        }
    }
    return st.back() != 0;
}

std::vector<JudgmentSet> enumerate_consistent_sets(const AgendaPtr& a, const Formula& gamma, std::size_t cap,
                                                   std::size_t max_vars) {
    std::vector<std::string> vs = a->variables();
    std::set<std::string> seen(vs.begin(), vs.end());
    collect_variables(gamma, vs, seen);
    if (vs.size() > max_vars)
        throw CapExceeded("enumeration over " + std::to_string(vs.size()) + " variables refused");
    CompiledFormula g(gamma, vs);
    std::vector<CompiledFormula> fs;
    for (const auto& f : a->formulas()) fs.emplace_back(f, vs);

    std::set<BitVec> found;
    const std::uint64_t n = std::uint64_t(1) << vs.size();
    for (std::uint64_t m = 0; m < n; ++m) {
        if (!g(m)) continue;
        BitVec b(a->size());
        for (std::size_t i = 0; i < fs.size(); ++i) b.set(i, fs[i](m));
        if (found.insert(std::move(b)).second && found.size() > cap)
            throw CapExceeded("more than " + std::to_string(cap) + " consistent judgment sets");
    }
    std::vector<JudgmentSet> out;
    out.reserve(found.size());
    for (const auto& b : found) out.emplace_back(a, b);
    return out;
}

std::uint64_t hamming(const JudgmentSet& a, const JudgmentSet& b) {
    if (!a.agenda()->same_as(*b.agenda())) throw AgendaMismatch();
    return a.bits().distance(b.bits());
}

std::uint64_t weighted_hamming(const JudgmentSet& a, const JudgmentSet& b, const WeightFunction& w) {
    if (!a.agenda()->same_as(*b.agenda())) throw AgendaMismatch();
    if (w.size() != a.size()) throw InvalidInstance("weight function length does not match agenda");
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) d += w[i];
    return d;
}

std::uint64_t cumulative_distance(const JudgmentSet& j, const Profile& p) {
    std::uint64_t d = 0;
    for (const auto& r : p.rows()) d += hamming(j, r);
    return d;
}

bool prefers(const JudgmentSet& ideal, const JudgmentSet& a, const JudgmentSet& b, const WeightFunction& w) {
    return weighted_hamming(ideal, a, w) < weighted_hamming(ideal, b, w);
}

JudgmentSet majority(const Profile& p) {
    JudgmentSet m(p.agenda());
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::size_t ones = 0;
        for (const auto& r : p.rows()) ones += r[i];
        m.set(i, 2 * ones > p.size());
    }
    return m;
}

SubAgenda sub_agenda(const Agenda& parent, std::vector<std::size_t> positions) {
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    std::vector<Formula> fs;
    for (auto i : positions) {
        if (i >= parent.size()) throw InvalidInstance("sub-agenda position out of range");
        fs.push_back(parent[i]);
    }
    return SubAgenda{make_agenda(std::move(fs)), std::move(positions)};
}

JudgmentSet restrict(const JudgmentSet& j, const SubAgenda& s) {
    JudgmentSet out(s.agenda);
    for (std::size_t k = 0; k < s.positions.size(); ++k) out.set(k, j[s.positions[k]]);
    return out;
}

Profile restrict(const Profile& p, const SubAgenda& s) {
    std::vector<JudgmentSet> rows;
    for (const auto& r : p.rows()) rows.push_back(restrict(r, s));
    return Profile(s.agenda, std::move(rows));
}

WeightFunction restrict(const WeightFunction& w, const SubAgenda& s) {
    std::vector<std::uint64_t> v;
    for (auto i : s.positions) v.push_back(w[i]);
    return WeightFunction(std::move(v));
}

}  // namespace kemja
