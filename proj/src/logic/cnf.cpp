#include "kemja/logic/cnf.hpp"

#include <cstdlib>
#include <stdexcept>

namespace kemja {

int CnfFormula::new_var() {
    names_.emplace_back();
    return num_vars();
}

void CnfFormula::add_clause(std::span<const int> lits) {
    for (int l : lits)
        if (l == 0 || std::abs(l) > num_vars()) throw std::invalid_argument("literal out of range");
    clauses_.emplace_back(lits.begin(), lits.end());
}

int CnfFormula::var(const std::string& name) {
    if (int v = find(name)) return v;
    int v = new_var();
    set_name(v, name);
    return v;
}

int CnfFormula::find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? 0 : it->second;
}

void CnfFormula::set_name(int v, std::string name) {
    if (!names_.at(v - 1).empty()) index_.erase(names_[v - 1]);
    index_[name] = v;
    names_[v - 1] = std::move(name);
}

int TseitinEncoder::var(const std::string& name) {
    auto it = vars_.find(name);
    if (it != vars_.end()) return it->second;
    int v = sink_.new_var();
    vars_.emplace(name, v);
    return v;
}

int TseitinEncoder::find(const std::string& name) const {
    auto it = vars_.find(name);
    return it == vars_.end() ? 0 : it->second;
}

int TseitinEncoder::true_lit() {
    if (!true_) {
        true_ = sink_.new_var();
        sink_.add_clause({true_});
    }
    return true_;
}

int TseitinEncoder::gate_and(int a, int b) {
    int g = sink_.new_var();
    sink_.add_clause({-g, a});
    sink_.add_clause({-g, b});
    sink_.add_clause({g, -a, -b});
    return g;
}

int TseitinEncoder::gate_xor(int a, int b) {
    int g = sink_.new_var();
    sink_.add_clause({-g, a, b});
    sink_.add_clause({-g, -a, -b});
    sink_.add_clause({g, -a, b});
    sink_.add_clause({g, a, -b});
    return g;
}

int TseitinEncoder::literal(const Formula& f) {
    switch (f.op()) {
    case Op::Var: return var(f.name());
    case Op::Top: return true_lit();
    case Op::Bot: return -true_lit();
    case Op::Not: return -literal(f.kid(0));
    default: break;
    }
    if (auto it = memo_.find(f.node()); it != memo_.end()) return it->second.first;
    int r = 0;
    switch (f.op()) {
    case Op::And:
    case Op::Or:
    case Op::Xor: {
        r = literal(f.kid(0));
        for (std::size_t i = 1; i < f.kids().size(); ++i) {
            int b = literal(f.kid(i));
            r = f.op() == Op::And ? gate_and(r, b) : f.op() == Op::Or ? gate_or(r, b) : gate_xor(r, b);
        }
        break;
    }
    case Op::Implies: r = gate_or(-literal(f.kid(0)), literal(f.kid(1))); break;
    case Op::Iff: r = -gate_xor(literal(f.kid(0)), literal(f.kid(1))); break;
    default: break;
    }
    memo_.emplace(f.node(), std::make_pair(r, f));
    return r;
}

int TseitinEncoder::defined(const Formula& f) {
    int l = literal(f);
    int r = sink_.new_var();
    sink_.add_clause({-r, l});
    sink_.add_clause({r, -l});
    return r;
}

void TseitinEncoder::assert_formula(const Formula& f) {
    if (f.op() == Op::And) {
        for (const auto& k : f.kids()) assert_formula(k);
        return;
    }
    if (f.op() == Op::Top) return;
    if (f.op() == Op::Bot) {
        sink_.add_clause(std::span<const int>{});
        return;
    }
    sink_.add_clause({literal(f)});
}

CnfFormula to_cnf_tseitin(const Formula& f) {
    CnfFormula cnf;
    // original variables first so that their indices are stable
    TseitinEncoder enc(cnf);
    for (const auto& v : variables(f)) enc.bind(v, cnf.var(v));
    const Formula g = simplify(f);
    if (g.op() == Op::Top) return cnf;
    if (g.op() == Op::Bot) {
        int v = cnf.new_var();
        cnf.add_clause({v});
        cnf.add_clause({-v});
        return cnf;
    }
    cnf.add_clause({enc.literal(g)});
    return cnf;
}

}  // namespace kemja
