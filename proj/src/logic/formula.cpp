#include "kemja/logic/formula.hpp"

#include <algorithm>
#include <functional>

namespace kemja {

namespace {

std::shared_ptr<const Node> mk(Op op, std::string name, std::vector<Formula> kids) {
    return std::make_shared<const Node>(Node{op, std::move(name), std::move(kids)});
}

const std::shared_ptr<const Node>& top_node() {
    static const auto n = mk(Op::Top, "", {});
    return n;
}
const std::shared_ptr<const Node>& bot_node() {
    static const auto n = mk(Op::Bot, "", {});
    return n;
}

int prec(Op op) {
    switch (op) {
    case Op::Iff: return 1;
    case Op::Implies: return 2;
    case Op::Xor: return 3;
    case Op::Or: return 4;
    case Op::And: return 5;
    case Op::Not: return 6;
    default: return 7;
    }
}

const char* op_text(Op op) {
    switch (op) {
    case Op::And: return " & ";
    case Op::Or: return " | ";
    case Op::Xor: return " ^ ";
    case Op::Implies: return " -> ";
    case Op::Iff: return " <-> ";
    default: return "";
    }
}

void print(const Formula& f, std::string& out);

void print_kid(const Formula& k, bool paren, std::string& out) {
    if (paren) out += '(';
    print(k, out);
    if (paren) out += ')';
}

void print(const Formula& f, std::string& out) {
    const int p = prec(f.op());
    switch (f.op()) {
    case Op::Var: out += f.name(); return;
    case Op::Top: out += "top"; return;
    case Op::Bot: out += "bot"; return;
    case Op::Not:
        out += '~';
        print_kid(f.kid(0), prec(f.kid(0).op()) < p, out);
        return;
    case Op::And:
    case Op::Or:
    case Op::Xor:
        for (std::size_t i = 0; i < f.kids().size(); ++i) {
            if (i) out += op_text(f.op());
            print_kid(f.kid(i), prec(f.kid(i).op()) <= p, out);
        }
        return;
    case Op::Implies:  // right associative
        print_kid(f.kid(0), prec(f.kid(0).op()) <= p, out);
        out += op_text(f.op());
        print_kid(f.kid(1), prec(f.kid(1).op()) < p, out);
        return;
    case Op::Iff:  // left associative
        print_kid(f.kid(0), prec(f.kid(0).op()) < p, out);
        out += op_text(f.op());
        print_kid(f.kid(1), prec(f.kid(1).op()) <= p, out);
        return;
    }
}

int compare(const Formula& a, const Formula& b) {
    if (a.node() == b.node()) return 0;
    if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
    if (a.op() == Op::Var) return a.name().compare(b.name());
    const auto& ka = a.kids();
    const auto& kb = b.kids();
    for (std::size_t i = 0; i < std::min(ka.size(), kb.size()); ++i)
        if (int c = compare(ka[i], kb[i])) return c;
    if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
    return 0;
}

}  // namespace

Formula::Formula() : n_(top_node()) {}

Formula Formula::var(std::string name) { return Formula(mk(Op::Var, std::move(name), {})); }
Formula Formula::top() { return Formula(top_node()); }
Formula Formula::bot() { return Formula(bot_node()); }
Formula Formula::make_not(Formula a) { return Formula(mk(Op::Not, "", {std::move(a)})); }

Formula Formula::make_and(std::vector<Formula> xs) {
    if (xs.empty()) return top();
    if (xs.size() == 1) return xs[0];
    return Formula(mk(Op::And, "", std::move(xs)));
}
Formula Formula::make_or(std::vector<Formula> xs) {
    if (xs.empty()) return bot();
    if (xs.size() == 1) return xs[0];
    return Formula(mk(Op::Or, "", std::move(xs)));
}
Formula Formula::make_xor(std::vector<Formula> xs) {
    if (xs.empty()) return bot();
    if (xs.size() == 1) return xs[0];
    return Formula(mk(Op::Xor, "", std::move(xs)));
}
Formula Formula::make_implies(Formula a, Formula b) {
    return Formula(mk(Op::Implies, "", {std::move(a), std::move(b)}));
}
Formula Formula::make_iff(Formula a, Formula b) {
    return Formula(mk(Op::Iff, "", {std::move(a), std::move(b)}));
}

std::string Formula::str() const {
    std::string s;
    print(*this, s);
    return s;
}

bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

Formula operator!(const Formula& a) { return Formula::make_not(a); }
Formula operator&(const Formula& a, const Formula& b) { return Formula::make_and({a, b}); }
Formula operator|(const Formula& a, const Formula& b) { return Formula::make_or({a, b}); }
Formula operator^(const Formula& a, const Formula& b) { return Formula::make_xor({a, b}); }

void collect_variables(const Formula& f, std::vector<std::string>& out, std::set<std::string>& seen) {
    if (f.is_var()) {
        if (seen.insert(f.name()).second) out.push_back(f.name());
        return;
    }
    for (const auto& k : f.kids()) collect_variables(k, out, seen);
}

std::vector<std::string> variables(const Formula& f) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    collect_variables(f, out, seen);
    return out;
}

bool evaluate(const Formula& f, const Assignment& a) {
    switch (f.op()) {
    case Op::Var: {
        auto it = a.find(f.name());
        if (it == a.end()) throw UnboundVariable(f.name());
        return it->second;
    }
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::Not: return !evaluate(f.kid(0), a);
    case Op::And:
        for (const auto& k : f.kids())
            if (!evaluate(k, a)) return false;
        return true;
    case Op::Or:
        for (const auto& k : f.kids())
            if (evaluate(k, a)) return true;
        return false;
    case Op::Xor: {
        bool r = false;
        for (const auto& k : f.kids()) r ^= evaluate(k, a);
        return r;
    }
    case Op::Implies: return !evaluate(f.kid(0), a) || evaluate(f.kid(1), a);
    case Op::Iff: return evaluate(f.kid(0), a) == evaluate(f.kid(1), a);
    }
    return false;
}

Formula complement(const Formula& f) {
    if (f.op() == Op::Not) return f.kid(0);
    if (f.op() == Op::Top) return Formula::bot();
    if (f.op() == Op::Bot) return Formula::top();
    return Formula::make_not(f);
}

namespace {

Formula subst(const Formula& f, const Assignment& p) {
    switch (f.op()) {
    case Op::Var: {
        auto it = p.find(f.name());
        if (it == p.end()) return f;
        return it->second ? Formula::top() : Formula::bot();
    }
    case Op::Top:
    case Op::Bot: return f;
    case Op::Not: {
        Formula s = subst(f.kid(0), p);
        if (s.is_const()) return complement(s);
        if (s.node() == f.kid(0).node()) return f;
        return Formula::make_not(s);
    }
    case Op::And:
    case Op::Or: {
        const bool is_and = f.op() == Op::And;
        std::vector<Formula> rest;
        bool changed = false;
        for (const auto& k : f.kids()) {
            Formula s = subst(k, p);
            if (s.node() != k.node()) changed = true;
            if (s.op() == (is_and ? Op::Bot : Op::Top)) return s;
            if (s.is_const()) {
                changed = true;
                continue;
            }
            rest.push_back(std::move(s));
        }
        if (!changed) return f;
        return is_and ? Formula::make_and(std::move(rest)) : Formula::make_or(std::move(rest));
    }
    case Op::Xor: {
        std::vector<Formula> rest;
        bool parity = false, changed = false;
        for (const auto& k : f.kids()) {
            Formula s = subst(k, p);
            if (s.node() != k.node()) changed = true;
            if (s.is_const()) {
                parity ^= s.op() == Op::Top;
                changed = true;
                continue;
            }
            rest.push_back(std::move(s));
        }
        if (!changed) return f;
        if (rest.empty()) return parity ? Formula::top() : Formula::bot();
        Formula x = Formula::make_xor(std::move(rest));
        return parity ? complement(x) : x;
    }
    case Op::Implies: {
        Formula a = subst(f.kid(0), p), b = subst(f.kid(1), p);
        if (a.op() == Op::Bot || b.op() == Op::Top) return Formula::top();
        if (a.op() == Op::Top) return b;
        if (b.op() == Op::Bot) return complement(a);
        if (a.node() == f.kid(0).node() && b.node() == f.kid(1).node()) return f;
        return Formula::make_implies(a, b);
    }
    case Op::Iff: {
        Formula a = subst(f.kid(0), p), b = subst(f.kid(1), p);
        if (a.is_const() && b.is_const()) return a.op() == b.op() ? Formula::top() : Formula::bot();
        if (a.is_const()) return a.op() == Op::Top ? b : complement(b);
        if (b.is_const()) return b.op() == Op::Top ? a : complement(a);
        if (a.node() == f.kid(0).node() && b.node() == f.kid(1).node()) return f;
        return Formula::make_iff(a, b);
    }
    }
    return f;
}

}  // namespace

Formula substitute(const Formula& f, const Assignment& partial) { return subst(f, partial); }
Formula simplify(const Formula& f) { return subst(f, {}); }

Formula rename(const Formula& f, const std::map<std::string, std::string>& names) {
    if (f.is_var()) {
        auto it = names.find(f.name());
        return it == names.end() ? f : Formula::var(it->second);
    }
    if (f.kids().empty()) return f;
    std::vector<Formula> ks;
    ks.reserve(f.kids().size());
    for (const auto& k : f.kids()) ks.push_back(rename(k, names));
    auto n = std::make_shared<const Node>(Node{f.op(), "", std::move(ks)});
    return Formula(std::move(n));
}

std::size_t size(const Formula& f) {
    std::size_t s = 1;
    for (const auto& k : f.kids()) s += size(k);
    return s;
}

namespace {

using Terms = std::vector<Term>;

void normalise(Term& t) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
}

bool contradictory(const Term& t) {
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i].first == t[i - 1].first) return true;
    return false;
}

struct Dnf {
    std::size_t max_terms;

    void guard(std::size_t n) const {
        if (n > max_terms)
            throw SizeGuard("DNF exceeds " + std::to_string(max_terms) + " terms");
    }

    Terms conj(const Terms& a, const Terms& b) const {
        Terms out;
        for (const auto& x : a)
            for (const auto& y : b) {
                Term t = x;
                t.insert(t.end(), y.begin(), y.end());
                normalise(t);
                if (!contradictory(t)) out.push_back(std::move(t));
                guard(out.size());
            }
        return out;
    }

    Terms disj(Terms a, const Terms& b) const {
        a.insert(a.end(), b.begin(), b.end());
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        guard(a.size());
        return a;
    }

    Terms run(const Formula& f, bool pos) const {
        switch (f.op()) {
        case Op::Var: return {Term{{f.name(), pos}}};
        case Op::Top: return pos ? Terms{Term{}} : Terms{};
        case Op::Bot: return pos ? Terms{} : Terms{Term{}};
        case Op::Not: return run(f.kid(0), !pos);
        case Op::And:
        case Op::Or: {
            const bool conjunctive = (f.op() == Op::And) == pos;
            Terms acc = conjunctive ? Terms{Term{}} : Terms{};
            for (const auto& k : f.kids()) {
                Terms t = run(k, pos);
                acc = conjunctive ? conj(acc, t) : disj(std::move(acc), t);
            }
            return acc;
        }
        case Op::Implies: {
            Formula g = Formula::make_or({complement(f.kid(0)), f.kid(1)});
            return run(g, pos);
        }
        case Op::Iff:
        case Op::Xor: {
            // fold into binary xor; iff(a,b) = ~xor(a,b)
            bool p = pos;
            if (f.op() == Op::Iff) p = !p;
            Formula a = f.kid(0);
            for (std::size_t i = 1; i < f.kids().size(); ++i) {
                const Formula& b = f.kid(i);
                if (i + 1 < f.kids().size()) {
                    a = Formula::make_xor({a, b});
                    continue;
                }
                // a xor b = (a & ~b) | (~a & b); negated: (a & b) | (~a & ~b)
                Terms ap = run(a, true), an = run(a, false), bp = run(b, true), bn = run(b, false);
                if (p) return disj(conj(ap, bn), conj(an, bp));
                return disj(conj(ap, bp), conj(an, bn));
            }
            return run(a, p);
        }
        }
        return {};
    }
};

}  // namespace

std::vector<Term> to_dnf(const Formula& f, std::size_t max_terms) {
    return Dnf{max_terms}.run(f, true);
}

Formula from_dnf(const std::vector<Term>& terms) {
    std::vector<Formula> ds;
    for (const auto& t : terms) {
        std::vector<Formula> cs;
        for (const auto& [v, pos] : t) cs.push_back(pos ? Formula::var(v) : !Formula::var(v));
        ds.push_back(Formula::make_and(std::move(cs)));
    }
    return Formula::make_or(std::move(ds));
}

bool valid_var_name(std::string_view s) {
    if (s.empty() || s == "top" || s == "bot") return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    if (!alpha(s[0])) return false;
    for (char c : s.substr(1))
        if (!(alpha(c) || (c >= '0' && c <= '9') || c == '\'')) return false;
    return true;
}

}  // namespace kemja
