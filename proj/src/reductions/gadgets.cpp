#include <algorithm>
#include <set>

#include "kemja/reductions/reductions.hpp"

namespace kemja {

const char* gadget_name(GadgetKind k) {
    switch (k) {
    case GadgetKind::Manipulation: return "manipulation";
    case GadgetKind::Bribery: return "bribery";
    case GadgetKind::Control: return "control";
    }
    return "?";
}

std::optional<GadgetKind> parse_gadget(const std::string& s) {
    if (s == "manip" || s == "manipulation") return GadgetKind::Manipulation;
    if (s == "bribe" || s == "bribery") return GadgetKind::Bribery;
    if (s == "control") return GadgetKind::Control;
    return std::nullopt;
}

const AgendaPtr& GadgetInstance::agenda() const { return profile().agenda(); }

const Formula& GadgetInstance::gamma() const {
    if (manipulation) return manipulation->gamma;
    if (bribery) return bribery->gamma;
    return control->gamma;
}

const Profile& GadgetInstance::profile() const {
    if (manipulation) return manipulation->profile;
    if (bribery) return bribery->profile;
    return control->profile;
}

namespace {

Formula V(const std::string& s) { return Formula::var(s); }

std::vector<std::string> names(const std::string& prefix, std::size_t count) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= count; ++i) out.push_back(prefix + "_" + std::to_string(i));
    return out;
}

Formula all(const std::vector<std::string>& vs) {
    std::vector<Formula> fs;
    for (const auto& v : vs) fs.push_back(V(v));
    return Formula::make_and(fs);
}

Formula none(const std::vector<std::string>& vs) {
    std::vector<Formula> fs;
    for (const auto& v : vs) fs.push_back(!V(v));
    return Formula::make_and(fs);
}

Formula pairwise(const std::vector<Formula>& a, const std::vector<Formula>& b, bool exclusive) {
    std::vector<Formula> fs;
    for (std::size_t i = 0; i < a.size(); ++i) fs.push_back(exclusive ? a[i] ^ b[i] : Formula::make_iff(a[i], b[i]));
    return Formula::make_and(fs);
}

std::vector<Formula> vars(const std::vector<std::string>& vs) {
    std::vector<Formula> fs;
    for (const auto& v : vs) fs.push_back(V(v));
    return fs;
}

Formula imp(const Formula& a, const Formula& b) { return Formula::make_implies(a, b); }

// x_1..x_n, y_1..y_m with padding dummies at the end of X
QbfInstance normalise(const QbfInstance& q, std::size_t n) {
    std::set<std::string> bound(q.exists.begin(), q.exists.end());
    bound.insert(q.forall.begin(), q.forall.end());
    if (bound.size() != q.exists.size() + q.forall.size())
        throw InvalidInstance("quantified variables must be distinct");
    for (const auto& v : variables(q.matrix))
        if (!bound.count(v)) throw InvalidInstance("free variable in matrix: " + v);
    std::map<std::string, std::string> ren;
    QbfInstance out;
    out.exists = names("x", n);
    out.forall = names("y", q.forall.size());
    for (std::size_t i = 0; i < q.exists.size(); ++i) ren[q.exists[i]] = out.exists[i];
    for (std::size_t j = 0; j < q.forall.size(); ++j) ren[q.forall[j]] = out.forall[j];
    out.matrix = rename(q.matrix, ren);
    return out;
}

struct Layout {
    std::vector<std::string> pre;
    std::map<std::string, std::vector<std::string>> families;

    const std::vector<std::string>& add(const std::string& key, std::vector<std::string> vs) {
        pre.insert(pre.end(), vs.begin(), vs.end());
        return families[key] = std::move(vs);
    }
    AgendaPtr agenda() const {
        std::vector<Formula> fs;
        for (const auto& p : pre) fs.push_back(V(p));
        return make_agenda(fs);
    }
};

JudgmentSet row(const AgendaPtr& a, std::initializer_list<const std::vector<std::string>*> on) {
    JudgmentSet j(a);
    for (const auto* fam : on)
        for (const auto& v : *fam) j.set(*a->index_of(V(v)), true);
    return j;
}

std::size_t default_u(std::size_t n, std::size_t m) { return 10 * n + 10 * m + 10; }

}  // namespace

GadgetInstance build_manipulation_gadget(const QbfInstance& q, const GadgetOptions& opt) {
    GadgetInstance g;
    g.kind = GadgetKind::Manipulation;
    const std::size_t n = std::max<std::size_t>(3, (q.exists.size() + 2) / 3 * 3);
    g.qbf = normalise(q, n);
    g.padding = n - q.exists.size();
    g.n = n;
    g.m = q.forall.size();
    g.u = opt.u.value_or(default_u(g.n, g.m));
    g.tainted = opt.u.has_value() && *opt.u != default_u(g.n, g.m);
    const std::size_t m = g.m, u = g.u;

    Layout L;
    const auto& x = L.add("x", names("x", n));
    const auto& xp = L.add("xp", names("xp", n));
    const auto& z = L.add("z", names("z", n / 3));
    const auto& y = L.add("y", names("y", m));
    const auto& yp = L.add("yp", names("yp", m));
    const auto& t = L.add("t", names("t", m));
    const auto& w1 = L.add("w1", names("w_1", n + 1));
    const auto& w2 = L.add("w2", names("w_2", n));
    const auto& w3 = L.add("w3", names("w_3", n));
    const auto& u1 = L.add("u1", names("u_1", u));
    const auto& u2 = L.add("u2", names("u_2", u));
    const auto& u3 = L.add("u3", names("u_3", u));
    g.families = L.families;

    const Formula X = pairwise(vars(x), vars(xp), true), Y = pairwise(vars(y), vars(yp), true);
    const Formula Z = all(z), T = all(t), W23 = all(w2) | all(w3);
    const Formula psi = g.qbf.matrix;
    std::vector<Formula> gamma0{
        X | Z,
        imp(X, none(z)),
        Y ^ T,
        imp(Y, none(t)),
        imp(Z, none(x) & none(xp)),
        imp(T, none(y) & none(yp)),
        imp(Z, T),
        imp(Z & T, W23),
        imp((!Z) & T, all(w1)),
        imp((!Z) & (!T), (!psi) & W23),
    };
    const Formula gamma = Formula::make_or({Formula::make_and(gamma0), all(u1), all(u2), all(u3)});

    AgendaPtr a = L.agenda();
    Profile prof(a, {row(a, {&w1, &u1}), row(a, {&w2, &u2}), row(a, {&x, &xp, &w3, &u3})});
    g.manipulation = ManipulationInstance{gamma, prof, WeightFunction::uniform(a->size()), {V(w1[0])}};
    return g;
}

GadgetInstance build_bribery_gadget(const QbfInstance& q, const GadgetOptions& opt) {
    GadgetInstance g;
    g.kind = GadgetKind::Bribery;
    g.qbf = normalise(q, q.exists.size());
    g.n = q.exists.size();
    g.m = q.forall.size();
    g.u = opt.u.value_or(default_u(g.n, g.m));
    g.tainted = opt.u.has_value() && *opt.u != default_u(g.n, g.m);
    const std::size_t n = g.n, m = g.m, u = g.u;

    Layout L;
    const auto& x = L.add("x", names("x", n));
    const auto& xp = L.add("xp", names("xp", n));
    const auto& z = L.add("z", names("z", n));
    const auto& y = L.add("y", names("y", m));
    const auto& yp = L.add("yp", names("yp", m));
    const auto& t = L.add("t", names("t", m));
    const auto& fa = L.add("a", {"a"});
    const auto& b = L.add("b", names("b", 2 * m + 4));
    const auto& u1 = L.add("u1", names("u_1", u));
    const auto& u2 = L.add("u2", names("u_2", u));
    const auto& u3 = L.add("u3", names("u_3", u));
    g.families = L.families;

    const Formula X = pairwise(vars(x), vars(xp), true), Y = pairwise(vars(y), vars(yp), true);
    const Formula Z = all(z), T = all(t), B = all(b), A = V("a");
    const Formula psi = g.qbf.matrix;
    std::vector<Formula> gamma0{
        A | B,
        imp(A, none(b)),
        imp(B, !A),
        X | Z,
        imp(X, none(z)),
        Y ^ T,
        imp(Y, none(t)),
        imp(Z, none(x) & none(xp)),
        imp(T, none(y) & none(yp)),
        imp(Z, A & T),
        imp(X & Y, (!psi) & A),
        imp(X & T, B),
    };
    const Formula gamma = Formula::make_or({Formula::make_and(gamma0), all(u1), all(u2), all(u3)});

    AgendaPtr a = L.agenda();
    Profile prof(a, {row(a, {&u1}), row(a, {&u2}), row(a, {&u3})});
    std::vector<std::uint64_t> w(a->size(), 0);
    for (const auto& v : b) w[*a->index_of(V(v))] = 1;
    (void)fa;
    g.bribery = BriberyInstance{gamma, prof, WeightFunction(w), row(a, {&b, &u1}), 1, {V(b[0])}};
    return g;
}

GadgetInstance build_control_gadget(const QbfInstance& q, const GadgetOptions& opt) {
    GadgetInstance g;
    g.kind = GadgetKind::Control;
    g.qbf = normalise(q, q.exists.size());
    g.n = q.exists.size();
    g.m = q.forall.size();
    g.u = opt.u.value_or(default_u(g.n, g.m));
    g.tainted = opt.u.has_value() && *opt.u != default_u(g.n, g.m);
    const std::size_t n = g.n, m = g.m, u = g.u;

    Layout L;
    std::vector<std::string> xs, xps;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= 3; ++j) {
            xs.push_back("x_" + std::to_string(i) + "_" + std::to_string(j));
            xps.push_back("xp_" + std::to_string(i) + "_" + std::to_string(j));
        }
    const auto& x = L.add("x", xs);
    const auto& xp = L.add("xp", xps);
    const auto& y = L.add("y", names("y", m));
    const auto& yp = L.add("yp", names("yp", m));
    const auto& t = L.add("t", names("t", m));
    L.add("a", {"a"});
    L.add("b", {"b"});
    const auto& u1 = L.add("u1", names("u_1", u));
    const auto& u2 = L.add("u2", names("u_2", u));
    const auto& u3 = L.add("u3", names("u_3", u));
    g.families = L.families;

    // x_i stands for x_i_1 & x_i_2 & x_i_3 inside gamma
    std::vector<Formula> xi, xpi;
    for (std::size_t i = 0; i < n; ++i) {
        xi.push_back(all({x[3 * i], x[3 * i + 1], x[3 * i + 2]}));
        xpi.push_back(all({xp[3 * i], xp[3 * i + 1], xp[3 * i + 2]}));
    }
    // psi in DNF, then x_i replaced by its triple
    std::vector<Formula> terms;
    for (const auto& term : to_dnf(g.qbf.matrix, opt.dnf_guard)) {
        std::vector<Formula> lits;
        for (const auto& [v, pos] : term) {
            Formula f = v[0] == 'x' ? xi[std::stoul(v.substr(2)) - 1] : V(v);
            lits.push_back(pos ? f : !f);
        }
        terms.push_back(Formula::make_and(lits));
    }
    const Formula psi_x = Formula::make_or(terms);

    const Formula X = pairwise(xi, xpi, true), Y = pairwise(vars(y), vars(yp), true);
    const Formula T = all(t), A = V("a"), B = V("b");
    std::vector<Formula> tail;
    for (std::size_t j = 0; j < m; ++j) tail.push_back(V(t[j]) & !V(y[j]) & !V(yp[j]));
    std::vector<Formula> gamma0{
        A | B,
        (!A) | (!B),
        Y | T,
        imp(X, (Y & A & !psi_x) | (B & Formula::make_and(tail))),
    };
    const Formula gamma = Formula::make_or({Formula::make_and(gamma0), all(u1), all(u2), all(u3)});

    AgendaPtr a = L.agenda();
    const std::vector<std::string> av{"a"};
    Profile prof(a, {row(a, {&x, &xp, &u1}), row(a, {&x, &xp, &u2}), row(a, {&x, &xp, &av, &u3})});
    std::vector<std::size_t> fixed;
    for (std::size_t i = 2 * x.size(); i < a->size(); ++i) fixed.push_back(i);
    g.control = ControlInstance{gamma, prof, fixed, {B}, ControlDirection::Add};
    return g;
}

GadgetInstance build_gadget(GadgetKind k, const QbfInstance& q, const GadgetOptions& opt) {
    switch (k) {
    case GadgetKind::Manipulation: return build_manipulation_gadget(q, opt);
    case GadgetKind::Bribery: return build_bribery_gadget(q, opt);
    case GadgetKind::Control: return build_control_gadget(q, opt);
    }
    throw InvalidInstance("unknown gadget");
}

bool check_case_analysis(const GadgetInstance& g, const SolverConfig& cfg) {
    if (g.kind == GadgetKind::Control) throw InvalidInstance("no case analysis for the control gadget");
    auto F = [&](const char* k) -> const std::vector<std::string>& { return g.families.at(k); };
    const Formula X = pairwise(vars(F("x")), vars(F("xp")), true);
    const Formula Xsame = pairwise(vars(F("x")), vars(F("xp")), false);
    const Formula Y = pairwise(vars(F("y")), vars(F("yp")), true);
    const Formula Ysame = pairwise(vars(F("y")), vars(F("yp")), false);
    const Formula c1 = all(F("u1")) | all(F("u2")) | all(F("u3"));
    const Formula psi = g.qbf.matrix;
    Formula c2, c3, c4;
    if (g.kind == GadgetKind::Manipulation) {
        const Formula W23 = all(F("w2")) | all(F("w3"));
        c2 = Formula::make_and({X, none(F("z")), Y, none(F("t")), W23, !psi});
        c3 = Formula::make_and({X, none(F("z")), all(F("t")), Ysame, all(F("w1"))});
        c4 = Formula::make_and({all(F("z")), Xsame, all(F("t")), Ysame, W23});
    } else {
        const Formula A = V("a");
        c2 = Formula::make_and({X, none(F("z")), Y, none(F("t")), A, none(F("b")), !psi});
        c3 = Formula::make_and({X, none(F("z")), all(F("t")), Ysame, !A, all(F("b"))});
        c4 = Formula::make_and({all(F("z")), Xsame, all(F("t")), Ysame, A, none(F("b"))});
    }
    return !is_satisfiable(g.gamma() & !Formula::make_or({c1, c2, c3, c4}), cfg);
}

}  // namespace kemja
