#include <random>
#include <sstream>

#include "doctest.h"
#include "kemja/logic/cnf.hpp"
#include "kemja/logic/dimacs.hpp"
#include "kemja/logic/formula.hpp"
#include "kemja/logic/parser.hpp"
#include "kemja/logic/qbf.hpp"
#include "kemja/logic/sat.hpp"
#include "oracles.hpp"

using namespace kemja;

namespace {
Formula P(const char* s) { return parse_formula(s); }
const std::vector<std::string> kPool{"p", "q", "r", "s", "t"};
}  // namespace

TEST_CASE("precedence and associativity") {
    Formula p = Formula::var("p"), q = Formula::var("q"), r = Formula::var("r");
    CHECK(P("p & q | r") == ((p & q) | r));
    CHECK(P("p | q & r") == (p | (q & r)));
    CHECK(P("p -> q -> r") == Formula::make_implies(p, Formula::make_implies(q, r)));
    CHECK(P("p ^ q | r") == (p ^ (q | r)));
    CHECK(P("p -> q <-> r") == Formula::make_iff(Formula::make_implies(p, q), r));
    CHECK(P("~p & q") == ((!p) & q));
    CHECK(P("p & q & r").kids().size() == 3);
    CHECK(P("(p & q) & r").kids().size() == 2);
}

TEST_CASE("double negation is preserved") {
    Formula f = P("~~p");
    REQUIRE(f.op() == Op::Not);
    CHECK(f.kid(0).op() == Op::Not);
    CHECK(f.str() == "~~p");
}

TEST_CASE("parse errors carry a position") {
    try {
        P("p & & q");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 5);
    }
    try {
        P("p &\n (q | $)");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 7);
    }
    CHECK_THROWS_AS(P("(p"), ParseError);
    CHECK_THROWS_AS(P(""), ParseError);
    CHECK_THROWS_AS(P("p q"), ParseError);
    CHECK(P("x_1' & top").str() == "x_1' & top");
}

TEST_CASE("print then parse is the identity") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        Formula f = oracle::random_formula(rng, kPool, 5);
        Formula g = P(f.str().c_str());
        REQUIRE_MESSAGE(g == f, f.str());
    }
    // nested same-operator trees keep their shape
    Formula p = Formula::var("p"), q = Formula::var("q"), r = Formula::var("r");
    for (const Formula& f : {(p & q) & r, p & (q & r), Formula::make_implies(Formula::make_implies(p, q), r),
                             Formula::make_iff(p, Formula::make_iff(q, r)), (p ^ q) ^ r, !!(p | q)})
        CHECK(P(f.str().c_str()) == f);
}

TEST_CASE("evaluate") {
    CHECK_FALSE(evaluate(P("p -> q"), {{"p", true}, {"q", false}}));
    CHECK(evaluate(P("p ^ q ^ r"), {{"p", true}, {"q", true}, {"r", true}}));
    CHECK_THROWS_AS(evaluate(P("p -> q"), {{"p", true}}), UnboundVariable);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        Formula f = oracle::random_formula(rng, kPool, 5);
        oracle::for_each_assignment(kPool, [&](const auto& a) { REQUIRE(evaluate(f, a) == oracle::truth(f, a)); });
    }
}

TEST_CASE("substitute simplifies constants") {
    CHECK(substitute(P("p & q"), {{"q", false}}).op() == Op::Bot);
    CHECK(substitute(P("(p -> q) & r"), {{"p", false}}) == P("r"));
    CHECK(substitute(P("p <-> q"), {{"p", true}}) == P("q"));
    CHECK(substitute(P("p ^ q ^ r"), {{"q", true}}) == P("~(p ^ r)"));
    std::mt19937_64 rng(13);
    for (int i = 0; i < 500; ++i) {
        Formula f = oracle::random_formula(rng, kPool, 5);
        Assignment part{{"p", true}, {"r", false}};
        Formula g = substitute(f, part);
        for (const auto& v : variables(g)) CHECK((v != "p" && v != "r"));
        if (!g.is_const()) {
            std::function<bool(const Formula&)> no_const = [&](const Formula& h) {
                if (h.is_const()) return false;
                for (const auto& k : h.kids())
                    if (!no_const(k)) return false;
                return true;
            };
            CHECK(no_const(g));
        }
        oracle::for_each_assignment({"q", "s", "t"}, [&](const auto& a) {
            auto full = a;
            full["p"] = true;
            full["r"] = false;
            REQUIRE(oracle::truth(f, full) == oracle::truth(g, a));
        });
    }
}

TEST_CASE("complement") {
    CHECK(complement(P("~p")) == P("p"));
    CHECK(complement(P("p & q")) == P("~(p & q)"));
}

TEST_CASE("tseitin shape and equisatisfiability") {
    CnfFormula atom = to_cnf_tseitin(P("p"));
    REQUIRE(atom.num_clauses() == 1);
    CHECK(atom.clauses()[0] == std::vector<int>{atom.find("p")});
    CHECK(to_cnf_tseitin(P("top")).num_clauses() == 0);
    CHECK_FALSE(sat(to_cnf_tseitin(P("bot"))).sat);

    std::mt19937_64 rng(17);
    for (int i = 0; i < 400; ++i) {
        Formula f = oracle::random_formula(rng, kPool, 6);
        CnfFormula cnf = to_cnf_tseitin(f);
        for (const auto& c : cnf.clauses()) {
            REQUIRE(!c.empty());
            REQUIRE(c.size() <= 3);
        }
        bool expect = oracle::satisfiable(f);
        SatOutcome out = sat(cnf);
        REQUIRE_MESSAGE(out.sat == expect, f.str());
        if (out.sat) {
            Assignment a = out.model;
            for (const auto& v : kPool) a.try_emplace(v, false);
            CHECK(oracle::truth(f, a));
        }
        // every model of f extends to a model of the CNF
        if (cnf.num_vars() <= 20) {
            std::vector<std::string> vs = variables(f);
            oracle::for_each_assignment(vs, [&](const auto& a) {
                if (!oracle::truth(f, a)) return;
                std::vector<int> as;
                for (const auto& [v, b] : a) as.push_back(b ? cnf.find(v) : -cnf.find(v));
                CHECK(sat(cnf, as).sat);
            });
        }
    }
}

TEST_CASE("cdcl agrees with enumeration on random 3-CNF") {
    std::mt19937_64 rng(23);
    int sat_count = 0;
    for (int i = 0; i < 400; ++i) {
        const int n = 8 + static_cast<int>(rng() % 8);
        const int m = static_cast<int>(n * 4.26);
        std::vector<std::vector<int>> cs;
        for (int j = 0; j < m; ++j) {
            std::vector<int> c;
            for (int k = 0; k < 3; ++k) {
                int v = 1 + static_cast<int>(rng() % n);
                c.push_back(rng() % 2 ? v : -v);
            }
            cs.push_back(c);
        }
        CdclSolver s;
        for (int v = 0; v < n; ++v) s.new_var();
        for (const auto& c : cs) s.add_clause(c);
        bool got = s.check();
        REQUIRE(got == oracle::cnf_satisfiable(n, cs));
        if (got) {
            ++sat_count;
            for (const auto& c : cs) {
                bool ok = false;
                for (int l : c) ok = ok || s.lit_value(l);
                REQUIRE(ok);
            }
        }
    }
    CHECK(sat_count > 50);
    CHECK(sat_count < 350);
}

TEST_CASE("incremental solving with assumptions") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 100; ++i) {
        const int n = 12;
        CdclSolver s;
        for (int v = 0; v < n; ++v) s.new_var();
        std::vector<std::vector<int>> cs;
        for (int round = 0; round < 6; ++round) {
            for (int j = 0; j < 8; ++j) {
                std::vector<int> c;
                for (int k = 0; k < 3; ++k) {
                    int v = 1 + static_cast<int>(rng() % n);
                    c.push_back(rng() % 2 ? v : -v);
                }
                cs.push_back(c);
                s.add_clause(c);
            }
            std::vector<int> as{rng() % 2 ? 1 : -1, rng() % 2 ? 2 : -2};
            auto with = cs;
            for (int a : as) with.push_back({a});
            REQUIRE(s.check(as) == oracle::cnf_satisfiable(n, with));
            REQUIRE(s.check() == oracle::cnf_satisfiable(n, cs));
        }
    }
}

TEST_CASE("pigeonhole 6 into 5 is unsatisfiable") {
    CdclSolver s;
    const int P_ = 6, H = 5;
    auto v = [&](int p, int h) { return p * H + h + 1; };
    for (int i = 0; i < P_ * H; ++i) s.new_var();
    for (int p = 0; p < P_; ++p) {
        std::vector<int> c;
        for (int h = 0; h < H; ++h) c.push_back(v(p, h));
        s.add_clause(c);
    }
    for (int h = 0; h < H; ++h)
        for (int a = 0; a < P_; ++a)
            for (int b = a + 1; b < P_; ++b) s.add_clause({-v(a, h), -v(b, h)});
    CHECK_FALSE(s.check());
}

TEST_CASE("dimacs round trip") {
    CnfFormula cnf = to_cnf_tseitin(P("(p | q) & (~p | r) & ~(q & r)"));
    std::string text = to_dimacs(cnf);
    CHECK(text.rfind("p cnf " + std::to_string(cnf.num_vars()) + " " + std::to_string(cnf.num_clauses()) + "\n", 0) ==
          0);
    std::istringstream is(text);
    CnfFormula back = read_dimacs(is);
    CHECK(back.num_vars() == cnf.num_vars());
    CHECK(back.clauses() == cnf.clauses());

    std::istringstream bad1("p cnf 2 2\n1 -2 0\n");
    CHECK_THROWS_AS(read_dimacs(bad1), ParseError);
    std::istringstream bad2("p cnf 2 1\n1 3 0\n");
    CHECK_THROWS_AS(read_dimacs(bad2), ParseError);
    std::istringstream bad3("p sat 2 1\n1 0\n");
    CHECK_THROWS_AS(read_dimacs(bad3), ParseError);
}

TEST_CASE("solver output protocol") {
    auto a = parse_solver_output("c hello\ns SATISFIABLE\nv 1 -2\nv 3 0\n");
    CHECK(a.result == SatResult::Sat);
    CHECK(a.model == std::vector<int>{1, -2, 3});
    CHECK(parse_solver_output("s UNSATISFIABLE\n").result == SatResult::Unsat);
    CHECK_THROWS_AS(parse_solver_output("garbage\n"), SolverError);
    CHECK_THROWS_AS(parse_solver_output("s MAYBE\n"), SolverError);
}

TEST_CASE("qbf truth matches double enumeration") {
    QbfInstance t{{"x"}, {"y"}, P("x | y")};
    QbfInstance f{{"x"}, {"y"}, P("x & y")};
    CHECK(qbf_truth(t));
    CHECK_FALSE(qbf_truth(f));

    std::mt19937_64 rng(31);
    for (int i = 0; i < 300; ++i) {
        std::vector<std::string> X{"x1", "x2", "x3"}, Y{"y1", "y2"};
        std::vector<std::string> pool = X;
        pool.insert(pool.end(), Y.begin(), Y.end());
        QbfInstance q{X, Y, oracle::random_formula(rng, pool, 4)};
        bool expect = false;
        oracle::for_each_assignment(X, [&](const auto& a) {
            bool all = true;
            oracle::for_each_assignment(Y, [&](const auto& b) {
                auto full = a;
                full.insert(b.begin(), b.end());
                all = all && oracle::truth(q.matrix, full);
            });
            expect = expect || all;
        });
        REQUIRE_MESSAGE(qbf_truth(q) == expect, q.str());
    }
    std::vector<std::string> many;
    for (int i = 0; i < 21; ++i) many.push_back("v" + std::to_string(i));
    CHECK_THROWS_AS(qbf_truth(QbfInstance{many, {}, Formula::top()}), SizeGuard);
}

TEST_CASE("qdimacs reader") {
    std::istringstream is("c demo\np cnf 3 2\ne 1 2 0\na 3 0\n1 3 0\n-2 -3 0\n");
    QbfInstance q = read_qdimacs(is);
    CHECK(q.exists == std::vector<std::string>{"x_1", "x_2"});
    CHECK(q.forall == std::vector<std::string>{"y_1"});
    CHECK(q.matrix == P("(x_1 | y_1) & (~x_2 | ~y_1)"));
    CHECK(qbf_truth(q));

    std::istringstream bad("p cnf 2 1\na 1 0\ne 2 0\n1 2 0\n");
    CHECK_THROWS_AS(read_qdimacs(bad), ParseError);
    std::istringstream three("p cnf 3 1\ne 1 0\na 2 0\ne 3 0\n1 2 3 0\n");
    CHECK_THROWS_AS(read_qdimacs(three), ParseError);
}

TEST_CASE("dnf conversion") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 300; ++i) {
        Formula f = oracle::random_formula(rng, kPool, 4);
        Formula d = from_dnf(to_dnf(f));
        oracle::for_each_assignment(kPool, [&](const auto& a) { REQUIRE(oracle::truth(f, a) == oracle::truth(d, a)); });
    }
    // (a1|b1) & ... & (a10|b10) has 1024 terms
    std::vector<Formula> cs;
    for (int i = 0; i < 10; ++i)
        cs.push_back(Formula::var("a" + std::to_string(i)) | Formula::var("b" + std::to_string(i)));
    CHECK_THROWS_AS(to_dnf(Formula::make_and(cs)), SizeGuard);
}
