#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "doctest.h"

namespace {

struct Out {
    int code = -1;
    std::string text;
};

Out run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " KEMJA_CLI " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    Out o;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) o.text.append(buf, n);
    const int st = pclose(p);
    o.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return o;
}

void write(const char* path, const std::string& s) { std::ofstream(path, std::ios::binary) << s; }

std::string slurp(const char* path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

bool has(const Out& o, const std::string& s) { return o.text.find(s) != std::string::npos; }

const char* kDilemma = R"J({"pre_agenda":["p","q","p -> q"],"profile":[[1,1,1],[1,0,0],[0,0,1]]})J";

}  // namespace

TEST_CASE("aggregate") {
    write("dilemma.json", kDilemma);
    Out m = run("aggregate dilemma.json --rule majority");
    CHECK(m.code == 0);
    CHECK(has(m, "{p, ~q, p -> q}"));
    CHECK(has(m, "inconsistent"));
    Out k = run("aggregate dilemma.json --rule kemeny --engine brute");
    CHECK(k.code == 0);
    CHECK(has(k, "3 outcome(s) at distance 4"));

    write("ballots.json", R"J({"framework":"constraint","issues":["x1","x2","x3"],
        "gamma":"x3 <-> (x1 -> x2)","profile":["111","100","001"]})J");
    Out c = run("aggregate ballots.json --rule majority --format json");
    CHECK(c.code == 0);
    CHECK(has(c, "\"outcome\": \"101\""));
    CHECK(has(c, "\"rational\": false"));

    write("empty.json", R"J({"pre_agenda":["p"],"gamma":"q & ~q","profile":[[1]]})J");
    CHECK(run("aggregate empty.json").code == 3);
    write("broken.json", R"J({"pre_agenda":["p"])J");
    CHECK(run("aggregate broken.json").code == 2);
    CHECK(run("aggregate missing.json").code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("decide") {
    write("k0.json", R"J({"pre_agenda":["p","q","p -> q"],"profile":["111","100","001"],
        "desired_set":"111","budget_k":0})J");
    for (const char* mode : {"cautious", "optimistic", "pessimistic", "safe"})
        CHECK(run(std::string("decide k0.json --problem bribe --mode ") + mode).code == 1);
    // an unchanged profile already has min_new < max_old when the outcomes are spread out
    CHECK(run("decide k0.json --problem bribe --mode superoptimistic").code == 0);

    write("outside.json", R"J({"pre_agenda":["p","q","p -> q"],"profile":["111","100","001"],
        "fixed_agenda":[0],"target_L":["r"]})J");
    Out o = run("decide outside.json --problem control-add --attitude brave");
    CHECK(o.code == 1);
    CHECK(has(o, "target outside agenda"));
    CHECK(run("decide outside.json --problem control-del --mode nonsense").code == 2);
    CHECK(run("decide outside.json --problem bribe").code == 2);

    write("xy.qdimacs", "p cnf 2 1\ne 1 0\na 2 0\n1 2 0\n");
    REQUIRE(run("reduce xy.qdimacs -o manip.json").code == 0);
    Out y = run("decide manip.json --problem manip --mode cautious --format json");
    CHECK(y.code == 0);
    CHECK(has(y, "\"reported\""));
    CHECK(has(y, "\"engine\": \"oracle\""));
    CHECK(run("decide manip.json --problem manip --mode cautious --format json").text == y.text);
    CHECK(has(run("decide manip.json --problem manip --timing --format json"), "elapsed_ms"));

    Out t = run("decide manip.json --problem manip --timeout-s 0.001 --format json");
    CHECK(t.code == 4);
    CHECK(has(t, "\"error\": \"timeout\""));
}

TEST_CASE("reduce") {
    write("xy.qdimacs", "c exists x forall y . x | y\np cnf 2 1\ne 1 0\na 2 0\n1 2 0\n");
    REQUIRE(run("reduce xy.qdimacs -o a.json").code == 0);
    REQUIRE(run("reduce xy.qdimacs -o b.json").code == 0);
    CHECK(slurp("a.json") == slurp("b.json"));
    CHECK(slurp("a.json").find("\"padding\": 2") != std::string::npos);
    CHECK(run("reduce xy.qdimacs").text == slurp("a.json"));
    Out b = run("reduce xy.qdimacs --which bribe");
    CHECK(has(b, "\"k\": 1"));
    CHECK(has(b, "\"budget_k\": 1"));
    CHECK(has(run("reduce xy.qdimacs --which control"), "\"fixed_agenda\""));
    CHECK(has(run("reduce xy.qdimacs --u 2"), "\"tainted\": true"));
    Out c = run("reduce xy.qdimacs --clause-transform --u 2");
    CHECK(c.code == 0);
    CHECK(has(c, "\"gamma\": \"top\""));
    CHECK(has(c, "\"variant_count\": 2"));
    CHECK(run("reduce xy.qdimacs --which bribe --clause-transform").code == 2);

    write("ae.qdimacs", "p cnf 2 1\na 2 0\ne 1 0\n1 2 0\n");
    CHECK(run("reduce ae.qdimacs").code == 2);
    write("junk.qdimacs", "p cnf 2 1\ne 1 0\na 2 0\n1 x 0\n");
    CHECK(run("reduce junk.qdimacs").code == 2);
}

TEST_CASE("gen-random and verify") {
    Out a = run("gen-random --seed 11");
    CHECK(a.code == 0);
    CHECK(run("gen-random --seed 11").text == a.text);
    CHECK(run("gen-random --seed 12").text != a.text);
    CHECK(has(run("gen-random --seed 5 --variables-only"), "\"framework\": \"constraint-extended\""));

    Out e = run("verify --suite engines --count 4 --seed 100");
    CHECK(e.code == 0);
    CHECK(has(e, "engines: 68/68 passed"));
    CHECK(run("verify --suite lattice --count 4 --format json").code == 0);
    Out l = run("verify --suite ledger");
    CHECK(has(l, "PASS manipulation n=3 m=1 M1"));
    CHECK(l.code == (has(l, "FAIL ") ? 1 : 0));
    CHECK(run("verify --suite nothing").code == 2);
}

TEST_CASE("external solver") {
    write("dilemma.json", kDilemma);
    const std::string solver = std::string("--solver-path ") + FAKE_SOLVER;
    Out k = run("aggregate dilemma.json " + solver);
    CHECK(k.code == 0);
    CHECK(k.text == run("aggregate dilemma.json").text);
    Out m = run("aggregate dilemma.json --rule majority " + solver);
    CHECK(has(m, "inconsistent"));
    write("ck.json", R"J({"pre_agenda":["p","q","p -> q"],"profile":["111","100","001"],"target_L":["p"]})J");
    CHECK(run("decide ck.json --problem manip --mode optimistic " + solver).code ==
          run("decide ck.json --problem manip --mode optimistic").code);

    CHECK(run("aggregate dilemma.json " + solver, "FAKE_SOLVER_MODE=garbage").code == 5);
    CHECK(run("aggregate dilemma.json " + solver, "FAKE_SOLVER_MODE=crash").code == 5);
    CHECK(run("aggregate dilemma.json --timeout-s 0.5 " + solver, "FAKE_SOLVER_MODE=sleep").code == 4);
    CHECK(run("aggregate dilemma.json --solver-path /nonexistent/solver").code == 5);
}
