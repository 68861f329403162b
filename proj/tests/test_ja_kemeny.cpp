#include <algorithm>
#include <random>

#include "doctest.h"
#include "kemja/io/random.hpp"
#include "kemja/ja/agenda.hpp"
#include "kemja/ja/constraint.hpp"
#include "kemja/ja/ops.hpp"
#include "kemja/kemeny/kemeny.hpp"
#include "kemja/logic/parser.hpp"
#include "oracles.hpp"

using namespace kemja;

namespace {

Formula P(const char* s) { return parse_formula(s); }

// every bit string whose judgments together with gamma are satisfiable
std::vector<BitVec> oracle_consistent(const Agenda& a, const Formula& gamma) {
    std::vector<BitVec> out;
    for (std::uint64_t m = 0; m < (1ull << a.size()); ++m) {
        BitVec b(a.size());
        std::vector<Formula> fs{gamma};
        for (std::size_t i = 0; i < a.size(); ++i) {
            b.set(i, (m >> i) & 1u);
            fs.push_back(b[i] ? a[i] : !a[i]);
        }
        if (oracle::satisfiable(Formula::make_and(fs))) out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t oracle_dist(const BitVec& x, const Profile& p) {
    std::uint64_t d = 0;
    for (const auto& r : p.rows())
        for (std::size_t i = 0; i < x.size(); ++i) d += x[i] != r[i];
    return d;
}

}  // namespace

TEST_CASE("agenda invariants") {
    CHECK_THROWS_AS(parse_agenda({"p", "p"}), InvalidInstance);
    CHECK_THROWS_AS(parse_agenda({"p", "~p"}), InvalidInstance);
    CHECK_THROWS_AS(parse_agenda({"~~p"}), InvalidInstance);
    auto a = parse_agenda({"p", "~q", "p & q"});
    CHECK(a->member(P("q")) == std::make_pair(std::size_t(1), false));
    CHECK(a->member(P("~(p & q)")) == std::make_pair(std::size_t(2), false));
    CHECK_FALSE(a->member(P("r")).has_value());
    CHECK(a->variables() == std::vector<std::string>{"p", "q"});
    JudgmentSet j = judgment_set(a, "101");
    CHECK(j.formulas() == std::vector<Formula>{P("p"), P("q"), P("p & q")});
}

TEST_CASE("hamming distance and preference") {
    auto a = parse_agenda({"p", "q", "r"});
    auto j1 = judgment_set(a, "110"), j2 = judgment_set(a, "011");
    CHECK(hamming(j1, j2) == 2);
    CHECK(hamming(j1, j1) == 0);
    WeightFunction w({5, 1, 1});
    CHECK(weighted_hamming(j1, j2, w) == 6);
    CHECK(prefers(j1, judgment_set(a, "100"), j2, w));
    auto other = parse_agenda({"p", "q", "s"});
    CHECK_THROWS_AS(hamming(j1, judgment_set(other, "000")), AgendaMismatch);
}

TEST_CASE("metric axioms on random sets") {
    std::mt19937_64 rng(3);
    auto a = parse_agenda({"p", "q", "r", "s", "t", "u", "v"});
    auto rnd = [&] {
        JudgmentSet j(a);
        for (std::size_t i = 0; i < a->size(); ++i) j.set(i, rng() % 2);
        return j;
    };
    for (int i = 0; i < 500; ++i) {
        auto x = rnd(), y = rnd(), z = rnd();
        CHECK(hamming(x, y) == hamming(y, x));
        CHECK((hamming(x, y) == 0) == (x == y));
        CHECK(hamming(x, z) <= hamming(x, y) + hamming(y, z));
    }
}

TEST_CASE("majority and the doctrinal paradox") {
    auto a = parse_agenda({"p", "q", "p & q"});
    Profile prof(a, {judgment_set(a, "111"), judgment_set(a, "100"), judgment_set(a, "010")});
    JudgmentSet m = majority(prof);
    CHECK(m.str() == "110");
    CHECK_FALSE(is_gamma_consistent(m, Formula::top()));
    Profile tie(a, {judgment_set(a, "111"), judgment_set(a, "000")});
    CHECK(majority(tie).str() == "000");

    for (Engine e : {Engine::Brute, Engine::Oracle}) {
        EngineConfig cfg;
        cfg.engine = e;
        KemenyResult r = kemeny(prof, Formula::top(), cfg);
        CHECK(r.d_win == 4);
        REQUIRE(r.outcomes.size() == 3);
        CHECK(r.outcomes[0].str() == "010");
        CHECK(r.outcomes[1].str() == "100");
        CHECK(r.outcomes[2].str() == "111");
    }
}

TEST_CASE("restriction") {
    auto a = parse_agenda({"p", "q", "r"});
    auto j = judgment_set(a, "101");
    auto s = sub_agenda(*a, {2, 0});
    CHECK(restrict(j, s).str() == "11");
    CHECK(s.agenda->formulas() == std::vector<Formula>{P("p"), P("r")});
    auto empty = sub_agenda(*a, {});
    CHECK(restrict(j, empty).size() == 0);
}

TEST_CASE("consistency and enumeration agree with truth tables") {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        RandomInstance ri = random_instance(seed);
        auto expect = oracle_consistent(*ri.agenda, ri.gamma);
        auto got = enumerate_consistent_sets(ri.agenda, ri.gamma);
        REQUIRE(got.size() == expect.size());
        for (std::size_t k = 0; k < got.size(); ++k) CHECK(got[k].bits() == expect[k]);
        // single-set consistency through SAT
        for (std::uint64_t m = 0; m < (1ull << ri.agenda->size()); m += 3) {
            JudgmentSet j(ri.agenda);
            for (std::size_t i = 0; i < j.size(); ++i) j.set(i, (m >> i) & 1u);
            bool in = std::binary_search(expect.begin(), expect.end(), j.bits());
            CHECK(is_gamma_consistent(j, ri.gamma) == in);
        }
    }
}

TEST_CASE("enumeration cap") {
    auto a = parse_agenda({"p", "q", "r", "s"});
    CHECK_THROWS_AS(enumerate_consistent_sets(a, Formula::top(), 10), CapExceeded);
    CHECK(enumerate_consistent_sets(a, Formula::top(), 16).size() == 16);
    CHECK(enumerate_consistent_sets(a, P("p & ~p")).empty());
}

TEST_CASE("kemeny engines agree with a reference scan") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        RandomInstance ri = random_instance(seed);
        auto sets = oracle_consistent(*ri.agenda, ri.gamma);
        std::uint64_t best = UINT64_MAX;
        for (const auto& b : sets) best = std::min(best, oracle_dist(b, ri.profile));
        std::vector<BitVec> expect;
        for (const auto& b : sets)
            if (oracle_dist(b, ri.profile) == best) expect.push_back(b);

        for (Engine e : {Engine::Brute, Engine::Oracle}) {
            EngineConfig cfg;
            cfg.engine = e;
            KemenyResult r = kemeny(ri.profile, ri.gamma, cfg);
            REQUIRE(r.d_win == best);
            REQUIRE(r.outcomes.size() == expect.size());
            for (std::size_t k = 0; k < expect.size(); ++k) CHECK(r.outcomes[k].bits() == expect[k]);
            CHECK(min_distance_to_profile(ri.profile, ri.gamma, cfg) == best);

            std::uint64_t lo = UINT64_MAX, hi = 0;
            for (const auto& b : expect) {
                std::uint64_t d = weighted_hamming(JudgmentSet(ri.agenda, b), ri.desired, ri.weights);
                lo = std::min(lo, d);
                hi = std::max(hi, d);
            }
            CHECK(extreme_weighted_distance(ri.profile, ri.gamma, ri.desired, ri.weights, Extreme::Min, cfg) == lo);
            CHECK(extreme_weighted_distance(ri.profile, ri.gamma, ri.desired, ri.weights, Extreme::Max, cfg) == hi);

            for (std::uint64_t t : {std::uint64_t(0), lo, hi, hi + 1}) {
                CHECK(exists_outcome_with(ri.profile, ri.gamma,
                                          OutcomePredicate::weighted_dist_geq(ri.desired, ri.weights, t),
                                          cfg) == (hi >= t));
                CHECK(exists_outcome_with(ri.profile, ri.gamma,
                                          OutcomePredicate::weighted_dist_lt(ri.desired, ri.weights, t),
                                          cfg) == (lo < t));
            }
            Conclusions L = conclusions(*ri.agenda, ri.target);
            bool miss = false, incl = false;
            for (const auto& b : expect) {
                bool sub = L.subset_of(JudgmentSet(ri.agenda, b));
                miss = miss || !sub;
                incl = incl || sub;
            }
            CHECK(exists_outcome_with(ri.profile, ri.gamma, OutcomePredicate::missing_conclusion(L), cfg) == miss);
            CHECK(exists_outcome_with(ri.profile, ri.gamma, OutcomePredicate::includes_conclusions(L), cfg) ==
                  incl);
        }
    }
}

TEST_CASE("kemeny is anonymous") {
    for (std::uint64_t seed = 300; seed < 360; ++seed) {
        RandomInstance ri = random_instance(seed);
        auto rows = ri.profile.rows();
        std::reverse(rows.begin(), rows.end());
        Profile q(ri.agenda, rows);
        auto a = kemeny(ri.profile, ri.gamma), b = kemeny(q, ri.gamma);
        CHECK(a.d_win == b.d_win);
        CHECK(a.outcomes == b.outcomes);
    }
}

TEST_CASE("outcome cap truncates") {
    auto a = parse_agenda({"p", "q", "r", "s"});
    Profile prof(a, {judgment_set(a, "0000"), judgment_set(a, "1111")});
    EngineConfig cfg;
    cfg.outcome_cap = 5;
    KemenyResult r = kemeny(prof, Formula::top(), cfg);
    CHECK(r.truncated);
    CHECK(r.outcomes.size() == 5);
    CHECK(r.d_win == 4);
    cfg.outcome_cap = 16;
    r = kemeny(prof, Formula::top(), cfg);
    CHECK_FALSE(r.truncated);
    CHECK(r.outcomes.size() == 16);
}

TEST_CASE("infeasible constraint") {
    auto a = parse_agenda({"p"});
    Profile prof(a, {judgment_set(a, "1")});
    CHECK_THROWS_AS(kemeny(prof, P("q & ~q")), Infeasible);
    EngineConfig brute;
    brute.engine = Engine::Brute;
    CHECK_THROWS_AS(kemeny(prof, P("q & ~q"), brute), Infeasible);
}

TEST_CASE("constraint-based rationality") {
    auto issues = std::make_shared<const IssueSet>(std::vector<std::string>{"x1", "x2"});
    Ballot b{issues, BitVec::from_string("10")};
    CHECK(is_rational(b, P("x1 -> ~x2"), false));
    CHECK_FALSE(is_rational(Ballot{issues, BitVec::from_string("11")}, P("x1 -> ~x2"), false));
    CHECK_THROWS_AS(is_rational(b, P("x1 & z"), false), InvalidInstance);
    CHECK(is_rational(b, P("(x1 -> z) & (z -> ~x2)"), true));
    CHECK_FALSE(is_rational(Ballot{issues, BitVec::from_string("11")}, P("(x1 -> z) & (z -> ~x2)"), true));
    std::vector<Ballot> prof{Ballot{issues, BitVec::from_string("10")}, Ballot{issues, BitVec::from_string("11")},
                             Ballot{issues, BitVec::from_string("01")}};
    CHECK(majority(issues, prof).bits.str() == "11");
}
