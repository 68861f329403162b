// Stand-in for an external DIMACS solver. FAKE_SOLVER_MODE selects
// misbehaviour: garbage, crash, sleep, or (unset) honest answers.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include "kemja/logic/dimacs.hpp"

int main(int argc, char** argv) {
    const char* m = std::getenv("FAKE_SOLVER_MODE");
    const std::string mode = m ? m : "";
    if (argc < 2) return 1;
    if (mode == "garbage") {
        std::cout << "hello\n";
        return 0;
    }
    if (mode == "crash") std::abort();
    if (mode == "sleep") std::this_thread::sleep_for(std::chrono::seconds(30));

    std::ifstream in(argv[1]);
    const kemja::CnfFormula cnf = kemja::read_dimacs(in);
    kemja::CdclSolver s;
    while (s.num_vars() < cnf.num_vars()) s.new_var();
    for (const auto& c : cnf.clauses()) s.add_clause(c);
    if (s.solve({}) == kemja::SatResult::Unsat) {
        std::cout << "s UNSATISFIABLE\n";
        return 20;
    }
    std::cout << "s SATISFIABLE\nv";
    for (int v = 1; v <= cnf.num_vars(); ++v) std::cout << ' ' << (s.value(v) ? v : -v);
    std::cout << " 0\n";
    return 10;
}
