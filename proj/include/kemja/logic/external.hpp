#pragma once

#include <string>
#include <vector>

#include "kemja/logic/sat.hpp"

namespace kemja {

// Runs "<path> <file.cnf>" for every solve. Assumptions are written as unit
// clauses. A crash, a missing status line or garbage output is a SolverError,
// never an UNSAT answer.
class ExternalSolver final : public SatOracle {
public:
    explicit ExternalSolver(std::string path) : path_(std::move(path)) {}

    int new_var() override { return ++nvars_; }
    int num_vars() const override { return nvars_; }
    using ClauseSink::add_clause;
    void add_clause(std::span<const int> lits) override;
    SatResult solve(std::span<const int> assumptions) override;
    bool value(int var) const override;

private:
    std::string path_;
    int nvars_ = 0;
    CnfFormula cnf_;
    bool has_empty_ = false;
    std::vector<std::uint8_t> model_;
};

// Spawns the process and returns its stdout. Throws Timeout past the deadline
// (the child is killed) and SolverError when it cannot be started.
std::string run_process(const std::string& path, const std::vector<std::string>& args, Deadline deadline);

}  // namespace kemja
