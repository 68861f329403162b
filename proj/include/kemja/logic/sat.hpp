#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kemja/logic/cnf.hpp"

namespace kemja {

enum class SatResult { Sat, Unsat, Unknown };

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Timeout : std::runtime_error {
    Timeout() : std::runtime_error("time budget exhausted") {}
};

using Clock = std::chrono::steady_clock;
using Deadline = std::optional<Clock::time_point>;

// Incremental SAT interface. check() counts the call, throws Timeout when the
// solver gives up, and returns satisfiability under the assumptions.
class SatOracle : public ClauseSink {
public:
    virtual SatResult solve(std::span<const int> assumptions) = 0;
    virtual bool value(int var) const = 0;  // model after Sat
    virtual void set_phase(int /*var*/, bool /*positive*/) {}
    virtual void set_deadline(Deadline d) { deadline_ = d; }

    bool check(std::span<const int> assumptions = {});
    bool check(std::initializer_list<int> assumptions) {
        return check(std::span<const int>(assumptions.begin(), assumptions.size()));
    }
    bool lit_value(int lit) const { return lit > 0 ? value(lit) : !value(-lit); }
    std::uint64_t calls() const { return calls_; }

protected:
    Deadline deadline_;

private:
    std::uint64_t calls_ = 0;
};

// CDCL with two watched literals, first-UIP learning, VSIDS, phase saving,
// Luby restarts and activity-based clause deletion. Fully deterministic.
class CdclSolver final : public SatOracle {
public:
    CdclSolver();
    ~CdclSolver() override;

    int new_var() override;
    int num_vars() const override;
    using ClauseSink::add_clause;
    void add_clause(std::span<const int> lits) override;
    SatResult solve(std::span<const int> assumptions) override;
    bool value(int var) const override;
    void set_phase(int var, bool positive) override;

    struct Stats {
        std::uint64_t conflicts = 0, decisions = 0, propagations = 0;
    };
    const Stats& stats() const;

private:
    struct Impl;
    std::unique_ptr<Impl> p_;
};

// Which backend the engines should create.
struct SolverConfig {
    std::string external_path;  // empty: internal CDCL
    Deadline deadline;
};

std::unique_ptr<SatOracle> make_solver(const SolverConfig& cfg);

struct SatOutcome {
    bool sat = false;
    Assignment model;  // named variables only
};

SatOutcome sat(const CnfFormula& cnf, std::span<const int> assumptions = {},
               const SolverConfig& cfg = {});

bool is_satisfiable(const Formula& f, const SolverConfig& cfg = {});

}  // namespace kemja
