#pragma once

#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kemja/logic/formula.hpp"

namespace kemja {

// Literals are DIMACS style: +v or -v with v >= 1.
class ClauseSink {
public:
    virtual ~ClauseSink() = default;
    virtual int new_var() = 0;
    virtual int num_vars() const = 0;
    virtual void add_clause(std::span<const int> lits) = 0;

    void add_clause(std::initializer_list<int> lits) {
        add_clause(std::span<const int>(lits.begin(), lits.size()));
    }
};

class CnfFormula final : public ClauseSink {
public:
    int new_var() override;
    int num_vars() const override { return static_cast<int>(names_.size()); }
    using ClauseSink::add_clause;
    void add_clause(std::span<const int> lits) override;

    int var(const std::string& name);  // lookup or allocate
    int find(const std::string& name) const;  // 0 if absent
    void set_name(int v, std::string name);
    const std::string& name(int v) const { return names_.at(v - 1); }

    const std::vector<std::vector<int>>& clauses() const { return clauses_; }
    std::size_t num_clauses() const { return clauses_.size(); }

private:
    std::vector<std::string> names_;
    std::map<std::string, int, std::less<>> index_;
    std::vector<std::vector<int>> clauses_;
};

// Definitional (Tseitin) encoding onto any clause sink. Every subformula
// gets a literal defined by a full biconditional; n-ary gates are split into
// binary ones, so no emitted clause has more than three literals.
class TseitinEncoder {
public:
    explicit TseitinEncoder(ClauseSink& sink) : sink_(sink) {}

    int var(const std::string& name);
    int find(const std::string& name) const;
    void bind(const std::string& name, int v) { vars_[name] = v; }
    const std::map<std::string, int, std::less<>>& vars() const { return vars_; }

    int literal(const Formula& f);
    // Like literal(), but always returns a fresh variable r with r <-> f.
    int defined(const Formula& f);
    // Adds f as a constraint; top-level conjunctions are split.
    void assert_formula(const Formula& f);

    int true_lit();

private:
    int gate_and(int a, int b);
    int gate_or(int a, int b) { return -gate_and(-a, -b); }
    int gate_xor(int a, int b);

    ClauseSink& sink_;
    std::map<std::string, int, std::less<>> vars_;
    std::unordered_map<const Node*, std::pair<int, Formula>> memo_;
    int true_ = 0;
};

// Equisatisfiable CNF of f over the variables of f plus fresh auxiliaries.
// An atom gives a single unit clause; top gives no clauses.
CnfFormula to_cnf_tseitin(const Formula& f);

}  // namespace kemja
