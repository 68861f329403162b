#pragma once

#include <cstdint>
#include <stdexcept>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kemja {

enum class Op : std::uint8_t { Var, Top, Bot, Not, And, Or, Xor, Implies, Iff };

class Formula;

struct Node {
    Op op;
    std::string name;  // Var only
    std::vector<Formula> kids;
};

// Immutable, structurally shared propositional formula. And, Or and Xor are
// n-ary (at least two operands once built through the helpers below).
class Formula {
public:
    Formula();  // top
    explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

    static Formula var(std::string name);
    static Formula top();
    static Formula bot();
    static Formula make_not(Formula a);
    static Formula make_and(std::vector<Formula> xs);  // {} -> top, {a} -> a
    static Formula make_or(std::vector<Formula> xs);   // {} -> bot, {a} -> a
    static Formula make_xor(std::vector<Formula> xs);  // {} -> bot, {a} -> a
    static Formula make_implies(Formula a, Formula b);
    static Formula make_iff(Formula a, Formula b);

    Op op() const { return n_->op; }
    const std::string& name() const { return n_->name; }
    const std::vector<Formula>& kids() const { return n_->kids; }
    const Formula& kid(std::size_t i) const { return n_->kids[i]; }
    const Node* node() const { return n_.get(); }

    bool is_var() const { return op() == Op::Var; }
    bool is_const() const { return op() == Op::Top || op() == Op::Bot; }

    std::string str() const;

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
    friend bool operator<(const Formula& a, const Formula& b);

private:
    std::shared_ptr<const Node> n_;
};

Formula operator!(const Formula& a);
Formula operator&(const Formula& a, const Formula& b);
Formula operator|(const Formula& a, const Formula& b);
Formula operator^(const Formula& a, const Formula& b);

using Assignment = std::map<std::string, bool, std::less<>>;

struct UnboundVariable : std::runtime_error {
    std::string var;
    explicit UnboundVariable(std::string v)
        : std::runtime_error("unbound variable: " + v), var(std::move(v)) {}
};

// Variables in first-occurrence order (left to right, depth first).
std::vector<std::string> variables(const Formula& f);
void collect_variables(const Formula& f, std::vector<std::string>& out, std::set<std::string>& seen);

bool evaluate(const Formula& f, const Assignment& a);

// Apply a partial assignment and fold constants away. The result is either
// top, bot, or a formula without constant leaves.
Formula substitute(const Formula& f, const Assignment& partial);
Formula simplify(const Formula& f);

// Rename variables; unmapped names are kept.
Formula rename(const Formula& f, const std::map<std::string, std::string>& names);

// ~phi: strips one negation if present, otherwise adds one.
Formula complement(const Formula& f);

std::size_t size(const Formula& f);  // node count, shared nodes counted per use

// DNF by distribution; throws SizeGuard when the term count exceeds max_terms.
using Term = std::vector<std::pair<std::string, bool>>;
std::vector<Term> to_dnf(const Formula& f, std::size_t max_terms = 512);
Formula from_dnf(const std::vector<Term>& terms);

struct SizeGuard : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool valid_var_name(std::string_view s);

}  // namespace kemja
