#include "kemja/logic/qbf.hpp"

#include <set>

namespace kemja {

std::string QbfInstance::str() const {
    std::string s = "exists";
    for (const auto& x : exists) s += ' ' + x;
    s += " forall";
    for (const auto& y : forall) s += ' ' + y;
    return s + " . " + matrix.str();
}

Assignment counting_assignment(const std::vector<std::string>& names, std::uint64_t i) {
    Assignment a;
    const std::size_t n = names.size();
    for (std::size_t k = 0; k < n; ++k) a[names[k]] = (i >> (n - 1 - k)) & 1u;
    return a;
}

namespace {

void check_qbf(const QbfInstance& q, std::size_t max_vars) {
    if (q.exists.size() + q.forall.size() > max_vars)
        throw SizeGuard("QBF has more than " + std::to_string(max_vars) + " quantified variables");
    std::set<std::string> bound(q.exists.begin(), q.exists.end());
    bound.insert(q.forall.begin(), q.forall.end());
    for (const auto& v : variables(q.matrix))
        if (!bound.count(v)) throw UnboundVariable(v);
}

}  // namespace

std::optional<Assignment> qbf_witness(const QbfInstance& q, const SolverConfig& cfg, std::size_t max_vars) {
    check_qbf(q, max_vars);
    const std::uint64_t n = 1ull << q.exists.size();
    for (std::uint64_t i = 0; i < n; ++i) {
        Assignment alpha = counting_assignment(q.exists, i);
        Formula rest = substitute(q.matrix, alpha);
        if (!is_satisfiable(complement(rest), cfg)) return alpha;
    }
    return std::nullopt;
}

bool qbf_truth(const QbfInstance& q, const SolverConfig& cfg, std::size_t max_vars) {
    return qbf_witness(q, cfg, max_vars).has_value();
}

}  // namespace kemja
