#pragma once

#include <string>
#include <vector>

#include "kemja/logic/formula.hpp"
#include "kemja/logic/sat.hpp"

namespace kemja {

// exists X forall Y . matrix
struct QbfInstance {
    std::vector<std::string> exists;
    std::vector<std::string> forall;
    Formula matrix;

    std::string str() const;
};

// Validity of matrix[alpha] is decided by one SAT call on ~matrix[alpha] per
// alpha over X. Refuses more than max_vars quantified variables.
bool qbf_truth(const QbfInstance& q, const SolverConfig& cfg = {}, std::size_t max_vars = 20);

// First alpha (in binary counting order, x_1 most significant) such that
// matrix[alpha] is valid.
std::optional<Assignment> qbf_witness(const QbfInstance& q, const SolverConfig& cfg = {},
                                      std::size_t max_vars = 20);

// Assignment over names that is the i-th in counting order.
Assignment counting_assignment(const std::vector<std::string>& names, std::uint64_t i);

}  // namespace kemja
