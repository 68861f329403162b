#pragma once

#include <cstdint>
#include <vector>

#include "kemja/logic/cnf.hpp"

namespace kemja {

struct PbTerm {
    int lit;
    std::int64_t coef;
};

// Weighted sequential counter for sum(w_i * [lit_i]) <= d, d <= max_bound.
// Only the direction needed for upper bounds is encoded, so the counter
// clauses on their own never restrict the literals.
class WeightedCounter {
public:
    WeightedCounter(ClauseSink& sink, std::vector<std::pair<int, std::uint64_t>> terms, std::uint64_t max_bound);

    // Literal to assume for sum <= d; 0 when d >= total (nothing to assume).
    int at_most(std::uint64_t d) const;
    std::uint64_t total() const { return total_; }
    std::uint64_t max_bound() const { return max_; }

private:
    std::uint64_t total_ = 0, max_ = 0;
    std::vector<int> out_;  // out_[j-1] is forced true when sum >= j
};

// Adds sum(coef * [lit]) <= bound; negative coefficients are allowed.
// With guard != 0 the constraint only applies when guard is true.
void add_pb_at_most(ClauseSink& sink, std::vector<PbTerm> terms, std::int64_t bound, int guard = 0);

}  // namespace kemja
