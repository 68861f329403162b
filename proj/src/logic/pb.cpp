#include "kemja/logic/pb.hpp"

#include <algorithm>
#include <stdexcept>

namespace kemja {

WeightedCounter::WeightedCounter(ClauseSink& sink, std::vector<std::pair<int, std::uint64_t>> terms,
                                 std::uint64_t max_bound)
    : max_(max_bound) {
    for (auto& t : terms) total_ += t.second;
    const std::uint64_t cap = std::min(max_ + 1, total_);
    std::vector<int> prev;  // prev[j-1] for j = 1..prev.size()
    std::uint64_t prefix = 0;
    for (auto [lit, w] : terms) {
        if (w == 0) continue;
        prefix += w;
        const std::size_t c = static_cast<std::size_t>(std::min(cap, prefix));
        std::vector<int> cur(c);
        for (auto& v : cur) v = sink.new_var();
        for (std::size_t j = 0; j < prev.size(); ++j) sink.add_clause({-prev[j], cur[j]});
        for (std::size_t j = 0; j < std::min<std::uint64_t>(w, c); ++j) sink.add_clause({-lit, cur[j]});
        for (std::size_t j = 0; j < prev.size(); ++j) {
            std::uint64_t to = std::min<std::uint64_t>(j + 1 + w, c);
            sink.add_clause({-lit, -prev[j], cur[static_cast<std::size_t>(to - 1)]});
        }
        prev = std::move(cur);
    }
    out_ = std::move(prev);
}

int WeightedCounter::at_most(std::uint64_t d) const {
    if (d >= total_) return 0;
    if (d > max_) throw std::logic_error("counter bound exceeds its range");
    return -out_[static_cast<std::size_t>(d)];
}

void add_pb_at_most(ClauseSink& sink, std::vector<PbTerm> terms, std::int64_t bound, int guard) {
    std::vector<std::pair<int, std::uint64_t>> pos;
    for (auto [lit, c] : terms) {
        if (c == 0) continue;
        if (c < 0) {
            // c*[l] = c + |c|*[~l]
            bound -= c;
            pos.emplace_back(-lit, static_cast<std::uint64_t>(-c));
        } else {
            pos.emplace_back(lit, static_cast<std::uint64_t>(c));
        }
    }
    auto block = [&](int lit) {
        if (guard && lit)
            sink.add_clause({-guard, lit});
        else if (guard)
            sink.add_clause({-guard});
        else if (lit)
            sink.add_clause({lit});
        else
            sink.add_clause(std::span<const int>{});
    };
    if (bound < 0) {
        block(0);
        return;
    }
    std::uint64_t total = 0;
    for (auto& p : pos) total += p.second;
    if (static_cast<std::uint64_t>(bound) >= total) return;
    WeightedCounter ctr(sink, std::move(pos), static_cast<std::uint64_t>(bound));
    block(ctr.at_most(static_cast<std::uint64_t>(bound)));
}

}  // namespace kemja
