#include <algorithm>
#include <cstdlib>

#include "kemja/logic/sat.hpp"

namespace kemja {

bool SatOracle::check(std::span<const int> assumptions) {
    ++calls_;
    if (deadline_ && Clock::now() > *deadline_) throw Timeout();
    switch (solve(assumptions)) {
    case SatResult::Sat: return true;
    case SatResult::Unsat: return false;
    case SatResult::Unknown: break;
    }
    throw Timeout();
}

namespace {

using L = std::uint32_t;  // internal literal: 2 * var + sign, var 0-based
constexpr std::uint32_t kNoReason = UINT32_MAX;

inline L to_lit(int d) { return d > 0 ? L(2 * (d - 1)) : L(2 * (-d - 1) + 1); }
inline std::uint32_t var_of(L l) { return l >> 1; }
inline L neg(L l) { return l ^ 1u; }

// value encoding: 0 false, 1 true, 2 unassigned
constexpr std::uint8_t F = 0, T = 1, U = 2;

std::uint64_t luby(std::uint64_t x) {
    // x is 0-based
    std::uint64_t size = 1, seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x = x % size;
    }
    return 1ull << seq;
}

}  // namespace

struct CdclSolver::Impl {
    struct Clause {
        std::vector<L> lits;
        double act = 0;
        bool learnt = false;
        bool deleted = false;
    };
    struct Watch {
        std::uint32_t cref;
        L blocker;
    };

    std::vector<Clause> clauses;
    std::vector<std::uint32_t> free_slots;
    std::vector<std::vector<Watch>> watches;  // by literal becoming false
    std::vector<std::uint8_t> assign;
    std::vector<std::uint8_t> phase;
    std::vector<int> level;
    std::vector<std::uint32_t> reason;
    std::vector<double> activity;
    std::vector<std::uint8_t> seen;
    std::vector<L> trail;
    std::vector<std::size_t> trail_lim;
    std::size_t qhead = 0;
    bool ok = true;
    double var_inc = 1, cla_inc = 1;
    std::size_t num_learnts = 0;
    double max_learnts = 0;
    std::vector<std::uint8_t> model;
    Stats stats;
    Deadline deadline;

    // binary max-heap over activity
    std::vector<std::uint32_t> heap;
    std::vector<int> heap_pos;

    int nvars() const { return static_cast<int>(assign.size()); }
    int decision_level() const { return static_cast<int>(trail_lim.size()); }

    std::uint8_t val(L l) const {
        std::uint8_t a = assign[var_of(l)];
        return a == U ? U : std::uint8_t(a ^ (l & 1u));
    }

    bool heap_less(std::uint32_t a, std::uint32_t b) const {
        if (activity[a] != activity[b]) return activity[a] > activity[b];
        return a < b;
    }
    void heap_up(std::size_t i) {
        std::uint32_t v = heap[i];
        while (i > 0) {
            std::size_t p = (i - 1) / 2;
            if (!heap_less(v, heap[p])) break;
            heap[i] = heap[p];
            heap_pos[heap[i]] = static_cast<int>(i);
            i = p;
        }
        heap[i] = v;
        heap_pos[v] = static_cast<int>(i);
    }
    void heap_down(std::size_t i) {
        std::uint32_t v = heap[i];
        for (;;) {
            std::size_t c = 2 * i + 1;
            if (c >= heap.size()) break;
            if (c + 1 < heap.size() && heap_less(heap[c + 1], heap[c])) ++c;
            if (!heap_less(heap[c], v)) break;
            heap[i] = heap[c];
            heap_pos[heap[i]] = static_cast<int>(i);
            i = c;
        }
        heap[i] = v;
        heap_pos[v] = static_cast<int>(i);
    }
    void heap_insert(std::uint32_t v) {
        if (heap_pos[v] >= 0) return;
        heap.push_back(v);
        heap_up(heap.size() - 1);
    }
    std::uint32_t heap_pop() {
        std::uint32_t top = heap[0];
        heap_pos[top] = -1;
        std::uint32_t last = heap.back();
        heap.pop_back();
        if (!heap.empty()) {
            heap[0] = last;
            heap_pos[last] = 0;
            heap_down(0);
        }
        return top;
    }

    void bump_var(std::uint32_t v) {
        if ((activity[v] += var_inc) > 1e100) {
            for (auto& a : activity) a *= 1e-100;
            var_inc *= 1e-100;
        }
        if (heap_pos[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos[v]));
    }
    void bump_clause(Clause& c) {
        if ((c.act += cla_inc) > 1e20) {
            for (auto& k : clauses)
                if (k.learnt) k.act *= 1e-20;
            cla_inc *= 1e-20;
        }
    }

    int add_var() {
        assign.push_back(U);
        phase.push_back(0);
        level.push_back(0);
        reason.push_back(kNoReason);
        activity.push_back(0);
        seen.push_back(0);
        heap_pos.push_back(-1);
        watches.emplace_back();
        watches.emplace_back();
        heap_insert(static_cast<std::uint32_t>(nvars() - 1));
        return nvars();
    }

    void enqueue(L l, std::uint32_t from) {
        std::uint32_t v = var_of(l);
        assign[v] = std::uint8_t((l & 1u) ^ 1u);
        level[v] = decision_level();
        reason[v] = from;
        trail.push_back(l);
    }

    std::uint32_t alloc(std::vector<L> lits, bool learnt) {
        std::uint32_t cref;
        if (!free_slots.empty()) {
            cref = free_slots.back();
            free_slots.pop_back();
        } else {
            cref = static_cast<std::uint32_t>(clauses.size());
            clauses.emplace_back();
        }
        Clause& c = clauses[cref];
        c.lits = std::move(lits);
        c.learnt = learnt;
        c.deleted = false;
        c.act = 0;
        watches[c.lits[0]].push_back({cref, c.lits[1]});
        watches[c.lits[1]].push_back({cref, c.lits[0]});
        return cref;
    }

    std::uint32_t propagate() {
        while (qhead < trail.size()) {
            L p = trail[qhead++];
            L fl = neg(p);
            ++stats.propagations;
            auto& ws = watches[fl];
            std::size_t i = 0, j = 0;
            const std::size_t n = ws.size();
            while (i < n) {
                Watch w = ws[i];
                Clause& c = clauses[w.cref];
                if (c.deleted) {
                    ++i;
                    continue;
                }
                if (val(w.blocker) == T) {
                    ws[j++] = ws[i++];
                    continue;
                }
                if (c.lits[0] == fl) std::swap(c.lits[0], c.lits[1]);
                L first = c.lits[0];
                if (first != w.blocker && val(first) == T) {
                    ws[j++] = {w.cref, first};
                    ++i;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.lits.size(); ++k) {
                    if (val(c.lits[k]) != F) {
                        std::swap(c.lits[1], c.lits[k]);
                        watches[c.lits[1]].push_back({w.cref, first});
                        moved = true;
                        break;
                    }
                }
                if (moved) {
                    ++i;
                    continue;
                }
                ws[j++] = {w.cref, first};
                ++i;
                if (val(first) == F) {
                    while (i < n) ws[j++] = ws[i++];
                    ws.resize(j);
                    qhead = trail.size();
                    return w.cref;
                }
                enqueue(first, w.cref);
            }
            ws.resize(j);
        }
        return kNoReason;
    }

    void cancel_until(int lvl) {
        if (decision_level() <= lvl) return;
        for (std::size_t i = trail.size(); i > trail_lim[static_cast<std::size_t>(lvl)]; --i) {
            std::uint32_t v = var_of(trail[i - 1]);
            phase[v] = assign[v];
            assign[v] = U;
            reason[v] = kNoReason;
            heap_insert(v);
        }
        trail.resize(trail_lim[static_cast<std::size_t>(lvl)]);
        trail_lim.resize(static_cast<std::size_t>(lvl));
        qhead = trail.size();
    }

    bool redundant(L l, const std::vector<L>& /*learnt*/) const {
        std::uint32_t r = reason[var_of(l)];
        if (r == kNoReason) return false;
        const Clause& c = clauses[r];
        for (std::size_t k = 1; k < c.lits.size(); ++k) {
            std::uint32_t v = var_of(c.lits[k]);
            if (!seen[v] && level[v] > 0) return false;
        }
        return true;
    }

    void analyze(std::uint32_t confl, std::vector<L>& out, int& bt) {
        out.clear();
        out.push_back(0);
        int path = 0;
        L p = 0;
        bool have_p = false;
        std::size_t idx = trail.size();
        for (;;) {
            Clause& c = clauses[confl];
            if (c.learnt) bump_clause(c);
            for (std::size_t k = have_p ? 1 : 0; k < c.lits.size(); ++k) {
                L q = c.lits[k];
                std::uint32_t v = var_of(q);
                if (seen[v] || level[v] == 0) continue;
                seen[v] = 1;
                bump_var(v);
                if (level[v] >= decision_level())
                    ++path;
                else
                    out.push_back(q);
            }
            do {
                --idx;
            } while (!seen[var_of(trail[idx])]);
            p = trail[idx];
            have_p = true;
            confl = reason[var_of(p)];
            seen[var_of(p)] = 0;
            if (--path == 0) break;
        }
        out[0] = neg(p);

        // local minimisation
        std::vector<L> keep{out[0]};
        for (std::size_t k = 1; k < out.size(); ++k)
            if (!redundant(out[k], out)) keep.push_back(out[k]);
        for (std::size_t k = 1; k < out.size(); ++k) seen[var_of(out[k])] = 0;
        out.swap(keep);

        bt = 0;
        if (out.size() > 1) {
            std::size_t best = 1;
            for (std::size_t k = 2; k < out.size(); ++k)
                if (level[var_of(out[k])] > level[var_of(out[best])]) best = k;
            std::swap(out[1], out[best]);
            bt = level[var_of(out[1])];
        }
    }

    bool locked(std::uint32_t cref) const {
        const Clause& c = clauses[cref];
        std::uint32_t v = var_of(c.lits[0]);
        return reason[v] == cref && val(c.lits[0]) == T;
    }

    void reduce_db() {
        std::vector<std::uint32_t> ls;
        for (std::uint32_t i = 0; i < clauses.size(); ++i)
            if (clauses[i].learnt && !clauses[i].deleted && clauses[i].lits.size() > 2) ls.push_back(i);
        std::sort(ls.begin(), ls.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (clauses[a].act != clauses[b].act) return clauses[a].act < clauses[b].act;
            return a < b;
        });
        std::size_t removed = 0;
        for (std::size_t i = 0; i < ls.size() / 2; ++i) {
            if (locked(ls[i])) continue;
            clauses[ls[i]].deleted = true;
            clauses[ls[i]].lits.clear();
            clauses[ls[i]].lits.shrink_to_fit();
            ++removed;
        }
        if (!removed) return;
        for (auto& ws : watches)
            ws.erase(std::remove_if(ws.begin(), ws.end(),
                                    [&](const Watch& w) { return clauses[w.cref].deleted; }),
                     ws.end());
        for (std::size_t i = 0; i < ls.size() / 2; ++i)
            if (clauses[ls[i]].deleted) free_slots.push_back(ls[i]);
        num_learnts -= removed;
    }

    void add(std::span<const int> in) {
        if (!ok) return;
        cancel_until(0);
        std::vector<L> lits;
        lits.reserve(in.size());
        for (int d : in) {
            if (d == 0 || std::abs(d) > nvars()) throw std::invalid_argument("literal out of range");
            lits.push_back(to_lit(d));
        }
        std::sort(lits.begin(), lits.end());
        std::vector<L> out;
        for (std::size_t i = 0; i < lits.size(); ++i) {
            if (i && lits[i] == lits[i - 1]) continue;
            if (i && lits[i] == neg(lits[i - 1])) return;  // tautology
            std::uint8_t v = val(lits[i]);
            if (v == T) return;
            if (v == F) continue;
            out.push_back(lits[i]);
        }
        // tautology check across the filtered list (x and ~x are adjacent after sort)
        if (out.empty()) {
            ok = false;
            return;
        }
        if (out.size() == 1) {
            enqueue(out[0], kNoReason);
            if (propagate() != kNoReason) ok = false;
            return;
        }
        alloc(std::move(out), false);
    }

    SatResult search(std::span<const int> assumptions) {
        if (!ok) return SatResult::Unsat;
        cancel_until(0);
        if (propagate() != kNoReason) {
            ok = false;
            return SatResult::Unsat;
        }
        std::vector<L> assume;
        for (int d : assumptions) {
            if (d == 0 || std::abs(d) > nvars()) throw std::invalid_argument("assumption out of range");
            assume.push_back(to_lit(d));
        }
        std::size_t clause_count = 0;
        for (const auto& c : clauses)
            if (!c.deleted && !c.learnt) ++clause_count;
        max_learnts = std::max(4000.0, static_cast<double>(clause_count) / 3.0);

        std::vector<L> learnt;
        std::uint64_t restart_no = 0;
        std::uint64_t budget = 100 * luby(restart_no);
        std::uint64_t since_restart = 0;
        for (;;) {
            std::uint32_t confl = propagate();
            if (confl != kNoReason) {
                ++stats.conflicts;
                ++since_restart;
                if (decision_level() == 0) {
                    ok = false;
                    return SatResult::Unsat;
                }
                int bt;
                analyze(confl, learnt, bt);
                cancel_until(bt);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], kNoReason);
                } else {
                    std::uint32_t cref = alloc(learnt, true);
                    ++num_learnts;
                    bump_clause(clauses[cref]);
                    enqueue(learnt[0], cref);
                }
                var_inc /= 0.95;
                cla_inc /= 0.999;
                if ((stats.conflicts & 255u) == 0 && deadline && Clock::now() > *deadline) {
                    cancel_until(0);
                    return SatResult::Unknown;
                }
                continue;
            }
            if (since_restart >= budget) {
                cancel_until(0);
                since_restart = 0;
                budget = 100 * luby(++restart_no);
                continue;
            }
            if (static_cast<double>(num_learnts) >= max_learnts + static_cast<double>(trail.size())) {
                reduce_db();
                max_learnts *= 1.1;
            }
            L next = 0;
            bool have = false;
            while (decision_level() < static_cast<int>(assume.size())) {
                L a = assume[static_cast<std::size_t>(decision_level())];
                std::uint8_t v = val(a);
                if (v == T) {
                    trail_lim.push_back(trail.size());
                } else if (v == F) {
                    cancel_until(0);
                    return SatResult::Unsat;
                } else {
                    next = a;
                    have = true;
                    break;
                }
            }
            if (!have) {
                while (!heap.empty() && assign[heap[0]] != U) heap_pop();
                if (heap.empty()) {
                    model.assign(assign.begin(), assign.end());
                    cancel_until(0);
                    return SatResult::Sat;
                }
                std::uint32_t v = heap_pop();
                next = L(2 * v + (phase[v] == T ? 0u : 1u));
                ++stats.decisions;
            }
            trail_lim.push_back(trail.size());
            enqueue(next, kNoReason);
        }
    }
};

CdclSolver::CdclSolver() : p_(std::make_unique<Impl>()) {}
CdclSolver::~CdclSolver() = default;

int CdclSolver::new_var() { return p_->add_var(); }
int CdclSolver::num_vars() const { return p_->nvars(); }
void CdclSolver::add_clause(std::span<const int> lits) { p_->add(lits); }

SatResult CdclSolver::solve(std::span<const int> assumptions) {
    p_->deadline = deadline_;
    return p_->search(assumptions);
}

bool CdclSolver::value(int var) const {
    if (var < 1 || static_cast<std::size_t>(var) > p_->model.size()) return false;
    return p_->model[static_cast<std::size_t>(var - 1)] == T;
}

void CdclSolver::set_phase(int var, bool positive) {
    p_->phase.at(static_cast<std::size_t>(var - 1)) = positive ? T : F;
}

const CdclSolver::Stats& CdclSolver::stats() const { return p_->stats; }

}  // namespace kemja
