#include "pgg/solver.hpp"

#include <cassert>

#include "pgg/util.hpp"

namespace pgg {

namespace {

// Backtracking search state. Degrees are tracked incrementally: committed =
// weight to neighbors assigned 1, residual = weight to unassigned neighbors.
class Backtracker {
public:
    Backtracker(const GameInstance& g, std::uint64_t budget) : game_(g), budget_(budget) {
        const int n = g.size();
        value_.assign(static_cast<std::size_t>(n), -1);
        committed_.assign(static_cast<std::size_t>(n), 0);
        residual_.assign(static_cast<std::size_t>(n), 0);
        accept_.resize(static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v) {
            residual_[static_cast<std::size_t>(v)] = g.weighted_degree(v);
            const std::int64_t maxdeg = g.weighted_degree(v);
            auto& acc = accept_[static_cast<std::size_t>(v)];
            acc.assign(static_cast<std::size_t>(maxdeg / 64 + 1), 0);
            for (std::int64_t d = 0; d <= maxdeg; ++d) {
                if (g.pattern(v).at(d)) {
                    acc[static_cast<std::size_t>(d / 64)] |= std::uint64_t{1} << (d % 64);
                }
            }
        }
    }

    SolveResult run() {
        SolveResult result;
        result.method = "backtrack";
        // Initial propagation handles isolated and otherwise forced vertices.
        if (!propagate_all() || !probe_fixpoint()) {
            result.status = SolveStatus::NotExists;
            result.nodes = nodes_;
            return result;
        }
        const Outcome out = search();
        result.nodes = nodes_;
        switch (out) {
            case Outcome::Found:
                result.status = SolveStatus::Exists;
                result.witness = witness_;
                break;
            case Outcome::Exhausted:
                result.status = SolveStatus::NotExists;
                break;
            case Outcome::OutOfBudget:
                result.status = SolveStatus::BudgetExceeded;
                break;
        }
        return result;
    }

    // A single propagation pass over a caller-supplied partial assignment.
    PropagationProbe probe(const std::vector<int>& partial) {
        PropagationProbe out;
        for (Vertex v = 0; v < game_.size(); ++v) {
            const int b = partial[static_cast<std::size_t>(v)];
            if (b < 0) continue;
            if (!apply(v, static_cast<std::uint8_t>(b))) {
                out.conflict = true;
                return out;
            }
        }
        const std::size_t before = trail_.size();
        if (!propagate_all()) {
            out.conflict = true;
            return out;
        }
        for (std::size_t i = before; i < trail_.size(); ++i) {
            out.fixes.emplace_back(trail_[i], value_[static_cast<std::size_t>(trail_[i])]);
        }
        return out;
    }

private:
    enum class Outcome { Found, Exhausted, OutOfBudget };

    bool response_at(Vertex v, std::int64_t d) const {
        return (accept_[static_cast<std::size_t>(v)][static_cast<std::size_t>(d / 64)] >>
                (d % 64)) &
               1;
    }

    // Does any degree in [lo, hi] give response b?
    bool feasible(Vertex v, std::uint8_t b) const {
        const std::int64_t lo = committed_[static_cast<std::size_t>(v)];
        const std::int64_t hi = lo + residual_[static_cast<std::size_t>(v)];
        const auto& acc = accept_[static_cast<std::size_t>(v)];
        for (std::int64_t word = lo / 64; word <= hi / 64; ++word) {
            std::uint64_t bits = acc[static_cast<std::size_t>(word)];
            if (!b) bits = ~bits;
            if (word == lo / 64) bits &= ~std::uint64_t{0} << (lo % 64);
            if (word == hi / 64 && hi % 64 != 63) bits &= (std::uint64_t{1} << (hi % 64 + 1)) - 1;
            if (bits) return true;
        }
        return false;
    }

    // Assign v := b and update neighbor intervals; false on direct conflict.
    bool apply(Vertex v, std::uint8_t b) {
        if (value_[static_cast<std::size_t>(v)] >= 0) {
            return value_[static_cast<std::size_t>(v)] == b;
        }
        value_[static_cast<std::size_t>(v)] = b;
        trail_.push_back(v);
        for (const auto& [u, w] : game_.neighbors(v)) {
            residual_[static_cast<std::size_t>(u)] -= w;
            if (b) committed_[static_cast<std::size_t>(u)] += w;
            queue_.push_back(u);
        }
        queue_.push_back(v);
        return true;
    }

    // Process the recheck queue to fixpoint; false on conflict.
    bool propagate() {
        while (!queue_.empty()) {
            const Vertex v = queue_.back();
            queue_.pop_back();
            const int assigned = value_[static_cast<std::size_t>(v)];
            const bool f1 = feasible(v, 1);
            const bool f0 = feasible(v, 0);
            if (assigned >= 0) {
                if (assigned == 1 ? !f1 : !f0) return false;
            } else if (!f1) {
                if (!apply(v, 0)) return false;
            } else if (!f0) {
                if (!apply(v, 1)) return false;
            }
        }
        return true;
    }

    bool propagate_all() {
        for (Vertex v = 0; v < game_.size(); ++v) queue_.push_back(v);
        return propagate();
    }

    // Does assigning v := b survive propagation? State is restored either way.
    bool survives(Vertex v, std::uint8_t b) {
        const std::size_t mark = trail_.size();
        const bool ok = apply(v, b) && propagate();
        undo_to(mark);
        return ok;
    }

    // Probe each frontier vertex with both values; a value that propagates
    // to a contradiction fixes its complement. Gadget-style graphs collapse
    // almost entirely here, leaving branching for genuine choices.
    bool probe_fixpoint() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (Vertex v = 0; v < game_.size(); ++v) {
                if (value_[static_cast<std::size_t>(v)] >= 0) continue;
                // frontier only: some neighbor already assigned
                if (residual_[static_cast<std::size_t>(v)] == game_.weighted_degree(v)) continue;
                const bool ok0 = survives(v, 0);
                const bool ok1 = ok0 ? survives(v, 1) : true;
                if (ok0 && ok1) continue;
                if (!ok0 && !apply(v, 1)) return false;
                if (!ok1 && !apply(v, 0)) return false;
                if (!propagate()) return false;
                changed = true;
            }
        }
        return true;
    }

    void undo_to(std::size_t mark) {
        queue_.clear();
        while (trail_.size() > mark) {
            const Vertex v = trail_.back();
            trail_.pop_back();
            const std::uint8_t b = static_cast<std::uint8_t>(value_[static_cast<std::size_t>(v)]);
            value_[static_cast<std::size_t>(v)] = -1;
            for (const auto& [u, w] : game_.neighbors(v)) {
                residual_[static_cast<std::size_t>(u)] += w;
                if (b) committed_[static_cast<std::size_t>(u)] -= w;
            }
        }
    }

    // Branch vertex: most weight to already-assigned neighbors, then highest
    // weighted degree; keeps the search local so conflicts surface early.
    Vertex pick_branch() const {
        Vertex best = -1;
        std::int64_t best_assigned = -1;
        std::int64_t best_wdeg = -1;
        for (Vertex v = 0; v < game_.size(); ++v) {
            if (value_[static_cast<std::size_t>(v)] >= 0) continue;
            const std::int64_t wdeg = game_.weighted_degree(v);
            const std::int64_t assigned = wdeg - residual_[static_cast<std::size_t>(v)];
            if (assigned > best_assigned ||
                (assigned == best_assigned && wdeg > best_wdeg)) {
                best = v;
                best_assigned = assigned;
                best_wdeg = wdeg;
            }
        }
        return best;
    }

    Outcome search() {
        const Vertex v = pick_branch();
        if (v < 0) {
            // Complete assignment; every constraint held under propagation.
            witness_.bits.assign(value_.begin(), value_.end());
            assert(check_pne(game_, witness_).is_pne);
            return Outcome::Found;
        }
        if (++nodes_ > budget_) return Outcome::OutOfBudget;

        // Try the response suggested at the committed degree first.
        const std::uint8_t first =
            response_at(v, committed_[static_cast<std::size_t>(v)]) ? 1 : 0;
        for (const std::uint8_t b : {first, static_cast<std::uint8_t>(1 - first)}) {
            const std::size_t mark = trail_.size();
            if (apply(v, b) && propagate() && probe_fixpoint()) {
                const Outcome out = search();
                if (out != Outcome::Exhausted) return out;
            }
            undo_to(mark);
        }
        return Outcome::Exhausted;
    }

    const GameInstance& game_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<int> value_;
    std::vector<std::int64_t> committed_;
    std::vector<std::int64_t> residual_;
    std::vector<std::vector<std::uint64_t>> accept_;
    std::vector<Vertex> trail_;
    std::vector<Vertex> queue_;
    StrategyProfile witness_;
};

SolveResult brute_force(const GameInstance& g, std::uint64_t budget) {
    SolveResult result;
    result.method = "brute";
    const int n = g.size();
    if (n > kEnumerationCap) {
        throw CapacityError("decide_pne: brute force beyond " + std::to_string(kEnumerationCap) +
                            " vertices");
    }
    const std::uint64_t total = n == 0 ? 1 : std::uint64_t{1} << n;
    if (total > budget) {
        result.status = SolveStatus::BudgetExceeded;
        result.nodes = 0;
        return result;
    }
    auto found = enumerate_pne(g, 1);
    result.nodes = total;
    if (found.empty()) {
        result.status = SolveStatus::NotExists;
    } else {
        result.status = SolveStatus::Exists;
        result.witness = std::move(found.front());
    }
    return result;
}

}  // namespace

SolveResult decide_pne(const GameInstance& g, const SolveOptions& options) {
    SolveMethod method = options.method;
    if (method == SolveMethod::Auto) {
        method = g.size() <= 16 ? SolveMethod::Brute : SolveMethod::Backtrack;
    }
    if (method == SolveMethod::Brute) return brute_force(g, options.node_budget);
    Backtracker bt(g, options.node_budget);
    return bt.run();
}

PropagationProbe probe_propagation(const GameInstance& g, const std::vector<int>& partial) {
    if (static_cast<int>(partial.size()) != g.size()) {
        throw std::invalid_argument("probe_propagation: partial assignment length mismatch");
    }
    Backtracker bt(g, 1);
    return bt.probe(partial);
}

}  // namespace pgg
