#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgg/game.hpp"

namespace pgg {

enum class SolveStatus { Exists, NotExists, BudgetExceeded };

enum class SolveMethod { Auto, Brute, Backtrack };

struct SolveOptions {
    SolveMethod method = SolveMethod::Auto;
    std::uint64_t node_budget = 10'000'000;
};

struct SolveResult {
    SolveStatus status = SolveStatus::BudgetExceeded;
    std::optional<StrategyProfile> witness;  // set iff status == Exists
    std::uint64_t nodes = 0;
    std::string method;  // "brute" or "backtrack"
};

// Decides whether the game has a pure Nash equilibrium. Backtracking over
// vertex assignments with active-degree interval propagation: for each
// vertex the final active degree lies in [committed, committed + residual],
// and a value whose response never matches anywhere in that interval is
// pruned or forced. NotExists is only reported after the search space is
// exhausted; running out of budget is a separate outcome.
SolveResult decide_pne(const GameInstance& g, const SolveOptions& options = {});

// One propagation pass from a partial assignment (-1 = unassigned), for
// inspection: returns the forced assignments, or conflict = true when the
// partial assignment cannot extend to any equilibrium.
struct PropagationProbe {
    bool conflict = false;
    std::vector<std::pair<Vertex, std::uint8_t>> fixes;
};
PropagationProbe probe_propagation(const GameInstance& g, const std::vector<int>& partial);

}  // namespace pgg
