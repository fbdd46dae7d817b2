#pragma once

#include <cstdint>
#include <vector>

#include "pgg/game.hpp"
#include "pgg/rational.hpp"

namespace pgg {

// Seeded G(n, p) with an exact rational edge probability. Patterns are drawn
// per vertex from the pool first (uniformly; a single-element pool is the
// homogeneous case), then edges in ascending (u, v) order, so identical
// seeds reproduce identical games.
GameInstance generate_gnp(int n, const Rat& p, const std::vector<Pattern>& pattern_pool,
                          std::uint64_t seed);

// Complete graph with uniform weights in [1, wmax], same drawing order.
GameInstance generate_complete_weighted(int n, std::int64_t wmax,
                                        const std::vector<Pattern>& pattern_pool,
                                        std::uint64_t seed);

}  // namespace pgg
