#pragma once

#include <cstdint>
#include <vector>

#include "pgg/game.hpp"

namespace pgg {

enum class ScheduleKind { RoundRobin, UniformRandom, FirstViolator };

// Deterministic given (kind, seed). RoundRobin scans ids cyclically starting
// after the last flipped vertex; FirstViolator always picks the smallest
// violator id; UniformRandom picks uniformly among current violators using
// mt19937_64 with rejection sampling.
struct Schedule {
    ScheduleKind kind = ScheduleKind::RoundRobin;
    std::uint64_t seed = 0;
};

struct DynamicsStep {
    Vertex v = 0;
    std::uint8_t new_bit = 0;
};

struct DynamicsTrace {
    StrategyProfile initial;
    StrategyProfile final_profile;
    std::vector<DynamicsStep> steps;
    bool converged = false;
    // Doubled potential after the initial profile and after each step;
    // recorded only when every pattern is a leading-ones pattern, in which
    // case it strictly decreases by at least 1 per step.
    bool potential_defined = false;
    std::vector<std::int64_t> doubled_potential_series;
};

// Doubled exact potential of a game in which every pattern has k >= 1
// leading ones and is zero after:
//
//   2*Phi(s) = 2 * sum_{e={u,v}} w_e s_u s_v + sum_v (2k'_v - 1)(1 - s_v)
//
// where k'_v = min(k_v, weighted_degree(v) + 1); a threshold above the
// largest reachable degree behaves identically to that clamp. Any single
// better-response flip lowers the value by at least 1, and
// 0 <= 2*Phi <= 2*(total_weight + max k' * n).
// Throws std::invalid_argument when some pattern is not of that shape.
std::int64_t doubled_potential(const GameInstance& g, const StrategyProfile& s);

// Upper bound on the number of improving flips from any start:
// 2 * (total_weight + max clamped k * n).
std::int64_t convergence_flip_bound(const GameInstance& g);

// Repeatedly flips a scheduled non-best-responding vertex to its best
// response until no violator remains or max_steps flips were made. Only
// flips count as steps; scanning past best-responders does not.
DynamicsTrace run_dynamics(const GameInstance& g, const StrategyProfile& start,
                           const Schedule& schedule, std::int64_t max_steps);

}  // namespace pgg
