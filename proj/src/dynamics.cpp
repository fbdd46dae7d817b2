#include "pgg/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

#include "pgg/util.hpp"

namespace pgg {

namespace {

std::int64_t clamped_threshold(const GameInstance& g, Vertex v) {
    const auto k = leading_ones(g.pattern(v));
    if (!k) {
        throw std::invalid_argument("potential: pattern of vertex " + std::to_string(v + 1) +
                                    " is not a leading-ones pattern");
    }
    return std::min(*k, g.weighted_degree(v) + 1);
}

}  // namespace

std::int64_t doubled_potential(const GameInstance& g, const StrategyProfile& s) {
    if (static_cast<int>(s.size()) != g.size()) {
        throw std::invalid_argument("potential: profile length mismatch");
    }
    std::int64_t value = 0;
    for (const Edge& e : g.edges()) {
        if (s[static_cast<std::size_t>(e.u)] && s[static_cast<std::size_t>(e.v)]) {
            value += 2 * e.weight;
        }
    }
    for (Vertex v = 0; v < g.size(); ++v) {
        if (!s[static_cast<std::size_t>(v)]) value += 2 * clamped_threshold(g, v) - 1;
    }
    return value;
}

std::int64_t convergence_flip_bound(const GameInstance& g) {
    std::int64_t k_max = 1;
    for (Vertex v = 0; v < g.size(); ++v) k_max = std::max(k_max, clamped_threshold(g, v));
    return 2 * (g.total_weight() + k_max * g.size());
}

DynamicsTrace run_dynamics(const GameInstance& g, const StrategyProfile& start,
                           const Schedule& schedule, std::int64_t max_steps) {
    if (static_cast<int>(start.size()) != g.size()) {
        throw std::invalid_argument("run_dynamics: profile length mismatch");
    }
    if (max_steps < 0) throw std::invalid_argument("run_dynamics: negative max_steps");

    const int n = g.size();
    DynamicsTrace trace;
    trace.initial = start;
    trace.potential_defined = true;
    for (Vertex v = 0; v < n; ++v) {
        if (!leading_ones(g.pattern(v))) {
            trace.potential_defined = false;
            break;
        }
    }

    StrategyProfile s = start;
    // Incremental active degrees keep each step linear in the flipped
    // vertex's neighborhood.
    std::vector<std::int64_t> degree(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v) degree[static_cast<std::size_t>(v)] = active_degree(g, s, v);

    auto violates = [&](Vertex v) {
        return g.pattern(v).at(degree[static_cast<std::size_t>(v)]) != s[static_cast<std::size_t>(v)];
    };

    if (trace.potential_defined) {
        trace.doubled_potential_series.push_back(doubled_potential(g, s));
    }

    Rng rng(schedule.seed);
    int scan_from = 0;  // RoundRobin resumes after the last flipped vertex

    while (static_cast<std::int64_t>(trace.steps.size()) < max_steps) {
        Vertex chosen = -1;
        switch (schedule.kind) {
            case ScheduleKind::RoundRobin: {
                for (int off = 0; off < n; ++off) {
                    const Vertex v = (scan_from + off) % n;
                    if (violates(v)) {
                        chosen = v;
                        break;
                    }
                }
                break;
            }
            case ScheduleKind::FirstViolator: {
                for (Vertex v = 0; v < n; ++v) {
                    if (violates(v)) {
                        chosen = v;
                        break;
                    }
                }
                break;
            }
            case ScheduleKind::UniformRandom: {
                std::vector<Vertex> violators;
                for (Vertex v = 0; v < n; ++v) {
                    if (violates(v)) violators.push_back(v);
                }
                if (!violators.empty()) {
                    chosen = violators[bounded(rng, violators.size())];
                }
                break;
            }
        }
        if (chosen < 0) break;  // everyone best-responds

        const auto new_bit = static_cast<std::uint8_t>(1 - s[static_cast<std::size_t>(chosen)]);
        s[static_cast<std::size_t>(chosen)] = new_bit;
        const std::int64_t delta = new_bit ? 1 : -1;
        for (const auto& [u, w] : g.neighbors(chosen)) {
            degree[static_cast<std::size_t>(u)] += delta * w;
        }
        trace.steps.push_back({chosen, new_bit});
        if (trace.potential_defined) {
            trace.doubled_potential_series.push_back(doubled_potential(g, s));
        }
        scan_from = (chosen + 1) % n;
    }

    trace.final_profile = s;
    trace.converged = check_pne(g, s).is_pne;
    return trace;
}

}  // namespace pgg
