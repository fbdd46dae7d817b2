#include "pgg/generator.hpp"

#include <stdexcept>

#include "pgg/util.hpp"

namespace pgg {

namespace {

void draw_patterns(GameInstance& g, const std::vector<Pattern>& pool, Rng& rng) {
    if (pool.empty()) throw std::invalid_argument("generate: empty pattern pool");
    for (Vertex v = 0; v < g.size(); ++v) {
        g.set_pattern(v, pool.size() == 1 ? pool[0] : pool[bounded(rng, pool.size())]);
    }
}

}  // namespace

GameInstance generate_gnp(int n, const Rat& p, const std::vector<Pattern>& pattern_pool,
                          std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate_gnp: n must be >= 1");
    if (p < Rat{0} || p > Rat{1}) throw std::invalid_argument("generate_gnp: p must be in [0, 1]");
    GameInstance g(n);
    Rng rng(seed);
    draw_patterns(g, pattern_pool, rng);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            // exact Bernoulli(p): uniform draw from [0, den) falls below num
            if (static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(p.den))) < p.num) {
                g.add_edge(u, v);
            }
        }
    }
    return g;
}

GameInstance generate_complete_weighted(int n, std::int64_t wmax,
                                        const std::vector<Pattern>& pattern_pool,
                                        std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate_complete_weighted: n must be >= 1");
    if (wmax < 1) throw std::invalid_argument("generate_complete_weighted: wmax must be >= 1");
    GameInstance g(n);
    Rng rng(seed);
    draw_patterns(g, pattern_pool, rng);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            g.add_edge(u, v, 1 + static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(wmax))));
        }
    }
    return g;
}

}  // namespace pgg
