#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgg/pattern.hpp"

namespace pgg {

using Vertex = int;  // 0-based internally; text formats and reports use 1-based ids

struct Edge {
    Vertex u = 0;  // u < v
    Vertex v = 0;
    std::int64_t weight = 1;

    bool operator==(const Edge&) const = default;
    auto operator<=>(const Edge&) const = default;
};

// One bit of activity per vertex. Profiles compare lexicographically with
// vertex 0 most significant.
struct StrategyProfile {
    std::vector<std::uint8_t> bits;

    StrategyProfile() = default;
    explicit StrategyProfile(std::size_t n, std::uint8_t fill = 0) : bits(n, fill) {}

    std::size_t size() const { return bits.size(); }
    std::uint8_t operator[](std::size_t v) const { return bits[v]; }
    std::uint8_t& operator[](std::size_t v) { return bits[v]; }

    std::string to_string() const;  // e.g. "0101", vertex 1 first
    static StrategyProfile from_string(std::string_view s);

    bool operator==(const StrategyProfile&) const = default;
    auto operator<=>(const StrategyProfile&) const = default;
};

// Undirected simple graph with positive integer edge weights and a response
// pattern per vertex. Build with add_edge/set_pattern, then treat as
// immutable; all queries are const and the object is safe to share.
class GameInstance {
public:
    GameInstance() = default;
    explicit GameInstance(int n)
        : n_(n), patterns_(static_cast<std::size_t>(n)), adj_(static_cast<std::size_t>(n)),
          wdeg_(static_cast<std::size_t>(n), 0) {
        if (n < 0) throw std::invalid_argument("GameInstance: negative vertex count");
    }

    int size() const { return n_; }
    void add_edge(Vertex u, Vertex v, std::int64_t weight = 1);
    void add_vertices(int count, const Pattern& pattern);

    void set_pattern(Vertex v, Pattern p) { patterns_.at(static_cast<std::size_t>(v)) = std::move(p); }
    void set_all_patterns(const Pattern& p) {
        for (auto& q : patterns_) q = p;
    }

    const Pattern& pattern(Vertex v) const { return patterns_.at(static_cast<std::size_t>(v)); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::pair<Vertex, std::int64_t>>& neighbors(Vertex v) const {
        return adj_[static_cast<std::size_t>(v)];
    }
    // Total weight incident to v = the largest active degree v can see.
    std::int64_t weighted_degree(Vertex v) const { return wdeg_[static_cast<std::size_t>(v)]; }
    std::int64_t total_weight() const;
    bool homogeneous() const;

    bool operator==(const GameInstance& other) const {
        return n_ == other.n_ && sorted_edges() == other.sorted_edges() && patterns_ == other.patterns_;
    }

private:
    std::vector<Edge> sorted_edges() const;

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<Pattern> patterns_;
    std::vector<std::vector<std::pair<Vertex, std::int64_t>>> adj_;
    std::vector<std::int64_t> wdeg_;
};

struct BestResponse {
    std::int64_t active_degree = 0;
    std::uint8_t response = 0;
};

struct PneReport {
    bool is_pne = false;
    std::vector<Vertex> violators;  // ascending, 0-based
};

// Sum of edge weights to active neighbors of v.
std::int64_t active_degree(const GameInstance& g, const StrategyProfile& s, Vertex v);

BestResponse best_response(const GameInstance& g, const StrategyProfile& s, Vertex v);

PneReport check_pne(const GameInstance& g, const StrategyProfile& s);

inline bool is_pne(const GameInstance& g, const StrategyProfile& s) {
    return check_pne(g, s).is_pne;
}

// All pure Nash equilibria in lexicographic profile order, optionally
// truncated. Hard cap n <= 30; larger instances raise CapacityError.
// The profile space may be partitioned across `threads` workers; chunks are
// concatenated in order, so output does not depend on scheduling.
std::vector<StrategyProfile> enumerate_pne(const GameInstance& g,
                                           std::optional<std::size_t> max_count = std::nullopt,
                                           int threads = 1);

inline constexpr int kEnumerationCap = 30;

}  // namespace pgg
