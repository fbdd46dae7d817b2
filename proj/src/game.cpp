#include "pgg/game.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <numeric>
#include <stdexcept>

#include "pgg/util.hpp"

namespace pgg {

std::string StrategyProfile::to_string() const {
    std::string out;
    out.reserve(bits.size());
    for (std::uint8_t b : bits) out += static_cast<char>('0' + b);
    return out;
}

StrategyProfile StrategyProfile::from_string(std::string_view s) {
    StrategyProfile p(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1') throw ParseError("profile: expected '0' or '1'", i);
        p.bits[i] = static_cast<std::uint8_t>(s[i] - '0');
    }
    return p;
}

void GameInstance::add_edge(Vertex u, Vertex v, std::int64_t weight) {
    if (u == v) throw std::invalid_argument("add_edge: self-loop");
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::invalid_argument("add_edge: vertex out of range");
    if (weight < 1) throw std::invalid_argument("add_edge: weight must be >= 1");
    if (u > v) std::swap(u, v);
    for (const auto& [w, _] : adj_[static_cast<std::size_t>(u)]) {
        if (w == v) throw std::invalid_argument("add_edge: duplicate edge");
    }
    edges_.push_back({u, v, weight});
    adj_[static_cast<std::size_t>(u)].emplace_back(v, weight);
    adj_[static_cast<std::size_t>(v)].emplace_back(u, weight);
    wdeg_[static_cast<std::size_t>(u)] += weight;
    wdeg_[static_cast<std::size_t>(v)] += weight;
}

void GameInstance::add_vertices(int count, const Pattern& pattern) {
    if (count < 0) throw std::invalid_argument("add_vertices: negative count");
    n_ += count;
    patterns_.resize(static_cast<std::size_t>(n_), pattern);
    adj_.resize(static_cast<std::size_t>(n_));
    wdeg_.resize(static_cast<std::size_t>(n_), 0);
}

std::int64_t GameInstance::total_weight() const {
    return std::accumulate(edges_.begin(), edges_.end(), std::int64_t{0},
                           [](std::int64_t acc, const Edge& e) { return acc + e.weight; });
}

bool GameInstance::homogeneous() const {
    for (int v = 1; v < n_; ++v) {
        if (!(patterns_[static_cast<std::size_t>(v)] == patterns_[0])) return false;
    }
    return true;
}

std::vector<Edge> GameInstance::sorted_edges() const {
    auto es = edges_;
    std::sort(es.begin(), es.end());
    return es;
}

std::int64_t active_degree(const GameInstance& g, const StrategyProfile& s, Vertex v) {
    std::int64_t d = 0;
    for (const auto& [u, w] : g.neighbors(v)) {
        if (s[static_cast<std::size_t>(u)]) d += w;
    }
    return d;
}

BestResponse best_response(const GameInstance& g, const StrategyProfile& s, Vertex v) {
    const std::int64_t d = active_degree(g, s, v);
    return {d, static_cast<std::uint8_t>(g.pattern(v).at(d))};
}

PneReport check_pne(const GameInstance& g, const StrategyProfile& s) {
    if (static_cast<int>(s.size()) != g.size()) {
        throw std::invalid_argument("check_pne: profile length mismatch");
    }
    PneReport report;
    for (Vertex v = 0; v < g.size(); ++v) {
        if (best_response(g, s, v).response != s[static_cast<std::size_t>(v)]) {
            report.violators.push_back(v);
        }
    }
    report.is_pne = report.violators.empty();
    return report;
}

namespace {

// Precomputed per-vertex data for mask-based scanning. Vertex v maps to mask
// bit (n-1-v) so that ascending masks enumerate profiles in lexicographic
// order.
struct MaskScan {
    int n;
    // neighbor masks grouped by weight: (weight, mask) pairs per vertex
    std::vector<std::vector<std::pair<std::int64_t, std::uint32_t>>> groups;
    // response bitsets: word d of accept[v] holds T^v at degrees [64d, 64d+64)
    std::vector<std::vector<std::uint64_t>> accept;

    explicit MaskScan(const GameInstance& g) : n(g.size()) {
        groups.resize(static_cast<std::size_t>(n));
        accept.resize(static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v) {
            std::vector<std::pair<std::int64_t, std::uint32_t>>& gr = groups[static_cast<std::size_t>(v)];
            for (const auto& [u, w] : g.neighbors(v)) {
                auto it = std::find_if(gr.begin(), gr.end(), [&](const auto& p) { return p.first == w; });
                if (it == gr.end()) it = gr.insert(gr.end(), {w, 0});
                it->second |= std::uint32_t{1} << (n - 1 - u);
            }
            const std::int64_t maxdeg = g.weighted_degree(v);
            auto& acc = accept[static_cast<std::size_t>(v)];
            acc.assign(static_cast<std::size_t>(maxdeg / 64 + 1), 0);
            for (std::int64_t d = 0; d <= maxdeg; ++d) {
                if (g.pattern(v).at(d)) {
                    acc[static_cast<std::size_t>(d / 64)] |= std::uint64_t{1} << (d % 64);
                }
            }
        }
    }

    bool is_pne_mask(std::uint32_t mask) const {
        for (int v = 0; v < n; ++v) {
            std::int64_t d = 0;
            for (const auto& [w, nbrs] : groups[static_cast<std::size_t>(v)]) {
                d += w * std::popcount(mask & nbrs);
            }
            const int response =
                (accept[static_cast<std::size_t>(v)][static_cast<std::size_t>(d / 64)] >> (d % 64)) & 1;
            const int bit = (mask >> (n - 1 - v)) & 1;
            if (response != bit) return false;
        }
        return true;
    }
};

StrategyProfile mask_to_profile(std::uint32_t mask, int n) {
    StrategyProfile s(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) s[static_cast<std::size_t>(v)] = (mask >> (n - 1 - v)) & 1;
    return s;
}

}  // namespace

std::vector<StrategyProfile> enumerate_pne(const GameInstance& g,
                                           std::optional<std::size_t> max_count, int threads) {
    const int n = g.size();
    if (n > kEnumerationCap) {
        throw CapacityError("enumerate_pne: " + std::to_string(n) + " vertices exceeds cap of " +
                            std::to_string(kEnumerationCap));
    }
    if (n == 0) return {StrategyProfile{}};
    const MaskScan scan(g);
    const std::uint64_t total = std::uint64_t{1} << n;

    auto scan_range = [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::uint32_t> found;
        for (std::uint64_t m = lo; m < hi; ++m) {
            if (scan.is_pne_mask(static_cast<std::uint32_t>(m))) found.push_back(static_cast<std::uint32_t>(m));
        }
        return found;
    };

    std::vector<std::uint32_t> masks;
    if (threads <= 1 || total < 1024) {
        masks = scan_range(0, total);
    } else {
        const auto workers = static_cast<std::uint64_t>(threads);
        const std::uint64_t chunk = (total + workers - 1) / workers;
        std::vector<std::future<std::vector<std::uint32_t>>> futures;
        for (std::uint64_t lo = 0; lo < total; lo += chunk) {
            const std::uint64_t hi = std::min(total, lo + chunk);
            futures.push_back(std::async(std::launch::async, scan_range, lo, hi));
        }
        for (auto& f : futures) {
            auto part = f.get();
            masks.insert(masks.end(), part.begin(), part.end());
        }
    }

    if (max_count && masks.size() > *max_count) masks.resize(*max_count);
    std::vector<StrategyProfile> out;
    out.reserve(masks.size());
    for (std::uint32_t m : masks) out.push_back(mask_to_profile(m, n));
    return out;
}

}  // namespace pgg
