#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgg/game.hpp"
#include "pgg/rational.hpp"

namespace pgg {

// A congestible good: either a load-independent cost of (doubled_constant)/2,
// or an affine cost slope*(x-1) at load x. Doubling keeps all arithmetic
// integral.
struct GoodDelay {
    enum class Type { ConstantHalf, Affine };
    Type type = Type::Affine;
    std::int64_t doubled_constant = 0;  // ConstantHalf: odd positive value 2k-1
    std::int64_t slope = 0;             // Affine: positive weight
};

// Two-strategy congestion game: player v either claims its own vertex good
// (inactive) or all goods of its incident edges (active).
struct CongestionGame {
    int num_players = 0;
    std::vector<GoodDelay> goods;  // vertex goods [0, n), then edge goods
    // strategies[p][bit] = good indices claimed when p plays bit
    std::vector<std::array<std::vector<int>, 2>> strategies;
    // users[g] = (player, bit) pairs whose strategy contains good g
    std::vector<std::vector<std::pair<int, std::uint8_t>>> users;

    std::int64_t load(const StrategyProfile& choice, int good) const;
    // Doubled cost of the strategy `bit` for `player`, with every other
    // player's usage taken from `choice` (and the player itself using `bit`).
    std::int64_t doubled_cost(const StrategyProfile& choice, int player, std::uint8_t bit) const;
};

// Builds the congestion game whose cost-minimizing behavior reproduces the
// game's responses: vertex good v costs k_v - 1/2, edge good e costs
// w_e * (x - 1) at load x. Requires every pattern to have k >= 1 leading
// ones and zeros after.
CongestionGame build_congestion_game(const GameInstance& g);

// Doubled utility of the strategic representation of a leading-ones game:
// -(2k_v - 1) when inactive, -2 * active_degree when active.
std::int64_t doubled_pgg_utility(const GameInstance& g, const StrategyProfile& s, Vertex v);

// Strategic equilibria of the congestion game (ties stable), in
// lexicographic order of the bit profile under the active/inactive mapping.
std::vector<StrategyProfile> congestion_pne(const CongestionGame& c);

struct IsomorphismReport {
    bool ok = false;
    std::uint64_t profiles_checked = 0;
    bool exhaustive = false;       // all 2^n profiles covered
    bool pne_sets_compared = false;
    bool pne_sets_equal = false;
    std::size_t pne_count = 0;
    std::string failure;           // first counterexample, when !ok
};

// Checks, profile by profile, that every player's doubled utility equals the
// negated doubled congestion cost under the strategy bijection, and that the
// best response is strictly cheaper than its alternative. Runs exhaustively
// for n <= exhaustive_limit and on `samples` seeded random profiles
// otherwise (both when both apply). Also compares full equilibrium sets via
// enumeration when n <= pne_compare_limit.
IsomorphismReport verify_isomorphism(const GameInstance& g, std::uint64_t samples,
                                     std::uint64_t seed, int exhaustive_limit = 12,
                                     int pne_compare_limit = 12);

// Two-strategy congestion game with a constant opt-out cost theta_i and
// pairwise affine costs a_ij * (x - 1) shared by opted-in players.
struct ThresholdGame {
    int n = 0;
    std::vector<Rat> theta;                        // size n, positive
    std::vector<std::vector<std::int64_t>> pair_cost;  // symmetric, 0 diagonal

    std::int64_t pair(int i, int j) const { return pair_cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
};

// in_flags[i] = 1 when player i opts in. Exact rational comparisons; a tie
// keeps the profile stable.
PneReport check_threshold_pne(const ThresholdGame& t, const std::vector<std::uint8_t>& in_flags);

// Integer cost paid by player i when opted in: sum of a_ij over opted-in j.
std::int64_t threshold_in_cost(const ThresholdGame& t, const std::vector<std::uint8_t>& in_flags, int i);

enum class KRule {
    FloorPlusOne,  // k_i = floor(theta_i) + 1; preserves equilibrium mapping
    Floor,         // k_i = floor(theta_i); fails on non-integral thresholds
};

struct ThresholdMapping {
    KRule rule = KRule::FloorPlusOne;
    int n = 0;
    std::vector<std::int64_t> k;  // leading ones per player
    // bit 1 <-> opted in; the identity on indices
    std::vector<std::uint8_t> to_in_flags(const StrategyProfile& s) const;
    StrategyProfile to_profile(const std::vector<std::uint8_t>& in_flags) const;
};

// Complete weighted graph with w_{ij} = a_ij and leading-ones patterns per
// the chosen rule. Requires n >= 2. A rule producing k = 0 yields the
// never-active pattern "0*" for that player.
std::pair<GameInstance, ThresholdMapping> threshold_to_pgg(const ThresholdGame& t, KRule rule);

// Text format: `threshold <n>`, then `theta <i> <p>/<q>` per player and
// `a <i> <j> <int>` per unordered pair; '#' comments.
ThresholdGame parse_threshold_game(std::string_view text);
ThresholdGame load_threshold_game(const std::string& path);
std::string write_threshold_game(const ThresholdGame& t);

}  // namespace pgg
