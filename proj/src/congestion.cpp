#include "pgg/congestion.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "pgg/util.hpp"

namespace pgg {

std::int64_t CongestionGame::load(const StrategyProfile& choice, int good) const {
    std::int64_t x = 0;
    for (const auto& [player, bit] : users[static_cast<std::size_t>(good)]) {
        if (choice[static_cast<std::size_t>(player)] == bit) ++x;
    }
    return x;
}

std::int64_t CongestionGame::doubled_cost(const StrategyProfile& choice, int player,
                                          std::uint8_t bit) const {
    std::int64_t cost = 0;
    for (int good : strategies[static_cast<std::size_t>(player)][bit]) {
        std::int64_t x = load(choice, good);
        // count the player's own usage under `bit` when `choice` has it elsewhere
        if (choice[static_cast<std::size_t>(player)] != bit) ++x;
        const GoodDelay& d = goods[static_cast<std::size_t>(good)];
        cost += d.type == GoodDelay::Type::ConstantHalf ? d.doubled_constant : 2 * d.slope * (x - 1);
    }
    return cost;
}

CongestionGame build_congestion_game(const GameInstance& g) {
    CongestionGame c;
    const int n = g.size();
    c.num_players = n;
    c.strategies.resize(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
        const auto k = leading_ones(g.pattern(v));
        if (!k) {
            throw std::invalid_argument("build_congestion_game: pattern of vertex " +
                                        std::to_string(v + 1) + " is not a leading-ones pattern");
        }
        c.goods.push_back({GoodDelay::Type::ConstantHalf, 2 * *k - 1, 0});
        c.strategies[static_cast<std::size_t>(v)][0] = {v};
    }
    for (const Edge& e : g.edges()) {
        const int good = static_cast<int>(c.goods.size());
        c.goods.push_back({GoodDelay::Type::Affine, 0, e.weight});
        c.strategies[static_cast<std::size_t>(e.u)][1].push_back(good);
        c.strategies[static_cast<std::size_t>(e.v)][1].push_back(good);
    }
    c.users.resize(c.goods.size());
    for (int p = 0; p < n; ++p) {
        for (std::uint8_t bit : {0, 1}) {
            for (int good : c.strategies[static_cast<std::size_t>(p)][bit]) {
                c.users[static_cast<std::size_t>(good)].emplace_back(p, bit);
            }
        }
    }
    return c;
}

std::int64_t doubled_pgg_utility(const GameInstance& g, const StrategyProfile& s, Vertex v) {
    const auto k = leading_ones(g.pattern(v));
    if (!k) {
        throw std::invalid_argument("doubled_pgg_utility: pattern of vertex " + std::to_string(v + 1) +
                                    " is not a leading-ones pattern");
    }
    if (s[static_cast<std::size_t>(v)]) return -2 * active_degree(g, s, v);
    return -(2 * *k - 1);
}

std::vector<StrategyProfile> congestion_pne(const CongestionGame& c) {
    const int n = c.num_players;
    if (n > kEnumerationCap) throw CapacityError("congestion_pne: too many players");
    std::vector<StrategyProfile> out;
    const std::uint64_t total = n == 0 ? 1 : std::uint64_t{1} << n;
    for (std::uint64_t m = 0; m < total; ++m) {
        StrategyProfile s(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) s[static_cast<std::size_t>(v)] = (m >> (n - 1 - v)) & 1;
        bool stable = true;
        for (int p = 0; p < n && stable; ++p) {
            const std::uint8_t bit = s[static_cast<std::size_t>(p)];
            stable = c.doubled_cost(s, p, bit) <=
                     c.doubled_cost(s, p, static_cast<std::uint8_t>(1 - bit));
        }
        if (stable) out.push_back(std::move(s));
    }
    return out;
}

IsomorphismReport verify_isomorphism(const GameInstance& g, std::uint64_t samples,
                                     std::uint64_t seed, int exhaustive_limit,
                                     int pne_compare_limit) {
    IsomorphismReport report;
    const CongestionGame c = build_congestion_game(g);
    const int n = g.size();

    auto check_profile = [&](const StrategyProfile& s) -> bool {
        for (Vertex v = 0; v < n; ++v) {
            const std::int64_t utility = doubled_pgg_utility(g, s, v);
            const std::int64_t cost = c.doubled_cost(s, v, s[static_cast<std::size_t>(v)]);
            if (utility != -cost) {
                report.failure = "utility mismatch at vertex " + std::to_string(v + 1) +
                                 " in profile " + s.to_string() + ": 2u=" + std::to_string(utility) +
                                 ", -2cost=" + std::to_string(-cost);
                return false;
            }
            const std::uint8_t best = best_response(g, s, v).response;
            const std::int64_t best_cost = c.doubled_cost(s, v, best);
            const std::int64_t alt_cost = c.doubled_cost(s, v, static_cast<std::uint8_t>(1 - best));
            if (!(best_cost < alt_cost)) {
                report.failure = "best response not strictly cheaper at vertex " +
                                 std::to_string(v + 1) + " in profile " + s.to_string();
                return false;
            }
        }
        ++report.profiles_checked;
        return true;
    };

    if (n <= exhaustive_limit) {
        report.exhaustive = true;
        const std::uint64_t total = n == 0 ? 1 : std::uint64_t{1} << n;
        for (std::uint64_t m = 0; m < total; ++m) {
            StrategyProfile s(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) s[static_cast<std::size_t>(v)] = (m >> (n - 1 - v)) & 1;
            if (!check_profile(s)) return report;
        }
    }
    if (!report.exhaustive || samples > 0) {
        Rng rng(seed);
        for (std::uint64_t i = 0; i < samples; ++i) {
            StrategyProfile s(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) s[static_cast<std::size_t>(v)] = rng() & 1;
            if (!check_profile(s)) return report;
        }
    }

    if (n <= pne_compare_limit) {
        report.pne_sets_compared = true;
        const auto game_pne = enumerate_pne(g);
        const auto cong_pne = congestion_pne(c);
        report.pne_sets_equal = game_pne == cong_pne;
        report.pne_count = game_pne.size();
        if (!report.pne_sets_equal) {
            report.failure = "equilibrium sets differ";
            return report;
        }
    }

    report.ok = true;
    return report;
}

std::int64_t threshold_in_cost(const ThresholdGame& t, const std::vector<std::uint8_t>& in_flags,
                               int i) {
    std::int64_t cost = 0;
    for (int j = 0; j < t.n; ++j) {
        if (j != i && in_flags[static_cast<std::size_t>(j)]) cost += t.pair(i, j);
    }
    return cost;
}

PneReport check_threshold_pne(const ThresholdGame& t, const std::vector<std::uint8_t>& in_flags) {
    if (static_cast<int>(in_flags.size()) != t.n) {
        throw std::invalid_argument("check_threshold_pne: profile length mismatch");
    }
    PneReport report;
    for (int i = 0; i < t.n; ++i) {
        const Rat in_cost{threshold_in_cost(t, in_flags, i)};
        const Rat& out_cost = t.theta[static_cast<std::size_t>(i)];
        const bool stable = in_flags[static_cast<std::size_t>(i)] ? in_cost <= out_cost
                                                                  : out_cost <= in_cost;
        if (!stable) report.violators.push_back(i);
    }
    report.is_pne = report.violators.empty();
    return report;
}

std::vector<std::uint8_t> ThresholdMapping::to_in_flags(const StrategyProfile& s) const {
    return s.bits;
}

StrategyProfile ThresholdMapping::to_profile(const std::vector<std::uint8_t>& in_flags) const {
    StrategyProfile s;
    s.bits = in_flags;
    return s;
}

std::pair<GameInstance, ThresholdMapping> threshold_to_pgg(const ThresholdGame& t, KRule rule) {
    if (t.n < 2) throw std::invalid_argument("threshold_to_pgg: need at least 2 players");
    GameInstance g(t.n);
    ThresholdMapping map;
    map.rule = rule;
    map.n = t.n;
    for (int i = 0; i < t.n; ++i) {
        std::int64_t k = t.theta[static_cast<std::size_t>(i)].floor();
        if (rule == KRule::FloorPlusOne) ++k;
        map.k.push_back(k);
        g.set_pattern(i, k >= 1 ? decreasing_pattern(k) : Pattern{});
    }
    for (int i = 0; i < t.n; ++i) {
        for (int j = i + 1; j < t.n; ++j) {
            g.add_edge(i, j, t.pair(i, j));
        }
    }
    return {std::move(g), std::move(map)};
}

namespace {

std::int64_t parse_int_tok(const std::string& tok, std::size_t line_no, const char* what) {
    std::size_t pos = 0;
    std::int64_t value = 0;
    try {
        value = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(std::string("threshold file: bad ") + what, line_no);
    }
    if (pos != tok.size()) throw ParseError(std::string("threshold file: bad ") + what, line_no);
    return value;
}

}  // namespace

Rat parse_rat(const std::string& token) {
    const auto slash = token.find('/');
    if (slash == std::string::npos) {
        std::size_t pos = 0;
        const std::int64_t v = std::stoll(token, &pos);
        if (pos != token.size()) throw std::invalid_argument("bad rational: " + token);
        return Rat{v};
    }
    std::size_t p1 = 0;
    std::size_t p2 = 0;
    const std::int64_t num = std::stoll(token.substr(0, slash), &p1);
    const std::int64_t den = std::stoll(token.substr(slash + 1), &p2);
    if (p1 != slash || p2 != token.size() - slash - 1) {
        throw std::invalid_argument("bad rational: " + token);
    }
    return Rat{num, den};
}

ThresholdGame parse_threshold_game(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    ThresholdGame t;
    bool have_header = false;
    std::vector<bool> have_theta;
    std::vector<std::vector<bool>> have_pair;

    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;

        if (tokens[0] == "threshold") {
            if (have_header) throw ParseError("threshold file: duplicate header", line_no);
            if (tokens.size() != 2) throw ParseError("threshold file: expected 'threshold <n>'", line_no);
            const std::int64_t n = parse_int_tok(tokens[1], line_no, "player count");
            if (n < 1) throw ParseError("threshold file: need at least one player", line_no);
            t.n = static_cast<int>(n);
            t.theta.assign(static_cast<std::size_t>(n), Rat{});
            t.pair_cost.assign(static_cast<std::size_t>(n),
                               std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
            have_theta.assign(static_cast<std::size_t>(n), false);
            have_pair.assign(static_cast<std::size_t>(n),
                             std::vector<bool>(static_cast<std::size_t>(n), false));
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError("threshold file: 'threshold <n>' must come first", line_no);

        if (tokens[0] == "theta") {
            if (tokens.size() != 3) throw ParseError("threshold file: expected 'theta <i> <p>/<q>'", line_no);
            const std::int64_t i = parse_int_tok(tokens[1], line_no, "player id");
            if (i < 1 || i > t.n) throw ParseError("threshold file: player id out of range", line_no);
            if (have_theta[static_cast<std::size_t>(i - 1)]) {
                throw ParseError("threshold file: duplicate theta", line_no);
            }
            Rat theta;
            try {
                theta = parse_rat(tokens[2]);
            } catch (const std::exception&) {
                throw ParseError("threshold file: bad rational '" + tokens[2] + "'", line_no);
            }
            if (theta <= Rat{0}) throw ParseError("threshold file: theta must be positive", line_no);
            t.theta[static_cast<std::size_t>(i - 1)] = theta;
            have_theta[static_cast<std::size_t>(i - 1)] = true;
        } else if (tokens[0] == "a") {
            if (tokens.size() != 4) throw ParseError("threshold file: expected 'a <i> <j> <int>'", line_no);
            const std::int64_t i = parse_int_tok(tokens[1], line_no, "player id");
            const std::int64_t j = parse_int_tok(tokens[2], line_no, "player id");
            const std::int64_t a = parse_int_tok(tokens[3], line_no, "pair cost");
            if (i < 1 || i > t.n || j < 1 || j > t.n || i == j) {
                throw ParseError("threshold file: bad player pair", line_no);
            }
            if (a < 1) throw ParseError("threshold file: pair cost must be >= 1", line_no);
            if (have_pair[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]) {
                throw ParseError("threshold file: duplicate pair cost", line_no);
            }
            t.pair_cost[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = a;
            t.pair_cost[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = a;
            have_pair[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = true;
            have_pair[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = true;
        } else {
            throw ParseError("threshold file: unknown keyword '" + tokens[0] + "'", line_no);
        }
    }
    if (!have_header) throw ParseError("threshold file: missing header", line_no);
    for (int i = 0; i < t.n; ++i) {
        if (!have_theta[static_cast<std::size_t>(i)]) {
            throw ParseError("threshold file: missing theta for player " + std::to_string(i + 1), line_no);
        }
        for (int j = i + 1; j < t.n; ++j) {
            if (!have_pair[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                throw ParseError("threshold file: missing pair cost " + std::to_string(i + 1) + "," +
                                     std::to_string(j + 1),
                                 line_no);
            }
        }
    }
    return t;
}

ThresholdGame load_threshold_game(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open threshold file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_threshold_game(buf.str());
}

std::string write_threshold_game(const ThresholdGame& t) {
    std::ostringstream out;
    out << "threshold " << t.n << "\n";
    for (int i = 0; i < t.n; ++i) {
        out << "theta " << i + 1 << " " << t.theta[static_cast<std::size_t>(i)].to_string() << "\n";
    }
    for (int i = 0; i < t.n; ++i) {
        for (int j = i + 1; j < t.n; ++j) {
            out << "a " << i + 1 << " " << j + 1 << " " << t.pair(i, j) << "\n";
        }
    }
    return out.str();
}

}  // namespace pgg
