#include "pgg/game_io.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "pgg/util.hpp"

namespace pgg {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

std::int64_t parse_int(const std::string& tok, std::size_t line_no, const char* what) {
    std::size_t pos = 0;
    std::int64_t value = 0;
    try {
        value = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(std::string("game file: bad ") + what + " '" + tok + "'", line_no);
    }
    if (pos != tok.size()) {
        throw ParseError(std::string("game file: bad ") + what + " '" + tok + "'", line_no);
    }
    return value;
}

}  // namespace

GameInstance parse_game(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;

    std::optional<GameInstance> game;
    std::optional<Pattern> default_pattern;
    std::vector<bool> has_pattern;

    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string& kw = tokens[0];

        if (kw == "pgg") {
            if (game) throw ParseError("game file: duplicate 'pgg' header", line_no);
            if (tokens.size() != 2) throw ParseError("game file: expected 'pgg <n>'", line_no);
            const std::int64_t n = parse_int(tokens[1], line_no, "vertex count");
            if (n < 0) throw ParseError("game file: negative vertex count", line_no);
            game.emplace(static_cast<int>(n));
            has_pattern.assign(static_cast<std::size_t>(n), false);
            continue;
        }
        if (!game) throw ParseError("game file: 'pgg <n>' header must come first", line_no);

        if (kw == "patterns") {
            if (tokens.size() != 2) throw ParseError("game file: expected 'patterns <pattern>'", line_no);
            if (default_pattern) throw ParseError("game file: duplicate 'patterns' line", line_no);
            default_pattern = parse_pattern(tokens[1]);
        } else if (kw == "pattern") {
            if (tokens.size() != 3) throw ParseError("game file: expected 'pattern <v> <pattern>'", line_no);
            const std::int64_t v = parse_int(tokens[1], line_no, "vertex id");
            if (v < 1 || v > game->size()) throw ParseError("game file: vertex id out of range", line_no);
            if (has_pattern[static_cast<std::size_t>(v - 1)]) {
                throw ParseError("game file: duplicate pattern for vertex", line_no);
            }
            game->set_pattern(static_cast<Vertex>(v - 1), parse_pattern(tokens[2]));
            has_pattern[static_cast<std::size_t>(v - 1)] = true;
        } else if (kw == "edge") {
            if (tokens.size() != 3 && tokens.size() != 4) {
                throw ParseError("game file: expected 'edge <u> <v> [<weight>]'", line_no);
            }
            const std::int64_t u = parse_int(tokens[1], line_no, "vertex id");
            const std::int64_t v = parse_int(tokens[2], line_no, "vertex id");
            const std::int64_t w = tokens.size() == 4 ? parse_int(tokens[3], line_no, "weight") : 1;
            if (u < 1 || u > game->size() || v < 1 || v > game->size()) {
                throw ParseError("game file: vertex id out of range", line_no);
            }
            try {
                game->add_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), w);
            } catch (const std::invalid_argument& e) {
                throw ParseError(std::string("game file: ") + e.what(), line_no);
            }
        } else {
            throw ParseError("game file: unknown keyword '" + kw + "'", line_no);
        }
    }
    if (!game) throw ParseError("game file: missing 'pgg <n>' header", line_no);
    for (Vertex v = 0; v < game->size(); ++v) {
        if (has_pattern[static_cast<std::size_t>(v)]) continue;
        if (!default_pattern) {
            throw ParseError("game file: vertex " + std::to_string(v + 1) + " has no pattern", line_no);
        }
        game->set_pattern(v, *default_pattern);
    }
    return std::move(*game);
}

GameInstance load_game(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open game file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_game(buf.str());
}

std::string write_game(const GameInstance& g) {
    std::ostringstream out;
    out << "pgg " << g.size() << "\n";
    if (g.size() > 0) {
        if (g.homogeneous()) {
            out << "patterns " << g.pattern(0).to_string() << "\n";
        } else {
            for (Vertex v = 0; v < g.size(); ++v) {
                out << "pattern " << v + 1 << " " << g.pattern(v).to_string() << "\n";
            }
        }
    }
    auto edges = g.edges();
    std::sort(edges.begin(), edges.end());
    for (const Edge& e : edges) {
        out << "edge " << e.u + 1 << " " << e.v + 1;
        if (e.weight != 1) out << " " << e.weight;
        out << "\n";
    }
    return out.str();
}

void save_game(const GameInstance& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write game file: " + path);
    out << write_game(g);
}

}  // namespace pgg
