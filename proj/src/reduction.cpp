#include "pgg/reduction.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "pgg/util.hpp"

namespace pgg {

OneInThreeInstance parse_one_in_three(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    OneInThreeInstance inst;
    bool have_header = false;
    std::int64_t expected_clauses = 0;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty() || tokens[0] == "c") continue;

        if (tokens[0] == "p") {
            if (have_header) throw ParseError("1in3 file: duplicate header", line_no);
            if (tokens.size() != 4 || tokens[1] != "1in3") {
                throw ParseError("1in3 file: expected 'p 1in3 <vars> <clauses>'", line_no);
            }
            try {
                inst.num_vars = std::stoi(tokens[2]);
                expected_clauses = std::stoll(tokens[3]);
            } catch (const std::exception&) {
                throw ParseError("1in3 file: bad header counts", line_no);
            }
            if (inst.num_vars < 0 || expected_clauses < 1) {
                throw ParseError("1in3 file: bad header counts", line_no);
            }
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError("1in3 file: header must come first", line_no);
        if (tokens.size() != 3) throw ParseError("1in3 file: clause needs exactly 3 literals", line_no);
        std::array<Literal, 3> clause;
        for (int j = 0; j < 3; ++j) {
            int v = 0;
            try {
                v = std::stoi(tokens[static_cast<std::size_t>(j)]);
            } catch (const std::exception&) {
                throw ParseError("1in3 file: bad literal", line_no);
            }
            if (v < 0 || v > inst.num_vars) throw ParseError("1in3 file: literal out of range", line_no);
            clause[static_cast<std::size_t>(j)] = Literal{v};
        }
        inst.clauses.push_back(clause);
    }
    if (!have_header) throw ParseError("1in3 file: missing header", line_no);
    if (static_cast<std::int64_t>(inst.clauses.size()) != expected_clauses) {
        throw ParseError("1in3 file: clause count mismatch", line_no);
    }
    std::vector<bool> used(static_cast<std::size_t>(inst.num_vars) + 1, false);
    for (const auto& clause : inst.clauses) {
        for (const Literal& l : clause) used[static_cast<std::size_t>(l.var)] = true;
    }
    for (int v = 1; v <= inst.num_vars; ++v) {
        if (!used[static_cast<std::size_t>(v)]) inst.unused_vars.push_back(v);
    }
    return inst;
}

OneInThreeInstance load_one_in_three(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open 1in3 file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_one_in_three(buf.str());
}

std::string write_one_in_three(const OneInThreeInstance& inst) {
    std::ostringstream out;
    out << "p 1in3 " << inst.num_vars << " " << inst.clauses.size() << "\n";
    for (const auto& clause : inst.clauses) {
        out << clause[0].var << " " << clause[1].var << " " << clause[2].var << "\n";
    }
    return out.str();
}

bool satisfies_one_in_three(const OneInThreeInstance& inst, const std::vector<std::uint8_t>& sigma) {
    if (static_cast<int>(sigma.size()) != inst.num_vars) {
        throw std::invalid_argument("satisfies_one_in_three: assignment length mismatch");
    }
    for (const auto& clause : inst.clauses) {
        int trues = 0;
        for (const Literal& l : clause) {
            if (!l.is_bottom() && sigma[static_cast<std::size_t>(l.var - 1)]) ++trues;
        }
        if (trues != 1) return false;
    }
    return true;
}

CompiledReduction compile_reduction(const OneInThreeInstance& inst, int k, bool equiv_chain) {
    if (k < 1) throw std::invalid_argument("compile_reduction: k must be >= 1");
    CompiledReduction red;
    red.k = k;
    red.equiv_chain = equiv_chain;
    const Pattern pattern = picky_pattern(k);
    const Gadget clause_gadget = build_gadget(GadgetKind::Clause, k);
    const Gadget equiv_gadget = build_gadget(GadgetKind::Equiv, k);
    const Gadget false_gadget = build_gadget(GadgetKind::False, k);

    GameInstance game(0);
    for (std::size_t i = 0; i < inst.clauses.size(); ++i) {
        const int base = game.size();
        game.add_vertices(3, pattern);
        Attachment rec;
        game = attach_gadget(game, clause_gadget, {base, base + 1, base + 2}, &rec);
        red.literal_vertex.push_back({base, base + 1, base + 2});
        red.gadgets.push_back(rec);
    }

    auto literal_at = [&](std::size_t flat) {
        return inst.clauses[flat / 3][flat % 3];
    };
    auto vertex_at = [&](std::size_t flat) {
        return red.literal_vertex[flat / 3][flat % 3];
    };
    const std::size_t positions = inst.clauses.size() * 3;

    if (equiv_chain) {
        // One chain per variable over its occurrences; equality still
        // propagates transitively.
        std::map<int, std::size_t> last_occurrence;
        for (std::size_t p = 0; p < positions; ++p) {
            const Literal l = literal_at(p);
            if (l.is_bottom()) continue;
            if (auto it = last_occurrence.find(l.var); it != last_occurrence.end()) {
                Attachment rec;
                game = attach_gadget(game, equiv_gadget, {vertex_at(it->second), vertex_at(p)}, &rec);
                red.gadgets.push_back(rec);
            }
            last_occurrence[l.var] = p;
        }
    } else {
        // Every unordered pair of occurrences of the same variable, in
        // lexicographic (clause, position, clause', position') order.
        for (std::size_t p = 0; p < positions; ++p) {
            const Literal l = literal_at(p);
            if (l.is_bottom()) continue;
            for (std::size_t q = p + 1; q < positions; ++q) {
                if (literal_at(q) != l) continue;
                Attachment rec;
                game = attach_gadget(game, equiv_gadget, {vertex_at(p), vertex_at(q)}, &rec);
                red.gadgets.push_back(rec);
            }
        }
    }

    for (std::size_t i = 0; i < inst.clauses.size(); ++i) {
        for (int j = 0; j < 3; ++j) {
            if (inst.clauses[i][static_cast<std::size_t>(j)].is_bottom()) {
                Attachment rec;
                game = attach_gadget(game, false_gadget,
                                     {red.literal_vertex[i][static_cast<std::size_t>(j)]}, &rec);
                red.gadgets.push_back(rec);
            }
        }
    }

    red.game = std::move(game);
    return red;
}

StrategyProfile assignment_to_profile(const CompiledReduction& red,
                                      const OneInThreeInstance& inst,
                                      const std::vector<std::uint8_t>& sigma) {
    if (!satisfies_one_in_three(inst, sigma)) {
        throw std::invalid_argument("assignment_to_profile: assignment does not satisfy the instance");
    }
    StrategyProfile s(static_cast<std::size_t>(red.game.size()));
    for (std::size_t i = 0; i < inst.clauses.size(); ++i) {
        for (int j = 0; j < 3; ++j) {
            const Literal l = inst.clauses[i][static_cast<std::size_t>(j)];
            const int v = red.literal_vertex[i][static_cast<std::size_t>(j)];
            s[static_cast<std::size_t>(v)] =
                l.is_bottom() ? 0 : sigma[static_cast<std::size_t>(l.var - 1)];
        }
    }
    for (const Attachment& a : red.gadgets) {
        const Gadget shape = build_gadget(a.kind, a.k, a.arity);
        std::vector<std::uint8_t> operand_bits(static_cast<std::size_t>(a.arity));
        for (int i = 0; i < a.arity; ++i) {
            operand_bits[static_cast<std::size_t>(i)] =
                s[static_cast<std::size_t>(a.operand_hosts[static_cast<std::size_t>(i)])];
        }
        const auto local = witness_completion(shape, operand_bits);
        for (int v = shape.arity; v < shape.num_vertices; ++v) {
            s[static_cast<std::size_t>(attached_vertex(a, v))] = local[static_cast<std::size_t>(v)];
        }
    }
    const PneReport report = check_pne(red.game, s);
    if (!report.is_pne) {
        throw std::logic_error("assignment_to_profile: proof completion is not an equilibrium");
    }
    return s;
}

std::vector<std::uint8_t> profile_to_assignment(const CompiledReduction& red,
                                                const OneInThreeInstance& inst,
                                                const StrategyProfile& s) {
    if (!check_pne(red.game, s).is_pne) {
        throw std::invalid_argument("profile_to_assignment: profile is not an equilibrium");
    }
    std::vector<std::uint8_t> sigma(static_cast<std::size_t>(inst.num_vars), 0);
    std::vector<bool> seen(static_cast<std::size_t>(inst.num_vars), false);
    for (std::size_t i = 0; i < inst.clauses.size(); ++i) {
        for (int j = 0; j < 3; ++j) {
            const Literal l = inst.clauses[i][static_cast<std::size_t>(j)];
            if (l.is_bottom()) continue;
            const auto bit = s[static_cast<std::size_t>(red.literal_vertex[i][static_cast<std::size_t>(j)])];
            const auto idx = static_cast<std::size_t>(l.var - 1);
            if (seen[idx] && sigma[idx] != bit) {
                throw std::logic_error("profile_to_assignment: occurrences of a variable disagree");
            }
            sigma[idx] = bit;
            seen[idx] = true;
        }
    }
    if (!satisfies_one_in_three(inst, sigma)) {
        throw std::logic_error("profile_to_assignment: extracted assignment is not satisfying");
    }
    return sigma;
}

std::string certificate_to_json(const CompiledReduction& red) {
    nlohmann::json j;
    j["k"] = red.k;
    j["equiv_chain"] = red.equiv_chain;
    auto& lits = j["literal_vertices"] = nlohmann::json::array();
    for (const auto& t : red.literal_vertex) {
        lits.push_back({t[0] + 1, t[1] + 1, t[2] + 1});
    }
    auto& gads = j["gadgets"] = nlohmann::json::array();
    for (const Attachment& a : red.gadgets) {
        nlohmann::json g;
        g["kind"] = gadget_kind_name(a.kind);
        g["k"] = a.k;
        nlohmann::json ops = nlohmann::json::array();
        for (int h : a.operand_hosts) ops.push_back(h + 1);
        g["operands"] = std::move(ops);
        g["fresh_base"] = a.fresh_base + 1;
        g["fresh_count"] = a.fresh_count;
        gads.push_back(std::move(g));
    }
    return j.dump(2);
}

CompiledReduction certificate_from_json(const GameInstance& game, const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    CompiledReduction red;
    red.game = game;
    red.k = j.at("k").get<int>();
    red.equiv_chain = j.value("equiv_chain", false);
    for (const auto& t : j.at("literal_vertices")) {
        red.literal_vertex.push_back(
            {t.at(0).get<int>() - 1, t.at(1).get<int>() - 1, t.at(2).get<int>() - 1});
    }
    for (const auto& g : j.at("gadgets")) {
        Attachment a;
        const auto kind = gadget_kind_from_name(g.at("kind").get<std::string>());
        if (!kind) throw std::invalid_argument("certificate: unknown gadget kind");
        a.kind = *kind;
        a.k = g.at("k").get<int>();
        for (const auto& h : g.at("operands")) a.operand_hosts.push_back(h.get<int>() - 1);
        a.arity = static_cast<int>(a.operand_hosts.size());
        a.fresh_base = g.at("fresh_base").get<int>() - 1;
        a.fresh_count = g.at("fresh_count").get<int>();
        red.gadgets.push_back(std::move(a));
    }
    return red;
}

}  // namespace pgg
