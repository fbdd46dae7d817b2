#include <doctest.h>

#include <sstream>

#include "pgg/cnf.hpp"
#include "pgg/generator.hpp"
#include "pgg/util.hpp"

using namespace pgg;

namespace {

// Test-side oracle: fix the vertex variables, unit-propagate to fixpoint,
// and report whether the formula is satisfiable. The counter auxiliaries are
// functionally determined by the vertex variables, so propagation always
// finishes the job; an undetermined clause afterwards would be a bug.
bool satisfiable_with_vertices(const CnfFormula& f, const StrategyProfile& s) {
    std::vector<int> value(static_cast<std::size_t>(f.num_vars) + 1, -1);
    for (int v = 0; v < f.num_vertices; ++v) {
        value[static_cast<std::size_t>(f.vertex_var(v))] = s[static_cast<std::size_t>(v)];
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& clause : f.clauses) {
            int unassigned = 0;
            int last_free = 0;
            bool satisfied = false;
            for (int lit : clause) {
                const int var = lit > 0 ? lit : -lit;
                const int val = value[static_cast<std::size_t>(var)];
                if (val < 0) {
                    ++unassigned;
                    last_free = lit;
                } else if ((lit > 0) == (val == 1)) {
                    satisfied = true;
                    break;
                }
            }
            if (satisfied) continue;
            if (unassigned == 0) return false;  // conflict
            if (unassigned == 1) {
                value[static_cast<std::size_t>(last_free > 0 ? last_free : -last_free)] =
                    last_free > 0 ? 1 : 0;
                changed = true;
            }
        }
    }
    // all clauses must now be decided and satisfied
    for (const auto& clause : f.clauses) {
        bool satisfied = false;
        for (int lit : clause) {
            const int var = lit > 0 ? lit : -lit;
            const int val = value[static_cast<std::size_t>(var)];
            REQUIRE(val >= 0);
            if ((lit > 0) == (val == 1)) satisfied = true;
        }
        if (!satisfied) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("single edge: exactly the two equilibria project out") {
    GameInstance g(2);
    g.set_all_patterns(parse_pattern("10*"));
    g.add_edge(0, 1);
    const CnfFormula f = export_cnf(g);
    CHECK(satisfiable_with_vertices(f, StrategyProfile::from_string("10")));
    CHECK(satisfiable_with_vertices(f, StrategyProfile::from_string("01")));
    CHECK_FALSE(satisfiable_with_vertices(f, StrategyProfile::from_string("00")));
    CHECK_FALSE(satisfiable_with_vertices(f, StrategyProfile::from_string("11")));
}

TEST_CASE("picky triangle: four models") {
    GameInstance g(3);
    g.set_all_patterns(parse_pattern("1010*"));
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    const CnfFormula f = export_cnf(g);
    int models = 0;
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
        StrategyProfile s(3);
        for (int v = 0; v < 3; ++v) s[static_cast<std::size_t>(v)] = (mask >> (2 - v)) & 1;
        if (satisfiable_with_vertices(f, s)) ++models;
    }
    CHECK(models == 4);
}

TEST_CASE("edgeless never-active vertices force the all-zero model") {
    GameInstance g(3);
    g.set_all_patterns(parse_pattern("0*"));
    const CnfFormula f = export_cnf(g);
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
        StrategyProfile s(3);
        for (int v = 0; v < 3; ++v) s[static_cast<std::size_t>(v)] = (mask >> (2 - v)) & 1;
        CHECK(satisfiable_with_vertices(f, s) == (mask == 0));
    }
}

TEST_CASE("projected models are exactly the equilibria on random games") {
    Rng rng(246);
    const std::vector<Pattern> pool{parse_pattern("10*"), parse_pattern("110*"),
                                    parse_pattern("1010*"), parse_pattern("0*"),
                                    parse_pattern("10010*")};
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(bounded(rng, 10));
        GameInstance g(n);
        for (Vertex v = 0; v < n; ++v) g.set_pattern(v, pool[bounded(rng, pool.size())]);
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) {
                if (bounded(rng, 3) == 0) {
                    g.add_edge(u, v, 1 + static_cast<std::int64_t>(bounded(rng, 3)));
                }
            }
        }
        const CnfFormula f = export_cnf(g);
        for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
            StrategyProfile s(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) s[static_cast<std::size_t>(v)] = (mask >> (n - 1 - v)) & 1;
            CHECK(satisfiable_with_vertices(f, s) == is_pne(g, s));
        }
    }
}

TEST_CASE("DIMACS output shape") {
    GameInstance g(2);
    g.set_all_patterns(parse_pattern("10*"));
    g.add_edge(0, 1);
    const CnfFormula f = export_cnf(g);
    const std::string text = dimacs_string(f);
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    std::size_t clause_lines = 0;
    while (std::getline(in, line)) {
        if (line.rfind("c ", 0) == 0) continue;
        if (line.rfind("p cnf ", 0) == 0) {
            header_seen = true;
            std::istringstream hs(line.substr(6));
            int vars = 0;
            std::size_t clauses = 0;
            hs >> vars >> clauses;
            CHECK(vars == f.num_vars);
            CHECK(clauses == f.clauses.size());
            continue;
        }
        REQUIRE(header_seen);
        CHECK(line.back() == '0');
        ++clause_lines;
    }
    CHECK(clause_lines == f.clauses.size());
    CHECK(text.find("c vertices 2") != std::string::npos);
}
