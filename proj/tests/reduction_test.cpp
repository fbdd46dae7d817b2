#include <doctest.h>

#include <optional>

#include "pgg/game_io.hpp"
#include "pgg/reduction.hpp"
#include "pgg/solver.hpp"
#include "pgg/util.hpp"

using namespace pgg;

namespace {

// brute-force oracle over all assignments
std::optional<std::vector<std::uint8_t>> brute_satisfy(const OneInThreeInstance& inst) {
    const int m = inst.num_vars;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
        std::vector<std::uint8_t> sigma(static_cast<std::size_t>(m));
        for (int v = 0; v < m; ++v) sigma[static_cast<std::size_t>(v)] = (mask >> v) & 1;
        if (satisfies_one_in_three(inst, sigma)) return sigma;
    }
    return std::nullopt;
}

SolveResult solve_backtrack(const GameInstance& g) {
    SolveOptions options;
    options.method = SolveMethod::Backtrack;
    return decide_pne(g, options);
}

}  // namespace

TEST_CASE("instance parsing") {
    const OneInThreeInstance a = parse_one_in_three("p 1in3 1 1\n1 0 0\n");
    CHECK(a.num_vars == 1);
    REQUIRE(a.clauses.size() == 1);
    CHECK(a.clauses[0][0] == Literal{1});
    CHECK(a.clauses[0][1].is_bottom());

    const OneInThreeInstance b = parse_one_in_three("c comment\np 1in3 2 1\n1 2 2\n");
    CHECK(b.clauses[0][2] == Literal{2});
    CHECK(b.unused_vars.empty());

    const OneInThreeInstance c = parse_one_in_three("p 1in3 0 1\n0 0 0\n");
    CHECK(c.num_vars == 0);

    const OneInThreeInstance d = parse_one_in_three("p 1in3 3 1\n1 1 1\n");
    CHECK(d.unused_vars == std::vector<int>{2, 3});

    CHECK_THROWS_AS(parse_one_in_three("p 1in3 1 2\n1 0 0\n"), ParseError);  // count mismatch
    CHECK_THROWS_AS(parse_one_in_three("p 1in3 1 1\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_one_in_three("p 1in3 1 1\n2 0 0\n"), ParseError);  // out of range
    CHECK_THROWS_AS(parse_one_in_three("1 0 0\n"), ParseError);
}

TEST_CASE("satisfaction semantics") {
    const OneInThreeInstance inst = parse_one_in_three("p 1in3 3 1\n1 2 3\n");
    CHECK(satisfies_one_in_three(inst, {1, 0, 0}));
    CHECK(satisfies_one_in_three(inst, {0, 1, 0}));
    CHECK_FALSE(satisfies_one_in_three(inst, {1, 1, 0}));
    CHECK_FALSE(satisfies_one_in_three(inst, {0, 0, 0}));

    // bottom never counts
    const OneInThreeInstance bot = parse_one_in_three("p 1in3 1 1\n1 0 0\n");
    CHECK(satisfies_one_in_three(bot, {1}));
    CHECK_FALSE(satisfies_one_in_three(bot, {0}));
}

TEST_CASE("compiled shapes") {
    // a single positive clause with k=2 is just the triangle
    const OneInThreeInstance tri = parse_one_in_three("p 1in3 3 1\n1 2 3\n");
    const CompiledReduction red2 = compile_reduction(tri, 2);
    CHECK(red2.game.size() == 3);
    CHECK(red2.game.edges().size() == 3);
    CHECK(solve_backtrack(red2.game).status == SolveStatus::Exists);

    // all-falsity clause at k=1: clause gadget + three false gadgets
    const OneInThreeInstance dead = parse_one_in_three("p 1in3 0 1\n0 0 0\n");
    const CompiledReduction red1 = compile_reduction(dead, 1);
    CHECK(red1.game.size() == 18 + 3 * 13);
    CHECK(solve_backtrack(red1.game).status == SolveStatus::NotExists);

    // repeated variable inside one clause adds one equivalence gadget
    const OneInThreeInstance rep = parse_one_in_three("p 1in3 2 1\n1 2 2\n");
    const CompiledReduction redr = compile_reduction(rep, 1);
    CHECK(redr.gadgets.size() == 2);
    CHECK(redr.game.size() == 18 + 21);
    const SolveResult res = solve_backtrack(redr.game);
    REQUIRE(res.status == SolveStatus::Exists);
    // the only satisfying assignment sets x1 and clears x2
    const auto sigma = profile_to_assignment(redr, rep, *res.witness);
    CHECK(sigma == std::vector<std::uint8_t>{1, 0});
}

TEST_CASE("equivalence layout: all pairs by default, chain on request") {
    const OneInThreeInstance inst = parse_one_in_three("p 1in3 1 2\n1 1 0\n1 0 0\n");
    // occurrences of x1: (1,1), (1,2), (2,1) -> three pairs
    const CompiledReduction pairs = compile_reduction(inst, 1);
    std::size_t equivs = 0;
    for (const Attachment& a : pairs.gadgets) equivs += a.kind == GadgetKind::Equiv;
    CHECK(equivs == 3);

    const CompiledReduction chain = compile_reduction(inst, 1, true);
    equivs = 0;
    for (const Attachment& a : chain.gadgets) equivs += a.kind == GadgetKind::Equiv;
    CHECK(equivs == 2);

    // both compile to solvable games with the same decision
    CHECK(solve_backtrack(pairs.game).status == solve_backtrack(chain.game).status);
}

TEST_CASE("assignment extension and read-back round trip") {
    const OneInThreeInstance inst = parse_one_in_three("p 1in3 2 2\n1 2 0\n1 0 0\n");
    const CompiledReduction red = compile_reduction(inst, 1);
    const std::vector<std::uint8_t> sigma{1, 0};
    REQUIRE(satisfies_one_in_three(inst, sigma));
    const StrategyProfile profile = assignment_to_profile(red, inst, sigma);
    CHECK(is_pne(red.game, profile));
    CHECK(profile_to_assignment(red, inst, profile) == sigma);

    // non-satisfying assignments are rejected
    CHECK_THROWS_AS(assignment_to_profile(red, inst, {1, 1}), std::invalid_argument);
    // non-equilibria are rejected
    StrategyProfile junk(static_cast<std::size_t>(red.game.size()), 1);
    CHECK_THROWS_AS(profile_to_assignment(red, inst, junk), std::invalid_argument);
}

TEST_CASE("decision equivalence on every tiny instance") {
    // all clauses over {bottom, x1, x2, x3} up to position symmetry
    std::vector<std::array<Literal, 3>> clause_shapes;
    for (int a = 0; a <= 3; ++a) {
        for (int b = a; b <= 3; ++b) {
            for (int c = b; c <= 3; ++c) {
                clause_shapes.push_back({Literal{a}, Literal{b}, Literal{c}});
            }
        }
    }
    REQUIRE(clause_shapes.size() == 20);

    std::vector<OneInThreeInstance> instances;
    for (std::size_t i = 0; i < clause_shapes.size(); ++i) {
        OneInThreeInstance one;
        one.num_vars = 3;
        one.clauses = {clause_shapes[i]};
        instances.push_back(one);
        for (std::size_t j = i; j < clause_shapes.size(); ++j) {
            OneInThreeInstance two;
            two.num_vars = 3;
            two.clauses = {clause_shapes[i], clause_shapes[j]};
            instances.push_back(two);
        }
    }

    for (int k = 1; k <= 2; ++k) {
        for (const OneInThreeInstance& inst : instances) {
            CAPTURE(k);
            CAPTURE(write_one_in_three(inst));
            const auto sigma = brute_satisfy(inst);
            const CompiledReduction red = compile_reduction(inst, k);
            const SolveResult res = solve_backtrack(red.game);
            REQUIRE(res.status ==
                    (sigma ? SolveStatus::Exists : SolveStatus::NotExists));
            if (sigma) {
                // certificates validate in both directions
                const StrategyProfile built = assignment_to_profile(red, inst, *sigma);
                CHECK(is_pne(red.game, built));
                const auto back = profile_to_assignment(red, inst, built);
                for (int v = 0; v < inst.num_vars; ++v) {
                    bool occurs = false;
                    for (const auto& cl : inst.clauses) {
                        for (const Literal& l : cl) occurs = occurs || l.var == v + 1;
                    }
                    if (occurs) {
                        CHECK(back[static_cast<std::size_t>(v)] ==
                              (*sigma)[static_cast<std::size_t>(v)]);
                    }
                }
                const auto direct = profile_to_assignment(red, inst, *res.witness);
                CHECK(satisfies_one_in_three(inst, direct));
            }
        }
    }
}

TEST_CASE("three-clause instances compile and decide correctly") {
    // forcing x3 true clashes with the first two clauses
    const OneInThreeInstance unsat =
        parse_one_in_three("p 1in3 3 3\n1 2 3\n1 2 0\n3 0 0\n");
    // without the forcing clause there is a satisfying assignment
    const OneInThreeInstance sat = parse_one_in_three("p 1in3 3 2\n1 2 3\n1 2 0\n");

    for (int k = 1; k <= 2; ++k) {
        CAPTURE(k);
        const CompiledReduction red_unsat = compile_reduction(unsat, k);
        CHECK(solve_backtrack(red_unsat.game).status == SolveStatus::NotExists);

        const CompiledReduction red_sat = compile_reduction(sat, k);
        const SolveResult res = solve_backtrack(red_sat.game);
        REQUIRE(res.status == SolveStatus::Exists);
        const auto sigma = profile_to_assignment(red_sat, sat, *res.witness);
        CHECK(satisfies_one_in_three(sat, sigma));
    }
}

TEST_CASE("certificates survive the JSON round trip") {
    const OneInThreeInstance inst = parse_one_in_three("p 1in3 2 1\n1 2 2\n");
    const CompiledReduction red = compile_reduction(inst, 1);
    const std::string json_text = certificate_to_json(red);
    const CompiledReduction back = certificate_from_json(red.game, json_text);
    CHECK(back.k == red.k);
    CHECK(back.literal_vertex == red.literal_vertex);
    REQUIRE(back.gadgets.size() == red.gadgets.size());
    for (std::size_t i = 0; i < back.gadgets.size(); ++i) {
        CHECK(back.gadgets[i].kind == red.gadgets[i].kind);
        CHECK(back.gadgets[i].operand_hosts == red.gadgets[i].operand_hosts);
        CHECK(back.gadgets[i].fresh_base == red.gadgets[i].fresh_base);
    }
    // and the rebuilt map still produces valid equilibria
    const auto sigma = brute_satisfy(inst);
    REQUIRE(sigma);
    CHECK(is_pne(red.game, assignment_to_profile(back, inst, *sigma)));
}
