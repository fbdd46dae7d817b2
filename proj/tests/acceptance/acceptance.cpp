// Acceptance suite: one line per criterion, exact arithmetic throughout,
// nonzero exit when anything fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pgg/cnf.hpp"
#include "pgg/congestion.hpp"
#include "pgg/dynamics.hpp"
#include "pgg/gadgets.hpp"
#include "pgg/generator.hpp"
#include "pgg/reduction.hpp"
#include "pgg/solver.hpp"
#include "pgg/util.hpp"

#ifndef FIXTURE_DIR
#define FIXTURE_DIR "tests/fixtures"
#endif

using namespace pgg;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (detail.empty()) detail = why;
    }
    void require(bool condition, const std::string& why) {
        if (!condition) fail(why);
    }
};

std::vector<Pattern> decreasing_pool(int kmax) {
    std::vector<Pattern> pool;
    for (int k = 1; k <= kmax; ++k) pool.push_back(decreasing_pattern(k));
    return pool;
}

// ---------------------------------------------------------------------------
// 1. Better-response dynamics: strict potential descent, convergence within
//    2 * (|E| + k_max * n) flips on 200 seeded random unweighted games.
Outcome criterion_dynamics() {
    Outcome out;
    Rng rng(20240501);
    for (int game_idx = 0; game_idx < 200; ++game_idx) {
        const int n = 2 + static_cast<int>(bounded(rng, 49));
        const GameInstance g = generate_gnp(n, Rat{1, 4}, decreasing_pool(4), rng());
        const Schedule schedule{static_cast<ScheduleKind>(bounded(rng, 3)), rng()};
        StrategyProfile start(static_cast<std::size_t>(n));
        for (auto& b : start.bits) b = rng() & 1;

        const std::int64_t bound =
            2 * (g.total_weight() + [&] {
                     std::int64_t kmax = 1;
                     for (Vertex v = 0; v < n; ++v) {
                         kmax = std::max(kmax, std::min(*leading_ones(g.pattern(v)),
                                                        g.weighted_degree(v) + 1));
                     }
                     return kmax;
                 }() * n);
        const DynamicsTrace trace = run_dynamics(g, start, schedule, bound);
        out.require(trace.converged, "dynamics did not converge within the flip bound");
        out.require(is_pne(g, trace.final_profile), "final profile is not an equilibrium");
        out.require(static_cast<std::int64_t>(trace.steps.size()) <= bound, "flip bound exceeded");
        for (std::size_t i = 1; i < trace.doubled_potential_series.size(); ++i) {
            out.require(
                trace.doubled_potential_series[i] <= trace.doubled_potential_series[i - 1] - 1,
                "potential did not drop by at least 1");
        }
        if (!out.pass) break;
    }
    if (out.pass) out.detail = "200 games, every flip lowered the doubled potential";
    return out;
}

// ---------------------------------------------------------------------------
// 2. Existence for leading-ones patterns: every graph on <= 5 vertices (all
//    edge subsets) plus 100 random graphs on 6-7 vertices has an equilibrium.
Outcome criterion_existence() {
    Outcome out;
    Rng rng(777);
    int graphs = 0;
    for (int n = 1; n <= 5 && out.pass; ++n) {
        const int pairs = n * (n - 1) / 2;
        for (std::uint32_t edges = 0; edges < (std::uint32_t{1} << pairs); ++edges) {
            GameInstance g(n);
            for (Vertex v = 0; v < n; ++v) {
                g.set_pattern(v, decreasing_pattern(1 + static_cast<std::int64_t>(bounded(rng, 4))));
            }
            int bit = 0;
            for (Vertex u = 0; u < n; ++u) {
                for (Vertex v = u + 1; v < n; ++v, ++bit) {
                    if ((edges >> bit) & 1) g.add_edge(u, v);
                }
            }
            ++graphs;
            if (decide_pne(g).status != SolveStatus::Exists) {
                out.fail("no equilibrium on an exhaustive graph with n=" + std::to_string(n));
                break;
            }
        }
    }
    for (int i = 0; i < 100 && out.pass; ++i) {
        const int n = 6 + static_cast<int>(bounded(rng, 2));
        const GameInstance g = generate_gnp(n, Rat{1, 2}, decreasing_pool(4), rng());
        ++graphs;
        if (decide_pne(g).status != SolveStatus::Exists) {
            out.fail("no equilibrium on a random graph with n=" + std::to_string(n));
        }
    }
    if (out.pass) out.detail = std::to_string(graphs) + " graphs, equilibrium found in each";
    return out;
}

// ---------------------------------------------------------------------------
// 3. Congestion representation: exact doubled-utility equality and identical
//    equilibrium sets, exhaustive for small games and sampled up to n = 30.
Outcome criterion_congestion() {
    Outcome out;
    Rng rng(31337);
    const auto pool = decreasing_pool(3);
    int exhaustive_games = 0;
    for (int n = 1; n <= 6 && out.pass; ++n) {
        const int pairs = n * (n - 1) / 2;
        for (std::uint32_t edges = 0; edges < (std::uint32_t{1} << pairs); ++edges) {
            GameInstance g(n);
            for (Vertex v = 0; v < n; ++v) g.set_pattern(v, pool[bounded(rng, pool.size())]);
            int bit = 0;
            for (Vertex u = 0; u < n; ++u) {
                for (Vertex v = u + 1; v < n; ++v, ++bit) {
                    if ((edges >> bit) & 1) {
                        g.add_edge(u, v, 1 + static_cast<std::int64_t>(bounded(rng, 3)));
                    }
                }
            }
            ++exhaustive_games;
            const IsomorphismReport report = verify_isomorphism(g, 0, 0);
            if (!report.ok || !report.pne_sets_equal) {
                out.fail("mismatch on an exhaustive game: " + report.failure);
                break;
            }
        }
    }
    std::uint64_t sampled = 0;
    for (int i = 0; i < 10 && out.pass; ++i) {
        const int n = 20 + static_cast<int>(bounded(rng, 11));  // up to 30
        const GameInstance g = generate_gnp(n, Rat{1, 5}, decreasing_pool(4), rng());
        const IsomorphismReport report = verify_isomorphism(g, 100, rng());
        sampled += report.profiles_checked;
        if (!report.ok) out.fail("mismatch on a sampled game: " + report.failure);
    }
    for (int i = 0; i < 10 && out.pass; ++i) {
        const int n = 8 + static_cast<int>(bounded(rng, 5));  // equilibrium sets at n <= 12
        const GameInstance g = generate_gnp(n, Rat{1, 3}, decreasing_pool(3), rng());
        const IsomorphismReport report = verify_isomorphism(g, 0, rng());
        if (!report.ok || !report.pne_sets_compared || !report.pne_sets_equal) {
            out.fail("equilibrium sets differ on a random game");
        }
    }
    if (out.pass) {
        out.detail = std::to_string(exhaustive_games) + " exhaustive games, " +
                     std::to_string(sampled) + " sampled profiles, zero mismatches";
    }
    return out;
}

// ---------------------------------------------------------------------------
// 4. Threshold-game mapping: with k = floor(theta) + 1 every equilibrium maps
//    to a stable threshold profile; the stored floor-rule fixture fails.
Outcome criterion_threshold() {
    Outcome out;
    Rng rng(4096);
    for (int trial = 0; trial < 100 && out.pass; ++trial) {
        ThresholdGame t;
        t.n = 2 + static_cast<int>(bounded(rng, 9));
        t.pair_cost.assign(static_cast<std::size_t>(t.n),
                           std::vector<std::int64_t>(static_cast<std::size_t>(t.n), 0));
        for (int i = 0; i < t.n; ++i) {
            const std::int64_t den = 1 + static_cast<std::int64_t>(bounded(rng, 4));
            const std::int64_t num =
                1 + static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(8 * den)));
            t.theta.push_back(Rat{num, den});
        }
        for (int i = 0; i < t.n; ++i) {
            for (int j = i + 1; j < t.n; ++j) {
                const std::int64_t a = 1 + static_cast<std::int64_t>(bounded(rng, 5));
                t.pair_cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a;
                t.pair_cost[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = a;
            }
        }
        const auto [game, map] = threshold_to_pgg(t, KRule::FloorPlusOne);
        const auto pne = enumerate_pne(game);
        out.require(!pne.empty(), "game from a threshold instance has no equilibrium");
        for (const StrategyProfile& s : pne) {
            if (!check_threshold_pne(t, map.to_in_flags(s)).is_pne) {
                out.fail("a mapped equilibrium is not stable in the threshold game");
                break;
            }
        }
    }

    const ThresholdGame fixture =
        load_threshold_game(std::string(FIXTURE_DIR) + "/floor_rule_counterexample.thr");
    const auto [floor_game, floor_map] = threshold_to_pgg(fixture, KRule::Floor);
    const auto floor_pne = enumerate_pne(floor_game);
    out.require(!floor_pne.empty(), "fixture game lost its equilibria");
    bool reproduced = false;
    for (const StrategyProfile& s : floor_pne) {
        reproduced = reproduced || !check_threshold_pne(fixture, floor_map.to_in_flags(s)).is_pne;
    }
    out.require(reproduced, "floor-rule fixture no longer reproduces the mapping failure");
    if (out.pass) out.detail = "100 games map cleanly; floor-rule fixture fails as documented";
    return out;
}

// ---------------------------------------------------------------------------
// 5. Gadget contracts at k in {1, 2}, exact where feasible, compositional
//    elsewhere; both modes must agree whenever both run.
Outcome criterion_gadgets() {
    Outcome out;
    const auto check = [&](GadgetKind kind, int k, int arity, bool exact, bool compositional) {
        const Gadget g = build_gadget(kind, k, arity);
        const GadgetContract contract = default_contract(g);
        std::optional<bool> exact_pass;
        std::optional<bool> comp_pass;
        if (exact) {
            const ContractReport r = verify_contract(g, contract, VerifyMode::Exact);
            exact_pass = r.pass;
            if (!r.pass) {
                out.fail(std::string(gadget_kind_name(kind)) + " k=" + std::to_string(k) +
                         " exact: " + r.failure);
            }
        }
        if (compositional) {
            const ContractReport r = verify_contract(g, contract, VerifyMode::Compositional);
            comp_pass = r.pass;
            if (!r.pass) {
                out.fail(std::string(gadget_kind_name(kind)) + " k=" + std::to_string(k) +
                         " compositional: " + r.failure);
            }
        }
        if (exact_pass && comp_pass) {
            out.require(*exact_pass == *comp_pass, "exact and compositional verdicts differ");
        }
    };

    for (int k = 1; k <= 2; ++k) {
        for (int arity = 1; arity <= 3; ++arity) check(GadgetKind::NearOr, k, arity, true, false);
    }
    check(GadgetKind::False, 1, 0, true, true);
    check(GadgetKind::False, 2, 0, true, true);  // exact sweep prunes well below 2^24 states
    check(GadgetKind::Clause, 1, 0, true, false);
    check(GadgetKind::Clause, 2, 0, true, false);
    check(GadgetKind::Equiv, 1, 0, true, true);
    check(GadgetKind::Equiv, 2, 0, false, true);
    if (out.pass) out.detail = "all contracts hold; modes agree where both ran";
    return out;
}

// ---------------------------------------------------------------------------
// 6. End-to-end reduction: the compiled game has an equilibrium exactly when
//    the instance is satisfiable, for every instance with <= 3 variables and
//    <= 2 clauses (up to literal-position symmetry) and k in {1, 2}.
Outcome criterion_reduction() {
    Outcome out;
    std::vector<std::array<Literal, 3>> shapes;
    for (int a = 0; a <= 3; ++a) {
        for (int b = a; b <= 3; ++b) {
            for (int c = b; c <= 3; ++c) shapes.push_back({Literal{a}, Literal{b}, Literal{c}});
        }
    }
    std::vector<OneInThreeInstance> instances;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        OneInThreeInstance one;
        one.num_vars = 3;
        one.clauses = {shapes[i]};
        instances.push_back(one);
        for (std::size_t j = i; j < shapes.size(); ++j) {
            OneInThreeInstance two;
            two.num_vars = 3;
            two.clauses = {shapes[i], shapes[j]};
            instances.push_back(two);
        }
    }

    auto brute = [](const OneInThreeInstance& inst) -> std::optional<std::vector<std::uint8_t>> {
        for (std::uint32_t mask = 0; mask < 8; ++mask) {
            std::vector<std::uint8_t> sigma{static_cast<std::uint8_t>(mask & 1),
                                            static_cast<std::uint8_t>((mask >> 1) & 1),
                                            static_cast<std::uint8_t>((mask >> 2) & 1)};
            if (satisfies_one_in_three(inst, sigma)) return sigma;
        }
        return std::nullopt;
    };

    std::uint64_t max_nodes = 0;
    int solved = 0;
    for (int k = 1; k <= 2 && out.pass; ++k) {
        for (const OneInThreeInstance& inst : instances) {
            const auto sigma = brute(inst);
            const CompiledReduction red = compile_reduction(inst, k);
            SolveOptions options;
            options.method = SolveMethod::Backtrack;
            options.node_budget = 10'000'000;
            const SolveResult res = decide_pne(red.game, options);
            ++solved;
            max_nodes = std::max(max_nodes, res.nodes);
            if (res.status == SolveStatus::BudgetExceeded) {
                out.fail("node budget exceeded on a compiled instance");
                break;
            }
            if ((res.status == SolveStatus::Exists) != sigma.has_value()) {
                out.fail("decision mismatch on " + write_one_in_three(inst) +
                         " k=" + std::to_string(k));
                break;
            }
            if (sigma) {
                const StrategyProfile built = assignment_to_profile(red, inst, *sigma);
                if (!is_pne(red.game, built)) {
                    out.fail("witness completion is not an equilibrium");
                    break;
                }
                const auto back = profile_to_assignment(red, inst, *res.witness);
                if (!satisfies_one_in_three(inst, back)) {
                    out.fail("assignment read back from the solver witness does not satisfy");
                    break;
                }
            }
        }
    }
    if (out.pass) {
        out.detail = std::to_string(solved) + " compiled instances, max " +
                     std::to_string(max_nodes) + " nodes";
    }
    return out;
}

// ---------------------------------------------------------------------------
// 7. Solver and CNF export agree with brute-force enumeration on 500 random
//    mixed-pattern games.
Outcome criterion_agreement() {
    Outcome out;
    Rng rng(999331);
    const std::vector<Pattern> pool{parse_pattern("10*"),    parse_pattern("110*"),
                                    parse_pattern("1010*"),  parse_pattern("10010*"),
                                    parse_pattern("0*"),     parse_pattern("(10)*"),
                                    parse_pattern("11010*"), parse_pattern("10110*")};
    int cnf_checked = 0;
    for (int trial = 0; trial < 500 && out.pass; ++trial) {
        const int n = 1 + static_cast<int>(bounded(rng, 16));
        GameInstance g(n);
        for (Vertex v = 0; v < n; ++v) g.set_pattern(v, pool[bounded(rng, pool.size())]);
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) {
                if (bounded(rng, 3) == 0) {
                    g.add_edge(u, v, 1 + static_cast<std::int64_t>(bounded(rng, 3)));
                }
            }
        }
        const auto all = enumerate_pne(g);
        SolveOptions options;
        options.method = trial % 2 ? SolveMethod::Backtrack : SolveMethod::Auto;
        const SolveResult res = decide_pne(g, options);
        if ((res.status == SolveStatus::Exists) != !all.empty()) {
            out.fail("solver verdict disagrees with enumeration");
            break;
        }
        if (res.witness && !is_pne(g, *res.witness)) {
            out.fail("solver witness is not an equilibrium");
            break;
        }

        if (n <= 10) {
            // projected models of the encoding == equilibria, all 2^n profiles
            ++cnf_checked;
            const CnfFormula f = export_cnf(g);
            std::vector<int> semantic(static_cast<std::size_t>(f.num_vars) + 1, -1);
            for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n) && out.pass; ++mask) {
                StrategyProfile s(static_cast<std::size_t>(n));
                for (int v = 0; v < n; ++v) {
                    s[static_cast<std::size_t>(v)] = (mask >> (n - 1 - v)) & 1;
                }
                // counters are functionally determined: rebuild and evaluate
                for (int v = 0; v < n; ++v) {
                    semantic[static_cast<std::size_t>(v + 1)] = s[static_cast<std::size_t>(v)];
                }
                int next = n + 1;
                for (Vertex v = 0; v < n; ++v) {
                    std::vector<int> slots;
                    for (const auto& [u, w] : g.neighbors(v)) {
                        for (std::int64_t i = 0; i < w; ++i) {
                            slots.push_back(s[static_cast<std::size_t>(u)]);
                        }
                    }
                    int prefix = 0;
                    for (std::size_t i = 1; i <= slots.size(); ++i) {
                        prefix += slots[i - 1];
                        for (std::size_t j = 1; j <= i; ++j) {
                            semantic[static_cast<std::size_t>(next++)] =
                                prefix >= static_cast<int>(j) ? 1 : 0;
                        }
                    }
                }
                bool satisfied = true;
                for (const auto& clause : f.clauses) {
                    bool clause_true = false;
                    for (int lit : clause) {
                        const int val = semantic[static_cast<std::size_t>(lit > 0 ? lit : -lit)];
                        clause_true = clause_true || ((lit > 0) == (val == 1));
                    }
                    if (!clause_true) {
                        satisfied = false;
                        break;
                    }
                }
                if (satisfied != is_pne(g, s)) {
                    out.fail("projected CNF models differ from the equilibrium set");
                }
            }
        }
    }
    if (out.pass) {
        out.detail = "500 games agree; CNF projection exact on " + std::to_string(cnf_checked) +
                     " of them";
    }
    return out;
}

// ---------------------------------------------------------------------------
// 8. The classifier reproduces the published verdicts for the representative
//    patterns.
Outcome criterion_classification() {
    Outcome out;
    const std::vector<std::pair<const char*, std::set<std::pair<std::string, std::string>>>>
        expected{
            {"10*", {{"1+0+", kVerdictAlwaysExists}}},
            {"110*", {{"1+0+", kVerdictAlwaysExists}}},
            {"(10)*", {{"(10)*", kVerdictPolynomial}}},
            {"10010*", {{"10+10*", kVerdictNpComplete}}},
            {"1010*", {{"10+10*", kVerdictNpComplete}, {"(10)+10*", kVerdictNpComplete}}},
        };
    for (const auto& [text, want] : expected) {
        std::set<std::pair<std::string, std::string>> got;
        for (const PatternClass& c : classify_pattern(parse_pattern(text))) {
            got.insert({c.name, c.verdict});
        }
        if (got != want) out.fail(std::string("verdict mismatch for ") + text);
    }
    if (out.pass) out.detail = "all five representative patterns classified as tabulated";
    return out;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"potential descent and convergence bound", criterion_dynamics},
        {"equilibrium existence for leading-ones patterns", criterion_existence},
        {"congestion-game representation (exact utilities)", criterion_congestion},
        {"threshold-game mapping and floor-rule fixture", criterion_threshold},
        {"gadget contracts (exact and compositional)", criterion_gadgets},
        {"one-in-three reduction decision equivalence", criterion_reduction},
        {"solver, CNF, and enumeration agreement", criterion_agreement},
        {"pattern classification table", criterion_classification},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto started = std::chrono::steady_clock::now();
        const Outcome outcome = criteria[i].second();
        const double seconds = std::chrono::duration<double>(
                                   std::chrono::steady_clock::now() - started)
                                   .count();
        std::printf("[%zu/%zu] %-52s %s (%.1fs)%s%s\n", i + 1, criteria.size(),
                    criteria[i].first.c_str(), outcome.pass ? "PASS" : "FAIL", seconds,
                    outcome.detail.empty() ? "" : " - ", outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
