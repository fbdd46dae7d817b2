#include "pgg/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgg/cnf.hpp"
#include "pgg/congestion.hpp"
#include "pgg/dynamics.hpp"
#include "pgg/gadgets.hpp"
#include "pgg/game_io.hpp"
#include "pgg/generator.hpp"
#include "pgg/reduction.hpp"
#include "pgg/solver.hpp"
#include "pgg/util.hpp"

namespace pgg {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string digest(std::string_view data) {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(data)));
    return std::string("fnv1a:") + hex;
}

json classes_json(const Pattern& p) {
    json arr = json::array();
    for (const PatternClass& c : classify_pattern(p)) {
        arr.push_back({{"class", c.name}, {"verdict", c.verdict}});
    }
    return arr;
}

json profile_list_json(const std::vector<StrategyProfile>& profiles) {
    json arr = json::array();
    for (const auto& s : profiles) arr.push_back(s.to_string());
    return arr;
}

std::vector<Pattern> parse_pattern_list(const std::string& spec) {
    std::vector<Pattern> pool;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t comma = spec.find(',', start);
        const std::string tok = spec.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!tok.empty()) pool.push_back(parse_pattern(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (pool.empty()) throw std::invalid_argument("empty pattern list");
    return pool;
}

struct CommandContext {
    std::string command;
    std::string input_digest;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    json result;
    int status = 0;
    std::string note;  // one-line summary for stderr
};

void emit(const CommandContext& ctx, const std::vector<std::string>& args, std::ostream& out,
          std::ostream& err, std::chrono::steady_clock::time_point started) {
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    json report;
    report["command"] = ctx.command;
    report["argv"] = args;
    report["input_digest"] = ctx.input_digest;
    if (ctx.seed) report["seed"] = *ctx.seed;
    report["threads"] = ctx.threads;
    report["result"] = ctx.result;
    report["timing_ms"] = elapsed;
    out << report.dump(2) << "\n";
    if (!ctx.note.empty()) err << ctx.note << "\n";
}

void run_solve(CommandContext& ctx, const std::string& file, bool enumerate,
               std::optional<std::size_t> max_count, const std::string& method,
               const std::string& cnf_out, std::uint64_t budget) {
    const std::string text = read_file(file);
    ctx.input_digest = digest(text);
    const GameInstance game = parse_game(text);

    if (!cnf_out.empty()) {
        const CnfFormula f = export_cnf(game);
        std::ofstream out(cnf_out);
        if (!out) throw std::runtime_error("cannot write CNF file: " + cnf_out);
        write_dimacs(f, out);
        ctx.result["cnf_out"] = cnf_out;
        ctx.result["cnf_vars"] = f.num_vars;
        ctx.result["cnf_clauses"] = f.clauses.size();
    }

    SolveOptions options;
    options.node_budget = budget;
    if (method == "brute") options.method = SolveMethod::Brute;
    else if (method == "backtrack") options.method = SolveMethod::Backtrack;

    if (enumerate) {
        const auto all = enumerate_pne(game, max_count, ctx.threads);
        ctx.result["outcome"] = all.empty() ? "not_exists" : "exists";
        ctx.result["exists"] = !all.empty();
        ctx.result["count"] = all.size();
        ctx.result["profiles"] = profile_list_json(all);
        ctx.result["method"] = "enumerate";
        ctx.note = "equilibria: " + std::to_string(all.size());
        return;
    }

    const SolveResult res = decide_pne(game, options);
    ctx.result["nodes"] = res.nodes;
    ctx.result["method"] = res.method;
    switch (res.status) {
        case SolveStatus::Exists:
            ctx.result["outcome"] = "exists";
            ctx.result["exists"] = true;
            ctx.result["profile"] = res.witness->to_string();
            ctx.note = "equilibrium found";
            break;
        case SolveStatus::NotExists:
            ctx.result["outcome"] = "not_exists";
            ctx.result["exists"] = false;
            ctx.note = "no equilibrium";
            break;
        case SolveStatus::BudgetExceeded:
            ctx.result["outcome"] = "budget_exceeded";
            ctx.status = 3;
            ctx.note = "node budget exceeded";
            break;
    }
}

// With no explicit step cap, run to the potential bound when it exists and
// to a generous default otherwise (non-monotone patterns may cycle).
std::int64_t default_step_cap(const GameInstance& game) {
    try {
        return convergence_flip_bound(game);
    } catch (const std::invalid_argument&) {
        return 1000 * (game.size() + 1);
    }
}

void run_dynamics_cmd(CommandContext& ctx, const std::string& file, const std::string& init,
                      const std::string& schedule_name, std::uint64_t seed,
                      std::int64_t max_steps, bool want_trace) {
    const std::string text = read_file(file);
    ctx.input_digest = digest(text);
    const GameInstance game = parse_game(text);

    StrategyProfile start(static_cast<std::size_t>(game.size()));
    if (init == "all1") {
        start = StrategyProfile(static_cast<std::size_t>(game.size()), 1);
    } else if (init == "random") {
        Rng rng(seed);
        for (auto& b : start.bits) b = rng() & 1;
        ctx.seed = seed;
    }

    Schedule schedule;
    if (schedule_name == "roundrobin") schedule.kind = ScheduleKind::RoundRobin;
    else if (schedule_name == "random") {
        schedule.kind = ScheduleKind::UniformRandom;
        schedule.seed = seed;
        ctx.seed = seed;
    } else if (schedule_name == "first") schedule.kind = ScheduleKind::FirstViolator;
    else throw CLI::ValidationError("--schedule", "unknown schedule");

    if (max_steps < 0) max_steps = default_step_cap(game);

    const DynamicsTrace trace = run_dynamics(game, start, schedule, max_steps);
    ctx.result["converged"] = trace.converged;
    ctx.result["steps"] = trace.steps.size();
    ctx.result["initial_profile"] = trace.initial.to_string();
    ctx.result["final_profile"] = trace.final_profile.to_string();
    if (trace.potential_defined) {
        ctx.result["potential_series"] = trace.doubled_potential_series;
    }
    if (want_trace) {
        json steps = json::array();
        for (const DynamicsStep& st : trace.steps) {
            steps.push_back({{"vertex", st.v + 1}, {"bit", st.new_bit}});
        }
        ctx.result["trace"] = std::move(steps);
    }
    ctx.note = trace.converged ? "converged in " + std::to_string(trace.steps.size()) + " flips"
                               : "did not converge";
}

void run_gadget(CommandContext& ctx, const std::string& name, int k, int arity,
                const std::string& verify, const std::string& emit_path, int threads) {
    const auto kind = gadget_kind_from_name(name);
    if (!kind) throw CLI::ValidationError("gadget", "unknown gadget '" + name + "'");
    const Gadget gadget = build_gadget(*kind, k, arity);
    ctx.input_digest = digest(name + "/" + std::to_string(k) + "/" + std::to_string(arity));

    ctx.result["kind"] = gadget_kind_name(gadget.kind);
    ctx.result["k"] = gadget.k;
    ctx.result["arity"] = gadget.arity;
    ctx.result["vertices"] = gadget.num_vertices;
    ctx.result["edges"] = gadget.edges.size();
    json membrane = json::array();
    for (int m : gadget.membrane()) membrane.push_back(m + 1);
    ctx.result["membrane"] = std::move(membrane);

    if (!verify.empty()) {
        const VerifyMode mode =
            verify == "compositional" ? VerifyMode::Compositional : VerifyMode::Exact;
        const ContractReport report = verify_contract(gadget, default_contract(gadget), mode, threads);
        json v;
        v["mode"] = verify;
        v["pass"] = report.pass;
        v["restrictive"] = report.restrictive_ok;
        v["permissive"] = report.permissive_ok;
        v["safe"] = report.safe_ok;
        v["realized"] = report.realized_ok;
        v["states_visited"] = report.states_visited;
        if (!report.failure.empty()) v["failure"] = report.failure;
        ctx.result["verify"] = std::move(v);
        ctx.note = std::string("contract ") + (report.pass ? "holds" : "VIOLATED");
    }

    if (!emit_path.empty()) {
        GameInstance host(0);
        host.add_vertices(gadget.num_vertices, gadget.pattern());
        for (const auto& [u, v] : gadget.edges) host.add_edge(u, v);
        std::ofstream out(emit_path);
        if (!out) throw std::runtime_error("cannot write game file: " + emit_path);
        out << "# " << gadget_kind_name(gadget.kind) << " gadget, k=" << gadget.k << "\n";
        out << "# roles:";
        for (int v = 0; v < gadget.num_vertices; ++v) {
            const Role r = gadget.roles[static_cast<std::size_t>(v)];
            out << " " << v + 1
                << (r == Role::Operand ? ":operand" : r == Role::Membrane ? ":membrane" : ":internal");
        }
        out << "\n" << write_game(host);
        ctx.result["emitted"] = emit_path;
    }
}

void run_reduce(CommandContext& ctx, const std::string& sat_file, int k, const std::string& out_path,
                const std::string& cert_path, bool equiv_chain) {
    const std::string text = read_file(sat_file);
    ctx.input_digest = digest(text);
    const OneInThreeInstance inst = parse_one_in_three(text);
    const CompiledReduction red = compile_reduction(inst, k, equiv_chain);

    save_game(red.game, out_path);
    ctx.result["out"] = out_path;
    ctx.result["vertices"] = red.game.size();
    ctx.result["edges"] = red.game.edges().size();
    ctx.result["clauses"] = inst.clauses.size();
    ctx.result["gadgets"] = red.gadgets.size();
    if (!inst.unused_vars.empty()) {
        ctx.result["warning_unused_vars"] = inst.unused_vars;
    }
    if (!cert_path.empty()) {
        json cert = json::parse(certificate_to_json(red));
        cert["num_vars"] = inst.num_vars;
        json clauses = json::array();
        for (const auto& clause : inst.clauses) {
            clauses.push_back({clause[0].var, clause[1].var, clause[2].var});
        }
        cert["clauses"] = std::move(clauses);
        std::ofstream out(cert_path);
        if (!out) throw std::runtime_error("cannot write certificate: " + cert_path);
        out << cert.dump(2) << "\n";
        ctx.result["cert"] = cert_path;
    }
    ctx.note = "compiled " + std::to_string(inst.clauses.size()) + " clause(s) into " +
               std::to_string(red.game.size()) + " vertices";
}

void run_certify(CommandContext& ctx, const std::string& game_file, const std::string& cert_path,
                 const std::string& assignment) {
    const std::string text = read_file(game_file);
    ctx.input_digest = digest(text);
    const GameInstance game = parse_game(text);
    const std::string cert_text = read_file(cert_path);
    const json cert = json::parse(cert_text);

    OneInThreeInstance inst;
    inst.num_vars = cert.at("num_vars").get<int>();
    for (const auto& c : cert.at("clauses")) {
        inst.clauses.push_back({Literal{c.at(0).get<int>()}, Literal{c.at(1).get<int>()},
                                Literal{c.at(2).get<int>()}});
    }
    const CompiledReduction red = certificate_from_json(game, cert_text);

    std::vector<std::uint8_t> sigma;
    for (char c : assignment) {
        if (c != '0' && c != '1') throw ParseError("assignment must be a bit string", sigma.size());
        sigma.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    if (static_cast<int>(sigma.size()) != inst.num_vars) {
        throw std::invalid_argument("assignment length must equal the variable count");
    }

    try {
        const StrategyProfile profile = assignment_to_profile(red, inst, sigma);
        ctx.result["valid"] = true;
        ctx.result["profile"] = profile.to_string();
        ctx.note = "assignment extends to an equilibrium";
    } catch (const std::invalid_argument& e) {
        ctx.result["valid"] = false;
        ctx.result["reason"] = e.what();
        ctx.note = "assignment rejected";
    }
}

void run_threshold(CommandContext& ctx, const std::string& file, const std::string& out_path,
                   const std::string& rule_name) {
    const std::string text = read_file(file);
    ctx.input_digest = digest(text);
    const ThresholdGame t = parse_threshold_game(text);
    const KRule rule = rule_name == "floor" ? KRule::Floor : KRule::FloorPlusOne;
    const auto [game, mapping] = threshold_to_pgg(t, rule);
    save_game(game, out_path);
    ctx.result["out"] = out_path;
    ctx.result["n"] = t.n;
    ctx.result["k_rule"] = rule_name;
    ctx.result["k"] = mapping.k;
    ctx.result["mapping"] = "bit 1 <-> in";
    ctx.note = "wrote " + out_path;
}

void run_congestion(CommandContext& ctx, const std::string& file, std::uint64_t samples,
                    std::uint64_t seed, int exhaustive_n) {
    const std::string text = read_file(file);
    ctx.input_digest = digest(text);
    ctx.seed = seed;
    const GameInstance game = parse_game(text);
    const IsomorphismReport report = verify_isomorphism(game, samples, seed, exhaustive_n);
    ctx.result["ok"] = report.ok;
    ctx.result["profiles_checked"] = report.profiles_checked;
    ctx.result["exhaustive"] = report.exhaustive;
    ctx.result["pne_sets_compared"] = report.pne_sets_compared;
    if (report.pne_sets_compared) {
        ctx.result["pne_sets_equal"] = report.pne_sets_equal;
        ctx.result["pne_count"] = report.pne_count;
    }
    if (!report.failure.empty()) ctx.result["failure"] = report.failure;
    ctx.note = report.ok ? "utilities match exactly" : "MISMATCH: " + report.failure;
}

void run_gen(CommandContext& ctx, const std::string& model, int n, const std::string& p_spec,
             std::int64_t wmax, const std::string& patterns_spec, std::uint64_t seed,
             const std::string& out_path) {
    ctx.seed = seed;
    ctx.input_digest = digest(model + "/" + std::to_string(n) + "/" + p_spec + "/" +
                              std::to_string(wmax) + "/" + patterns_spec + "/" +
                              std::to_string(seed));
    const auto pool = parse_pattern_list(patterns_spec);
    GameInstance game;
    if (model == "gnp") {
        Rat p;
        try {
            p = parse_rat(p_spec);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--p", "expected a rational like 1/2");
        }
        game = generate_gnp(n, p, pool, seed);
    } else if (model == "complete") {
        game = generate_complete_weighted(n, wmax, pool, seed);
    } else {
        throw CLI::ValidationError("--model", "expected gnp or complete");
    }
    ctx.result["n"] = game.size();
    ctx.result["edges"] = game.edges().size();
    if (out_path.empty()) {
        ctx.result["game"] = write_game(game);
    } else {
        save_game(game, out_path);
        ctx.result["out"] = out_path;
    }
    ctx.note = "generated " + std::to_string(game.size()) + " vertices, " +
               std::to_string(game.edges().size()) + " edges";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();
    CLI::App app{"binary public goods games: equilibria, dynamics, reductions"};
    app.require_subcommand(1);
    CommandContext ctx;
    app.add_option("--threads", ctx.threads, "worker cap for profile enumeration")
        ->default_val(1)
        ->check(CLI::PositiveNumber);

    // classify
    std::string pattern_text;
    auto* classify = app.add_subcommand("classify", "pattern class and complexity verdict");
    classify->add_option("pattern", pattern_text, "pattern, e.g. \"10*\" or \"(10)*\"")->required();

    // solve
    std::string solve_file, solve_method = "auto", cnf_out;
    bool solve_enum = false;
    std::optional<std::size_t> solve_max_count;
    std::uint64_t solve_budget = 10'000'000;
    auto* solve = app.add_subcommand("solve", "decide equilibrium existence");
    solve->add_option("file", solve_file, "game file")->required();
    solve->add_flag("--enumerate", solve_enum, "list all equilibria (n <= 30)");
    solve->add_option("--max-count", solve_max_count, "truncate enumeration");
    solve->add_option("--method", solve_method, "auto|brute|backtrack")
        ->check(CLI::IsMember({"auto", "brute", "backtrack"}));
    solve->add_option("--cnf-out", cnf_out, "also write a DIMACS encoding");
    solve->add_option("--budget", solve_budget, "search node budget");

    // dynamics
    std::string dyn_file, dyn_init = "all0", dyn_schedule = "roundrobin";
    std::uint64_t dyn_seed = 0;
    std::int64_t dyn_max_steps = -1;
    bool dyn_trace = false;
    auto* dynamics = app.add_subcommand("dynamics", "run better-response dynamics");
    dynamics->add_option("file", dyn_file, "game file")->required();
    dynamics->add_option("--init", dyn_init, "all0|all1|random")
        ->check(CLI::IsMember({"all0", "all1", "random"}));
    dynamics->add_option("--schedule", dyn_schedule, "roundrobin|random|first")
        ->check(CLI::IsMember({"roundrobin", "random", "first"}));
    dynamics->add_option("--seed", dyn_seed, "seed for random schedule/init");
    dynamics->add_option("--max-steps", dyn_max_steps, "flip limit (default: potential bound)");
    dynamics->add_flag("--trace", dyn_trace, "include the flip sequence");

    // gadget
    std::string gadget_name, gadget_verify, gadget_emit;
    int gadget_k = 1, gadget_arity = 0;
    auto* gadget = app.add_subcommand("gadget", "build and verify graph gadgets");
    gadget->add_option("name", gadget_name, "near-or|true|false|equiv|clause")->required();
    gadget->add_option("--k", gadget_k, "pattern parameter")->required()->check(CLI::PositiveNumber);
    gadget->add_option("--arity", gadget_arity, "operand count (near-or only)");
    gadget->add_option("--verify", gadget_verify, "exact|compositional")
        ->check(CLI::IsMember({"exact", "compositional"}));
    gadget->add_option("--emit", gadget_emit, "write the gadget as a game file");

    // reduce
    std::string reduce_file, reduce_out, reduce_cert;
    int reduce_k = 1;
    bool reduce_chain = false;
    auto* reduce = app.add_subcommand("reduce", "compile a 1-in-3 instance to a game");
    reduce->add_option("file", reduce_file, "1-in-3 instance file")->required();
    reduce->add_option("--k", reduce_k, "pattern parameter")->required()->check(CLI::PositiveNumber);
    reduce->add_option("-o,--out", reduce_out, "output game file")->required();
    reduce->add_option("--cert", reduce_cert, "write the certificate map as JSON");
    reduce->add_flag("--equiv-chain", reduce_chain, "chain equal occurrences instead of all pairs");

    // certify
    std::string certify_game, certify_cert, certify_assignment;
    auto* certify = app.add_subcommand("certify", "extend an assignment to an equilibrium");
    certify->add_option("file", certify_game, "compiled game file")->required();
    certify->add_option("--cert", certify_cert, "certificate JSON from reduce")->required();
    certify->add_option("--assignment", certify_assignment, "truth assignment bits")->required();

    // threshold
    std::string thr_file, thr_out, thr_rule = "floor-plus-one";
    auto* threshold = app.add_subcommand("threshold", "map a threshold game to a weighted game");
    threshold->add_option("file", thr_file, "threshold game file")->required();
    threshold->add_option("-o,--out", thr_out, "output game file")->required();
    threshold->add_option("--k-rule", thr_rule, "floor|floor-plus-one")
        ->check(CLI::IsMember({"floor", "floor-plus-one"}));

    // congestion
    std::string cong_file;
    std::uint64_t cong_samples = 1000, cong_seed = 0;
    int cong_exhaustive = 12;
    auto* congestion = app.add_subcommand("congestion", "check the congestion-game representation");
    congestion->add_option("file", cong_file, "game file")->required();
    congestion->add_option("--check-samples", cong_samples, "random profiles to check");
    congestion->add_option("--seed", cong_seed, "sampling seed");
    congestion->add_option("--exhaustive-n", cong_exhaustive, "full profile sweep up to this n");

    // gen
    std::string gen_model = "gnp", gen_p = "1/2", gen_patterns = "10*", gen_out;
    int gen_n = 1;
    std::int64_t gen_wmax = 1;
    std::uint64_t gen_seed = 0;
    auto* gen = app.add_subcommand("gen", "generate a random game");
    gen->add_option("--model", gen_model, "gnp|complete");
    gen->add_option("--n", gen_n, "vertex count")->required()->check(CLI::PositiveNumber);
    gen->add_option("--p", gen_p, "edge probability as a rational (gnp)");
    gen->add_option("--wmax", gen_wmax, "maximum edge weight (complete)");
    gen->add_option("--patterns", gen_patterns, "comma-separated pattern pool");
    gen->add_option("--seed", gen_seed, "generation seed");
    gen->add_option("-o,--out", gen_out, "output game file (default: inline)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (classify->parsed()) {
            ctx.command = "classify";
            ctx.input_digest = digest(pattern_text);
            const Pattern p = parse_pattern(pattern_text);
            ctx.result["pattern"] = p.to_string();
            ctx.result["classes"] = classes_json(p);
            ctx.note = "canonical form: " + p.to_string();
        } else if (solve->parsed()) {
            ctx.command = "solve";
            run_solve(ctx, solve_file, solve_enum, solve_max_count, solve_method, cnf_out,
                      solve_budget);
        } else if (dynamics->parsed()) {
            ctx.command = "dynamics";
            run_dynamics_cmd(ctx, dyn_file, dyn_init, dyn_schedule, dyn_seed, dyn_max_steps,
                             dyn_trace);
        } else if (gadget->parsed()) {
            ctx.command = "gadget";
            run_gadget(ctx, gadget_name, gadget_k, gadget_arity, gadget_verify, gadget_emit, ctx.threads);
        } else if (reduce->parsed()) {
            ctx.command = "reduce";
            run_reduce(ctx, reduce_file, reduce_k, reduce_out, reduce_cert, reduce_chain);
        } else if (certify->parsed()) {
            ctx.command = "certify";
            run_certify(ctx, certify_game, certify_cert, certify_assignment);
        } else if (threshold->parsed()) {
            ctx.command = "threshold";
            run_threshold(ctx, thr_file, thr_out, thr_rule);
        } else if (congestion->parsed()) {
            ctx.command = "congestion";
            run_congestion(ctx, cong_file, cong_samples, cong_seed, cong_exhaustive);
        } else if (gen->parsed()) {
            ctx.command = "gen";
            run_gen(ctx, gen_model, gen_n, gen_p, gen_wmax, gen_patterns, gen_seed, gen_out);
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    emit(ctx, args, out, err, started);
    return ctx.status;
}

}  // namespace pgg
