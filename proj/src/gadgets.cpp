#include "pgg/gadgets.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <stdexcept>

#include "pgg/util.hpp"

namespace pgg {

const char* gadget_kind_name(GadgetKind k) {
    switch (k) {
        case GadgetKind::NearOr: return "near-or";
        case GadgetKind::True: return "true";
        case GadgetKind::False: return "false";
        case GadgetKind::Equiv: return "equiv";
        case GadgetKind::Clause: return "clause";
    }
    return "?";
}

std::optional<GadgetKind> gadget_kind_from_name(std::string_view name) {
    if (name == "near-or") return GadgetKind::NearOr;
    if (name == "true") return GadgetKind::True;
    if (name == "false") return GadgetKind::False;
    if (name == "equiv") return GadgetKind::Equiv;
    if (name == "clause") return GadgetKind::Clause;
    return std::nullopt;
}

Pattern Gadget::pattern() const { return picky_pattern(k); }

std::vector<int> Gadget::operands() const {
    std::vector<int> out(static_cast<std::size_t>(arity));
    std::iota(out.begin(), out.end(), 0);
    return out;
}

std::vector<int> Gadget::membrane() const {
    std::vector<int> out;
    for (int v = 0; v < num_vertices; ++v) {
        if (roles[static_cast<std::size_t>(v)] == Role::Membrane) out.push_back(v);
    }
    return out;
}

namespace {

// Incremental gadget assembly; operands are created first by the caller.
struct Builder {
    Gadget g;

    int add(Role role, std::optional<std::uint8_t> witness = std::nullopt) {
        g.roles.push_back(role);
        g.witness_base.push_back(witness);
        return g.num_vertices++;
    }

    void edge(int u, int v) { g.edges.emplace_back(u, v); }

    // Copies `part` with its operand slots identified with existing ids and
    // everything else appended fresh. Returns the id remap.
    std::vector<int> splice(const Gadget& part, const std::vector<int>& operand_ids) {
        std::vector<int> remap(static_cast<std::size_t>(part.num_vertices), -1);
        for (int i = 0; i < part.arity; ++i) remap[static_cast<std::size_t>(i)] = operand_ids[static_cast<std::size_t>(i)];
        for (int v = part.arity; v < part.num_vertices; ++v) {
            remap[static_cast<std::size_t>(v)] =
                add(Role::Internal, part.witness_base[static_cast<std::size_t>(v)]);
        }
        for (const auto& [u, v] : part.edges) {
            edge(remap[static_cast<std::size_t>(u)], remap[static_cast<std::size_t>(v)]);
        }
        return remap;
    }

    std::vector<int> covered_by(const std::vector<int>& remap, const Gadget& part) const {
        std::vector<int> out;
        for (int v = part.arity; v < part.num_vertices; ++v) {
            out.push_back(remap[static_cast<std::size_t>(v)]);
        }
        return out;
    }
};

Gadget build_near_or(int k, int arity, GadgetKind kind) {
    Builder b;
    b.g.kind = kind;
    b.g.k = k;
    b.g.arity = arity;
    for (int i = 0; i < arity; ++i) b.add(Role::Operand);

    const int w = b.add(Role::Membrane, 0);
    for (int i = 0; i < arity; ++i) b.edge(i, w);

    if (k == 1) {
        // 3-sun: inner triangle y,z,q; outer corners w,y',z'.
        const int y = b.add(Role::Internal, 0);
        const int z = b.add(Role::Internal, 0);
        const int yp = b.add(Role::Internal, 0);
        const int q = b.add(Role::Internal, 1);
        const int zp = b.add(Role::Internal, 0);
        b.edge(w, y);
        b.edge(y, yp);
        b.edge(yp, q);
        b.edge(q, y);
        b.edge(y, z);
        b.edge(z, q);
        b.edge(q, zp);
        b.edge(zp, z);
        b.edge(z, w);
    } else {
        // Triangle w,y,z with k pendant leaves on y and on z.
        const int y = b.add(Role::Internal, 0);
        const int z = b.add(Role::Internal, 0);
        b.edge(w, y);
        b.edge(y, z);
        b.edge(z, w);
        for (int i = 0; i < k; ++i) b.edge(y, b.add(Role::Internal, 1));
        for (int i = 0; i < k; ++i) b.edge(z, b.add(Role::Internal, 1));
    }
    return std::move(b.g);
}

Gadget build_false(int k) {
    Builder b;
    b.g.kind = GadgetKind::False;
    b.g.k = k;
    b.g.arity = 1;
    const int x = b.add(Role::Operand);

    std::vector<int> outer_operands{x};
    std::vector<int> forced_true;
    for (int i = 0; i < k; ++i) {
        const int y = b.add(Role::Internal, 1);
        outer_operands.push_back(y);
        forced_true.push_back(y);
    }
    // The (k+1)-ary near-or sees x plus k always-active companions, so x
    // active would put the operand sum at the forbidden k+1.
    const Gadget outer = build_near_or(k, k + 1, GadgetKind::NearOr);
    const auto outer_remap = b.splice(outer, outer_operands);
    b.g.roles[static_cast<std::size_t>(outer_remap[static_cast<std::size_t>(k + 1)])] = Role::Membrane;

    const Gadget companion = build_near_or(k, 1, GadgetKind::True);
    for (int y : forced_true) {
        const auto remap = b.splice(companion, {y});
        auto covered = b.covered_by(remap, companion);
        covered.push_back(y);
        b.g.subs.push_back({GadgetKind::True, y, std::move(covered)});
    }
    return std::move(b.g);
}

Gadget build_equiv(int k) {
    Builder b;
    b.g.kind = GadgetKind::Equiv;
    b.g.k = k;
    b.g.arity = 2;
    const int x1 = b.add(Role::Operand);
    const int x2 = b.add(Role::Operand);
    const int y = b.add(Role::Membrane, 0);
    b.edge(y, x1);
    b.edge(y, x2);

    const Gadget forcer = build_false(k);
    const auto false_remap = b.splice(forcer, {y});
    {
        auto covered = b.covered_by(false_remap, forcer);
        covered.push_back(y);
        b.g.subs.push_back({GadgetKind::False, y, std::move(covered)});
    }

    const Gadget companion = build_near_or(k, 1, GadgetKind::True);
    for (int i = 0; i < k; ++i) {
        const int z = b.add(Role::Internal, 1);
        b.edge(y, z);
        const auto remap = b.splice(companion, {z});
        auto covered = b.covered_by(remap, companion);
        covered.push_back(z);
        b.g.subs.push_back({GadgetKind::True, z, std::move(covered)});
    }
    return std::move(b.g);
}

Gadget build_clause(int k) {
    Builder b;
    b.g.kind = GadgetKind::Clause;
    b.g.k = k;
    b.g.arity = 3;
    const int t1 = b.add(Role::Operand);
    const int t2 = b.add(Role::Operand);
    const int t3 = b.add(Role::Operand);

    if (k >= 2) {
        b.edge(t1, t2);
        b.edge(t2, t3);
        b.edge(t3, t1);
        return std::move(b.g);
    }

    const Gadget near_or = build_near_or(1, 3, GadgetKind::NearOr);
    const auto remap = b.splice(near_or, {t1, t2, t3});
    // the near-or membrane sits next to the operands here as well
    b.g.roles[static_cast<std::size_t>(remap[3])] = Role::Membrane;

    // Three parallel length-2 paths between each operand pair; witness
    // values depend on which operand is active, so they stay unset here.
    auto add_paths = [&](int a, int c) {
        std::vector<int> inner;
        for (int i = 0; i < 3; ++i) {
            const int p = b.add(Role::Membrane);
            b.edge(a, p);
            b.edge(p, c);
            inner.push_back(p);
        }
        return inner;
    };
    b.g.path_group[0] = add_paths(t2, t3);
    b.g.path_group[1] = add_paths(t1, t3);
    b.g.path_group[2] = add_paths(t1, t2);
    return std::move(b.g);
}

}  // namespace

Gadget build_gadget(GadgetKind kind, int k, int arity) {
    if (k < 1) throw std::invalid_argument("build_gadget: k must be >= 1");
    switch (kind) {
        case GadgetKind::NearOr:
            if (arity < 1) throw std::invalid_argument("build_gadget: near-or needs arity >= 1");
            return build_near_or(k, arity, GadgetKind::NearOr);
        case GadgetKind::True:
            if (arity > 1) throw std::invalid_argument("build_gadget: true gadget has one operand");
            return build_near_or(k, 1, GadgetKind::True);
        case GadgetKind::False:
            if (arity > 1) throw std::invalid_argument("build_gadget: false gadget has one operand");
            return build_false(k);
        case GadgetKind::Equiv:
            if (arity && arity != 2) throw std::invalid_argument("build_gadget: equiv has two operands");
            return build_equiv(k);
        case GadgetKind::Clause:
            if (arity && arity != 3) throw std::invalid_argument("build_gadget: clause has three operands");
            return build_clause(k);
    }
    throw std::invalid_argument("build_gadget: unknown kind");
}

std::vector<std::uint8_t> witness_completion(const Gadget& g,
                                             const std::vector<std::uint8_t>& operand_bits) {
    if (static_cast<int>(operand_bits.size()) != g.arity) {
        throw std::invalid_argument("witness_completion: operand arity mismatch");
    }
    std::vector<std::uint8_t> out(static_cast<std::size_t>(g.num_vertices), 0);
    for (int i = 0; i < g.arity; ++i) out[static_cast<std::size_t>(i)] = operand_bits[static_cast<std::size_t>(i)];
    for (int v = g.arity; v < g.num_vertices; ++v) {
        if (g.witness_base[static_cast<std::size_t>(v)]) {
            out[static_cast<std::size_t>(v)] = *g.witness_base[static_cast<std::size_t>(v)];
        }
    }
    if (g.kind == GadgetKind::Clause && g.k == 1) {
        const int active =
            static_cast<int>(std::find(operand_bits.begin(), operand_bits.end(), 1) -
                             operand_bits.begin());
        if (active >= 3 || std::count(operand_bits.begin(), operand_bits.end(), 1) != 1) {
            throw std::invalid_argument("witness_completion: clause needs a one-hot operand vector");
        }
        for (int p : g.path_group[static_cast<std::size_t>(active)]) {
            out[static_cast<std::size_t>(p)] = 1;
        }
    }
    return out;
}

bool GadgetContract::allows(const std::vector<std::uint8_t>& operand_bits) const {
    if (allowed_vectors) return allowed_vectors->count(operand_bits) > 0;
    const int sum = static_cast<int>(std::count(operand_bits.begin(), operand_bits.end(), 1));
    return allowed_sums && allowed_sums->count(sum) > 0;
}

GadgetContract default_contract(const Gadget& g) {
    GadgetContract c;
    switch (g.kind) {
        case GadgetKind::NearOr:
        case GadgetKind::True: {
            std::set<int> sums;
            for (int s = 1; s <= g.arity; ++s) {
                if (s != g.k + 1) sums.insert(s);
            }
            c.allowed_sums = std::move(sums);
            c.safe = true;
            break;
        }
        case GadgetKind::False:
            c.allowed_sums = std::set<int>{0};
            c.safe = true;
            break;
        case GadgetKind::Equiv:
            c.allowed_vectors = std::set<std::vector<std::uint8_t>>{{0, 0}, {1, 1}};
            c.safe = true;
            break;
        case GadgetKind::Clause:
            c.allowed_vectors = std::set<std::vector<std::uint8_t>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
            c.standalone = true;
            break;
    }
    return c;
}

namespace {

// The verification graph: a subset of gadget vertices with some values
// pinned in advance.
struct VerifyGraph {
    std::vector<int> vertices;              // kept gadget-local ids
    std::vector<int> index;                 // gadget-local id -> kept index, -1 if dropped
    std::vector<std::vector<int>> adjacency;  // by kept index
    std::vector<int> pinned;                // by kept index: -1 free, else value
    std::vector<bool> required;             // must best-respond
    std::vector<bool> is_membrane;
    std::vector<bool> is_operand;
};

VerifyGraph make_verify_graph(const Gadget& g, VerifyMode mode, bool standalone) {
    VerifyGraph vg;
    std::vector<bool> dropped(static_cast<std::size_t>(g.num_vertices), false);
    std::vector<int> forced(static_cast<std::size_t>(g.num_vertices), -1);
    if (mode == VerifyMode::Compositional) {
        if (g.subs.empty()) {
            throw std::invalid_argument(
                "verify_contract: gadget has no abstractable children for compositional mode");
        }
        for (const SubGadget& sub : g.subs) {
            for (int v : sub.covered) {
                if (v != sub.operand) dropped[static_cast<std::size_t>(v)] = true;
            }
            forced[static_cast<std::size_t>(sub.operand)] = sub.kind == GadgetKind::True ? 1 : 0;
        }
    }

    vg.index.assign(static_cast<std::size_t>(g.num_vertices), -1);
    for (int v = 0; v < g.num_vertices; ++v) {
        if (dropped[static_cast<std::size_t>(v)]) continue;
        vg.index[static_cast<std::size_t>(v)] = static_cast<int>(vg.vertices.size());
        vg.vertices.push_back(v);
    }
    const std::size_t kept = vg.vertices.size();
    vg.adjacency.resize(kept);
    vg.pinned.assign(kept, -1);
    vg.required.assign(kept, false);
    vg.is_membrane.assign(kept, false);
    vg.is_operand.assign(kept, false);

    for (const auto& [u, v] : g.edges) {
        const int iu = vg.index[static_cast<std::size_t>(u)];
        const int iv = vg.index[static_cast<std::size_t>(v)];
        if (iu < 0 || iv < 0) continue;
        vg.adjacency[static_cast<std::size_t>(iu)].push_back(iv);
        vg.adjacency[static_cast<std::size_t>(iv)].push_back(iu);
    }
    for (std::size_t i = 0; i < kept; ++i) {
        const int v = vg.vertices[i];
        const bool operand = v < g.arity;
        vg.is_operand[i] = operand;
        vg.is_membrane[i] = g.roles[static_cast<std::size_t>(v)] == Role::Membrane;
        vg.required[i] = operand ? standalone : true;
        if (!operand) vg.pinned[i] = forced[static_cast<std::size_t>(v)];
    }
    return vg;
}

// Enumerates completions of one operand vector with chronological
// backtracking; constraints fire as soon as a vertex's closed neighborhood
// is assigned.
class CompletionCounter {
public:
    CompletionCounter(const VerifyGraph& vg, const Pattern& pattern)
        : vg_(vg), pattern_(pattern) {
        const std::size_t kept = vg.vertices.size();
        values_.assign(kept, -1);
        for (std::size_t i = 0; i < kept; ++i) {
            if (vg.is_operand[i]) continue;
            free_order_.push_back(static_cast<int>(i));
        }
        // depth of i = position in free_order_, operands = -1 (pre-assigned)
        std::vector<int> depth(kept, -1);
        for (std::size_t d = 0; d < free_order_.size(); ++d) {
            depth[static_cast<std::size_t>(free_order_[d])] = static_cast<int>(d);
        }
        checks_at_.assign(free_order_.size() + 1, {});
        for (std::size_t i = 0; i < kept; ++i) {
            if (!vg.required[i]) continue;
            int ready = depth[i];
            for (int u : vg.adjacency[i]) ready = std::max(ready, depth[static_cast<std::size_t>(u)]);
            checks_at_[static_cast<std::size_t>(ready + 1)].push_back(static_cast<int>(i));
        }
    }

    struct Result {
        std::uint64_t completions = 0;
        std::uint64_t clean = 0;  // membrane all zero
        std::uint64_t visited = 0;
    };

    Result count(const std::vector<std::uint8_t>& operand_bits) {
        for (std::size_t i = 0; i < vg_.vertices.size(); ++i) {
            if (vg_.is_operand[i]) values_[i] = operand_bits[static_cast<std::size_t>(vg_.vertices[i])];
        }
        result_ = {};
        if (run_checks(0)) descend(0);
        return result_;
    }

    // Validates one specific full assignment of the kept vertices.
    bool valid_completion(const std::vector<std::uint8_t>& full_local) {
        for (std::size_t i = 0; i < vg_.vertices.size(); ++i) {
            const int v = vg_.vertices[i];
            values_[i] = full_local[static_cast<std::size_t>(v)];
            if (vg_.pinned[i] >= 0 && values_[i] != vg_.pinned[i]) return false;
        }
        for (std::size_t i = 0; i < vg_.vertices.size(); ++i) {
            if (vg_.required[i] && !best_responds(static_cast<int>(i))) return false;
        }
        return true;
    }

private:
    bool best_responds(int i) const {
        std::int64_t degree = 0;
        for (int u : vg_.adjacency[static_cast<std::size_t>(i)]) {
            degree += values_[static_cast<std::size_t>(u)];
        }
        return pattern_.at(degree) == values_[static_cast<std::size_t>(i)];
    }

    bool run_checks(std::size_t level) {
        for (int i : checks_at_[level]) {
            if (!best_responds(i)) return false;
        }
        return true;
    }

    void descend(std::size_t depth) {
        ++result_.visited;
        if (depth == free_order_.size()) {
            ++result_.completions;
            bool clean = true;
            for (std::size_t i = 0; i < vg_.vertices.size() && clean; ++i) {
                clean = !vg_.is_membrane[i] || values_[i] == 0;
            }
            if (clean) ++result_.clean;
            return;
        }
        const auto i = static_cast<std::size_t>(free_order_[depth]);
        const int pin = vg_.pinned[i];
        for (int b = 0; b <= 1; ++b) {
            if (pin >= 0 && b != pin) continue;
            values_[i] = b;
            if (run_checks(depth + 1)) descend(depth + 1);
        }
        values_[i] = -1;
    }

    const VerifyGraph& vg_;
    const Pattern& pattern_;
    std::vector<int> values_;
    std::vector<int> free_order_;
    std::vector<std::vector<int>> checks_at_;
    Result result_;
};

}  // namespace

ContractReport verify_contract(const Gadget& g, const GadgetContract& contract, VerifyMode mode,
                               int threads) {
    ContractReport report;
    report.mode = mode;
    const VerifyGraph vg = make_verify_graph(g, mode, contract.standalone);
    if (mode == VerifyMode::Exact && vg.vertices.size() > 30) {
        throw CapacityError("verify_contract: exact mode capped at 30 vertices, gadget has " +
                            std::to_string(vg.vertices.size()));
    }
    const Pattern pattern = g.pattern();

    report.restrictive_ok = true;
    report.permissive_ok = true;
    report.safe_ok = true;
    report.realized_ok = true;

    const std::uint64_t vectors = std::uint64_t{1} << g.arity;
    auto operand_bits = [&](std::uint64_t mask) {
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(g.arity));
        for (int i = 0; i < g.arity; ++i) bits[static_cast<std::size_t>(i)] = (mask >> i) & 1;
        return bits;
    };

    // Count completions per operand vector, optionally across workers; the
    // rest of the evaluation merges in vector order.
    std::vector<CompletionCounter::Result> counts(vectors);
    if (threads <= 1 || vectors < 4) {
        CompletionCounter counter(vg, pattern);
        for (std::uint64_t mask = 0; mask < vectors; ++mask) {
            counts[mask] = counter.count(operand_bits(mask));
        }
    } else {
        const auto workers = static_cast<std::uint64_t>(threads);
        const std::uint64_t chunk = (vectors + workers - 1) / workers;
        std::vector<std::future<void>> futures;
        for (std::uint64_t lo = 0; lo < vectors; lo += chunk) {
            const std::uint64_t hi = std::min(vectors, lo + chunk);
            futures.push_back(std::async(std::launch::async, [&, lo, hi] {
                CompletionCounter counter(vg, pattern);
                for (std::uint64_t mask = lo; mask < hi; ++mask) {
                    counts[mask] = counter.count(operand_bits(mask));
                }
            }));
        }
        for (auto& f : futures) f.get();
    }

    CompletionCounter counter(vg, pattern);
    for (std::uint64_t mask = 0; mask < vectors; ++mask) {
        OperandVectorStat stat;
        stat.bits = operand_bits(mask);
        stat.allowed = contract.allows(stat.bits);

        stat.completions = counts[mask].completions;
        stat.clean_completions = counts[mask].clean;
        report.states_visited += counts[mask].visited;

        if (!stat.allowed && stat.completions > 0) {
            report.restrictive_ok = false;
            if (report.failure.empty()) {
                report.failure = "disallowed operand vector admits a completion";
            }
        }
        if (stat.allowed) {
            // Interface gadgets must extend while keeping the membrane quiet;
            // a standalone gadget only needs the vector realized.
            const std::uint64_t usable =
                contract.standalone ? stat.completions : stat.clean_completions;
            if (usable == 0) {
                report.permissive_ok = false;
                if (report.failure.empty()) {
                    report.failure = "allowed operand vector has no usable completion";
                }
            }
            // The transcribed proof completion must itself check out; a
            // failure here points at the construction, not the search.
            std::vector<std::uint8_t> witness = witness_completion(g, stat.bits);
            stat.witness_checked = true;
            stat.witness_ok = counter.valid_completion(witness);
            if (!contract.standalone) {
                for (int m : g.membrane()) {
                    stat.witness_ok = stat.witness_ok && witness[static_cast<std::size_t>(m)] == 0;
                }
            }
            if (!stat.witness_ok) {
                report.permissive_ok = false;
                if (report.failure.empty()) report.failure = "transcribed witness is not a completion";
            }
        }
        if (contract.safe && stat.clean_completions != stat.completions) {
            report.safe_ok = false;
            if (report.failure.empty()) report.failure = "a completion activates a membrane vertex";
        }
        if (contract.standalone && (stat.completions > 0) != stat.allowed) {
            report.realized_ok = false;
            if (report.failure.empty()) report.failure = "realized operand vectors differ from contract";
        }
        report.vectors.push_back(std::move(stat));
    }

    report.pass = report.restrictive_ok && report.permissive_ok &&
                  (!contract.safe || report.safe_ok) && report.realized_ok;
    return report;
}

GameInstance attach_gadget(const GameInstance& host, const Gadget& gadget,
                           const std::vector<int>& operand_hosts, Attachment* record) {
    if (static_cast<int>(operand_hosts.size()) != gadget.arity) {
        throw std::invalid_argument("attach_gadget: operand count mismatch");
    }
    std::vector<int> sorted = operand_hosts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("attach_gadget: operand map must be injective");
    }
    const Pattern pattern = gadget.pattern();
    for (int h : operand_hosts) {
        if (h < 0 || h >= host.size()) throw std::invalid_argument("attach_gadget: host vertex out of range");
    }
    for (Vertex v = 0; v < host.size(); ++v) {
        if (!(host.pattern(v) == pattern)) {
            throw std::invalid_argument("attach_gadget: host pattern differs from gadget pattern");
        }
    }

    GameInstance out = host;
    const int fresh_base = host.size();
    out.add_vertices(gadget.num_vertices - gadget.arity, pattern);
    auto to_host = [&](int local) {
        return local < gadget.arity ? operand_hosts[static_cast<std::size_t>(local)]
                                    : fresh_base + (local - gadget.arity);
    };
    for (const auto& [u, v] : gadget.edges) {
        out.add_edge(to_host(u), to_host(v));
    }
    if (record) {
        record->kind = gadget.kind;
        record->k = gadget.k;
        record->arity = gadget.arity;
        record->operand_hosts = operand_hosts;
        record->fresh_base = fresh_base;
        record->fresh_count = gadget.num_vertices - gadget.arity;
    }
    return out;
}

int attached_vertex(const Attachment& a, int local) {
    return local < a.arity ? a.operand_hosts[static_cast<std::size_t>(local)]
                           : a.fresh_base + (local - a.arity);
}

}  // namespace pgg
