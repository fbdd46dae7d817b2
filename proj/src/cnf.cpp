#include "pgg/cnf.hpp"

#include <ostream>
#include <sstream>

namespace pgg {

namespace {

// Sequential counter with full equivalences: ge[i][j] <-> (at least j of the
// first i slot literals are true), 1 <= j <= i. Both polarities are needed
// because the degree constraints use the counters negatively as well.
struct CounterBuilder {
    CnfFormula& f;
    std::vector<int> slots;          // slot literal = variable of the neighbor
    std::vector<std::vector<int>> ge;  // ge[i][j], i >= 1, j in [1, i]

    void build() {
        const std::size_t m = slots.size();
        ge.assign(m + 1, {});
        for (std::size_t i = 1; i <= m; ++i) {
            ge[i].assign(i + 1, 0);
            for (std::size_t j = 1; j <= i; ++j) ge[i][j] = ++f.num_vars;
        }
        for (std::size_t i = 1; i <= m; ++i) {
            const int s = slots[i - 1];
            for (std::size_t j = 1; j <= i; ++j) {
                const int c = ge[i][j];
                // c <-> p | (q & s) with p = ge[i-1][j] (constant false when
                // j > i-1) and q = ge[i-1][j-1] (constant true when j == 1).
                const int p = j <= i - 1 ? ge[i - 1][j] : 0;
                if (j == 1) {
                    if (p) {
                        f.clauses.push_back({-c, p, s});
                        f.clauses.push_back({c, -p});
                        f.clauses.push_back({c, -s});
                    } else {  // i == 1: c <-> s
                        f.clauses.push_back({-c, s});
                        f.clauses.push_back({c, -s});
                    }
                    continue;
                }
                const int q = ge[i - 1][j - 1];
                if (p) {
                    f.clauses.push_back({-c, p, q});
                    f.clauses.push_back({-c, p, s});
                    f.clauses.push_back({c, -p});
                    f.clauses.push_back({c, -q, -s});
                } else {  // j == i: c <-> q & s
                    f.clauses.push_back({-c, q});
                    f.clauses.push_back({-c, s});
                    f.clauses.push_back({c, -q, -s});
                }
            }
        }
    }

    // Literal for "total >= j"; j == 0 is constant true (returns -1),
    // j > m is constant false (returns 0).
    int total_ge(std::size_t j) const {
        if (j == 0) return -1;
        if (j > slots.size()) return 0;
        return ge[slots.size()][j];
    }
};

}  // namespace

CnfFormula export_cnf(const GameInstance& g) {
    CnfFormula f;
    f.num_vertices = g.size();
    f.num_vars = g.size();

    for (Vertex v = 0; v < g.size(); ++v) {
        const int var = f.vertex_var(v);
        std::vector<int> slots;
        for (const auto& [u, w] : g.neighbors(v)) {
            for (std::int64_t i = 0; i < w; ++i) slots.push_back(f.vertex_var(u));
        }
        const auto maxdeg = static_cast<std::size_t>(g.weighted_degree(v));

        if (slots.empty()) {
            f.clauses.push_back({g.pattern(v).at(0) ? var : -var});
            continue;
        }
        CounterBuilder counter{f, std::move(slots), {}};
        counter.build();

        // degree == d  ->  s_v = response(d)
        for (std::size_t d = 0; d <= maxdeg; ++d) {
            const int at_least_d = counter.total_ge(d);
            const int at_least_d1 = counter.total_ge(d + 1);
            std::vector<int> clause;
            if (at_least_d > 0) clause.push_back(-at_least_d);
            if (at_least_d1 > 0) clause.push_back(at_least_d1);
            clause.push_back(g.pattern(v).at(static_cast<std::int64_t>(d)) ? var : -var);
            f.clauses.push_back(std::move(clause));
        }
    }
    return f;
}

void write_dimacs(const CnfFormula& f, std::ostream& out) {
    out << "c binary public goods game equilibrium encoding\n";
    out << "c vertices " << f.num_vertices << ": vertex i (1-based) <-> variable i\n";
    if (f.num_vars > f.num_vertices) {
        out << "c variables " << f.num_vertices + 1 << ".." << f.num_vars
            << " are cardinality counters\n";
    }
    out << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
    for (const auto& clause : f.clauses) {
        for (int lit : clause) out << lit << " ";
        out << "0\n";
    }
}

std::string dimacs_string(const CnfFormula& f) {
    std::ostringstream out;
    write_dimacs(f, out);
    return out.str();
}

}  // namespace pgg
