#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pgg/game.hpp"

namespace pgg {

// CNF over signed integer literals. Vertex v (0-based) maps to variable
// v + 1; higher variables are cardinality-counter auxiliaries that are
// functionally determined by the vertex variables, so satisfying
// assignments projected to vertex variables are exactly the equilibria.
struct CnfFormula {
    int num_vars = 0;
    int num_vertices = 0;
    std::vector<std::vector<int>> clauses;

    int vertex_var(Vertex v) const { return v + 1; }
};

// Encodes "s_v equals the response at v's active degree" per vertex via a
// sequential unary counter over neighbor occurrences (an edge of weight w
// contributes w occurrences).
CnfFormula export_cnf(const GameInstance& g);

// Standard DIMACS with a comment block documenting the variable map.
void write_dimacs(const CnfFormula& f, std::ostream& out);
std::string dimacs_string(const CnfFormula& f);

}  // namespace pgg
