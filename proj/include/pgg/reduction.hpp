#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pgg/gadgets.hpp"
#include "pgg/game.hpp"

namespace pgg {

// A literal is a positive variable index or 0 for unconditional falsity.
struct Literal {
    int var = 0;
    bool is_bottom() const { return var == 0; }
    bool operator==(const Literal&) const = default;
};

struct OneInThreeInstance {
    int num_vars = 0;
    std::vector<std::array<Literal, 3>> clauses;
    std::vector<int> unused_vars;  // declared but never used; a warning, not an error
};

// Text format:
//   p 1in3 <num-vars> <num-clauses>
//   <l1> <l2> <l3>          one line per clause, 0 = falsity
// 'c' lines are comments.
OneInThreeInstance parse_one_in_three(std::string_view text);
OneInThreeInstance load_one_in_three(const std::string& path);
std::string write_one_in_three(const OneInThreeInstance& inst);

// Exactly one true literal per clause under sigma (bottom is always false).
bool satisfies_one_in_three(const OneInThreeInstance& inst, const std::vector<std::uint8_t>& sigma);

struct CompiledReduction {
    GameInstance game;
    int k = 1;
    bool equiv_chain = false;
    std::vector<std::array<int, 3>> literal_vertex;  // host vertex of t^i_j
    std::vector<Attachment> gadgets;                 // construction order
};

// One clause gadget per clause (contiguous id blocks, in clause order), then
// an equivalence gadget per unordered pair of occurrences of the same
// variable (lexicographic order; `equiv_chain` links consecutive occurrences
// instead), then a false gadget per bottom literal. The compiled game has an
// equilibrium iff the instance is satisfiable.
CompiledReduction compile_reduction(const OneInThreeInstance& inst, int k,
                                    bool equiv_chain = false);

// Extends a satisfying assignment to a full equilibrium by filling each
// gadget with its proof completion. Throws std::invalid_argument when sigma
// does not one-in-three-satisfy the instance.
StrategyProfile assignment_to_profile(const CompiledReduction& red,
                                      const OneInThreeInstance& inst,
                                      const std::vector<std::uint8_t>& sigma);

// Reads the satisfying assignment off an equilibrium of the compiled game.
// Throws std::invalid_argument when the profile is not an equilibrium.
std::vector<std::uint8_t> profile_to_assignment(const CompiledReduction& red,
                                                const OneInThreeInstance& inst,
                                                const StrategyProfile& s);

// JSON round-trip of everything needed to re-derive profiles from the
// written game file.
std::string certificate_to_json(const CompiledReduction& red);
CompiledReduction certificate_from_json(const GameInstance& game, const std::string& json_text);

}  // namespace pgg
